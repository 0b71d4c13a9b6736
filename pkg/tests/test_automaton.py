import random

import Levenshtein
import pytest

from src.data_models import Dfa, EditWeights, Transition
from src.tools.automaton import (
    accepts,
    edit_to_language,
    hamming_to_language,
    language_words,
)
from src.utils.errors import (
    EmptyLanguageError,
    NoWordOfThisLengthError,
    RejectedInputError,
)
from tests.factories import random_dfa


@pytest.mark.parametrize(
    "word, expected",
    [("aabb", True), ("bbaa", True), ("aa", True), ("aab", False), ("aaa", False), ("", False)],
)
def test_accepts_runs_of_two(stretch_dfa, word, expected):
    assert accepts(stretch_dfa, list(word)) is expected


def test_accepts_rejects_foreign_symbol(stretch_dfa):
    with pytest.raises(RejectedInputError):
        accepts(stretch_dfa, ["a", "z"])


def test_rotated_word_is_far_in_hamming_close_in_edit(abcde_dfa):
    s = list("bcdea")
    assert hamming_to_language(abcde_dfa, s) == 5
    assert edit_to_language(abcde_dfa, s, EditWeights.unit()) == 2


def test_edit_weights_change_the_cheapest_script(abcde_dfa):
    s = list("bcdea")
    expensive_gaps = EditWeights(substitution=1, insertion=3, deletion=3)
    expensive_subs = EditWeights(substitution=5, insertion=1, deletion=1)
    assert edit_to_language(abcde_dfa, s, expensive_gaps) == 5
    assert edit_to_language(abcde_dfa, s, expensive_subs) == 2


def test_alternating_pairs_on_stretch(stretch_dfa):
    s = list("abbaabbaab")
    assert hamming_to_language(stretch_dfa, s) == 5
    assert edit_to_language(stretch_dfa, s, EditWeights.unit()) == 2


def test_hamming_on_stretch(stretch_dfa):
    assert hamming_to_language(stretch_dfa, list("abab")) == 2
    assert hamming_to_language(stretch_dfa, list("aabb")) == 0


def test_foreign_symbols_never_match(abcde_dfa):
    assert hamming_to_language(abcde_dfa, ["a", "b", "c", "d", "z"]) == 1


def test_no_word_of_odd_length(stretch_dfa):
    with pytest.raises(NoWordOfThisLengthError):
        hamming_to_language(stretch_dfa, list("aabba"))
    assert edit_to_language(stretch_dfa, list("aabba"), EditWeights.unit()) == 1


def test_empty_language():
    dfa = Dfa(
        states=["q"],
        alphabet=["a"],
        transitions=[Transition(source="q", symbol="a", target="q")],
        initial="q",
        accepting=[],
    )
    with pytest.raises(EmptyLanguageError):
        edit_to_language(dfa, ["a"])
    with pytest.raises(NoWordOfThisLengthError):
        hamming_to_language(dfa, ["a"])


def test_language_words_shortest_first(stretch_dfa):
    words = ["".join(w) for w in language_words(stretch_dfa, 4)]
    assert words == ["aa", "bb", "aabb", "bbaa"]


def test_dfa_equality_ignores_interned_tables(stretch_dfa):
    copy = Dfa(**stretch_dfa.model_dump())
    assert copy == stretch_dfa
    assert hash(copy) == hash(stretch_dfa)
    assert copy.delta("q0", "a") == "a1"
    assert copy.delta("a2", "a") is None


def test_nondeterminism_is_rejected():
    with pytest.raises(ValueError):
        Dfa(
            states=["p", "q"],
            alphabet=["a"],
            transitions=[
                Transition(source="p", symbol="a", target="p"),
                Transition(source="p", symbol="a", target="q"),
            ],
            initial="p",
        )


def _brute_hamming(dfa, s):
    distances = [
        sum(x != y for x, y in zip(word, s, strict=True))
        for word in language_words(dfa, len(s))
        if len(word) == len(s)
    ]
    return min(distances, default=None)


def _brute_edit(dfa, s):
    # an optimal word is never longer than |s| plus the distance to the shortest word
    horizon = len(s) + max(len(s), dfa.num_states - 1)
    distances = [Levenshtein.distance("".join(word), "".join(s)) for word in language_words(dfa, horizon)]
    return min(distances, default=None)


def test_distances_match_enumeration():
    rng = random.Random(7)
    for _ in range(200):
        dfa = random_dfa(rng, max_states=4)
        s = [rng.choice(dfa.alphabet) for _ in range(rng.randint(0, 3))]

        expected_hamming = _brute_hamming(dfa, s)
        if expected_hamming is None:
            with pytest.raises(NoWordOfThisLengthError):
                hamming_to_language(dfa, s)
        else:
            assert hamming_to_language(dfa, s) == expected_hamming

        expected_edit = _brute_edit(dfa, s)
        if expected_edit is None:
            with pytest.raises(EmptyLanguageError):
                edit_to_language(dfa, s, EditWeights.unit())
        else:
            assert edit_to_language(dfa, s, EditWeights.unit()) == expected_edit
        if accepts(dfa, s):
            assert expected_hamming == expected_edit == 0
