"""
Automaton Distances

Membership and exact string-to-language distances for partial DFAs:
Hamming distance to the length-|s| slice of L(M), and weighted edit distance
to all of L(M).
"""

import heapq
from collections.abc import Iterator, Sequence

import numpy as np

from src.data_models import NO_TRANSITION, Dfa, EditWeights
from src.utils.errors import (
    EmptyLanguageError,
    NoWordOfThisLengthError,
    RejectedInputError,
)
from src.utils.utils import Value

UNREACHED = np.iinfo(np.int64).max // 4


def accepts(dfa: Dfa, s: Sequence[Value]) -> bool:
    """
    True iff δ*(q0, s) is defined and accepting

    Raises:
        RejectedInputError: s holds a symbol outside the alphabet
    """
    state = dfa.initial_code
    for symbol in s:
        code = dfa.symbol_code(symbol)
        if code is None:
            raise RejectedInputError(f"symbol {symbol!r} is not in the alphabet of {dfa.name}")
        state = int(dfa.table[state, code])
        if state == NO_TRANSITION:
            return False
    return bool(dfa.accepting_mask[state])


def _transition_arrays(dfa: Dfa) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flattened (source, symbol, target) codes of every defined transition"""
    sources, symbols = np.nonzero(dfa.table != NO_TRANSITION)
    targets = dfa.table[sources, symbols]
    return sources, symbols, targets


def hamming_to_language(dfa: Dfa, s: Sequence[Value]) -> int:
    """
    Minimum Hamming distance between s and a word of L(M) of length |s|

    Dynamic programming over (position, state): a transition costs 0 when its
    symbol matches s at that position and 1 otherwise. Symbols outside the
    alphabet never match.

    Returns:
        the distance, 0 iff s is accepted

    Raises:
        NoWordOfThisLengthError: L(M) has no word of length |s|
    """
    sources, symbols, targets = _transition_arrays(dfa)
    cost = np.full(dfa.num_states, UNREACHED, dtype=np.int64)
    cost[dfa.initial_code] = 0

    for symbol in s:
        code = dfa.symbol_code(symbol)
        mismatch = (symbols != code).astype(np.int64) if code is not None else np.ones_like(symbols)
        step = np.full(dfa.num_states, UNREACHED, dtype=np.int64)
        np.minimum.at(step, targets, cost[sources] + mismatch)
        cost = np.minimum(step, UNREACHED)

    best = cost[dfa.accepting_mask].min(initial=UNREACHED)
    if best >= UNREACHED:
        raise NoWordOfThisLengthError(f"{dfa.name} accepts no word of length {len(s)}")
    return int(best)


def edit_to_language(
    dfa: Dfa, s: Sequence[Value], weights: EditWeights | None = None
) -> int:
    """
    Minimum weighted edit distance between s and any word of L(M)

    Shortest path over nodes (position in s, state):
    - match/substitution: (i, k) -> (i+1, δ(k, a)), cost 0 if a = s[i] else sub
    - deletion of s[i]:   (i, k) -> (i+1, k), cost del
    - insertion of a:     (i, k) -> (i, δ(k, a)), cost ins

    Args:
        dfa: the automaton M
        s: the sequence, symbols outside the alphabet allowed
        weights: substitution, insertion and deletion penalties, unit when omitted

    Raises:
        EmptyLanguageError: L(M) is empty
    """
    weights = weights or EditWeights()
    n = len(s)
    codes = [dfa.symbol_code(symbol) for symbol in s]
    moves = [
        [(int(a), int(dfa.table[k, a])) for a in range(dfa.num_symbols) if dfa.table[k, a] != NO_TRANSITION]
        for k in range(dfa.num_states)
    ]

    best: dict[tuple[int, int], int] = {(0, dfa.initial_code): 0}
    heap = [(0, 0, dfa.initial_code)]
    while heap:
        d, i, k = heapq.heappop(heap)
        if d > best.get((i, k), UNREACHED):
            continue
        if i == n and dfa.accepting_mask[k]:
            return d

        successors = []
        for a, target in moves[k]:
            successors.append((i, target, weights.insertion))
            if i < n:
                successors.append((i + 1, target, 0 if a == codes[i] else weights.substitution))
        if i < n:
            successors.append((i + 1, k, weights.deletion))

        for j, q, w in successors:
            nd = d + w
            if nd < best.get((j, q), UNREACHED):
                best[(j, q)] = nd
                heapq.heappush(heap, (nd, j, q))

    raise EmptyLanguageError(f"{dfa.name} accepts no word")


def language_words(dfa: Dfa, max_length: int) -> Iterator[tuple[Value, ...]]:
    """All accepted words of length <= max_length, shortest first"""
    frontier = [((), dfa.initial_code)]
    for length in range(max_length + 1):
        for word, state in frontier:
            if dfa.accepting_mask[state]:
                yield word
        if length == max_length:
            break
        frontier = [
            (word + (dfa.alphabet[a],), int(dfa.table[state, a]))
            for word, state in frontier
            for a in range(dfa.num_symbols)
            if dfa.table[state, a] != NO_TRANSITION
        ]
