from pathlib import Path

import pytest

from src.data_models import Dfa, GccBounds, Transition

INSTANCE_DIR = Path(__file__).parent.parent / "data" / "instances"


@pytest.fixture
def instance_dir() -> Path:
    return INSTANCE_DIR


@pytest.fixture
def example_domains() -> list[list[int]]:
    """D1 = D3 = {1,2}, D2 = D4 = {1}"""
    return [[1, 2], [1], [1, 2], [1]]


@pytest.fixture
def example2_bounds() -> GccBounds:
    return GccBounds.of({1: (1, 2), 2: (3, 5)})


@pytest.fixture
def example3_bounds() -> GccBounds:
    return GccBounds.of({1: (1, 3), 2: (2, 2)})


@pytest.fixture
def stretch_dfa() -> Dfa:
    """Maximal runs of a and of b of length exactly two"""
    moves = [
        ("q0", "a", "a1"),
        ("q0", "b", "b1"),
        ("a1", "a", "a2"),
        ("a2", "b", "b1"),
        ("b1", "b", "b2"),
        ("b2", "a", "a1"),
    ]
    return Dfa(
        name="stretch",
        states=["q0", "a1", "a2", "b1", "b2"],
        alphabet=["a", "b"],
        transitions=[Transition(source=s, symbol=a, target=t) for s, a, t in moves],
        initial="q0",
        accepting=["a2", "b2"],
    )


@pytest.fixture
def abcde_dfa() -> Dfa:
    """Accepts exactly the word abcde"""
    states = [f"p{i}" for i in range(6)]
    return Dfa(
        name="abcde",
        states=states,
        alphabet=list("abcde"),
        transitions=[
            Transition(source=states[i], symbol=symbol, target=states[i + 1])
            for i, symbol in enumerate("abcde")
        ],
        initial="p0",
        accepting=["p5"],
    )
