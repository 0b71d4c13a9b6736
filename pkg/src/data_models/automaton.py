import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from src.utils.utils import Value

NO_TRANSITION = -1


class Transition(BaseModel):
    """One entry of the partial transition function: source --symbol--> target"""

    model_config = ConfigDict(frozen=True)

    source: str
    symbol: Value
    target: str


class Dfa(BaseModel):
    """
    Deterministic finite automaton M = (Q, Σ, δ, q0, F) with partial δ.

    Missing transitions are simply absent (no dead state is added). States and
    symbols are interned to dense integer codes in declaration order; the
    transition function is held as a |Q| x |Σ| integer table with -1 for
    undefined entries.
    """

    model_config = ConfigDict(frozen=True)

    name: str = "M"
    states: list[str]
    alphabet: list[Value]
    transitions: list[Transition] = Field(default_factory=list)
    initial: str
    accepting: list[str] = Field(default_factory=list)

    _state_code: dict = PrivateAttr(default_factory=dict)
    _symbol_code: dict = PrivateAttr(default_factory=dict)
    _table: np.ndarray | None = PrivateAttr(default=None)
    _accepting_mask: np.ndarray | None = PrivateAttr(default=None)

    @model_validator(mode="after")
    def check_automaton(self) -> "Dfa":
        state_set = set(self.states)
        symbol_set = set(self.alphabet)
        if len(state_set) != len(self.states):
            raise ValueError("duplicate state names")
        if len(symbol_set) != len(self.alphabet):
            raise ValueError("duplicate alphabet symbols")
        if self.initial not in state_set:
            raise ValueError(f"initial state {self.initial!r} is not a state")
        for state in self.accepting:
            if state not in state_set:
                raise ValueError(f"accepting state {state!r} is not a state")

        defined = {}
        for t in self.transitions:
            if t.source not in state_set or t.target not in state_set:
                raise ValueError(f"transition {t.source} {t.symbol} -> {t.target}: unknown state")
            if t.symbol not in symbol_set:
                raise ValueError(f"transition {t.source} {t.symbol} -> {t.target}: unknown symbol")
            key = (t.source, t.symbol)
            if key in defined and defined[key] != t.target:
                raise ValueError(f"non-deterministic transitions on {key}")
            defined[key] = t.target
        return self

    def model_post_init(self, __context) -> None:
        self._state_code = {q: i for i, q in enumerate(self.states)}
        self._symbol_code = {a: i for i, a in enumerate(self.alphabet)}

        table = np.full((len(self.states), len(self.alphabet)), NO_TRANSITION, dtype=np.int64)
        for t in self.transitions:
            table[self._state_code[t.source], self._symbol_code[t.symbol]] = self._state_code[
                t.target
            ]
        table.setflags(write=False)
        self._table = table

        mask = np.zeros(len(self.states), dtype=bool)
        for q in self.accepting:
            mask[self._state_code[q]] = True
        mask.setflags(write=False)
        self._accepting_mask = mask

    def __eq__(self, other: object) -> bool:
        # private numpy tables are derived from the fields
        return isinstance(other, Dfa) and self.model_dump() == other.model_dump()

    def __hash__(self) -> int:
        return hash((self.name, tuple(self.states), self.initial))

    # Interned views

    @property
    def num_states(self) -> int:
        return len(self.states)

    @property
    def num_symbols(self) -> int:
        return len(self.alphabet)

    @property
    def table(self) -> np.ndarray:
        """δ as an int table indexed by (state code, symbol code); -1 = undefined"""
        return self._table

    @property
    def accepting_mask(self) -> np.ndarray:
        return self._accepting_mask

    @property
    def initial_code(self) -> int:
        return self._state_code[self.initial]

    def state_code(self, state: str) -> int:
        return self._state_code[state]

    def symbol_code(self, symbol: Value) -> int | None:
        return self._symbol_code.get(symbol)

    def has_symbol(self, symbol: Value) -> bool:
        return symbol in self._symbol_code

    def delta(self, state: str, symbol: Value) -> str | None:
        """Partial transition function on names"""
        code = self._symbol_code.get(symbol)
        if code is None:
            return None
        target = int(self._table[self._state_code[state], code])
        return None if target == NO_TRANSITION else self.states[target]

    def skeleton(self) -> list[tuple[int, int]]:
        """Distinct (source code, target code) pairs joined by some symbol"""
        pairs = set()
        for k in range(self.num_states):
            for target in self._table[k]:
                if target != NO_TRANSITION:
                    pairs.add((k, int(target)))
        return sorted(pairs)
