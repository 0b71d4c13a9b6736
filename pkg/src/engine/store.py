from collections.abc import Iterable, Mapping

from src.utils.errors import PropagationFailure
from src.utils.utils import Value, sorted_values


class DomainStore:
    """
    Current domain of every variable, in canonical value order.

    Domains only shrink. Copies are cheap: tuples are shared until a
    variable is narrowed.
    """

    def __init__(self, domains: Mapping[str, Iterable[Value]]):
        self._domains: dict[str, tuple[Value, ...]] = {
            name: tuple(sorted_values(set(values))) for name, values in domains.items()
        }

    @classmethod
    def from_model(cls, model) -> "DomainStore":
        return cls({variable.name: variable.domain for variable in model.variables})

    def __getitem__(self, name: str) -> tuple[Value, ...]:
        return self._domains[name]

    def __contains__(self, name: str) -> bool:
        return name in self._domains

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DomainStore) and self._domains == other._domains

    def __repr__(self) -> str:
        return f"DomainStore({self.as_dict()})"

    @property
    def names(self) -> list[str]:
        return list(self._domains)

    def size(self, name: str) -> int:
        return len(self._domains[name])

    def is_assigned(self, name: str) -> bool:
        return len(self._domains[name]) == 1

    def value(self, name: str) -> Value:
        if not self.is_assigned(name):
            raise ValueError(f"{name} is not assigned")
        return self._domains[name][0]

    def restrict(self, name: str, values: Iterable[Value]) -> bool:
        """
        Intersect the domain of `name` with values; True if it shrank

        Raises:
            PropagationFailure: the domain empties
        """
        keep = set(values)
        current = self._domains[name]
        narrowed = tuple(v for v in current if v in keep)
        if not narrowed:
            raise PropagationFailure(f"domain of {name} emptied")
        if len(narrowed) == len(current):
            return False
        self._domains[name] = narrowed
        return True

    def assign(self, name: str, value: Value) -> bool:
        return self.restrict(name, (value,))

    def copy(self) -> "DomainStore":
        clone = DomainStore.__new__(DomainStore)
        clone._domains = dict(self._domains)
        return clone

    def as_dict(self) -> dict[str, list[Value]]:
        return {name: list(values) for name, values in self._domains.items()}
