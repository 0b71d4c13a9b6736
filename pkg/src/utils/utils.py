import sys
from collections.abc import Iterable

Value = int | str


def value_sort_key(value: Value) -> tuple[int, int, str]:
    """
    Canonical ordering for domain values.
    Integers come first in numeric order, symbols follow in lexical order.
    """
    if isinstance(value, int):
        return (0, value, "")
    return (1, 0, value)


def sorted_values(values: Iterable[Value]) -> list[Value]:
    """Return values in canonical (deterministic) order"""
    return sorted(values, key=value_sort_key)


def parse_value(token: str) -> Value:
    """
    Read a value token from an instance file.
    Tokens that look like integers become ints, anything else stays a symbol.
    """
    token = token.strip()
    if token.lstrip("-").isdigit():
        return int(token)
    return token


def format_values(values: Iterable[Value]) -> str:
    """Comma separated, canonical order, no spaces: '1,2,a'"""
    return ",".join(str(v) for v in sorted_values(values))


def progress(message: str, verbose: bool) -> None:
    """Human progress line on stderr; stdout is reserved for the report"""
    if verbose:
        print(message, file=sys.stderr)
