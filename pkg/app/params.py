"""
Exact input parsing shared by the CLI and the HTTP API
"""
import re
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from errors import ArgumentError

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_RUN = re.compile(r"^\s*([+-]?\d+)\s*(?:\*\s*(\d+))?\s*$")

TRUE_VALUES = {"1", "true", "yes", "on"}
FALSE_VALUES = {"0", "false", "no", "off", ""}


def parse_exact_rational(text: str) -> Fraction:
    """'27/5' or '4'. Decimals like '5.4' are rejected."""
    match = _RATIONAL.match(str(text))
    if not match:
        raise ArgumentError(f"expected an exact rational like 27/5, got {text!r}")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise ArgumentError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_t_min(text: str) -> Union[Fraction, Tuple[str, int]]:
    """An exact rational, or 'auto:K' meaning the first K walls."""
    text = str(text).strip()
    if text.startswith("auto:"):
        return ("auto", parse_positive_int(text[len("auto:"):], "auto:K"))
    return parse_exact_rational(text)


def parse_positive_int(text: str, name: str = "value") -> int:
    try:
        value = int(str(text).strip())
    except ValueError:
        raise ArgumentError(f"{name} must be an integer, got {text!r}")
    if value < 1:
        raise ArgumentError(f"{name} must be positive, got {value}")
    return value


def parse_int(text: str, name: str = "value") -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise ArgumentError(f"{name} must be an integer, got {text!r}")


def parse_multiplicities(text: str, n: int) -> Tuple[int, ...]:
    """Comma-separated list with v*c runs; one value is broadcast to all n points."""
    values: List[int] = []
    for part in str(text).split(","):
        match = _RUN.match(part)
        if not match:
            raise ArgumentError(f"bad multiplicity entry {part!r}; use v or v*c")
        value, count = int(match.group(1)), match.group(2)
        if count is not None and int(count) < 1:
            raise ArgumentError(f"run length must be positive in {part!r}")
        values.extend([value] * (int(count) if count else 1))
    if len(values) == 1:
        values *= n
    if len(values) != n:
        raise ArgumentError(f"expected {n} multiplicities, got {len(values)}")
    return tuple(values)


def parse_bool(text: Optional[str]) -> bool:
    if text is None:
        return False
    value = str(text).strip().lower()
    if value in TRUE_VALUES:
        return True
    if value in FALSE_VALUES:
        return False
    raise ArgumentError(f"expected a boolean, got {text!r}")
