"""Coefficient fields: exact rationals (default) or a prime field."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from ..errors import InvalidArgument

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Field:
    """``p is None`` means the rationals."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1)):
                raise InvalidArgument(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def name(self) -> str:
        return "rational" if self.p is None else f"prime:{self.p}"

    def __str__(self) -> str:
        return self.name

    def convert(self, x) -> Scalar:
        if self.p is None:
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x) -> Scalar:
        if self.p is None:
            if x == 1 or x == -1:
                return int(x)
            return Fraction(1) / x
        return pow(int(x), -1, self.p)

    def normalize(self, x) -> Scalar:
        if self.p is None:
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x
        return x % self.p


RATIONAL = Field(None)

# large prime that keeps products inside int64
DEFAULT_PRIME = 2_147_483_629


def parse_field(text: str) -> Field:
    """``rational`` or ``prime:<p>`` (``prime`` alone picks a large default)."""
    text = text.strip().lower()
    if text in ("rational", "q", "qq"):
        return RATIONAL
    if text == "prime":
        return Field(DEFAULT_PRIME)
    if text.startswith("prime:") or text.startswith("prime(") or text.startswith("gf("):
        digits = "".join(ch for ch in text.split(":", 1)[-1].split("(", 1)[-1] if ch.isdigit())
        if not digits:
            raise InvalidArgument(f"cannot parse field {text!r}")
        return Field(int(digits))
    raise InvalidArgument(f"cannot parse field {text!r}")


def default_field() -> Field:
    env = os.environ.get("SL2CAT_FIELD")
    return parse_field(env) if env else RATIONAL
