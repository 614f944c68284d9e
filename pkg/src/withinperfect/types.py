"""Common domain types: target ratios, threshold functions, checkpoint series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence

from .errors import InvalidThresholdError

#: Largest admissible denominator for an exact power-threshold exponent.
MAX_EXPONENT_DENOMINATOR = 10


def as_exact_fraction(value, what: str = "value") -> Fraction:
    """Convert int/str/Fraction input to an exact Fraction.

    Strings are parsed exactly ("3/2" and "1.25" are both fine).  Floats are
    rejected: a float has already lost the distinction between e.g. 0.3 and
    5404319552844595/2**54, and exactness is the whole point here.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed {what}: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError(
            f"{what} must be exact (int, str, or Fraction); "
            f"got float {value!r} — pass the decimal as a string instead"
        )
    raise TypeError(f"{what} must be int, str, or Fraction, not {type(value).__name__}")


@dataclass(frozen=True)
class RationalTarget:
    """A target ratio a/b > 1 in lowest terms."""

    a: int
    b: int

    def __post_init__(self):
        if self.b < 1 or self.a <= self.b:
            raise ValueError(f"need a > b >= 1, got {self.a}/{self.b}")
        if gcd(self.a, self.b) != 1:
            raise ValueError(f"{self.a}/{self.b} is not in lowest terms")

    @classmethod
    def parse(cls, value) -> "RationalTarget":
        """Build from "a/b", "1.25", an int, a Fraction, or another target."""
        if isinstance(value, RationalTarget):
            return value
        frac = as_exact_fraction(value, "target ratio")
        return cls(frac.numerator, frac.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.a, self.b)

    def __str__(self) -> str:
        return f"{self.a}/{self.b}" if self.b != 1 else str(self.a)


#: Threshold kinds understood by the counting engine.
THRESHOLD_KINDS = ("power", "constant", "linear", "x_over_log", "custom")


@dataclass(frozen=True)
class ThresholdSpec:
    """A threshold function k(y) > 0 used in |sigma(n) - l*n| < k(n).

    kind        one of THRESHOLD_KINDS
    param       exact Fraction parameter (exponent c, constant k0, or slope)
    fn          callable for kind="custom"; must accept a numpy float array
    floor, ceiling
                optional clip bounds applied to a custom threshold
    strict      compare with "<" (default) instead of "<="
    at_limit    evaluate the threshold at the counting limit x instead of n
    """

    kind: str
    param: Optional[Fraction] = None
    fn: Optional[Callable] = None
    floor: Optional[float] = None
    ceiling: Optional[float] = None
    strict: bool = True
    at_limit: bool = False

    def __post_init__(self):
        if self.kind not in THRESHOLD_KINDS:
            raise InvalidThresholdError(f"unknown threshold kind {self.kind!r}")
        if self.kind == "power":
            c = self.param
            if not (0 < c < 1):
                raise InvalidThresholdError(f"power exponent must lie in (0,1), got {c}")
            if c.denominator > MAX_EXPONENT_DENOMINATOR:
                raise InvalidThresholdError(
                    f"power exponent denominator must be <= {MAX_EXPONENT_DENOMINATOR} "
                    f"for exact comparison, got {c}"
                )
        elif self.kind in ("constant", "linear"):
            if self.param is None or self.param <= 0:
                raise InvalidThresholdError(f"{self.kind} threshold needs a positive parameter")
        elif self.kind == "custom" and self.fn is None:
            raise InvalidThresholdError("custom threshold needs a callable")

    # --- constructors ---

    @classmethod
    def power(cls, c, *, strict: bool = True, at_limit: bool = False) -> "ThresholdSpec":
        """k(y) = y**c with c an exact rational in (0,1)."""
        return cls("power", as_exact_fraction(c, "exponent"), strict=strict, at_limit=at_limit)

    @classmethod
    def constant(cls, k0, *, strict: bool = True) -> "ThresholdSpec":
        """k(y) = k0 with k0 > 0."""
        return cls("constant", as_exact_fraction(k0, "constant"), strict=strict)

    @classmethod
    def linear(cls, c, *, strict: bool = True, at_limit: bool = False) -> "ThresholdSpec":
        """k(y) = c*y with c > 0."""
        return cls("linear", as_exact_fraction(c, "slope"), strict=strict, at_limit=at_limit)

    @classmethod
    def x_over_log(cls, *, strict: bool = True, at_limit: bool = False) -> "ThresholdSpec":
        """k(y) = y/log(y), with k(1) read as +infinity (right limit)."""
        return cls("x_over_log", strict=strict, at_limit=at_limit)

    @classmethod
    def custom(cls, fn: Callable, *, floor=None, ceiling=None, strict: bool = True,
               at_limit: bool = False) -> "ThresholdSpec":
        """A tabulated/callable threshold; decided in float64 (no exact tie handling)."""
        return cls("custom", fn=fn, floor=floor, ceiling=ceiling,
                   strict=strict, at_limit=at_limit)

    @classmethod
    def parse(cls, text: str) -> "ThresholdSpec":
        """Parse CLI syntax: pow:0.3, pow:1/3, const:1, lin:0.1, xlog."""
        head, _, arg = text.partition(":")
        head = head.strip().lower()
        if head in ("pow", "power"):
            return cls.power(arg)
        if head in ("const", "constant"):
            return cls.constant(arg)
        if head in ("lin", "linear"):
            return cls.linear(arg)
        if head in ("xlog", "x_over_log"):
            if arg:
                raise InvalidThresholdError("xlog takes no parameter")
            return cls.x_over_log()
        raise InvalidThresholdError(f"malformed threshold {text!r}")

    def describe(self) -> str:
        if self.kind == "power":
            return f"y^{self.param}"
        if self.kind == "constant":
            return str(self.param)
        if self.kind == "linear":
            return f"{self.param}*y"
        if self.kind == "x_over_log":
            return "y/log y"
        return "custom"


@dataclass
class CheckpointSeries:
    """Counts at ascending checkpoints plus the normalized quotient count/(x/log x)."""

    checkpoints: list[int]
    counts: list[int]
    quotients: list[float] = field(default_factory=list)
    label: str = ""

    def __post_init__(self):
        if list(self.checkpoints) != sorted(self.checkpoints):
            raise ValueError("checkpoints must be ascending")
        if not self.quotients:
            self.quotients = [normalized_quotient(c, x)
                              for c, x in zip(self.counts, self.checkpoints)]

    def __len__(self) -> int:
        return len(self.checkpoints)

    def rows(self):
        return list(zip(self.checkpoints, self.counts, self.quotients))


def normalized_quotient(count: int, x: int) -> float:
    """count/(x/log x) with natural log; NaN below x=2 where the scale vanishes."""
    if x < 2:
        return math.nan
    return count / (x / math.log(x))


@dataclass(frozen=True)
class SolutionRecord:
    """One solution n of a sigma-congruence or sigma-equation, classified."""

    n: int
    sigma_n: int
    classification: str  # "regular" | "sporadic"
    witnesses: tuple[tuple[int, int], ...] = ()  # (p, m) pairs
    q: Optional[int] = None  # (b*sigma(n) - k)/n when it is a nonnegative integer

    def __post_init__(self):
        if self.classification not in ("regular", "sporadic"):
            raise ValueError(f"bad classification {self.classification!r}")
        if self.classification == "regular" and not self.witnesses:
            raise ValueError("regular record needs at least one witness")

    def to_json_dict(self) -> dict:
        w = self.witnesses[0] if self.witnesses else None
        return {
            "n": self.n,
            "sigma_n": self.sigma_n,
            "classification": self.classification,
            "witness": {"p": w[0], "m": w[1]} if w else None,
        }


def parse_checkpoints(text: str | Sequence) -> list[int]:
    """Parse "1e4,100000,2e7" (or a sequence) into ascending ints."""
    if isinstance(text, str):
        parts = [p for p in text.split(",") if p.strip()]
    else:
        parts = list(text)
    out = []
    for p in parts:
        if isinstance(p, str):
            p = p.strip()
            value = int(p) if p.isdigit() else int(float(p))
            if float(value) != float(p):
                raise ValueError(f"checkpoint {p!r} is not an integer")
        else:
            value = int(p)
            if value != p:
                raise ValueError(f"checkpoint {p!r} is not an integer")
        if value < 1:
            raise ValueError("checkpoints must be >= 1")
        out.append(value)
    if out != sorted(out):
        raise ValueError("checkpoints must be ascending")
    if not out:
        raise ValueError("need at least one checkpoint")
    return out
