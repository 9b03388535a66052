"""
Signed log-domain reals.

Partition counts near n = 10^5 are around e^810, far past the range of a
double. A SignedLogReal keeps the sign and the natural log of the magnitude,
so products are additions and sums are max-shifted exponential accumulations.
Double-precision logs limit relative accuracy to about 1e-12 at that scale.
"""

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Union

LOG_ZERO = float("-inf")

# Bits kept when taking the logarithm of a large integer
_INT_LOG_BITS = 60


@total_ordering
@dataclass(frozen=True)
class SignedLogReal:
    """sign * exp(log_mag), with sign in {-1, 0, +1}."""

    sign: int
    log_mag: float = LOG_ZERO

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if self.sign != 0 and math.isnan(self.log_mag):
            raise ValueError("log_mag must not be NaN")

    @classmethod
    def zero(cls) -> "SignedLogReal":
        return cls(0, LOG_ZERO)

    @classmethod
    def from_float(cls, x: float) -> "SignedLogReal":
        if x == 0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_int(cls, value: int) -> "SignedLogReal":
        """Exact integer to log form via its leading bits."""
        if value == 0:
            return cls.zero()
        sign = 1 if value > 0 else -1
        magnitude = abs(value)
        shift = max(0, magnitude.bit_length() - _INT_LOG_BITS)
        return cls(sign, math.log(magnitude >> shift) + shift * math.log(2))

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> "SignedLogReal":
        return SignedLogReal(-self.sign, self.log_mag)

    def __abs__(self) -> "SignedLogReal":
        return SignedLogReal(abs(self.sign), self.log_mag)

    def __mul__(self, other: Union["SignedLogReal", float, int]) -> "SignedLogReal":
        other = _coerce(other)
        if self.sign == 0 or other.sign == 0:
            return SignedLogReal.zero()
        return SignedLogReal(self.sign * other.sign, self.log_mag + other.log_mag)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["SignedLogReal", float, int]) -> "SignedLogReal":
        other = _coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero SignedLogReal")
        if self.sign == 0:
            return SignedLogReal.zero()
        return SignedLogReal(self.sign * other.sign, self.log_mag - other.log_mag)

    def __add__(self, other: Union["SignedLogReal", float, int]) -> "SignedLogReal":
        return log_sum((self, _coerce(other)))

    __radd__ = __add__

    def __sub__(self, other: Union["SignedLogReal", float, int]) -> "SignedLogReal":
        return log_sum((self, -_coerce(other)))

    def __pow__(self, exponent: float) -> "SignedLogReal":
        if self.sign < 0:
            raise ValueError("power of a negative SignedLogReal")
        if self.sign == 0:
            return SignedLogReal.zero()
        return SignedLogReal(1, self.log_mag * exponent)

    def _key(self):
        if self.sign == 0:
            return (0, 0.0)
        return (self.sign, self.sign * self.log_mag)

    def __lt__(self, other: "SignedLogReal") -> bool:
        return self._key() < _coerce(other)._key()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedLogReal):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def to_float(self) -> float:
        """Plain float value; inf when the magnitude overflows."""
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_mag)
        except OverflowError:
            return self.sign * math.inf

    def format(self) -> str:
        """Render as s*exp(L)."""
        if self.sign == 0:
            return "0*exp(-inf)"
        return f"{self.sign}*exp({self.log_mag:.17g})"

    def __str__(self) -> str:
        return self.format()


def _coerce(value: Union[SignedLogReal, float, int]) -> SignedLogReal:
    if isinstance(value, SignedLogReal):
        return value
    if isinstance(value, int):
        return SignedLogReal.from_int(value)
    return SignedLogReal.from_float(value)


def log_sum(terms: Iterable[SignedLogReal]) -> SignedLogReal:
    """
    Sum signed log-domain terms without leaving the log domain.

    Terms are shifted by the largest magnitude and accumulated with
    math.fsum, so only the final cancellation loses precision.
    """
    live = [t for t in terms if t.sign != 0]
    if not live:
        return SignedLogReal.zero()
    peak = max(t.log_mag for t in live)
    if math.isinf(peak):
        signs = {t.sign for t in live if t.log_mag == peak}
        if len(signs) > 1:
            raise ValueError("sum of opposite infinities")
        return SignedLogReal(signs.pop(), peak)
    total = math.fsum(t.sign * math.exp(t.log_mag - peak) for t in live)
    if total == 0:
        return SignedLogReal.zero()
    return SignedLogReal(1 if total > 0 else -1, peak + math.log(abs(total)))


def relative_error(exact: SignedLogReal, estimate: SignedLogReal) -> float:
    """
    Return |exact - estimate| / |exact|.

    With equal signs this is |expm1(log estimate - log exact)|, which keeps
    full precision for close values.

    Raises:
        ValueError: If exact is zero
    """
    if exact.sign == 0:
        raise ValueError("relative error is undefined for a zero exact value")
    if estimate.sign == 0:
        return 1.0
    gap = estimate.log_mag - exact.log_mag
    try:
        if estimate.sign == exact.sign:
            return abs(math.expm1(gap))
        return 1.0 + math.exp(gap)
    except OverflowError:
        return math.inf


def exact_relative_error(exact: int, estimate: int) -> float:
    """
    Return |exact - estimate| / |exact| for two integers.

    The difference is formed exactly before either side enters the log
    domain, so the result keeps its relative precision however small it is.

    Raises:
        ValueError: If exact is zero
    """
    if exact == 0:
        raise ValueError("relative error is undefined for a zero exact value")
    gap = SignedLogReal.from_int(exact - estimate) / SignedLogReal.from_int(exact)
    return abs(gap.to_float())
