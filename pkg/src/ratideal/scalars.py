"""Scalar arithmetic: exact Gaussian rationals, half-integers, and
high-precision complex floats.

Two scalar regimes live behind the same duck-typed arithmetic:

* exact mode -- :class:`GaussianRational`, complex numbers with
  arbitrary-precision rational real and imaginary parts.  Equality is
  exact; identity verification in this mode means a literal zero
  difference.
* float mode -- ``mpmath`` complex numbers at a configurable working
  precision (:data:`DEFAULT_DPS` decimal digits by default).

Integer-shift Pochhammer symbols are always computed as finite products,
never through log-gamma, so they are available in both regimes and avoid
branch cuts and cancellation near poles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from gmpy2 import mpq
from mpmath import mp

from .errors import InvalidParameters, PoleAtEvaluation, PoleOfGamma

DEFAULT_DPS = 38

RationalLike = Union[int, Fraction, type(mpq(0))]


def working_dps(dps=None):
    """Context manager setting the mpmath working precision in digits.

    ``None`` keeps the ambient precision but never drops below
    :data:`DEFAULT_DPS`, so nested helpers inherit a caller's elevated
    precision instead of clamping it back to the default.
    """
    return mp.workdps(dps if dps is not None else max(mp.dps, DEFAULT_DPS))


def pole_tolerance(dps=None):
    """Near-pole detection threshold 10^(-P/2) at P working digits."""
    p = dps if dps is not None else mp.dps
    return mpmath.mpf(10) ** (-p / 2)


def _as_mpq(x) -> "mpq":
    if isinstance(x, (int, Fraction)) or type(x) is type(mpq(0)):
        return mpq(x)
    if isinstance(x, HalfInteger):
        return mpq(x.twice, 2)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex scalar with rational real and imaginary parts.

    Closed under +, -, *, and / (by nonzero).  Components are stored as
    ``gmpy2.mpq`` values, which keep numerator and denominator coprime
    with a positive denominator.
    """

    re: object = mpq(0)
    im: object = mpq(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _as_mpq(self.re))
        object.__setattr__(self, "im", _as_mpq(self.im))

    # -- constructors --------------------------------------------------

    @classmethod
    def from_value(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, HalfInteger):
            return cls(mpq(x.twice, 2), 0)
        return cls(_as_mpq(x), 0)

    @classmethod
    def i(cls) -> "GaussianRational":
        return cls(0, 1)

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse strings like ``"1/2"``, ``"-3i"``, ``"1/2+3/4i"``."""
        s = text.strip().replace(" ", "").replace("*i", "i").replace("j", "i")
        if not s:
            raise InvalidParameters("empty exact-scalar literal")
        # split into real and imaginary pieces at a +/- that is not
        # inside a fraction exponent (no exponents here, so any sign
        # after position 0 splits)
        pieces = []
        start = 0
        for k in range(1, len(s)):
            if s[k] in "+-" and s[k - 1] not in "+-/":
                pieces.append(s[start:k])
                start = k
        pieces.append(s[start:])
        re = mpq(0)
        im = mpq(0)
        try:
            for piece in pieces:
                if piece.endswith("i"):
                    body = piece[:-1]
                    if body in ("", "+"):
                        body = "1"
                    elif body == "-":
                        body = "-1"
                    im += mpq(body.lstrip("+"))
                else:
                    re += mpq(piece.lstrip("+"))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParameters(f"bad exact-scalar literal {text!r}: {exc}") from exc
        return cls(re, im)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction, HalfInteger)) or type(other) is type(mpq(0)):
            return GaussianRational.from_value(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((Fraction(self.re.numerator, self.re.denominator),
                     Fraction(self.im.numerator, self.im.denominator)))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    # -- views ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def norm2(self):
        """Exact squared modulus re^2 + im^2 (a rational)."""
        return self.re * self.re + self.im * self.im

    def to_mpc(self, dps=None) -> mpmath.mpc:
        with working_dps(dps):
            re = mpmath.mpf(int(self.re.numerator)) / mpmath.mpf(int(self.re.denominator))
            im = mpmath.mpf(int(self.im.numerator)) / mpmath.mpf(int(self.im.denominator))
            return mpmath.mpc(re, im)

    def __repr__(self):
        if self.im == 0:
            return f"GR({self.re})"
        sign = "+" if self.im > 0 else "-"
        return f"GR({self.re}{sign}{abs(self.im)}i)"


GR = GaussianRational


@dataclass(frozen=True, order=True)
class HalfInteger:
    """Element of (1/2)Z stored as a doubled integer (value = twice/2).

    The parity of ``twice`` records whether the value is an integer
    (even) or a proper half-integer (odd); sums and differences of two
    values with equal parity are integers.
    """

    twice: int

    @classmethod
    def from_value(cls, x) -> "HalfInteger":
        if isinstance(x, HalfInteger):
            return x
        if isinstance(x, int):
            return cls(2 * x)
        frac = Fraction(x)
        if frac.denominator not in (1, 2):
            raise InvalidParameters(f"{x} is not an integer or half-integer")
        return cls(int(frac * 2))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    @property
    def fractional_part(self) -> "HalfInteger":
        """0 for integers, 1/2 for proper half-integers."""
        return HalfInteger(self.twice % 2)

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def as_int(self) -> int:
        if not self.is_integer:
            raise InvalidParameters(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other):
        if isinstance(other, HalfInteger):
            return HalfInteger(self.twice + other.twice)
        if isinstance(other, int):
            return HalfInteger(self.twice + 2 * other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, HalfInteger):
            return HalfInteger(self.twice - other.twice)
        if isinstance(other, int):
            return HalfInteger(self.twice - 2 * other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return HalfInteger(2 * other - self.twice)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfInteger(self.twice * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return HalfInteger(-self.twice)

    def __abs__(self):
        return HalfInteger(abs(self.twice))

    def __float__(self):
        return self.twice / 2.0

    def __repr__(self):
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def half(n: int = 1) -> HalfInteger:
    """The half-integer n/2."""
    return HalfInteger(n)


# -- gamma and Pochhammer ----------------------------------------------------

def log_gamma(z, dps=None) -> mpmath.mpc:
    """Principal branch of log Gamma at a complex point.

    Raises :class:`PoleOfGamma` when ``z`` is within 10^(-P/2) of a
    nonpositive integer.
    """
    with working_dps(dps):
        zc = mpmath.mpc(z)
        tol = pole_tolerance()
        if abs(zc.imag) < tol:
            nearest = mpmath.nint(zc.real)
            if nearest <= 0 and abs(zc.real - nearest) < tol:
                raise PoleOfGamma(f"log_gamma pole at z = {zc}")
        return mpmath.loggamma(zc)


def _is_exact(x) -> bool:
    return isinstance(x, (GaussianRational, int, Fraction)) or type(x) is type(mpq(0))


def _shift_int(n) -> int:
    if isinstance(n, HalfInteger):
        return n.as_int()
    if isinstance(n, int):
        return n
    raise InvalidParameters(f"Pochhammer shift must be an integer, got {n!r}")


def pochhammer(a, n, dps=None):
    """Pochhammer symbol (a)_n with a signed integer shift.

    ``n >= 0`` gives the rising product a(a+1)...(a+n-1); ``n < 0`` gives
    the reciprocal 1/((a-1)(a-2)...(a+n)); ``n = 0`` gives 1.  Exact
    scalars stay exact; floats are evaluated at the working precision.

    Raises :class:`PoleAtEvaluation` if a factor of the n < 0 branch
    vanishes (exactly in exact mode, within 10^(-P/2) in float mode).
    """
    n = _shift_int(n)
    if _is_exact(a):
        av = GaussianRational.from_value(a)
        one = GaussianRational(1, 0)
        result = one
        if n >= 0:
            for j in range(n):
                result = result * (av + j)
            return result
        denom = one
        for j in range(1, -n + 1):
            factor = av - j
            if factor.is_zero():
                raise PoleAtEvaluation(f"Pochhammer factor a - {j} = 0 at a = {av}")
            denom = denom * factor
        return one / denom
    with working_dps(dps):
        ac = mpmath.mpc(a)
        tol = pole_tolerance()
        result = mpmath.mpc(1)
        if n >= 0:
            for j in range(n):
                result *= ac + j
            return result
        denom = mpmath.mpc(1)
        for j in range(1, -n + 1):
            factor = ac - j
            if abs(factor) < tol:
                raise PoleAtEvaluation(f"Pochhammer factor a - {j} ~ 0 at a = {ac}")
            denom *= factor
        return 1 / denom


def pochhammer_pm(a, b, n, m, dps=None):
    """Split Pochhammer product (a+b)_{n+m} (a-b)_{n-m}.

    ``n`` and ``m`` may be half-integers of equal parity; only the
    combined shifts n+m and n-m must be integers.
    """
    nh = HalfInteger.from_value(n)
    mh = HalfInteger.from_value(m)
    plus_shift = (nh + mh).as_int()
    minus_shift = (nh - mh).as_int()
    if _is_exact(a) and _is_exact(b):
        ag = GaussianRational.from_value(a)
        bg = GaussianRational.from_value(b)
        return pochhammer(ag + bg, plus_shift) * pochhammer(ag - bg, minus_shift)
    with working_dps(dps):
        ac = mpmath.mpc(a)
        bc = mpmath.mpc(b)
        return pochhammer(ac + bc, plus_shift, dps) * pochhammer(ac - bc, minus_shift, dps)
