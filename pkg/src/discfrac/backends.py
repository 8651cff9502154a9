"""Scalar backends: IEEE floating point and exact rational arithmetic.

Every kernel coefficient produced by the operator pipelines is a plain
rational number, because the two gamma arguments inside one coefficient
always differ by a nonnegative integer.  Standalone factorial-function
values (``falling``, ``rising`` at non-integer exponents) are not
rational; the exact backend represents them as a rational coefficient
times a monomial in gamma values at arguments in (0, 1).  Identities
between such values stay exactly checkable because both sides of every
identity in scope reduce to the same monomial, and a monomial of gamma
values on (0, 1) is strictly positive, so ordering and equality are
decided by the rational coefficient alone.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import BackendOverflow, UnitMismatch

DEFAULT_BIT_CAP = 4096


def as_fraction(x) -> Fraction:
    """Exact Fraction from int, Fraction, str ("3/4", "0.75") or float.

    Floats convert to their exact binary value, never to a decimal guess.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _normalize_units(units: dict) -> tuple:
    return tuple(sorted((r, e) for r, e in units.items() if e != 0))


class GammaValue:
    """Exact value of the form ``coef * prod Gamma(r_i)**e_i`` with r_i in (0, 1).

    Supports field arithmetic; addition and ordering require matching
    monomials (a nonempty monomial makes the value irrational, so
    cross-monomial equality is simply False).
    """

    __slots__ = ("coef", "units")

    def __init__(self, coef: Fraction, units: tuple):
        self.coef = coef
        self.units = units

    @staticmethod
    def make(coef: Fraction, units: dict):
        norm = _normalize_units(units)
        if coef == 0 or not norm:
            return Fraction(coef)
        return GammaValue(coef, norm)

    def _unit_dict(self) -> dict:
        return dict(self.units)

    def __float__(self) -> float:
        out = float(self.coef)
        for r, e in self.units:
            out *= math.gamma(float(r)) ** e
        return out

    def __repr__(self) -> str:
        mono = "*".join(f"G({r})^{e}" for r, e in self.units)
        return f"{self.coef}*{mono}"

    def __neg__(self):
        return GammaValue(-self.coef, self.units)

    def __abs__(self):
        return GammaValue(abs(self.coef), self.units)

    def __add__(self, other):
        if isinstance(other, GammaValue):
            if other.units != self.units:
                raise UnitMismatch(f"cannot add {self!r} and {other!r}")
            return GammaValue.make(self.coef + other.coef, self._unit_dict())
        other = as_fraction(other)
        if other == 0:
            return self
        raise UnitMismatch(f"cannot add rational {other} to {self!r}")

    __radd__ = __add__

    def __sub__(self, other):
        return self.__add__(-other if isinstance(other, GammaValue) else -as_fraction(other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, GammaValue):
            units = self._unit_dict()
            for r, e in other.units:
                units[r] = units.get(r, 0) + e
            return GammaValue.make(self.coef * other.coef, units)
        return GammaValue.make(self.coef * as_fraction(other), self._unit_dict())

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GammaValue):
            units = self._unit_dict()
            for r, e in other.units:
                units[r] = units.get(r, 0) - e
            return GammaValue.make(self.coef / other.coef, units)
        return GammaValue.make(self.coef / as_fraction(other), self._unit_dict())

    def __rtruediv__(self, other):
        units = {r: -e for r, e in self.units}
        return GammaValue.make(as_fraction(other) / self.coef, units)

    def _cmp_coef(self, other) -> tuple:
        """Return (self.coef, other_coef) when ordering is decidable."""
        if isinstance(other, GammaValue):
            if other.units == self.units:
                return self.coef, other.coef
            raise UnitMismatch(f"cannot order {self!r} against {other!r}")
        other = as_fraction(other)
        if other == 0:
            # the monomial is positive, so the sign is the coefficient's
            return self.coef, Fraction(0)
        raise UnitMismatch(f"cannot order {self!r} against rational {other}")

    def __eq__(self, other):
        if isinstance(other, GammaValue):
            return self.units == other.units and self.coef == other.coef
        try:
            return as_fraction(other) == 0 and self.coef == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.coef, self.units))

    def __lt__(self, other):
        a, b = self._cmp_coef(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_coef(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_coef(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_coef(other)
        return a >= b


class FloatBackend:
    """IEEE double-precision scalars."""

    name = "floating"
    exact = False

    def scalar(self, x) -> float:
        if isinstance(x, str):
            return float(Fraction(x))
        return float(x)

    zero = 0.0
    one = 1.0

    def guard(self, value):
        return value

    def __repr__(self):
        return "FloatBackend()"


class RationalBackend:
    """Arbitrary-precision rational scalars with a configurable bit cap.

    Growth past ``bit_cap`` bits in a numerator or denominator raises
    ``BackendOverflow``; nothing is ever rounded silently.
    """

    name = "rational"
    exact = True

    def __init__(self, bit_cap: int = DEFAULT_BIT_CAP):
        self.bit_cap = bit_cap

    def scalar(self, x) -> Fraction:
        return self.guard(as_fraction(x))

    zero = Fraction(0)
    one = Fraction(1)

    def guard(self, value):
        frac = value.coef if isinstance(value, GammaValue) else value
        if (
            frac.numerator.bit_length() > self.bit_cap
            or frac.denominator.bit_length() > self.bit_cap
        ):
            raise BackendOverflow(
                f"rational magnitude exceeds {self.bit_cap}-bit cap"
            )
        return value

    def __repr__(self):
        return f"RationalBackend(bit_cap={self.bit_cap})"


FLOATING = FloatBackend()
RATIONAL = RationalBackend()

_BACKENDS = {"floating": FLOATING, "float": FLOATING, "rational": RATIONAL, "exact": RATIONAL}


def get_backend(name: str):
    try:
        return _BACKENDS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; use 'floating' or 'rational'") from None
