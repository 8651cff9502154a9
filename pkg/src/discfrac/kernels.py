"""Falling and rising factorial functions and fractional-sum kernel weights.

The falling factorial is ``t^(alpha) = Gamma(t+1)/Gamma(t+1-alpha)`` with
the convention that a denominator pole yields zero.  The rising factorial
is ``t^^alpha = Gamma(t+alpha)/Gamma(t)`` with ``0^^alpha = 0``.  Every
convolution kernel of the fractional sums and of the single-sum
difference forms reduces to the binomial weight

    w(beta, lag) = Gamma(beta + lag) / (Gamma(beta) * Gamma(lag + 1))
                 = (beta)(beta+1)...(beta+lag-1) / lag!

with ``beta = alpha`` for sums and ``beta = -alpha`` for direct
differences; the normalizing ``1/Gamma(beta)`` is always fused into the
product so the exact backend never evaluates a transcendental gamma.

Floating evaluation goes through log-gamma with explicit sign tracking
(never a direct gamma of a large argument), so kernels stay finite at
large lags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .backends import FLOATING, GammaValue, as_fraction
from .errors import DomainError, PoleAmbiguous

# Multiplier applied to every kernel weight.  Left at 1.0 except inside
# fault_injection(), which the check harness uses to prove it can detect
# a corrupted kernel (self-test mode).
_FAULT_FACTOR = 1.0


class fault_injection:
    """Context manager scaling all kernel weights by ``factor``."""

    def __init__(self, factor: float):
        self.factor = factor
        self._saved = None

    def __enter__(self):
        global _FAULT_FACTOR
        self._saved = _FAULT_FACTOR
        _FAULT_FACTOR = self.factor
        return self

    def __exit__(self, *exc):
        global _FAULT_FACTOR
        _FAULT_FACTOR = self._saved
        return False


def _is_nonpositive_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def _gamma_sign(x: float) -> int:
    """Sign of Gamma(x) away from poles."""
    if x > 0:
        return 1
    return 1 if math.floor(x) % 2 == 0 else -1


def _float_gamma_quotient(x: float, y: float) -> float:
    """Gamma(x)/Gamma(y) for x, y away from poles, via log-gamma."""
    return _gamma_sign(x) * _gamma_sign(y) * math.exp(math.lgamma(x) - math.lgamma(y))


def _reduce_gamma(x: Fraction) -> tuple[Fraction, Fraction | None]:
    """Write Gamma(x) = coef * Gamma(r) with r in (0, 1), exactly.

    For positive integer x the value is the plain factorial and r is None.
    ``x`` must not be a nonpositive integer.
    """
    if x.denominator == 1:
        if x <= 0:
            raise ValueError("gamma pole")
        return Fraction(math.factorial(int(x) - 1)), None
    k = math.floor(x)
    r = x - k
    coef = Fraction(1)
    if k >= 0:
        # Gamma(x) = (r)(r+1)...(r+k-1) Gamma(r)
        for j in range(k):
            coef *= r + j
    else:
        # Gamma(r) = (x)(x+1)...(x-k-1... ) Gamma(x)  =>  divide
        for j in range(-k):
            coef /= x + j
    return coef, r


def _exact_gamma_quotient(x: Fraction, y: Fraction):
    """Gamma(x)/Gamma(y) exactly; x, y away from poles."""
    cx, rx = _reduce_gamma(x)
    cy, ry = _reduce_gamma(y)
    coef = cx / cy
    units: dict = {}
    if rx is not None:
        units[rx] = units.get(rx, 0) + 1
    if ry is not None:
        units[ry] = units.get(ry, 0) - 1
    return GammaValue.make(coef, units)


def falling(t, alpha, backend=FLOATING):
    """Falling factorial ``t^(alpha)``.

    Returns 0 when the denominator gamma sits at a pole and the numerator
    does not.  When both gammas sit at poles the limiting value exists
    only for natural alpha (the finite product ``t(t-1)...(t-alpha+1)``);
    any other exponent raises PoleAmbiguous.
    """
    tf, af = as_fraction(t), as_fraction(alpha)
    x = tf + 1
    y = tf + 1 - af
    if _is_nonpositive_integer(y):
        if _is_nonpositive_integer(x):
            if af.denominator == 1 and af >= 0:
                prod = backend.scalar(1)
                for j in range(int(af)):
                    prod = prod * backend.scalar(tf - j)
                return backend.guard(prod)
            raise PoleAmbiguous(
                f"falling({t}, {alpha}): both gamma arguments at poles"
            )
        return backend.zero
    if _is_nonpositive_integer(x):
        raise DomainError(f"falling({t}, {alpha}): numerator gamma pole")
    if backend.exact:
        return backend.guard(_exact_gamma_quotient(x, y))
    return _float_gamma_quotient(float(x), float(y))


def rising(t, alpha, backend=FLOATING):
    """Rising factorial ``t^^alpha``; ``0^^alpha = 0`` and ``t^^0 = 1``."""
    tf, af = as_fraction(t), as_fraction(alpha)
    if af == 0:
        return backend.one
    if tf == 0:
        return backend.zero
    if _is_nonpositive_integer(tf):
        raise DomainError(f"rising({t}, {alpha}): negative-integer base")
    x = tf + af
    if _is_nonpositive_integer(x):
        raise DomainError(f"rising({t}, {alpha}): numerator gamma pole")
    if backend.exact:
        return backend.guard(_exact_gamma_quotient(x, tf))
    return _float_gamma_quotient(float(x), float(tf))


def gamma_ratio(x, k: int, backend=FLOATING):
    """Finite product ``Gamma(x+k)/Gamma(x) = x(x+1)...(x+k-1)``.

    Defined for every x (a zero factor simply makes the product zero).
    """
    if k < 0:
        raise DomainError("gamma_ratio needs k >= 0")
    xf = as_fraction(x)
    if backend.exact:
        prod = Fraction(1)
        for j in range(k):
            prod *= xf + j
        return backend.guard(prod)
    return _float_gamma_ratio(float(xf), k)


def _float_gamma_ratio(x: float, k: int) -> float:
    for j in range(k):
        if x + j == 0.0:
            return 0.0
    if x > 0:
        return math.exp(math.lgamma(x + k) - math.lgamma(x))
    # negative head as an explicit short product, positive tail via log-gamma
    j0 = 0
    while j0 < k and x + j0 < 0:
        j0 += 1
    head = 1.0
    for j in range(j0):
        head *= x + j
    if j0 >= k:
        return head
    return head * math.exp(math.lgamma(x + k) - math.lgamma(x + j0))


def binomial_weight(beta, lag: int, backend=FLOATING):
    """Kernel weight ``w(beta, lag) = Gamma(beta+lag)/(Gamma(beta) lag!)``."""
    if lag < 0:
        raise DomainError("kernel lag must be nonnegative")
    if backend.exact:
        bf = as_fraction(beta)
        prod = Fraction(1)
        for j in range(lag):
            prod = prod * (bf + j) / (j + 1)
        value = backend.guard(prod)
    else:
        value = _float_weight(float(beta), lag)
    if _FAULT_FACTOR != 1.0:
        value = value * backend.scalar(_FAULT_FACTOR)
    return value


def _float_weight(beta: float, lag: int) -> float:
    for j in range(lag):
        if beta + j == 0.0:
            return 0.0
    if beta > 0:
        return math.exp(math.lgamma(beta + lag) - math.lgamma(beta) - math.lgamma(lag + 1))
    j0 = 0
    while j0 < lag and beta + j0 < 0:
        j0 += 1
    head = 1.0
    for j in range(j0):
        head *= beta + j
    if j0 >= lag:
        return head / math.factorial(lag)
    return head * math.exp(
        math.lgamma(beta + lag) - math.lgamma(beta + j0) - math.lgamma(lag + 1)
    )


def kernel_vector(beta, count: int, backend=FLOATING) -> list:
    """Weights ``[w(beta, 0), ..., w(beta, count-1)]``."""
    if backend.exact:
        bf = as_fraction(beta)
        out = [Fraction(1)]
        for lag in range(1, count):
            out.append(backend.guard(out[-1] * (bf + lag - 1) / lag))
    else:
        b = float(beta)
        out = [_float_weight(b, lag) for lag in range(count)]
    if _FAULT_FACTOR != 1.0:
        out = [v * backend.scalar(_FAULT_FACTOR) for v in out]
    return out


@dataclass(frozen=True)
class KernelCoefficient:
    """One coefficient of a fractional sum, indexed by the lag t - s."""

    value: object
    kind: str
    side: str
    order: Fraction
    lag: int


def sum_kernel(kind: str, side: str, order, lag: int, backend=FLOATING) -> KernelCoefficient:
    """Coefficient multiplying f(s) in the (kind, side) fractional sum.

    All four sums share the same lag profile: the delta kernels are
    falling factorials of the shifted argument and the nabla kernels are
    rising factorials, and both collapse to ``w(order, lag)`` once the
    ``1/Gamma(order)`` normalization is fused in.
    """
    if kind not in ("delta", "nabla"):
        raise DomainError(f"unknown kind {kind!r}")
    if side not in ("left", "right"):
        raise DomainError(f"unknown side {side!r}")
    order_f = as_fraction(order)
    if order_f <= 0:
        raise DomainError("fractional sum order must be positive")
    value = binomial_weight(order_f if backend.exact else float(order_f), lag, backend)
    return KernelCoefficient(value=value, kind=kind, side=side, order=order_f, lag=lag)
