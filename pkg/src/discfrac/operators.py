"""Fractional sums and differences on shifted integer grids.

Conventions shared by all operators (f of length L, order alpha > 0,
n = smallest integer >= alpha, beta = n - alpha):

    operator                input grid   output origin        length
    ----------------------  -----------  -------------------  ------
    delta-left sum          N_a          a + alpha            L
    delta-right sum         bN           b - alpha            L
    nabla-left sum          N_a          a        (0 at a)    L
    nabla-right sum         bN           b        (0 at b)    L
    delta-left difference   N_a          a + beta             L - n
    delta-right difference  bN           b - beta             L - n
    nabla-left difference   N_a          a + n                L - n
    nabla-right difference  bN           b - n                L - n
    delta-left Caputo       N_a          a + beta             L - n
    delta-right Caputo      bN           b - beta             L - n
    nabla-left Caputo       N_a          a + n                L - n
    nabla-right Caputo      bN           b - n                L - n

The nabla sums carry a conventional zero at their anchor (empty sum).
The single-sum (direct) Riemann forms reproduce the composed values and
extend the nabla differences to anchor+1 (n-1 extra points toward the
anchor); ``extended=True`` exposes the analogous extra points of the
delta differences as well.  The nabla Caputo differences anchor their
inner sum one step before the first value of the n-th difference
(anchor + n - 1 on the left, anchor - n + 1 on the right).

In storage space every pipeline is direction-free: sums are lower
triangular convolutions against the binomial kernel, differences are
iterated storage diffs (see grids module), and only origins differ.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .backends import as_fraction
from .errors import DirectFormIntegerOrder, DomainError, GridTooShort
from .grids import Direction, GridFunction
from .kernels import binomial_weight, kernel_vector


class Kind(enum.Enum):
    DELTA = "delta"
    NABLA = "nabla"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class Family(enum.Enum):
    SUM = "sum"
    RIEMANN = "riemann"
    CAPUTO = "caputo"


class Formulation(enum.Enum):
    COMPOSED = "composed"
    DIRECT = "direct"


def order_ceiling(order) -> int:
    """n = [alpha] + 1 where [alpha] is the greatest integer below alpha."""
    a = as_fraction(order)
    return int(math.ceil(a))


@dataclass(frozen=True)
class OperatorSpec:
    """One fractional operator: kind x side x family at a positive order."""

    kind: Kind
    side: Side
    family: Family
    order: Fraction
    formulation: Formulation = Formulation.COMPOSED

    def __post_init__(self):
        object.__setattr__(self, "order", as_fraction(self.order))
        if self.order <= 0:
            raise DomainError("operator order must be positive")
        if self.formulation is Formulation.DIRECT:
            if self.family is not Family.RIEMANN:
                raise DomainError("direct formulation applies to Riemann differences only")
            if self.order.denominator == 1:
                raise DirectFormIntegerOrder(
                    "the single-sum difference form needs a non-integer order"
                )

    @property
    def n(self) -> int:
        return order_ceiling(self.order)


def _require_direction(spec: OperatorSpec, f: GridFunction) -> None:
    want = Direction.FORWARD if spec.side is Side.LEFT else Direction.BACKWARD
    if f.direction is not want:
        raise DomainError(
            f"{spec.side.value} operators require a {want.value} grid, got {f.direction.value}"
        )


def _convolve(weights, values, skip_first: bool) -> list:
    lo = 1 if skip_first else 0
    out = []
    for m in range(len(values)):
        acc = None
        for j in range(lo, m + 1):
            term = weights[m - j] * values[j]
            acc = term if acc is None else acc + term
        if acc is None:
            acc = 0 * weights[0]
        out.append(acc)
    return out


def _storage_diff_n(values: tuple, n: int) -> tuple:
    vals = values
    for _ in range(n):
        vals = tuple(vals[k + 1] - vals[k] for k in range(len(vals) - 1))
    return vals


def fractional_sum(spec: OperatorSpec, f: GridFunction) -> GridFunction:
    """Fractional sum of order alpha; see the module table for domains."""
    if spec.family is not Family.SUM:
        raise DomainError("fractional_sum needs a spec with family=sum")
    _require_direction(spec, f)
    alpha = spec.order
    w = kernel_vector(f.backend.scalar(alpha), f.length, f.backend)
    if spec.kind is Kind.DELTA:
        vals = _convolve(w, f.values, skip_first=False)
        origin = f.shift_origin(alpha)
    else:
        vals = _convolve(w, f.values, skip_first=True)
        origin = f.origin
    return f.with_values(vals, origin=origin)


def _inner_sum_values(order, f: GridFunction, skip_first: bool) -> list:
    w = kernel_vector(f.backend.scalar(order), f.length, f.backend)
    return _convolve(w, f.values, skip_first=skip_first)


def riemann_difference(
    spec: OperatorSpec, f: GridFunction, *, extended: bool = False
) -> GridFunction:
    """Riemann fractional difference (integer differences of a sum).

    ``extended=True`` is honored by the direct formulation only and adds
    the n-1 points between anchor+1 and the composed domain.
    """
    if spec.family is not Family.RIEMANN:
        raise DomainError("riemann_difference needs a spec with family=riemann")
    _require_direction(spec, f)
    n = spec.n
    alpha = spec.order
    if spec.formulation is Formulation.DIRECT:
        return _riemann_direct(spec, f, extended)
    if f.length < n + 1:
        raise GridTooShort(f"length {f.length} cannot support an order-{alpha} difference")
    beta = Fraction(n) - alpha
    if spec.kind is Kind.DELTA:
        if beta == 0:
            inner_vals, inner_origin = f.values, f.origin
        else:
            inner_vals = _inner_sum_values(beta, f, skip_first=False)
            inner_origin = f.shift_origin(beta)
        vals = _storage_diff_n(tuple(inner_vals), n)
        return f.with_values(vals, origin=inner_origin)
    if beta == 0:
        inner_vals = f.values
    else:
        inner_vals = _inner_sum_values(beta, f, skip_first=True)
    vals = _storage_diff_n(tuple(inner_vals), n)
    return f.with_values(vals, origin=f.shift_origin(n))


def _nabla_single_sum(f: GridFunction, alpha) -> GridFunction:
    """Single-sum nabla difference on its full domain, one step past the
    anchor.  Also meaningful at integer orders, where the kernel truncates
    to the signed binomial row (the limit of the non-integer form)."""
    if f.length < 2:
        raise GridTooShort("grid too short for the single-sum difference form")
    w = kernel_vector(f.backend.scalar(-as_fraction(alpha)), f.length, f.backend)
    out = []
    for m in range(f.length - 1):
        top = m + 1
        acc = w[top - 1] * f.values[1]
        for j in range(2, top + 1):
            acc = acc + w[top - j] * f.values[j]
        out.append(acc)
    return f.with_values(out, origin=f.shift_origin(1))


def _riemann_direct(spec: OperatorSpec, f: GridFunction, extended: bool) -> GridFunction:
    n = spec.n
    alpha = spec.order
    if spec.kind is Kind.DELTA:
        w = kernel_vector(f.backend.scalar(-alpha), f.length, f.backend)
        q = 1 if extended else n
        if f.length < q + 1:
            raise GridTooShort("grid too short for the direct difference form")
        out = []
        for m in range(f.length - q):
            top = q + m
            acc = w[top] * f.values[0]
            for j in range(1, top + 1):
                acc = acc + w[top - j] * f.values[j]
            out.append(acc)
        return f.with_values(out, origin=f.shift_origin(q - alpha))
    grid = _nabla_single_sum(f, alpha)
    if extended:
        return grid
    if grid.length < n:
        raise GridTooShort("grid too short for the composed difference domain")
    return grid.drop_leading(n - 1)


def caputo_difference(spec: OperatorSpec, f: GridFunction) -> GridFunction:
    """Caputo fractional difference (sum of integer differences).

    Integer orders reduce to the plain n-th difference of the matching
    kind (with the signed variants on the right side).
    """
    if spec.family is not Family.CAPUTO:
        raise DomainError("caputo_difference needs a spec with family=caputo")
    _require_direction(spec, f)
    n = spec.n
    alpha = spec.order
    if f.length < n + 1:
        raise GridTooShort(f"length {f.length} cannot support an order-{alpha} difference")
    beta = Fraction(n) - alpha
    diff_vals = _storage_diff_n(f.values, n)
    if spec.kind is Kind.DELTA:
        g_origin = f.origin
    else:
        g_origin = f.shift_origin(n)
    if beta == 0:
        return f.with_values(diff_vals, origin=g_origin)
    w = kernel_vector(f.backend.scalar(beta), len(diff_vals), f.backend)
    vals = _convolve(w, list(diff_vals), skip_first=False)
    if spec.kind is Kind.DELTA:
        origin = f.shift_origin(beta)
    else:
        # inner sum anchored one step before the differenced grid
        origin = g_origin
    return f.with_values(vals, origin=origin)


def _difference_at_anchor(f: GridFunction, k: int):
    """k-th storage difference evaluated at the grid's first point.

    On forward grids this is the forward difference at the origin; on
    backward grids it is the signed difference at the origin (the signed
    variants coincide with storage diffs there).
    """
    return _storage_diff_n(f.values, k)[0]


def caputo_from_riemann(spec: OperatorSpec, f: GridFunction) -> GridFunction:
    """Right-hand side of the Riemann-to-Caputo relation.

    Evaluates the Riemann difference minus the finite correction sum
    whose k-th term pairs the k-th integer difference at the anchor with
    a falling-factorial (delta) or rising-factorial (nabla) weight.  The
    result should match ``caputo_difference`` pointwise.
    """
    if spec.family is not Family.CAPUTO:
        raise DomainError("caputo_from_riemann needs a spec with family=caputo")
    _require_direction(spec, f)
    n = spec.n
    alpha = spec.order
    backend = f.backend
    if f.length < n + 1:
        raise GridTooShort(f"length {f.length} cannot support an order-{alpha} difference")
    if spec.kind is Kind.DELTA:
        riem = riemann_difference(
            OperatorSpec(spec.kind, spec.side, Family.RIEMANN, alpha), f
        )
        anchors = [_difference_at_anchor(f, k) for k in range(n)]
        out = []
        for m, r in enumerate(riem.values):
            corr = None
            for k in range(n):
                c = binomial_weight(Fraction(k + 1) - alpha, n + m - k, backend) * anchors[k]
                corr = c if corr is None else corr + c
            out.append(r - corr)
        return riem.with_values(out)
    # nabla: Riemann side anchored n-1 steps inward, on its extended domain.
    # The single-sum form is used for every order: at integer orders the
    # stated correction terms are pole-over-pole and this together with the
    # fused correction weights realizes their limiting values.
    trimmed = f.drop_leading(n - 1) if n > 1 else f
    riem = _nabla_single_sum(trimmed, alpha)
    anchors = []
    for k in range(n):
        anchors.append(_storage_diff_n(f.values, k)[n - 1 - k])
    out = []
    for m, r in enumerate(riem.values):
        corr = None
        for k in range(n):
            c = binomial_weight(Fraction(k + 1) - alpha, m, backend) * anchors[k]
            corr = c if corr is None else corr + c
        out.append(r - corr)
    return riem.with_values(out)


def caputo_inversion_residual(f: GridFunction, order, side: Side) -> GridFunction:
    """Residual of the nabla sum-after-Caputo inversion identity.

    Computes ``sum_of_order_alpha(caputo_difference(f)) - (f - T)`` where
    ``T`` is the degree-(n-1) discrete Taylor polynomial of ``f`` at the
    Caputo anchor; the contract is that the residual vanishes.
    """
    alpha = as_fraction(order)
    if alpha <= 0:
        raise DomainError("order must be positive")
    if isinstance(side, str):
        side = Side(side)
    n = order_ceiling(alpha)
    backend = f.backend
    spec = OperatorSpec(Kind.NABLA, side, Family.CAPUTO, alpha)
    _require_direction(spec, f)
    cap = caputo_difference(spec, f)
    # anchored sum of the Caputo output: full convolution, origin kept,
    # plus the conventional zero at the anchor point itself
    w = kernel_vector(backend.scalar(alpha), cap.length, backend)
    summed = [backend.zero] + _convolve(w, list(cap.values), skip_first=False)
    anchor_index = n - 1
    taylor_coeffs = [_storage_diff_n(f.values, k)[n - 1 - k] for k in range(n)]
    out = []
    for m, s in enumerate(summed):
        # Taylor weight rising(m, k)/k! at the point m steps inward of the anchor
        t_val = None
        for k in range(n):
            c = binomial_weight(Fraction(m), k, backend) * taylor_coeffs[k]
            t_val = c if t_val is None else t_val + c
        rhs = f.values[anchor_index + m] - t_val
        out.append(s - rhs)
    return f.with_values(out, origin=f.shift_origin(n - 1))


def apply_operator(spec: OperatorSpec, f: GridFunction, *, extended: bool = False) -> GridFunction:
    """Dispatch on the spec's family."""
    if spec.family is Family.SUM:
        return fractional_sum(spec, f)
    if spec.family is Family.RIEMANN:
        return riemann_difference(spec, f, extended=extended)
    return caputo_difference(spec, f)


def semigroup_diagnostic(f: GridFunction, order_a, order_b) -> GridFunction:
    """Residual of composing two delta-left sums against one combined sum.

    Diagnostic only; not part of the verified identity set.
    """
    a, b = as_fraction(order_a), as_fraction(order_b)
    inner = fractional_sum(OperatorSpec(Kind.DELTA, Side.LEFT, Family.SUM, b), f)
    two_step = fractional_sum(OperatorSpec(Kind.DELTA, Side.LEFT, Family.SUM, a), inner)
    combined = fractional_sum(OperatorSpec(Kind.DELTA, Side.LEFT, Family.SUM, a + b), f)
    vals = [x - y for x, y in zip(two_step.values, combined.values)]
    return two_step.with_values(vals)
