"""Executable checkers for the dual, reflection and relation identities.

Each checker evaluates both sides of one identity on the identity's
stated index set, asserts that both computations land on exactly that
index set (an off-by-one in a domain is reported as a failure, never
absorbed into a tolerance), and reports pointwise residuals.

Tolerance policy: the rational backend must produce residuals that are
exactly zero; the floating backend uses an absolute tolerance for values
of magnitude up to one and a relative tolerance above that.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .backends import FLOATING, as_fraction
from .errors import DomainError
from .grids import Direction, GridFunction, make_grid_function, q_reflect
from .operators import (
    Family,
    Kind,
    OperatorSpec,
    Side,
    caputo_difference,
    caputo_from_riemann,
    caputo_inversion_residual,
    fractional_sum,
    order_ceiling,
    riemann_difference,
)

DEFAULT_TOLERANCE = 1e-10


class IdentityId(enum.Enum):
    LEFT_DUAL_SUM = "LEFT_DUAL_SUM"
    LEFT_DUAL_DIFF = "LEFT_DUAL_DIFF"
    RIGHT_DUAL_SUM = "RIGHT_DUAL_SUM"
    RIGHT_DUAL_DIFF = "RIGHT_DUAL_DIFF"
    CAPUTO_DUAL_LEFT = "CAPUTO_DUAL_LEFT"
    CAPUTO_DUAL_RIGHT = "CAPUTO_DUAL_RIGHT"
    Q_SUM_DELTA = "Q_SUM_DELTA"
    Q_DIFF_DELTA = "Q_DIFF_DELTA"
    Q_CAPUTO_DELTA = "Q_CAPUTO_DELTA"
    Q_SUM_NABLA = "Q_SUM_NABLA"
    Q_DIFF_NABLA = "Q_DIFF_NABLA"
    Q_CAPUTO_NABLA = "Q_CAPUTO_NABLA"
    RELATE_DELTA_LEFT = "RELATE_DELTA_LEFT"
    RELATE_DELTA_RIGHT = "RELATE_DELTA_RIGHT"
    RELATE_NABLA_LEFT = "RELATE_NABLA_LEFT"
    RELATE_NABLA_RIGHT = "RELATE_NABLA_RIGHT"
    CAPUTO_INVERSION = "CAPUTO_INVERSION"


DUAL_IDS = (
    IdentityId.LEFT_DUAL_SUM,
    IdentityId.LEFT_DUAL_DIFF,
    IdentityId.RIGHT_DUAL_SUM,
    IdentityId.RIGHT_DUAL_DIFF,
    IdentityId.CAPUTO_DUAL_LEFT,
    IdentityId.CAPUTO_DUAL_RIGHT,
)
Q_IDS = (
    IdentityId.Q_SUM_DELTA,
    IdentityId.Q_DIFF_DELTA,
    IdentityId.Q_CAPUTO_DELTA,
    IdentityId.Q_SUM_NABLA,
    IdentityId.Q_DIFF_NABLA,
    IdentityId.Q_CAPUTO_NABLA,
)
RELATION_IDS = (
    IdentityId.RELATE_DELTA_LEFT,
    IdentityId.RELATE_DELTA_RIGHT,
    IdentityId.RELATE_NABLA_LEFT,
    IdentityId.RELATE_NABLA_RIGHT,
    IdentityId.CAPUTO_INVERSION,
)


@dataclass
class CheckReport:
    identity: IdentityId
    order: Fraction
    grid: str
    residuals: list = field(default_factory=list)
    max_abs_residual: object = 0
    passed: bool = True
    tolerance: float = DEFAULT_TOLERANCE
    backend: str = "floating"

    def as_record(self) -> dict:
        return {
            "id": self.identity.value,
            "order": str(self.order),
            "grid": self.grid,
            "max_abs_residual": str(self.max_abs_residual),
            "pass": self.passed,
            "points": len(self.residuals),
            "backend": self.backend,
        }


def _residual_ok(res, lhs, rhs, backend, tol) -> bool:
    if backend.exact:
        return res == 0
    scale = max(1.0, abs(lhs), abs(rhs))
    return abs(res) <= tol * scale


def _build_report(identity, order, f, pairs, tolerance) -> CheckReport:
    """pairs: list of (point, lhs_value, rhs_value)."""
    backend = f.backend
    report = CheckReport(
        identity=identity,
        order=as_fraction(order),
        grid=f"{f.direction.value} origin={f.origin} length={f.length}",
        tolerance=tolerance,
        backend=backend.name,
    )
    worst = backend.zero
    ok = True
    for point, lhs, rhs in pairs:
        res = lhs - rhs
        report.residuals.append((point, res))
        if abs(res) > abs(worst):
            worst = res
        if not _residual_ok(res, lhs, rhs, backend, tolerance):
            ok = False
    report.max_abs_residual = abs(worst)
    report.passed = ok
    return report


def _expect_origin(grid: GridFunction, expected, what: str) -> None:
    if grid.origin != as_fraction(expected):
        raise DomainError(
            f"{what}: produced origin {grid.origin}, stated index set starts at {expected}"
        )


def _paired(points, lhs_values, rhs_values):
    if not (len(points) == len(lhs_values) == len(rhs_values)):
        raise DomainError(
            f"index sets differ: {len(lhs_values)} vs {len(rhs_values)} values "
            f"for {len(points)} stated points"
        )
    return list(zip(points, lhs_values, rhs_values))


def check_delta_nabla_dual(f: GridFunction, order, which: IdentityId,
                           tolerance: float = DEFAULT_TOLERANCE) -> CheckReport:
    """Dual transport between delta and nabla operators at shifted arguments.

    LEFT_* expect f on N_a (the nabla side is anchored at a-1);
    RIGHT_DUAL_* expect f on the backward grid from b+1;
    CAPUTO_DUAL_* compare both Caputo forms on the same data.
    """
    if which not in DUAL_IDS:
        raise DomainError(f"{which} is not a delta/nabla dual identity")
    alpha = as_fraction(order)
    n = order_ceiling(alpha)
    L = f.length

    if which is IdentityId.LEFT_DUAL_SUM:
        a = f.origin
        lhs = fractional_sum(OperatorSpec(Kind.DELTA, Side.LEFT, Family.SUM, alpha), f)
        rhs = fractional_sum(
            OperatorSpec(Kind.NABLA, Side.LEFT, Family.SUM, alpha), f.prepend_zero()
        )
        _expect_origin(lhs, a + alpha, "delta-left sum")
        _expect_origin(rhs, a - 1, "anchored nabla-left sum")
        points = [a + m for m in range(L)]
        pairs = _paired(points, lhs.values, rhs.values[1:])
    elif which is IdentityId.LEFT_DUAL_DIFF:
        a = f.origin
        lhs = riemann_difference(OperatorSpec(Kind.DELTA, Side.LEFT, Family.RIEMANN, alpha), f)
        rhs = riemann_difference(
            OperatorSpec(Kind.NABLA, Side.LEFT, Family.RIEMANN, alpha), f.prepend_zero()
        )
        _expect_origin(lhs, a + n - alpha, "delta-left difference")
        _expect_origin(rhs, a - 1 + n, "anchored nabla-left difference")
        points = [a + n + m for m in range(L - n)]
        pairs = _paired(points, lhs.values, rhs.values[1:])
    elif which is IdentityId.RIGHT_DUAL_SUM:
        b = f.origin - 1
        lhs = fractional_sum(
            OperatorSpec(Kind.DELTA, Side.RIGHT, Family.SUM, alpha), f.drop_leading(1)
        )
        rhs = fractional_sum(OperatorSpec(Kind.NABLA, Side.RIGHT, Family.SUM, alpha), f)
        _expect_origin(lhs, b - alpha, "delta-right sum")
        _expect_origin(rhs, b + 1, "anchored nabla-right sum")
        points = [b - m for m in range(L - 1)]
        pairs = _paired(points, lhs.values, rhs.values[1:])
    elif which is IdentityId.RIGHT_DUAL_DIFF:
        b = f.origin - 1
        lhs = riemann_difference(
            OperatorSpec(Kind.DELTA, Side.RIGHT, Family.RIEMANN, alpha), f.drop_leading(1)
        )
        rhs = riemann_difference(OperatorSpec(Kind.NABLA, Side.RIGHT, Family.RIEMANN, alpha), f)
        _expect_origin(lhs, b - (n - alpha), "delta-right difference")
        _expect_origin(rhs, b + 1 - n, "anchored nabla-right difference")
        points = [b - n - m for m in range(L - 1 - n)]
        pairs = _paired(points, lhs.values, rhs.values[1:])
    elif which is IdentityId.CAPUTO_DUAL_LEFT:
        a = f.origin
        lhs = caputo_difference(OperatorSpec(Kind.DELTA, Side.LEFT, Family.CAPUTO, alpha), f)
        rhs = caputo_difference(OperatorSpec(Kind.NABLA, Side.LEFT, Family.CAPUTO, alpha), f)
        _expect_origin(lhs, a + n - alpha, "delta-left Caputo")
        _expect_origin(rhs, a + n, "nabla-left Caputo")
        points = [a + n + m for m in range(L - n)]
        pairs = _paired(points, lhs.values, rhs.values)
    else:  # CAPUTO_DUAL_RIGHT
        b = f.origin
        lhs = caputo_difference(OperatorSpec(Kind.DELTA, Side.RIGHT, Family.CAPUTO, alpha), f)
        rhs = caputo_difference(OperatorSpec(Kind.NABLA, Side.RIGHT, Family.CAPUTO, alpha), f)
        _expect_origin(lhs, b - (n - alpha), "delta-right Caputo")
        _expect_origin(rhs, b - n, "nabla-right Caputo")
        points = [b - n - m for m in range(L - n)]
        pairs = _paired(points, lhs.values, rhs.values)
    return _build_report(which, alpha, f, pairs, tolerance)


def check_q_identity(f: GridFunction, order, which: IdentityId,
                     tolerance: float = DEFAULT_TOLERANCE) -> CheckReport:
    """Reflection identities exchanging left and right operators.

    ``f`` must be a forward grid covering {a..b}; the reflection center
    a+b is taken from the grid endpoints.
    """
    if which not in Q_IDS:
        raise DomainError(f"{which} is not a Q identity")
    if f.direction is not Direction.FORWARD:
        raise DomainError("Q identities take the data as a forward grid on {a..b}")
    alpha = as_fraction(order)
    n = order_ceiling(alpha)
    a = f.origin
    b = f.far_point
    L = f.length
    qf = q_reflect(f, a, b)
    back = f.reversed_view()

    if which is IdentityId.Q_SUM_DELTA:
        lhs = fractional_sum(OperatorSpec(Kind.DELTA, Side.LEFT, Family.SUM, alpha), qf)
        rhs_raw = fractional_sum(OperatorSpec(Kind.DELTA, Side.RIGHT, Family.SUM, alpha), back)
        _expect_origin(rhs_raw, b - alpha, "delta-right sum")
        rhs = q_reflect(rhs_raw, a, b)
        _expect_origin(lhs, a + alpha, "delta-left sum of reflected data")
        points = [a + alpha + m for m in range(L)]
    elif which is IdentityId.Q_DIFF_DELTA:
        lhs = riemann_difference(OperatorSpec(Kind.DELTA, Side.LEFT, Family.RIEMANN, alpha), qf)
        rhs_raw = riemann_difference(
            OperatorSpec(Kind.DELTA, Side.RIGHT, Family.RIEMANN, alpha), back
        )
        _expect_origin(rhs_raw, b - (n - alpha), "delta-right difference")
        rhs = q_reflect(rhs_raw, a, b)
        _expect_origin(lhs, a + n - alpha, "delta-left difference of reflected data")
        points = [a + n - alpha + m for m in range(L - n)]
    elif which is IdentityId.Q_CAPUTO_DELTA:
        lhs = caputo_difference(OperatorSpec(Kind.DELTA, Side.LEFT, Family.CAPUTO, alpha), qf)
        rhs_raw = caputo_difference(
            OperatorSpec(Kind.DELTA, Side.RIGHT, Family.CAPUTO, alpha), back
        )
        _expect_origin(rhs_raw, b - (n - alpha), "delta-right Caputo")
        rhs = q_reflect(rhs_raw, a, b)
        points = [a + n - alpha + m for m in range(L - n)]
    elif which is IdentityId.Q_SUM_NABLA:
        lhs = fractional_sum(
            OperatorSpec(Kind.NABLA, Side.LEFT, Family.SUM, alpha), qf
        ).drop_leading(1)
        rhs_raw = fractional_sum(
            OperatorSpec(Kind.NABLA, Side.RIGHT, Family.SUM, alpha), back
        ).drop_leading(1)
        _expect_origin(rhs_raw, b - 1, "nabla-right sum")
        rhs = q_reflect(rhs_raw, a, b)
        _expect_origin(lhs, a + 1, "nabla-left sum of reflected data")
        points = [a + 1 + m for m in range(L - 1)]
    elif which is IdentityId.Q_DIFF_NABLA:
        lhs = riemann_difference(OperatorSpec(Kind.NABLA, Side.LEFT, Family.RIEMANN, alpha), qf)
        rhs_raw = riemann_difference(
            OperatorSpec(Kind.NABLA, Side.RIGHT, Family.RIEMANN, alpha), back
        )
        _expect_origin(rhs_raw, b - n, "nabla-right difference")
        rhs = q_reflect(rhs_raw, a, b)
        _expect_origin(lhs, a + n, "nabla-left difference of reflected data")
        points = [a + n + m for m in range(L - n)]
    else:  # Q_CAPUTO_NABLA
        lhs = caputo_difference(OperatorSpec(Kind.NABLA, Side.LEFT, Family.CAPUTO, alpha), qf)
        rhs_raw = caputo_difference(
            OperatorSpec(Kind.NABLA, Side.RIGHT, Family.CAPUTO, alpha), back
        )
        _expect_origin(rhs_raw, b - n, "nabla-right Caputo")
        rhs = q_reflect(rhs_raw, a, b)
        points = [a + n + m for m in range(L - n)]

    pairs = _paired(points, [lhs.value_at(p) for p in points], [rhs.value_at(p) for p in points])
    return _build_report(which, alpha, f, pairs, tolerance)


def check_relation(f: GridFunction, order, which: IdentityId,
                   tolerance: float = DEFAULT_TOLERANCE) -> CheckReport:
    """Riemann-to-Caputo relations and the sum-after-Caputo inversion."""
    if which not in RELATION_IDS:
        raise DomainError(f"{which} is not a relation identity")
    alpha = as_fraction(order)
    n = order_ceiling(alpha)

    if which is IdentityId.CAPUTO_INVERSION:
        side = Side.LEFT if f.direction is Direction.FORWARD else Side.RIGHT
        res = caputo_inversion_residual(f, alpha, side)
        zero = f.backend.zero
        pairs = [(p, v, zero) for p, v in zip(res.points(), res.values)]
        return _build_report(which, alpha, f, pairs, tolerance)

    kind = Kind.DELTA if which in (IdentityId.RELATE_DELTA_LEFT, IdentityId.RELATE_DELTA_RIGHT) else Kind.NABLA
    side = Side.LEFT if which in (IdentityId.RELATE_DELTA_LEFT, IdentityId.RELATE_NABLA_LEFT) else Side.RIGHT
    spec = OperatorSpec(kind, side, Family.CAPUTO, alpha)
    lhs = caputo_difference(spec, f)
    rhs = caputo_from_riemann(spec, f)
    if kind is Kind.DELTA:
        start = f.origin + n - alpha if side is Side.LEFT else f.origin - (n - alpha)
    else:
        start = f.origin + n if side is Side.LEFT else f.origin - n
    _expect_origin(lhs, start, "Caputo difference")
    _expect_origin(rhs, start, "Riemann-minus-correction form")
    pairs = _paired(lhs.points(), lhs.values, rhs.values)
    return _build_report(which, alpha, f, pairs, tolerance)


def check_identity(f: GridFunction, order, which: IdentityId,
                   tolerance: float = DEFAULT_TOLERANCE) -> CheckReport:
    if which in DUAL_IDS:
        return check_delta_nabla_dual(f, order, which, tolerance)
    if which in Q_IDS:
        return check_q_identity(f, order, which, tolerance)
    return check_relation(f, order, which, tolerance)


def _grid_requirement(which: IdentityId) -> Direction:
    if which in (IdentityId.RIGHT_DUAL_SUM, IdentityId.RIGHT_DUAL_DIFF,
                 IdentityId.CAPUTO_DUAL_RIGHT, IdentityId.RELATE_DELTA_RIGHT,
                 IdentityId.RELATE_NABLA_RIGHT):
        return Direction.BACKWARD
    return Direction.FORWARD


def random_instance(which: IdentityId, rng: random.Random, backend,
                    min_length: int = 4, max_length: int = 12):
    """Seeded (grid, order) instance admissible for the given identity."""
    length = rng.randint(min_length, max_length)
    den = rng.randint(2, 12)
    num = rng.randrange(1, 2 * den)
    if num == den:
        num += 1
    alpha = Fraction(num, den)
    anchor = Fraction(rng.randint(-12, 12), rng.randint(1, 3))
    values = [Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(length)]
    direction = _grid_requirement(which)
    if which is IdentityId.CAPUTO_INVERSION and rng.random() < 0.5:
        direction = Direction.BACKWARD
    f = make_grid_function(anchor, direction, values, backend)
    return f, alpha


@dataclass
class SuiteResult:
    identity: IdentityId
    instances: int
    failures: int
    max_abs_residual: object
    passed: bool

    def as_record(self) -> dict:
        return {
            "id": self.identity.value,
            "instances": self.instances,
            "failures": self.failures,
            "max_residual": str(self.max_abs_residual),
            "pass": self.passed,
        }


def run_identity_suite(ids=None, instances: int = 200, seed: int = 0,
                       backend=FLOATING, tolerance: float = DEFAULT_TOLERANCE,
                       min_length: int = 4, max_length: int = 12) -> list[SuiteResult]:
    """Randomized identity campaign; deterministic for a fixed seed."""
    if ids is None:
        ids = list(IdentityId)
    results = []
    for which in ids:
        rng = random.Random((seed, which.value).__repr__())
        worst = backend.zero
        failures = 0
        for _ in range(instances):
            f, alpha = random_instance(which, rng, backend, min_length, max_length)
            report = check_identity(f, alpha, which, tolerance)
            if not report.passed:
                failures += 1
            if abs(report.max_abs_residual) > abs(worst):
                worst = report.max_abs_residual
        results.append(
            SuiteResult(
                identity=which,
                instances=instances,
                failures=failures,
                max_abs_residual=worst,
                passed=failures == 0,
            )
        )
    return results
