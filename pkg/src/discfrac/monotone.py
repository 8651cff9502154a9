"""Monotonicity theorem registry, evaluation engine, counterexample search.

Each registered theorem is a finite list of *linear* inequality rows in
the function values: hypothesis rows (operator positivity on the stated
index set, starting conditions), optional "for all k" starting
conditions, and conclusion rows.  A verdict is consistent when the
hypothesis fails or the conclusion holds; a consistent=False case is a
counterexample candidate and is always re-verified under the exact
rational backend before being reported.

"For all k" starting conditions (value bounded below by a rational
function of k on an integer ray) are decided completely: after clearing
the positive denominator they become "polynomial R(k) >= 0 for every
integer k >= j", which is settled exactly by locating the monotonicity
breakpoints of R (integer brackets of the roots of R', found
recursively) and testing R at those integers plus the leading
coefficient for the tail.  The literal inequalities for k up to k_cap
are checked as well and feed the reported margins.

Searches run a vectorized floating prefilter: every row is linear in f,
so one matrix per (theorem, order, length) evaluates all enumerated
functions at once.  The prefilter only ever over-collects candidates
(explicit rows are a subset of the true hypothesis), so exact
re-verification makes the search sound.  Enumeration and candidate
ordering are canonical, so results are deterministic for a fixed seed.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .backends import FLOATING, RATIONAL, as_fraction
from .errors import BudgetExceeded, DomainError, GridTooShort
from .grids import Direction, GridFunction, Verdict, make_grid_function
from .kernels import binomial_weight
from .operators import (
    Family,
    Formulation,
    Kind,
    OperatorSpec,
    Side,
    caputo_difference,
    riemann_difference,
)

SEARCH_EPS = 1e-9


# ---------------------------------------------------------------------------
# polynomial nonnegativity on an integer ray


def _poly_eval(coeffs, x):
    acc = None
    for c in coeffs:
        acc = c if acc is None else acc * x + c
    return acc


def _poly_deriv(coeffs):
    d = len(coeffs) - 1
    return [c * (d - i) for i, c in enumerate(coeffs[:-1])]


def _strip(coeffs):
    snap = 0
    if coeffs and isinstance(coeffs[0], float):
        scale = max((abs(c) for c in coeffs), default=0.0)
        snap = 1e-12 * max(1.0, scale)
    out = list(coeffs)
    while out and abs(out[0]) <= snap:
        out.pop(0)
    return out


def _sign(x):
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def _bisect_bracket(coeffs, lo, hi, sign_lo):
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _sign(_poly_eval(coeffs, mid)) == sign_lo:
            lo = mid
        else:
            hi = mid
    return lo


def _root_brackets(coeffs, lo: int) -> list[int]:
    """Integers u >= lo with a real root of the polynomial in [u, u+1]."""
    coeffs = _strip(coeffs)
    if len(coeffs) <= 1:
        return []
    if len(coeffs) == 2:
        r = -coeffs[1] / coeffs[0]
        if r < lo:
            return []
        return [math.floor(r)]
    crit = _root_brackets(_poly_deriv(coeffs), lo)
    pts = sorted({lo} | set(crit) | {u + 1 for u in crit})
    out = set()
    for s, e in zip(pts, pts[1:]):
        ps, pe = _poly_eval(coeffs, s), _poly_eval(coeffs, e)
        if ps == 0:
            out.add(s)
        elif _sign(ps) * _sign(pe) <= 0:
            out.add(_bisect_bracket(coeffs, s, e, _sign(ps)))
    # unbounded tail: monotone toward the sign of the leading coefficient
    s = pts[-1]
    ps = _poly_eval(coeffs, s)
    tail_sign = _sign(coeffs[0])
    if ps == 0:
        out.add(s)
    elif _sign(ps) != tail_sign:
        e, step = s + 1, 1
        while _sign(_poly_eval(coeffs, e)) == _sign(ps):
            step *= 2
            e += step
        out.add(_bisect_bracket(coeffs, s, e, _sign(ps)))
    return sorted(out)


def poly_nonneg_on_integer_ray(coeffs, start: int):
    """Decide ``R(k) >= 0`` for every integer ``k >= start``.

    Returns (ok, witness) where witness is a violating integer if any.
    """
    c = _strip(coeffs)
    if not c:
        return True, None
    if len(c) == 1:
        return (True, None) if c[0] >= 0 else (False, start)
    if c[0] < 0:
        k, step = start, 1
        while _poly_eval(c, k) >= 0:
            step *= 2
            k += step
        return False, k
    candidates = {start}
    for u in _root_brackets(_poly_deriv(c), start):
        candidates.add(u)
        candidates.add(u + 1)
    for k in sorted(candidates):
        if k >= start and _poly_eval(c, k) < 0:
            return False, k
    return True, None


# ---------------------------------------------------------------------------
# theorem cases and verdicts


@dataclass(frozen=True)
class RayCondition:
    """``bound >= P(k)/Q(k)`` for all integers k >= start, cleared to R >= 0."""

    label: str
    r_coeffs: tuple
    q_coeffs: tuple
    start: int
    bound: object  # the left-hand value, also the k -> infinity slack


@dataclass(frozen=True)
class TheoremCase:
    theorem_id: str
    anchor: Fraction
    order: Fraction
    f: GridFunction
    k_cap: int = 64


@dataclass
class TheoremVerdict:
    hypothesis_holds: bool
    conclusion_holds: bool
    hypothesis_margins: list
    conclusion_margins: list

    @property
    def consistent(self) -> bool:
        return (not self.hypothesis_holds) or self.conclusion_holds


@dataclass(frozen=True)
class TheoremStatement:
    theorem_id: str
    description: str
    order_range: tuple
    direction: Direction
    origin_offset: int  # grid origin = anchor + offset
    leading_inert: bool  # first stored value is never read
    min_length: int  # minimum stored grid length
    builder: Callable  # case -> (hyp_rows, ray_conditions, concl_rows)
    note: str = ""  # statement quirks kept literal, surfaced in reports


def is_nu_monotone(f: GridFunction, nu, direction: str = "increasing") -> Verdict:
    """Weakened monotonicity of order nu in (0, 1) on an integer forward grid.

    increasing: f(first) >= 0 and f(t+1) >= nu*f(t) at every step;
    decreasing mirrors with f(t+1) <= nu*f(t).
    """
    nu_f = as_fraction(nu)
    if not (0 < nu_f < 1):
        raise DomainError("nu must lie strictly between 0 and 1")
    if f.direction is not Direction.FORWARD or f.origin.denominator != 1:
        raise DomainError("nu-monotonicity is checked on integer forward grids")
    scal = f.backend.scalar(nu_f)
    rows = [(f.point(0), f.values[0])]
    for j in range(f.length - 1):
        if direction == "increasing":
            rows.append((f.point(j + 1), f.values[j + 1] - scal * f.values[j]))
        else:
            rows.append((f.point(j + 1), scal * f.values[j] - f.values[j + 1]))
    worst_point, margin = min(rows, key=lambda r: r[1])
    return Verdict(holds=margin >= 0, worst_point=worst_point, margin=margin)


# ---------------------------------------------------------------------------
# row builders

def _op_rows(grid: GridFunction, label: str) -> list:
    return [(f"{label} t={grid.point(m)}", v) for m, v in enumerate(grid.values)]


def _pair_rows(values, points, offset: int, count: int, label: str, at: int = 1) -> list:
    """Nondecreasing-pair rows; ``at`` picks which pair element names the row
    (0 for statements quantified at the earlier storage point, 1 for the
    later one, matching each statement's index set)."""
    return [
        (f"{label} t={points[offset + j + at]}", values[offset + j + 1] - values[offset + j])
        for j in range(count)
    ]


def _delta_riemann(case: TheoremCase) -> GridFunction:
    side = Side.LEFT if case.f.direction is Direction.FORWARD else Side.RIGHT
    return riemann_difference(
        OperatorSpec(Kind.DELTA, side, Family.RIEMANN, case.order), case.f
    )


def _nabla_riemann_extended(case: TheoremCase, prepend: bool) -> GridFunction:
    side = Side.LEFT if case.f.direction is Direction.FORWARD else Side.RIGHT
    f = case.f.prepend_zero() if prepend else case.f
    return riemann_difference(
        OperatorSpec(Kind.NABLA, side, Family.RIEMANN, case.order, Formulation.DIRECT),
        f,
        extended=True,
    )


def _delta_caputo(case: TheoremCase) -> GridFunction:
    side = Side.LEFT if case.f.direction is Direction.FORWARD else Side.RIGHT
    return caputo_difference(
        OperatorSpec(Kind.DELTA, side, Family.CAPUTO, case.order), case.f
    )


def _caputo_bound_rows(case: TheoremCase, n: int) -> list:
    """Caputo operator plus the anchor-correction lower bound, as rows >= 0."""
    cap = _delta_caputo(case)
    v = case.f.values
    backend = case.f.backend
    alpha = case.order
    rows = []
    for m, c in enumerate(cap.values):
        bound = binomial_weight(Fraction(1) - alpha, n + m, backend) * v[0]
        if n == 2:
            bound = bound + binomial_weight(Fraction(2) - alpha, m + 1, backend) * (v[1] - v[0])
        rows.append((f"frac t={cap.point(m)}", c + bound))
    return rows


def _one_term_ray(bound, f0, shift: int, nu, start: int, label: str) -> RayCondition:
    # bound >= nu*f0/(k+shift) for integer k >= start
    return RayCondition(
        label=label,
        r_coeffs=(bound, shift * bound - nu * f0),
        q_coeffs=(1, shift),
        start=start,
        bound=bound,
    )


def _two_term_ray(bound, f1, f0, nu, label: str) -> RayCondition:
    # bound >= nu*f1/(k+2) + nu*(k+1-nu)*f0/((k+2)(k+3)), k >= 1
    r = (
        bound,
        5 * bound - nu * f1 - nu * f0,
        6 * bound - 3 * nu * f1 - nu * (1 - nu) * f0,
    )
    return RayCondition(label=label, r_coeffs=r, q_coeffs=(1, 5, 6), start=1, bound=bound)


def _three_term_ray(bound, f2, f1, f0, nu, label: str) -> RayCondition:
    # bound >= nu*f2/k + nu*(k-nu)*f1/(k(k+1)) + nu*(k+1-nu)(k-nu)*f0/(k(k+1)(k+2)), k >= 2
    r = (
        bound,
        3 * bound - nu * f2 - nu * f1 - nu * f0,
        2 * bound - 3 * nu * f2 - nu * (2 - nu) * f1 - nu * (1 - 2 * nu) * f0,
        -2 * nu * f2 + 2 * nu * nu * f1 - nu * nu * (nu - 1) * f0,
    )
    return RayCondition(label=label, r_coeffs=r, q_coeffs=(1, 3, 2, 0), start=2, bound=bound)


def _build_jep1(case):
    v = case.f.values
    pts = case.f.points()
    hyp = [(f"start f({pts[0]})>=0", v[0]), (f"start f({pts[1]})>=f({pts[0]})", v[1] - v[0])]
    hyp += _op_rows(_delta_riemann(case), "frac")
    concl = _pair_rows(v, pts, 0, case.f.length - 1, "pair", at=0)
    return hyp, [], concl


def _build_slov_delta(stage: int):
    # stage 1, 2, 3: progressively weaker starting conditions
    def build(case):
        v = case.f.values
        pts = case.f.points()
        nu = case.f.backend.scalar(case.order)
        hyp = _op_rows(_delta_riemann(case), "frac")
        if stage == 1:
            rays = [_one_term_ray(v[1], v[0], 1, nu, 0, "start")]
        elif stage == 2:
            rays = [_two_term_ray(v[2], v[1], v[0], nu, "start")]
        else:
            rays = [_three_term_ray(v[3], v[2], v[1], v[0], nu, "start")]
        concl = _pair_rows(v, pts, stage, case.f.length - 1 - stage, "pair", at=0)
        return hyp, rays, concl

    return build


def _build_jep(case):
    v = case.f.values
    pts = case.f.points()
    hyp = _op_rows(_nabla_riemann_extended(case, prepend=False), "frac")
    concl = _pair_rows(v, pts, 1, case.f.length - 2, "pair")
    return hyp, [], concl


def _build_jepp(case):
    v = case.f.values
    pts = case.f.points()
    hyp = _op_rows(_nabla_riemann_extended(case, prepend=False), "frac")
    concl = _pair_rows(v, pts, 1, case.f.length - 2, "pair")
    return hyp, [], concl


def _build_slov_nabla(stage: int):
    def build(case):
        v = case.f.values  # stored grid starts one step before the anchor
        pts = case.f.points()
        nu = case.f.backend.scalar(case.order)
        frac = _nabla_riemann_extended(case, prepend=False).drop_leading(stage + 1)
        hyp = _op_rows(frac, "frac")
        if stage == 1:
            rays = [_one_term_ray(v[2], v[1], 2, nu, 0, "start")]
        elif stage == 2:
            rays = [_two_term_ray(v[3], v[2], v[1], nu, "start")]
        else:
            rays = [_three_term_ray(v[4], v[3], v[2], v[1], nu, "start")]
        concl = _pair_rows(v, pts, stage + 1, case.f.length - 2 - stage, "pair")
        return hyp, rays, concl

    return build


def _build_u1(case):
    v = case.f.values
    pts = case.f.points()
    nu = case.f.backend.scalar(case.order)
    hyp = [(f"start f({pts[0]})>=0", v[0])] + _op_rows(_delta_riemann(case), "frac")
    concl = [(f"start f({pts[0]})>=0", v[0])]
    concl += [
        (f"step t={pts[j + 1]}", v[j + 1] - nu * v[j]) for j in range(case.f.length - 1)
    ]
    return hyp, [], concl


def _build_u3(case):
    v = case.f.values
    pts = case.f.points()
    hyp = [(f"start f({pts[0]})>=0", v[0])]
    hyp += _pair_rows(v, pts, 0, case.f.length - 1, "pair", at=0)
    concl = _op_rows(_delta_riemann(case), "frac")
    return hyp, [], concl


def _build_uu1(case):
    v = case.f.values
    pts = case.f.points()
    nu = case.f.backend.scalar(case.order)
    hyp = _op_rows(_nabla_riemann_extended(case, prepend=True), "frac")
    concl = [(f"start f({pts[0]})>=0", v[0])]
    concl += [
        (f"step t={pts[j + 1]}", v[j + 1] - nu * v[j]) for j in range(case.f.length - 1)
    ]
    return hyp, [], concl


def _build_uu2(case):
    v = case.f.values
    pts = case.f.points()
    hyp = [(f"start f({pts[0]})>=0", v[0])]
    hyp += _pair_rows(v, pts, 0, case.f.length - 1, "pair", at=0)
    concl = _op_rows(_nabla_riemann_extended(case, prepend=True), "frac")
    return hyp, [], concl


def _build_caputo_delta(stage: int):
    # stage 0 mirrors the plain starting pair; stages 1..3 the weakened ones
    def build(case):
        v = case.f.values
        pts = case.f.points()
        nu = case.f.backend.scalar(case.order)
        hyp = _caputo_bound_rows(case, n=2)
        rays = []
        if stage == 0:
            hyp = [
                (f"start f({pts[0]})>=0", v[0]),
                (f"start f({pts[1]})>=f({pts[0]})", v[1] - v[0]),
            ] + hyp
        elif stage == 1:
            rays = [_one_term_ray(v[1], v[0], 1, nu, 0, "start")]
        elif stage == 2:
            rays = [_two_term_ray(v[2], v[1], v[0], nu, "start")]
        else:
            rays = [_three_term_ray(v[3], v[2], v[1], v[0], nu, "start")]
        concl = _pair_rows(v, pts, stage, case.f.length - 1 - stage, "pair", at=0)
        return hyp, rays, concl

    return build


def _build_c5(case):
    v = case.f.values
    pts = case.f.points()
    nu = case.f.backend.scalar(case.order)
    hyp = [(f"start f({pts[0]})>=0", v[0])] + _caputo_bound_rows(case, n=1)
    concl = [(f"start f({pts[0]})>=0", v[0])]
    concl += [
        (f"step t={pts[j + 1]}", v[j + 1] - nu * v[j]) for j in range(case.f.length - 1)
    ]
    return hyp, [], concl


def _build_c6(case):
    v = case.f.values
    pts = case.f.points()
    hyp = [(f"start f({pts[0]})>=0", v[0])]
    hyp += _pair_rows(v, pts, 0, case.f.length - 1, "pair", at=0)
    concl = _caputo_bound_rows(case, n=1)
    return hyp, [], concl


def _build_d1(case):
    u = case.f.values
    pts = case.f.points()
    hyp = [(f"start f({pts[0]})>=0", u[0]), (f"start f({pts[1]})>=f({pts[0]})", u[1] - u[0])]
    hyp += _op_rows(_delta_riemann(case), "frac")
    concl = _pair_rows(u, pts, 0, case.f.length - 1, "pair", at=0)
    return hyp, [], concl


def _build_d_slov(stage: int):
    def build(case):
        u = case.f.values
        pts = case.f.points()
        alpha = case.f.backend.scalar(case.order)
        hyp = _op_rows(_delta_riemann(case), "frac")
        if stage == 1:
            hyp = [(f"start f({pts[0]})>=0", u[0])] + hyp
            rays = [_one_term_ray(u[1], u[0], 1, alpha, 0, "start")]
        elif stage == 2:
            rays = [_two_term_ray(u[2], u[1], u[0], alpha, "start")]
        else:
            rays = [_three_term_ray(u[3], u[2], u[1], u[0], alpha, "start")]
        concl = _pair_rows(u, pts, stage, case.f.length - 1 - stage, "pair", at=0)
        return hyp, rays, concl

    return build


def _build_d5(case):
    u = case.f.values
    pts = case.f.points()
    alpha = case.f.backend.scalar(case.order)
    hyp = [(f"start f({pts[0]})>=0", u[0])] + _op_rows(_delta_riemann(case), "frac")
    concl = [
        (f"step t={pts[m + 1]}", u[m + 1] - alpha * u[m]) for m in range(case.f.length - 1)
    ]
    return hyp, [], concl


def _build_d6(case):
    u = case.f.values
    pts = case.f.points()
    hyp = [(f"start f({pts[0]})>=0", u[0])]
    hyp += _pair_rows(u, pts, 0, case.f.length - 1, "pair")
    concl = _op_rows(_delta_riemann(case), "frac")
    return hyp, [], concl


def _build_n1(case):
    u = case.f.values
    pts = case.f.points()
    hyp = _op_rows(_nabla_riemann_extended(case, prepend=False), "frac")
    concl = _pair_rows(u, pts, 1, case.f.length - 2, "pair")
    return hyp, [], concl


def _build_cd1(case):
    u = case.f.values
    pts = case.f.points()
    backend = case.f.backend
    alpha = case.order
    cap = _delta_caputo(case)
    hyp = [(f"start f({pts[0]})>=0", u[0]), (f"start f({pts[1]})>=f({pts[0]})", u[1] - u[0])]
    for m, c in enumerate(cap.values):
        bound = binomial_weight(Fraction(1) - alpha, m + 2, backend) * u[0]
        bound = bound - binomial_weight(Fraction(2) - alpha, m + 1, backend) * (u[0] - u[1])
        hyp.append((f"frac t={cap.point(m)}", c + bound))
    concl = _pair_rows(u, pts, 0, case.f.length - 1, "pair", at=0)
    return hyp, [], concl


def _build_cd5(case):
    u = case.f.values
    pts = case.f.points()
    backend = case.f.backend
    alpha = case.order
    scal = backend.scalar(alpha)
    cap = _delta_caputo(case)
    hyp = [(f"start f({pts[0]})>=0", u[0])]
    for m, c in enumerate(cap.values):
        hyp.append(
            (f"frac t={cap.point(m)}",
             c + binomial_weight(Fraction(1) - alpha, m + 1, backend) * u[0])
        )
    concl = [(f"step t={pts[m + 1]}", u[m + 1] - scal * u[m]) for m in range(case.f.length - 1)]
    return hyp, [], concl


_FWD, _BWD = Direction.FORWARD, Direction.BACKWARD

THEOREMS: dict[str, TheoremStatement] = {}


def _register(theorem_id, description, order_range, direction, origin_offset,
              leading_inert, min_length, builder, note=""):
    THEOREMS[theorem_id] = TheoremStatement(
        theorem_id, description, order_range, direction, origin_offset,
        leading_inert, min_length, builder, note,
    )


_register("T_JEP1", "forward Riemann positivity with nonnegative nondecreasing start "
          "forces nondecreasing", (1, 2), _FWD, 0, False, 3, _build_jep1)
_register("T_JEP", "nabla Riemann positivity from the anchor forces nondecreasing "
          "one step in", (1, 2), _FWD, 0, False, 3, _build_jep)
_register("T_JEPP", "nabla Riemann positivity anchored one step before the data "
          "forces nondecreasing", (1, 2), _FWD, -1, True, 3, _build_jepp)
_register("T_SLOV1", "Riemann positivity with the one-term k-family start",
          (1, 2), _FWD, 0, False, 3, _build_slov_delta(1))
_register("T_SLOV11", "nabla mirror of the one-term k-family start",
          (1, 2), _FWD, -1, True, 4, _build_slov_nabla(1),
          note="hypothesis index set starts two steps past the anchor, one "
               "later than the plain nabla statement; kept literal")
_register("T_SLOV2", "Riemann positivity with the two-term k-family start",
          (1, 2), _FWD, 0, False, 4, _build_slov_delta(2))
_register("T_SLOV22", "nabla mirror of the two-term k-family start",
          (1, 2), _FWD, -1, True, 5, _build_slov_nabla(2))
_register("T_SLOV3", "Riemann positivity with the three-term k-family start",
          (1, 2), _FWD, 0, False, 5, _build_slov_delta(3))
_register("T_SLOV33", "nabla mirror of the three-term k-family start",
          (1, 2), _FWD, -1, True, 6, _build_slov_nabla(3))
_register("T_U1", "low-order Riemann positivity forces nu-increasing",
          (0, 1), _FWD, 0, False, 2, _build_u1)
_register("T_UU1", "low-order nabla positivity anchored one step back forces "
          "nu-increasing", (0, 1), _FWD, 0, False, 2, _build_uu1,
          note="no separate nonnegative-start hypothesis; the first operator "
               "row already equals the starting value")
_register("T_U3", "nondecreasing with nonnegative start forces Riemann positivity",
          (0, 1), _FWD, 0, False, 2, _build_u3)
_register("T_UU2", "nondecreasing with nonnegative start forces anchored nabla "
          "positivity", (0, 1), _FWD, 0, False, 2, _build_uu2)
_register("T_C1", "Caputo lower bound with nonnegative nondecreasing start",
          (1, 2), _FWD, 0, False, 3, _build_caputo_delta(0))
_register("T_C2", "Caputo lower bound with the one-term k-family start",
          (1, 2), _FWD, 0, False, 3, _build_caputo_delta(1))
_register("T_C3", "Caputo lower bound with the two-term k-family start",
          (1, 2), _FWD, 0, False, 4, _build_caputo_delta(2))
_register("T_C4", "Caputo lower bound with the three-term k-family start",
          (1, 2), _FWD, 0, False, 5, _build_caputo_delta(3))
_register("T_C5", "low-order Caputo lower bound forces nu-increasing",
          (0, 1), _FWD, 0, False, 2, _build_c5)
_register("T_C6", "nondecreasing with nonnegative start forces the Caputo lower "
          "bound", (0, 1), _FWD, 0, False, 2, _build_c6)
_register("T_D1", "backward Riemann positivity with nonnegative start pair forces "
          "nonincreasing", (1, 2), _BWD, 0, False, 3, _build_d1)
_register("T_N1", "backward nabla positivity anchored one step out forces "
          "nonincreasing", (1, 2), _BWD, 1, True, 3, _build_n1)
_register("T_D2", "backward mirror of the one-term k-family start",
          (1, 2), _BWD, 0, False, 3, _build_d_slov(1),
          note="conclusion index set starts one step inward of the plain "
               "backward statement; kept literal")
_register("T_D3", "backward mirror of the two-term k-family start",
          (1, 2), _BWD, 0, False, 4, _build_d_slov(2))
_register("T_D4", "backward mirror of the three-term k-family start",
          (1, 2), _BWD, 0, False, 5, _build_d_slov(3))
_register("T_D5", "low-order backward Riemann positivity forces alpha-decreasing",
          (0, 1), _BWD, 0, False, 2, _build_d5)
_register("T_D6", "decreasing with nonnegative end forces backward Riemann "
          "positivity", (0, 1), _BWD, 0, False, 2, _build_d6)
_register("T_CD1", "backward Caputo lower bound with nonnegative start pair",
          (1, 2), _BWD, 0, False, 3, _build_cd1)
_register("T_CD5", "low-order backward Caputo lower bound forces alpha-decreasing",
          (0, 1), _BWD, 0, False, 2, _build_cd5)


# ---------------------------------------------------------------------------
# evaluation


def make_case(theorem_id: str, live_values, order, anchor=0, k_cap: int = 64,
              backend=FLOATING) -> TheoremCase:
    """Build a case from the live (enumerated) values.

    Statements whose stated data starts one step before the operator
    anchor carry an inert leading slot; it is filled with zero and never
    read by the operator or any predicate.
    """
    stmt = THEOREMS[theorem_id]
    anchor_f = as_fraction(anchor)
    stored = ([0] + list(live_values)) if stmt.leading_inert else list(live_values)
    origin = anchor_f + stmt.origin_offset
    f = make_grid_function(origin, stmt.direction, stored, backend)
    return TheoremCase(theorem_id, anchor_f, as_fraction(order), f, k_cap)


def _ray_rows(ray: RayCondition, k_cap: int) -> list:
    rows = []
    for k in range(ray.start, k_cap + 1):
        q = _poly_eval(ray.q_coeffs, k)
        rows.append((f"{ray.label} k={k}", _poly_eval(ray.r_coeffs, k) / q))
    rows.append((f"{ray.label} k->inf", ray.bound))
    return rows


def expanded_hypothesis_rows(case: TheoremCase, hyp_rows, rays) -> list:
    rows = list(hyp_rows)
    for ray in rays:
        rows.extend(_ray_rows(ray, case.k_cap))
    return rows


def evaluate_theorem(case: TheoremCase) -> TheoremVerdict:
    """Evaluate hypothesis and conclusion predicates on the case's grid."""
    stmt = THEOREMS[case.theorem_id]
    lo, hi = stmt.order_range
    if not (lo < case.order < hi):
        raise DomainError(
            f"{case.theorem_id} needs an order strictly between {lo} and {hi}"
        )
    if case.f.direction is not stmt.direction:
        raise DomainError(f"{case.theorem_id} expects a {stmt.direction.value} grid")
    if case.f.origin != case.anchor + stmt.origin_offset:
        raise DomainError(
            f"{case.theorem_id} expects the grid origin at anchor{stmt.origin_offset:+d}"
        )
    if case.f.length < stmt.min_length:
        raise GridTooShort(
            f"{case.theorem_id} needs at least {stmt.min_length} stored values"
        )
    hyp_rows, rays, concl_rows = stmt.builder(case)
    margins = expanded_hypothesis_rows(case, hyp_rows, rays)
    hyp_ok = all(v >= 0 for _, v in margins)
    for ray in rays:
        ok, witness = poly_nonneg_on_integer_ray(list(ray.r_coeffs), ray.start)
        if not ok:
            hyp_ok = False
            if witness > case.k_cap:
                q = _poly_eval(ray.q_coeffs, witness)
                margins.append(
                    (f"{ray.label} k={witness}", _poly_eval(list(ray.r_coeffs), witness) / q)
                )
    concl_ok = all(v >= 0 for _, v in concl_rows)
    return TheoremVerdict(
        hypothesis_holds=hyp_ok,
        conclusion_holds=concl_ok,
        hypothesis_margins=margins,
        conclusion_margins=list(concl_rows),
    )


# ---------------------------------------------------------------------------
# proof-route transports


def jepp_via_dual_transport(case: TheoremCase) -> TheoremVerdict:
    """Evaluate the anchored-nabla statement through its dual forward route.

    The first two hypothesis points are read off directly (they reduce to
    the starting pair), the rest are computed with the forward-difference
    operator at the dual-shifted argument, and the conclusion is the
    forward statement's conclusion on the trimmed grid.  The verdict must
    match ``evaluate_theorem`` row for row.
    """
    if case.theorem_id != "T_JEPP":
        raise DomainError("transport route is defined for T_JEPP")
    g = case.f.drop_leading(1)  # live data from the anchor on
    v = g.values
    pts = g.points()
    nu = g.backend.scalar(case.order)
    hyp = [
        (f"frac t={pts[0]}", v[0]),
        (f"frac t={pts[1]}", v[1] - nu * v[0]),
    ]
    delta = riemann_difference(
        OperatorSpec(Kind.DELTA, Side.LEFT, Family.RIEMANN, case.order), g
    )
    hyp += [(f"frac t={pts[2] + m}", val) for m, val in enumerate(delta.values)]
    concl = _pair_rows(case.f.values, case.f.points(), 1, case.f.length - 2, "pair")
    hyp_ok = all(x >= 0 for _, x in hyp)
    concl_ok = all(x >= 0 for _, x in concl)
    return TheoremVerdict(hyp_ok, concl_ok, hyp, concl)


def d1_via_q_reflection(case: TheoremCase) -> TheoremVerdict:
    """Evaluate the backward statement by reflecting onto the forward one.

    Backward storage is already reflection-ordered, so the reflected
    function is the same value tuple read as a forward grid; the verdict
    must match ``evaluate_theorem`` row for row.
    """
    if case.theorem_id != "T_D1":
        raise DomainError("reflection route is defined for T_D1")
    b = case.f.origin
    a = b - (case.f.length - 1)
    g = GridFunction(
        origin=a, direction=Direction.FORWARD, values=case.f.values, backend=case.f.backend
    )
    forward_case = TheoremCase("T_JEP1", a, case.order, g, case.k_cap)
    return evaluate_theorem(forward_case)


# ---------------------------------------------------------------------------
# counterexample search


@dataclass
class SearchResult:
    theorem_id: str
    order: Fraction
    live_length: int
    instances: int
    hypothesis_count: int
    min_conclusion_margin: float | None
    counterexamples: list = field(default_factory=list)
    witness: tuple | None = None
    witness_margin: object = None

    def as_record(self) -> dict:
        return {
            "id": self.theorem_id,
            "order": str(self.order),
            "length": self.live_length,
            "instances": self.instances,
            "hypothesis_count": self.hypothesis_count,
            "min_conclusion_margin": (
                None if self.min_conclusion_margin is None
                else repr(self.min_conclusion_margin)
            ),
            "counterexamples": [
                [str(x) for x in c.f.values] for c in self.counterexamples
            ],
            "witness": None if self.witness is None else [str(x) for x in self.witness],
            "witness_margin": None if self.witness_margin is None else str(self.witness_margin),
        }


def _matrices(theorem_id: str, live_length: int, order, k_cap: int, anchor):
    """Float row matrices for the linear hypothesis and conclusion rows."""
    stmt = THEOREMS[theorem_id]
    zero_case = make_case(theorem_id, [0.0] * live_length, order, anchor, k_cap, FLOATING)
    h0, rays0, c0 = stmt.builder(zero_case)
    base_h = [val for _, val in expanded_hypothesis_rows(zero_case, h0, rays0)]
    base_c = [val for _, val in c0]
    if any(abs(x) > 1e-9 for x in base_h + base_c):
        raise AssertionError(f"{theorem_id}: rows are not linear in the data")
    H = np.zeros((len(base_h), live_length))
    C = np.zeros((len(base_c), live_length))
    for i in range(live_length):
        unit = [0.0] * live_length
        unit[i] = 1.0
        case = make_case(theorem_id, unit, order, anchor, k_cap, FLOATING)
        hr, rays, cr = stmt.builder(case)
        H[:, i] = [val for _, val in expanded_hypothesis_rows(case, hr, rays)]
        C[:, i] = [val for _, val in cr]
    return H, C


def _search_instance(theorem_id: str, live_length: int, value_set, order,
                     mode: str, samples: int | None, seed: int, k_cap: int,
                     anchor) -> SearchResult:
    stmt = THEOREMS[theorem_id]
    values_exact = [as_fraction(v) for v in value_set]
    H, C = _matrices(theorem_id, live_length, order, k_cap, anchor)
    if mode == "exhaustive":
        combos = list(itertools.product(values_exact, repeat=live_length))
    else:
        rng = random.Random((seed, theorem_id, str(order)).__repr__())
        combos = [
            tuple(rng.choice(values_exact) for _ in range(live_length))
            for _ in range(samples)
        ]
    F = np.array([[float(x) for x in combo] for combo in combos])
    hyp_min = (F @ H.T).min(axis=1)
    concl_min = (F @ C.T).min(axis=1)
    hyp_pass = hyp_min >= -SEARCH_EPS
    candidates = np.nonzero(hyp_pass & (concl_min < SEARCH_EPS))[0]

    counterexamples = []
    for idx in candidates:
        exact_case = make_case(theorem_id, combos[idx], order, anchor, k_cap, RATIONAL)
        verdict = evaluate_theorem(exact_case)
        if not verdict.consistent:
            counterexamples.append(exact_case)

    # nonvacuity witness: the hypothesis-true nonzero function with the best
    # margin, strictly positive when the value set admits one at all
    witness = None
    witness_margin = None
    passing = np.nonzero(hyp_pass)[0]
    order_desc = passing[np.argsort(-hyp_min[passing], kind="stable")]
    for idx in order_desc[:400]:
        combo = combos[idx]
        if not any(x != 0 for x in combo):
            continue
        exact_case = make_case(theorem_id, combo, order, anchor, k_cap, RATIONAL)
        verdict = evaluate_theorem(exact_case)
        if not verdict.hypothesis_holds:
            continue
        margin = min(v for _, v in verdict.hypothesis_margins)
        if witness is None or margin > witness_margin:
            witness = combo
            witness_margin = margin
        if margin > 0:
            break

    hyp_count = int(hyp_pass.sum())
    min_concl = float(concl_min[hyp_pass].min()) if hyp_count else None
    return SearchResult(
        theorem_id=theorem_id,
        order=as_fraction(order),
        live_length=live_length,
        instances=len(combos),
        hypothesis_count=hyp_count,
        min_conclusion_margin=min_concl,
        counterexamples=counterexamples,
        witness=witness,
        witness_margin=witness_margin,
    )


def default_orders(theorem_id: str) -> list[Fraction]:
    lo, _ = THEOREMS[theorem_id].order_range
    if lo == 0:
        return [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    return [Fraction(5, 4), Fraction(3, 2), Fraction(7, 4)]


def min_live_length(theorem_id: str) -> int:
    stmt = THEOREMS[theorem_id]
    return stmt.min_length - (1 if stmt.leading_inert else 0)


def search_counterexamples(theorem_id: str, grid_length: int, value_set,
                           nu_samples=None, mode: str = "exhaustive",
                           budget: int = 500_000, seed: int = 0,
                           k_cap: int = 64, anchor=0) -> list[TheoremCase]:
    """Enumerate (or sample) live value vectors and return every case that
    stays inconsistent under exact re-verification.  Expected empty."""
    results = search_campaign(theorem_id, grid_length, value_set, nu_samples,
                              mode, budget, seed, k_cap, anchor)
    out = []
    for res in results:
        out.extend(res.counterexamples)
    return out


def search_campaign(theorem_id: str, grid_length: int, value_set,
                    nu_samples=None, mode: str = "exhaustive",
                    budget: int = 500_000, seed: int = 0, k_cap: int = 64,
                    anchor=0) -> list[SearchResult]:
    """Per-order search results, including witness and statistics."""
    if theorem_id not in THEOREMS:
        raise DomainError(f"unknown theorem id {theorem_id!r}")
    if grid_length < min_live_length(theorem_id):
        raise GridTooShort(
            f"{theorem_id} needs at least {min_live_length(theorem_id)} live values"
        )
    orders = [as_fraction(x) for x in (nu_samples or default_orders(theorem_id))]
    if mode == "exhaustive":
        total = len(value_set) ** grid_length * len(orders)
        if total > budget:
            raise BudgetExceeded(
                f"exhaustive search needs {total} evaluations, budget is {budget}"
            )
        samples = None
    elif mode == "random":
        samples = max(1, budget // len(orders))
    else:
        raise DomainError(f"unknown search mode {mode!r}")
    results = []
    for order in orders:
        results.append(
            _search_instance(theorem_id, grid_length, value_set, order, mode,
                             samples, seed, k_cap, anchor)
        )
        # nonvacuity fallback: shorter grids often admit a strictly positive
        # margin that the capped value set rules out at full length
        length = grid_length
        res = results[-1]
        while (res.witness is None or res.witness_margin <= 0) and length > min_live_length(theorem_id):
            length -= 1
            shorter = _search_instance(theorem_id, length, value_set, order,
                                       mode, samples, seed, k_cap, anchor)
            if shorter.witness is not None and (
                res.witness is None or shorter.witness_margin > res.witness_margin
            ):
                res.witness = shorter.witness
                res.witness_margin = shorter.witness_margin
    return results


def theorem_report(theorem_ids=None, grid_length: int = 6, value_set=None,
                   mode: str = "exhaustive", budget: int = 500_000, seed: int = 0,
                   k_cap: int = 64) -> list[dict]:
    """Aggregate search campaigns over a set of theorems."""
    ids = list(theorem_ids or THEOREMS)
    values = value_set or [Fraction(k, 2) for k in range(-2, 3)]
    report = []
    for tid in ids:
        length = max(grid_length, min_live_length(tid))
        per_order = search_campaign(tid, length, values, None, mode, budget, seed, k_cap)
        entry = {
            "id": tid,
            "description": THEOREMS[tid].description,
            "orders": [r.as_record() for r in per_order],
            "counterexamples": sum(len(r.counterexamples) for r in per_order),
            "nonvacuous": all(r.witness is not None for r in per_order),
        }
        if THEOREMS[tid].note:
            entry["note"] = THEOREMS[tid].note
        report.append(entry)
    return report
