"""Efficiency certificates for integer points, by exhaustive enumeration.

Two auxiliary programs decide membership in the two Pareto sets.  T1 asks
for the largest total criterion slack sum eps_i over integer y with
f_i(y) + eps_i <= f_i(x*) and eps >= 0; T2 does the same for the two
preference functions after clearing denominators:

    w_s <= Q^s(y) * (psi^s(x*) - psi^s(y)),   w_s >= 0.

Either maximum is zero exactly when x* is efficient.  Once y is fixed the
auxiliaries are tight, so both programs reduce to a scan over D with the
slacks in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .instance import Instance
from .oracle import enumerate_feasible

ZERO = Fraction(0)


@dataclass(frozen=True)
class EfficiencyVerdict:
    """Outcome of one test: efficient iff the program's maximum is zero."""

    efficient: bool
    objective_value: Fraction
    witness: tuple[int, ...] | None

    def __post_init__(self):
        if self.efficient != (self.objective_value == 0):
            raise ValueError("verdict disagrees with its objective value")
        if self.efficient != (self.witness is None):
            raise ValueError("witness must accompany exactly the inefficient case")


def _candidate_points(x_star, inst: Instance, points) -> list[tuple[int, ...]]:
    xs = tuple(int(v) for v in x_star)
    if tuple(Fraction(v) for v in x_star) != tuple(Fraction(v) for v in xs):
        raise ValueError("candidate point is not integer")
    pool = list(points) if points is not None else enumerate_feasible(inst)
    if xs not in pool:
        raise ValueError("candidate point is infeasible")
    return pool


def test_moiqp_efficiency(
    x_star: Sequence, inst: Instance, points: Sequence[tuple[int, ...]] | None = None
) -> EfficiencyVerdict:
    """Decide efficiency of x* for the quadratic criteria (program T1).

    points, when given, must be exactly the integer feasible set; it is
    re-enumerated otherwise.
    """
    pool = _candidate_points(x_star, inst, points)
    ref = [obj.value(x_star) for obj in inst.quadratics]
    best = ZERO
    witness = None
    for y in pool:
        vals = [obj.value(y) for obj in inst.quadratics]
        if all(v <= t for v, t in zip(vals, ref)):
            phi = sum(t - v for v, t in zip(vals, ref))
            if phi > best:
                best = phi
                witness = y
    return EfficiencyVerdict(best == 0, best, witness)


def test_boilfp_efficiency(
    x_star: Sequence, inst: Instance, points: Sequence[tuple[int, ...]] | None = None
) -> EfficiencyVerdict:
    """Decide efficiency of x* for the preference pair (program T2)."""
    pool = _candidate_points(x_star, inst, points)
    ref = [frac.value(x_star) for frac in inst.fractionals]
    best = ZERO
    witness = None
    for y in pool:
        ws = [
            frac.denominator(y) * (t - frac.value(y))
            for frac, t in zip(inst.fractionals, ref)
        ]
        if all(w >= 0 for w in ws):
            total = sum(ws)
            if total > best:
                best = total
                witness = y
    return EfficiencyVerdict(best == 0, best, witness)
