"""Brute-force ground truth: enumerate D and filter both Pareto sets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .instance import Instance

DEFAULT_ENUM_CAP = 10**7

IntPoint = tuple[int, ...]


class EnumerationCapError(RuntimeError):
    """The bounding box holds more points than the configured cap."""


def coordinate_bounds(inst: Instance) -> tuple[int, ...]:
    """Per-coordinate integer upper bounds from LP maxima."""
    from . import simplex

    base = simplex.System.from_polyhedron(inst.polyhedron)
    bounds = []
    for k in range(inst.n):
        p = tuple(
            Fraction(-1) if i == k else Fraction(0) for i in range(inst.n)
        )
        out = simplex.solve_lfp(base.copy(), simplex.linear_objective(p))
        if isinstance(out, simplex.Infeasible):
            return tuple(-1 for _ in range(inst.n))
        bounds.append(int(-out.value))  # floor of the maximum; value is exact
    return tuple(bounds)


def enumerate_feasible(inst: Instance, enum_cap: int = DEFAULT_ENUM_CAP) -> list[IntPoint]:
    """All integer points of {x >= 0 : Ax <= b}, in lexicographic order."""
    bounds = coordinate_bounds(inst)
    if any(u < 0 for u in bounds):
        return []
    volume = 1
    for u in bounds:
        volume *= u + 1
        if volume > enum_cap:
            raise EnumerationCapError(
                "bounding box holds more than %d points" % enum_cap
            )
    poly = inst.polyhedron
    return [x for x in product(*(range(u + 1) for u in bounds)) if poly.contains(x)]


def pareto_filter(
    points: Sequence[IntPoint], criteria: Callable[[IntPoint], tuple]
) -> list[IntPoint]:
    """Non-dominated points under componentwise <=, preserving input order.

    A point falls only to a strictly better vector; equal vectors coexist.
    """
    vals = [tuple(criteria(p)) for p in points]
    kept = []
    for i, p in enumerate(points):
        vi = vals[i]
        dominated = any(
            vj != vi and all(a <= b for a, b in zip(vj, vi))
            for k, vj in enumerate(vals)
            if k != i
        )
        if not dominated:
            kept.append(p)
    return kept


@dataclass(frozen=True)
class ParetoSets:
    """The enumerated feasible set and its three efficiency subsets."""

    D: tuple[IntPoint, ...]
    X_Q: tuple[IntPoint, ...]
    X_F: tuple[IntPoint, ...]
    X_Eff: tuple[IntPoint, ...]


def oracle_solve(inst: Instance, enum_cap: int = DEFAULT_ENUM_CAP) -> ParetoSets:
    """Reference efficiency sets by pairwise dominance over all of D."""
    D = enumerate_feasible(inst, enum_cap)
    X_Q = pareto_filter(D, lambda x: tuple(obj.value(x) for obj in inst.quadratics))
    X_F = pareto_filter(D, lambda x: tuple(fr.value(x) for fr in inst.fractionals))
    in_f = set(X_F)
    X_Eff = [x for x in X_Q if x in in_f]
    return ParetoSets(tuple(D), tuple(X_Q), tuple(X_F), tuple(X_Eff))
