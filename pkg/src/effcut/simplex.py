"""Exact simplex engine for linear fractional objectives.

Minimizes (p'x + alpha)/(q'x + beta) over {x >= 0 : rows} with the
denominator positive on the feasible region.  The tableau prices nonbasic
columns with the fractional reduced cost

    gamma_j = Q(x*) * eta_j - P(x*) * theta_j,

where eta/theta are the classic reduced costs of numerator and denominator;
gamma >= 0 over all nonbasic columns certifies a minimum.  Constraint rows
live in a registry: original variables get ids 1..n, each row contributes a
slack with the next free id, and rows added later may reference earlier
slacks.  Everything is fractions.Fraction; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .instance import FractionalObjective, Polyhedron

ZERO = Fraction(0)
ONE = Fraction(1)

# Pivot-count guards. The stall limit flips tie-breaking to Bland's rule
# inside a run of degenerate pivots; the hard cap aborts the loop outright.
STALL_FACTOR = 3
HARD_CAP_FACTOR = 10

Observer = Callable[[str, "Tableau"], None]


class UnboundedError(Exception):
    """The objective has no finite vertex minimum."""


class SimplexCycleError(Exception):
    """A pivot loop exceeded its hard cap."""


class _InfeasibleRow(Exception):
    """Internal: a dual row certified emptiness."""


def linear_objective(p: Sequence, alpha=ZERO) -> FractionalObjective:
    """Wrap the linear function p'x + alpha as a fractional objective."""
    pt = tuple(Fraction(v) for v in p)
    return FractionalObjective(pt, tuple(ZERO for _ in pt), Fraction(alpha), ONE)


@dataclass(frozen=True)
class Row:
    """One inequality sum_j coeff_j * x_j  <sense>  rhs over registry ids."""

    coeffs: tuple[tuple[int, Fraction], ...]
    sense: str
    rhs: Fraction

    @staticmethod
    def make(coeffs: Mapping[int, object] | Iterable, sense: str, rhs) -> "Row":
        if sense not in ("<=", ">="):
            raise ValueError("sense must be '<=' or '>='")
        items = []
        for j, v in dict(coeffs).items():
            f = Fraction(v)
            if j < 1:
                raise ValueError("variable ids are 1-based")
            if f:
                items.append((int(j), f))
        return Row(tuple(sorted(items)), sense, Fraction(rhs))

    def normalized(self) -> "Row":
        """The same inequality in '<=' form."""
        if self.sense == "<=":
            return self
        return Row(tuple((j, -v) for j, v in self.coeffs), "<=", -self.rhs)


@dataclass
class System:
    """A growing stack of '<=' rows over the variable registry.

    Row k (0-based) owns slack id n + k + 1.  Rows reference only variables
    that exist when they are added, so slack values are computable in row
    order from the original coordinates alone.
    """

    n: int
    rows: list[Row] = field(default_factory=list)

    @staticmethod
    def from_polyhedron(poly: Polyhedron) -> "System":
        system = System(poly.n)
        for arow, rhs in zip(poly.A, poly.b):
            system.add_row(Row.make({j + 1: arow[j] for j in range(poly.n)}, "<=", rhs))
        return system

    @property
    def registry_size(self) -> int:
        return self.n + len(self.rows)

    def slack_id(self, row_index: int) -> int:
        return self.n + row_index + 1

    def add_row(self, row: Row) -> int:
        """Append a row (normalizing '>=' to '<='); returns its slack id."""
        row = row.normalized()
        limit = self.registry_size
        for j, _ in row.coeffs:
            if j > limit:
                raise ValueError("row references unknown variable x%d" % j)
        self.rows.append(row)
        return self.registry_size

    def copy(self) -> "System":
        return System(self.n, list(self.rows))

    def extend_point(self, x: Sequence) -> tuple[Fraction, ...]:
        """Registry-wide vector: originals followed by slack values."""
        vals = [Fraction(v) for v in x]
        if len(vals) != self.n:
            raise ValueError("point has wrong dimension")
        for row in self.rows:
            vals.append(row.rhs - sum(v * vals[j - 1] for j, v in row.coeffs))
        return tuple(vals)

    def satisfied_by(self, x: Sequence) -> bool:
        return all(v >= 0 for v in self.extend_point(x))


class Tableau:
    """Dense simplex dictionary over every registry column.

    basis[i] is the variable id owning row i; basic columns are unit
    vectors.  Artificial columns sit past the registry during phase one
    only and are deleted before the tableau escapes.
    """

    def __init__(self, system: System):
        self.system = system
        size = system.registry_size
        self.basis: list[int] = [system.slack_id(i) for i in range(len(system.rows))]
        self.body: list[list[Fraction]] = []
        self.rhs: list[Fraction] = []
        for i, row in enumerate(system.rows):
            dense = [ZERO] * size
            for j, v in row.coeffs:
                dense[j - 1] = v
            dense[self.basis[i] - 1] = ONE
            rhs = Fraction(row.rhs)
            # Rows may reference earlier slacks; eliminate them so every
            # basic column is a unit vector from the start.
            for k in range(i):
                f = dense[self.basis[k] - 1]
                if f:
                    prev = self.body[k]
                    for col in range(size):
                        if prev[col]:
                            dense[col] -= f * prev[col]
                    rhs -= f * self.rhs[k]
            self.body.append(dense)
            self.rhs.append(rhs)
        self.n_art = 0

    # -- bookkeeping ------------------------------------------------------

    @property
    def ncols(self) -> int:
        return self.system.registry_size + self.n_art

    def nonbasis(self) -> list[int]:
        basic = set(self.basis)
        return [j for j in range(1, self.ncols + 1) if j not in basic]

    def clone(self) -> "Tableau":
        twin = object.__new__(Tableau)
        twin.system = self.system.copy()
        twin.basis = list(self.basis)
        twin.body = [list(r) for r in self.body]
        twin.rhs = list(self.rhs)
        twin.n_art = self.n_art
        return twin

    def point(self) -> tuple[Fraction, ...]:
        """Current vertex over the registry (artificials excluded)."""
        vals = [ZERO] * self.system.registry_size
        for i, j in enumerate(self.basis):
            if j <= self.system.registry_size:
                vals[j - 1] = self.rhs[i]
        return tuple(vals)

    def original_point(self) -> tuple[Fraction, ...]:
        return self.point()[: self.system.n]

    def append_row(self, row: Row) -> int:
        """Add one constraint below an existing basis; returns the slack id.

        The fresh row is reduced against the basic rows so basic columns
        stay unit; its slack enters the basis, possibly at negative value.
        """
        if self.n_art:
            raise RuntimeError("cannot grow a tableau during phase one")
        slack = self.system.add_row(row)
        stored = self.system.rows[-1]
        for r in self.body:
            r.append(ZERO)
        dense = [ZERO] * self.ncols
        for j, v in stored.coeffs:
            dense[j - 1] = v
        dense[slack - 1] = ONE
        rhs = Fraction(stored.rhs)
        for i, bid in enumerate(self.basis):
            f = dense[bid - 1]
            if f:
                brow = self.body[i]
                for k in range(len(dense)):
                    if brow[k]:
                        dense[k] -= f * brow[k]
                rhs -= f * self.rhs[i]
        self.body.append(dense)
        self.rhs.append(rhs)
        self.basis.append(slack)
        return slack

    # -- pricing ----------------------------------------------------------

    def _cost_arrays(self, obj: FractionalObjective):
        p = [ZERO] * self.ncols
        q = [ZERO] * self.ncols
        for k in range(self.system.n):
            p[k] = obj.p[k]
            q[k] = obj.q[k]
        return p, obj.alpha, q, obj.beta

    def _price(self, p, alpha, q, beta):
        m = len(self.basis)
        P = alpha + sum(p[self.basis[i] - 1] * self.rhs[i] for i in range(m))
        Q = beta + sum(q[self.basis[i] - 1] * self.rhs[i] for i in range(m))
        gamma = {}
        for j in self.nonbasis():
            col = j - 1
            eta = p[col]
            theta = q[col]
            for i in range(m):
                bc = self.basis[i] - 1
                a = self.body[i][col]
                if a:
                    if p[bc]:
                        eta -= p[bc] * a
                    if q[bc]:
                        theta -= q[bc] * a
            gamma[j] = Q * eta - P * theta
        return P, Q, gamma

    def price(self, obj: FractionalObjective):
        """(P, Q, gamma) of a fractional objective at the current vertex."""
        return self._price(*self._cost_arrays(obj))

    def gamma(self, obj: FractionalObjective) -> dict[int, Fraction]:
        return self.price(obj)[2]

    def value(self, obj: FractionalObjective) -> Fraction:
        P, Q, _ = self.price(obj)
        return P / Q

    def reduced_gradient(self, grad: Sequence) -> dict[int, Fraction]:
        """Reduced row of a criterion gradient at the current vertex.

        Entry j is grad_j minus the basic-gradient combination of column j;
        slack positions carry zero gradient.
        """
        g = [ZERO] * self.ncols
        for k in range(self.system.n):
            g[k] = Fraction(grad[k])
        m = len(self.basis)
        out = {}
        for j in self.nonbasis():
            col = j - 1
            val = g[col]
            for i in range(m):
                bc = self.basis[i] - 1
                if g[bc]:
                    val -= g[bc] * self.body[i][col]
            out[j] = val
        return out

    def basic_row(self, var_id: int) -> tuple[dict[int, Fraction], Fraction]:
        """Nonbasic coefficients and rhs of the row owned by a basic id."""
        i = self.basis.index(var_id)
        coeffs = {j: self.body[i][j - 1] for j in self.nonbasis()}
        return coeffs, self.rhs[i]

    def dump(self, objectives: Sequence[FractionalObjective] = ()) -> str:
        """ASCII snapshot of the dictionary, mainly for debugging."""
        cols = self.nonbasis()
        lines = []
        head = "basis | " + " ".join("x%-6d" % j for j in cols) + "| rhs"
        lines.append(head)
        for i, bid in enumerate(self.basis):
            cells = " ".join("%-7s" % self.body[i][j - 1] for j in cols)
            lines.append("x%-4d | %s| %s" % (bid, cells, self.rhs[i]))
        for s, obj in enumerate(objectives, 1):
            _, _, gm = self.price(obj)
            cells = " ".join("%-7s" % gm[j] for j in cols)
            lines.append("g^%-3d | %s|" % (s, cells))
        return "\n".join(lines)

    # -- pivoting ---------------------------------------------------------

    def pivot(self, row: int, col_id: int) -> None:
        col = col_id - 1
        piv = self.body[row][col]
        if piv == 0:
            raise ValueError("zero pivot element")
        inv = ONE / piv
        self.body[row] = [v * inv for v in self.body[row]]
        self.rhs[row] *= inv
        prow = self.body[row]
        prhs = self.rhs[row]
        for i in range(len(self.body)):
            if i == row:
                continue
            f = self.body[i][col]
            if f:
                brow = self.body[i]
                self.body[i] = [brow[k] - f * prow[k] for k in range(len(brow))]
                self.rhs[i] -= f * prhs
        self.basis[row] = col_id

    def _primal(self, arrays, observer: Observer | None = None, tag="primal") -> None:
        """Pivot until gamma >= 0 on all nonbasic columns.

        Entering is always the least improving id.  Leaving takes the
        minimum ratio, breaking ties toward the largest basic id; after a
        long degenerate stall the tie flips to the smallest id (Bland),
        which the stall-local linearity of gamma makes terminating.
        """
        p, alpha, q, beta = arrays
        m = len(self.basis)
        hard_cap = HARD_CAP_FACTOR * (m + self.ncols) ** 2 + 100
        stall_limit = STALL_FACTOR * (m + self.ncols) + 10
        stall = 0
        for _ in range(hard_cap):
            _, _, gamma = self._price(p, alpha, q, beta)
            entering = min((j for j, g in gamma.items() if g < 0), default=None)
            if entering is None:
                return
            col = entering - 1
            bland = stall > stall_limit
            best = None
            for i in range(m):
                a = self.body[i][col]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = self.basis[i] if bland else -self.basis[i]
                    if best is None or (ratio, key) < best[:2]:
                        best = (ratio, key, i)
            if best is None:
                raise UnboundedError("column x%d never blocks" % entering)
            ratio, _, row = best
            stall = stall + 1 if ratio == 0 else 0
            self.pivot(row, entering)
            if observer:
                observer(tag, self)
        raise SimplexCycleError("primal pivot cap exceeded")

    def _dual(self, arrays, observer: Observer | None = None) -> None:
        """Pivot infeasible rows out while keeping gamma nonnegative.

        Leaving is the most negative rhs, ties toward the largest basic id;
        entering minimizes gamma_j / -a_rj over negative row entries, ties
        toward the smallest id.  A row with no negative entry certifies
        emptiness.
        """
        p, alpha, q, beta = arrays
        m = len(self.basis)
        hard_cap = HARD_CAP_FACTOR * (m + self.ncols) ** 2 + 100
        for _ in range(hard_cap):
            row = None
            for i in range(m):
                if self.rhs[i] < 0:
                    if row is None or (self.rhs[i], -self.basis[i]) < (
                        self.rhs[row],
                        -self.basis[row],
                    ):
                        row = i
            if row is None:
                return
            _, _, gamma = self._price(p, alpha, q, beta)
            entering = None
            best_ratio = None
            for j in sorted(gamma):
                a = self.body[row][j - 1]
                if a < 0:
                    ratio = gamma[j] / (-a)
                    if best_ratio is None or ratio < best_ratio:
                        best_ratio = ratio
                        entering = j
            if entering is None:
                raise _InfeasibleRow()
            self.pivot(row, entering)
            if observer:
                observer("dual", self)
        raise SimplexCycleError("dual pivot cap exceeded")

    def _phase_one(self, observer: Observer | None = None) -> bool:
        """Reach primal feasibility from a fresh slack basis.

        Rows with negative rhs are negated and given an artificial column;
        the artificial mass is minimized as a plain linear objective through
        the same pricing machinery.  Returns False on a positive residue
        (empty region).  Artificial columns are deleted before returning.
        """
        m = len(self.basis)
        size0 = self.ncols
        bad = [i for i in range(m) if self.rhs[i] < 0]
        if not bad:
            return True
        for r in self.body:
            r.extend([ZERO] * len(bad))
        for k, i in enumerate(bad):
            self.body[i] = [-v for v in self.body[i]]
            self.rhs[i] = -self.rhs[i]
            self.body[i][size0 + k] = ONE
            self.basis[i] = size0 + k + 1
        self.n_art = len(bad)
        p = [ZERO] * self.ncols
        for k in range(self.n_art):
            p[size0 + k] = ONE
        arrays = (p, ZERO, [ZERO] * self.ncols, ONE)
        self._primal(arrays, observer, tag="phase1")
        residue = sum(p[self.basis[i] - 1] * self.rhs[i] for i in range(m))
        if residue > 0:
            self._drop_artificials(size0)
            return False
        for i in range(m):
            if self.basis[i] > size0:
                # Degenerate row still parked on its artificial: kick it
                # onto any real column (one exists; rows keep full rank).
                basic = set(self.basis)
                col_id = next(
                    (
                        j
                        for j in range(1, size0 + 1)
                        if j not in basic and self.body[i][j - 1] != 0
                    ),
                    None,
                )
                if col_id is None:
                    raise RuntimeError("rank-deficient row in phase one")
                self.pivot(i, col_id)
                if observer:
                    observer("phase1", self)
        self._drop_artificials(size0)
        return True

    def _drop_artificials(self, size0: int) -> None:
        for r in self.body:
            del r[size0:]
        self.n_art = 0


@dataclass(frozen=True)
class Optimal:
    """A certified vertex minimum of the fractional objective."""

    point: tuple[Fraction, ...]
    value: Fraction
    tableau: Tableau


@dataclass(frozen=True)
class Infeasible:
    """The constraint system has no nonnegative solution."""


def _finish(tab: Tableau, objective: FractionalObjective) -> Optimal:
    x = tab.original_point()
    P, Q, gamma = tab.price(objective)
    if Q <= 0:
        raise RuntimeError("nonpositive denominator at optimum")
    if any(v < 0 for v in tab.rhs) or any(g < 0 for g in gamma.values()):
        raise RuntimeError("simplex stopped at a non-optimal basis")
    if not tab.system.satisfied_by(x):
        raise RuntimeError("optimal point violates its own system")
    return Optimal(point=x, value=P / Q, tableau=tab)


def solve_lfp(
    system: System,
    objective: FractionalObjective,
    observer: Observer | None = None,
) -> Optimal | Infeasible:
    """Minimize a fractional objective over a system, from scratch."""
    tab = Tableau(system)
    if any(v < 0 for v in tab.rhs):
        if not tab._phase_one(observer):
            return Infeasible()
    tab._primal(tab._cost_arrays(objective), observer)
    return _finish(tab, objective)


def add_rows_and_reoptimize(
    tableau: Tableau,
    rows: Iterable[Row],
    objective: FractionalObjective,
    observer: Observer | None = None,
) -> Optimal | Infeasible:
    """Append constraints to an optimal tableau and re-solve in place.

    All pending rows go in before any pivot.  Dual pivots restore
    feasibility (appending never disturbs gamma), then primal pivots clean
    up any gamma the dual pass bent negative.  A cycling warm start is
    abandoned for a fresh solve of the grown system.
    """
    for row in rows:
        tableau.append_row(row)
    arrays = tableau._cost_arrays(objective)
    try:
        tableau._dual(arrays, observer)
        tableau._primal(arrays, observer)
    except _InfeasibleRow:
        return Infeasible()
    except SimplexCycleError:
        return solve_lfp(tableau.system.copy(), objective, observer)
    return _finish(tableau, objective)


def add_row_and_reoptimize(
    tableau: Tableau,
    row: Row,
    objective: FractionalObjective,
    observer: Observer | None = None,
) -> Optimal | Infeasible:
    return add_rows_and_reoptimize(tableau, [row], objective, observer)
