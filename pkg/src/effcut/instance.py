"""Problem data model: instances, text format, evaluation, validation.

An instance bundles r convex quadratic criteria f_i(x) = 0.5*x'Q_i x + c_i'x,
two linear fractional preference functions (p'x + alpha)/(q'x + beta), and a
polyhedron {x >= 0 : Ax <= b} whose integer points form the feasible set.
All arithmetic is exact; rationals are fractions.Fraction throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TextIO

Matrix = tuple[tuple[int, ...], ...]
IntVec = tuple[int, ...]
FracVec = tuple[Fraction, ...]

ZERO = Fraction(0)


class InstanceFormatError(ValueError):
    """Malformed instance text. Carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class QuadraticObjective:
    """One criterion x -> 0.5*x'Qx + c'x with integer symmetric Q."""

    Q: Matrix
    c: IntVec

    def __post_init__(self):
        n = len(self.c)
        if len(self.Q) != n or any(len(row) != n for row in self.Q):
            raise ValueError("Q and c dimensions disagree")
        for i in range(n):
            for j in range(i):
                if self.Q[i][j] != self.Q[j][i]:
                    raise ValueError("Q is not symmetric")

    @property
    def n(self) -> int:
        return len(self.c)

    def value(self, x: Sequence[Fraction | int]) -> Fraction:
        if len(x) != self.n:
            raise ValueError("point has wrong dimension")
        acc = ZERO
        for i in range(self.n):
            row = self.Q[i]
            acc += x[i] * sum(row[j] * x[j] for j in range(self.n))
        return Fraction(acc, 2) + sum(self.c[i] * x[i] for i in range(self.n))

    def gradient(self, x: Sequence[Fraction | int]) -> FracVec:
        """Exact gradient Qx + c."""
        if len(x) != self.n:
            raise ValueError("point has wrong dimension")
        return tuple(
            Fraction(sum(self.Q[i][j] * x[j] for j in range(self.n)) + self.c[i])
            for i in range(self.n)
        )

    def is_psd(self) -> bool:
        """Exact positive-semidefiniteness via pivoted elimination.

        Repeatedly eliminates on a positive diagonal pivot; PSD holds iff
        the process consumes the matrix or leaves an all-zero block.
        """
        m = [[Fraction(v) for v in row] for row in self.Q]
        active = list(range(self.n))
        while active:
            piv = next((i for i in active if m[i][i] > 0), None)
            if piv is None:
                return all(m[i][j] == 0 for i in active for j in active)
            d = m[piv][piv]
            rest = [i for i in active if i != piv]
            for i in rest:
                f = m[i][piv] / d
                if f:
                    for j in rest:
                        m[i][j] -= f * m[piv][j]
            active = rest
        return True


@dataclass(frozen=True)
class FractionalObjective:
    """Linear fractional function (p'x + alpha)/(q'x + beta)."""

    p: FracVec
    q: FracVec
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if len(self.p) != len(self.q):
            raise ValueError("p and q dimensions disagree")

    @property
    def n(self) -> int:
        return len(self.p)

    def numerator(self, x: Sequence[Fraction | int]) -> Fraction:
        if len(x) != self.n:
            raise ValueError("point has wrong dimension")
        return sum(self.p[i] * x[i] for i in range(self.n)) + self.alpha

    def denominator(self, x: Sequence[Fraction | int]) -> Fraction:
        if len(x) != self.n:
            raise ValueError("point has wrong dimension")
        return sum(self.q[i] * x[i] for i in range(self.n)) + self.beta

    def value(self, x: Sequence[Fraction | int]) -> Fraction:
        # Fraction division raises ZeroDivisionError on a zero denominator.
        return self.numerator(x) / self.denominator(x)


@dataclass(frozen=True)
class Polyhedron:
    """Region {x >= 0 : Ax <= b} with integer data."""

    A: Matrix
    b: IntVec

    def __post_init__(self):
        if len(self.A) != len(self.b):
            raise ValueError("A and b dimensions disagree")
        widths = {len(row) for row in self.A}
        if len(widths) > 1:
            raise ValueError("A rows have unequal length")

    @property
    def m(self) -> int:
        return len(self.b)

    @property
    def n(self) -> int:
        return len(self.A[0]) if self.A else 0

    def contains(self, x: Sequence[Fraction | int]) -> bool:
        if len(x) != self.n:
            raise ValueError("point has wrong dimension")
        if any(v < 0 for v in x):
            return False
        return all(
            sum(self.A[i][j] * x[j] for j in range(self.n)) <= self.b[i]
            for i in range(self.m)
        )


@dataclass(frozen=True)
class Instance:
    """A full problem instance; immutable after construction."""

    n: int
    r: int
    quadratics: tuple[QuadraticObjective, ...]
    fractionals: tuple[FractionalObjective, FractionalObjective]
    polyhedron: Polyhedron

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("need at least two quadratic criteria")
        if len(self.quadratics) != self.r:
            raise ValueError("quadratic count disagrees with r")
        if len(self.fractionals) != 2:
            raise ValueError("exactly two fractional objectives required")
        for obj in self.quadratics:
            if obj.n != self.n:
                raise ValueError("quadratic dimension disagrees with n")
        for obj in self.fractionals:
            if obj.n != self.n:
                raise ValueError("fractional dimension disagrees with n")
        if self.polyhedron.n != self.n:
            raise ValueError("polyhedron dimension disagrees with n")


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------
#
# Line oriented, '#' starts a comment, blank lines are separators:
#
#   n 3
#   r 2
#   Q            (r blocks, each n lines of n integers)
#   ...
#   c -94 -74 -37      (r lines)
#   fractional         (2 blocks: p, q, alpha, beta)
#   p 1 -4 -1
#   q 1 0 1
#   alpha -7
#   beta 3
#   A            (m lines of n integers)
#   ...
#   b 3 6
#
# Rational literals 'a/b' are accepted in fractional blocks only; Q, c, A, b
# are integers.


def _tokenize(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


class _Reader:
    def __init__(self, text: str):
        self.items = _tokenize(text)
        self.pos = 0

    def eof(self) -> bool:
        return self.pos >= len(self.items)

    def take(self) -> tuple[int, list[str]]:
        if self.eof():
            raise InstanceFormatError("unexpected end of input")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def expect(self, keyword: str) -> tuple[int, list[str]]:
        no, toks = self.take()
        if toks[0] != keyword:
            raise InstanceFormatError("expected %r, found %r" % (keyword, toks[0]), no)
        return no, toks

    def keyword_int(self, keyword: str) -> int:
        no, toks = self.expect(keyword)
        if len(toks) != 2:
            raise InstanceFormatError("expected a single integer after %r" % keyword, no)
        return _int_tok(toks[1], no)

    def int_vector(self, keyword: str, width: int) -> IntVec:
        no, toks = self.expect(keyword)
        if len(toks) != width + 1:
            raise InstanceFormatError(
                "expected %d integers after %r" % (width, keyword), no
            )
        return tuple(_int_tok(t, no) for t in toks[1:])

    def frac_vector(self, keyword: str, width: int) -> FracVec:
        no, toks = self.expect(keyword)
        if len(toks) != width + 1:
            raise InstanceFormatError(
                "expected %d rationals after %r" % (width, keyword), no
            )
        return tuple(_frac_tok(t, no) for t in toks[1:])

    def frac_scalar(self, keyword: str) -> Fraction:
        no, toks = self.expect(keyword)
        if len(toks) != 2:
            raise InstanceFormatError("expected a single rational after %r" % keyword, no)
        return _frac_tok(toks[1], no)

    def int_row(self, width: int) -> IntVec:
        no, toks = self.take()
        if len(toks) != width:
            raise InstanceFormatError("expected %d integers" % width, no)
        return tuple(_int_tok(t, no) for t in toks)

    def peek_is_numeric(self) -> bool:
        if self.eof():
            return False
        try:
            int(self.items[self.pos][1][0])
        except ValueError:
            return False
        return True


def _int_tok(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InstanceFormatError("bad integer literal %r" % tok, no) from None


def _frac_tok(tok: str, no: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InstanceFormatError("bad rational literal %r" % tok, no) from None


def parse_instance(source: str | TextIO) -> Instance:
    """Parse instance text; raises InstanceFormatError with a line number."""
    text = source.read() if hasattr(source, "read") else source
    rd = _Reader(text)
    n = rd.keyword_int("n")
    r = rd.keyword_int("r")
    if n < 1:
        raise InstanceFormatError("n must be positive")
    if r < 2:
        raise InstanceFormatError("r must be at least 2")

    quads_rows = []
    for _ in range(r):
        no, _toks = rd.expect("Q")
        quads_rows.append((no, tuple(rd.int_row(n) for _ in range(n))))
    cs = [rd.int_vector("c", n) for _ in range(r)]
    quadratics = []
    for (no, Q), c in zip(quads_rows, cs):
        try:
            quadratics.append(QuadraticObjective(Q, c))
        except ValueError as exc:
            raise InstanceFormatError(str(exc), no) from None

    fractionals = []
    for _ in range(2):
        rd.expect("fractional")
        p = rd.frac_vector("p", n)
        q = rd.frac_vector("q", n)
        alpha = rd.frac_scalar("alpha")
        beta = rd.frac_scalar("beta")
        fractionals.append(FractionalObjective(p, q, alpha, beta))

    no_a, _ = rd.expect("A")
    rows = []
    while rd.peek_is_numeric():
        rows.append(rd.int_row(n))
    if not rows:
        raise InstanceFormatError("A block is empty", no_a)
    b = rd.int_vector("b", len(rows))
    if not rd.eof():
        no, toks = rd.take()
        raise InstanceFormatError("unexpected trailing content %r" % " ".join(toks), no)

    try:
        return Instance(
            n=n,
            r=r,
            quadratics=tuple(quadratics),
            fractionals=(fractionals[0], fractionals[1]),
            polyhedron=Polyhedron(tuple(rows), b),
        )
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from None


def _frac_str(v: Fraction) -> str:
    return str(v)  # Fraction renders as 'a' or 'a/b'


def render_instance(inst: Instance) -> str:
    """Canonical text form; parse_instance(render_instance(i)) == i."""
    lines = ["n %d" % inst.n, "r %d" % inst.r, ""]
    for obj in inst.quadratics:
        lines.append("Q")
        for row in obj.Q:
            lines.append(" ".join(str(v) for v in row))
        lines.append("")
    for obj in inst.quadratics:
        lines.append("c " + " ".join(str(v) for v in obj.c))
    lines.append("")
    for frac in inst.fractionals:
        lines.append("fractional")
        lines.append("p " + " ".join(_frac_str(v) for v in frac.p))
        lines.append("q " + " ".join(_frac_str(v) for v in frac.q))
        lines.append("alpha " + _frac_str(frac.alpha))
        lines.append("beta " + _frac_str(frac.beta))
        lines.append("")
    lines.append("A")
    for row in inst.polyhedron.A:
        lines.append(" ".join(str(v) for v in row))
    lines.append("b " + " ".join(str(v) for v in inst.polyhedron.b))
    return "\n".join(lines) + "\n"


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh)


def validate_instance(inst: Instance) -> list[str]:
    """Check solvability preconditions; returns a list of violations.

    Empty list means valid: nonempty bounded region, strictly positive
    fractional denominators over the region, and PSD criterion matrices.
    """
    from . import simplex  # deferred; simplex imports this module

    violations: list[str] = []
    zero = tuple(ZERO for _ in range(inst.n))
    probe = FractionalObjective(zero, zero, ZERO, Fraction(1))
    base = simplex.System.from_polyhedron(inst.polyhedron)
    out = simplex.solve_lfp(base.copy(), probe)
    if isinstance(out, simplex.Infeasible):
        violations.append("empty feasible region")
    else:
        for k in range(inst.n):
            p = tuple(Fraction(-1) if i == k else ZERO for i in range(inst.n))
            try:
                simplex.solve_lfp(base.copy(), simplex.linear_objective(p))
            except simplex.UnboundedError:
                violations.append("unbounded region (x%d has no finite maximum)" % (k + 1))
        for s, frac in enumerate(inst.fractionals, 1):
            try:
                res = simplex.solve_lfp(
                    base.copy(), simplex.linear_objective(frac.q, frac.beta)
                )
            except simplex.UnboundedError:
                violations.append(
                    "denominator nonpositive (objective %d unbounded below)" % s
                )
                continue
            if res.value <= 0:
                violations.append(
                    "denominator nonpositive (objective %d, minimum %s)" % (s, res.value)
                )
    for i, obj in enumerate(inst.quadratics, 1):
        if not obj.is_psd():
            violations.append("Q%d not positive semidefinite" % i)
    return violations
