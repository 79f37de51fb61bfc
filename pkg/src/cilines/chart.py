"""The standard chart of the Grassmannian of lines, and everything
computed on it.

For a complete intersection X = (h^1 = ... = h^r = 0) and the chart line
through [[a], [b]], the composite h^i(s, t, s a_1 + t b_1, ...) expands as

    f^i_0 s^{d^i} + f^i_1 s^{d^i - 1} t + ... + f^i_{d^i} t^{d^i}

with the f^i_k polynomial in the chart coordinates. The line lies on X
exactly when every f^i_k vanishes at the point; the membership system is
that list of |d| + r polynomials.

The non-freeness matrix M(h) is the (N-1) x |d| matrix whose row j,
block i is the coefficient vector of the restricted partial derivative
(dh^i/dZ_j) composed with the line, against the basis
s^{d^i-1}, ..., t^{d^i-1}. For a line on X along which X is smooth, the
line is free exactly when M(h) evaluated at the chart point has full
column rank |d|.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    ConstraintViolated,
    InfiniteField,
    LineNotContained,
    NotHomogeneous,
    ParameterPresent,
)
from .exactmatrix import ExactMatrix
from .fields import Field, Scalar
from .geometry import (
    CIType,
    CompleteIntersection,
    LineChartPoint,
    RationalCurve,
    ambient_variables,
    restrict_along,
)
from .multipoly import BinaryForm, MultiPoly, PolyRing, binary_gcd, flatten, flatten_ring
from .params import ParamRing, ParamScalar


def chart_variables(n: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    avars = tuple(f"a{j}" for j in range(1, n))
    bvars = tuple(f"b{j}" for j in range(1, n))
    return avars, bvars


def chart_ring(coeffs: ParamRing, n: int) -> PolyRing:
    """Ring in the chart coordinates a_1..a_{N-1}, b_1..b_{N-1}."""
    avars, bvars = chart_variables(n)
    return PolyRing(coeffs, avars + bvars)


def _full_ring(coeffs: ParamRing, n: int) -> PolyRing:
    avars, bvars = chart_variables(n)
    return PolyRing(coeffs, ("s", "t") + avars + bvars)


def chart_image(form: MultiPoly, n: int) -> MultiPoly:
    """Substitute S -> s, T -> t, Z_j -> s a_j + t b_j."""
    full = _full_ring(form.ring.coeffs, n)
    s, t = full.var("s"), full.var("t")
    assign = {"S": s, "T": t}
    for j in range(1, n):
        assign[f"Z{j}"] = s * full.var(f"a{j}") + t * full.var(f"b{j}")
    return form.substitute(assign)


def line_param(point: LineChartPoint, coeffs: ParamRing | None = None) -> RationalCurve:
    """The degree-1 curve (s, t, a_1 s + b_1 t, ...) through a chart point."""
    ring = coeffs if coeffs is not None else ParamRing(point.field, ())
    one, zero = ring.one(), ring.zero()
    comps = [
        BinaryForm(ring, 1, (one, zero)),
        BinaryForm(ring, 1, (zero, one)),
    ]
    for aj, bj in zip(point.a, point.b):
        comps.append(BinaryForm(ring, 1, (ring.const(aj), ring.const(bj))))
    return RationalCurve(tuple(comps))


@dataclass(frozen=True)
class MembershipSystem:
    """The s,t-coefficients of every h^i composed with the chart line."""

    ci_type: CIType
    systems: tuple[tuple[MultiPoly, ...], ...]  # systems[i] = (f^i_0, ..., f^i_{d^i})

    @property
    def count(self) -> int:
        return sum(len(s) for s in self.systems)

    def all_polys(self) -> tuple[MultiPoly, ...]:
        return tuple(f for sys in self.systems for f in sys)

    def evaluate(self, point: LineChartPoint) -> tuple[ParamScalar, ...]:
        vals = point.values(self.ci_type.ambient_dim)
        return tuple(f.evaluate(vals) for f in self.all_polys())

    def contains(self, point: LineChartPoint) -> bool:
        """Line containment; with symbolic parameters this asks for
        vanishing identically in the parameters."""
        return all(v.is_zero for v in self.evaluate(point))


def membership_system(x: CompleteIntersection) -> MembershipSystem:
    n = x.n
    systems = []
    for form, d in zip(x.forms, x.ci_type.degrees):
        image = chart_image(form, n)
        pieces = image.split(("s", "t"))
        ab = chart_ring(x.coeff_ring, n)
        coeffs = [ab.zero()] * (d + 1)
        for (es, et), poly in pieces.items():
            if es + et != d:
                raise NotHomogeneous(f"composite of {form} is not homogeneous")
            coeffs[et] = poly
        systems.append(tuple(coeffs))
    return MembershipSystem(x.ci_type, tuple(systems))


@dataclass(frozen=True)
class NonFreeMatrix:
    """M(h), symbolically in the chart coordinates or evaluated at a line.

    entries_ab is the (N-1) x |d| grid of chart polynomials; matrix is the
    same data as an ExactMatrix, over the coefficient parameter ring when
    evaluated at a point, otherwise over the flattened ring that adjoins
    the chart coordinates as extra parameters.
    """

    ci_type: CIType
    entries_ab: tuple[tuple[MultiPoly, ...], ...]
    at: LineChartPoint | None
    matrix: ExactMatrix

    @property
    def col_blocks(self) -> tuple[tuple[int, int], ...]:
        """Half-open column ranges, one per defining form."""
        out = []
        start = 0
        for d in self.ci_type.degrees:
            out.append((start, start + d))
            start += d
        return tuple(out)

    def value_rows(self) -> list[list[ParamScalar]]:
        if self.at is None:
            raise ConstraintViolated("matrix was not evaluated at a line")
        return self.matrix.to_lists()


def _nonfree_entries(x: CompleteIntersection) -> tuple[tuple[MultiPoly, ...], ...]:
    n = x.n
    ab = chart_ring(x.coeff_ring, n)
    rows = []
    for j in range(1, n):
        row: list[MultiPoly] = []
        for form, d in zip(x.forms, x.ci_type.degrees):
            partial = form.differentiate(f"Z{j}")
            image = chart_image(partial, n)
            pieces = image.split(("s", "t"))
            vec = [ab.zero()] * d
            for (es, et), poly in pieces.items():
                if es + et != d - 1:
                    raise NotHomogeneous(f"restricted partial of {form} has mixed degree")
                vec[et] = poly
            row.extend(vec)
        rows.append(tuple(row))
    return tuple(rows)


def nonfree_matrix(
    x: CompleteIntersection, at: LineChartPoint | None = None
) -> NonFreeMatrix:
    """Build M(h); when a chart point is given the line must lie on X."""
    entries = _nonfree_entries(x)
    n = x.n
    if at is not None:
        if not membership_system(x).contains(at):
            raise LineNotContained(f"the chart line is not on X")
        vals = at.values(n)
        grid = [[e.evaluate(vals) for e in row] for row in entries]
        matrix = ExactMatrix.from_rows(x.coeff_ring, grid) if grid else ExactMatrix(
            x.coeff_ring, 0, 0, ()
        )
        return NonFreeMatrix(x.ci_type, entries, at, matrix)
    ab = chart_ring(x.coeff_ring, n)
    flat = flatten_ring(ab)
    grid = [[flatten(e, flat) for e in row] for row in entries]
    matrix = ExactMatrix.from_rows(flat, grid)
    return NonFreeMatrix(x.ci_type, entries, None, matrix)


def delta_forms(x: CompleteIntersection, at: LineChartPoint) -> list[list[BinaryForm]]:
    """The restricted partials (dh^i/dZ_j)|_L as binary forms of degree
    d^i - 1; rows indexed by j, columns by i."""
    nf = nonfree_matrix(x, at=at)
    vals = nf.value_rows()
    out = []
    for row in vals:
        forms_row = []
        for (lo, hi), d in zip(nf.col_blocks, x.ci_type.degrees):
            forms_row.append(BinaryForm(x.coeff_ring, d - 1, tuple(row[lo:hi])))
        out.append(forms_row)
    return out


# -- smoothness along a line or curve -----------------------------------------


def _bf_det(grid: list[list[BinaryForm]]) -> BinaryForm:
    k = len(grid)
    if k == 1:
        return grid[0][0]
    ring = grid[0][0].ring
    total = sum(row[0].degree for row in grid)
    acc = BinaryForm.zero(ring, total)
    for j in range(k):
        minor = [[row[c] for c in range(k) if c != j] for row in grid[1:]]
        term = grid[0][j] * _bf_det(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def restricted_jacobian(
    x: CompleteIntersection, components: Sequence[BinaryForm]
) -> list[list[BinaryForm]]:
    """Full Jacobian (dh^i/dW for all N+1 coordinates W) restricted along
    the given curve components; row i has entries of degree b(d^i - 1)."""
    rows = []
    for form, d in zip(x.forms, x.ci_type.degrees):
        row = [
            restrict_along(form.differentiate(w), components, form_degree=d - 1)
            for w in x.ring.variables
        ]
        rows.append(row)
    return rows


def smooth_along_components(
    x: CompleteIntersection, components: Sequence[BinaryForm]
) -> bool:
    """True when the r x r minors of the restricted Jacobian have no
    common projective zero on the curve."""
    if not x.is_parameter_free:
        raise ParameterPresent("smoothness checks need parameter-free forms")
    jac = restricted_jacobian(x, components)
    r = x.ci_type.r
    minors = []
    for cols in itertools.combinations(range(x.n + 1), r):
        sub = [[jac[i][c] for c in cols] for i in range(r)]
        m = _bf_det(sub)
        if not m.is_zero:
            minors.append(m)
    if not minors:
        return False
    return binary_gcd(minors).degree == 0


def is_smooth_along_line(x: CompleteIntersection, point: LineChartPoint) -> bool:
    if not membership_system(x).contains(point):
        raise LineNotContained("the chart line is not on X")
    curve = line_param(point, x.coeff_ring)
    return smooth_along_components(x, curve.components)


def is_smooth_along_curve(x: CompleteIntersection, curve: RationalCurve) -> bool:
    return smooth_along_components(x, curve.components)


# -- exhaustive line enumeration over finite fields ------------------------------


@dataclass(frozen=True)
class FqLine:
    """A line in P^N over F_q as its canonical reduced row echelon
    representative, a full-rank 2 x (N+1) matrix."""

    field: Field
    rows: tuple[tuple[Scalar, ...], tuple[Scalar, ...]]
    pivots: tuple[int, int]

    def sort_key(self):
        return (self.pivots, self.rows)

    def components(self, coeffs: ParamRing | None = None) -> tuple[BinaryForm, ...]:
        ring = coeffs if coeffs is not None else ParamRing(self.field, ())
        out = []
        for l in range(len(self.rows[0])):
            out.append(
                BinaryForm(
                    ring, 1, (ring.const(self.rows[0][l]), ring.const(self.rows[1][l]))
                )
            )
        return tuple(out)

    def parameterization(self, coeffs: ParamRing | None = None) -> RationalCurve:
        return RationalCurve(self.components(coeffs))

    def in_standard_chart(self) -> bool:
        return self.pivots == (0, 1)

    def chart_point(self) -> LineChartPoint:
        if not self.in_standard_chart():
            raise ConstraintViolated("line meets (S = T = 0); move it into the chart first")
        return LineChartPoint(self.field, self.rows[0][2:], self.rows[1][2:])


def all_lines_fq(field: Field, n: int) -> Iterator[FqLine]:
    """Every line of P^n over F_q, one canonical representative each,
    in lexicographic order of (pivot pair, matrix entries)."""
    if not field.is_finite:
        raise InfiniteField("line enumeration needs a finite base field")
    q = field.p
    elems = list(range(q))
    for j1, j2 in itertools.combinations(range(n + 1), 2):
        free1 = [c for c in range(j1 + 1, n + 1) if c != j2]
        free2 = [c for c in range(j2 + 1, n + 1)]
        for vals in itertools.product(elems, repeat=len(free1) + len(free2)):
            row1 = [field.zero] * (n + 1)
            row2 = [field.zero] * (n + 1)
            row1[j1] = field.one
            row2[j2] = field.one
            for c, v in zip(free1, vals[: len(free1)]):
                row1[c] = v
            for c, v in zip(free2, vals[len(free1) :]):
                row2[c] = v
            yield FqLine(field, (tuple(row1), tuple(row2)), (j1, j2))


def enumerate_lines_fq(x: CompleteIntersection) -> list[FqLine]:
    """All F_q-rational lines of P^N lying on X, canonically sorted.

    Containment filtering short-circuits on the first form whose
    restriction to the candidate line is nonzero.
    """
    if not x.field.is_finite:
        raise InfiniteField("line enumeration needs a finite base field")
    if not x.is_parameter_free:
        raise ParameterPresent("line enumeration needs parameter-free forms")
    found = []
    for line in all_lines_fq(x.field, x.n):
        comps = line.components(x.coeff_ring)
        if all(restrict_along(f, comps).is_zero for f in x.forms):
            found.append(line)
    found.sort(key=FqLine.sort_key)
    return found


def move_line_to_chart(
    x: CompleteIntersection, line: FqLine
) -> tuple[CompleteIntersection, LineChartPoint, tuple[int, ...]]:
    """Permute coordinates so the line lands in the standard chart.

    Returns the transformed complete intersection, the chart point of the
    moved line, and the position permutation used (new slot k reads old
    slot perm[k]). All chart verdicts are equivariant under coordinate
    permutations, so they may be computed on the transformed pair.
    """
    n = x.n
    j1, j2 = line.pivots
    rest = [l for l in range(n + 1) if l not in (j1, j2)]
    perm = [j1, j2] + rest
    names = ambient_variables(n)
    inv = [0] * (n + 1)
    for k, l in enumerate(perm):
        inv[l] = k
    mapping = {names[l]: names[inv[l]] for l in range(n + 1)}
    new_forms = tuple(f.permute_variables(mapping) for f in x.forms)
    x2 = CompleteIntersection(x.ci_type, new_forms)
    row1 = tuple(line.rows[0][l] for l in perm)
    row2 = tuple(line.rows[1][l] for l in perm)
    point = LineChartPoint(x.field, row1[2:], row2[2:])
    return x2, point, tuple(perm)
