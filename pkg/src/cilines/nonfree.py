"""Local equations and smoothness certificates for the locus of non-free
lines at a corank-1 point.

At a chart line on X where M(h) drops rank by exactly one, the locus of
non-free lines is cut out, inside the locus of lines on X, by the
maximal minors of M(h). A minimal such set is obtained by bordering: fix
a nonsingular (|d|-1) x (|d|-1) submatrix at the point and adjoin one
extra row at a time, giving m = N - |d| determinants g_1, ..., g_m, each
vanishing at the point.

The locus is then smooth of the expected local dimension N - r - 2 at
the line exactly when the (|d|+r+m) x 2(N-1) matrix of first derivatives
of the containment polynomials f^i_k and of the g_l, evaluated at the
point, has full rank |d| + r + m = N + r. Derivative rows for the f^i_k
are read off M(h) itself: differentiating the composite with the chart
parameterization by a_j (resp. b_j) multiplies the restricted partial by
s (resp. t), which shifts its coefficient vector by one slot.

With symbolic parameters the ranks are taken over the fraction field,
and certificates (explicit nonzero polynomials in the parameters whose
nonvanishing guarantees every rank used) are returned in place of the
informal phrase "for general parameters".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .chart import (
    NonFreeMatrix,
    chart_ring,
    chart_variables,
    membership_system,
    nonfree_matrix,
)
from .errors import NotCorankOne
from .exactmatrix import ExactMatrix, det, rank_exact
from .fields import Scalar
from .geometry import CompleteIntersection, LineChartPoint
from .multipoly import MultiPoly, flatten, flatten_ring, unflatten
from .params import ParamScalar


@dataclass(frozen=True)
class LocalEquations:
    """Bordered-minor equations for the non-free locus at a corank-1 line."""

    base: LineChartPoint
    pivot_rows: tuple[int, ...]
    pivot_cols: tuple[int, ...]
    pivot_det: ParamScalar
    minors: tuple[MultiPoly, ...]

    @property
    def count(self) -> int:
        return len(self.minors)


@dataclass(frozen=True)
class GenericityCertificate:
    """Nonzero polynomials in the parameters whose simultaneous
    nonvanishing guarantees the ranks of the enclosing report."""

    conditions: tuple[ParamScalar, ...]
    witness: dict[str, Scalar] | None = None


Verdict = Literal["SmoothExpectedDim", "NotSmoothOrExcess", "NotInJ", "NotContained"]


@dataclass(frozen=True)
class SmoothnessReport:
    contained: bool
    in_nonfree_locus: bool
    matrix_rank: int | None
    corank: int | None
    equations: LocalEquations | None
    jacobian_rank: int | None
    required_rank: int | None
    verdict: Verdict
    local_dimension: int | None
    certificate: ParamScalar | None
    genericity: GenericityCertificate | None


def _lex_first_independent(matrix: ExactMatrix, target: int) -> tuple[int, ...]:
    """Lexicographically first row subset of the given size with full
    rank, found greedily (valid by the matroid exchange property)."""
    chosen: list[int] = []
    all_cols = tuple(range(matrix.cols))
    for i in range(matrix.rows):
        cand = chosen + [i]
        if rank_exact(matrix.submatrix(cand, all_cols)).rank == len(cand):
            chosen = cand
            if len(chosen) == target:
                return tuple(chosen)
    raise NotCorankOne(f"matrix rank is below {target}")


def _lex_first_pivot(matrix: ExactMatrix, size: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    rows = _lex_first_independent(matrix, size)
    cols = _lex_first_independent(matrix.submatrix(rows, range(matrix.cols)).transpose(), size)
    return rows, cols


def local_equations(x: CompleteIntersection, point: LineChartPoint) -> LocalEquations:
    """Emit the N - |d| bordered minors at a corank-1 chart line.

    The pivot is the lexicographically first nonsingular minor of size
    |d| - 1; each emitted equation is the determinant of the symbolic
    M(h) on the pivot rows plus one further row, over all columns.
    Raises NotCorankOne when the line is free (corank 0) or the drop is
    deeper than one (corank >= 2, unsupported).
    """
    nf = nonfree_matrix(x, at=point)
    return _local_equations_from(x, point, nf)


def _local_equations_from(
    x: CompleteIntersection, point: LineChartPoint, nf: NonFreeMatrix
) -> LocalEquations:
    total = x.ci_type.total_degree
    rank = rank_exact(nf.matrix).rank
    corank = total - rank
    if corank != 1:
        raise NotCorankOne(
            f"corank is {corank}, not 1 "
            + ("(the line is free)" if corank == 0 else "(deeper drops are unsupported)")
        )
    size = total - 1
    pivot_rows, pivot_cols = _lex_first_pivot(nf.matrix, size)
    pivot_det = det(nf.matrix.submatrix(pivot_rows, pivot_cols))

    ab = chart_ring(x.coeff_ring, x.n)
    flat = flatten_ring(ab)
    sym_rows = [
        [flatten(e, flat) for e in row] for row in nf.entries_ab
    ]
    minors: list[MultiPoly] = []
    vals = point.values(x.n)
    for extra in range(x.n - 1):
        if extra in pivot_rows:
            continue
        rows_idx = sorted((*pivot_rows, extra))
        sub = ExactMatrix.from_rows(flat, [sym_rows[i] for i in rows_idx])
        g = unflatten(det(sub), ab)
        assert g.evaluate(vals).is_zero, "bordered minor fails to vanish at the base point"
        minors.append(g)
    return LocalEquations(point, pivot_rows, pivot_cols, pivot_det, tuple(minors))


def jacobian_def_matrix(
    x: CompleteIntersection,
    point: LineChartPoint,
    equations: LocalEquations | None = None,
) -> tuple[ExactMatrix, LocalEquations]:
    """The (|d|+r+m) x 2(N-1) derivative matrix at the chart point.

    Rows come in the order f^1_0, ..., f^r_{d^r}, g_1, ..., g_m; the
    f-rows are assembled from the evaluated M(h) by the coefficient
    shift, the g-rows by differentiating the bordered minors.
    """
    nf = nonfree_matrix(x, at=point)
    if equations is None:
        equations = _local_equations_from(x, point, nf)
    n = x.n
    degrees = x.ci_type.degrees
    ring = x.coeff_ring
    vals = nf.value_rows()  # vals[j][block i offset + k]
    blocks = nf.col_blocks
    zero = ring.zero()

    rows: list[list[ParamScalar]] = []
    for i, d in enumerate(degrees):
        lo, _ = blocks[i]
        for k in range(d + 1):
            da = [vals[j][lo + k] if k <= d - 1 else zero for j in range(n - 1)]
            db = [vals[j][lo + k - 1] if k >= 1 else zero for j in range(n - 1)]
            rows.append(da + db)

    avars, bvars = chart_variables(n)
    pt = point.values(n)
    for g in equations.minors:
        da = [g.differentiate(v).evaluate(pt) for v in avars]
        db = [g.differentiate(v).evaluate(pt) for v in bvars]
        rows.append(da + db)
    return ExactMatrix.from_rows(ring, rows), equations


def expected_pair_report(
    x: CompleteIntersection, point: LineChartPoint
) -> SmoothnessReport:
    """Full verdict for the pair (line, X): containment, corank of M(h),
    local equations, Jacobian rank against the required |d|+r+m = N+r,
    and genericity certificates when parameters are present."""
    n, r = x.n, x.ci_type.r
    total = x.ci_type.total_degree
    required = n + r

    if not membership_system(x).contains(point):
        return SmoothnessReport(
            contained=False,
            in_nonfree_locus=False,
            matrix_rank=None,
            corank=None,
            equations=None,
            jacobian_rank=None,
            required_rank=required,
            verdict="NotContained",
            local_dimension=None,
            certificate=None,
            genericity=None,
        )

    nf = nonfree_matrix(x, at=point)
    rk = rank_exact(nf.matrix)
    corank = total - rk.rank
    if corank == 0:
        return SmoothnessReport(
            contained=True,
            in_nonfree_locus=False,
            matrix_rank=rk.rank,
            corank=0,
            equations=None,
            jacobian_rank=None,
            required_rank=required,
            verdict="NotInJ",
            local_dimension=None,
            certificate=rk.certificate,
            genericity=_genericity([rk.certificate]),
        )
    if corank >= 2:
        return SmoothnessReport(
            contained=True,
            in_nonfree_locus=True,
            matrix_rank=rk.rank,
            corank=corank,
            equations=None,
            jacobian_rank=None,
            required_rank=required,
            verdict="NotSmoothOrExcess",
            local_dimension=None,
            certificate=None,
            genericity=None,
        )

    jac, eqs = jacobian_def_matrix(x, point)
    jrk = rank_exact(jac)
    smooth = jrk.rank == required
    # |d|+r+m with m = N-|d| collapses to N+r; expected local dimension
    # is the chart dimension minus that rank
    local_dim = 2 * (n - 1) - required
    assert local_dim == n - r - 2
    return SmoothnessReport(
        contained=True,
        in_nonfree_locus=True,
        matrix_rank=rk.rank,
        corank=1,
        equations=eqs,
        jacobian_rank=jrk.rank,
        required_rank=required,
        verdict="SmoothExpectedDim" if smooth else "NotSmoothOrExcess",
        local_dimension=local_dim if smooth else None,
        certificate=jrk.certificate,
        genericity=_genericity([rk.certificate, eqs.pivot_det, jrk.certificate]),
    )


def _genericity(conditions: list[ParamScalar]) -> GenericityCertificate:
    seen: dict[str, ParamScalar] = {}
    for c in conditions:
        if c.is_constant:
            continue
        seen.setdefault(str(c), c)
    return GenericityCertificate(tuple(seen.values()))


def differential_span_matrix(
    x: CompleteIntersection, polys: list[MultiPoly], point: LineChartPoint
) -> ExactMatrix:
    """Rows of first derivatives (d/da_1..d/db_{N-1}) of chart
    polynomials at a point; used to compare spans of local equations."""
    n = x.n
    avars, bvars = chart_variables(n)
    pt = point.values(n)
    rows = []
    for g in polys:
        rows.append(
            [g.differentiate(v).evaluate(pt) for v in avars]
            + [g.differentiate(v).evaluate(pt) for v in bvars]
        )
    return ExactMatrix.from_rows(x.coeff_ring, rows)


def same_differential_span(
    x: CompleteIntersection,
    ours: list[MultiPoly],
    reference: list[MultiPoly],
    point: LineChartPoint,
) -> bool:
    """Whether two sets of chart polynomials have equal differential span
    at the point, over the fraction field of the parameters."""
    a = differential_span_matrix(x, ours, point)
    b = differential_span_matrix(x, reference, point)
    ra = rank_exact(a).rank
    rb = rank_exact(b).rank
    rab = rank_exact(a.stack(b)).rank
    return ra == rb == rab
