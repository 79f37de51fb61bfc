"""Cohomology of pulled-back tangent and normal bundles on rational curves.

Sections of the restricted tangent bundle are computed through the
Euler-kernel presentation: along a degree-b curve mu on X, the Jacobian
rows h^i_W composed with mu define a map of sheaves

    psi : O(b)^{N+1}  ->  (+)_i O(b d^i),

whose kernel F sits in 0 -> O -> F -> mu^* T_X -> 0 via the Euler
section (the component tuple of mu itself). Taking global sections of a
twist m >= -1 gives

    h^0(mu^* T_X(m)) = dim ker H^0(psi(m)) - h^0(O(m)),

and h^1 follows from chi = b (N+1-|d|) + (N-r)(m+1). Twists below -1
would need the H^1(O(m)) correction and are rejected.

For a line, the analogous kernel presentation of the normal bundle
N_{L/X} inside O(1)^{N-1} is exact at every twist, so the full splitting
type is recovered from consecutive section counts:
#{a_i >= k} = h^0(E(-k)) - h^0(E(-k-1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .chart import delta_forms, line_param, membership_system, smooth_along_components
from .errors import (
    BasePointedCover,
    ConstraintViolated,
    CurveNotOnX,
    LineNotContained,
    ParameterPresent,
    RingMismatch,
    SingularAlongCurve,
    SingularAlongLine,
    TwistTooNegative,
)
from .exactmatrix import ExactMatrix, kernel_basis
from .geometry import CIType, CompleteIntersection, LineChartPoint, RationalCurve, restrict_along
from .multipoly import BinaryForm, binary_gcd
from .params import ParamRing


@dataclass(frozen=True)
class SplittingType:
    """Twists (a_1 >= a_2 >= ... >= a_n) of a direct sum of line bundles
    on the projective line."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(x < y for x, y in zip(self.entries, self.entries[1:])):
            raise ConstraintViolated(f"entries must be non-increasing: {self.entries}")

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return sum(self.entries)

    @property
    def min_entry(self) -> int:
        return min(self.entries)

    @property
    def is_nef(self) -> bool:
        return all(e >= 0 for e in self.entries)


def _coerce_components(
    ring: ParamRing, comps: Sequence[BinaryForm]
) -> tuple[BinaryForm, ...]:
    out = []
    for c in comps:
        if c.ring == ring:
            out.append(c)
        else:
            if c.ring.field != ring.field:
                raise RingMismatch("curve and variety live over different fields")
            out.append(
                BinaryForm(ring, c.degree, tuple(ring.const(v.constant_value()) for v in c.coeffs))
            )
    return tuple(out)


def _check_on_x(x: CompleteIntersection, comps: Sequence[BinaryForm]) -> None:
    for form in x.forms:
        if not restrict_along(form, comps).is_zero:
            raise CurveNotOnX(f"{form} does not vanish along the curve")


def tangent_cohomology(
    x: CompleteIntersection, mu: RationalCurve, m: int
) -> tuple[int, int]:
    """(h^0, h^1) of mu^* T_X twisted by m, for m >= -1."""
    if m <= -2:
        raise TwistTooNegative(f"twist {m} is below -1")
    if not x.is_parameter_free:
        raise ParameterPresent("tangent cohomology needs parameter-free forms")
    comps = _coerce_components(x.coeff_ring, mu.components)
    if len(comps) != x.n + 1:
        raise ConstraintViolated(f"curve has {len(comps)} components, expected {x.n + 1}")
    _check_on_x(x, comps)
    if not smooth_along_components(x, comps):
        raise SingularAlongCurve("X is singular somewhere along the curve")

    b = mu.degree
    n, r = x.n, x.ci_type.r
    degrees = x.ci_type.degrees
    phi = [
        [restrict_along(f.differentiate(w), comps, form_degree=d - 1) for w in x.ring.variables]
        for f, d in zip(x.forms, degrees)
    ]
    # the component tuple is always in the kernel of psi(0)
    field = x.field
    for i in range(r):
        acc = BinaryForm.zero(x.coeff_ring, b * degrees[i])
        for j in range(n + 1):
            acc = acc + phi[i][j] * comps[j]
        assert acc.is_zero, "Euler section escaped the kernel"

    dom = b + m + 1  # h^0(O(b+m)) per component
    rows = []
    for i in range(r):
        target = b * degrees[i] + m
        for l in range(target + 1):
            row = []
            for j in range(n + 1):
                for k in range(dom):
                    q = l - k
                    deg = b * (degrees[i] - 1)
                    row.append(
                        phi[i][j].coeffs[q] if 0 <= q <= deg else x.coeff_ring.zero()
                    )
            rows.append(row)
    cols = (n + 1) * dom
    matrix = (
        ExactMatrix.from_rows(x.coeff_ring, rows)
        if rows
        else ExactMatrix(x.coeff_ring, 0, cols, ())
    )
    kernel_dim = len(kernel_basis(matrix)) if rows else cols
    h0_line = m + 1 if m >= 0 else 0
    h0 = kernel_dim - h0_line
    chi = b * (n + 1 - x.ci_type.total_degree) + (n - r) * (m + 1)
    h1 = h0 - chi
    assert h1 >= 0, "negative h^1; kernel presentation violated"
    return h0, h1


# -- splitting types of lines -------------------------------------------------


def _normal_h0(dforms: list[list[BinaryForm]], degrees: tuple[int, ...], m: int) -> int:
    """h^0 of the normal-bundle kernel sheaf twisted by m, where the
    presenting map is O(1+m)^{N-1} -> (+)_i O(d^i + m)."""
    ring = dforms[0][0].ring
    dom = m + 2
    if dom <= 0:
        return 0
    n_minus_1 = len(dforms)
    rows = []
    for i, d in enumerate(degrees):
        target = d + m
        for l in range(target + 1):
            row = []
            for j in range(n_minus_1):
                for k in range(dom):
                    q = l - k
                    row.append(dforms[j][i].coeffs[q] if 0 <= q <= d - 1 else ring.zero())
            rows.append(row)
    cols = n_minus_1 * dom
    if not rows:
        return cols
    matrix = ExactMatrix.from_rows(ring, rows)
    return len(kernel_basis(matrix))


def normal_splitting_line(
    x: CompleteIntersection, point: LineChartPoint
) -> SplittingType:
    """Splitting type of the normal bundle of a chart line inside X.

    Requires the line on X and X smooth along it; the result has rank
    N - r - 1, every entry at most 1, and total degree N - 1 - |d|.
    """
    if not x.is_parameter_free:
        raise ParameterPresent("splitting types need parameter-free forms")
    if not membership_system(x).contains(point):
        raise LineNotContained("the chart line is not on X")
    curve = line_param(point, x.coeff_ring)
    if not smooth_along_components(x, curve.components):
        raise SingularAlongLine("X is singular somewhere along the line")

    degrees = x.ci_type.degrees
    n, r = x.n, x.ci_type.r
    rank = n - r - 1
    total = n - 1 - x.ci_type.total_degree
    dforms = delta_forms(x, point)

    floor = total - (rank - 1)  # all other entries are at most 1
    h_at = {2: 0}  # h^0(E(-k)); entries never exceed 1
    counts: dict[int, int] = {2: 0}
    k = 1
    while True:
        h_at[k] = _normal_h0(dforms, degrees, -k)
        counts[k] = h_at[k] - h_at[k + 1]
        if counts[k] == rank:
            break
        k -= 1
        assert k >= floor - 1, "splitting recovery descended past the degree floor"

    entries: list[int] = []
    for v in range(1, k - 1, -1):
        entries.extend([v] * (counts[v] - counts[v + 1]))
    st = SplittingType(tuple(entries))
    assert st.rank == rank and st.degree == total, "splitting bookkeeping failed"
    assert max(st.entries) <= 1
    return st


def tangent_splitting_line(
    x: CompleteIntersection, point: LineChartPoint
) -> SplittingType:
    """Splitting type of T_X restricted to a chart line: the tangent
    direction of the line splits off as a degree-2 summand and the
    complement is the normal bundle."""
    normal = normal_splitting_line(x, point)
    merged = tuple(sorted((2,) + normal.entries, reverse=True))
    return SplittingType(merged)


# -- covers and the degree gate ---------------------------------------------------


def precompose(
    mu: RationalCurve, cover: tuple[BinaryForm, BinaryForm]
) -> RationalCurve:
    """Precompose a curve with a basepoint-free self-map of the line of
    degree k, multiplying the curve degree by k."""
    u, w = cover
    if u.degree != w.degree or u.degree < 1:
        raise BasePointedCover("cover components must share one positive degree")
    try:
        g = binary_gcd([u, w])
    except Exception as exc:  # AllZero and parameter errors both disqualify
        raise BasePointedCover(f"degenerate cover: {exc}") from None
    if g.degree != 0:
        raise BasePointedCover(f"cover has the base locus of {g}")
    comps = tuple(c.compose(u, w) for c in mu.components)
    return RationalCurve(comps)


GateVerdict = Literal["AllImmersionsNonFree", "NotTriggered"]


@dataclass(frozen=True)
class DegreeGateReport:
    """Outcome of the degree-sum criterion for curves of degree b on a
    complete intersection of the given type."""

    ci_type: CIType
    curve_degree: int
    degree_sum: int  # sum of the splitting entries of mu^* T_X
    verdict: GateVerdict


def degree_nonfree_gate(ci_type: CIType, b: int) -> DegreeGateReport:
    """When |d| > N the pulled-back tangent bundle has nonpositive degree
    while containing a degree >= 2 summand, so every immersed rational
    curve is non-free. The immersion hypothesis itself is not checked;
    the verdict is conditional on it."""
    if b < 1:
        raise ConstraintViolated(f"curve degree must be >= 1, got {b}")
    total = ci_type.total_degree
    s = b * (ci_type.ambient_dim + 1 - total)
    verdict: GateVerdict = (
        "AllImmersionsNonFree" if total > ci_type.ambient_dim else "NotTriggered"
    )
    return DegreeGateReport(ci_type, b, s, verdict)
