"""Ambient geometry: complete intersections, chart points, rational curves.

Conventions, used everywhere downstream:

* homogeneous coordinates on P^N are (S : T : Z1 : ... : Z{N-1});
* the standard line is L = (Z1 = ... = Z{N-1} = 0);
* the chart of lines disjoint from (S = T = 0) is the affine space of
  2 x (N-1) matrices [[a1..a{N-1}], [b1..b{N-1}]], the line being the
  image of (s:t) -> (s : t : s a1 + t b1 : ... : s a{N-1} + t b{N-1});
* a rational curve of degree b is an (N+1)-tuple of degree-b binary
  forms in (s, t) with no common projective zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import AllZero, ConstraintViolated, NotHomogeneous, RingMismatch
from .fields import Field, Scalar
from .multipoly import BinaryForm, MultiPoly, PolyRing, binary_gcd
from .params import ParamRing


def ambient_variables(n: int) -> tuple[str, ...]:
    return ("S", "T") + tuple(f"Z{j}" for j in range(1, n))


@dataclass(frozen=True)
class CIType:
    """Ambient dimension N and the degree vector (d^1, ..., d^r)."""

    ambient_dim: int
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.degrees) < 1:
            raise ConstraintViolated("r >= 1 fails: no degrees given")
        if any(d < 1 for d in self.degrees):
            raise ConstraintViolated(f"degrees must be positive, got {self.degrees}")
        if self.ambient_dim < 1:
            raise ConstraintViolated(f"ambient dimension must be positive, got {self.ambient_dim}")

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def total_degree(self) -> int:
        """Sum of the degrees d^1 + ... + d^r."""
        return sum(self.degrees)

    def tail_degree(self, i0: int) -> int:
        """Partial sum d^{i0} + ... + d^r, 1-indexed; 0 beyond r."""
        return sum(self.degrees[i0 - 1 :])

    @property
    def variety_dim(self) -> int:
        return self.ambient_dim - self.r

    def variables(self) -> tuple[str, ...]:
        return ambient_variables(self.ambient_dim)


@dataclass(frozen=True)
class CompleteIntersection:
    """r homogeneous forms of the declared degrees in S, T, Z1..Z{N-1}.

    The parameter ring of the forms' coefficients may carry symbolic
    parameters c_1..c_k; every containment and rank verdict downstream is
    then computed over the fraction field in those parameters.
    """

    ci_type: CIType
    forms: tuple[MultiPoly, ...]

    def __post_init__(self) -> None:
        t = self.ci_type
        if t.variety_dim < 2:
            raise ConstraintViolated(
                f"N >= r+2 fails: N={t.ambient_dim}, r={t.r}"
            )
        if len(self.forms) != t.r:
            raise ConstraintViolated(f"expected {t.r} forms, got {len(self.forms)}")
        expected_vars = t.variables()
        for i, (form, d) in enumerate(zip(self.forms, t.degrees), start=1):
            if form.ring.variables != expected_vars:
                raise RingMismatch(
                    f"form {i} lives in variables {form.ring.variables}, expected {expected_vars}"
                )
            if form.is_zero:
                raise ConstraintViolated(f"form {i} is zero")
            if not form.is_homogeneous(d):
                raise NotHomogeneous(f"form {i} is not homogeneous of degree {d}: {form}")
        rings = {f.ring for f in self.forms}
        if len(rings) != 1:
            raise RingMismatch("forms live in different rings")

    @property
    def ring(self) -> PolyRing:
        return self.forms[0].ring

    @property
    def coeff_ring(self) -> ParamRing:
        return self.ring.coeffs

    @property
    def field(self) -> Field:
        return self.coeff_ring.field

    @property
    def n(self) -> int:
        return self.ci_type.ambient_dim

    @property
    def is_parameter_free(self) -> bool:
        return all(f.is_parameter_free for f in self.forms)

    def scaled(self, factors: Sequence[Scalar]) -> "CompleteIntersection":
        """Replace each form h^i by lambda_i h^i (all lambda_i nonzero)."""
        field = self.field
        new_forms = []
        for f, lam in zip(self.forms, factors):
            lam = field.make(lam)
            if field.is_zero(lam):
                raise ConstraintViolated("scaling factor is zero")
            new_forms.append(f * self.coeff_ring.const(lam))
        return CompleteIntersection(self.ci_type, tuple(new_forms))

    def permuted_z(self, perm: dict[str, str]) -> "CompleteIntersection":
        """Apply a permutation of Z1..Z{N-1} (S, T fixed) to every form."""
        full = {"S": "S", "T": "T", **perm}
        return CompleteIntersection(
            self.ci_type, tuple(f.permute_variables(full) for f in self.forms)
        )


@dataclass(frozen=True)
class LineChartPoint:
    """Chart coordinates of a line: row vectors a and b of length N-1."""

    field: Field
    a: tuple[Scalar, ...]
    b: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise ConstraintViolated("a and b must have equal length")
        object.__setattr__(self, "a", tuple(self.field.make(x) for x in self.a))
        object.__setattr__(self, "b", tuple(self.field.make(x) for x in self.b))

    @classmethod
    def standard(cls, field: Field, n: int) -> "LineChartPoint":
        """The origin of the chart: the line Z1 = ... = Z{N-1} = 0."""
        z = field.zero
        return cls(field, (z,) * (n - 1), (z,) * (n - 1))

    @property
    def width(self) -> int:
        return len(self.a)

    def values(self, n: int) -> dict[str, Scalar]:
        """Assignment a_j, b_j -> stored entries for chart polynomials."""
        if self.width != n - 1:
            raise ConstraintViolated(f"chart point has width {self.width}, expected {n - 1}")
        out: dict[str, Scalar] = {}
        for j in range(1, n):
            out[f"a{j}"] = self.a[j - 1]
            out[f"b{j}"] = self.b[j - 1]
        return out

    def permuted(self, z_perm: Sequence[int]) -> "LineChartPoint":
        """Reorder columns by the permutation sending slot j to z_perm[j]."""
        a = tuple(self.a[z_perm[j]] for j in range(self.width))
        b = tuple(self.b[z_perm[j]] for j in range(self.width))
        return LineChartPoint(self.field, a, b)


@dataclass(frozen=True)
class RationalCurve:
    """A basepoint-free (N+1)-tuple of degree-b binary forms."""

    components: tuple[BinaryForm, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ConstraintViolated("curve needs at least one component")
        degs = {c.degree for c in self.components}
        if len(degs) != 1:
            raise ConstraintViolated(f"components of mixed degrees {sorted(degs)}")
        if self.degree < 1:
            raise ConstraintViolated("curve degree must be >= 1")
        rings = {c.ring for c in self.components}
        if len(rings) != 1:
            raise RingMismatch("components over different rings")
        try:
            g = binary_gcd(self.components)
        except AllZero:
            raise ConstraintViolated("all components are zero") from None
        if g.degree != 0:
            raise ConstraintViolated(f"components share the projective zero locus of {g}")

    @property
    def degree(self) -> int:
        return self.components[0].degree

    @property
    def ring(self) -> ParamRing:
        return self.components[0].ring

    @property
    def n_components(self) -> int:
        return len(self.components)


def restrict_along(
    form: MultiPoly, components: Sequence[BinaryForm], form_degree: int | None = None
) -> BinaryForm:
    """Compose a homogeneous form with a tuple of binary forms, one per
    ambient coordinate in ring order; the result has degree b * deg(form).

    form_degree pins the degree when the form may be identically zero
    (a vanishing partial derivative still occupies a fixed-degree slot in
    Jacobian matrices).
    """
    d = form.homogeneous_degree()
    if d is None:
        if form.is_zero:
            d = form_degree if form_degree is not None else 0
        else:
            raise NotHomogeneous(f"{form} is not homogeneous")
    elif form_degree is not None and d != form_degree:
        raise NotHomogeneous(f"{form} has degree {d}, expected {form_degree}")
    b = components[0].degree
    if len(components) != form.ring.n:
        raise ConstraintViolated(
            f"{len(components)} components for {form.ring.n} coordinates"
        )
    ring = components[0].ring
    out = BinaryForm.zero(ring, b * d)
    for e, c in form.terms:
        piece = BinaryForm.from_scalars(ring, [ring.one()])
        for comp, x in zip(components, e):
            if x:
                piece = piece * comp ** x
        out = out + piece.scale(c)
    return out


def restrict_to_curve(form: MultiPoly, curve: RationalCurve) -> BinaryForm:
    return restrict_along(form, curve.components)
