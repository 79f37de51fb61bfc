"""Sparse multivariate polynomials and binary forms.

MultiPoly carries the geometric objects: homogeneous forms in the ambient
coordinates S, T, Z1..Z{N-1}, chart polynomials in a_j, b_j, and so on.
Its coefficients are ParamScalar values, so a single form can depend on
symbolic parameters c_1..c_k while the geometric variables stay separate.

BinaryForm is the dense degree-d form in the line coordinates (s:t),
stored as its coefficient vector against the monomial basis
s^d, s^{d-1} t, ..., t^d. Restrictions of forms to lines and rational
curves, and all the one-variable cohomology bookkeeping, live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (
    AllZero,
    NotHomogeneous,
    ParameterPresent,
    RingMismatch,
    UnknownVariable,
)
from .fields import Scalar
from .params import Exps, ParamRing, ParamScalar, grlex_key


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring in named variables over a parameter ring."""

    coeffs: ParamRing
    variables: tuple[str, ...]

    def __post_init__(self) -> None:
        seen = set(self.variables) | set(self.coeffs.names)
        if len(seen) != len(self.variables) + len(self.coeffs.names):
            raise RingMismatch("variable and parameter names must be disjoint")

    @property
    def n(self) -> int:
        return len(self.variables)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, ())

    def one(self) -> "MultiPoly":
        return self.const(self.coeffs.one())

    def const(self, c: ParamScalar | int) -> "MultiPoly":
        if isinstance(c, int):
            c = self.coeffs.const(c)
        if c.ring != self.coeffs:
            raise RingMismatch("constant from a different parameter ring")
        if c.is_zero:
            return self.zero()
        return MultiPoly(self, (((0,) * self.n, c),))

    def var(self, name: str) -> "MultiPoly":
        try:
            i = self.variables.index(name)
        except ValueError:
            raise UnknownVariable(f"variable {name!r} not in ring {self.variables}") from None
        exps = tuple(1 if j == i else 0 for j in range(self.n))
        return MultiPoly(self, ((exps, self.coeffs.one()),))

    def param(self, name: str) -> "MultiPoly":
        return self.const(self.coeffs.var(name))

    def from_terms(self, terms: Mapping[Exps, ParamScalar]) -> "MultiPoly":
        clean = {e: c for e, c in terms.items() if not c.is_zero}
        ordered = tuple(sorted(clean.items(), key=lambda t: grlex_key(t[0]), reverse=True))
        return MultiPoly(self, ordered)

    def __str__(self) -> str:
        return f"{self.coeffs}[{', '.join(self.variables)}]"


@dataclass(frozen=True)
class MultiPoly:
    ring: PolyRing
    terms: tuple[tuple[Exps, ParamScalar], ...]

    # -- queries ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms, or None if mixed. Zero counts
        as homogeneous of every degree and reports None."""
        degs = {sum(e) for e, _ in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self, d: int | None = None) -> bool:
        if self.is_zero:
            return True
        got = self.homogeneous_degree()
        if got is None:
            return False
        return d is None or got == d

    @property
    def is_parameter_free(self) -> bool:
        return all(c.is_constant for _, c in self.terms)

    def variables_present(self) -> set[str]:
        out = set()
        for e, _ in self.terms:
            for name, x in zip(self.ring.variables, e):
                if x:
                    out.add(name)
        return out

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise RingMismatch(f"mixed rings {self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        if isinstance(other, ParamScalar):
            return self.ring.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for e, c in other.terms:
            prev = acc.get(e)
            acc[e] = c if prev is None else prev + c
        return self.ring.from_terms(acc)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ring, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[Exps, ParamScalar] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(x + y for x, y in zip(e1, e2))
                prod = c1 * c2
                prev = acc.get(e)
                acc[e] = prod if prev is None else prev + prod
        return self.ring.from_terms(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    # -- calculus -----------------------------------------------------------

    def differentiate(self, v: str) -> "MultiPoly":
        """Formal partial derivative; exponent multiples of the
        characteristic annihilate because the exponent is reduced into
        the base field."""
        try:
            i = self.ring.variables.index(v)
        except ValueError:
            raise UnknownVariable(f"variable {v!r} not in ring {self.ring.variables}") from None
        acc: dict[Exps, ParamScalar] = {}
        for e, c in self.terms:
            if e[i] == 0:
                continue
            ne = tuple(x - 1 if j == i else x for j, x in enumerate(e))
            coeff = c.scale_int(e[i])
            prev = acc.get(ne)
            acc[ne] = coeff if prev is None else prev + coeff
        return self.ring.from_terms(acc)

    def substitute(self, assignment: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Simultaneous substitution; every occurring variable must be
        assigned, assignments must share one target ring with the same
        coefficient ring, and the result is fully expanded."""
        for key in assignment:
            if key not in self.ring.variables:
                raise UnknownVariable(f"assignment for unknown variable {key!r}")
        needed = self.variables_present()
        missing = needed - set(assignment)
        if missing:
            raise UnknownVariable(f"no assignment for {sorted(missing)}")
        targets = {v.ring for v in assignment.values()}
        if len(targets) > 1:
            raise RingMismatch("assignment values live in different rings")
        target = targets.pop() if targets else self.ring
        if target.coeffs != self.ring.coeffs:
            raise RingMismatch("assignment changes the coefficient ring")
        out = target.zero()
        cache: dict[tuple[str, int], MultiPoly] = {}
        for e, c in self.terms:
            term = target.const(c)
            for name, x in zip(self.ring.variables, e):
                if x == 0:
                    continue
                key = (name, x)
                if key not in cache:
                    cache[key] = assignment[name] ** x
                term = term * cache[key]
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, Scalar]) -> ParamScalar:
        """Evaluate every variable at a field element; coefficients
        (hence parameters) survive untouched."""
        needed = self.variables_present()
        missing = needed - set(values)
        if missing:
            raise UnknownVariable(f"no value for {sorted(missing)}")
        field = self.ring.coeffs.field
        made = {name: field.make(v) for name, v in values.items()}
        out = self.ring.coeffs.zero()
        for e, c in self.terms:
            scale = field.one
            for name, x in zip(self.ring.variables, e):
                for _ in range(x):
                    scale = field.mul(scale, made[name])
            out = out + c * self.ring.coeffs.const(scale)
        return out

    def split(self, front: Sequence[str]) -> dict[Exps, "MultiPoly"]:
        """Collect terms by their exponents in `front`, returning
        polynomials in the remaining variables."""
        front = tuple(front)
        idx = [self.ring.variables.index(v) for v in front]
        rest = tuple(v for v in self.ring.variables if v not in front)
        rest_idx = [self.ring.variables.index(v) for v in rest]
        sub = PolyRing(self.ring.coeffs, rest)
        buckets: dict[Exps, dict[Exps, ParamScalar]] = {}
        for e, c in self.terms:
            fe = tuple(e[i] for i in idx)
            re = tuple(e[i] for i in rest_idx)
            bucket = buckets.setdefault(fe, {})
            prev = bucket.get(re)
            bucket[re] = c if prev is None else prev + c
        return {fe: sub.from_terms(b) for fe, b in buckets.items()}

    def permute_variables(self, mapping: Mapping[str, str]) -> "MultiPoly":
        """Rename variables by a bijection of the ring's variable set."""
        if set(mapping) != set(self.ring.variables) or set(mapping.values()) != set(
            self.ring.variables
        ):
            raise UnknownVariable("variable permutation must be a bijection of the ring")
        pos = {v: i for i, v in enumerate(self.ring.variables)}
        acc: dict[Exps, ParamScalar] = {}
        for e, c in self.terms:
            ne = [0] * self.ring.n
            for name, x in zip(self.ring.variables, e):
                ne[pos[mapping[name]]] = x
            acc[tuple(ne)] = c
        return self.ring.from_terms(acc)

    # -- printing ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for e, c in self.terms:
            mono = "*".join(
                f"{n}^{x}" if x > 1 else n
                for n, x in zip(self.ring.variables, e)
                if x > 0
            )
            cs = str(c)
            neg = False
            if len(c.terms) == 1:
                if cs.startswith("-"):
                    neg = True
                    cs = cs[1:]
            if mono:
                if cs == "1":
                    body = mono
                elif len(c.terms) > 1:
                    body = f"({cs})*{mono}"
                else:
                    body = f"{cs}*{mono}"
            else:
                body = cs if len(c.terms) == 1 else f"({cs})"
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)


# -- bridging to the flat parameter ring ------------------------------------


def flatten_ring(ring: PolyRing) -> ParamRing:
    """Parameter ring on (parameters + variables), parameters first."""
    return ParamRing(ring.coeffs.field, ring.coeffs.names + ring.variables)


def flatten(p: MultiPoly, flat: ParamRing | None = None) -> ParamScalar:
    """View a MultiPoly as a flat ParamScalar in parameters + variables."""
    flat = flat or flatten_ring(p.ring)
    acc: dict[Exps, Scalar] = {}
    for e, c in p.terms:
        for pe, coeff in c.terms:
            acc[tuple(pe) + tuple(e)] = coeff
    return flat.from_terms(acc)


def unflatten(ps: ParamScalar, ring: PolyRing) -> MultiPoly:
    """Inverse of flatten for the ring's own flat parameter ring."""
    k = ring.coeffs.k
    acc: dict[Exps, dict[Exps, Scalar]] = {}
    for e, coeff in ps.terms:
        pe, ve = tuple(e[:k]), tuple(e[k:])
        acc.setdefault(ve, {})[pe] = coeff
    terms = {ve: ring.coeffs.from_terms(pterms) for ve, pterms in acc.items()}
    return ring.from_terms(terms)


# -- binary forms ---------------------------------------------------------------


@dataclass(frozen=True)
class BinaryForm:
    """Degree-d form in (s:t) as coefficients against s^d, ..., t^d.

    The zero form is permitted at every degree; `coeffs` always has
    length degree + 1.
    """

    ring: ParamRing
    degree: int
    coeffs: tuple[ParamScalar, ...]

    def __post_init__(self) -> None:
        if self.degree < 0 or len(self.coeffs) != self.degree + 1:
            raise NotHomogeneous(
                f"coefficient vector of length {len(self.coeffs)} for degree {self.degree}"
            )

    @classmethod
    def zero(cls, ring: ParamRing, degree: int) -> "BinaryForm":
        return cls(ring, degree, tuple(ring.zero() for _ in range(degree + 1)))

    @classmethod
    def from_scalars(cls, ring: ParamRing, values: Sequence[ParamScalar | int]) -> "BinaryForm":
        coeffs = tuple(ring.const(v) if isinstance(v, int) else v for v in values)
        return cls(ring, len(coeffs) - 1, coeffs)

    @classmethod
    def from_poly(cls, p: MultiPoly, s: str = "s", t: str = "t") -> "BinaryForm":
        """Read a homogeneous polynomial in two variables as a form."""
        if set(p.ring.variables) != {s, t}:
            raise UnknownVariable(f"expected a ring in ({s}, {t})")
        d = p.homogeneous_degree()
        if d is None:
            raise NotHomogeneous(f"{p} is not homogeneous")
        coeffs = [p.ring.coeffs.zero()] * (d + 1)
        si = p.ring.variables.index(s)
        for e, c in p.terms:
            coeffs[d - e[si]] = c
        return cls(p.ring.coeffs, d, tuple(coeffs))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    @property
    def is_parameter_free(self) -> bool:
        return all(c.is_constant for c in self.coeffs)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if other.degree != self.degree or other.ring != self.ring:
            raise RingMismatch("binary form addition needs equal degree and ring")
        return BinaryForm(
            self.ring, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.ring, self.degree, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        if other.ring != self.ring:
            raise RingMismatch("mixed rings")
        d = self.degree + other.degree
        out = [self.ring.zero()] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return BinaryForm(self.ring, d, tuple(out))

    def scale(self, c: ParamScalar | int) -> "BinaryForm":
        if isinstance(c, int):
            c = self.ring.const(c)
        return BinaryForm(self.ring, self.degree, tuple(x * c for x in self.coeffs))

    def __pow__(self, n: int) -> "BinaryForm":
        out = BinaryForm.from_scalars(self.ring, [self.ring.one()])
        for _ in range(n):
            out = out * self
        return out

    def compose(self, u: "BinaryForm", w: "BinaryForm") -> "BinaryForm":
        """Substitute s -> u, t -> w for forms u, w of one common degree."""
        if u.degree != w.degree or u.ring != self.ring or w.ring != self.ring:
            raise RingMismatch("cover components must share degree and ring")
        d = self.degree
        acc = BinaryForm.zero(self.ring, d * u.degree)
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            acc = acc + ((u ** (d - k)) * (w ** k)).scale(c)
        return acc

    def evaluate(self, s0: Scalar, t0: Scalar) -> ParamScalar:
        field = self.ring.field
        s0, t0 = field.make(s0), field.make(t0)
        out = self.ring.zero()
        for k, c in enumerate(self.coeffs):
            v = field.one
            for _ in range(self.degree - k):
                v = field.mul(v, s0)
            for _ in range(k):
                v = field.mul(v, t0)
            out = out + c * self.ring.const(v)
        return out

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        pieces = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            se, te = self.degree - k, k
            mono = "*".join(
                ([f"s^{se}"] if se > 1 else ["s"] if se == 1 else [])
                + ([f"t^{te}"] if te > 1 else ["t"] if te == 1 else [])
            )
            cs = str(c)
            neg = len(c.terms) == 1 and cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono:
                if cs == "1":
                    body = mono
                elif len(c.terms) > 1:
                    body = f"({cs})*{mono}"
                else:
                    body = f"{cs}*{mono}"
            else:
                body = cs if len(c.terms) <= 1 else f"({cs})"
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)


# -- gcd of binary forms -----------------------------------------------------------


def _strip_st(f: BinaryForm) -> tuple[int, int, list[Scalar]]:
    """Split off s^vs * t^vt and return the parameter-free core as a dense
    univariate coefficient list, highest s-power first."""
    vals = [c.constant_value() for c in f.coeffs]
    field = f.ring.field
    nz = [k for k, v in enumerate(vals) if not field.is_zero(v)]
    k0, k1 = nz[0], nz[-1]
    vs = f.degree - k1
    vt = k0
    return vs, vt, vals[k0 : k1 + 1]


def _euclid_gcd(a: list[Scalar], b: list[Scalar], field) -> list[Scalar]:
    """Monic gcd of dense univariate polynomials, highest degree first."""

    def trim(p: list[Scalar]) -> list[Scalar]:
        i = 0
        while i < len(p) and field.is_zero(p[i]):
            i += 1
        return p[i:]

    def monic(p: list[Scalar]) -> list[Scalar]:
        inv = field.inv(p[0])
        return [field.mul(x, inv) for x in p]

    a, b = trim(a), trim(b)
    while b:
        # remainder of a by b
        a = monic(a)
        b = monic(b)
        r = list(a)
        while len(r) >= len(b) and r:
            lead = r[0]
            if field.is_zero(lead):
                r = trim(r)
                continue
            shift = len(r) - len(b)
            for i, x in enumerate(b):
                r[i] = field.sub(r[i], field.mul(lead, x))
            r = trim(r)
        a, b = b, r
    return monic(a)


def binary_gcd(forms: Sequence[BinaryForm]) -> BinaryForm:
    """Gcd of binary forms over the base field, normalized to leading
    coefficient 1 on the highest s-power. Degree 0 means the forms have
    no common projective zero.
    """
    nonzero = [f for f in forms if not f.is_zero]
    if not nonzero:
        raise AllZero("gcd of all-zero binary forms")
    for f in nonzero:
        if not f.is_parameter_free:
            raise ParameterPresent("binary gcd needs parameter-free coefficients")
    ring = nonzero[0].ring
    field = ring.field
    vs, vt, core = _strip_st(nonzero[0])
    for f in nonzero[1:]:
        if f.ring != ring:
            raise RingMismatch("mixed rings in gcd")
        fvs, fvt, fcore = _strip_st(f)
        vs, vt = min(vs, fvs), min(vt, fvt)
        core = _euclid_gcd(core, fcore, field)
        if len(core) == 1 and vs == 0 and vt == 0:
            break
    # rehomogenize: core (highest s-power first) times s^vs t^vt
    g = BinaryForm.from_scalars(ring, [ring.const(field.make(c)) for c in core])
    if vs:
        g = g * BinaryForm(ring, vs, tuple([ring.one()] + [ring.zero()] * vs))
    if vt:
        g = g * BinaryForm(ring, vt, tuple([ring.zero()] * vt + [ring.one()]))
    # normalize on the highest nonzero s-power
    lead = next(c for c in g.coeffs if not c.is_zero)
    return g.scale(ring.const(field.inv(lead.constant_value())))
