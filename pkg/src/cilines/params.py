"""Sparse polynomials in named parameters over an exact base field.

These are the scalars of the linear algebra layer. Rank computations run
over the fraction field K(c_1, ..., c_k) of this ring, so genericity
certificates come out as explicit nonzero polynomials in the parameters.
A ring with no names degenerates to the base field itself.

Canonical form: zero is the empty term tuple; terms are kept sorted in
descending graded-lexicographic order (total degree first, ties broken on
the exponent vector), which fixes printing, equality and leading terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InexactDivision, ParameterPresent, RingMismatch, UnknownVariable
from .fields import Field, Scalar

Exps = tuple[int, ...]


def grlex_key(exps: Exps) -> tuple[int, Exps]:
    return (sum(exps), exps)


@dataclass(frozen=True)
class ParamRing:
    """K[c_1, ..., c_k] for a base field K and ordered parameter names."""

    field: Field
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise RingMismatch(f"duplicate parameter names in {self.names}")

    @property
    def k(self) -> int:
        return len(self.names)

    def zero(self) -> "ParamScalar":
        return ParamScalar(self, ())

    def one(self) -> "ParamScalar":
        return self.const(self.field.one)

    def const(self, value: int | Scalar) -> "ParamScalar":
        v = self.field.make(value)
        if self.field.is_zero(v):
            return self.zero()
        return ParamScalar(self, (((0,) * self.k, v),))

    def var(self, name: str) -> "ParamScalar":
        try:
            i = self.names.index(name)
        except ValueError:
            raise UnknownVariable(f"parameter {name!r} not in ring {self.names}") from None
        exps = tuple(1 if j == i else 0 for j in range(self.k))
        return ParamScalar(self, ((exps, self.field.one),))

    def from_terms(self, terms: Mapping[Exps, Scalar]) -> "ParamScalar":
        clean = {e: c for e, c in terms.items() if not self.field.is_zero(c)}
        ordered = tuple(sorted(clean.items(), key=lambda t: grlex_key(t[0]), reverse=True))
        return ParamScalar(self, ordered)

    def __str__(self) -> str:
        return f"{self.field}[{', '.join(self.names)}]"


@dataclass(frozen=True)
class ParamScalar:
    """A polynomial in the ring's parameters with field coefficients."""

    ring: ParamRing
    terms: tuple[tuple[Exps, Scalar], ...]

    # -- queries --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and sum(self.terms[0][0]) == 0)

    def constant_value(self) -> Scalar:
        if not self.terms:
            return self.ring.field.zero
        if not self.is_constant:
            raise ParameterPresent(f"{self} carries parameters")
        return self.terms[0][1]

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def leading(self) -> tuple[Exps, Scalar]:
        if not self.terms:
            raise ZeroDivisionError("leading term of zero")
        return self.terms[0]

    # -- ring operations -------------------------------------------------

    def _coerce(self, other) -> "ParamScalar":
        if isinstance(other, ParamScalar):
            if other.ring != self.ring:
                raise RingMismatch(f"mixed rings {self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.ring.field
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = f.add(acc.get(e, f.zero), c)
        return self.ring.from_terms(acc)

    __radd__ = __add__

    def __neg__(self) -> "ParamScalar":
        f = self.ring.field
        return ParamScalar(self.ring, tuple((e, f.neg(c)) for e, c in self.terms))

    def __sub__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ParamScalar":
        return (-self) + other

    def __mul__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.ring.field
        acc: dict[Exps, Scalar] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(x + y for x, y in zip(e1, e2))
                acc[e] = f.add(acc.get(e, f.zero), f.mul(c1, c2))
        return self.ring.from_terms(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ParamScalar":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def scale_int(self, n: int) -> "ParamScalar":
        """Multiply by the image of the integer n in the base field."""
        return self * self.ring.const(n)

    # -- division ---------------------------------------------------------

    def exact_div(self, divisor: "ParamScalar") -> "ParamScalar":
        """Divide by a polynomial known to divide self exactly.

        Leading-term elimination in graded-lex order; raises
        InexactDivision whenever the division would leave a remainder.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        f = self.ring.field
        if divisor.is_constant:
            inv = f.inv(divisor.constant_value())
            return ParamScalar(self.ring, tuple((e, f.mul(c, inv)) for e, c in self.terms))
        de, dc = divisor.leading()
        num = dict(self.terms)
        quo: dict[Exps, Scalar] = {}
        while num:
            le = max(num, key=grlex_key)
            lc = num[le]
            qe = tuple(a - b for a, b in zip(le, de))
            if any(x < 0 for x in qe):
                raise InexactDivision(f"{divisor} does not divide exactly")
            qc = f.div(lc, dc)
            quo[qe] = f.add(quo.get(qe, f.zero), qc)
            for e2, c2 in divisor.terms:
                e = tuple(a + b for a, b in zip(qe, e2))
                v = f.sub(num.get(e, f.zero), f.mul(qc, c2))
                if f.is_zero(v):
                    num.pop(e, None)
                else:
                    num[e] = v
        return self.ring.from_terms(quo)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, values: Mapping[str, Scalar]) -> Scalar:
        """Evaluate at field values; every occurring parameter must be set."""
        f = self.ring.field
        idx: list[tuple[int, Scalar]] = []
        for i, name in enumerate(self.ring.names):
            if name in values:
                idx.append((i, f.make(values[name])))
        assigned = {i for i, _ in idx}
        out = f.zero
        for e, c in self.terms:
            term = c
            for i, x in enumerate(e):
                if x == 0:
                    continue
                if i not in assigned:
                    raise UnknownVariable(f"no value for parameter {self.ring.names[i]!r}")
            for i, v in idx:
                if e[i]:
                    for _ in range(e[i]):
                        term = f.mul(term, v)
            out = f.add(out, term)
        return out

    # -- printing -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        pieces: list[str] = []
        for e, c in self.terms:
            mono = "*".join(
                f"{n}^{x}" if x > 1 else n
                for n, x in zip(self.ring.names, e)
                if x > 0
            )
            neg = (c < 0) if self.ring.field.p is None else False
            mag = field.to_str(-c if neg else c)
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)


def require_constant(values: Iterable[ParamScalar]) -> list[Scalar]:
    """Collapse parameter-free scalars to field elements, or raise."""
    out = []
    for v in values:
        if not v.is_constant:
            raise ParameterPresent(f"{v} carries parameters")
        out.append(v.constant_value())
    return out
