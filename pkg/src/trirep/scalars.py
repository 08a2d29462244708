"""Scalars that may involve formal parameters.

A parametric scalar is a quotient of polynomials in parameter variables with
Gaussian rational coefficients.  Parameters are treated as algebraically
independent, except for radical parameters ``Z`` carrying a relation
``Z^2 = radicand``; numerators and denominators are reduced modulo those
relations and denominators are kept free of radical parameters.  Arithmetic
that cancels every parameter returns a plain :class:`GaussianRational`.
"""

from __future__ import annotations

from .gaussian import GQ, ONE, as_gq
from .polynomials import Polynomial, Var, divide_exact, param

__all__ = ["Scalar", "Relation", "scalar_param", "to_scalar", "is_zero", "subs_scalar"]


class Relation:
    """``var^2 = radicand`` with the radicand free of ``var``."""

    __slots__ = ("var", "radicand")

    def __init__(self, var: Var, radicand: Polynomial):
        if var in radicand.variables():
            raise ValueError(f"radicand of {var} must not involve {var}")
        self.var = var
        self.radicand = radicand

    def __eq__(self, other):
        return (isinstance(other, Relation) and self.var == other.var
                and self.radicand == other.radicand)

    def __hash__(self):
        return hash((self.var, self.radicand))

    def __repr__(self):
        return f"Relation({self.var}^2 = {self.radicand})"

    def reduce(self, p: Polynomial) -> Polynomial:
        if not any(v == self.var for m in p.terms for v, _ in m):
            return p
        out = Polynomial()
        for m, c in p.terms.items():
            rest, e = [], 0
            for v, k in m:
                if v == self.var:
                    e = k
                else:
                    rest.append((v, k))
            term = Polynomial({tuple(rest): c})
            if e % 2:
                term = term * Polynomial.var(self.var)
            if e >= 2:
                term = term * self.radicand ** (e // 2)
            out = out + term
        return out

    def conjugate(self, p: Polynomial) -> Polynomial:
        return p.subs({self.var: -Polynomial.var(self.var)})


def _merge_rels(a: tuple, b: tuple) -> tuple:
    if not b or a == b:
        return a
    if not a:
        return b
    merged = {r.var: r for r in a}
    for r in b:
        old = merged.get(r.var)
        if old is not None and old != r:
            raise ValueError(f"conflicting relations for {r.var}")
        merged[r.var] = r
    return tuple(merged[v] for v in sorted(merged))


def _strip_monomial_content(num: Polynomial, den: Polynomial):
    common = None
    for m in list(num.terms) + list(den.terms):
        exps = dict(m)
        if common is None:
            common = exps
        else:
            common = {v: min(e, exps[v]) for v, e in common.items() if v in exps}
        if not common:
            return num, den
    if not common:
        return num, den

    def strip(p):
        out = {}
        for m, c in p.terms.items():
            out[tuple((v, e - common.get(v, 0)) for v, e in m if e - common.get(v, 0))] = c
        return Polynomial(out)

    return strip(num), strip(den)


def _make(num: Polynomial, den: Polynomial, rels: tuple):
    if not den:
        raise ZeroDivisionError("parametric scalar with zero denominator")
    for r in rels:
        num = r.reduce(num)
        den = r.reduce(den)
    for r in rels:
        if any(v == r.var for v in den.variables()):
            conj = r.conjugate(den)
            num = r.reduce(num * conj)
            den = r.reduce(den * conj)
    if not num:
        return GQ(0)
    if den.is_constant():
        c = den.constant_coeff()
        if num.is_constant():
            return num.constant_coeff() / c
        return Scalar._raw(num * c.inverse(), Polynomial.const(1), rels)
    q = divide_exact(num, den)
    if q is not None:
        if q.is_constant():
            return q.constant_coeff()
        return Scalar._raw(q, Polynomial.const(1), rels)
    num, den = _strip_monomial_content(num, den)
    lc = den.leading_term()[1]
    if lc != 1:
        inv = lc.inverse()
        num, den = num * inv, den * inv
    return Scalar._raw(num, den, rels)


class Scalar:
    """Quotient ``num / den`` of parameter polynomials, modulo radical relations."""

    __slots__ = ("num", "den", "rels")

    @classmethod
    def _raw(cls, num, den, rels):
        s = cls.__new__(cls)
        s.num, s.den, s.rels = num, den, rels
        return s

    @staticmethod
    def make(num: Polynomial, den: Polynomial | None = None, rels=()):
        """Build a canonical scalar; returns a GaussianRational when constant."""
        rels = tuple(sorted(rels, key=lambda r: r.var))
        return _make(num, den if den is not None else Polynomial.const(1), rels)

    def _parts(self, other):
        if isinstance(other, Scalar):
            return other.num, other.den, _merge_rels(self.rels, other.rels)
        c = as_gq(other)
        if c is NotImplemented:
            return None
        return Polynomial.const(c), Polynomial.const(1), self.rels

    def __add__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        n2, d2, rels = parts
        if self.den == d2:
            return _make(self.num + n2, self.den, rels)
        return _make(self.num * d2 + n2 * self.den, self.den * d2, rels)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den, self.rels)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        n2, d2, rels = parts
        return _make(self.num * n2, self.den * d2, rels)

    __rmul__ = __mul__

    def __truediv__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        n2, d2, rels = parts
        if not n2:
            raise ZeroDivisionError("division by zero scalar")
        return _make(self.num * d2, self.den * n2, rels)

    def __rtruediv__(self, other):
        c = as_gq(other)
        if c is NotImplemented:
            return NotImplemented
        return _make(self.den * c, self.num, self.rels)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        return _make(self.num ** n, self.den ** n, self.rels)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        diff = self - other
        return not diff

    __hash__ = None

    def variables(self) -> list:
        return sorted(set(self.num.variables()) | set(self.den.variables()))

    def subs(self, values: dict):
        num = self.num.subs(values)
        den = self.den.subs(values)
        if not den:
            raise ZeroDivisionError("substitution annihilates a denominator")
        rels = []
        for r in self.rels:
            if r.var in values:
                continue
            rels.append(Relation(r.var, r.radicand.subs(values)))
        return _make(num, den, tuple(rels))

    def __str__(self):
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        if self.den == 1:
            return num[1:-1] if num.startswith("(") else num
        den = str(self.den)
        if len(self.den.terms) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({self})"


def scalar_param(name: str, rels=()):
    """The scalar consisting of a single formal parameter."""
    return Scalar._raw(Polynomial.var(param(name)), Polynomial.const(1), tuple(rels))


def to_scalar(x):
    """Coerce numbers to GaussianRational and pass scalars through."""
    if isinstance(x, (Scalar, GQ)):
        return x
    c = as_gq(x)
    if c is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a scalar")
    return c


def is_zero(x) -> bool:
    return not x


def subs_scalar(x, values: dict):
    if isinstance(x, Scalar):
        return x.subs(values)
    return x


ONE_SCALAR = ONE
