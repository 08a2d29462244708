"""Multivariate polynomials over Q(i) and Buchberger Groebner bases.

Public polynomials are sparse maps from monomials to Gaussian rationals, where
a monomial is a sorted tuple of ``(Var, exponent)`` pairs.  The Groebner code
converts to dense exponent tuples over an explicit variable list (greatest
variable first) and orders them through integer keys, which are additive:
``key(a*b) == key(a) + key(b) - key(1)``.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from operator import add

from .gaussian import GQ, ONE, ZERO, as_gq

__all__ = [
    "Var", "lam", "aux", "param", "Polynomial", "Ideal", "GroebnerCaps",
    "ResourceLimit", "INCONSISTENT", "reduce", "groebner", "is_trivial",
    "saturate_nonzero", "solve_linear_subsystem", "ORDERS",
]

ORDERS = ("grevlex", "lex")


# ---------------------------------------------------------------------------
# variables and monomials


@dataclass(frozen=True, order=True)
class Var:
    """A polynomial variable.

    Variables sort by ``(rank, name, idx)`` and the smallest sorts first, which
    is also the greatest variable of the monomial order: auxiliary
    (Rabinowitsch) variables have rank 0, ansatz unknowns rank 1 and formal
    parameters rank 2.
    """

    rank: int
    name: str
    idx: tuple = ()

    def __str__(self):
        if not self.idx:
            return self.name
        if self.rank == 0:
            return f"{self.name}{self.idx[0]}"
        return f"{self.name}[{','.join(map(str, self.idx))}]"

    def __repr__(self):
        return f"Var({self})"


def lam(h: int, i: int, j: int) -> Var:
    """The ansatz unknown for the coefficient of X_{i,j} in the image of e_h."""
    return Var(1, "a", (h, i, j))


def aux(n: int) -> Var:
    return Var(0, "t", (n,))


def param(name: str) -> Var:
    return Var(2, name)


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_str(m: tuple) -> str:
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)


# ---------------------------------------------------------------------------
# sparse polynomials


class Polynomial:
    """Immutable sparse polynomial with Gaussian rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms:
            self.terms = {m: c for m, c in terms.items() if c}
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Polynomial":
        c = as_gq(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, v: Var) -> "Polynomial":
        return cls._raw({((v, 1),): ONE})

    # predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_coeff(self) -> GQ:
        return self.terms.get((), ZERO)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def variables(self) -> list:
        return sorted({v for m in self.terms for v, _ in m})

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if len(other.terms) > len(self.terms):
            self, other = other, self
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_gq(other)
            if c is NotImplemented:
                return c
            if not c:
                return Polynomial._raw({})
            return Polynomial._raw({m: v * c for m, v in self.terms.items()})
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = terms.get(m)
                terms[m] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial._raw({m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = Polynomial.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        return self * as_gq(c)

    # substitution ----------------------------------------------------------

    def subs(self, values: dict) -> "Polynomial":
        """Substitute variables by Gaussian rationals or polynomials."""
        if not values:
            return self
        out = Polynomial._raw({})
        cache: dict = {}
        for m, c in self.terms.items():
            rest = []
            factor = None
            for v, e in m:
                val = values.get(v)
                if val is None:
                    rest.append((v, e))
                    continue
                key = (v, e)
                pv = cache.get(key)
                if pv is None:
                    pv = val ** e if isinstance(val, Polynomial) else as_gq(val) ** e
                    cache[key] = pv
                factor = pv if factor is None else factor * pv
            term = Polynomial._raw({tuple(rest): c})
            out = out + (term if factor is None else term * factor)
        return out

    def evaluate(self, values: dict) -> GQ:
        total = ZERO
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t = t * as_gq(values[v]) ** e
            total = total + t
        return total

    def linear_form(self):
        """Return ``({var: coeff}, constant)`` if the degree is at most one, else None."""
        coeffs = {}
        for m, c in self.terms.items():
            if not m:
                continue
            if len(m) != 1 or m[0][1] != 1:
                return None
            coeffs[m[0][0]] = c
        return coeffs, self.constant_coeff()

    # ordering helpers --------------------------------------------------------

    def sorted_terms(self, order: str = "grevlex", variables=None) -> list:
        """Terms ``(monomial, coeff)`` sorted from the leading term down."""
        variables = variables or self.variables()
        ring = _Ring(variables, order)
        keyed = [(ring.key(ring.dense(m)), m, c) for m, c in self.terms.items()]
        keyed.sort(key=lambda t: t[0], reverse=True)
        return [(m, c) for _, m, c in keyed]

    def leading_term(self, order: str = "grevlex", variables=None):
        return self.sorted_terms(order, variables)[0]

    # comparison / display ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = _coerce(other)
            if other is NotImplemented:
                return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if not m:
                parts.append(f"({c})" if c.re and c.im else str(c))
            elif c == 1:
                parts.append(_mono_str(m))
            elif c == -1:
                parts.append("-" + _mono_str(m))
            elif c.re and c.im:
                parts.append(f"({c})*{_mono_str(m)}")
            else:
                parts.append(f"{c}*{_mono_str(m)}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self})"


def _coerce(x):
    c = as_gq(x)
    if c is NotImplemented:
        return c
    return Polynomial.const(c)


# ---------------------------------------------------------------------------
# dense representation used by the Groebner machinery

_BASE_BITS = 8
_BASE = 1 << _BASE_BITS
_FIELD_MAX = _BASE - 1


class _Ring:
    """Dense exponent tuples over a fixed variable list, greatest variable first."""

    def __init__(self, variables, order: str):
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.variables = list(variables)
        self.index = {v: k for k, v in enumerate(self.variables)}
        self.n = len(self.variables)
        self.order = order
        self.zero_exp = (0,) * self.n
        self.zero_key = self.key(self.zero_exp)

    def dense(self, mono: tuple) -> tuple:
        e = [0] * self.n
        for v, k in mono:
            e[self.index[v]] = k
        return tuple(e)

    def sparse(self, exp: tuple) -> tuple:
        return tuple((self.variables[k], e) for k, e in enumerate(exp) if e)

    def key(self, exp: tuple) -> int:
        if any(e > _FIELD_MAX for e in exp):
            raise ResourceLimit("exponent exceeds packed monomial range")
        if self.order == "lex":
            k = 0
            for e in exp:
                k = (k << _BASE_BITS) | e
            return k
        # graded reverse lexicographic: total degree, then smaller exponent of
        # the last variable wins
        k = sum(exp)
        for e in reversed(exp):
            k = (k << _BASE_BITS) | (_FIELD_MAX - e)
        return k

    def to_dense(self, p: Polynomial) -> list:
        terms = []
        for m, c in p.terms.items():
            e = self.dense(m)
            terms.append((self.key(e), e, c))
        terms.sort(key=lambda t: t[0], reverse=True)
        return terms

    def to_sparse(self, terms: list) -> Polynomial:
        return Polynomial._raw({self.sparse(e): c for _, e, c in terms})


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _mask(e: tuple) -> int:
    m = 0
    for k, x in enumerate(e):
        if x:
            m |= 1 << k
    return m


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x >= y else y for x, y in zip(a, b))


def _sub_multiple(p: list, c: GQ, shift_exp: tuple, shift_key: int, g: list) -> list:
    """Return ``p - c * x^shift * g``; all term lists sorted by descending key."""
    out = []
    i = 0
    lp = len(p)
    for gk, ge, gc in g:
        k = gk + shift_key
        while i < lp and p[i][0] > k:
            out.append(p[i])
            i += 1
        coeff = -(c * gc)
        if i < lp and p[i][0] == k:
            s = p[i][2] + coeff
            if s:
                out.append((k, p[i][1], s))
            i += 1
        else:
            out.append((k, tuple(map(add, ge, shift_exp)), coeff))
    out.extend(p[i:])
    return out


def _monic(p: list) -> list:
    lc = p[0][2]
    if lc == 1:
        return p
    inv = lc.inverse()
    return [(k, e, c * inv) for k, e, c in p]


class ResourceLimit(Exception):
    """A Groebner computation exceeded its caps; the outcome is unknown."""


@dataclass(frozen=True)
class GroebnerCaps:
    """Resource caps; exceeding any of them raises ResourceLimit."""

    max_pairs: int = 200_000
    max_degree: int = 12
    deadline: float | None = None  # time.monotonic() value
    max_reductions: int | None = None


DEFAULT_CAPS = GroebnerCaps()


class _Basis:
    """Polynomials of a basis under construction, with cached leading data."""

    def __init__(self, ring: _Ring):
        self.ring = ring
        self.polys: list = []
        self.lead: list = []
        self.masks: list = []

    def append(self, p: list) -> int:
        self.polys.append(p)
        self.lead.append(p[0][1])
        self.masks.append(_mask(p[0][1]))
        return len(self.polys) - 1


def _normal_form(p: list, basis: _Basis, active, ring: _Ring, counter=None) -> list:
    """Fully reduce ``p`` against the basis members listed in ``active``."""
    rem = []
    polys, lead, masks = basis.polys, basis.lead, basis.masks
    while p:
        k, e, c = p[0]
        em = _mask(e)
        for idx in active:
            le = lead[idx]
            if masks[idx] & ~em:
                continue
            if _divides(le, e):
                g = polys[idx]
                shift = tuple(x - y for x, y in zip(e, le))
                p = _sub_multiple(p, c / g[0][2], shift, k - g[0][0], g)
                if counter is not None:
                    counter.tick()
                break
        else:
            rem.append(p[0])
            p = p[1:]
    return rem


class _Counter:
    def __init__(self, caps: GroebnerCaps):
        self.caps = caps
        self.count = 0

    def tick(self):
        self.count += 1
        caps = self.caps
        if caps.max_reductions is not None and self.count > caps.max_reductions:
            raise ResourceLimit("reduction step cap exceeded")
        if caps.deadline is not None and self.count % 256 == 0:
            if time.monotonic() > caps.deadline:
                raise ResourceLimit("deadline exceeded")


def _spoly(f: list, g: list, ring: _Ring) -> list:
    lf, lg = f[0][1], g[0][1]
    m = _lcm(lf, lg)
    sf = tuple(x - y for x, y in zip(m, lf))
    sg = tuple(x - y for x, y in zip(m, lg))
    zk = ring.zero_key
    kf = ring.key(sf) - zk
    kg = ring.key(sg) - zk
    # f, g are monic: x^sf f - x^sg g
    scaled = [(k + kf, tuple(map(add, e, sf)), c) for k, e, c in f]
    return _sub_multiple(scaled, ONE, sg, kg, g)


def _buchberger(gens: list, ring: _Ring, caps: GroebnerCaps) -> list:
    """Reduced monic Groebner basis of dense polynomials (normal strategy, GM criteria)."""
    basis = _Basis(ring)
    active: list = []
    pairs: list = []
    counter = _Counter(caps)

    def update(ih):
        nonlocal active, pairs
        mh = basis.lead[ih]
        # new pairs (g, h), filtered by the chain and product criteria
        cands = list(active)
        lcms = {ig: _lcm(mh, basis.lead[ig]) for ig in cands}
        kept = []
        for pos, ig in enumerate(cands):
            l_hg = lcms[ig]
            coprime = all(not (x and y) for x, y in zip(mh, basis.lead[ig]))
            if coprime:
                kept.append(ig)
                continue
            dominated = False
            for other in cands[pos + 1:]:
                if _divides(lcms[other], l_hg):
                    dominated = True
                    break
            if not dominated:
                for other in kept:
                    if _divides(lcms[other], l_hg):
                        dominated = True
                        break
            if not dominated:
                kept.append(ig)
        new_pairs = []
        for ig in kept:
            if any(x and y for x, y in zip(mh, basis.lead[ig])):
                new_pairs.append((ring.key(lcms[ig]), ig, ih, lcms[ig]))
        # old pairs that become redundant through h
        survivors = []
        for item in pairs:
            _, a, b, l_ab = item
            if (not _divides(mh, l_ab)
                    or _lcm(basis.lead[a], mh) == l_ab
                    or _lcm(basis.lead[b], mh) == l_ab):
                survivors.append(item)
        if len(survivors) == len(pairs):
            for item in new_pairs:
                heapq.heappush(pairs, item)
        else:
            pairs = survivors + new_pairs
            heapq.heapify(pairs)
        if len(pairs) > caps.max_pairs:
            raise ResourceLimit("pair queue cap exceeded")
        active = [ig for ig in active if not _divides(mh, basis.lead[ig])]
        active.append(ih)

    def add_poly(p) -> bool:
        p = _monic(p)
        if p[0][0] == ring.zero_key:
            return True
        if sum(p[0][1]) > caps.max_degree:
            raise ResourceLimit("degree cap exceeded")
        update(basis.append(p))
        return False

    for g in gens:
        h = _normal_form(g, basis, active, ring, counter)
        if h and add_poly(h):
            return [[(ring.zero_key, ring.zero_exp, ONE)]]

    while pairs:
        # normal selection strategy; ties broken by pair creation indices
        _, i, j, _ = heapq.heappop(pairs)
        s = _spoly(basis.polys[i], basis.polys[j], ring)
        h = _normal_form(s, basis, active, ring, counter)
        if h and add_poly(h):
            return [[(ring.zero_key, ring.zero_exp, ONE)]]

    # interreduce tails of the (already minimal) active set
    result = []
    for ig in active:
        others = [o for o in active if o != ig]
        g = basis.polys[ig]
        tail = _normal_form(g[1:], basis, others, ring, counter)
        result.append([g[0]] + tail)
    result.sort(key=lambda p: p[0][0], reverse=True)
    return result


# ---------------------------------------------------------------------------
# public Groebner API


def _ring_for(polys, order: str, variables=None) -> _Ring:
    if variables is None:
        vs = set()
        for p in polys:
            for m in p.terms:
                for v, _ in m:
                    vs.add(v)
        variables = sorted(vs)
    return _Ring(variables, order)


def reduce(p: Polynomial, G, order: str = "grevlex", variables=None) -> Polynomial:
    """Normal form of ``p`` modulo ``G``; divisors are tried in listing order."""
    G = [g for g in G if g]
    if not G:
        return p
    ring = _ring_for([p, *G], order, variables)
    basis = _Basis(ring)
    for g in G:
        basis.append(ring.to_dense(g))
    rem = _normal_form(ring.to_dense(p), basis, range(len(G)), ring)
    return ring.to_sparse(rem)


def groebner(generators, order: str = "grevlex", caps: GroebnerCaps = DEFAULT_CAPS,
             variables=None) -> list:
    """Reduced Groebner basis (monic, sorted by leading monomial, largest first).

    Raises ResourceLimit when a cap is hit; a partial result is never returned.
    """
    gens = [g for g in generators if g]
    if not gens:
        return []
    ring = _ring_for(gens, order, variables)
    dense = _buchberger([ring.to_dense(g) for g in gens], ring, caps)
    return [ring.to_sparse(p) for p in dense]


class Ideal:
    """Polynomial ideal given by generators, caching bases per monomial order."""

    def __init__(self, generators):
        self.generators = tuple(generators)
        self._cache: dict = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators))})"

    def groebner(self, order: str = "grevlex", caps: GroebnerCaps = DEFAULT_CAPS) -> list:
        if order not in self._cache:
            self._cache[order] = groebner(self.generators, order, caps)
        return self._cache[order]

    def variables(self) -> list:
        return sorted({v for g in self.generators for v in g.variables()})


def is_trivial(ideal, caps: GroebnerCaps = DEFAULT_CAPS, order: str = "grevlex"):
    """True if 1 is in the ideal, False if not, None when the caps were hit."""
    if not isinstance(ideal, Ideal):
        ideal = Ideal(ideal)
    try:
        gb = ideal.groebner(order, caps)
    except ResourceLimit:
        return None
    return len(gb) == 1 and gb[0].is_constant()


def _fresh_aux(polys) -> Var:
    used = [v.idx[0] for p in polys for v in p.variables() if v.rank == 0]
    return aux(max(used, default=0) + 1)


def saturate_nonzero(ideal, p: Polynomial) -> Ideal:
    """Rabinowitsch trick: adjoin ``t*p - 1`` for a fresh, greatest variable t."""
    if not p:
        raise ValueError("cannot saturate by the zero polynomial")
    gens = list(ideal.generators if isinstance(ideal, Ideal) else ideal)
    t = _fresh_aux(gens + [p])
    return Ideal(gens + [Polynomial.var(t) * p - 1])


# ---------------------------------------------------------------------------
# linear propagation


class _Inconsistent:
    __slots__ = ()

    def __repr__(self):
        return "INCONSISTENT"

    def __bool__(self):
        return False


INCONSISTENT = _Inconsistent()


def linear_rref(rows):
    """Reduced row echelon form of affine equations ``sum c_v v + c0 = 0``.

    ``rows`` holds ``(coeffs, const)`` pairs.  Returns ``{pivot: (coeffs, const)}``
    meaning ``pivot = -(sum coeffs[v] v) - const`` over free variables only, or
    INCONSISTENT.
    """
    pivots: dict = {}
    for coeffs, const in rows:
        coeffs = dict(coeffs)
        # eliminate existing pivots
        for pv in [v for v in coeffs if v in pivots]:
            c = coeffs.pop(pv)
            pc, pk = pivots[pv]
            for v, x in pc.items():
                s = coeffs.get(v, ZERO) - c * x
                if s:
                    coeffs[v] = s
                else:
                    coeffs.pop(v, None)
            const = const - c * pk
        coeffs = {v: c for v, c in coeffs.items() if c}
        if not coeffs:
            if const:
                return INCONSISTENT
            continue
        pv = min(coeffs)
        inv = coeffs.pop(pv).inverse()
        coeffs = {v: c * inv for v, c in coeffs.items()}
        const = const * inv
        # back-substitute into existing pivot rows
        for qv, (qc, qk) in list(pivots.items()):
            c = qc.get(pv)
            if c is None:
                continue
            qc = dict(qc)
            del qc[pv]
            for v, x in coeffs.items():
                s = qc.get(v, ZERO) - c * x
                if s:
                    qc[v] = s
                else:
                    qc.pop(v, None)
            pivots[qv] = (qc, qk - c * const)
        pivots[pv] = (coeffs, const)
    return pivots


def solve_linear_subsystem(eqs, assigned=None):
    """Propagate forced values through the equations that are linear.

    Repeatedly substitutes the known values, solves the degree <= 1 equations
    exactly and records every variable whose value is uniquely determined.
    Returns the new assignments (not including ``assigned``) or INCONSISTENT.
    """
    known = dict(assigned or {})
    forced: dict = {}
    current = [p.subs(known) if known else p for p in eqs]
    while True:
        rows = []
        for p in current:
            lf = p.linear_form()
            if lf is not None:
                rows.append(lf)
        rref = linear_rref(rows)
        if rref is INCONSISTENT:
            return INCONSISTENT
        new = {v: -k for v, (c, k) in rref.items() if not c}
        if not new:
            return forced
        forced.update(new)
        current = [q for q in (p.subs(new) for p in current) if q]


def divide_exact(p: Polynomial, d: Polynomial):
    """Quotient ``p / d`` when ``d`` divides ``p`` exactly, else None."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return p
    ring = _ring_for([p, d], "grevlex")
    num = ring.to_dense(p)
    den = ring.to_dense(d)
    lk, le, lc = den[0]
    inv = lc.inverse()
    quotient = []
    while num:
        k, e, c = num[0]
        if not _divides(le, e):
            return None
        shift = tuple(x - y for x, y in zip(e, le))
        q = c * inv
        quotient.append((k - lk + ring.zero_key, shift, q))
        num = _sub_multiple(num, q, shift, k - lk, den)
    return ring.to_sparse(quotient)
