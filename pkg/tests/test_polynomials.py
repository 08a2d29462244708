import random

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st
from sympy.polys.domains import QQ_I

from trirep.gaussian import GQ
from trirep.polynomials import (
    INCONSISTENT, GroebnerCaps, Ideal, Polynomial, ResourceLimit, Var, divide_exact,
    groebner, is_trivial, linear_rref, reduce, saturate_nonzero, solve_linear_subsystem,
)

VARS = [Var(1, "x", (k,)) for k in range(3)]
SYMS = sp.symbols("x0:3")
COEFFS = [1, -1, 2, -2, 3, GQ(0, 1), GQ(0, -1), GQ(1, 1)]
MONOS = ([()] + [((v, 1),) for v in VARS] + [((v, 2),) for v in VARS]
         + [((VARS[a], 1), (VARS[b], 1)) for a in range(3) for b in range(a + 1, 3)])


def x(k):
    return Polynomial.var(VARS[k])


def to_sympy(p):
    out = 0
    for mono, c in p.terms.items():
        term = sp.Rational(str(c.re)) + sp.I * sp.Rational(str(c.im))
        for v, e in mono:
            term *= SYMS[v.idx[0]] ** e
        out += term
    return sp.expand(out)


def random_poly(rng, nterms=None):
    nterms = nterms or rng.randint(1, 4)
    return Polynomial({m: GQ(0) + rng.choice(COEFFS) for m in rng.sample(MONOS, nterms)})


def random_ideal(rng):
    return [random_poly(rng) for _ in range(rng.randint(1, 3))]


def spoly(f, g, order):
    (mf, cf), (mg, cg) = f.leading_term(order, VARS), g.leading_term(order, VARS)
    ef, eg = dict(mf), dict(mg)
    lcm = {v: max(ef.get(v, 0), eg.get(v, 0)) for v in set(ef) | set(eg)}

    def cofactor(e, c):
        mono = tuple(sorted((v, lcm[v] - e.get(v, 0)) for v in lcm if lcm[v] - e.get(v, 0)))
        return Polynomial({mono: c.inverse()})

    return cofactor(ef, cf) * f - cofactor(eg, cg) * g


def test_ring_arithmetic():
    p = (x(0) + x(1)) ** 2
    assert p == x(0) * x(0) + 2 * x(0) * x(1) + x(1) * x(1)
    assert p.degree() == 2
    assert (p - p).is_zero()
    assert p.subs({VARS[0]: GQ(1), VARS[1]: GQ(-1)}).is_zero()
    assert p.evaluate({VARS[0]: GQ(2), VARS[1]: GQ(0, 1)}) == GQ(3, 4)


def test_known_basis():
    # x^2 + 2xy^2, xy + 2y^3 - 1 -> {x, y^3 - 1/2} in lex with x > y
    X, Y = x(0), x(1)
    G = groebner([X * X + 2 * X * Y * Y, X * Y + 2 * Y ** 3 - 1], "lex", variables=VARS)
    assert G == [X, Y ** 3 - Polynomial.const(GQ(1) / 2)]


@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_randomized_suite_against_sympy(order):
    rng = random.Random(7)
    for _ in range(100):
        F = random_ideal(rng)
        G = groebner(F, order, variables=VARS)
        # S-polynomials of the basis reduce to zero
        for a in range(len(G)):
            for b in range(a + 1, len(G)):
                assert reduce(spoly(G[a], G[b], order), G, order, VARS).is_zero()
        # every generator lies in the ideal of the basis
        for f in F:
            assert reduce(f, G, order, VARS).is_zero()
        ref = sp.groebner([to_sympy(f) for f in F], *SYMS, order=order, domain=QQ_I)
        ref = {sp.expand(g / sp.Poly(g, *SYMS, domain=QQ_I).LC(order=order)) for g in ref.exprs}
        assert {to_sympy(g) for g in G} == ref


def test_reduce_idempotent():
    rng = random.Random(11)
    bases = [groebner(random_ideal(rng), "grevlex", variables=VARS) for _ in range(50)]
    for n in range(1000):
        G = bases[n % len(bases)]
        p = random_poly(rng) * random_poly(rng) + random_poly(rng)
        r = reduce(p, G, "grevlex", VARS)
        assert reduce(r, G, "grevlex", VARS) == r
        # p - r is in the ideal
        assert reduce(p - r, G, "grevlex", VARS).is_zero()


small_poly = st.lists(st.tuples(st.sampled_from(MONOS), st.sampled_from(COEFFS)),
                      min_size=1, max_size=4).map(
    lambda ts: Polynomial({m: GQ(0) + c for m, c in dict(ts).items()}))


@settings(max_examples=60, deadline=None)
@given(st.lists(small_poly, min_size=1, max_size=3))
def test_basis_is_reduced(F):
    G = groebner(F, "grevlex", variables=VARS)
    for k, g in enumerate(G):
        assert g.leading_term("grevlex", VARS)[1] == 1
        others = G[:k] + G[k + 1:]
        if others:
            assert reduce(g, others, "grevlex", VARS) == g


def test_saturation():
    X, Y = x(0), x(1)
    # xy = 0 with x != 0 forces y = 0, so y != 0 too is impossible
    assert is_trivial(saturate_nonzero(Ideal([X * Y]), X * Y))
    assert not is_trivial(saturate_nonzero(Ideal([X * Y]), X))
    assert is_trivial(saturate_nonzero(Ideal([X * X]), X))


def test_caps_raise():
    rng = random.Random(3)
    F = [random_poly(rng, 4) for _ in range(3)]
    with pytest.raises(ResourceLimit):
        groebner(F, "lex", GroebnerCaps(max_pairs=0))


def test_linear_helpers():
    a, b, c = VARS
    rows = [({a: GQ(1), b: GQ(1)}, GQ(-3)), ({b: GQ(1)}, GQ(-1))]
    rref = linear_rref(rows)
    assert rref[a] == ({}, GQ(-2)) and rref[b] == ({}, GQ(-1))
    assert linear_rref([({a: GQ(1)}, GQ(0)), ({a: GQ(1)}, GQ(1))]) is INCONSISTENT
    forced = solve_linear_subsystem([x(0) - 2, x(0) * x(1) - 4])
    assert forced == {a: GQ(2), b: GQ(2)}


def test_divide_exact():
    p = (x(0) + 1) * (x(1) - x(2))
    assert divide_exact(p, x(0) + 1) == x(1) - x(2)
    assert divide_exact(p, x(0)) is None
