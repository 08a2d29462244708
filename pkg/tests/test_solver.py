import pytest

from trirep.algebra import LieAlgebra
from trirep.catalog import family_heisenberg, family_sn, load_catalog
from trirep.gaussian import GQ
from trirep.representation import Representation, verify_representation
from trirep.solver import (
    Infeasible, NotFound, ParametricLaw, Solution, build_ansatz, generate_constraints,
    infeasibility_certificate, lower_bound_k, naturalize, recheck_certificate,
    search_solution, solve_min_rep,
)
from trirep.scalars import scalar_param

LAW = LieAlgebra.from_brackets(3, [(1, 3, 2, 1)])


def test_end_to_end_small_example():
    assert lower_bound_k(LAW) == 2
    ans2 = build_ansatz(LAW, 2)
    cert = infeasibility_certificate(generate_constraints(LAW, ans2), ans2)
    assert isinstance(cert, Infeasible)
    for c in cert.certificate:
        assert recheck_certificate(c, replay=True)
    ans3 = build_ansatz(LAW, 3)
    found = search_solution(generate_constraints(LAW, ans3), ans3)
    assert isinstance(found, Solution)
    assert verify_representation(LAW, found.representation) == []
    point = Representation(3, ({(2, 3): GQ(-1)}, {(1, 3): GQ(1)}, {(1, 2): GQ(1)}))
    assert verify_representation(LAW, point) == []
    result = solve_min_rep(LAW)
    assert (result.k, result.status) == (3, "minimal-certified")


def test_ansatz_respects_derived_series():
    ans = build_ansatz(LAW, 3)
    # e2 spans the derived algebra, so it lives on the strictly upper part
    assert all(t.j > t.i for t in ans.supports[1])
    assert ans.search_order()[0].idx[0] == 2
    assert len(ans.describe()) == 3


def test_constraints_are_quadratic():
    for entry in load_catalog():
        if entry.law.is_parametric() or entry.dim > 5:
            continue
        ans = build_ansatz(entry.law, lower_bound_k(entry.law))
        assert generate_constraints(entry.law, ans).max_degree() <= 2


def test_lower_bound_is_sound_on_valid_reps():
    # any faithful representative bounds mu from above, so it bounds lower_bound_k too
    checked = 0
    for entry in load_catalog():
        if entry.law.is_parametric() or entry.rep.missing or entry.rep.dim != entry.dim:
            continue
        if verify_representation(entry.law, entry.rep):
            continue
        assert lower_bound_k(entry.law) <= entry.rep.k
        checked += 1
    for n in range(1, 5):
        A, R = family_heisenberg(n)
        assert lower_bound_k(A) <= R.k
    assert checked > 10


@pytest.mark.parametrize("n", [2, 3])
def test_sn_family_is_minimal(n):
    A, R = family_sn(n)
    result = solve_min_rep(A)
    assert result.k <= R.k
    assert verify_representation(A, result.outcome.representation) == []


def test_abelian_needs_diagonal_room():
    # a 2-dim abelian algebra cannot be faithful in h_1
    A = LieAlgebra.from_brackets(2, [])
    result = solve_min_rep(A)
    assert result.lower_bound == 2
    assert result.k == 2 and result.status == "minimal-certified"


def test_search_reports_not_found_when_infeasible():
    ans = build_ansatz(LAW, 2)
    got = search_solution(generate_constraints(LAW, ans), ans)
    assert isinstance(got, NotFound)


def test_naturalize_keeps_validity():
    R = Representation(3, ({(2, 3): GQ(-1), (1, 3): GQ(2)}, {(1, 3): GQ(1)}, {(1, 2): GQ(1)}))
    assert verify_representation(LAW, R) == []
    N = naturalize(LAW, R)
    assert verify_representation(LAW, N) == []
    assert sum(len(img) for img in N.images) <= sum(len(img) for img in R.images)


def test_parametric_law_rejected():
    a = scalar_param("a")
    A = LieAlgebra.from_brackets(2, [(1, 2, 2, a)], param_names=("a",))
    with pytest.raises(ParametricLaw):
        solve_min_rep(A)
