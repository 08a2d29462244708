import random

import pytest
import sympy as sp

from trirep.algebra import Subspace, basis_vector, bracket, derived_series, derived_series_dims, jacobi_check
from trirep.gaussian import GQ
from trirep.triangular import (
    TriIndex, derived_ideal_basis_h, derived_series_dims_h, flat_index, law_h,
    matrix_commutator, realize_matrix, tri_bracket, tri_dim, tri_index, tri_indices,
)


def test_indexing():
    assert tri_indices(2) == ((1, 1), (1, 2), (2, 2))
    for n in range(1, 7):
        for k in range(1, tri_dim(n) + 1):
            assert flat_index(n, tri_index(n, k)) == k
    with pytest.raises(ValueError):
        flat_index(2, (2, 1))


@pytest.mark.parametrize("n", range(1, 21))
def test_dimension(n):
    assert law_h(n).dim == n * (n + 1) // 2


@pytest.mark.parametrize("n", range(1, 7))
def test_derived_series_closed_form(n):
    assert derived_series_dims(law_h(n)) == derived_series_dims_h(n)


def test_derived_series_small_values():
    assert derived_series_dims_h(1) == [1, 0]
    assert derived_series_dims_h(2) == [3, 1, 0]
    assert derived_series_dims_h(4) == [10, 6, 3, 0]
    assert derived_series_dims_h(6) == [21, 15, 10, 3, 0]


@pytest.mark.parametrize("n", range(1, 20))
def test_closed_form_series_is_decreasing(n):
    dims = derived_series_dims_h(n)
    assert dims[0] == tri_dim(n) and dims[-1] == 0
    assert all(a > b for a, b in zip(dims, dims[1:]))


def test_derived_ideal_basis_matches_sympy_span():
    for n in range(2, 5):
        idx = tri_indices(n)
        current = [sp.Matrix(n, n, lambda i, j: 1 if (i + 1, j + 1) == t else 0) for t in idx]
        for m in range(2, 5):
            brackets = [a * b - b * a for a in current for b in current]
            M = sp.Matrix([list(x) for x in brackets]) if brackets else sp.zeros(0, n * n)
            basis = derived_ideal_basis_h(n, m)
            assert M.rank() == len(basis)
            current = [sp.Matrix(n, n, lambda i, j: 1 if (i + 1, j + 1) == t else 0) for t in basis]


@pytest.mark.parametrize("n", range(1, 7))
def test_derived_ideal_basis_equals_series_terms(n):
    A = law_h(n)
    series = derived_series(A)
    for m in range(1, len(series) + 2):
        basis = [basis_vector(A.dim, flat_index(n, t)) for t in derived_ideal_basis_h(n, m)]
        expected = series[m - 1] if m <= len(series) else Subspace(A.dim)
        assert Subspace.span(A.dim, basis) == expected


@pytest.mark.parametrize("n", range(1, 7))
def test_law_is_lie(n):
    assert jacobi_check(law_h(n)) == []


def test_flat_law_matches_matrix_commutator():
    rng = random.Random(11)
    vals = [GQ(0), GQ(1), GQ(-1), GQ(0, 1), GQ(2, 1)]
    for _ in range(100):
        n = rng.randint(1, 5)
        A = law_h(n)
        u = [rng.choice(vals) for _ in range(A.dim)]
        v = [rng.choice(vals) for _ in range(A.dim)]
        as_map = lambda w: {tri_index(n, k + 1): x for k, x in enumerate(w) if x}
        dense = matrix_commutator(realize_matrix(n, as_map(u)), realize_matrix(n, as_map(v)))
        assert realize_matrix(n, as_map(bracket(A, u, v))) == dense


def test_commutator_against_dense_matrices():
    rng = random.Random(5)
    vals = [GQ(0), GQ(1), GQ(-2), GQ(0, 1), GQ(1, -1)]
    for _ in range(200):
        n = rng.randint(1, 5)
        u = {t: rng.choice(vals) for t in tri_indices(n) if rng.random() < 0.5}
        v = {t: rng.choice(vals) for t in tri_indices(n) if rng.random() < 0.5}
        dense = matrix_commutator(realize_matrix(n, u), realize_matrix(n, v))
        assert realize_matrix(n, tri_bracket(u, v)) == dense


def test_basis_bracket():
    assert tri_bracket({TriIndex(1, 2): 1}, {TriIndex(2, 3): 1}) == {TriIndex(1, 3): 1}
    assert tri_bracket({TriIndex(1, 1): 1}, {TriIndex(1, 2): 1}) == {TriIndex(1, 2): 1}
    assert tri_bracket({TriIndex(1, 2): 1}, {TriIndex(1, 2): 1}) == {}
