"""The Lie algebra h_n of n x n upper-triangular matrices.

Basis vectors X_{i,j} (1 <= i <= j <= n) are numbered row by row:
X_{1,1}, ..., X_{1,n}, X_{2,2}, ..., X_{n,n}.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .algebra import LieAlgebra
from .gaussian import GQ

__all__ = [
    "TriIndex", "tri_dim", "tri_indices", "flat_index", "tri_index",
    "law_h", "derived_series_dims_h", "derived_ideal_basis_h", "depth_gap",
    "realize_matrix", "tri_bracket", "matrix_commutator",
]


class TriIndex(NamedTuple):
    i: int
    j: int

    def __str__(self):
        return f"X{self.i}{self.j}" if max(self) < 10 else f"X{self.i},{self.j}"


def tri_dim(n: int) -> int:
    return n * (n + 1) // 2


@lru_cache(maxsize=None)
def tri_indices(n: int) -> tuple:
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    return tuple(TriIndex(i, j) for i in range(1, n + 1) for j in range(i, n + 1))


@lru_cache(maxsize=None)
def _flat_map(n: int) -> dict:
    return {t: k for k, t in enumerate(tri_indices(n), start=1)}


def flat_index(n: int, t) -> int:
    """1-based position of X_{i,j} in the row-major basis of h_n."""
    try:
        return _flat_map(n)[TriIndex(*t)]
    except KeyError:
        raise ValueError(f"X_{t} is not a basis vector of h_{n}") from None


def tri_index(n: int, k: int) -> TriIndex:
    return tri_indices(n)[k - 1]


def tri_bracket(u: dict, v: dict) -> dict:
    """Commutator of sparse upper-triangular matrices ``{TriIndex: scalar}``.

    Uses ``X_{ij} X_{kl} = delta_{jk} X_{il}``.
    """
    out: dict = {}
    by_row: dict = {}
    for (k, l), c in v.items():
        by_row.setdefault(k, []).append((l, c))
    for (i, j), a in u.items():
        for l, b in by_row.get(j, ()):
            key = TriIndex(i, l)
            out[key] = out.get(key, 0) + a * b
    by_row = {}
    for (k, l), c in u.items():
        by_row.setdefault(k, []).append((l, c))
    for (i, j), a in v.items():
        for l, b in by_row.get(j, ()):
            key = TriIndex(i, l)
            out[key] = out.get(key, 0) - a * b
    return {t: c for t, c in sorted(out.items()) if c}


@lru_cache(maxsize=None)
def law_h(n: int) -> LieAlgebra:
    """Structure constants of h_n on the flat basis x_1..x_{n(n+1)/2}."""
    idx = tri_indices(n)
    fl = _flat_map(n)
    brackets = []
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            prod = tri_bracket({idx[a]: GQ(1)}, {idx[b]: GQ(1)})
            for t, c in prod.items():
                brackets.append((a + 1, b + 1, fl[t], c))
    return LieAlgebra.from_brackets(tri_dim(n), brackets)


def depth_gap(m: int) -> int:
    """Minimal ``j - i`` of the basis vectors spanning the m-th derived ideal of h_n."""
    if m < 1:
        raise ValueError("series index starts at 1")
    return 0 if m == 1 else 2 ** (m - 2)


def derived_series_dims_h(n: int) -> list:
    """Dimensions of the derived series of h_n, ending with a single 0."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    dims = [tri_dim(n)]
    m = 2
    while dims[-1]:
        r = max(n - depth_gap(m), 0)
        dims.append(tri_dim(r))
        m += 1
    return dims


def derived_ideal_basis_h(n: int, m: int) -> list:
    """Basis X_{i,j} of the m-th derived ideal of h_n, in flat order."""
    gap = depth_gap(m)
    return [t for t in tri_indices(n) if t.j - t.i >= gap]


def realize_matrix(n: int, v: dict) -> list:
    """Dense n x n matrix with entry (i, j) equal to the X_{i,j} coordinate."""
    mat = [[GQ(0)] * n for _ in range(n)]
    for t, c in v.items():
        i, j = t
        if not 1 <= i <= j <= n:
            raise ValueError(f"X_{i},{j} is not a basis vector of h_{n}")
        mat[i - 1][j - 1] = c
    return mat


def matrix_commutator(a: list, b: list) -> list:
    n = len(a)

    def mul(x, y):
        return [[sum((x[i][k] * y[k][j] for k in range(n)), GQ(0)) for j in range(n)]
                for i in range(n)]

    ab, ba = mul(a, b), mul(b, a)
    return [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]
