"""Finite-dimensional Lie algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .gaussian import GQ
from .scalars import Relation, Scalar, subs_scalar, to_scalar

__all__ = [
    "LieAlgebra", "Subspace", "NotSolvable", "DimensionMismatch",
    "bracket", "jacobi_check", "subspace_bracket", "derived_series",
    "derived_series_dims", "basis_vector", "echelonize",
]


class NotSolvable(Exception):
    """The derived series stabilised at a nonzero ideal."""


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebra:
    """Lie algebra with basis e_1..e_dim and brackets ``[e_i,e_j] = sum_k c^k_ij e_k``.

    ``constants`` maps ``(i, j)`` with ``i < j`` to ``{k: c}``; only nonzero
    entries are stored and ``[e_j,e_i] = -[e_i,e_j]`` is implicit.  Constants
    are Gaussian rationals or parametric :class:`Scalar` values.
    """

    dim: int
    constants: dict = field(default_factory=dict)
    param_names: tuple = ()
    param_constraints: tuple = ()
    relations: tuple = ()

    @classmethod
    def from_brackets(cls, dim: int, brackets, param_names=(), param_constraints=(),
                      relations=()) -> "LieAlgebra":
        """Build from ``{(i, j): {k: c}}`` or ``[(i, j, k, c), ...]``; ``i > j`` is flipped."""
        if dim < 1:
            raise ValueError("dimension must be positive")
        items = []
        if isinstance(brackets, dict):
            for (i, j), row in brackets.items():
                for k, c in row.items():
                    items.append((i, j, k, c))
        else:
            items = list(brackets)
        constants: dict = {}
        for i, j, k, c in items:
            for x in (i, j, k):
                if not 1 <= x <= dim:
                    raise ValueError(f"index {x} outside 1..{dim}")
            if i == j:
                raise ValueError(f"bracket [e_{i},e_{i}] must vanish")
            c = to_scalar(c)
            if i > j:
                i, j, c = j, i, -c
            row = constants.setdefault((i, j), {})
            row[k] = row.get(k, 0) + c
        cleaned = {}
        for key in sorted(constants):
            row = {k: v for k, v in sorted(constants[key].items()) if v}
            if row:
                cleaned[key] = row
        return cls(dim, cleaned, tuple(param_names), tuple(param_constraints),
                   tuple(relations))

    def structure_constant(self, i: int, j: int, k: int):
        if i == j:
            return GQ(0)
        if i < j:
            return self.constants.get((i, j), {}).get(k, GQ(0))
        return -self.constants.get((j, i), {}).get(k, GQ(0))

    def is_parametric(self) -> bool:
        return any(isinstance(c, Scalar) for row in self.constants.values()
                   for c in row.values())

    def is_abelian(self) -> bool:
        return not self.constants

    def substitute(self, values: dict) -> "LieAlgebra":
        """Replace parameters (``{Var: value}``) by concrete numbers."""
        consts = {key: {k: subs_scalar(c, values) for k, c in row.items()}
                  for key, row in self.constants.items()}
        names = tuple(n for n in self.param_names if not any(v.name == n for v in values))
        rels = tuple(Relation(r.var, r.radicand.subs(values)) for r in self.relations
                     if r.var not in values)
        return LieAlgebra.from_brackets(self.dim, consts, names, self.param_constraints, rels)

    def brackets(self):
        """Nonzero brackets as ``(i, j, {k: c})`` triples, i < j, sorted."""
        return [(i, j, dict(row)) for (i, j), row in self.constants.items()]

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        if self.dim != other.dim or self.param_names != other.param_names:
            return False
        keys = set(self.constants) | set(other.constants)
        for key in keys:
            a, b = self.constants.get(key, {}), other.constants.get(key, {})
            for k in set(a) | set(b):
                if a.get(k, 0) - b.get(k, 0):
                    return False
        return True

    __hash__ = None


def basis_vector(dim: int, h: int) -> tuple:
    return tuple(GQ(1) if k == h else GQ(0) for k in range(1, dim + 1))


def _check(A: LieAlgebra, *vecs):
    for v in vecs:
        if len(v) != A.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a {A.dim}-dimensional algebra")


def bracket(A: LieAlgebra, u, v) -> tuple:
    """Bilinear extension of the bracket to coordinate vectors."""
    _check(A, u, v)
    out = [GQ(0)] * A.dim
    for (i, j), row in A.constants.items():
        w = u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1]
        if not w:
            continue
        for k, c in row.items():
            out[k - 1] = out[k - 1] + w * c
    return tuple(out)


def jacobi_check(A: LieAlgebra) -> list:
    """Triples ``(i, j, k)`` where the Jacobiator of basis vectors is nonzero.

    An empty list means the Jacobi identity holds; with parameters the test is
    an identity of rational functions.
    """
    violations = []
    n = A.dim
    basis = [basis_vector(n, h) for h in range(1, n + 1)]
    for i, j, k in combinations(range(n), 3):
        x, y, z = basis[i], basis[j], basis[k]
        terms = (bracket(A, bracket(A, x, y), z), bracket(A, bracket(A, y, z), x),
                 bracket(A, bracket(A, z, x), y))
        total = [a + b + c for a, b, c in zip(*terms)]
        if any(total):
            violations.append((i + 1, j + 1, k + 1))
    return violations


@dataclass(frozen=True)
class Subspace:
    """Row space in reduced row echelon form; rows are coordinate tuples."""

    dim: int
    rows: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list:
        return [next(k for k, x in enumerate(r) if x) for r in self.rows]

    def contains(self, v) -> bool:
        return not any(_reduce_by(self.rows, self.pivots(), v))

    def is_zero(self) -> bool:
        return not self.rows

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls(dim, tuple(basis_vector(dim, h) for h in range(1, dim + 1)))

    @classmethod
    def span(cls, dim: int, vectors) -> "Subspace":
        return cls(dim, tuple(echelonize(vectors)))


def _reduce_by(rows, pivots, v):
    v = list(v)
    for r, p in zip(rows, pivots):
        c = v[p]
        if c:
            v = [a - c * b for a, b in zip(v, r)]
    return v


def echelonize(vectors) -> list:
    """Reduced row echelon basis of the span, pivots strictly increasing."""
    rows: list = []
    pivots: list = []
    for v in vectors:
        v = _reduce_by(rows, pivots, v)
        p = next((k for k, x in enumerate(v) if x), None)
        if p is None:
            continue
        inv = 1 / v[p]
        v = [x * inv for x in v]
        v[p] = GQ(1)
        # clear the new pivot column from earlier rows
        new_rows = []
        for r in rows:
            c = r[p]
            new_rows.append([a - c * b for a, b in zip(r, v)] if c else r)
        rows = new_rows + [v]
        pivots = pivots + [p]
    order = sorted(range(len(rows)), key=lambda t: pivots[t])
    return [tuple(rows[t]) for t in order]


def subspace_bracket(A: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """Span of all brackets of basis vectors of U with basis vectors of V."""
    if U.dim != A.dim or V.dim != A.dim:
        raise DimensionMismatch("subspace of a different algebra")
    products = [bracket(A, u, v) for u in U.rows for v in V.rows]
    return Subspace.span(A.dim, products)


def derived_series(A: LieAlgebra) -> list:
    """Ideals C_1 = g, C_{k+1} = [C_k, C_k], ending with the zero subspace."""
    series = [Subspace.full(A.dim)]
    while not series[-1].is_zero():
        nxt = subspace_bracket(A, series[-1], series[-1])
        if nxt.rank == series[-1].rank:
            raise NotSolvable(f"derived series stabilises at dimension {nxt.rank}")
        series.append(nxt)
    return series


def derived_series_dims(A: LieAlgebra) -> list:
    return [S.rank for S in derived_series(A)]
