"""Minimal faithful embeddings of solvable Lie algebras into h_k.

The pipeline: a structural lower bound from derived series, an ansatz whose
supports respect derived-series depth, the quadratic constraint system,
per-minor Groebner certificates of infeasibility, and a backtracking search
over a small ladder of exact candidate values with linear propagation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from .algebra import LieAlgebra, derived_series, echelonize
from .gaussian import GQ, ONE, ZERO, I
from .polynomials import (
    INCONSISTENT, GroebnerCaps, Ideal, Polynomial, ResourceLimit, groebner, lam,
    linear_rref, reduce, saturate_nonzero,
)
from .representation import Representation, verify_representation
from .triangular import (
    derived_ideal_basis_h, derived_series_dims_h, flat_index, tri_bracket, tri_dim,
    tri_indices,
)

__all__ = [
    "ParametricLaw", "Ansatz", "ConstraintSystem", "MinorCertificate", "Solution",
    "Infeasible", "SolutionsMayExist", "Inconclusive", "NotFound", "MinRepResult",
    "LADDER", "LADDER_STAGES", "lower_bound_k", "build_ansatz", "generate_constraints",
    "search_solution", "infeasibility_certificate", "solve_min_rep",
    "recheck_certificate", "naturalize",
]

LADDER = (ZERO, ONE, -ONE, I, -I, GQ(2), GQ(1, 1) / 2, GQ(-2), GQ(-1) / 2)
# successively wider ladders; most natural representatives only need 0 and +-1
LADDER_STAGES = (LADDER[:3], LADDER[:5], LADDER)


class ParametricLaw(ValueError):
    """The solver needs concrete values for every structure constant."""


# ---------------------------------------------------------------------------
# step 1: lower bound


def lower_bound_k(A: LieAlgebra) -> int:
    """First k whose h_k derived series dominates that of A termwise."""
    dims = [S.rank for S in derived_series(A)]
    d = len(dims)
    k = d - 1 if d <= 4 else d
    k = max(k, 1)
    while True:
        hd = derived_series_dims_h(k)
        width = max(len(dims), len(hd))
        a = dims + [0] * (width - len(dims))
        b = hd + [0] * (width - len(hd))
        if all(x <= y for x, y in zip(a, b)):
            return k
        k += 1


# ---------------------------------------------------------------------------
# step 2: ansatz


@dataclass(frozen=True)
class Ansatz:
    """Unknown images e_h = sum lambda^h_{i,j} X_{i,j} over depth-restricted supports."""

    algebra: LieAlgebra
    k: int
    depths: tuple      # depths[h-1] = largest m with e_h in C_m(A)
    supports: tuple    # supports[h-1] = TriIndex slots allowed for e_h

    def variables_of(self, h: int) -> list:
        return [lam(h, t.i, t.j) for t in self.supports[h - 1]]

    def variables(self) -> list:
        return [v for h in range(1, self.algebra.dim + 1) for v in self.variables_of(h)]

    @property
    def n_vars(self) -> int:
        return sum(len(s) for s in self.supports)

    def image(self, h: int) -> dict:
        return {t: Polynomial.var(lam(h, t.i, t.j)) for t in self.supports[h - 1]}

    def search_order(self) -> list:
        """Vectors deepest in the derived series first, then by h and flat slot."""
        hs = sorted(range(1, self.algebra.dim + 1),
                    key=lambda h: (-self.depths[h - 1], h))
        return [v for h in hs for v in self.variables_of(h)]

    def describe(self) -> list:
        """Lines ``e_h = a[h,p]*x_p + ...`` in the flat numbering of h_k."""
        lines = []
        for h in range(1, self.algebra.dim + 1):
            terms = [f"a[{h},{flat_index(self.k, t)}]*x{flat_index(self.k, t)}"
                     for t in self.supports[h - 1]]
            lines.append(f"e{h} = " + (" + ".join(terms) if terms else "0"))
        return lines


def build_ansatz(A: LieAlgebra, k: int) -> Ansatz:
    series = derived_series(A)
    hd = derived_series_dims_h(k)
    if len(series) > len(hd) or any(s.rank > d for s, d in zip(series, hd)):
        raise ValueError(f"derived series of the algebra does not fit in h_{k}")
    depths = []
    supports = []
    for h in range(1, A.dim + 1):
        e = tuple(GQ(1) if x == h else GQ(0) for x in range(1, A.dim + 1))
        m = max(idx for idx, S in enumerate(series, start=1) if S.contains(e))
        depths.append(m)
        supports.append(tuple(derived_ideal_basis_h(k, m)))
    return Ansatz(A, k, tuple(depths), tuple(supports))


# ---------------------------------------------------------------------------
# step 3: constraints


@dataclass(frozen=True)
class ConstraintSystem:
    """Polynomial equations (each must vanish) and per-vector nondegeneracy.

    ``nondegeneracy[h-1]`` lists the unknowns of e_h; at least one must be
    nonzero.  ``groups`` keeps, per pair i<j, the coefficient of each slot of
    ``[E_i,E_j] - sum_h c^h_ij E_h``.
    """

    equations: tuple
    nondegeneracy: tuple
    groups: tuple = field(default=(), compare=False)

    def max_degree(self) -> int:
        return max((p.degree() for p in self.equations), default=-1)


def generate_constraints(A: LieAlgebra, ans: Ansatz) -> ConstraintSystem:
    if A.is_parametric():
        raise ParametricLaw("substitute concrete parameter values before solving")
    images = [ans.image(h) for h in range(1, A.dim + 1)]
    equations = []
    groups = []
    for i in range(1, A.dim + 1):
        for j in range(i + 1, A.dim + 1):
            coeffs = dict(tri_bracket(images[i - 1], images[j - 1]))
            for h, c in A.constants.get((i, j), {}).items():
                for t, p in images[h - 1].items():
                    coeffs[t] = coeffs.get(t, Polynomial()) - p * c
            coeffs = {t: p for t, p in sorted(coeffs.items()) if p}
            groups.append((i, j, coeffs))
            equations.extend(coeffs.values())
    nondeg = tuple(tuple(ans.variables_of(h)) for h in range(1, A.dim + 1))
    return ConstraintSystem(tuple(equations), nondeg, tuple(groups))


# ---------------------------------------------------------------------------
# outcomes


@dataclass(frozen=True)
class MinorCertificate:
    """The equations saturated by one maximal minor generate the unit ideal."""

    rows: tuple          # TriIndex slots selecting the minor
    minor: Polynomial
    generators: tuple    # equations + [t * minor - 1]
    basis: tuple         # reduced Groebner basis, (1,) when infeasible


@dataclass(frozen=True)
class Solution:
    representation: Representation
    nodes: int = 0


@dataclass(frozen=True)
class Infeasible:
    certificate: tuple   # MinorCertificate per structurally nonzero minor
    reason: str = ""


@dataclass(frozen=True)
class SolutionsMayExist:
    rows: tuple          # the minor whose saturation is consistent
    basis: tuple


@dataclass(frozen=True)
class Inconclusive:
    reason: str


@dataclass(frozen=True)
class NotFound:
    nodes: int


# ---------------------------------------------------------------------------
# step 4a: infeasibility certificates


def _perfect_matching(rows, supports) -> bool:
    """Whether the rows can be matched to distinct columns (vectors) they support."""
    n = len(supports)
    match_col: dict = {}

    def augment(r, seen):
        for c in range(n):
            if rows[r] in supports[c] and c not in seen:
                seen.add(c)
                if c not in match_col or augment(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    return all(augment(r, set()) for r in range(len(rows)))


def _determinant(matrix) -> Polynomial:
    """Laplace expansion along the first row, memoised on the remaining columns."""
    n = len(matrix)
    memo: dict = {}

    def det(row, cols):
        if row == n:
            return Polynomial.const(1)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = Polynomial()
        sign = 1
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if entry:
                sub = det(row + 1, cols[:pos] + cols[pos + 1:])
                if sub:
                    term = entry * sub
                    total = total + (term if sign > 0 else -term)
            sign = -sign
        memo[key] = total
        return total

    return det(0, tuple(range(n)))


def independence_minors(ans: Ansatz):
    """Yield ``(rows, minor)`` for each structurally nonzero maximal minor."""
    n = ans.algebra.dim
    slots = [t for t in tri_indices(ans.k) if any(t in s for s in ans.supports)]
    supports = [set(s) for s in ans.supports]
    for rows in combinations(slots, n):
        if not _perfect_matching(rows, supports):
            continue
        matrix = [[Polynomial.var(lam(h, t.i, t.j)) if t in supports[h - 1] else Polynomial()
                   for h in range(1, n + 1)] for t in rows]
        yield rows, _determinant(matrix)


def _saturate_one(equations, rows, minor, caps):
    ideal = saturate_nonzero(Ideal(equations), minor)
    try:
        gb = tuple(groebner(ideal.generators, "grevlex", caps))
    except ResourceLimit as exc:
        return rows, minor, ideal.generators, None, str(exc)
    return rows, minor, ideal.generators, gb, ""


def infeasibility_certificate(cs: ConstraintSystem, ans: Ansatz,
                              caps: GroebnerCaps = GroebnerCaps(), jobs: int = 1):
    """Decide whether independent images can satisfy the equations.

    Returns Infeasible with one certificate per nonzero maximal minor,
    SolutionsMayExist at the first minor whose saturation is consistent, or
    Inconclusive when a Groebner computation hit its caps.
    """
    n = ans.algebra.dim
    if n > tri_dim(ans.k):
        return Infeasible((), reason=f"dim {n} exceeds dim h_{ans.k} = {tri_dim(ans.k)}")
    equations = list(cs.equations)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        minors = list(independence_minors(ans))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_saturate_one, [equations] * len(minors),
                                    [r for r, _ in minors], [m for _, m in minors],
                                    [caps] * len(minors)))
    else:
        results = (_saturate_one(equations, rows, minor, caps)
                   for rows, minor in independence_minors(ans))
    certs = []
    failure = None
    seen = 0
    for rows, minor, gens, gb, err in results:
        seen += 1
        if caps.deadline is not None and time.monotonic() > caps.deadline:
            return Inconclusive("deadline exceeded during certification")
        if gb is None:
            failure = failure or f"minor {_rows_str(rows)}: {err}"
            continue
        if len(gb) == 1 and gb[0].is_constant():
            certs.append(MinorCertificate(rows, minor, tuple(gens), gb))
        else:
            return SolutionsMayExist(rows, gb)
    if not seen:
        return Infeasible((), reason="every maximal minor vanishes identically")
    if failure:
        return Inconclusive(failure)
    return Infeasible(tuple(certs))


def _rows_str(rows) -> str:
    return "{" + ",".join(f"X{t.i}{t.j}" for t in rows) + "}"


def recheck_certificate(cert: MinorCertificate, replay: bool = False) -> bool:
    """Confirm 1 reduces to 0 modulo the stored basis (and optionally recompute it)."""
    one = Polynomial.const(1)
    if reduce(one, list(cert.basis)):
        return False
    if replay:
        return tuple(groebner(cert.generators, "grevlex")) == tuple(cert.basis)
    return True


# ---------------------------------------------------------------------------
# step 4b: ladder search with linear propagation


class _Compiled:
    """Equations as integer-indexed quadratic forms for fast partial evaluation."""

    def __init__(self, equations, order):
        self.index = {v: n for n, v in enumerate(order)}
        self.eqs = []
        for p in equations:
            const = ZERO
            lin = []
            quad = []
            for m, c in p.terms.items():
                if not m:
                    const = c
                elif len(m) == 1 and m[0][1] == 1:
                    lin.append((self.index[m[0][0]], c))
                elif len(m) == 2:
                    quad.append((self.index[m[0][0]], self.index[m[1][0]], c))
                else:
                    (v, e), = m
                    quad.append((self.index[v], self.index[v], c))
            self.eqs.append((const, lin, quad))

    def linear_rows(self, asg):
        """Residual linear equations under a partial assignment (list, None = unknown)."""
        rows = []
        for const, lin, quad in self.eqs:
            c0 = const
            coeffs: dict = {}
            nonlinear = False
            for v, c in lin:
                x = asg[v]
                if x is None:
                    coeffs[v] = coeffs.get(v, ZERO) + c
                elif x:
                    c0 = c0 + c * x
            for u, v, c in quad:
                xu, xv = asg[u], asg[v]
                if xu is not None:
                    if not xu:
                        continue
                    if xv is not None:
                        if xv:
                            c0 = c0 + c * xu * xv
                    else:
                        coeffs[v] = coeffs.get(v, ZERO) + c * xu
                elif xv is not None:
                    if xv:
                        coeffs[u] = coeffs.get(u, ZERO) + c * xv
                else:
                    nonlinear = True
                    break
            if nonlinear:
                continue
            coeffs = {v: c for v, c in coeffs.items() if c}
            if coeffs or c0:
                rows.append((coeffs, c0))
        return rows

    def residual_polys(self, asg, order):
        out = []
        for const, lin, quad in self.eqs:
            p = Polynomial.const(const)
            for v, c in lin:
                p = p + (Polynomial.var(order[v]) * c if asg[v] is None else Polynomial.const(c * asg[v]))
            for u, v, c in quad:
                pu = Polynomial.var(order[u]) if asg[u] is None else Polynomial.const(asg[u])
                pv = Polynomial.var(order[v]) if asg[v] is None else Polynomial.const(asg[v])
                p = p + pu * pv * c
            if p:
                out.append(p)
        return out


class _Budget(Exception):
    pass


def _max_rref(rows):
    """RREF choosing the latest variable in search order as pivot."""
    flipped = [({-v: c for v, c in coeffs.items()}, c0) for coeffs, c0 in rows]
    res = linear_rref(flipped)
    if res is INCONSISTENT:
        return res
    return {-p: ({-v: c for v, c in coeffs.items()}, k) for p, (coeffs, k) in res.items()}


def search_solution(cs: ConstraintSystem, ans: Ansatz, budget: int = 200_000,
                    ladder=None, gb_prune_vars: int = 24,
                    gb_caps: GroebnerCaps = GroebnerCaps(max_pairs=2_000, max_degree=6,
                                                         max_reductions=20_000),
                    deadline: float | None = None, fixed=None):
    """Depth-first search for exact values satisfying the constraint system.

    Unknowns are branched in :meth:`Ansatz.search_order`, trying ``ladder``
    values in order (zero first).  Without an explicit ladder the search is
    repeated over :data:`LADDER_STAGES`, sharing one node budget.  After each
    choice the linear part of the system is solved exactly: determined
    unknowns are assigned and only free unknowns are branched on.  Entries
    that diagonal conjugation can rescale are only tried as 0 or 1.  Branches die on inconsistent linear systems,
    vectors forced to zero, dependent completed images, or (with at most
    ``gb_prune_vars`` unknowns left) a unit Groebner basis.  Returns Solution,
    NotFound (ladder exhausted; not a proof of infeasibility) or Inconclusive.
    """
    A = ans.algebra
    order = ans.search_order()
    comp = _Compiled(cs.equations, order)
    nvars = len(order)
    slots_of: dict = {}
    for n_, v in enumerate(order):
        slots_of.setdefault(v.idx[0], []).append(n_)
    idx_all = tri_indices(ans.k)
    nodes = 0

    asg: list = [None] * nvars
    if fixed:
        for v, x in fixed.items():
            asg[comp.index[v]] = x

    def vector_of(h, a):
        img = {}
        for n_ in slots_of.get(h, ()):
            v = order[n_]
            if a[n_]:
                img[(v.idx[1], v.idx[2])] = a[n_]
        return img

    def propagate(a):
        """Assign every determined unknown; return the final RREF or INCONSISTENT."""
        while True:
            rref = _max_rref(comp.linear_rows(a))
            if rref is INCONSISTENT:
                return INCONSISTENT
            forced = {p: -k for p, (c, k) in rref.items() if not c}
            if not forced:
                return rref
            for p, x in forced.items():
                a[p] = x

    def dead(a):
        complete = []
        for h in range(1, A.dim + 1):
            ids = slots_of.get(h, ())
            if all(a[n_] is not None for n_ in ids):
                if not any(a[n_] for n_ in ids):
                    return True
                complete.append(h)
        if len(complete) > 1:
            vecs = []
            for h in complete:
                img = vector_of(h, a)
                vecs.append(tuple(img.get((t.i, t.j), ZERO) for t in idx_all))
            if len(echelonize(vecs)) < len(vecs):
                return True
        return False

    def gb_dead(a):
        free = sum(1 for x in a if x is None)
        if not gb_prune_vars or free > gb_prune_vars or free == 0:
            return False
        polys = comp.residual_polys(a, order)
        if not polys:
            return False
        try:
            gb = groebner(polys, "grevlex", gb_caps)
        except ResourceLimit:
            return False
        return len(gb) == 1 and gb[0].is_constant()

    def _choices(a, var):
        # Conjugating by diag(t) scales X_ij by t_i/t_j.  If no assigned nonzero
        # off-diagonal entry links i and j yet, a nonzero value can be scaled to 1.
        _, i, j = order[var].idx
        if i == j:
            return ladder
        parent = list(range(ans.k + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for n_, x in enumerate(a):
            if x:
                _, p, q = order[n_].idx
                if p != q:
                    parent[find(p)] = find(q)
        if find(i) != find(j):
            return (ZERO, ONE)
        return ladder

    def rec(a):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Budget()
        if deadline is not None and nodes % 64 == 0 and time.monotonic() > deadline:
            raise _Budget()
        rref = propagate(a)
        if rref is INCONSISTENT or dead(a):
            return None
        free = [n_ for n_ in range(nvars) if a[n_] is None and n_ not in rref]
        if not free:
            if any(x is None for x in a):
                return None
            return list(a)
        if gb_dead(a):
            return None
        var = free[0]
        for x in _choices(a, var):
            b = list(a)
            b[var] = x
            got = rec(b)
            if got is not None:
                rep = _to_representation(ans, order, got)
                if not verify_representation(A, rep):
                    return got
        return None

    stages = LADDER_STAGES if ladder is None else (tuple(ladder),)
    try:
        for ladder in stages:
            result = rec(list(asg))
            if result is not None:
                break
    except _Budget:
        return Inconclusive(f"search budget exhausted after {nodes} nodes")
    if result is None:
        return NotFound(nodes)
    rep = _to_representation(ans, order, result)
    defects = verify_representation(A, rep)
    assert not defects, defects
    return Solution(rep, nodes)


def _to_representation(ans: Ansatz, order, values) -> Representation:
    images = [dict() for _ in range(ans.algebra.dim)]
    for v, x in zip(order, values):
        if x:
            images[v.idx[0] - 1][(v.idx[1], v.idx[2])] = x
    return Representation(ans.k, tuple(images))


def naturalize(A: LieAlgebra, rep: Representation) -> Representation:
    """Greedily zero out coefficients whose removal keeps the representation valid."""
    images = [dict(img) for img in rep.images]
    for h in range(len(images)):
        for t in list(images[h]):
            saved = images[h].pop(t)
            trial = Representation(rep.k, tuple(images))
            if verify_representation(A, trial):
                images[h][t] = saved
    return Representation(rep.k, tuple(images))


# ---------------------------------------------------------------------------
# the outer loop


@dataclass(frozen=True)
class MinRepResult:
    k: int | None
    outcome: object
    status: str            # minimal-certified | upper-bound-only | inconclusive
    lower_bound: int
    audit: tuple           # (k, outcome) per attempted size


def solve_min_rep(A: LieAlgebra, max_k: int | None = None, budget: int = 200_000,
                  caps: GroebnerCaps = GroebnerCaps(), jobs: int = 1,
                  deadline: float | None = None, certify: bool = True) -> MinRepResult:
    """Search h_k for k = lower bound, lower bound + 1, ... up to ``max_k``.

    A found representation is ``minimal-certified`` when every smaller size
    from the lower bound on was proven infeasible, else ``upper-bound-only``.
    """
    if A.is_parametric():
        raise ParametricLaw("substitute concrete parameter values before solving")
    lb = lower_bound_k(A)
    if max_k is None:
        max_k = A.dim + 2
    audit = []
    certified = True
    for k in range(lb, max_k + 1):
        ans = build_ansatz(A, k)
        cs = generate_constraints(A, ans)
        # searching first is cheap when a solution exists; the certificate
        # is only needed to rule a size out
        found = search_solution(cs, ans, budget, deadline=deadline)
        if isinstance(found, Solution):
            audit.append((k, found))
            status = "minimal-certified" if certified else "upper-bound-only"
            return MinRepResult(k, found, status, lb, tuple(audit))
        if certify:
            cert = infeasibility_certificate(cs, ans, _with_deadline(caps, deadline), jobs)
        else:
            cert = Inconclusive("certification skipped")
        if isinstance(cert, Infeasible):
            audit.append((k, cert))
            continue
        audit.append((k, cert if isinstance(cert, Inconclusive) else found))
        certified = False
        if deadline is not None and time.monotonic() > deadline:
            break
    return MinRepResult(None, Inconclusive(f"no representation found up to k={max_k}"),
                        "inconclusive", lb, tuple(audit))


def _with_deadline(caps: GroebnerCaps, deadline):
    if deadline is None:
        return caps
    return GroebnerCaps(caps.max_pairs, caps.max_degree, deadline, caps.max_reductions)
