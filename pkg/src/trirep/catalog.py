"""Catalog of solvable Lie algebras with their published representatives.

The data directory holds one law file and one representation file per entry
plus ``index.json``; family entries (Heisenberg, filiform, s_n) are generated
on the fly.  :func:`verify_all` checks every entry exactly and collects every
discrepancy into an errata list instead of passing it silently.
"""

from __future__ import annotations

import ast
import itertools
import json
import operator
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import LieAlgebra, NotSolvable, jacobi_check
from .formats import parse_algebra_file, parse_rep_file
from .gaussian import GQ
from .polynomials import param
from .representation import (
    BracketDefect, RankDefect, Representation, SizeMismatch, verify_representation,
)
from .solver import lower_bound_k

__all__ = [
    "DATA_DIR", "CatalogEntry", "EntryReport", "VerificationReport",
    "load_catalog", "get_entry", "family_sn", "family_heisenberg", "family_filiform",
    "sample_parameters", "verify_entry", "verify_all", "known_errata",
    "DEFAULT_SAMPLE_VALUES",
]

DATA_DIR = Path(__file__).with_name("data")
DEFAULT_SAMPLE_VALUES = ("2", "3", "1/2", "-2", "5")


# ---------------------------------------------------------------------------
# families


def family_sn(n: int):
    """``[e_i, e_n] = e_i`` with representative ``e_j = X_{1,j+1}``, ``e_n = -X_{1,1}``."""
    if n < 2:
        raise ValueError("s_n needs n >= 2")
    A = LieAlgebra.from_brackets(n, [(i, n, i, 1) for i in range(1, n)])
    images = [{(1, j + 1): GQ(1)} for j in range(1, n)] + [{(1, 1): GQ(-1)}]
    return _checked(A, Representation(n, tuple(images)))


def family_heisenberg(n: int):
    """``[e_{2i}, e_{2i+1}] = e_1`` for i = 1..n, represented in h_{n+2}."""
    if n < 1:
        raise ValueError("the Heisenberg family needs n >= 1")
    dim = 2 * n + 1
    A = LieAlgebra.from_brackets(dim, [(2 * i, 2 * i + 1, 1, 1) for i in range(1, n + 1)])
    images: dict = {}
    for j in range(n + 1):
        images[2 * j + 1] = {(j + 1, n + 2): GQ(1)}
    for k in range(1, n + 1):
        images[2 * k] = {(1, k + 1): GQ(1)}
    R = Representation(n + 2, tuple(images[h] for h in range(1, dim + 1)))
    return _checked(A, R)


def family_filiform(n: int):
    """``[e_1, e_h] = e_{h-1}`` for h = 3..n, represented in h_n."""
    if n < 3:
        raise ValueError("the filiform family needs n >= 3")
    A = LieAlgebra.from_brackets(n, [(1, h, h - 1, 1) for h in range(3, n + 1)])
    e1 = {(i, i + 1): GQ(1) for i in range(1, n - 1)}
    images = [e1] + [{(j - 1, n): GQ(1)} for j in range(2, n + 1)]
    return _checked(A, Representation(n, tuple(images)))


def _checked(A, R):
    defects = verify_representation(A, R)
    assert not defects, [d.describe() for d in defects]
    return A, R


FAMILIES = {"sn": family_sn, "heisenberg": family_heisenberg, "filiform": family_filiform}


# ---------------------------------------------------------------------------
# entries


@dataclass
class CatalogEntry:
    id: str
    law: LieAlgebra
    rep: Representation
    claimed_mu: int
    source: str
    constraints: tuple = ()
    domains: dict = field(default_factory=dict)
    note: str = ""

    @property
    def dim(self) -> int:
        return self.law.dim


def _read(base: Path, rel: str) -> str:
    return (base / rel).read_text(encoding="utf-8")


def load_catalog(base: Path | str | None = None) -> list:
    """All entries in index order."""
    base = Path(base) if base is not None else DATA_DIR
    index = json.loads(_read(base, "index.json"))
    entries = []
    seen = set()
    for item in index["entries"]:
        if item["id"] in seen:
            raise ValueError(f"duplicate catalog id {item['id']}")
        seen.add(item["id"])
        if "family" in item:
            law, rep = FAMILIES[item["family"]](item["n"])
        else:
            law = parse_algebra_file(_read(base, item["law"]))
            rep = parse_rep_file(_read(base, item["rep"]))
        entries.append(CatalogEntry(
            item["id"], law, rep, item["claimed_mu"], item["source"],
            tuple(item.get("constraints", ())), dict(item.get("domains", {})),
            item.get("note", "")))
    return entries


def get_entry(entry_id: str, base=None) -> CatalogEntry:
    for e in load_catalog(base):
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


# ---------------------------------------------------------------------------
# parameter sampling


_CMP = {ast.Lt: operator.lt, ast.LtE: operator.le, ast.Gt: operator.gt,
        ast.GtE: operator.ge, ast.Eq: operator.eq, ast.NotEq: operator.ne}
_BIN = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.Pow: operator.pow}


def _eval_constraint(text: str, values: dict) -> bool:
    """Evaluate a constraint such as ``0 < abs(gamma) <= 1`` over the rationals."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp)
                if not _CMP[type(op)](left, right):
                    return False
                left = right
            return True
        if isinstance(node, ast.BinOp):
            return _BIN[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Call) and getattr(node.func, "id", None) == "abs":
            return abs(ev(node.args[0]))
        if isinstance(node, ast.Name):
            return values[node.id]
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        raise ValueError(f"unsupported constraint syntax in {text!r}")

    return bool(ev(ast.parse(text.replace("^", "**"), mode="eval")))


def _free_params(entry: CatalogEntry) -> list:
    """Parameters to sample: declared names that are not radical parameters."""
    radicals = {r.var.name for r in entry.law.relations} | {r.var.name for r in entry.rep.relations}
    names = list(entry.law.param_names)
    for n in entry.rep.param_names:
        if n not in names:
            names.append(n)
    return [n for n in names if n not in radicals]


def sample_parameters(entry: CatalogEntry, count: int, seed: int) -> list:
    """Up to ``count`` admissible assignments ``{name: Fraction}``, deterministic in seed."""
    names = _free_params(entry)
    if not names or count <= 0:
        return []
    pools = [[Fraction(v) for v in entry.domains.get(n, DEFAULT_SAMPLE_VALUES)] for n in names]
    admissible = []
    for combo in itertools.product(*pools):
        values = dict(zip(names, combo))
        if all(_eval_constraint(c, values) for c in entry.constraints):
            admissible.append(values)
    rng = random.Random(f"{seed}:{entry.id}")
    if len(admissible) <= count:
        return admissible
    picks = sorted(rng.sample(range(len(admissible)), count))
    return [admissible[i] for i in picks]


def _to_subs(values: dict) -> dict:
    return {param(n): GQ(v.numerator, v.denominator) for n, v in values.items()}


def _fmt_values(values: dict) -> str:
    return ", ".join(f"{n}={v}" for n, v in values.items())


# ---------------------------------------------------------------------------
# verification


@dataclass
class EntryReport:
    id: str
    dim: int
    size: int
    claimed_mu: int
    jacobi: list
    defects: list             # symbolic defect descriptions
    lower_bound: int | None
    samples: list             # (values, [descriptions])
    issues: list              # errata lines for this entry

    @property
    def rep_valid(self) -> bool:
        return not self.defects

    @property
    def consistent(self) -> bool:
        return not self.issues

    def summary(self) -> str:
        lb = "-" if self.lower_bound is None else str(self.lower_bound)
        ok_samples = sum(1 for _, d in self.samples if not d)
        return (f"{self.id}: dim={self.dim} size={self.size} claimed={self.claimed_mu} lb={lb} "
                f"jacobi={'pass' if not self.jacobi else 'FAIL'} "
                f"rep={'valid' if self.rep_valid else 'DEFECTS'} "
                f"samples={ok_samples}/{len(self.samples)} "
                f"-> {'ok' if self.consistent else 'flagged'}")


def _describe_defects(A, R) -> list:
    try:
        defects = verify_representation(A, R)
    except SizeMismatch as exc:
        return [f"size mismatch: {exc}"]
    out = []
    pairs = [d for d in defects if isinstance(d, BracketDefect)]
    if pairs:
        out.append("bracket fails at " + ", ".join(f"[e{d.i},e{d.j}]" for d in pairs))
    for d in defects:
        if isinstance(d, RankDefect):
            out.append(d.describe())
    return out


def verify_entry(entry: CatalogEntry, samples: int = 2, seed: int = 0) -> EntryReport:
    A, R = entry.law, entry.rep
    issues = []
    jac = jacobi_check(A)
    if jac:
        issues.append("jacobi fails at " + ", ".join(f"({i},{j},{k})" for i, j, k in jac))
    defects = _describe_defects(A, R)
    issues += [f"rep: {d}" for d in defects]
    try:
        lb = lower_bound_k(A) if not jac else None
    except NotSolvable:
        lb = None
        issues.append("law is not solvable")
    if lb is not None and lb > entry.claimed_mu:
        issues.append(f"lower bound {lb} exceeds claimed {entry.claimed_mu}")
    if R.k != entry.claimed_mu:
        issues.append(f"rep needs size {R.k} but claimed {entry.claimed_mu}")
    sample_results = []
    for values in sample_parameters(entry, samples, seed):
        subs = _to_subs(values)
        try:
            got = _describe_defects(A.substitute(subs), R.substitute(subs))
        except ZeroDivisionError:
            got = ["rep undefined at this point"]
        sample_results.append((values, got))
        if got and not defects:
            issues += [f"sample {_fmt_values(values)}: {d}" for d in got]
    if _free_params(entry) and samples > 0 and not sample_results:
        issues.append("no admissible parameter sample")
    return EntryReport(entry.id, A.dim, R.k, entry.claimed_mu, jac, defects, lb,
                       sample_results, issues)


@dataclass
class VerificationReport:
    entries: list
    seed: int
    samples: int

    def errata_lines(self) -> list:
        return [f"{r.id}: {issue}" for r in self.entries for issue in r.issues]

    def errata_text(self) -> str:
        return "".join(line + "\n" for line in self.errata_lines())

    def render(self) -> str:
        lines = [f"# catalog verification (seed={self.seed}, samples={self.samples})"]
        lines += [r.summary() for r in self.entries]
        flagged = sum(1 for r in self.entries if not r.consistent)
        lines.append(f"# {len(self.entries)} entries, {flagged} flagged")
        lines.append("# errata")
        lines += self.errata_lines()
        return "\n".join(lines) + "\n"


def verify_all(samples_per_param: int = 2, seed: int = 0, base=None, jobs: int = 1) -> VerificationReport:
    entries = load_catalog(base)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_by_id, [e.id for e in entries],
                                    [samples_per_param] * len(entries), [seed] * len(entries),
                                    [base] * len(entries)))
    else:
        reports = [verify_entry(e, samples_per_param, seed) for e in entries]
    return VerificationReport(reports, seed, samples_per_param)


def _verify_by_id(entry_id, samples, seed, base):
    return verify_entry(get_entry(entry_id, base), samples, seed)


def known_errata(base=None) -> str:
    """The committed errata text; empty when no file has been recorded yet."""
    base = Path(base) if base is not None else DATA_DIR
    path = base / "known_errata.txt"
    return path.read_text(encoding="utf-8") if path.exists() else ""
