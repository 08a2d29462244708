"""Representations of a Lie algebra inside h_k and their exact verification."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LieAlgebra, echelonize
from .gaussian import GQ
from .scalars import Scalar, subs_scalar
from .triangular import TriIndex, tri_bracket, tri_indices

__all__ = [
    "Representation", "SizeMismatch", "BracketDefect", "RankDefect",
    "verify_representation", "image_combination",
]


class SizeMismatch(ValueError):
    """Representation and algebra disagree on the number of basis vectors."""


@dataclass(frozen=True)
class Representation:
    """Images of e_1..e_n as sparse upper-triangular k x k matrices.

    ``images[h - 1]`` maps TriIndex to a scalar.  A representation may carry
    extra declared parameters (and radical relations) used by its entries.
    """

    k: int
    images: tuple
    param_names: tuple = ()
    relations: tuple = ()
    missing: tuple = ()    # basis indices absent from the source file

    def __post_init__(self):
        valid = set(tri_indices(self.k))
        cleaned = []
        for img in self.images:
            img = {TriIndex(*t): c for t, c in img.items()}
            for t in img:
                if t not in valid:
                    raise ValueError(f"X_{t.i},{t.j} does not fit in size {self.k}")
            cleaned.append({t: img[t] for t in sorted(img) if img[t]})
        object.__setattr__(self, "images", tuple(cleaned))

    @property
    def dim(self) -> int:
        return len(self.images)

    def image(self, h: int) -> dict:
        return self.images[h - 1]

    def flat_vectors(self) -> list:
        idx = tri_indices(self.k)
        return [tuple(img.get(t, GQ(0)) for t in idx) for img in self.images]

    def is_parametric(self) -> bool:
        return any(isinstance(c, Scalar) for img in self.images for c in img.values())

    def substitute(self, values: dict) -> "Representation":
        images = tuple({t: subs_scalar(c, values) for t, c in img.items()}
                       for img in self.images)
        rels = tuple(r for r in self.relations if r.var not in values)
        return Representation(self.k, images, self.param_names, rels, self.missing)

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        if (self.k != other.k or len(self.images) != len(other.images)
                or self.missing != other.missing):
            return False
        for a, b in zip(self.images, other.images):
            for t in set(a) | set(b):
                if a.get(t, 0) - b.get(t, 0):
                    return False
        return True

    __hash__ = None


@dataclass(frozen=True)
class BracketDefect:
    i: int
    j: int
    commutator: dict   # [R(e_i), R(e_j)]
    expected: dict     # R([e_i, e_j])

    def describe(self) -> str:
        return (f"[e{self.i},e{self.j}]: commutator {_fmt_img(self.commutator)} "
                f"!= image {_fmt_img(self.expected)}")


@dataclass(frozen=True)
class RankDefect:
    rank: int
    dim: int
    dependent: tuple   # basis indices h whose image lies in the span of earlier images

    def describe(self) -> str:
        deps = ",".join(f"e{h}" for h in self.dependent)
        return f"rank {self.rank} < {self.dim}: images of {{{deps}}} are linearly dependent on earlier images"


def _fmt_img(img: dict) -> str:
    if not img:
        return "0"
    parts = []
    for t, c in sorted(img.items()):
        cs = str(c)
        if cs == "1":
            parts.append(f"X{t.i},{t.j}")
        elif cs == "-1":
            parts.append(f"-X{t.i},{t.j}")
        else:
            parts.append(f"({cs})*X{t.i},{t.j}")
    return " + ".join(parts).replace("+ -", "- ")


def image_combination(R: Representation, coeffs: dict) -> dict:
    """The matrix ``sum_h coeffs[h] R(e_h)``."""
    out: dict = {}
    for h, c in coeffs.items():
        for t, x in R.image(h).items():
            out[t] = out.get(t, 0) + c * x
    return {t: x for t, x in sorted(out.items()) if x}


def verify_representation(A: LieAlgebra, R: Representation) -> list:
    """Defects of R as a faithful representation of A; an empty list means valid.

    Checks bracket preservation on every pair of basis vectors and linear
    independence of the images, exactly (over the parameter fraction field
    when scalars are parametric).
    """
    if R.dim != A.dim:
        raise SizeMismatch(f"{R.dim} images for a {A.dim}-dimensional algebra")
    if R.missing:
        gaps = ",".join(f"e{h}" for h in R.missing)
        raise SizeMismatch(f"no image given for {gaps}")
    defects: list = []
    n = A.dim
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs = tri_bracket(R.image(i), R.image(j))
            rhs = image_combination(R, A.constants.get((i, j), {}))
            keys = set(lhs) | set(rhs)
            if any(lhs.get(t, 0) - rhs.get(t, 0) for t in keys):
                defects.append(BracketDefect(i, j, lhs, rhs))
    vectors = R.flat_vectors()
    rank = 0
    dependent = []
    for h in range(n):
        r = len(echelonize(vectors[: h + 1]))
        if r == rank:
            dependent.append(h + 1)
        rank = r
    if rank < n:
        defects.append(RankDefect(rank, n, tuple(dependent)))
    return defects
