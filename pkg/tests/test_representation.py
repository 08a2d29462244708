import pytest

from trirep.algebra import LieAlgebra
from trirep.gaussian import GQ
from trirep.polynomials import param
from trirep.representation import (
    BracketDefect, RankDefect, Representation, SizeMismatch, verify_representation,
)
from trirep.scalars import scalar_param

# [e1,e3] = e2, represented by e1 = -X23, e2 = X13, e3 = X12
LAW = LieAlgebra.from_brackets(3, [(1, 3, 2, 1)])
GOOD = Representation(3, ({(2, 3): GQ(-1)}, {(1, 3): GQ(1)}, {(1, 2): GQ(1)}))


def test_valid():
    assert verify_representation(LAW, GOOD) == []


def test_bracket_defect():
    bad = Representation(3, ({(2, 3): GQ(1)}, {(1, 3): GQ(1)}, {(1, 2): GQ(1)}))
    defects = verify_representation(LAW, bad)
    assert len(defects) == 1
    d = defects[0]
    assert isinstance(d, BracketDefect) and (d.i, d.j) == (1, 3)
    assert "[e1,e3]" in d.describe()


def test_rank_defect():
    A = LieAlgebra.from_brackets(2, [])
    R = Representation(2, ({(1, 2): GQ(1)}, {(1, 2): GQ(2)}))
    (d,) = verify_representation(A, R)
    assert isinstance(d, RankDefect)
    assert d.rank == 1 and d.dependent == (2,)


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        verify_representation(LAW, Representation(3, ({(1, 2): GQ(1)},)))
    gap = Representation(3, GOOD.images, missing=(2,))
    with pytest.raises(SizeMismatch):
        verify_representation(LAW, gap)


def test_out_of_range_entry():
    with pytest.raises(ValueError):
        Representation(2, ({(1, 3): GQ(1)},))


def test_parametric_representation():
    # [e1,e2] = a e2 with e1 = a X11, e2 = X12 holds identically in a
    a = scalar_param("a")
    A = LieAlgebra.from_brackets(2, [(1, 2, 2, a)], param_names=("a",))
    R = Representation(2, ({(1, 1): a}, {(1, 2): GQ(1)}), param_names=("a",))
    assert R.is_parametric()
    assert verify_representation(A, R) == []
    R2 = R.substitute({param("a"): GQ(3)})
    assert not R2.is_parametric()
    assert verify_representation(A.substitute({param("a"): GQ(3)}), R2) == []
