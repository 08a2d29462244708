import json
import shutil

import pytest

from trirep.catalog import (
    DATA_DIR, FAMILIES, _eval_constraint, family_filiform, family_heisenberg, family_sn,
    get_entry, known_errata, load_catalog, sample_parameters, verify_all, verify_entry,
)
from trirep.representation import verify_representation
from trirep.solver import lower_bound_k

ANCHORS = ["s_1^1", "s_2^1", "s_3^2", "s_3^3", "s_3^6", "s_4^1", "s_4^3"]


@pytest.mark.parametrize("n", range(1, 11))
def test_families_verify(n):
    cases = [(family_heisenberg, n, n + 2)]
    if n >= 2:
        cases.append((family_sn, n, n))
    if n >= 3:
        cases.append((family_filiform, n, n))
    for make, arg, size in cases:
        A, R = make(arg)
        assert R.k == size
        assert verify_representation(A, R) == []


def test_family_ranges():
    for make, bad in [(family_sn, 1), (family_heisenberg, 0), (family_filiform, 2)]:
        with pytest.raises(ValueError):
            make(bad)
    assert set(FAMILIES) == {"sn", "heisenberg", "filiform"}


def test_catalog_shape():
    entries = load_catalog()
    ids = [e.id for e in entries]
    assert len(ids) == len(set(ids))
    assert sum(1 for e in entries if e.dim == 5) == 39
    assert {"ex_solvable_7", "ex_solvable_8"} <= set(ids)
    with pytest.raises(KeyError):
        get_entry("nope")


@pytest.mark.parametrize("entry_id", ANCHORS)
def test_anchor_entries(entry_id):
    e = get_entry(entry_id)
    assert verify_representation(e.law, e.rep) == []
    assert lower_bound_k(e.law) <= e.claimed_mu


def test_known_defects_are_flagged():
    assert verify_entry(get_entry("g_5_18")).issues
    seven = verify_entry(get_entry("ex_solvable_7"))
    assert any("e6" in issue for issue in seven.issues)


def test_constraint_evaluator():
    assert _eval_constraint("0 < abs(gamma) <= 1", {"gamma": -1})
    assert not _eval_constraint("0 < abs(gamma) <= 1", {"gamma": 2})
    assert _eval_constraint("alpha != 0", {"alpha": 3})
    with pytest.raises(ValueError):
        _eval_constraint("__import__('os')", {})


def test_samples_respect_constraints_and_seed():
    for e in load_catalog():
        a = sample_parameters(e, 2, 0)
        assert a == sample_parameters(e, 2, 0)
        for values in a:
            assert all(_eval_constraint(c, values) for c in e.constraints)


def test_verify_all_deterministic_and_matches_committed_errata():
    first = verify_all(2, 0)
    second = verify_all(2, 0)
    assert first.render() == second.render()
    assert first.errata_text() == known_errata()


def test_custom_catalog_base(tmp_path):
    base = tmp_path / "data"
    shutil.copytree(DATA_DIR, base)
    index = json.loads((base / "index.json").read_text())
    index["entries"].append(index["entries"][0])
    (base / "index.json").write_text(json.dumps(index))
    with pytest.raises(ValueError):
        load_catalog(base)
