import json

import pytest

import colimit


def test_catalog():
    assert "S3" in colimit.catalog_names()
    assert colimit.catalog_order("S3") == 6
    assert colimit.catalog_order("D8") == 16
    assert sorted(colimit.normal_subgroup_orders("S3")) == [1, 3, 6]
    with pytest.raises(colimit.InputError):
        colimit.pi_n("nosuch", ["G"])


def test_pi_n_and_refusal():
    r = colimit.pi_n("S3", ["A3", "A3", "A3"])
    assert r["invariants"]["torsion"] == [3]
    assert all(c["passed"] for c in r["hypothesis_checks"])
    assert colimit.pi_n("C6", ["G", "G", "G"])["invariants"]["text"] == "Z/6"
    assert not colimit.is_connected("V4", ["ncl(a)", "ncl(b)", "ncl(a*b)"])
    with pytest.raises(colimit.HypothesisError):
        colimit.pi_n("V4", ["ncl(a)", "ncl(b)", "ncl(a*b)", "G"])


def test_pi2_h1():
    assert colimit.h1("S3", ["A3", "A3"])["invariants"]["text"] == "0"
    r = colimit.pi2("S4", ["A4", "V4", "G"])
    assert r["abelian"]


def test_kernel():
    for s in ("hlt", "felsch"):
        k = colimit.boundary_kernel("S3", ["G", "G"], s)
        assert (k["t_order"], k["image_order"], k["kernel_order"]) == (6, 3, 2)
        assert k["kernel_abelianization"]["torsion"] == [2]


def test_wu():
    r = colimit.wu(2, 3)
    assert r["invariants"]["free_rank"] == 1 and r["invariants"]["torsion"] == []
    m = colimit.wu_membership(2, 3, "[y0,y1]")
    assert m["in_numerator"] and not m["in_denominator"] and m["order"] is None
    assert colimit.hopf_element(2) == "[[y0,y1],[y0,y1y2]]"
    assert colimit.basis_size(2, 5) == 14
    with pytest.raises(colimit.InputError):
        colimit.wu(3, 2)
    with pytest.raises(colimit.BudgetError):
        colimit.wu(4, 9, budget=100)


def test_cli_json():
    code, out, err = colimit.run(["akcheck", "--n", "2", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1 and data["trivial"] is True
    code, out, err = colimit.run(["pi", "--group", "catalog:nosuch"])
    assert code == 1 and "unknown" in err
