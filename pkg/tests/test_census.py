import json

import pytest

from pnfield import census as S
from pnfield.gf import format_elt, make_field, make_tower, parse_elt

KEYS = ["q", "n", "countPrimitiveElts", "countNormalElts", "countPrimNormalElts", "countComplNormalElts",
        "countPrimitivePolys", "countPrimNormalPolys", "P1", "P2", "P3", "carlitzMainTerm", "carlitzError",
        "eulerGamma"]


def tower(p, v, n):
    return make_tower(make_field(p, v), n)


F4 = tower(2, 1, 2)
F9 = tower(3, 1, 2)


def test_cells():
    cs = S.cells(16)
    assert (2, 1, 4) in cs and (2, 2, 2) in cs and (2, 4, 1) in cs and (13, 1, 1) in cs
    assert all(p ** (v * n) <= 16 for p, v, n in cs)
    assert S.cells(1) == []
    assert len(S.cells(4096)) == len(set(S.cells(4096)))


def test_run_census_examples():
    r = S.run_census(F4)
    assert (r.countPrimitiveElts, r.countNormalElts, r.countPrimNormalElts, r.countPrimNormalPolys) == (2, 2, 2, 1)
    r = S.run_census(F9)
    assert r.countPrimNormalElts == 4 and r.countPrimNormalPolys == 2
    assert S.run_census(tower(2, 1, 3)).countNormalElts == 3
    with pytest.raises(ValueError):
        S.run_census(tower(2, 1, 13))


def test_record_schema():
    d = S.run_census(F9).to_dict()
    assert list(d) == KEYS
    assert json.loads(json.dumps(d)) == d
    assert d["eulerGamma"] == 0.5772156649015329
    assert d["P3"] == pytest.approx(d["P1"] * d["P2"])
    assert d["carlitzMainTerm"] == pytest.approx(d["countPrimitiveElts"] * d["countNormalElts"] / 9)


def test_solve_trace_system_examples():
    sols = S.solve_trace_system(F9, (1,), "primitive-normal")
    assert [format_elt(a) for a in sols] == ["2;1", "2;2"]
    assert S.solve_trace_system(F4, (0,), "normal") == []
    assert parse_elt(F9, "2;2") in S.solve_trace_system(F9, (1, 0), "primitive-normal")
    with pytest.raises(ValueError):
        S.solve_trace_system(F9, (1, 0, 0))
    with pytest.raises(ValueError):
        S.solve_trace_system(F9, (1,), "bogus")


def test_solve_trace_system_beyond_p():
    # k >= p needs no factorials on this side
    T = tower(2, 1, 4)
    sols = S.solve_trace_system(T, (1, 1, 0), "any")
    for a in sols:
        assert [int(T.abs_trace[T.pow(a.index, i)]) for i in (1, 2, 3)] == [1, 1, 0]


def test_n_star_examples():
    assert S.n_star_exhaustive(F9, (1,)) == 2
    assert S.n_star_exhaustive(F9, (2,)) == 2
    assert S.n_star_exhaustive(F4, (1,)) == 2
    assert S.n_star_charsum(F9, (1,)) == 2
    assert S.n_star_charsum(F4, (1,)) == 2


@pytest.mark.parametrize("cell", [(2, 1, 4), (3, 1, 3), (2, 2, 3), (5, 1, 2), (2, 1, 7)])
def test_trace_partition(cell):
    T = tower(*cell)
    r = S.run_census(T)
    assert sum(S.n_star_exhaustive(T, (a,)) for a in range(1, T.q)) == r.countPrimNormalElts
    assert sum(S.n_star_charsum(T, (a,)) for a in range(1, T.q)) == r.countPrimNormalElts


@pytest.mark.parametrize("cell", [(2, 1, 5), (3, 1, 3), (2, 2, 3), (3, 2, 2), (7, 1, 2)])
def test_eq26_table(cell):
    rep = S.verify_eq26(tower(*cell))
    assert rep["pass"] and rep["maxDeviation"] < 1e-6


def test_verify_theorem3_examples():
    for cell in [(2, 1, 2), (3, 1, 2), (2, 1, 4)]:
        assert S.verify_theorem3(tower(*cell))["pass"]
    r = S.verify_theorem3(tower(5, 1, 1))
    assert r["informational"] and r["violations"] == [1, 4]


def test_verify_conjecture4_examples():
    r = S.verify_conjecture4(tower(2, 1, 4))
    assert r["count"] == 4 and r["pass"] and not r["informational"]
    assert S.verify_conjecture4(F4)["informational"]
    r = S.verify_conjecture4(tower(3, 1, 4))
    assert r["count"] == 16 and r["pass"]


def test_prescription_examples():
    assert S.coeffs_from_prescription(F9.base, (1,)) == (2,)
    assert S.coeffs_from_prescription(tower(5, 1, 1).base, (1,)) == (4,)
    assert S.coeffs_from_prescription(F9.base, (2, 0)) == (1, 2)
    with pytest.raises(ValueError):
        S.coeffs_from_prescription(F4.base, (1, 0))
    r = S.cross_check_prescription(F9, (1,))
    assert r["pass"] and r["solutions"] == 2
    r = S.cross_check_prescription(F9, (2, 0))
    assert r["pass"]
    r = S.cross_check_prescription(tower(5, 1, 3), (0,))
    assert r["solutions"] == 0 and r["pass"]


@pytest.mark.parametrize("cell", [(3, 1, 4), (5, 1, 3), (7, 1, 3), (5, 1, 4)])
def test_prescription_bridge(cell):
    T = tower(*cell)
    for c in [(1,), (1, 0), (2, 1), (1, 2, 3)]:
        if len(c) < T.p and len(c) <= T.n:
            assert S.cross_check_prescription(T, tuple(x % T.q for x in c))["pass"]


@pytest.mark.parametrize("cell", [(2, 1, 4), (3, 1, 3), (2, 2, 2), (5, 1, 2), (2, 1, 6)])
def test_poly_census(cell):
    T = tower(*cell)
    assert S.poly_census(T) == S.run_census(T).countPrimitivePolys


def test_probability_report():
    r = S.probability_report(tower(2, 1, 8))
    assert r["P2BoundOk"] and r["P1BoundOk"]
    assert 0 < r["P3Empirical"] <= 1
    assert S.probability_report(tower(2, 1, 1))["P1Bound"] is None
