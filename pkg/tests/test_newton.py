import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pnfield import newton as NW
from pnfield.gf import make_field, make_tower, parse_elt


def tower(p, v, n):
    return make_tower(make_field(p, v), n)


F4 = tower(2, 1, 2)
F9 = tower(3, 1, 2)


def test_coeffs_from_roots_examples():
    assert NW.coeffs_from_roots(F4, [parse_elt(F4, "0;1"), parse_elt(F4, "1;1")]) == (1, 1)
    assert NW.coeffs_from_roots(F9, [F9.zero] * 3) == (0, 0, 0)
    assert NW.coeffs_from_roots(F9, [parse_elt(F9, "1;1"), parse_elt(F9, "1;2")]) == (1, 2)


def test_power_sums_from_element_examples():
    assert NW.power_sums_from_element(F9, parse_elt(F9, "1;1"), 2) == (2, 0)
    assert NW.power_sums_from_element(F9, F9.zero, 4) == (0, 0, 0, 0)
    T = tower(3, 1, 4)
    assert NW.power_sums_from_element(T, T.one, 5) == (1,) * 5
    with pytest.raises(ValueError):
        NW.power_sums_from_element(F9, F9.one, 0)


def test_coeffs_to_power_sums_examples():
    assert NW.coeffs_to_power_sums(make_field(2), (1, 1), 3) == (1, 1, 0)
    assert NW.coeffs_to_power_sums(make_field(3), (0, 0, 0), 3) == (0, 0, 0)
    assert NW.coeffs_to_power_sums(make_field(3), (1, 2), 2) == (2, 0)


def test_power_sums_to_coeffs_examples():
    assert NW.power_sums_to_coeffs(make_field(3), (2, 0), 2) == (1, 2)
    with pytest.raises(ValueError, match="k = 2 not invertible"):
        NW.power_sums_to_coeffs(make_field(2), (1, 1), 2)
    with pytest.raises(ValueError):
        NW.power_sums_to_coeffs(make_field(5), (1,), 2)


@pytest.mark.parametrize("pv", [(3, 1), (5, 1), (7, 1), (5, 2), (11, 1)])
def test_roundtrip(pv):
    F = make_field(*pv)
    n = min(F.p - 1, 3)
    assert NW.roundtrip_ok(F, n, 1000, seed=0)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=6), st.integers(1, 12))
def test_forward_matches_roots(a, K):
    # power sums from the coefficients agree with summing powers of the roots in a splitting field
    F = make_field(7)
    n = len(a)
    T = tower(7, 1, 1)
    # roots in F_7 only when the polynomial splits; build the polynomial from chosen roots instead
    roots = [x % 7 for x in a]
    coeffs = NW.coeffs_from_roots(T, roots)
    w = NW.coeffs_to_power_sums(F, coeffs, K)
    want = tuple(sum(pow(r, k, 7) for r in roots) % 7 for k in range(1, K + 1))
    assert w == want
    assert len(coeffs) == n


def test_closed_forms_examples():
    F3 = make_field(3)
    assert NW.closed_form_coeff(F3, 2, (2, 0)) == 2
    for p in (3, 5, 7):
        F = make_field(p)
        for w1 in range(p):
            assert NW.closed_form_coeff(F, 1, (w1,)) == F.neg(w1)
    with pytest.raises(ValueError):
        NW.closed_form_coeff(make_field(3), 3, (1, 1, 1))
    with pytest.raises(ValueError):
        NW.closed_form_coeff(make_field(7), 5, (1,) * 5)


@pytest.mark.parametrize("pv", [(5, 1), (7, 1), (11, 1), (5, 2), (3, 1), (13, 1)])
def test_closed_forms_match_recurrence(pv):
    F = make_field(*pv)
    rng = np.random.default_rng(0)
    top = min(4, F.p - 1)
    for _ in range(500):
        w = tuple(int(c) for c in rng.integers(0, F.q, size=top))
        a = NW.power_sums_to_coeffs(F, w, top)
        for k in range(1, top + 1):
            assert NW.closed_form_coeff(F, k, w) == a[k - 1]


def test_printed_variants_disagree_with_recurrence():
    F = make_field(7)
    rng = np.random.default_rng(0)
    bad = {name: 0 for name in NW.PRINTED_VARIANTS}
    for _ in range(200):
        w = tuple(int(c) for c in rng.integers(0, 7, size=4))
        a = NW.power_sums_to_coeffs(F, w, 4)
        for name, (k, _, _) in NW.PRINTED_VARIANTS.items():
            bad[name] += NW.printed_variant(F, name, w) != a[k - 1]
    assert all(v > 100 for v in bad.values())


def test_cubic_over_f5():
    F5 = make_field(5)
    T = tower(5, 1, 3)
    for a in (7, 31, 88):
        w = NW.power_sums_from_element(T, a, 3)
        assert NW.closed_form_coeff(F5, 3, w) == NW.power_sums_to_coeffs(F5, w, 3)[2]
