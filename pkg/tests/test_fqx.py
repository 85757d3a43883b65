from itertools import product

import pytest

from pnfield import fqx
from pnfield.census import cells
from pnfield.gf import make_field
from pnfield.intarith import divisors, euler_phi, factorize, int_arith, mobius


def F(p, v=1):
    return make_field(p, v)


def test_poly_arith_examples():
    F2, F3 = F(2), F(3)
    assert fqx.poly_arith(F2, "gcd", (1, 0, 1), (1, 1)) == (1, 1)
    assert fqx.poly_arith(F3, "mul", (1, 1), (2, 1)) == (2, 0, 1)
    assert fqx.poly_arith(F2, "divmod", (1, 0, 0, 1), (1, 1)) == ((1, 1, 1), ())
    assert fqx.poly_arith(F3, "add", (1, 2), (2, 1, 1)) == (0, 0, 1)
    with pytest.raises(ZeroDivisionError):
        fqx.poly_arith(F2, "divmod", (1, 1), ())


def test_degree_sentinel_and_monic():
    assert fqx.degree(()) == -1
    assert fqx.is_monic((2, 1)) and not fqx.is_monic((1, 2))
    assert fqx.monic(F(3), (1, 2)) == (2, 1)


def test_factor_examples():
    assert fqx.factor_xn_minus_1(F(2), 2).factors == (((1, 1), 2),)
    assert fqx.factor_xn_minus_1(F(3), 2).factors == (((1, 1), 1), ((2, 1), 1))
    assert fqx.factor_xn_minus_1(F(2), 3).factors == (((1, 1), 1), ((1, 1, 1), 1))


def _vp(n, p):
    k = 1
    while n % (k * p) == 0:
        k *= p
    return k


def test_factorization_invariants_all_cells():
    for p, v, n in cells(4096):
        B = F(p, v)
        fact = fqx.factor_xn_minus_1(B, n)
        assert fact.product() == fqx.xn_minus_1(B, n)
        keys = [fqx.sort_key(B, f) for f, _ in fact.factors]
        assert keys == sorted(set(keys))
        for f, e in fact.factors:
            assert fqx.is_monic(f) and fqx.is_irreducible(B, f)
            assert e == _vp(n, p)


def test_mobius_phi_omega_examples():
    F2, F3 = F(2), F(3)
    one = fqx.Factorization(F2, ())
    assert fqx.mobius_poly((1,), one) == 1
    assert fqx.mobius_poly((1, 1), fqx.Factorization(F2, (((1, 1), 1),))) == -1
    f2 = fqx.factor_xn_minus_1(F2, 2)
    assert fqx.mobius_poly(f2.product(), f2) == 0
    f3 = fqx.factor_xn_minus_1(F2, 3)
    assert fqx.mobius_poly(f3.product(), f3) == 1
    assert fqx.euler_phi_poly(f2.product(), f2) == 2
    g = fqx.factor_xn_minus_1(F3, 2)
    assert fqx.euler_phi_poly(g.product(), g) == 4
    assert fqx.euler_phi_poly(f3.product(), f3) == 3
    assert fqx.omega_distinct(f2) == 1 and fqx.omega_distinct(g) == 2 and fqx.omega_distinct(f3) == 2


def test_phi_matches_coprime_count():
    for p, v, n in cells(4096):
        B = F(p, v)
        fact = fqx.factor_xn_minus_1(B, n)
        xn1 = fact.product()
        count = sum(
            fqx.degree(fqx.pgcd(B, fqx.normalize(c), xn1)) == 0
            for c in product(range(B.q), repeat=n)
        )
        assert count == fqx.euler_phi_poly(xn1, fact)


def test_mobius_sum_vanishes():
    for p, v, n in cells(4096):
        fact = fqx.factor_xn_minus_1(F(p, v), n)
        total = sum(fqx.mobius_poly(d.poly, d.factorization) for d in fact.divisors())
        assert total == 0
        assert sum(fqx.euler_phi_poly(d.poly, d.factorization) for d in fact.divisors()) == F(p, v).q ** n


def test_divisors_sorted_and_complete():
    B = F(2)
    fact = fqx.factor_xn_minus_1(B, 6)
    ds = [d.poly for d in fact.divisors()]
    assert len(ds) == 9
    assert ds[0] == (1,) and ds[-1] == fqx.xn_minus_1(B, 6)
    assert [fqx.sort_key(B, d) for d in ds] == sorted(fqx.sort_key(B, d) for d in ds)
    for d in ds:
        assert fqx.pmod(B, fqx.xn_minus_1(B, 6), d) == ()


def test_int_arith_examples():
    assert int_arith("euler_phi", 15) == 8
    assert int_arith("mobius", 8) == 0
    assert int_arith("factorize", 255) == {3: 1, 5: 1, 17: 1}
    with pytest.raises(ValueError):
        int_arith("factorize", 0)


def test_int_functions_brute():
    from math import gcd
    for m in range(1, 300):
        assert euler_phi(m) == sum(gcd(k, m) == 1 for k in range(1, m + 1))
        assert sum(mobius(d) for d in divisors(m)) == (m == 1)
        r = 1
        for q, e in factorize(m).items():
            r *= q**e
        assert r == m


def test_poly_text_format():
    B = F(3, 2)
    f = (1, 0, 5)
    s = fqx.format_poly(B, f)
    assert s == "1:0,0:0,2:1"
    assert fqx.parse_poly(B, s) == f
    assert fqx.format_poly(B, ()) == "0"
    with pytest.raises(ValueError):
        fqx.parse_value(B, "3:0")
