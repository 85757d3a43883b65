import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from pnfield import fqx
from pnfield.gf import (CapError, build_tower_uncached, discrete_log, elt_arith, find_irreducible,
                        format_elt, make_field, make_tower, parse_elt)

SMALL = [(2, 1, 2), (3, 1, 2), (2, 1, 4), (2, 2, 2), (5, 1, 2), (2, 3, 2), (3, 1, 3), (7, 1, 2), (2, 1, 12)]


def tower(p, v, n):
    return make_tower(make_field(p, v), n)


def test_find_irreducible_examples():
    assert find_irreducible(make_field(2), 2) == (1, 1, 1)
    assert find_irreducible(make_field(3), 2) == (1, 0, 1)
    assert find_irreducible(make_field(2), 4) == (1, 1, 0, 0, 1)


@pytest.mark.parametrize("p,d", [(2, 3), (2, 5), (3, 3), (5, 2), (2, 6)])
def test_find_irreducible_matches_trial_division(p, d):
    want = oracles.min_irreducible(oracles.PrimeField(p), d)
    assert find_irreducible(make_field(p), d) == tuple(want)


def test_make_field():
    assert make_field(2).q == 2
    F4 = make_field(2, 2)
    assert F4.modulus == (1, 1, 1) and F4.q == 4
    assert make_field(3, 2).modulus == (1, 0, 1)
    with pytest.raises(ValueError):
        make_field(4)
    with pytest.raises(CapError):
        make_field(2, 21)


def test_make_tower_examples():
    F4 = tower(2, 1, 2)
    assert format_elt(F4.generator) == "0;1"
    F9 = tower(3, 1, 2)
    assert F9.modulus == (1, 0, 1)
    assert format_elt(F9.generator) == "1;1"
    assert [format_elt(a) for a in F9.elements()[:5]] == ["0;0", "1;0", "2;0", "0;1", "1;1"]
    F2 = tower(2, 1, 1)
    assert F2.generator.index == 1
    with pytest.raises(CapError):
        make_tower(make_field(2), 21)


def test_elt_arith_examples():
    F4 = tower(2, 1, 2)
    w = parse_elt(F4, "0;1")
    assert format_elt(elt_arith("mul", w, w)) == "1;1"
    assert elt_arith("mul", w, w + 1) == 1
    F9 = tower(3, 1, 2)
    assert format_elt(elt_arith("inv", parse_elt(F9, "1;1"))) == "2;1"
    with pytest.raises(ZeroDivisionError):
        elt_arith("inv", F9.zero)
    assert elt_arith("pow", parse_elt(F9, "1;1"), 4) == 2
    assert elt_arith("pow", parse_elt(F9, "1;1"), -1) == parse_elt(F9, "2;1")


def test_discrete_log_examples():
    F9 = tower(3, 1, 2)
    assert discrete_log(F9, F9.one) == 0
    assert discrete_log(F9, F9.elt([2, 0])) == 4
    F4 = tower(2, 1, 2)
    assert discrete_log(F4, parse_elt(F4, "1;1")) == 2
    with pytest.raises(ValueError):
        discrete_log(F4, F4.zero)


def test_literals_with_extension_base():
    T = tower(2, 2, 2)
    a = parse_elt(T, "1:0;0:1")
    assert format_elt(a) == "1:0;0:1"
    with pytest.raises(ValueError):
        parse_elt(T, "1;0")
    with pytest.raises(ValueError):
        parse_elt(T, "1:0")


@pytest.mark.parametrize("cell", SMALL)
def test_tables_against_slow_multiplication(cell):
    T = tower(*cell)
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, T.size, size=(200, 2)):
        assert T.mul(int(a), int(b)) == T._slow_mul(int(a), int(b))


@pytest.mark.parametrize("cell", SMALL)
def test_field_axioms(cell):
    T = tower(*cell)
    a = T.all[1:]
    inv = np.array([T.inv(int(x)) for x in a])
    assert (T.vmul(a, inv) == 1).all()
    assert (T.vpow(T.all, T.size) == T.all).all()
    rng = np.random.default_rng(0)
    x, y, z = rng.integers(0, T.size, size=(3, 1000))
    assert (T.vadd(T.vadd(x, y), z) == T.vadd(x, T.vadd(y, z))).all()
    assert (T.vmul(x, T.vadd(y, z)) == T.vadd(T.vmul(x, y), T.vmul(x, z))).all()


@pytest.mark.parametrize("cell", SMALL)
def test_generator_and_log_table(cell):
    T = tower(*cell)
    powers = [T.pow(T.gen, t) for t in range(T.order)]
    assert sorted(powers) == list(range(1, T.size))
    assert all(T.log[x] == t for t, x in enumerate(powers))
    from pnfield.intarith import factorize
    for r in factorize(T.order) if T.order > 1 else []:
        assert T.pow(T.gen, T.order // r) != 1


@pytest.mark.parametrize("cell", [(2, 2, 2), (3, 1, 3), (2, 1, 6), (5, 1, 2)])
def test_generator_matches_oracle(cell):
    OT = oracles.build(*cell)
    assert OT.code(oracles.generator(OT)) == tower(*cell).gen


@pytest.mark.parametrize("cell", [(2, 1, 8), (3, 2, 3), (5, 1, 4)])
def test_rebuild_is_identical(cell):
    a, b = build_tower_uncached(*cell), build_tower_uncached(*cell)
    assert a.modulus == b.modulus and a.gen == b.gen
    assert (a.log == b.log).all() and (a.exp == b.exp).all()
    assert a.modulus == tower(*cell).modulus


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.integers(-200, 200))
def test_pow_rules(a, b, e):
    T = tower(3, 4, 1)  # F_81 as a degree-1 tower
    A, B = T.element(a), T.element(b)
    if a and b:
        assert (A * B) ** e == (A ** e) * (B ** e)
    if a:
        assert A ** e * A ** (-e) == 1
    assert (A + B) ** 3 == A ** 3 + B ** 3


def test_base_field_embedded_as_constants():
    T = tower(2, 2, 3)
    B = T.base
    for a in range(B.q):
        for b in range(B.q):
            assert T.mul(a, b) == B.mul(a, b)
            assert T.add(a, b) == B.add(a, b)


def test_modulus_irreducible_everywhere():
    from pnfield.census import cells
    for p, v, n in cells(4096):
        T = tower(p, v, n)
        assert fqx.is_irreducible(T.base, T.modulus)
