"""Multiplicative and additive characters of F_{q^n}, characteristic functions, exponential sums.

Multiplicative characters are chi_k(g^t) = exp(2 pi i k t / (q^n - 1)) with
chi_k(0) = 0; additive characters are psi_b(y) = exp(2 pi i T(b y) / p), T the
absolute trace to F_p.  The additive order of psi_b over a subfield K = F_{q^d}
is the least monic divisor h of x^e - 1 over K with psi_b(h o y) = 1 for all y.

Characteristic functions are evaluated two ways:

* scalar functions (``c_primitive`` ...) sum the characters one by one for a
  single element;
* ``*_values`` functions return the same sums for every element at once.  The
  inner sum over all characters of a given order is a discrete Fourier
  transform of the indicator of that set of characters, so it is computed
  with numpy's FFT over Z/(q^n - 1) (multiplicative) or over (Z/p)^(vn)
  (additive, after moving the trace form to the standard dot product).

The additive sum over characters of order f is evaluated at the canonical
preimage of [(x^e - 1)/f] o alpha, i.e. psi is read as a character of the image
subgroup [(x^e - 1)/f] o F_{q^n}, which is isomorphic to F_{q^n}/(f o F_{q^n}).
Evaluating a character of F_{q^n} directly at [(x^e - 1)/f] o alpha
(``argument="literal"``) gives the same numbers when f divides x^e - 1 once,
and collapses to zero when f is a repeated factor.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, pi

import numpy as np

from . import fqx
from .elements import module, trace_table
from .gf import Elt
from .intarith import euler_phi, factorize, mobius, squarefree_divisors

TOL = 1e-6
UNIT_TOL = 1e-12


class IndicatorError(ArithmeticError):
    """A characteristic-function sum did not land on 0 or 1."""


def _idx(a):
    return a.index if isinstance(a, Elt) else int(a)


@dataclass(frozen=True)
class MultChar:
    index: int
    modulus: int  # q^n - 1

    @property
    def order(self):
        return self.modulus // gcd(self.index, self.modulus)

    def __call__(self, tower, a):
        return mult_char_value(tower, self, a)


@dataclass(frozen=True)
class AddChar:
    beta: int  # tower index of the parameter
    d: int = 1  # order is taken over F_{q^d}

    def __call__(self, tower, y):
        return add_char_value(tower, self, y)


def unit_root(num, den):
    return complex(np.exp(2j * pi * (num % den) / den))


def mult_char_value(tower, chi, a):
    x = _idx(a)
    if x == 0:
        return 0j
    return unit_root(chi.index * int(tower.log[x]), tower.order)


def add_char_value(tower, psi, y):
    t = int(tower.abs_trace[tower.mul(psi.beta, _idx(y))])
    return unit_root(t, tower.p)


def base_add_char(field, y):
    """Canonical additive character of a FieldCtx."""
    return unit_root(int(field.abs_trace[y]), field.p)


# ---------------------------------------------------------------------------
# character groups and orders


def add_char_order(tower, psi, d=None):
    """Additive order by the exhaustive test psi(h o xi) = 1 for all xi."""
    d = psi.d if d is None else d
    M = module(tower, d)
    tr = tower.abs_trace
    for div in M.divisors:
        image = M.act(div.poly)
        if not tr[tower.vmul(psi.beta, image)].any():
            return div.poly
    raise AssertionError("no divisor of x^e - 1 kills the character")


@lru_cache(maxsize=64)
def add_order_table(tower, d=1):
    """Position in ``module(tower, d).divisors`` of Ord(psi_b) for every b.

    psi_b is trivial on h o F_{q^n} iff T(b w) = 0 for w running over the images
    of an F_p-basis, so each divisor costs m dot products per b.
    """
    M = module(tower, d)
    T = tower
    dual = T.digits[T.dual_index]
    basis = np.array([int(x) for x in T.pw], dtype=np.int64)
    out = np.full(T.size, -1, dtype=np.int64)
    for k, div in enumerate(M.divisors):
        W = T.digits[M.act(div.poly, basis)]
        trivial = ~((dual @ W.T) % T.p).any(axis=1)
        out[trivial & (out < 0)] = k
    assert (out >= 0).all()
    return out


def char_group(tower, kind, selector, d=1):
    """All characters of the given order; multiplicative by index, additive by beta."""
    if kind in ("mult", "multiplicative"):
        N = tower.order
        if selector < 1 or N % selector:
            raise ValueError(f"order {selector} does not divide q^n - 1 = {N}")
        return [MultChar(N // selector * j, N) for j in range(selector) if gcd(j, selector) == 1]
    if kind in ("add", "additive"):
        M = module(tower, d)
        f = fqx.monic(M.sub, tuple(selector))
        pos = [k for k, div in enumerate(M.divisors) if div.poly == f]
        if not pos:
            raise ValueError(f"{selector} does not divide x^{M.e} - 1")
        betas = np.flatnonzero(add_order_table(tower, d) == pos[0])
        return [AddChar(int(b), d) for b in betas]
    raise ValueError(f"unknown character kind {kind!r}")


# ---------------------------------------------------------------------------
# order-class sums for all arguments at once


@lru_cache(maxsize=256)
def mult_order_sums(tower, d):
    """S[t] = sum over chi of order d of chi(g^t), t in [0, q^n - 2]."""
    N = tower.order
    ind = np.zeros(N)
    ind[[N // d * j for j in range(d) if gcd(j, d) == 1]] = 1.0
    return N * np.fft.ifft(ind)


def mult_sums_at(tower, d, values=None):
    vals = tower.all if values is None else np.asarray(values)
    S = mult_order_sums(tower, d)
    lg = tower.log[vals]
    return np.where(lg >= 0, S[np.maximum(lg, 0)], 0)


def additive_sums(field, mask):
    """S[y] = sum over b in mask of exp(2 pi i T(b y) / p) for every element y."""
    p, m = field.p, field.deg
    cnt = np.bincount(field.dual_index[np.asarray(mask)], minlength=field.size).astype(float)
    grid = cnt.reshape((p,) * m)
    return (field.size * np.fft.ifftn(grid)).reshape(-1)


@lru_cache(maxsize=256)
def add_order_sums(tower, d, k):
    """Sum over psi of order ``module(tower, d).divisors[k]`` at every element."""
    return additive_sums(tower, add_order_table(tower, d) == k)


@lru_cache(maxsize=256)
def _image(tower, d, k, argument):
    """Argument fed to the order-k character sum: [(x^e-1)/f] o alpha, or its canonical preimage."""
    M = module(tower, d)
    G = M.act(M.quotient(M.divisors[k]))
    if argument == "literal":
        return G
    if argument != "image":
        raise ValueError(f"unknown argument mode {argument!r}")
    uniq, first = np.unique(G, return_index=True)
    pre = np.zeros(tower.size, dtype=np.int64)
    pre[uniq] = first
    return pre[G]


def _sub_phi(M, div):
    return fqx.euler_phi_poly(div.poly, div.factorization)


def _sub_mobius(div):
    return fqx.mobius_poly(div.poly, div.factorization)


# ---------------------------------------------------------------------------
# characteristic functions, all elements


def primitive_values(tower, form="sum"):
    N = tower.order
    P1 = euler_phi(N) / N
    if form == "sum":
        total = np.zeros(tower.size, dtype=complex)
        for d in squarefree_divisors(N):
            total += mobius(d) / euler_phi(d) * mult_sums_at(tower, d)
        return P1 * total
    if form == "product":
        total = np.ones(tower.size, dtype=complex)
        total[0] = 0  # chi(0) = 0 for every character
        for r in factorize(N):
            total *= 1 - mult_sums_at(tower, r) / (r - 1)
        return P1 * total
    raise ValueError(f"unknown form {form!r}")


def normal_values(tower, form="sum", argument="image", d=1):
    """Characteristic function of elements normal over F_{q^d}, for every element."""
    M = module(tower, d)
    K = M.sub.q
    phi_all = fqx.euler_phi_poly(M.xe1, M.fact)
    if form == "sum":
        total = np.zeros(tower.size, dtype=complex)
        for k, div in enumerate(M.divisors):
            mu = _sub_mobius(div)
            if mu == 0:
                continue
            S = add_order_sums(tower, d, k)
            total += mu / _sub_phi(M, div) * S[_image(tower, d, k, argument)]
        return phi_all / K**M.e * total
    if form == "product":
        total = np.ones(tower.size, dtype=complex)
        for k, div in enumerate(M.divisors):
            if len(div.factorization.factors) != 1 or div.factorization.factors[0][1] != 1:
                continue
            size = K ** fqx.degree(div.poly)
            S = add_order_sums(tower, d, k)
            total *= (1 - 1 / size) * (1 - S[_image(tower, d, k, argument)] / (size - 1))
        return total
    raise ValueError(f"unknown form {form!r}")


def primitive_normal_values(tower, argument="image"):
    """Double sum over (d | q^n - 1, f | x^n - 1) of the product character sums."""
    N = tower.order
    M = module(tower, 1)
    P1 = euler_phi(N) / N
    P2 = fqx.euler_phi_poly(M.xe1, M.fact) / tower.size
    mult = [(mobius(d) / euler_phi(d), mult_sums_at(tower, d)) for d in squarefree_divisors(N)]
    add = []
    for k, div in enumerate(M.divisors):
        mu = _sub_mobius(div)
        if mu:
            S = add_order_sums(tower, 1, k)
            add.append((mu / _sub_phi(M, div), S[_image(tower, 1, k, argument)]))
    total = np.zeros(tower.size, dtype=complex)
    for wa, A in mult:
        for wb, B in add:
            total += wa * wb * A * B
    return P1 * P2 * total


def completely_normal_values(tower, form="sum", argument="image"):
    total = np.ones(tower.size, dtype=complex)
    for d in range(1, tower.n + 1):
        if tower.n % d == 0:
            total *= normal_values(tower, form, argument, d)
    return total


def completely_normal_closed_values(tower):
    """Closed form for n = p^u: product over i < u of the trace test to F_{q^(p^i)}."""
    p, n, q = tower.p, tower.n, tower.q
    u = 0
    while p**u < n:
        u += 1
    if p**u != n or u == 0:
        raise ValueError(f"closed form needs n = p^u with u >= 1, got n = {n}")
    total = np.ones(tower.size, dtype=complex)
    for i in range(u):
        di = p**i
        qi = q**di
        sub = np.flatnonzero(tower.frob_power(di) == tower.all)
        assert len(sub) == qi
        # absolute trace of the subfield F_{q^(p^i)} over F_p
        tr = np.zeros(tower.size, dtype=np.int64)
        cur = tower.all
        for _ in range(tower.v * di):
            tr = tower.vadd(tr, cur)
            cur = tower.vpow(cur, p)
        lam = np.zeros(tower.size, dtype=complex)
        nz = sub[sub != 0]
        for z in sub:
            t = tr[tower.vmul(nz, int(z))]
            lam[z] = np.exp(2j * pi * t / p).sum()
        Ti = trace_table(tower, di)
        total *= (1 - 1 / qi) * (1 - lam[Ti] / (qi - 1))
    return total


def to_indicator(values, strict=True):
    """Round sums to integers; return (ints, max deviation)."""
    values = np.asarray(values)
    r = np.rint(values.real)
    dev = float(np.max(np.abs(values - r))) if len(values) else 0.0
    bad = dev >= TOL or not np.isin(r, (0, 1)).all()
    if strict and bad:
        raise IndicatorError(f"character sum is not an indicator (max deviation {dev:.3g})")
    return r.astype(np.int64), dev


# ---------------------------------------------------------------------------
# characteristic functions, one element, characters summed one by one


def _round_one(z):
    r = round(z.real)
    if abs(z - r) >= TOL or r not in (0, 1):
        raise IndicatorError(f"character sum {z} is not an indicator")
    return int(r)


def _mult_class_sum(tower, d, a):
    return sum(mult_char_value(tower, chi, a) for chi in char_group(tower, "mult", d))


def _add_class_sum(tower, d, k, y):
    betas = np.flatnonzero(add_order_table(tower, d) == k)
    t = tower.abs_trace[tower.vmul(betas, int(y))]
    return complex(np.exp(2j * pi * t / tower.p).sum())


def c_primitive_raw(tower, a):
    N = tower.order
    s = sum(mobius(d) / euler_phi(d) * _mult_class_sum(tower, d, a) for d in squarefree_divisors(N))
    return euler_phi(N) / N * s


def c_primitive(tower, a):
    if _idx(a) == 0:
        raise ValueError("c_primitive needs a nonzero element")
    return _round_one(c_primitive_raw(tower, a))


def c_primitive_product(tower, a):
    if _idx(a) == 0:
        raise ValueError("c_primitive_product needs a nonzero element")
    N = tower.order
    z = euler_phi(N) / N
    for r in factorize(N):
        z *= 1 - _mult_class_sum(tower, r, a) / (r - 1)
    return _round_one(z)


def _normal_terms(tower, a, d, argument):
    M = module(tower, d)
    x = _idx(a)
    for k, div in enumerate(M.divisors):
        y = int(_image(tower, d, k, argument)[x])
        yield k, div, _add_class_sum(tower, d, k, y)


def c_normal_raw(tower, a, form="sum", argument="image", d=1):
    M = module(tower, d)
    K = M.sub.q
    if form == "sum":
        s = 0j
        for k, div, S in _normal_terms(tower, a, d, argument):
            mu = _sub_mobius(div)
            if mu:
                s += mu / _sub_phi(M, div) * S
        return fqx.euler_phi_poly(M.xe1, M.fact) / K**M.e * s
    if form == "product":
        z = 1 + 0j
        for k, div, S in _normal_terms(tower, a, d, argument):
            fs = div.factorization.factors
            if len(fs) == 1 and fs[0][1] == 1:
                size = K ** fqx.degree(div.poly)
                z *= (1 - 1 / size) * (1 - S / (size - 1))
        return z
    raise ValueError(f"unknown form {form!r}")


def c_normal(tower, a, form="sum", argument="image"):
    return _round_one(c_normal_raw(tower, a, form, argument))


def c_primitive_normal(tower, a):
    N = tower.order
    M = module(tower, 1)
    A = [(mobius(d) / euler_phi(d), _mult_class_sum(tower, d, a)) for d in squarefree_divisors(N)]
    B = [(_sub_mobius(div) / _sub_phi(M, div), S)
         for k, div, S in _normal_terms(tower, a, 1, "image") if _sub_mobius(div)]
    s = sum(wa * wb * sa * sb for wa, sa in A for wb, sb in B)
    z = euler_phi(N) / N * fqx.euler_phi_poly(M.xe1, M.fact) / tower.size * s
    return _round_one(z)


def c_completely_normal(tower, a):
    z = 1 + 0j
    for d in range(1, tower.n + 1):
        if tower.n % d == 0:
            z *= c_normal_raw(tower, a, "sum", "image", d)
    return _round_one(z)


# ---------------------------------------------------------------------------
# exponential sums and point counting


def restricted_char_sum(tower, chi):
    """Sum of chi(xi) over xi with Tr(xi) != 0."""
    if chi.index % tower.order == 0:
        raise ValueError("restricted_char_sum needs a nontrivial character")
    xs = np.flatnonzero(trace_table(tower) != 0)
    t = tower.log[xs] * chi.index % tower.order
    return complex(np.exp(2j * pi * t / tower.order).sum())


def restricted_sums_all(tower):
    """Restricted sums for every character index k (k = 0 included)."""
    N = tower.order
    tr = trace_table(tower)
    ind = (tr[tower.exp] != 0).astype(float)
    return N * np.fft.ifft(ind)


def poly_values(tower, f):
    """f(x) for every x in F_{q^n}, f a polynomial over F_q."""
    acc = np.zeros(tower.size, dtype=np.int64)
    for c in reversed(f):
        acc = tower.vadd(tower.vmul(acc, tower.all), np.full(tower.size, c, dtype=np.int64))
    return acc


def is_dth_power_times_const(F, g, d):
    """True if g = c h^d for some constant c and h in F_q[x] (constant g included).

    A Galois-stable root multiset with every multiplicity divisible by d gives
    h over F_q, so searching monic h of degree deg(g)/d over F_q is enough.
    """
    dg = fqx.degree(g)
    if dg <= 0:
        return True
    if dg % d:
        return False
    k = dg // d
    if F.q**k > 1 << 16:
        raise ValueError("degeneracy search too large")
    target = fqx.monic(F, g)
    for low in product(range(F.q), repeat=k):
        if fqx.ppow(F, tuple(low) + (1,), d) == target:
            return True
    return False


def weil_degenerate(F, g, order):
    """The mixed-sum bound needs chi(g(x)) to be a nontrivial character of x."""
    return is_dth_power_times_const(F, g, order)


def _shift(F, f, a):
    """f(x + a)."""
    r = ()
    for c in reversed(f):
        r = fqx.padd(F, fqx.pmul(F, r, (a, 1)), (c,) if c else ())
    return r


def _canonical_pair(F, f, g):
    # |sum| is unchanged by f -> f + c and by x -> x + a
    keys = []
    for a in range(F.q):
        fs = _shift(F, f, a)
        fs = fqx.normalize((0,) + fs[1:]) if fs else ()
        keys.append((fs, _shift(F, g, a)))
    return min(keys)


def weil_pairs(F, sample=10, seed=0):
    """(f, g) pairs with deg f, deg g <= 3 and g monic of degree >= 1.

    Over F_2 every pair is covered up to adding a constant to f and shifting x,
    neither of which changes |sum|; for larger q a few fixed pairs plus a seeded
    random sample.
    """
    if F.q == 2:
        fs = [fqx.normalize(c) for c in product(range(2), repeat=4)]
        gs = [tuple(c) + (1,) for k in (1, 2, 3) for c in product(range(2), repeat=k)]
        return sorted({_canonical_pair(F, f, g) for f in fs for g in gs})
    out = [((0, 1), (0, 1)), ((0, 0, 1), (0, 1)), ((0, 0, 0, 1), (1, 0, 1)),
           ((), (1, 1, 0, 1)), ((0, 1), (0, 0, 1)), ((0, 1), (0, 0, 0, 1))]
    rng = np.random.default_rng(seed)
    for _ in range(sample):
        df, dg = int(rng.integers(0, 4)), int(rng.integers(1, 4))
        f = fqx.normalize(int(c) for c in rng.integers(0, F.q, size=df + 1))
        g = tuple(int(c) for c in rng.integers(0, F.q, size=dg)) + (1,)
        out.append((f, g))
    return out


def weil_sum(tower, psi, chi, f, g):
    """Return (sum_x psi(f(x)) chi(g(x)), degenerate flag)."""
    if psi.beta == 0:
        raise ValueError("weil_sum needs a nontrivial additive character")
    if chi.index % tower.order == 0:
        raise ValueError("weil_sum needs a nontrivial multiplicative character")
    fv = poly_values(tower, f)
    gv = poly_values(tower, g)
    ta = tower.abs_trace[tower.vmul(psi.beta, fv)]
    lg = tower.log[gv]
    z = np.exp(2j * pi * ta / tower.p) * np.exp(2j * pi * (lg * chi.index % tower.order) / tower.order)
    z = np.where(lg >= 0, z, 0)
    return complex(z.sum()), weil_degenerate(tower.base, g, chi.order)


def weil_bound(tower, f, g):
    return (fqx.degree(f) + fqx.degree(g) - 1) * tower.size**0.5


def weil_sums_all(tower, f, g):
    """Mixed sums for every (beta, k): array R[b', k] where b' = G b is the dual index."""
    fv = poly_values(tower, f)
    gv = poly_values(tower, g)
    lg = tower.log[gv]
    keep = lg >= 0
    N, Q, p, m = tower.order, tower.size, tower.p, tower.deg
    H = np.zeros((Q, N))
    np.add.at(H, (fv[keep], lg[keep]), 1.0)
    H = H.reshape((p,) * m + (N,))
    R = np.fft.ifftn(H, axes=tuple(range(m))) * Q
    R = np.fft.ifft(R, axis=-1) * N
    return R.reshape(Q, N)


def point_count_raw(tower, power, a):
    """(1/q) sum_xi sum_{x in F_q} psi(x (Tr(xi^power) - a)) with psi the canonical character of F_q."""
    B = tower.base
    t = trace_table(tower, 1, tower.vpow(tower.all, power))
    hist = np.bincount(t, minlength=B.q)
    xs = np.arange(B.q)
    total = 0j
    for val in np.flatnonzero(hist):
        diff = B.sub(int(val), a)
        z = B.abs_trace[B.vmul(xs, diff)]
        total += hist[val] * np.exp(2j * pi * z / B.p).sum()
    return total / B.q


def point_count(tower, power, a):
    z = point_count_raw(tower, power, a)
    r = round(z.real)
    if abs(z - r) >= TOL:
        raise IndicatorError(f"point count {z} is not an integer")
    return int(r)


def base_point_sums(field):
    """U[z] = (1/q) sum_{x in F_q} psi(x z) for every z in F_q."""
    return additive_sums(field, np.ones(field.size, dtype=bool)) / field.size


def theorem7_table(tower):
    """Per multiplicative order d > 1: largest |restricted sum| against q^((n-1)/2)."""
    T = tower
    N = T.order
    bound = T.q ** ((T.n - 1) / 2)
    R = np.abs(restricted_sums_all(T))
    ks = np.arange(N)
    orders = N // np.gcd(ks, N)
    rows = []
    for d in sorted(set(orders.tolist()) - {1}):
        vals = R[orders == d]
        rows.append({"order": d, "characters": int(len(vals)), "maxAbs": float(vals.max()),
                     "bound": bound, "violations": int((vals > bound + 1e-9).sum())})
    return rows


def theorem8_row(tower, f, g):
    """Largest mixed sum over nontrivial psi and nontrivial chi with chi(g) nondegenerate."""
    T = tower
    N = T.order
    R = np.abs(weil_sums_all(T, f, g))[1:]  # dual index 0 is the trivial psi
    ks = np.arange(N)
    orders = N // np.gcd(ks, N)
    keep = orders > 1
    for d in set(orders.tolist()) - {1}:
        if weil_degenerate(T.base, g, d):
            keep &= orders != d
    bound = (max(fqx.degree(f), 0) + fqx.degree(g) - 1) * T.size**0.5
    vals = R[:, keep]
    mx = float(vals.max()) if vals.size else 0.0
    return {"f": f, "g": g, "maxAbs": mx, "bound": bound,
            "degenerateChars": int((~keep[1:]).sum()),
            "violations": int((vals > bound + 1e-9).sum())}


def theorem7_identity_deviation(tower):
    """Max deviation of |restricted sum| from its exact value.

    Since sum over all nonzero xi of chi vanishes, the restricted sum equals
    -(1/q) sum_{c != 0} conj(chi)(c) G(chi), G the Gauss sum of chi with the
    canonical additive character.  So it is 0 unless chi is trivial on F_q^*,
    where its modulus is (q - 1) q^(n/2 - 1).
    """
    T = tower
    N = T.order
    R = np.abs(restricted_sums_all(T))
    ks = np.arange(1, N)
    want = np.where(ks % (T.q - 1) == 0, (T.q - 1) * T.q ** (T.n / 2 - 1), 0.0)
    return float(np.abs(R[1:] - want).max()) if N > 1 else 0.0
