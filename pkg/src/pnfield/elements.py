"""Element predicates and maps: traces, linearized action, orders, normality, minimal polynomials.

Most functions come in two flavours: a scalar one taking an :class:`Elt`, and a
``*_table`` one returning a numpy array indexed by element index, used by the
exhaustive sweeps.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import fqx
from .gf import Elt, make_field, mult_order_index


def _idx(a):
    return a.index if isinstance(a, Elt) else int(a)


def trace(tower, a, d=1):
    """Tr_{F_{q^n}/F_{q^d}}(a) = sum_{i < n/d} a^(q^(d i))."""
    if d < 1 or tower.n % d:
        raise ValueError(f"d = {d} does not divide n = {tower.n}")
    step = tower.frob_power(d)
    x = _idx(a)
    acc = 0
    for _ in range(tower.n // d):
        acc = tower.add(acc, x)
        x = int(step[x])
    return Elt(tower, acc)


def trace_table(tower, d=1, values=None):
    if d < 1 or tower.n % d:
        raise ValueError(f"d = {d} does not divide n = {tower.n}")
    step = tower.frob_power(d)
    x = tower.all if values is None else np.asarray(values)
    acc = np.zeros_like(x)
    for _ in range(tower.n // d):
        acc = tower.vadd(acc, x)
        x = step[x]
    return acc


class FrobeniusModule:
    """F_{q^n} as a K[x]-module for the subfield K = F_{q^d}; x acts as z -> z^|K|.

    K is realized as its own FieldCtx (the base itself when d = 1) together with
    an embedding of its elements into the tower, so that polynomials over K can
    act on tower elements.
    """

    def __init__(self, tower, d):
        if tower.n % d:
            raise ValueError(f"d = {d} does not divide n = {tower.n}")
        self.tower = tower
        self.d = d
        self.e = tower.n // d
        if d == 1:
            self.sub = tower.base
            self.embed = np.arange(tower.q, dtype=np.int64)
        else:
            self.sub = make_field(tower.p, tower.v * d)
            self.embed = _embedding(tower, self.sub)
        step = tower.frob_power(d)
        # conj[i] = z^(|K|^i) for i = 0..e (x^e acts as the identity)
        conj = [tower.all]
        for _ in range(self.e):
            conj.append(step[conj[-1]])
        self.conj = conj
        self.fact = fqx.factor_xn_minus_1(self.sub, self.e)
        self.divisors = self.fact.divisors()
        self.xe1 = fqx.xn_minus_1(self.sub, self.e)

    @cached_property
    def fp_basis(self):
        """F_p-basis of K, as tower indices."""
        return [int(self.embed[int(b)]) for b in self.sub.pw]

    def act(self, h, values=None):
        """h o z = sum h_i z^(|K|^i) for every z in ``values`` (default: all elements).

        Any degree is accepted since x^e acts as the identity.
        """
        T = self.tower
        vals = T.all if values is None else np.asarray(values)
        acc = np.zeros_like(vals)
        for i, c in enumerate(h):
            if c:
                acc = T.vadd(acc, T.vmul(int(self.embed[c]), self.conj[i % self.e][vals]))
        return acc

    def act_one(self, h, x):
        return int(self.act(h, np.array([_idx(x)]))[0])

    def quotient(self, div):
        """(x^e - 1) / div over K."""
        q, r = fqx.pdivmod(self.sub, self.xe1, div.poly)
        assert not r
        return q

    @cached_property
    def q_order_table(self):
        """Position in ``divisors`` of the additive order of every element."""
        T = self.tower
        out = np.full(T.size, -1, dtype=np.int64)
        for k, div in enumerate(self.divisors):
            hit = (self.act(div.poly) == 0) & (out < 0)
            out[hit] = k
        assert (out >= 0).all()
        return out

    def rank_table(self):
        """F_p-rank of {b z^(|K|^i)}: equals deg_p(F_{q^n}) iff z is normal over K."""
        T = self.tower
        m = T.deg
        rows = []
        for i in range(self.e):
            for b in self.fp_basis:
                rows.append(T.vmul(b, self.conj[i]))
        ranks = np.empty(T.size, dtype=np.int64)
        chunk = max(1, (1 << 22) // (m * m))
        for s in range(0, T.size, chunk):
            mats = np.stack([T.digits[r[s:s + chunk]] for r in rows], axis=1)
            ranks[s:s + chunk] = batch_rank_mod_p(mats, T.p)
        return ranks

    @cached_property
    def normal_mask(self):
        return self.rank_table() == self.tower.deg


def _embedding(tower, K):
    """Tower index of every element of K, sending y to the least root of K's modulus."""
    T = tower
    val = np.zeros(T.size, dtype=np.int64)
    for c in reversed(K.modulus):
        val = T.vadd(T.vmul(val, T.all), np.full(T.size, c, dtype=np.int64))
    roots = np.flatnonzero(val == 0)
    if len(roots) == 0:
        raise AssertionError("subfield modulus has no root in the tower")
    theta = int(roots[0])
    embed = np.zeros(K.size, dtype=np.int64)
    for r in range(K.deg):
        embed = T.vadd(embed, T.vmul(K.digits[:, r], T.pow(theta, r)))
    return embed


@lru_cache(maxsize=64)
def module(tower, d=1):
    return FrobeniusModule(tower, d)


def batch_rank_mod_p(mats, p):
    """Ranks of a stack of matrices over F_p (shape (B, r, c))."""
    A = np.array(mats, dtype=np.int64) % p
    B, r, c = A.shape
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(x, p - 2, p) for x in range(1, p)]
    row = np.zeros(B, dtype=np.int64)
    rows = np.arange(r)
    batch = np.arange(B)
    for col in range(c):
        cand = (A[:, :, col] != 0) & (rows[None, :] >= row[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = batch[has]
        piv = np.argmax(cand[has], axis=1)
        tgt = row[has]
        pr = A[b, piv].copy()
        A[b, piv] = A[b, tgt]
        A[b, tgt] = pr * inv[pr[:, col]][:, None] % p
        pivrow = A[b, tgt]
        factors = A[b, :, col].copy()
        factors[np.arange(len(b)), tgt] = 0
        A[b] = (A[b] - factors[:, :, None] * pivrow[:, None, :]) % p
        row[has] += 1
        if (row >= r).all():
            break
    return row


def rank_mod_p(mat, p):
    return int(batch_rank_mod_p(np.asarray(mat)[None], p)[0])


@dataclass(frozen=True)
class LinearizedAction:
    poly: tuple
    tower: object

    def __call__(self, a):
        return linearized_apply(self, a)


def linearized_apply(act, a):
    T = act.tower
    return Elt(T, module(T, 1).act_one(act.poly, a))


def mult_order(tower, a):
    return mult_order_index(tower, a)


def is_primitive(tower, a):
    return _idx(a) != 0 and mult_order(tower, a) == tower.order


def primitive_mask(tower):
    lg = tower.log
    return (lg >= 0) & (np.gcd(lg, tower.order) == 1)


def q_order_poly(tower, a):
    """Least monic divisor h of x^n - 1 (scanning by degree) with h o a = 0."""
    M = module(tower, 1)
    x = _idx(a)
    for div in M.divisors:
        if M.act_one(div.poly, x) == 0:
            return div.poly
    raise AssertionError("x^n - 1 does not annihilate the element")


def normal_rank(tower, a, d=1):
    M = module(tower, d)
    T = tower
    x = _idx(a)
    rows = [T.digits[T.mul(b, int(M.conj[i][x]))] for i in range(M.e) for b in M.fp_basis]
    return rank_mod_p(np.array(rows), T.p)


def is_normal(tower, a, method="rank"):
    if method == "rank":
        return normal_rank(tower, a, 1) == tower.deg
    if method == "order":
        return q_order_poly(tower, a) == module(tower, 1).xe1
    raise ValueError(f"unknown normality method {method!r}")


def normal_mask(tower, method="rank"):
    M = module(tower, 1)
    if method == "rank":
        return M.normal_mask
    if method == "order":
        top = len(M.divisors) - 1
        return M.q_order_table == top
    raise ValueError(f"unknown normality method {method!r}")


def is_completely_normal(tower, a):
    return all(normal_rank(tower, a, d) == tower.deg for d in _divisors(tower.n))


def completely_normal_mask(tower):
    out = np.ones(tower.size, dtype=bool)
    for d in _divisors(tower.n):
        out &= module(tower, d).normal_mask
    return out


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def conjugates(tower, a):
    x = _idx(a)
    out = []
    while x not in out:
        out.append(x)
        x = int(tower.frob[x])
    return out


def min_poly(tower, a):
    """prod over distinct conjugates of (x - a^(q^i)), as a polynomial over F_q."""
    T = tower
    poly = [1]
    for c in conjugates(T, a):
        root = T.neg(c)
        nxt = [0] * (len(poly) + 1)
        for t, k in enumerate(poly):
            nxt[t + 1] = T.add(nxt[t + 1], k)
            nxt[t] = T.add(nxt[t], T.mul(k, root))
        poly = nxt
    if any(k >= T.q for k in poly):
        raise AssertionError("minimal polynomial has coefficients outside F_q")
    return tuple(poly)
