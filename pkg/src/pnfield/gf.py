"""Prime fields, extension fields F_q = F_p[y]/(m(y)) and towers F_{q^n} over F_q.

Every field element is identified with an integer index: the F_p digits of the
index (least significant first) are the coordinates of the element in the
monomial basis.  For a tower, coefficient i of x^i is the base-field value
with index ``(index // q**i) % q``, so the base field sits inside the tower as
the indices ``0 .. q-1``.

Multiplication goes through exp/log tables built from a generator; addition
works digitwise.  Every table-building step is deterministic, so building the
same (p, v, n) twice yields identical moduli, generators and tables.
"""

from functools import cached_property, lru_cache
from math import gcd

import numpy as np

from . import fqx
from .intarith import factorize, is_prime

CAP = 1 << 20


class CapError(ValueError):
    pass


class _GF:
    """Shared table machinery for a field of ``size = p**deg`` elements."""

    def _build_tables(self):
        p, m, size = self.p, self.deg, self.size
        self.order = size - 1
        self.pw = p ** np.arange(m, dtype=np.int64)
        idx = np.arange(size, dtype=np.int64)
        digits = np.empty((size, m), dtype=np.int64)
        for j in range(m):
            digits[:, j] = idx % p
            idx //= p
        self.digits = digits
        self.gen = self._find_generator()
        self.exp = self._exp_table()
        log = np.full(size, -1, dtype=np.int64)
        log[self.exp] = np.arange(self.order, dtype=np.int64)
        if (log[1:] < 0).any() or log[0] != -1:
            raise AssertionError("generator powers do not cover the nonzero elements")
        self.log = log

    def _slow_pow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _find_generator(self):
        N = self.order
        primes = list(factorize(N)) if N > 1 else []
        for a in range(1, self.size):
            if all(self._slow_pow(a, N // r) != 1 for r in primes):
                return a
        raise AssertionError("no generator found")

    def _exp_table(self):
        p, m, N = self.p, self.deg, self.order
        # multiplication by g as an F_p-linear map on digit column vectors
        M = np.array([self.digits[self._slow_mul(self.gen, int(self.pw[k]))] for k in range(m)],
                     dtype=np.int64).T
        block = min(N, 1024)
        vecs = np.empty((block, m), dtype=np.int64)
        vecs[0] = self.digits[1]
        for t in range(1, block):
            vecs[t] = M @ vecs[t - 1] % p
        MB = np.eye(m, dtype=np.int64)
        for _ in range(block):
            MB = M @ MB % p
        out = np.empty(N, dtype=np.int64)
        pos = 0
        while pos < N:
            take = min(block, N - pos)
            out[pos:pos + take] = vecs[:take] @ self.pw
            pos += take
            vecs = vecs @ MB.T % p
        return out

    # -- scalar arithmetic on indices ------------------------------------

    def encode(self, digits):
        return int(np.dot(np.asarray(digits, dtype=np.int64) % self.p, self.pw))

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.deg == 1:
            return (a + b) % self.p
        return int(((self.digits[a] + self.digits[b]) % self.p) @ self.pw)

    def neg(self, a):
        if self.p == 2:
            return a
        if self.deg == 1:
            return -a % self.p
        return int((-self.digits[a] % self.p) @ self.pw)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % self.order])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp[-self.log[a] % self.order])

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp[self.log[a] * e % self.order])

    def scalar(self, k):
        """Image of the integer k in the prime subfield."""
        return k % self.p

    # -- vectorized arithmetic on index arrays ---------------------------

    def vencode(self, digits):
        return (digits % self.p) @ self.pw

    def vadd(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.vencode(self.digits[a] + self.digits[b])

    def vneg(self, a):
        if self.p == 2:
            return np.asarray(a)
        return self.vencode(-self.digits[a])

    def vsub(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.vencode(self.digits[a] - self.digits[b])

    def vmul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        r = self.exp[(self.log[a] + self.log[b]) % self.order]
        return np.where((a == 0) | (b == 0), 0, r)

    def vpow(self, a, e):
        a = np.asarray(a)
        r = self.exp[self.log[a] * e % self.order]
        zero = 1 if e == 0 else 0
        return np.where(a == 0, zero, r)

    @cached_property
    def all(self):
        return np.arange(self.size, dtype=np.int64)

    # -- absolute trace form over F_p -----------------------------------

    @cached_property
    def abs_trace(self):
        """Absolute trace to F_p of every element (array of residues)."""
        acc = self.all.copy()
        cur = self.all
        for _ in range(self.deg - 1):
            cur = self.vpow(cur, self.p)
            acc = self.vadd(acc, cur)
        if (acc >= self.p).any():
            raise AssertionError("absolute trace left the prime field")
        return acc

    @cached_property
    def trace_gram(self):
        """Gram matrix T(e_k e_l) of the trace form in the monomial basis."""
        basis = [int(x) for x in self.pw]
        return np.array([[int(self.abs_trace[self.mul(a, b)]) for b in basis] for a in basis],
                        dtype=np.int64)

    @cached_property
    def dual_index(self):
        """Index of G.beta for each beta, so that T(beta y) = <G beta, y> mod p."""
        return self.vencode(self.digits @ self.trace_gram)


class FieldCtx(_GF):
    """F_p (v = 1) or F_p[y]/(modulus) with q = p^v."""

    def __init__(self, p, v, modulus=None):
        self.p = p
        self.v = v
        self.modulus = modulus
        self.q = p**v
        self.size = self.q
        self.deg = v
        self._build_tables()

    def _slow_mul(self, a, b):
        p = self.p
        if self.v == 1:
            return a * b % p
        da, db = self.digits[a], self.digits[b]
        prod = [0] * (2 * self.v - 1)
        for i in range(self.v):
            if da[i]:
                for j in range(self.v):
                    prod[i + j] += int(da[i]) * int(db[j])
        mod = self.modulus
        for i in range(len(prod) - 1, self.v - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(self.v + 1):
                    prod[i - self.v + j] -= c * mod[j]
        return sum((prod[i] % p) * p**i for i in range(self.v))

    def residues(self, c):
        return tuple(int(x) for x in self.digits[c])

    def from_residues(self, rs):
        return self.encode(rs)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, v={self.v}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.v, self.modulus) == (other.p, other.v, other.modulus)

    def __hash__(self):
        return hash((self.p, self.v, self.modulus))

    def __reduce__(self):
        return (make_field, (self.p, self.v))


def find_irreducible(F, d):
    """Monic irreducible of degree d whose coefficient vector has least base-q encoding."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    q = F.q
    for code in range(q**d):
        cs = []
        for _ in range(d):
            cs.append(code % q)
            code //= q
        f = tuple(cs) + (1,)
        if fqx.is_irreducible(F, f):
            return f
    raise AssertionError(f"no irreducible of degree {d}")


@lru_cache(maxsize=None)
def make_field(p, v=1, cap=CAP):
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if v < 1:
        raise ValueError(f"v = {v} must be >= 1")
    if p**v > cap:
        raise CapError(f"q = {p}^{v} exceeds cap {cap}")
    if v == 1:
        return FieldCtx(p, 1)
    return FieldCtx(p, v, find_irreducible(make_field(p, 1), v))


class TowerCtx(_GF):
    """F_{q^n} = F_q[x]/(modulus) over a base FieldCtx."""

    def __init__(self, base, n, modulus):
        self.base = base
        self.n = n
        self.modulus = modulus
        self.p = base.p
        self.q = base.q
        self.v = base.v
        self.size = base.q**n
        self.deg = base.v * n
        self._build_tables()

    @property
    def Q(self):
        return self.size

    def coeffs(self, a):
        q = self.q
        return tuple((a // q**i) % q for i in range(self.n))

    def from_coeffs(self, cs):
        if len(cs) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(cs)}")
        r = 0
        for c in reversed(cs):
            if not 0 <= c < self.q:
                raise ValueError(f"coefficient {c} outside base field")
            r = r * self.q + c
        return r

    def _slow_mul(self, a, b):
        B = self.base
        prod = fqx.pmul(B, self.coeffs(a), self.coeffs(b))
        r = fqx.pmod(B, prod, self.modulus)
        return self.from_coeffs(list(r) + [0] * (self.n - len(r)))

    @cached_property
    def xn1_factors(self):
        return fqx.factor_xn_minus_1(self.base, self.n)

    @cached_property
    def frob(self):
        """x -> x^q on every element."""
        return self.vpow(self.all, self.q)

    def frob_power(self, d):
        """x -> x^(q^d) on every element."""
        r = self.all
        for _ in range(d):
            r = self.frob[r]
        return r

    def elt(self, coeffs):
        return Elt(self, self.from_coeffs(list(coeffs)))

    def element(self, index):
        return Elt(self, int(index))

    def elements(self):
        return [Elt(self, i) for i in range(self.size)]

    @property
    def zero(self):
        return Elt(self, 0)

    @property
    def one(self):
        return Elt(self, 1)

    @property
    def generator(self):
        return Elt(self, self.gen)

    def discrete_log(self, a):
        return discrete_log(self, a)

    def __repr__(self):
        return f"TowerCtx(p={self.p}, v={self.v}, n={self.n})"

    def __reduce__(self):
        return (make_tower, (self.base, self.n))


def _build_tower(base, n):
    modulus = find_irreducible(base, n)
    return TowerCtx(base, n, modulus)


@lru_cache(maxsize=256)
def _cached_tower(base, n):
    return _build_tower(base, n)


def make_tower(base, n, cap=CAP, check_cap=True):
    if n < 1:
        raise ValueError(f"n = {n} must be >= 1")
    if check_cap and base.q**n > cap:
        raise CapError(f"q^n = {base.q}^{n} exceeds cap {cap}")
    return _cached_tower(base, n)


def build_tower_uncached(p, v, n):
    """Fresh construction bypassing every cache (used for determinism checks)."""
    F1 = FieldCtx(p, 1)
    F = F1 if v == 1 else FieldCtx(p, v, find_irreducible(F1, v))
    return _build_tower(F, n)


class Elt:
    """Element of a tower: n base-field coefficients of 1, x, ..., x^(n-1)."""

    __slots__ = ("tower", "index")

    def __init__(self, tower, index):
        self.tower = tower
        self.index = int(index)

    @property
    def coeffs(self):
        return self.tower.coeffs(self.index)

    def residues(self):
        B = self.tower.base
        return tuple(B.residues(c) for c in self.coeffs)

    def _other(self, b):
        if isinstance(b, Elt):
            if b.tower is not self.tower and (b.tower.p, b.tower.v, b.tower.n) != (self.tower.p, self.tower.v, self.tower.n):
                raise ValueError("elements live in different towers")
            return b.index
        if isinstance(b, int):
            return self.tower.scalar(b)
        return NotImplemented

    def __add__(self, b):
        return Elt(self.tower, self.tower.add(self.index, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return Elt(self.tower, self.tower.sub(self.index, self._other(b)))

    def __rsub__(self, b):
        return Elt(self.tower, self.tower.sub(self._other(b), self.index))

    def __neg__(self):
        return Elt(self.tower, self.tower.neg(self.index))

    def __mul__(self, b):
        return Elt(self.tower, self.tower.mul(self.index, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return Elt(self.tower, self.tower.mul(self.index, self.tower.inv(self._other(b))))

    def inv(self):
        return Elt(self.tower, self.tower.inv(self.index))

    def __pow__(self, e):
        return Elt(self.tower, self.tower.pow(self.index, e))

    def __eq__(self, b):
        if isinstance(b, int):
            return self.index == self.tower.scalar(b)
        return isinstance(b, Elt) and self.tower.q == b.tower.q and self.tower.n == b.tower.n \
            and self.index == b.index

    def __hash__(self):
        return hash((self.tower.q, self.tower.n, self.index))

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        return f"Elt({format_elt(self)})"


def elt_arith(op, *operands):
    if op == "add":
        a, b = operands
        return a + b
    if op == "sub":
        a, b = operands
        return a - b
    if op == "mul":
        a, b = operands
        return a * b
    if op == "inv":
        (a,) = operands
        return a.inv()
    if op == "pow":
        a, e = operands
        return a**e
    raise ValueError(f"unknown element op {op!r}")


def discrete_log(tower, a):
    idx = a.index if isinstance(a, Elt) else int(a)
    if idx == 0:
        raise ValueError("discrete log of zero")
    return int(tower.log[idx])


def mult_order_index(tower, a):
    return tower.order // gcd(discrete_log(tower, a), tower.order)


# -- element literal syntax: n components joined by ';', v residues by ':'


def format_elt(a):
    T = a.tower
    return ";".join(fqx.format_value(T.base, c) for c in a.coeffs)


def parse_elt(tower, s):
    parts = s.strip().split(";")
    if len(parts) != tower.n:
        raise ValueError(f"element literal {s!r} needs {tower.n} component(s) separated by ';'")
    return tower.elt([fqx.parse_value(tower.base, t) for t in parts])
