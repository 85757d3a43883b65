"""Polynomials over F_q and the arithmetic functions of F_q[x].

A polynomial is a tuple of base-field values, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  Base-field values are the
integer encodings used by :class:`pnfield.gf.FieldCtx`.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .intarith import factorize, mult_order


def normalize(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f):
    return len(f) - 1


def is_monic(f):
    return bool(f) and f[-1] == 1


def encode(F, f):
    """Integer key sum(c_i q^i); orders polynomials of equal degree."""
    r = 0
    for c in reversed(f):
        r = r * F.q + c
    return r


def sort_key(F, f):
    return (degree(f), encode(F, f))


def padd(F, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return normalize(out)


def pneg(F, f):
    return tuple(F.neg(c) for c in f)


def psub(F, f, g):
    return padd(F, f, pneg(F, g))


def pscale(F, c, f):
    if c == 0:
        return ()
    return normalize(F.mul(c, a) for a in f)


def pmul(F, f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return normalize(out)


def pdivmod(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return (), tuple(f)
    lead_inv = F.inv(g[-1])
    quo = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = F.mul(c, lead_inv)
        quo[i - dg] = c
        for j, b in enumerate(g):
            if b:
                r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, b))
    return normalize(quo), normalize(r[:dg])


def pmod(F, f, g):
    return pdivmod(F, f, g)[1]


def monic(F, f):
    if not f:
        return ()
    return pscale(F, F.inv(f[-1]), f)


def pgcd(F, f, g):
    while g:
        f, g = g, pmod(F, f, g)
    return monic(F, f)


def ppow(F, f, e):
    r = (1,)
    while e:
        if e & 1:
            r = pmul(F, r, f)
        f = pmul(F, f, f)
        e >>= 1
    return r


def ppowmod(F, f, e, m):
    r = pmod(F, (1,), m)
    f = pmod(F, f, m)
    while e:
        if e & 1:
            r = pmod(F, pmul(F, r, f), m)
        f = pmod(F, pmul(F, f, f), m)
        e >>= 1
    return r


def peval(F, f, x):
    r = 0
    for c in reversed(f):
        r = F.add(F.mul(r, x), c)
    return r


def x_pow_q_chain(F, f, k):
    """x^(q^k) mod f."""
    r = pmod(F, (0, 1), f)
    for _ in range(k):
        r = ppowmod(F, r, F.q, f)
    return r


def is_irreducible(F, f):
    """f irreducible iff x^(q^d) = x mod f and gcd(x^(q^(d/r)) - x, f) = 1 for primes r | d."""
    d = degree(f)
    if d < 1:
        return False
    if d == 1:
        return True
    x = pmod(F, (0, 1), f)
    if x_pow_q_chain(F, f, d) != x:
        return False
    for r in factorize(d):
        h = psub(F, x_pow_q_chain(F, f, d // r), (0, 1))
        if degree(pgcd(F, h, f)) != 0:
            return False
    return True


def poly_arith(F, op, *operands):
    if op == "add":
        return padd(F, *operands)
    if op == "mul":
        return pmul(F, *operands)
    if op == "divmod":
        return pdivmod(F, *operands)
    if op == "gcd":
        return pgcd(F, *operands)
    raise ValueError(f"unknown poly op {op!r}")


def xn_minus_1(F, n):
    return normalize([F.neg(1)] + [0] * (n - 1) + [1])


# ---------------------------------------------------------------------------
# factorizations


@dataclass(frozen=True)
class Factorization:
    field: object
    factors: tuple  # ((monic irreducible, multiplicity), ...) in canonical order

    def product(self):
        r = (1,)
        for f, e in self.factors:
            r = pmul(self.field, r, ppow(self.field, f, e))
        return r

    def divisors(self):
        """All monic divisors in increasing (degree, encoding) order."""
        return divisors_of(self)


@dataclass(frozen=True)
class Divisor:
    poly: tuple
    exps: tuple  # exponent of each factor of the parent factorization
    factorization: Factorization


def divisors_of(fact):
    F = fact.field
    out = []
    for exps in product(*(range(e + 1) for _, e in fact.factors)):
        poly = (1,)
        sub = []
        for (f, _), k in zip(fact.factors, exps):
            if k:
                poly = pmul(F, poly, ppow(F, f, k))
                sub.append((f, k))
        out.append(Divisor(poly, exps, Factorization(F, tuple(sub))))
    out.sort(key=lambda d: sort_key(F, d.poly))
    return out


def mobius_poly(f, fact):
    if any(e > 1 for _, e in fact.factors):
        return 0
    return -1 if len(fact.factors) % 2 else 1


def euler_phi_poly(f, fact):
    """|(F_q[x]/(f))^*| = prod over factors g^e of (q^deg g - 1) q^(deg g (e - 1))."""
    q = fact.field.q
    r = 1
    for g, e in fact.factors:
        k = q ** degree(g)
        r *= (k - 1) * k ** (e - 1)
    return r


def omega_distinct(fact):
    return len(fact.factors)


@lru_cache(maxsize=None)
def factor_xn_minus_1(F, n):
    """Factor x^n - 1 over F by q-cyclotomic cosets.

    With n = p^a m and p not dividing m, x^n - 1 = (x^m - 1)^(p^a); each coset
    C of <q> in Z/m gives the irreducible factor prod_{j in C} (x - zeta^j)
    where zeta is a primitive m-th root of unity in F_{q^ord_m(q)}.
    """
    from .gf import make_tower

    if n < 1:
        raise ValueError("n must be >= 1")
    p, q = F.p, F.q
    m, mult = n, 1
    while m % p == 0:
        m //= p
        mult *= p
    if m == 1:
        return Factorization(F, (((F.neg(1), 1), mult),))
    k = mult_order(q % m, m)
    T = make_tower(F, k, check_cap=False)
    zeta = T.pow(T.gen, (T.size - 1) // m)
    seen = set()
    factors = []
    for j in range(m):
        if j in seen:
            continue
        coset = []
        i = j
        while i not in coset:
            coset.append(i)
            i = i * q % m
        seen.update(coset)
        poly = [1]
        for i in coset:
            root = T.neg(T.pow(zeta, i))
            # multiply by (x + root)
            nxt = [0] * (len(poly) + 1)
            for t, c in enumerate(poly):
                nxt[t + 1] = T.add(nxt[t + 1], c)
                nxt[t] = T.add(nxt[t], T.mul(c, root))
            poly = nxt
        if any(c >= q for c in poly):
            raise AssertionError("cyclotomic factor has coefficients outside F_q")
        factors.append((tuple(poly), mult))
    factors.sort(key=lambda fe: sort_key(F, fe[0]))
    return Factorization(F, tuple(factors))


# ---------------------------------------------------------------------------
# text format: "c0,c1,...", base values as v residues joined by ':'


def format_value(F, c):
    return ":".join(str(r) for r in F.residues(c))


def parse_value(F, s):
    parts = s.strip().split(":")
    if len(parts) != F.v:
        raise ValueError(f"base-field literal {s!r} needs {F.v} residue(s)")
    rs = [int(x) for x in parts]
    if any(not 0 <= r < F.p for r in rs):
        raise ValueError(f"base-field literal {s!r} has residue outside [0, {F.p - 1}]")
    return F.from_residues(rs)


def format_poly(F, f):
    return ",".join(format_value(F, c) for c in f) if f else "0"


def parse_poly(F, s):
    s = s.strip()
    if s in ("", "0"):
        return ()
    return normalize(parse_value(F, t) for t in s.split(","))
