"""Integer arithmetic functions: trial-division factoring, Euler phi, Moebius."""

from math import gcd

# trial division is only meant for desk-scale inputs (m <= cap**2)
MAX_INT = (1 << 20) ** 2


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(m):
    """Prime factorization of m as an ordered dict {prime: exponent}."""
    if m < 1:
        raise ValueError(f"factorize: m must be positive, got {m}")
    if m > MAX_INT:
        raise ValueError(f"factorize: m = {m} exceeds trial-division range")
    out = {}
    f = 2
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def euler_phi(m):
    r = m
    for prime in factorize(m):
        r = r // prime * (prime - 1)
    return r


def mobius(m):
    fs = factorize(m)
    if any(e > 1 for e in fs.values()):
        return 0
    return -1 if len(fs) % 2 else 1


def divisors(m):
    ds = [1]
    for prime, e in factorize(m).items():
        ds = [d * prime**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def squarefree_divisors(m):
    ds = [1]
    for prime in factorize(m):
        ds += [d * prime for d in ds]
    return sorted(ds)


def mult_order(a, m):
    """Multiplicative order of a modulo m (gcd(a, m) = 1)."""
    if m == 1:
        return 1
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    for d in divisors(euler_phi(m)):
        if pow(a, d, m) == 1:
            return d
    raise AssertionError("unreachable")


def int_arith(op, m):
    if m == 0:
        raise ValueError("int_arith: m = 0")
    if op == "factorize":
        return factorize(m)
    if op == "euler_phi":
        return euler_phi(m)
    if op == "mobius":
        return mobius(m)
    raise ValueError(f"unknown int_arith op {op!r}")
