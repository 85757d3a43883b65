"""Newton identities over F_q: roots, coefficients and trace power sums.

Coefficients are a_1..a_n of x^n + a_1 x^(n-1) + ... + a_n; power sums are
w_i = sum of i-th powers of the roots, which for the conjugates of alpha is
Tr(alpha^i).  All values are base-field encodings.

The recurrence is the production path.  The closed forms for a_1..a_4 are
kept as cross-checks; the correct ones are

    a_1 = -w_1
    a_2 = (w_1^2 - w_2) / 2
    a_3 = (-w_1^3 + 3 w_1 w_2 - 2 w_3) / 6
    a_4 = (w_1^4 - 6 w_1^2 w_2 + 3 w_2^2 + 8 w_1 w_3 - 6 w_4) / 24

Two other sign patterns for a_3 and one for a_4 are in circulation; they are
kept in PRINTED_VARIANTS so the tests can show they disagree with the
recurrence.
"""

import numpy as np

from .elements import trace
from .gf import Elt


def _val(tower, a):
    return a.index if isinstance(a, Elt) else int(a)


def coeffs_from_roots(tower, roots):
    """a_i = (-1)^i sigma_i(roots), by multiplying out the linear factors."""
    T = tower
    poly = [1]  # highest degree first: x^k + c_1 x^(k-1) + ...
    for r in roots:
        r = T.neg(_val(T, r))
        nxt = poly + [0]
        for i in range(1, len(nxt)):
            nxt[i] = T.add(nxt[i], T.mul(poly[i - 1], r))
        poly = nxt
    return tuple(poly[1:])


def power_sums_from_element(tower, alpha, K):
    if K < 1:
        raise ValueError("K must be >= 1")
    a = _val(tower, alpha)
    return tuple(trace(tower, tower.pow(a, i)).index for i in range(1, K + 1))


def coeffs_to_power_sums(F, a, K):
    """w_k = -k a_k - sum_{i<k} a_i w_{k-i} (k <= n), w_k = -sum_{i<=n} a_i w_{k-i} (k > n)."""
    n = len(a)
    w = []
    for k in range(1, K + 1):
        s = 0
        for i in range(1, min(k - 1, n) + 1):
            s = F.add(s, F.mul(a[i - 1], w[k - i - 1]))
        if k <= n:
            s = F.add(s, F.mul(F.scalar(k), a[k - 1]))
        w.append(F.neg(s))
    return tuple(w)


def power_sums_to_coeffs(F, w, n):
    """a_k = -(w_k + sum_{i<k} a_i w_{k-i}) / k; needs every k <= n invertible mod p."""
    if len(w) < n:
        raise ValueError(f"need at least {n} power sums, got {len(w)}")
    a = []
    for k in range(1, n + 1):
        if k % F.p == 0:
            raise ValueError(f"k = {k} not invertible in characteristic {F.p}")
        s = w[k - 1]
        for i in range(1, k):
            s = F.add(s, F.mul(a[i - 1], w[k - i - 1]))
        a.append(F.neg(F.mul(s, F.inv(F.scalar(k)))))
    return tuple(a)


def _poly_value(F, terms, w, den):
    """Evaluate sum c * prod w_i^e_i, divided by den."""
    acc = 0
    for c, mono in terms:
        t = F.scalar(c % F.p)
        for i, e in mono:
            t = F.mul(t, F.pow(w[i - 1], e) if e else 1)
        acc = F.add(acc, t)
    return F.mul(acc, F.inv(F.scalar(den)))


# (coefficient, ((i, exponent), ...)) terms over the common denominator k!
CLOSED_FORMS = {
    1: ([(-1, ((1, 1),))], 1),
    2: ([(1, ((1, 2),)), (-1, ((2, 1),))], 2),
    3: ([(-1, ((1, 3),)), (3, ((1, 1), (2, 1))), (-2, ((3, 1),))], 6),
    4: ([(1, ((1, 4),)), (-6, ((1, 2), (2, 1))), (3, ((2, 2),)), (8, ((1, 1), (3, 1))), (-6, ((4, 1),))], 24),
}

PRINTED_VARIANTS = {
    "a3-list": (3, [(-1, ((1, 3),)), (-1, ((1, 1), (2, 1))), (2, ((3, 1),))], 6),
    "a3-prose": (3, [(2, ((1, 3),)), (-1, ((1, 1), (2, 1))), (-1, ((3, 1),))], 6),
    "a4-list": (4, [(2, ((1, 4),)), (4, ((1, 2), (2, 1))), (-3, ((2, 2),)), (4, ((1, 1), (3, 1))), (-6, ((4, 1),))], 24),
}


def closed_form_coeff(F, k, w):
    if k not in CLOSED_FORMS:
        raise ValueError(f"closed form only for k = 1..4, got {k}")
    if F.p <= k:
        raise ValueError(f"closed form for a_{k} needs p > {k}, got p = {F.p}")
    if len(w) < k:
        raise ValueError(f"need {k} power sums")
    terms, den = CLOSED_FORMS[k]
    return _poly_value(F, terms, w, den)


def printed_variant(F, name, w):
    k, terms, den = PRINTED_VARIANTS[name]
    if F.p <= k:
        raise ValueError(f"needs p > {k}")
    return _poly_value(F, terms, w, den)


def random_monic(F, n, rng):
    return tuple(int(c) for c in rng.integers(0, F.q, size=n))


def roundtrip_ok(F, n, count=1000, seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        a = random_monic(F, n, rng)
        if power_sums_to_coeffs(F, coeffs_to_power_sums(F, a, n), n) != a:
            return False
    return True
