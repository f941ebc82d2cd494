"""Independent reference implementations used to derive expected values.

Nothing here imports the package; each routine is the most literal form of
its definition so that agreement with the fast code means something.
"""

from math import gcd


def wrapped_product(g, h, n, a, m):
    """sum g_i h_j x^(i+j) with x^n replaced by a, as a direct double loop."""
    out = [0] * n
    for i, gi in enumerate(g):
        for j, hj in enumerate(h):
            k = i + j
            scale = 1
            while k >= n:
                k -= n
                scale *= a
            out[k] = (out[k] + scale * gi * hj) % m
    return out


def convolution(g, h, m):
    """Plain product in Z_m[x]."""
    if not g or not h:
        return []
    out = [0] * (len(g) + len(h) - 1)
    for i, gi in enumerate(g):
        for j, hj in enumerate(h):
            out[i + j] = (out[i + j] + gi * hj) % m
    return out


def remainder(g, divisor, m):
    """Long division by a monic divisor (little-endian)."""
    r = [c % m for c in g]
    k = len(divisor) - 1
    for top in range(len(r) - 1, k - 1, -1):
        q = r[top]
        if q:
            for i, c in enumerate(divisor):
                r[top - k + i] = (r[top - k + i] - q * c) % m
    return (r + [0] * k)[:k]


def evaluate(g, x, m):
    return sum(c * pow(x, i, m) for i, c in enumerate(g)) % m


def roots_of(m, n, a):
    return [x for x in range(m) if pow(x, n, m) == a % m]


def units(m):
    return [x for x in range(1, m) if gcd(x, m) == 1]


def is_twofold(points, m):
    """The quantified definition: i = j mod 2^(log d - k) => x_i^(2^k) = x_j^(2^k)."""
    d = len(points)
    log_d = d.bit_length() - 1
    for k in range(log_d + 1):
        step = 1 << (log_d - k)
        for i in range(d):
            for j in range(i % step, d, step):
                if pow(points[i], 1 << k, m) != pow(points[j], 1 << k, m):
                    return False
    return True


def prime_factors(m):
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    return out
