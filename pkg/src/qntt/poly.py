"""Dense polynomials over Z_m and the quadratic / Karatsuba multipliers.

Coefficient lists are little-endian (``g[i]`` is the x**i coefficient) and
every returned coefficient is reduced into [0, m).
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import add, index, sub

from .jsonio import decode_int, encode_int

# Below this length karatsuba falls back to schoolbook. Tunable.
KARATSUBA_THRESHOLD = 32


@dataclass(frozen=True)
class Poly:
    """Coefficients plus the modulus they live in; used for I/O."""

    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", index(self.m))
        coeffs = tuple(index(c) for c in self.coeffs)
        for c in coeffs:
            if not 0 <= c < self.m:
                raise ValueError(f"coefficient {c} outside [0, {self.m})")
        object.__setattr__(self, "coeffs", coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def padded(self, n: int) -> list[int]:
        if len(self.coeffs) > n:
            raise ValueError(f"polynomial has {len(self.coeffs)} coefficients, ring degree is {n}")
        return list(self.coeffs) + [0] * (n - len(self.coeffs))

    def to_json(self) -> dict:
        return {"m": encode_int(self.m), "coeffs": [encode_int(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc: dict) -> Poly:
        return cls(decode_int(doc["m"]), tuple(decode_int(c) for c in doc["coeffs"]))


def _next_power_of_two(n: int) -> int:
    return 1 << max(0, n - 1).bit_length()


def _product(g, h) -> list[int]:
    """Unreduced quadratic product over Z of two nonempty lists."""
    lh = len(h)
    out = [0] * (len(g) + lh - 1)
    for i, gi in enumerate(g):
        if gi:
            out[i : i + lh] = map(add, out[i : i + lh], map(gi.__mul__, h))
    return out


def schoolbook_mul(g, h, m) -> list[int]:
    """The plain double loop; length len(g) + len(h) - 1, empty if either is."""
    m = index(m)
    if not g or not h:
        return []
    return [c % m for c in _product(g, h)]


def reduce_mod_xn_minus_a(g, n: int, a: int, m) -> list[int]:
    """Remainder of g modulo x**n - a as a length-n list.

    Each coefficient at i >= n folds into i - n scaled by a; walking down
    from the top handles i >= 2n as well.
    """
    m = index(m)
    a %= m
    if len(g) <= 2 * n:
        low, high = g[:n], g[n:]
        out = [(x + a * y) % m for x, y in zip(low, high)]
        out += [x % m for x in low[len(high) :]]
        return out + [0] * (n - len(out))
    out = [c % m for c in g]
    for i in range(len(out) - 1, n - 1, -1):
        c = out[i]
        if c:
            out[i - n] = (out[i - n] + a * c) % m
    return out[:n]


def schoolbook_mul_mod(g, h, n: int, a: int, m) -> list[int]:
    if len(g) > n or len(h) > n:
        raise ValueError(f"operands longer than the ring degree {n}")
    return reduce_mod_xn_minus_a(schoolbook_mul(g, h, m), n, a, m)


def _karatsuba(g, h, threshold):
    # Works over Z; callers reduce once at the end (lazy reduction).
    n = len(g)
    if n < threshold or n == 1:
        return _product(g, h)
    half = n // 2
    g_lo, g_hi = g[:half], g[half:]
    h_lo, h_hi = h[:half], h[half:]
    a = _karatsuba(g_hi, h_hi, threshold)
    b = _karatsuba(g_lo, h_lo, threshold)
    c = _karatsuba(list(map(add, g_lo, g_hi)), list(map(add, h_lo, h_hi)), threshold)
    # b occupies [0, n-1), a occupies [n, 2n-1); the middle term straddles both
    out = b + [0] + a
    mid = slice(half, half + n - 1)
    out[mid] = map(sub, map(add, out[mid], c), map(add, a, b))
    return out


def karatsuba(g, h, m, threshold: int = KARATSUBA_THRESHOLD) -> list[int]:
    """Product in Z_m[x] by recursive upper/lower splitting.

    Ragged inputs are zero-padded to a common power-of-two length; the
    result is trimmed to len(g) + len(h) - 1.
    """
    m = index(m)
    if not g or not h:
        return []
    size = _next_power_of_two(max(len(g), len(h)))
    gp = [x % m for x in g] + [0] * (size - len(g))
    hp = [x % m for x in h] + [0] * (size - len(h))
    return [c % m for c in _karatsuba(gp, hp, max(1, threshold))[: len(g) + len(h) - 1]]


def _dual_karatsuba(g, h, sign, threshold):
    # Over Z like _karatsuba; the caller reduces.
    n = len(g)
    if n < threshold or n == 1:
        full = _product(g, h)
        low, high = full[:n], full[n:]
        return list(map(sub, low, map((sign).__mul__, high))) + low[len(high) :]
    g0, g1 = g[0::2], g[1::2]
    h0, h1 = h[0::2], h[1::2]
    a = _dual_karatsuba(g1, h1, sign, threshold)
    b = _dual_karatsuba(g0, h0, sign, threshold)
    c = _dual_karatsuba(list(map(add, g0, g1)), list(map(add, h0, h1)), sign, threshold)
    out = [0] * n
    # a(x^2) x^2: its top term x^n wraps around to -sign
    shifted = [-sign * a[-1]] + a[:-1]
    out[0::2] = map(add, b, shifted)
    out[1::2] = map(sub, c, map(add, a, b))
    return out


def dual_karatsuba_mod(g, h, n: int, sign: int, m, threshold: int = KARATSUBA_THRESHOLD) -> list[int]:
    """Product in Z_m[x]/<x**n + sign> with the even/odd split.

    ``sign=+1`` is the negacyclic ring x**n + 1, ``sign=-1`` the cyclic one.
    The wrap-around happens at every recursion level.
    """
    m = index(m)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if n < 1 or n & (n - 1):
        raise ValueError(f"n={n} is not a power of two")
    if len(g) > n or len(h) > n:
        raise ValueError(f"operands longer than the ring degree {n}")
    gp = [x % m for x in g] + [0] * (n - len(g))
    hp = [x % m for x in h] + [0] * (n - len(h))
    return [c % m for c in _dual_karatsuba(gp, hp, sign, max(1, threshold))]
