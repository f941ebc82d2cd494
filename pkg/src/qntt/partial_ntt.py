"""Incomplete NTT for rings where x^n - a splits only into degree-n/d factors.

A length-n polynomial is viewed as g(x, y) = sum_j c_j(x) y**j with
y = x**(n/d); reducing modulo x**(n/d) - alpha_i substitutes y = alpha_i,
so a d-point transform over the chunk coefficients yields every remainder.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fft import NttPlan, PlanMismatch
from .jsonio import decode_int, encode_int
from .poly import karatsuba, reduce_mod_xn_minus_a, schoolbook_mul
from .roots import (
    TwofoldSet,
    check_twofold,
    is_power_of_two,
    make_twofold_set,
)
from .zm_arith import Modulus


class CongruenceFailed(ArithmeticError):
    """A prime of m does not admit the requested splitting degree."""

    def __init__(self, p: int, d: int):
        super().__init__(
            f"x^n+1 does not split into {d} factors mod {p}: "
            f"need p ≡ {2 * d + 1} or p ≡ 1 (mod {4 * d}), got p ≡ {p % (4 * d)}"
        )
        self.p = p
        self.d = d


class VerificationFailed(ArithmeticError):
    """The factor product did not expand to x^n + 1."""


@dataclass(frozen=True)
class StridedPoly:
    """d chunks of length n/d; chunk j holds coefficients j*n/d .. (j+1)*n/d - 1."""

    y_coeffs: tuple[tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return len(self.y_coeffs)


def _check_sizes(n: int, d: int) -> None:
    if not (is_power_of_two(n) and is_power_of_two(d)) or n % d:
        raise ValueError(f"need powers of two with d | n, got n={n}, d={d}")


def stride(g, n: int, d: int) -> StridedPoly:
    _check_sizes(n, d)
    if len(g) != n:
        raise ValueError(f"expected {n} coefficients, got {len(g)}")
    size = n // d
    return StridedPoly(tuple(tuple(g[j * size : (j + 1) * size]) for j in range(d)))


def unstride(s: StridedPoly, n: int, d: int) -> list[int]:
    _check_sizes(n, d)
    if s.d != d or any(len(c) != n // d for c in s.y_coeffs):
        raise ValueError(f"strided polynomial does not have {d} chunks of length {n // d}")
    return [c for chunk in s.y_coeffs for c in chunk]


def _forward_chunks(chunks, levels, depth, m):
    """The scalar FFT recursion with every scalar replaced by a chunk polynomial."""
    if len(chunks) == 1:
        return [chunks[0]]
    y0 = _forward_chunks(chunks[0::2], levels, depth + 1, m)
    y1 = _forward_chunks(chunks[1::2], levels, depth + 1, m)
    lo, hi = [], []
    for e, o, x in zip(y0, y1, levels[depth]):
        t = [x * c for c in o]
        lo.append([(p + q) % m for p, q in zip(e, t)])
        hi.append([(p - q) % m for p, q in zip(e, t)])
    return lo + hi


def _inverse_chunks(chunks, plan: NttPlan, depth, m):
    d = len(chunks)
    if d == 1:
        return [chunks[0]]
    half, inv_two = d // 2, plan.inv_two
    y0, y1 = [], []
    for p, q, w in zip(chunks[:half], chunks[half:], plan.half_inv[depth]):
        y0.append([(x + y) * inv_two % m for x, y in zip(p, q)])
        y1.append([(x - y) * w % m for x, y in zip(p, q)])
    out = [None] * d
    out[0::2] = _inverse_chunks(y0, plan, depth + 1, m)
    out[1::2] = _inverse_chunks(y1, plan, depth + 1, m)
    return out


def generalized_fft_mul(g, h, plan: NttPlan) -> list[int]:
    """(g * h) rem x^n - a using a d-point transform and Karatsuba remainders.

    The transform runs over Z_m[x]: chunk i of the output is the strided
    polynomial evaluated at y = alpha_i, i.e. g rem x^(n/d) - alpha_i.
    """
    n, d, m = plan.n, plan.d, plan.m.m
    if len(g) != n or len(h) != n:
        raise PlanMismatch(f"expected {n} coefficients")
    size = n // d
    gs = _forward_chunks(stride([c % m for c in g], n, d).y_coeffs, plan.levels, 0, m)
    hs = _forward_chunks(stride([c % m for c in h], n, d).y_coeffs, plan.levels, 0, m)
    prods = [
        reduce_mod_xn_minus_a(karatsuba(p, q, m), size, x, m)
        for p, q, x in zip(gs, hs, plan.points)
    ]
    out = _inverse_chunks(prods, plan, 0, m)
    return unstride(StridedPoly(tuple(tuple(c) for c in out)), n, d)


@dataclass(frozen=True)
class Factorization:
    """x^n + 1 = prod_i (x^(n/d) - alphas[i]) mod m, in twofold index order."""

    m: Modulus
    n: int
    d: int
    alphas: tuple[int, ...]

    def factors(self) -> list[list[int]]:
        """Each factor as a little-endian coefficient list of length n/d + 1."""
        size, mm = self.n // self.d, self.m.m
        return [[(-x) % mm] + [0] * (size - 1) + [1] for x in self.alphas]

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "alphas": [encode_int(x) for x in self.alphas]}

    @classmethod
    def from_json(cls, doc: dict, m) -> Factorization:
        alphas = tuple(decode_int(x) for x in doc["alphas"])
        if len(alphas) != doc["d"]:
            raise ValueError("alphas length does not match d")
        return cls(Modulus.of(m), int(doc["n"]), int(doc["d"]), alphas)


def expand_product(polys, m: int) -> list[int]:
    """Schoolbook product of a list of polynomials."""
    out = [1]
    for f in polys:
        out = schoolbook_mul(out, f, m)
    return out


def factor_xn_plus_1(m, n: int, d: int, rng=None) -> Factorization:
    """Split x^n + 1 mod m into d factors x^(n/d) - alpha_i.

    Every prime p needs 2d | p - 1 (p ≡ 2d+1 or 1 mod 4d); the alphas form a
    certified twofold set of d-th roots of -1, and the expansion is checked.
    """
    m = Modulus.of(m)
    _check_sizes(n, d)
    for p, _ in m.factors:
        if (p - 1) % (2 * d):
            raise CongruenceFailed(p, d)
    if d == 1:
        ts = TwofoldSet(m, m.m - 1, (m.m - 1,), True, True, True)
    else:
        ts = make_twofold_set(m, d, -1, rng)
    result = Factorization(m, n, d, ts.points)
    expected = [1] + [0] * (n - 1) + [1]
    if expand_product(result.factors(), m.m) != expected:
        raise VerificationFailed(f"factors {ts.points} do not expand to x^{n}+1 mod {m.m}")
    return result


def squaring_cascade(alphas, n: int, m: int) -> list[list[int]]:
    """Expanded products at each level of the pairing alpha_j, -alpha_j.

    Level k multiplies x^(2^k n/d) - beta over the first d/2^k values of the
    k-th squared point list; for a twofold list every level expands to the
    same polynomial.
    """
    mm = int(m)
    level = [x % mm for x in alphas]
    if not check_twofold(level, mm):
        raise ValueError("points are not twofold in the given order")
    size = n // len(level)
    out = []
    while True:
        out.append(expand_product([[(-x) % mm] + [0] * (size - 1) + [1] for x in level], mm))
        if len(level) == 1:
            return out
        level = [x * x % mm for x in level[: len(level) // 2]]
        size *= 2

