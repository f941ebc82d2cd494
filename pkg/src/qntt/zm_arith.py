"""Modular arithmetic over Z_m for odd m below 2**62.

Residues are plain Python ints kept in [0, m). Every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from operator import index

MAX_MODULUS = 1 << 62
TRIAL_DIVISION_LIMIT = 1 << 20
FACTORIZE_LIMIT = 1 << 40

# Deterministic for every n < 3.3 * 10**24, which covers 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class ModulusError(ValueError):
    """Raised for an unusable modulus (even, out of range, bad factors)."""


class NotInvertible(ArithmeticError):
    """x has no inverse mod m. ``gcd`` is the witness common factor."""

    def __init__(self, x: int, m: int, g: int):
        super().__init__(f"{x} is not invertible mod {m} (gcd {g})")
        self.x = x
        self.m = m
        self.gcd = g


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 2**64."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Modulus:
    """An odd modulus m together with its prime factorization.

    ``factors`` is a tuple of ``(p, e)`` pairs with strictly increasing odd
    primes and ``prod(p**e) == m``. ``operator.index`` and ``int`` give m.
    """

    m: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        m = self.m
        if not 3 <= m < MAX_MODULUS:
            raise ModulusError(f"modulus {m} outside [3, 2**62)")
        if m % 2 == 0:
            raise ModulusError(f"modulus {m} is even; 2 must be invertible")
        factors = tuple((int(p), int(e)) for p, e in self.factors)
        object.__setattr__(self, "factors", factors)
        primes = [p for p, _ in factors]
        if primes != sorted(set(primes)):
            raise ModulusError(f"primes {primes} not strictly increasing")
        for p, e in factors:
            if e < 1 or p == 2 or not is_prime(p):
                raise ModulusError(f"bad factor {p}^{e}")
        if prod(p**e for p, e in factors) != m:
            raise ModulusError(f"factors {factors} do not multiply to {m}")

    @classmethod
    def of(cls, m: int | Modulus) -> Modulus:
        """Coerce an int (factorized by trial division) or pass through."""
        if isinstance(m, Modulus):
            return m
        return factorize(m)

    @classmethod
    def from_factors(cls, factors) -> Modulus:
        factors = tuple(sorted((int(p), int(e)) for p, e in factors))
        return cls(prod(p**e for p, e in factors), factors)

    @property
    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.factors]

    def __index__(self) -> int:
        return self.m

    def __int__(self) -> int:
        return self.m

    def __str__(self) -> str:
        return str(self.m)


def mod_pow(base: int, exp: int, m: int | Modulus) -> int:
    """base**exp mod m; ``exp == 0`` gives 1 mod m."""
    if exp < 0:
        raise ValueError("negative exponent; use mod_inverse first")
    return pow(base, exp, index(m))


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, r, s)`` with ``g = gcd(a, b) >= 0`` and ``a*r + b*s == g``."""
    if a == 0 and b == 0:
        raise ValueError("ext_gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


def mod_inverse(x: int, m: int | Modulus) -> int:
    m = index(m)
    g, r, _ = ext_gcd(x % m, m)
    if g != 1:
        raise NotInvertible(x, m, g)
    return r % m


def legendre_symbol(u: int, p: int) -> int:
    """Euler's criterion: +1 residue, -1 nonresidue, 0 when p divides u."""
    t = pow(u, (p - 1) // 2, p)
    if t == 0:
        return 0
    if t == 1:
        return 1
    if t == p - 1:
        return -1
    raise ValueError(f"{p} is not an odd prime")


def crt_combine(residues) -> int:
    """Combine ``[(value, modulus), ...]`` into the unique x mod prod(moduli)."""
    residues = [(v, q) for v, q in residues]
    if not residues:
        raise ValueError("no residues to combine")
    for i in range(len(residues)):
        for j in range(i + 1, len(residues)):
            qi, qj = residues[i][1], residues[j][1]
            if gcd(qi, qj) != 1:
                raise ValueError(f"moduli {qi} and {qj} are not coprime")
    x, big = 0, 1
    for v, q in residues:
        # x stays correct mod big; add a multiple of big fixing it mod q
        t = (v - x) * mod_inverse(big % q, q) % q if q > 1 else 0
        x += big * t
        big *= q
    return x % big


def factorize(m: int) -> Modulus:
    """Trial-division factorization for odd 3 <= m < 2**40."""
    m = index(m)
    if m % 2 == 0:
        raise ModulusError(f"modulus {m} is even; 2 must be invertible")
    if m < 3:
        raise ModulusError(f"modulus {m} below 3")
    if m >= FACTORIZE_LIMIT:
        raise ModulusError(
            f"modulus {m} too large for trial division; supply factors explicitly"
        )
    factors = []
    rest = m
    p = 3
    while p * p <= rest and p < TRIAL_DIVISION_LIMIT:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 2
    if rest > 1:
        if not is_prime(rest):
            raise ModulusError(f"could not factor {m} by trial division")
        factors.append((rest, 1))
    return Modulus(m, tuple(factors))
