"""Evaluation-point sets for transforms over Z_m[x]/<x^n - a>.

Construction (nonresidue sampling, Tonelli-Shanks, Hensel lifting, CRT) and
certification of twofold sets, plus brute-force checkers for the four point
conditions:

1. pairwise differences are units mod m;
2. every point is a d-th root of a;
3. twofold structure: points i and i + d/2 share a square, recursively;
4. the set is {alpha * omega**i} for an order-d root of unity omega.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from math import gcd

from .jsonio import decode_int, encode_int
from .zm_arith import (
    Modulus,
    NotInvertible,
    crt_combine,
    ext_gcd,
    legendre_symbol,
    mod_inverse,
)

MAX_NONRESIDUE_DRAWS = 10_000
ALPHA_OMEGA_MAX_POINTS = 1 << 10
ENUMERATE_MAX_M = 10_000
ENUMERATE_MAX_N = 8


class RootError(ArithmeticError):
    """Base class for failures while constructing evaluation points."""


class NotAResidue(RootError):
    def __init__(self, a: int, p: int):
        super().__init__(f"{a} is not a quadratic residue mod {p}")
        self.a = a
        self.p = p


class DerivativeVanishes(RootError):
    def __init__(self, root: int, p: int, n: int):
        super().__init__(f"derivative of x^{n} - a vanishes at {root} mod {p}")
        self.root = root
        self.p = p


class UnsupportedModulus(RootError):
    """Some prime p of m violates the divisibility ``divisor | p - 1``."""

    def __init__(self, p: int, divisor: int, label: str = "2n"):
        super().__init__(f"{label} ∤ p-1 for p={p} ({label}={divisor})")
        self.p = p
        self.divisor = divisor


class NoRoot(RootError):
    """An intermediate 2**level-th root was a nonresidue mod p."""

    def __init__(self, p: int, level: int):
        super().__init__(f"no 2^{level}-th root mod {p}: square-root chain fails at level {level}")
        self.p = p
        self.level = level


class CertificationFailed(RootError):
    def __init__(self, condition: str, detail=None):
        msg = f"condition {condition} failed"
        if detail is not None:
            msg += f": {detail}"
        super().__init__(msg)
        self.condition = condition
        self.detail = detail


class NotTwofold(RootError):
    """No reordering of the points is a twofold set."""


class TooLarge(ValueError):
    pass


class SamplingFailed(RuntimeError):
    pass


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _require_power_of_two(n: int, what: str = "n") -> None:
    if not is_power_of_two(n):
        raise ValueError(f"{what}={n} is not a power of two")


def as_rng(rng) -> random.Random:
    """Accept a Random instance, an integer seed, or None (seed 0)."""
    if isinstance(rng, random.Random):
        return rng
    return random.Random(0 if rng is None else rng)


@dataclass(frozen=True)
class AlphaOmegaPair:
    """alpha is an n-th root of a, omega a root of unity of order exactly n."""

    alpha: int
    omega: int
    n: int
    a: int


@dataclass(frozen=True)
class TwofoldSet:
    """Indexed evaluation points with per-condition certification flags.

    ``generators`` is ``(alpha, omega)`` when the points are known to be
    ``alpha * omega**i`` in natural order, else None.
    """

    m: Modulus
    a: int
    points: tuple[int, ...]
    cond1: bool = False
    cond2: bool = False
    cond3: bool = False
    generators: tuple[int, int] | None = None

    @property
    def d(self) -> int:
        return len(self.points)

    @property
    def certified(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3

    def squares(self) -> TwofoldSet:
        """The next recursion level: squares of the first half."""
        m = self.m.m
        half = self.points[: max(1, self.d // 2)]
        gens = None
        if self.generators is not None:
            alpha, omega = self.generators
            gens = (alpha * alpha % m, omega * omega % m)
        return TwofoldSet(
            self.m,
            self.a,
            tuple(x * x % m for x in half),
            self.cond1,
            self.cond2,
            self.cond3,
            gens,
        )


def sample_nonresidue(p: int, rng=None) -> int:
    """Draw uniform units mod p until one is a quadratic nonresidue."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"{p} is not an odd prime")
    rng = as_rng(rng)
    for _ in range(MAX_NONRESIDUE_DRAWS):
        u = rng.randrange(1, p)
        if legendre_symbol(u, p) == -1:
            return u
    raise SamplingFailed(f"no nonresidue mod {p} in {MAX_NONRESIDUE_DRAWS} draws")


def tonelli_shanks(p: int, a: int, u: int) -> int:
    """Square root of a mod the odd prime p, given a nonresidue u."""
    a %= p
    if a == 0:
        return 0
    if legendre_symbol(u, p) != -1:
        raise ValueError(f"{u} is not a nonresidue mod {p}")
    if legendre_symbol(a, p) != 1:
        raise NotAResidue(a, p)
    v, s = p - 1, 0
    while v % 2 == 0:
        v //= 2
        s += 1
    k = s
    c = pow(u, v, p)
    t = pow(a, v, p)
    r = pow(a, (v + 1) // 2, p)
    while t != 0 and t != 1:
        i, t2 = 1, t * t % p
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        d = pow(c, 1 << (k - i - 1), p)
        k = i
        c = d * d % p
        t = t * c % p
        r = r * d % p
    return 0 if t == 0 else r


def _inverse_derivative(root: int, p: int, n: int) -> int:
    """(n * root**(n-1))**-1 mod p via extended Euclid."""
    fp = n * pow(root, n - 1, p) % p
    if fp == 0:
        raise DerivativeVanishes(root, p, n)
    _, r, _ = ext_gcd(fp, p)
    return r % p


def hensel_lift(
    root: int,
    p: int,
    e_from: int,
    n: int,
    a: int,
    inv_derivative: int | None = None,
) -> int:
    """Lift a root of x^n - a from mod p**e_from to mod p**(e_from + 1).

    ``inv_derivative`` is f'(root mod p)**-1 mod p; it only depends on the
    root mod p, so iterated lifts pass it along instead of recomputing.
    """
    pe = p**e_from
    if (pow(root, n, pe) - a) % pe:
        raise ValueError(f"{root}^{n} is not {a} mod {p}^{e_from}")
    if inv_derivative is None:
        inv_derivative = _inverse_derivative(root % p, p, n)
    pe1 = pe * p
    f = (pow(root, n, pe1) - a) % pe1
    return (root - f * inv_derivative) % pe1


def lift_root(root: int, p: int, e: int, n: int, a: int) -> int:
    """Lift a root of x^n - a mod p all the way to mod p**e."""
    root %= p
    if e == 1:
        return root
    inv = _inverse_derivative(root, p, n)
    for e_from in range(1, e):
        root = hensel_lift(root, p, e_from, n, a, inv)
    return root


def compute_alpha_omega(m, n: int, rng=None) -> AlphaOmegaPair:
    """An n-th root alpha of -1 and an order-n root of unity omega mod m.

    Per prime p: alpha = u**((p-1)/2n), omega = u**((p-1)/n) for a sampled
    nonresidue u, both Hensel-lifted to p**e and then CRT-combined.
    """
    m = Modulus.of(m)
    _require_power_of_two(n)
    if n < 2:
        raise ValueError("n must be at least 2")
    for p, _ in m.factors:
        if (p - 1) % (2 * n):
            raise UnsupportedModulus(p, 2 * n)
    rng = as_rng(rng)
    alphas, omegas = [], []
    for p, e in m.factors:
        u = sample_nonresidue(p, rng)
        q = p**e
        alpha_p = pow(u, (p - 1) // (2 * n), p)
        omega_p = pow(u, (p - 1) // n, p)
        alphas.append((lift_root(alpha_p, p, e, n, q - 1), q))
        omegas.append((lift_root(omega_p, p, e, n, 1), q))
    pair = AlphaOmegaPair(crt_combine(alphas), crt_combine(omegas), n, m.m - 1)
    _verify_pair(pair, m)
    return pair


def root_of_unity(m, n: int, rng=None) -> int:
    """An order-n root of unity mod m whose powers have unit differences.

    Needs n | p - 1 for every prime p of m.
    """
    m = Modulus.of(m)
    _require_power_of_two(n)
    if n == 1:
        return 1
    for p, _ in m.factors:
        if (p - 1) % n:
            raise UnsupportedModulus(p, n, "n")
    rng = as_rng(rng)
    parts = []
    for p, e in m.factors:
        u = sample_nonresidue(p, rng)
        q = p**e
        parts.append((lift_root(pow(u, (p - 1) // n, p), p, e, n, 1), q))
    return crt_combine(parts)


def find_root_of_a(m, n: int, a: int, rng=None) -> int:
    """Some alpha with alpha**n == a mod m.

    a = 1 gives 1 and a = -1 goes through :func:`compute_alpha_omega`. Any
    other a is handled per prime by log2(n) successive Tonelli-Shanks square
    roots, then Hensel lifting and CRT. Which square root is taken at each
    level does not matter whenever an n-th root exists together with an
    order-n root of unity: the candidates differ by roots of unity, which are
    all squares in that case. So a nonresidue at some level is reported as
    NoRoot without backtracking.
    """
    m = Modulus.of(m)
    _require_power_of_two(n)
    a %= m.m
    g = gcd(a, m.m)
    if g != 1:
        raise NotInvertible(a, m.m, g)
    if n == 1:
        return a
    if a == 1:
        return 1
    if a == m.m - 1:
        return compute_alpha_omega(m, n, rng).alpha
    rng = as_rng(rng)
    parts = []
    for p, e in m.factors:
        u = sample_nonresidue(p, rng)
        r, level, k = a % p, 0, 1
        while k < n:
            level += 1
            if legendre_symbol(r, p) != 1:
                raise NoRoot(p, level)
            r = tonelli_shanks(p, r, u)
            k *= 2
        q = p**e
        parts.append((lift_root(r, p, e, n, a % q), q))
    alpha = crt_combine(parts)
    assert pow(alpha, n, m.m) == a
    return alpha


def _verify_pair(pair: AlphaOmegaPair, m: Modulus) -> None:
    mm, n = m.m, pair.n
    if pow(pair.alpha, n, mm) != pair.a % mm:
        raise CertificationFailed("2", f"alpha^{n} != {pair.a}")
    if pow(pair.omega, n, mm) != 1 % mm:
        raise CertificationFailed("4", f"omega^{n} != 1")
    if n > 1 and pow(pair.omega, n // 2, mm) != mm - 1:
        raise CertificationFailed("4", f"omega^{n // 2} != -1")


def build_twofold_set(pair: AlphaOmegaPair, m) -> TwofoldSet:
    """Points alpha * omega**i in natural order, every condition re-checked."""
    m = Modulus.of(m)
    mm = m.m
    points, x = [], pair.alpha % mm
    for _ in range(pair.n):
        points.append(x)
        x = x * pair.omega % mm
    ok1, wit1 = check_generated_differences(pair.alpha, pair.omega, pair.n, m)
    if not ok1:
        raise CertificationFailed("1", wit1)
    ok2, wit2 = check_roots_of(points, m, pair.a, pair.n)
    if not ok2:
        raise CertificationFailed("2", wit2)
    if not check_twofold(points, m):
        raise CertificationFailed("3")
    return TwofoldSet(
        m, pair.a % mm, tuple(points), True, True, True, (pair.alpha % mm, pair.omega % mm)
    )


def certify(points, m, a: int) -> TwofoldSet:
    """Certify an arbitrary indexed point list as a twofold set of roots of a."""
    m = Modulus.of(m)
    points = [x % m.m for x in points]
    _require_power_of_two(len(points), "len(points)")
    ok1, wit1 = check_invertible_differences(points, m)
    if not ok1:
        raise CertificationFailed("1", wit1)
    ok2, wit2 = check_roots_of(points, m, a, len(points))
    if not ok2:
        raise CertificationFailed("2", wit2)
    if not check_twofold(points, m):
        raise CertificationFailed("3")
    return TwofoldSet(m, a % m.m, tuple(points), True, True, True)


def make_twofold_set(m, d: int, a: int = -1, rng=None) -> TwofoldSet:
    """Construct and certify a twofold set of d-th roots of a mod m."""
    m = Modulus.of(m)
    _require_power_of_two(d, "d")
    a %= m.m
    rng = as_rng(rng)
    if d == 1:
        pair = AlphaOmegaPair(a, 1, 1, a)
    elif a == m.m - 1:
        pair = compute_alpha_omega(m, d, rng)
    else:
        omega = root_of_unity(m, d, rng)
        alpha = find_root_of_a(m, d, a, rng)
        pair = AlphaOmegaPair(alpha, omega, d, a)
    return build_twofold_set(pair, m)


def check_invertible_differences(points, m):
    """(True, None) or (False, (i, j, gcd)) for the first non-unit difference."""
    mm = int(m)
    pts = [x % mm for x in points]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            g = gcd(pts[j] - pts[i], mm)
            if g != 1:
                return False, (i, j, g)
    return True, None


def check_generated_differences(alpha: int, omega: int, n: int, m):
    """Condition 1 for the points alpha * omega**i in O(n).

    alpha*omega**i - alpha*omega**j = alpha*omega**j * (omega**(i-j) - 1), so
    it suffices that alpha, omega and every omega**k - 1 (0 < k < n) are
    units. The failure witness is (0, k, gcd), a pair realizing it.
    """
    mm = int(m)
    for x in (alpha, omega):
        g = gcd(x, mm)
        if g != 1 and n > 1:
            return False, (0, 1, g)
    w = omega % mm
    for k in range(1, n):
        g = gcd(w - 1, mm)
        if g != 1:
            return False, (0, k, g)
        w = w * omega % mm
    return True, None


def check_roots_of(points, m, a: int, d: int):
    """(True, None) or (False, i) for the first point with x**d != a."""
    mm = int(m)
    a %= mm
    for i, x in enumerate(points):
        if pow(x, d, mm) != a:
            return False, i
    return True, None


def check_twofold(points, m) -> bool:
    """Whether the given indexing is twofold.

    Equivalent to the all-levels definition: x[i]**2 == x[i + d/2]**2 for
    i < d/2, then the same on the squares of the first half.
    """
    mm = int(m)
    level = [x % mm for x in points]
    _require_power_of_two(len(level), "len(points)")
    while len(level) > 1:
        half = len(level) // 2
        sq = [x * x % mm for x in level]
        if sq[:half] != sq[half:]:
            return False
        level = sq[:half]
    return True


def normalize_twofold(points, m) -> list[int]:
    """Reorder points into a twofold indexing or raise NotTwofold.

    Points are grouped by their square; each group must split into pairs
    (x, -x preferred) placed at positions i and i + d/2, and the multiset of
    squares, one per pair, must itself normalize. The resulting multiset of
    squares does not depend on how a group is paired, so no search is
    needed.
    """
    mm = int(m)
    pts = [x % mm for x in points]
    _require_power_of_two(len(pts), "len(points)")
    if len(pts) == 1:
        return pts
    groups = defaultdict(list)
    for x in pts:
        groups[x * x % mm].append(x)
    squares = []
    for s, group in groups.items():
        if len(group) % 2:
            raise NotTwofold(f"square {s} has an odd number ({len(group)}) of preimages in the set")
        squares.extend([s] * (len(group) // 2))
    order = normalize_twofold(squares, mm)
    low, high = [], []
    for s in order:
        pool = groups[s]
        x = pool.pop(0)
        y = (mm - x) % mm
        if y in pool:
            pool.remove(y)
        else:
            y = pool.pop(0)
        low.append(x)
        high.append(y)
    return low + high


def check_alpha_omega(points, m):
    """(True, (alpha, omega)) if the points are an (alpha, omega)-set up to
    order, else (False, None). Raises NotInvertible for a non-unit point."""
    mm = int(m)
    pts = [x % mm for x in points]
    n = len(pts)
    _require_power_of_two(n, "len(points)")
    if n > ALPHA_OMEGA_MAX_POINTS:
        raise TooLarge(f"{n} points exceed the brute-force bound {ALPHA_OMEGA_MAX_POINTS}")
    for x in pts:
        g = gcd(x, mm)
        if g != 1:
            raise NotInvertible(x, mm, g)
    alpha = pts[0]
    inv_alpha = mod_inverse(alpha, mm)
    target = Counter(pts)
    for cand in dict.fromkeys(pts[1:] or pts):
        omega = cand * inv_alpha % mm
        gen, x = [], alpha
        for _ in range(n):
            gen.append(x)
            x = x * omega % mm
        if Counter(gen) != target:
            continue
        if pow(omega, n, mm) != 1 % mm or (n > 1 and pow(omega, n // 2, mm) == 1):
            continue
        powers = [g * inv_alpha % mm for g in gen]
        if check_invertible_differences(powers, mm)[0]:
            return True, (alpha, omega)
    return False, None


def nth_roots(m, n: int, a: int) -> list[int]:
    """All x in [0, m) with x**n == a mod m, by exhaustive search."""
    mm = int(m)
    a %= mm
    return [x for x in range(mm) if pow(x, n, mm) == a]


def _unit_difference_sets(roots: list[int], size: int, mm: int):
    """Every size-subset of roots (in order) with unit pairwise differences."""
    adj = [
        {j for j in range(len(roots)) if j != i and gcd(roots[i] - roots[j], mm) == 1}
        for i in range(len(roots))
    ]

    def extend(chosen, candidates):
        if len(chosen) == size:
            yield [roots[i] for i in chosen]
            return
        for pos, i in enumerate(candidates):
            if len(chosen) + len(candidates) - pos < size:
                return
            rest = [j for j in candidates[pos + 1 :] if j in adj[i]]
            yield from extend(chosen + [i], rest)

    yield from extend([], list(range(len(roots))))


def enumerate_sets(m, n: int, a: int) -> dict[str, int]:
    """Count unordered sets of n distinct n-th roots of a with unit
    differences: how many admit a twofold ordering, and how many are
    (alpha, omega)-sets. Exhaustive; only for m <= 10**4 and n <= 8."""
    mm = int(m)
    _require_power_of_two(n)
    if mm > ENUMERATE_MAX_M or n > ENUMERATE_MAX_N:
        raise TooLarge(f"enumeration limited to m <= {ENUMERATE_MAX_M}, n <= {ENUMERATE_MAX_N}")
    roots = nth_roots(mm, n, a)
    total = twofold = alpha_omega = 0
    for subset in _unit_difference_sets(roots, n, mm):
        total += 1
        try:
            normalize_twofold(subset, mm)
            twofold += 1
        except NotTwofold:
            pass
        if check_alpha_omega(subset, mm)[0]:
            alpha_omega += 1
    return {
        "m": mm,
        "n": n,
        "a": a % mm,
        "roots": len(roots),
        "invertible_difference_sets": total,
        "twofold_invdiff": twofold,
        "alpha_omega": alpha_omega,
    }


@dataclass(frozen=True)
class ParameterSet:
    """Serializable transform parameters: ring data plus the point set.

    ``points`` has d entries; d == n is a full split.
    """

    m: Modulus
    n: int
    a: int
    alpha: int
    omega: int
    points: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.points)

    @classmethod
    def from_twofold_set(cls, n: int, ts: TwofoldSet) -> ParameterSet:
        alpha, omega = ts.generators if ts.generators else (ts.points[0], 0)
        return cls(ts.m, n, ts.a, alpha, omega, ts.points)

    def twofold_set(self) -> TwofoldSet:
        """Re-certify the points, keeping the generators when they match."""
        pair = AlphaOmegaPair(self.alpha, self.omega, self.d, self.a)
        mm, x, generated = self.m.m, self.alpha, []
        for _ in range(self.d):
            generated.append(x)
            x = x * self.omega % mm
        if tuple(generated) == self.points:
            return build_twofold_set(pair, self.m)
        return certify(self.points, self.m, self.a)

    def to_json(self) -> dict:
        return {
            "m": encode_int(self.m.m),
            "factors": [[encode_int(p), e] for p, e in self.m.factors],
            "n": self.n,
            "a": encode_int(self.a),
            "alpha": encode_int(self.alpha),
            "omega": encode_int(self.omega),
            "points": [encode_int(x) for x in self.points],
        }

    @classmethod
    def from_json(cls, doc: dict) -> ParameterSet:
        factors = tuple((decode_int(p), int(e)) for p, e in doc["factors"])
        m = Modulus(decode_int(doc["m"]), factors)
        return cls(
            m,
            int(doc["n"]),
            decode_int(doc["a"]) % m.m,
            decode_int(doc["alpha"]) % m.m,
            decode_int(doc["omega"]) % m.m,
            tuple(decode_int(x) % m.m for x in doc["points"]),
        )
