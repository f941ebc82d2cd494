"""Recursive FFT/IFFT over a twofold set and the CRT-form transform pair.

Transform outputs are in the twofold index order of the plan's points
(bit-reversed relative to omega-power order when viewed as a tree).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from operator import index

from .jsonio import decode_int, encode_int
from .poly import karatsuba, reduce_mod_xn_minus_a
from .roots import (
    ParameterSet,
    TwofoldSet,
    certify,
    is_power_of_two,
    make_twofold_set,
)
from .zm_arith import Modulus, mod_inverse


class PlanMismatch(ValueError):
    """The plan does not fit the requested operation or operand sizes."""


class StructureMissing(ValueError):
    """The closed-form inverse needs an (alpha, omega) generated set."""


@dataclass(frozen=True)
class NttPlan:
    """Precomputed domain for Z_m[x]/<x^n - a> split into d factors.

    ``levels[k]`` is the point list seen at recursion depth k (the squares of
    the first half of ``levels[k-1]``), down to a single point.
    ``half_inv[k][i]`` is (2 * levels[k][i])**-1, the IFFT denominator.
    """

    m: Modulus
    n: int
    a: int
    d: int
    set: TwofoldSet
    inv_two: int
    inv_points: tuple[int, ...]
    inv_d: int
    levels: tuple[tuple[int, ...], ...] = field(repr=False)
    inv_levels: tuple[tuple[int, ...], ...] = field(repr=False)
    half_inv: tuple[tuple[int, ...], ...] = field(repr=False)
    deferred_scaling: bool = False

    @classmethod
    def from_set(cls, n: int, ts: TwofoldSet, deferred_scaling: bool = False) -> NttPlan:
        if not ts.certified:
            raise PlanMismatch("point set is not certified for conditions 1-3")
        d = ts.d
        if not is_power_of_two(n) or not is_power_of_two(d) or n % d:
            raise PlanMismatch(f"need powers of two with d | n, got n={n}, d={d}")
        mm = ts.m.m
        inv_two = mod_inverse(2, mm)
        levels, inv_levels, half_inv = [], [], []
        level = ts
        while True:
            pts = level.points
            levels.append(pts)
            half = pts[: max(1, len(pts) // 2)]
            invs = tuple(mod_inverse(x, mm) for x in half)
            inv_levels.append(invs)
            half_inv.append(tuple(inv_two * x % mm for x in invs))
            if len(pts) == 1:
                break
            level = level.squares()
        return cls(
            ts.m,
            n,
            ts.a,
            d,
            ts,
            inv_two,
            inv_levels[0] if d > 1 else (),
            mod_inverse(d, mm),
            tuple(levels),
            tuple(inv_levels),
            tuple(half_inv),
            deferred_scaling,
        )

    @classmethod
    def from_params(cls, params: ParameterSet, deferred_scaling: bool = False) -> NttPlan:
        return cls.from_set(params.n, params.twofold_set(), deferred_scaling)

    @property
    def points(self) -> tuple[int, ...]:
        return self.set.points

    @property
    def full_split(self) -> bool:
        return self.d == self.n


def make_plan(m, n: int, a: int = -1, d: int | None = None, rng=None, points=None,
              deferred_scaling: bool = False) -> NttPlan:
    """Plan for Z_m[x]/<x^n - a>; d defaults to n (full split).

    With ``points`` the given twofold set is certified and used as-is,
    otherwise an (alpha, omega)-set of d-th roots of a is generated.
    """
    m = Modulus.of(m)
    d = n if d is None else d
    if points is not None:
        ts = certify(points, m, a)
        if ts.d != d:
            raise PlanMismatch(f"{ts.d} points given for d={d}")
    else:
        ts = make_twofold_set(m, d, a, rng)
    return NttPlan.from_set(n, ts, deferred_scaling)


@dataclass(frozen=True)
class EvalVector:
    """Values g(alpha_0), ..., g(alpha_{d-1}) in twofold index order."""

    values: tuple[int, ...]

    def to_json(self) -> dict:
        return {"d": len(self.values), "parts": [[encode_int(v)] for v in self.values]}

    @classmethod
    def from_json(cls, doc: dict) -> EvalVector:
        parts = doc["parts"]
        if len(parts) != doc["d"] or any(len(p) != 1 for p in parts):
            raise ValueError("malformed evaluation vector")
        return cls(tuple(decode_int(p[0]) for p in parts))


@dataclass(frozen=True)
class CrtForm:
    """Remainders of g modulo x^(n/d) - alpha_i, in twofold index order."""

    parts: tuple[tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return len(self.parts)

    def to_json(self) -> dict:
        return {"d": self.d, "parts": [[encode_int(c) for c in p] for p in self.parts]}

    @classmethod
    def from_json(cls, doc: dict) -> CrtForm:
        parts = tuple(tuple(decode_int(c) for c in p) for p in doc["parts"])
        if len(parts) != doc["d"]:
            raise ValueError("malformed CRT form")
        return cls(parts)


def _forward(g, levels, depth, m):
    if len(g) == 1:
        return [g[0]]
    y0 = _forward(g[0::2], levels, depth + 1, m)
    y1 = _forward(g[1::2], levels, depth + 1, m)
    lo, hi = [], []
    # alpha_{i + n/2} = -alpha_i, so one product serves both halves
    for e, o, x in zip(y0, y1, levels[depth]):
        t = x * o
        lo.append((e + t) % m)
        hi.append((e - t) % m)
    return lo + hi


def _inverse(y, levels, half_inv, inv_two, depth, m):
    n = len(y)
    if n == 1:
        return [y[0]]
    half = n // 2
    y0, y1 = [], []
    for yi, yj, w in zip(y[:half], y[half:], half_inv[depth]):
        y0.append((yi + yj) * inv_two % m)
        y1.append((yi - yj) * w % m)
    g0 = _inverse(y0, levels, half_inv, inv_two, depth + 1, m)
    g1 = _inverse(y1, levels, half_inv, inv_two, depth + 1, m)
    out = [0] * n
    out[0::2] = g0
    out[1::2] = g1
    return out


def transform(values, plan: NttPlan) -> list[int]:
    """d-point forward transform of a length-d scalar vector."""
    return _forward([v % plan.m.m for v in values], plan.levels, 0, plan.m.m)


def inverse_transform(values, plan: NttPlan) -> list[int]:
    return _inverse(list(values), plan.levels, plan.half_inv, plan.inv_two, 0, plan.m.m)


def _require_full(plan: NttPlan, what: str) -> None:
    if plan.d != plan.n:
        raise PlanMismatch(f"{what} needs a full-split plan, got d={plan.d} < n={plan.n}")


def _require_length(g, n: int) -> None:
    if len(g) != n:
        raise PlanMismatch(f"expected {n} coefficients, got {len(g)}")


def fft_forward(g, plan: NttPlan) -> EvalVector:
    """Evaluate g at every point of a full-split plan in O(n log n)."""
    _require_full(plan, "fft_forward")
    _require_length(g, plan.n)
    return EvalVector(tuple(transform(g, plan)))


def ifft(y: EvalVector, plan: NttPlan) -> list[int]:
    """The unique length-n polynomial taking the values y at the points."""
    _require_full(plan, "ifft")
    values = y.values if isinstance(y, EvalVector) else tuple(y)
    _require_length(values, plan.n)
    return inverse_transform(values, plan)


def fft_mul(g, h, plan: NttPlan) -> list[int]:
    """(g * h) rem x^n - a by transform, pointwise product, inverse."""
    _require_full(plan, "fft_mul")
    _require_length(g, plan.n)
    _require_length(h, plan.n)
    m = plan.m.m
    f = [x * y % m for x, y in zip(transform(g, plan), transform(h, plan))]
    return inverse_transform(f, plan)


def vandermonde_apply(g, points, m) -> EvalVector:
    """O(n^2) evaluation of g at each point (Horner)."""
    m = index(m)
    if len(points) != len(g):
        raise PlanMismatch(f"{len(points)} points for {len(g)} coefficients")
    values = []
    for x in points:
        acc = 0
        for c in reversed(g):
            acc = (acc * x + c) % m
        values.append(acc)
    return EvalVector(tuple(values))


def vandermonde_invert(y: EvalVector, plan: NttPlan) -> list[int]:
    """Closed-form inverse: g_i = n**-1 * sum_j (alpha**-1 omega**-j)**i y_j."""
    _require_full(plan, "vandermonde_invert")
    if plan.set.generators is None:
        raise StructureMissing("plan points carry no (alpha, omega) generators")
    values = y.values if isinstance(y, EvalVector) else tuple(y)
    _require_length(values, plan.n)
    m, n = plan.m.m, plan.n
    alpha, omega = plan.set.generators
    inv_alpha, inv_omega = mod_inverse(alpha, m), mod_inverse(omega, m)
    g = [0] * n
    base = inv_alpha
    for yj in values:
        term = yj
        for i in range(n):
            g[i] += term
            term = term * base % m
        base = base * inv_omega % m
    return [c * plan.inv_d % m for c in g]


def crt_fft(g, plan: NttPlan) -> CrtForm:
    """Remainders of g modulo x^(n/d) - alpha_i for every plan point.

    Works up from the single-point level: each remainder splits into low and
    high halves L, H and yields L + H*alpha and L - H*alpha for the two
    children, sharing the product H*alpha.
    """
    _require_length(g, plan.n)
    m = plan.m.m
    parts = [[c % m for c in g]]
    for pts in reversed(plan.levels[:-1]):
        s = len(parts)
        lows = [None] * (2 * s)
        for j, part in enumerate(parts):
            half = len(part) // 2
            x = pts[j]
            prod = [x * c for c in part[half:]]
            lows[j] = [(lo + t) % m for lo, t in zip(part[:half], prod)]
            lows[j + s] = [(lo - t) % m for lo, t in zip(part[:half], prod)]
        parts = lows
    return CrtForm(tuple(tuple(p) for p in parts))


def crt_ifft(form: CrtForm, plan: NttPlan) -> list[int]:
    """Recover g of length n from its d remainders.

    Per level: low = (p_j + p_{j+s}) / 2, high = (p_j - p_{j+s}) / (2 alpha_j).
    With ``plan.deferred_scaling`` the halvings are skipped and one d**-1
    scaling is applied at the end instead.
    """
    parts = [list(p) for p in (form.parts if isinstance(form, CrtForm) else form)]
    if len(parts) != plan.d or any(len(p) != plan.n // plan.d for p in parts):
        raise PlanMismatch(f"CRT form does not match d={plan.d}, n={plan.n}")
    m = plan.m.m
    deferred = plan.deferred_scaling
    inv_two = plan.inv_two
    for depth in range(len(plan.levels) - 1):
        s = len(parts) // 2
        invs = plan.inv_levels[depth] if deferred else plan.half_inv[depth]
        merged = []
        for j in range(s):
            p, q, w = parts[j], parts[j + s], invs[j]
            if deferred:
                low = [(x + y) % m for x, y in zip(p, q)]
            else:
                low = [(x + y) * inv_two % m for x, y in zip(p, q)]
            high = [(x - y) * w % m for x, y in zip(p, q)]
            merged.append(low + high)
        parts = merged
    g = parts[0]
    if deferred:
        g = [c * plan.inv_d % m for c in g]
    return g


def crt_mul(g, h, plan: NttPlan) -> list[int]:
    """(g * h) rem x^n - a through the CRT form and Karatsuba remainders."""
    _require_length(g, plan.n)
    _require_length(h, plan.n)
    m, size = plan.m.m, plan.n // plan.d
    fg, fh = crt_fft(g, plan), crt_fft(h, plan)
    parts = [
        reduce_mod_xn_minus_a(karatsuba(p, q, m), size, x, m)
        for p, q, x in zip(fg.parts, fh.parts, plan.points)
    ]
    return crt_ifft(CrtForm(tuple(tuple(p) for p in parts)), plan)
