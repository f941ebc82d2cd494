import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import evaluate, remainder, wrapped_product
from qntt.fft import (
    CrtForm,
    EvalVector,
    NttPlan,
    PlanMismatch,
    StructureMissing,
    crt_fft,
    crt_ifft,
    crt_mul,
    fft_forward,
    fft_mul,
    ifft,
    make_plan,
    vandermonde_apply,
    vandermonde_invert,
)
from qntt.roots import CertificationFailed, ParameterSet, make_twofold_set
from qntt.zm_arith import mod_inverse

# (m, n, a, d) with a certified set of d-th roots of a
FULL = [(17, 4, -1, 4), (17, 8, -1, 8), (1649, 8, -1, 8), (13, 4, 1, 4), (17, 16, 1, 16), (97, 16, -1, 16), (17, 4, 13, 4)]
PARTIAL = [(13, 8, -1, 2), (29, 16, -1, 2), (125, 8, -1, 2), (377, 16, 1, 4), (1649, 64, -1, 4), (97, 64, 5**8 % 97, 8)]


def rand_poly(rng, n, m):
    return [rng.randrange(m) for _ in range(n)]


def plan_for(case, **kw):
    m, n, a, d = case
    return make_plan(m, n, a, d, rng=n * d, **kw)


def test_plan_invariants():
    for case in FULL + PARTIAL:
        plan = plan_for(case)
        m = plan.m.m
        assert plan.inv_two * 2 % m == 1
        assert plan.inv_d * plan.d % m == 1
        assert plan.n % plan.d == 0 and plan.set.certified
        for x, inv in zip(plan.points, plan.inv_points):
            assert x * inv % m == 1
        assert len(plan.inv_points) == plan.d // 2 or plan.d == 1


def test_plan_rejects_bad_points():
    with pytest.raises(CertificationFailed):
        make_plan(13, 4, 1, points=[1, 5, 8, 12])
    with pytest.raises(PlanMismatch):
        make_plan(13, 4, 1, d=2, points=[1, 5, 12, 8])
    ts = make_twofold_set(17, 4, -1, 0)
    with pytest.raises(PlanMismatch):
        NttPlan.from_set(6, ts)


def test_fft_examples():
    plan = make_plan(13, 4, 1, points=[1, 5, 12, 8])
    assert fft_forward([7, 0, 0, 0], plan).values == (7, 7, 7, 7)
    assert fft_forward([0, 1, 0, 0], plan).values == (1, 5, 12, 8)
    assert ifft(EvalVector((3, 3, 3, 3)), plan) == [3, 0, 0, 0]


def test_fft_n1():
    plan = make_plan(13, 1, 5)
    assert plan.points == (5,)
    assert fft_forward([9], plan).values == (9,)
    assert ifft(EvalVector((9,)), plan) == [9]


def test_fft_mul_example():
    plan = make_plan(17, 4, -1, points=[2, 8, 15, 9])
    assert fft_mul([1, 1, 0, 0], [1, 1, 0, 0], plan) == [1, 2, 1, 0]
    g = [3, 16, 5, 9]
    assert fft_mul(g, [1, 0, 0, 0], plan) == g


@pytest.mark.parametrize("case", FULL)
def test_fft_matches_evaluation(case):
    plan = plan_for(case)
    m = plan.m.m
    rng = random.Random(1)
    for _ in range(100):
        g = rand_poly(rng, plan.n, m)
        values = fft_forward(g, plan).values
        assert list(values) == [evaluate(g, x, m) for x in plan.points]
        assert values == vandermonde_apply(g, plan.points, m).values
        assert ifft(EvalVector(values), plan) == g


@pytest.mark.parametrize("case", FULL)
def test_fft_mul_oracle(case):
    m, n, a, _ = case
    plan = plan_for(case)
    rng = random.Random(2)
    for _ in range(1000 if case == (1649, 8, -1, 8) else 200):
        g, h = rand_poly(rng, n, m), rand_poly(rng, n, m)
        assert fft_mul(g, h, plan) == wrapped_product(g, h, n, a, m)


@pytest.mark.parametrize("case", FULL)
def test_homomorphism(case):
    m, n, a, _ = case
    plan = plan_for(case)
    rng = random.Random(3)
    for _ in range(100):
        g, h = rand_poly(rng, n, m), rand_poly(rng, n, m)
        lhs = fft_forward(wrapped_product(g, h, n, a, m), plan).values
        rhs = [x * y % m for x, y in zip(fft_forward(g, plan).values, fft_forward(h, plan).values)]
        assert list(lhs) == rhs


def test_vandermonde_identity_z13():
    plan = make_plan(13, 4, 1, points=[1, 5, 12, 8])
    assert plan.set.generators is None
    plan = NttPlan.from_params(ParameterSet(plan.m, 4, 1, 1, 5, (1, 5, 12, 8)))
    assert plan.set.generators == (1, 5)
    rng = random.Random(4)
    for _ in range(100):
        y = EvalVector(tuple(rand_poly(rng, 4, 13)))
        g = vandermonde_invert(y, plan)
        assert vandermonde_apply(g, plan.points, 13) == y
        assert vandermonde_invert(vandermonde_apply(g, plan.points, 13), plan) == g


def test_vandermonde_apply_identity_poly():
    assert vandermonde_apply([0, 1, 0, 0], [1, 5, 12, 8], 13).values == (1, 5, 12, 8)


def test_vandermonde_invert_needs_generators():
    plan = make_plan(13, 4, 1, points=[1, 5, 12, 8])
    with pytest.raises(StructureMissing):
        vandermonde_invert(EvalVector((1, 2, 3, 4)), plan)


def test_full_split_operations_reject_partial_plan():
    plan = plan_for(PARTIAL[0])
    g = [0] * plan.n
    for op in (lambda: fft_forward(g, plan), lambda: ifft([0] * plan.d, plan), lambda: fft_mul(g, g, plan)):
        with pytest.raises(PlanMismatch):
            op()


def test_length_mismatch():
    plan = plan_for(FULL[0])
    with pytest.raises(PlanMismatch):
        fft_forward([1, 2, 3], plan)
    with pytest.raises(PlanMismatch):
        crt_ifft(CrtForm(((1,), (2,))), plan)


def factor_poly(x, size, m):
    return [(-x) % m] + [0] * (size - 1) + [1]


@pytest.mark.parametrize("case", FULL + PARTIAL)
@pytest.mark.parametrize("deferred", [False, True])
def test_crt_fft_remainders_and_round_trip(case, deferred):
    m, n, a, d = case
    plan = plan_for(case, deferred_scaling=deferred)
    size = n // d
    rng = random.Random(5)
    for _ in range(100):
        g = rand_poly(rng, n, m)
        form = crt_fft(g, plan)
        assert form.d == d
        for x, part in zip(plan.points, form.parts):
            assert list(part) == remainder(g, factor_poly(x, size, m), m)
        assert crt_ifft(form, plan) == g


@pytest.mark.parametrize("case", FULL + PARTIAL)
def test_crt_mul_oracle(case):
    m, n, a, _ = case
    plan = plan_for(case)
    rng = random.Random(6)
    for _ in range(200):
        g, h = rand_poly(rng, n, m), rand_poly(rng, n, m)
        assert crt_mul(g, h, plan) == wrapped_product(g, h, n, a, m)


def test_crt_d1_identity():
    plan = make_plan(13, 8, 5, d=1)
    g = [1, 2, 3, 4, 5, 6, 7, 8]
    assert crt_fft(g, plan).parts == (tuple(g),)
    assert crt_ifft(CrtForm((tuple(g),)), plan) == g


def test_crt_full_split_matches_fft():
    plan = plan_for(FULL[2])
    rng = random.Random(7)
    g = rand_poly(rng, plan.n, plan.m.m)
    assert tuple(p[0] for p in crt_fft(g, plan).parts) == fft_forward(g, plan).values


def test_crt_d2_base_formula():
    """The two-factor inverse with the corrected sign on the high half."""
    plan = make_plan(13, 8, -1, d=2, points=[5, 8])
    rng = random.Random(8)
    inv2, inv_a0 = mod_inverse(2, 13), mod_inverse(5, 13)
    for _ in range(50):
        g0, g1 = rand_poly(rng, 4, 13), rand_poly(rng, 4, 13)
        expected = [inv2 * (x + y) % 13 for x, y in zip(g0, g1)]
        expected += [inv2 * (x - y) * inv_a0 % 13 for x, y in zip(g0, g1)]
        assert crt_ifft(CrtForm((tuple(g0), tuple(g1))), plan) == expected


def test_serialization():
    y = EvalVector((1, 2**60, 3))
    doc = json.loads(json.dumps(y.to_json()))
    assert doc == {"d": 3, "parts": [[1], [str(2**60)], [3]]}
    assert EvalVector.from_json(doc) == y
    form = CrtForm(((1, 2), (3, 2**55)))
    assert CrtForm.from_json(json.loads(json.dumps(form.to_json()))) == form
    with pytest.raises(ValueError):
        CrtForm.from_json({"d": 3, "parts": [[1]]})


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(FULL + PARTIAL), st.data())
def test_crt_is_ring_isomorphism(case, data):
    m, n, a, d = case
    plan = plan_for(case)
    size = n // d
    coeffs = st.lists(st.integers(0, m - 1), min_size=n, max_size=n)
    g, h = data.draw(coeffs), data.draw(coeffs)
    fg, fh = crt_fft(g, plan), crt_fft(h, plan)
    total = crt_fft([(x + y) % m for x, y in zip(g, h)], plan)
    assert total.parts == tuple(tuple((x + y) % m for x, y in zip(p, q)) for p, q in zip(fg.parts, fh.parts))
    prod = crt_fft(wrapped_product(g, h, n, a, m), plan)
    for x, p, q, r in zip(plan.points, fg.parts, fh.parts, prod.parts):
        assert list(r) == wrapped_product(list(p), list(q), size, x, m)


def test_crt_d2_all_plus_variant_is_not_an_inverse():
    """Using (g0 + g1) for both halves loses the difference and cannot invert."""
    plan = make_plan(13, 8, -1, d=2, points=[5, 8])
    inv2, inv_a0 = mod_inverse(2, 13), mod_inverse(5, 13)
    g = [1, 2, 3, 4, 5, 6, 7, 8]
    g0, g1 = crt_fft(g, plan).parts
    all_plus = [inv2 * (x + y) % 13 for x, y in zip(g0, g1)]
    all_plus += [inv2 * (x + y) * inv_a0 % 13 for x, y in zip(g0, g1)]
    assert all_plus != g
    assert crt_ifft(CrtForm((g0, g1)), plan) == g
