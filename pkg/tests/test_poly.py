import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import convolution, evaluate, remainder, wrapped_product
from qntt.poly import (
    Poly,
    dual_karatsuba_mod,
    karatsuba,
    reduce_mod_xn_minus_a,
    schoolbook_mul,
    schoolbook_mul_mod,
)

MODULI = [13, 17, 65, 125, 1649, 2**61 - 1]


def rand_poly(rng, n, m):
    return [rng.randrange(m) for _ in range(n)]


def test_schoolbook_examples():
    assert schoolbook_mul([1, 1], [1, 1], 13) == [1, 2, 1]
    assert schoolbook_mul([3, 7, 9], [1], 13) == [3, 7, 9]
    assert schoolbook_mul([3, 5], [7, 11], 13) == [8, 3, 3]
    assert schoolbook_mul([], [1, 2], 13) == []


def test_reduce_examples():
    assert reduce_mod_xn_minus_a([1, 2, 1], 2, -1, 13) == [0, 2]
    assert reduce_mod_xn_minus_a([0, 0, 0, 0, 1], 4, 3, 13) == [3, 0, 0, 0]
    assert reduce_mod_xn_minus_a([0, 0, 0, 0, 0, 0, 1], 4, 3, 13) == [0, 0, 3, 0]
    assert reduce_mod_xn_minus_a([5], 4, 3, 13) == [5, 0, 0, 0]


def test_schoolbook_mul_mod_examples():
    assert schoolbook_mul_mod([1, 1], [1, 1], 2, -1, 13) == [0, 2]
    g = [4, 9, 1, 12]
    assert schoolbook_mul_mod(g, [1, 0, 0, 0], 4, 7, 13) == g
    with pytest.raises(ValueError):
        schoolbook_mul_mod([1] * 5, [1], 4, 1, 13)


def test_cyclic_convolution_z65():
    rng = random.Random(0)
    for _ in range(200):
        g, h = rand_poly(rng, 4, 65), rand_poly(rng, 4, 65)
        direct = [
            sum(g[i] * h[j] for i in range(4) for j in range(4) if (i + j) % 4 == k) % 65
            for k in range(4)
        ]
        assert schoolbook_mul_mod(g, h, 4, 1, 65) == direct


def test_karatsuba_examples():
    assert karatsuba([6], [9], 13) == [2]
    assert karatsuba([1, 2, 3, 4], [0, 0, 0, 0], 13) == [0] * 7
    assert karatsuba([1, 1], [1, 1], 13) == [1, 2, 1]


@pytest.mark.parametrize("m", MODULI)
@pytest.mark.parametrize("n", [1, 2, 4, 8, 16, 32, 64, 128, 256])
def test_karatsuba_matches_schoolbook(m, n):
    rng = random.Random(n * m)
    pairs = 1000 if n <= 64 and m == 1649 else 20
    for _ in range(pairs):
        g, h = rand_poly(rng, n, m), rand_poly(rng, n, m)
        assert karatsuba(g, h, m) == schoolbook_mul(g, h, m)


@pytest.mark.parametrize("threshold", [1, 2, 4, 16, 64])
def test_karatsuba_threshold_irrelevant(threshold):
    rng = random.Random(threshold)
    for n in (1, 3, 8, 31, 64):
        g, h = rand_poly(rng, n, 17), rand_poly(rng, n, 17)
        assert karatsuba(g, h, 17, threshold) == convolution(g, h, 17)


def test_karatsuba_ragged():
    rng = random.Random(3)
    for lg, lh in [(1, 5), (7, 3), (17, 2), (33, 33)]:
        g, h = rand_poly(rng, lg, 97), rand_poly(rng, lh, 97)
        assert karatsuba(g, h, 97) == convolution(g, h, 97)


def test_dual_karatsuba_examples():
    assert dual_karatsuba_mod([1, 1], [1, 1], 2, 1, 13) == [0, 2]
    assert dual_karatsuba_mod([5], [7], 1, -1, 13) == [9]
    assert dual_karatsuba_mod([5], [7], 1, 1, 13) == [9]


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("n", [1, 2, 4, 8, 16, 32])
@pytest.mark.parametrize("threshold", [1, 16])
def test_dual_karatsuba_matches_schoolbook(sign, n, threshold):
    rng = random.Random(n + sign)
    for _ in range(1000 if threshold == 1 else 100):
        g, h = rand_poly(rng, n, 1649), rand_poly(rng, n, 1649)
        assert dual_karatsuba_mod(g, h, n, sign, 1649, threshold) == schoolbook_mul_mod(g, h, n, -sign, 1649)


def test_dual_karatsuba_validation():
    with pytest.raises(ValueError):
        dual_karatsuba_mod([1], [1], 1, 0, 13)
    with pytest.raises(ValueError):
        dual_karatsuba_mod([1, 2, 3], [1], 3, 1, 13)


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from(MODULI),
    st.integers(0, 6).map(lambda k: 1 << k),
    st.integers(-5, 5),
    st.data(),
)
def test_schoolbook_mod_matches_definition(m, n, a, data):
    coeffs = st.lists(st.integers(0, m - 1), min_size=0, max_size=n)
    g, h = data.draw(coeffs), data.draw(coeffs)
    expected = wrapped_product(g, h, n, a, m) if g and h else [0] * n
    assert schoolbook_mul_mod(g, h, n, a, m) == expected


@settings(max_examples=64, deadline=None)
@given(st.sampled_from([13, 65, 1649]), st.sampled_from([4, 8]), st.sampled_from([-1, 1, 3]), st.data())
def test_quotient_ring_axioms(m, n, a, data):
    coeffs = st.lists(st.integers(0, m - 1), min_size=n, max_size=n)
    f, g, h = data.draw(coeffs), data.draw(coeffs), data.draw(coeffs)
    mul = lambda x, y: schoolbook_mul_mod(x, y, n, a, m)  # noqa: E731
    assert mul(f, g) == mul(g, f)
    assert mul(mul(f, g), h) == mul(f, mul(g, h))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(17, 4, 13), (17, 8, 16), (13, 4, 3), (1649, 8, 1648)]), st.data())
def test_reduction_preserves_values_at_roots(case, data):
    m, n, a = case
    g = data.draw(st.lists(st.integers(0, m - 1), min_size=0, max_size=3 * n))
    r = reduce_mod_xn_minus_a(g, n, a, m)
    assert reduce_mod_xn_minus_a(r, n, a, m) == r
    assert r == remainder(g, [(-a) % m] + [0] * (n - 1) + [1], m)
    for alpha in (x for x in range(m) if pow(x, n, m) == a % m):
        assert evaluate(r, alpha, m) == evaluate(g, alpha, m)


def test_poly_type():
    p = Poly(13, (1, 2, 3))
    assert p.padded(5) == [1, 2, 3, 0, 0]
    assert Poly.from_json(p.to_json()) == p
    with pytest.raises(ValueError):
        Poly(13, (13,))
    with pytest.raises(ValueError):
        p.padded(2)
    big = Poly(2**61 - 1, (2**60,))
    assert big.to_json() == {"m": str(2**61 - 1), "coeffs": [str(2**60)]}
    assert Poly.from_json(big.to_json()) == big
