from fractions import Fraction

import pytest

from adapted_pairs.roots import (
    Weight,
    build_root_system,
    expected_positive_count,
    multiple_of,
    rho_height,
)

F = Fraction

ALL_SYSTEMS = [("B", 2), ("B", 5), ("D", 4), ("D", 7), ("E6", 6), ("E7", 7)]


@pytest.mark.parametrize("family,rank", ALL_SYSTEMS)
def test_positive_root_counts(family, rank):
    sys = build_root_system(family, rank)
    assert len(sys.positive_roots) == expected_positive_count(family, rank)


def test_frozen_counts():
    # closure generation cross-checked against (dim g - rank)/2
    assert len(build_root_system("E6", 6).positive_roots) == 36  # (78-6)/2
    assert len(build_root_system("D", 4).positive_roots) == 12


def test_b2_positive_roots_exact():
    sys = build_root_system("B", 2)
    eps = {tuple(r.eps) for r in sys.positive_roots}
    assert eps == {
        (F(1), F(-1)),
        (F(0), F(1)),
        (F(1), F(0)),
        (F(1), F(1)),
    }


@pytest.mark.parametrize("family,rank", ALL_SYSTEMS)
def test_simple_coeffs_consistent_and_nonnegative(family, rank):
    sys = build_root_system(family, rank)
    for r in sys.positive_roots:
        assert all(c >= 0 for c in r.coeffs)
        recon = [F(0)] * sys.dim
        for c, a in zip(r.coeffs, sys.simple_roots):
            for d in range(sys.dim):
                recon[d] += c * a.eps[d]
        assert tuple(recon) == r.eps


@pytest.mark.parametrize("family,rank", ALL_SYSTEMS)
def test_closed_under_reflection(family, rank):
    sys = build_root_system(family, rank)
    allroots = list(sys.positive_roots) + [-r for r in sys.positive_roots]
    for a in allroots:
        for b in allroots:
            assert sys.is_root(sys.reflect(a, b))


def test_inner_product_examples():
    sys = build_root_system("B", 4)
    e1e2 = sys.root_from_eps([1, 1, 0, 0])
    e1me2 = sys.root_from_eps([1, -1, 0, 0])
    assert sys.inner(e1e2, e1me2) == 0
    assert sys.inner(e1e2, e1e2) == 2
    short = sys.root_from_eps([0, 0, 1, 0])
    assert sys.inner(short, short) == 1
    with pytest.raises(ValueError):
        sys.inner(e1e2, build_root_system("B", 5).positive_roots[0])


def test_rho_height():
    sys = build_root_system("B", 2)
    a1 = sys.simple_roots[0]
    assert rho_height(a1) == 1
    high = sys.highest_root()  # e1+e2 = a1 + 2 a2
    assert high.coeffs == (1, 2)
    assert rho_height(high) == 3
    assert rho_height(-high) == -3


@pytest.mark.parametrize("family,rank", ALL_SYSTEMS)
def test_fundamental_weights_duality(family, rank):
    sys = build_root_system(family, rank)
    ws = sys.fundamental_weights()
    for i, w in enumerate(ws):
        for j, a in enumerate(sys.simple_roots):
            assert sys.pairing_vec(w.eps, a) == (1 if i == j else 0)


def test_levi_weights_e6():
    sys = build_root_system("E6", 6)
    levi = sys.levi_weights(range(5))  # pi' = pi minus alpha_6
    w1p = levi[0]
    expect = Weight(
        tuple(F(x, 2) for x in (0, 0, 0, 0, -1, -1, -1, 1))
    )  # (1/2)(e8-e7-e5-e6)
    assert w1p == expect
    w1 = sys.fundamental_weights()[0]
    w6 = sys.fundamental_weights()[5]
    assert (w1p - w1) == w6.scale(F(-1, 2))


def test_levi_weights_e7():
    sys = build_root_system("E7", 7)
    levi = sys.levi_weights([i for i in range(7) if i != 2])  # remove alpha_3
    w5p = levi[4]
    w5 = sys.fundamental_weights()[4]
    w3 = sys.fundamental_weights()[2]
    assert (w5p - w5) == -w3


def test_levi_weight_defining_property():
    sys = build_root_system("D", 6)
    subset = [0, 1, 2, 3, 4]  # remove alpha_6: A_5 Levi
    levi = sys.levi_weights(subset)
    for i in subset:
        for j in subset:
            assert sys.pairing_vec(levi[i].eps, sys.simple_roots[j]) == (
                1 if i == j else 0
            )
        # inside the span of the subset
        span = [sys.simple_roots[k].eps for k in subset]
        from adapted_pairs.linalg import solve_in_span

        assert solve_in_span(span, levi[i].eps) is not None


def test_multiple_of():
    w = Weight((F(2), F(4)))
    base = Weight((F(1), F(2)))
    assert multiple_of(w, base) == 2
    assert multiple_of(Weight((F(2), F(5))), base) is None
    assert multiple_of(Weight((F(0), F(0))), base) == 0


def test_unsupported_families():
    with pytest.raises(ValueError):
        build_root_system("A", 3)
    with pytest.raises(ValueError):
        build_root_system("B", 1)
    with pytest.raises(ValueError):
        build_root_system("D", 3)
    with pytest.raises(ValueError):
        build_root_system("E6", 7)
