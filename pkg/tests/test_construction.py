from fractions import Fraction

import pytest

from adapted_pairs.construction import (
    OutOfScopeError,
    build_case,
    case_plan,
    e7_d6_embedding,
    in_scope_cases,
    orbit_structure,
)
from adapted_pairs.roots import build_root_system

F = Fraction

ALL_CASES = in_scope_cases(10)


def _ev(system, terms):
    v = [F(0)] * system.dim
    for c, i in terms:
        v[i - 1] += F(c)
    return system.root_from_eps(v)


@pytest.mark.parametrize("family,n,s", ALL_CASES)
def test_s_size_is_truncated_cartan_dimension(family, n, s):
    cand = build_case(family, n, s)
    assert len(cand.S) == n - 1 == cand.parabolic.h_dim


@pytest.mark.parametrize("family,n,s", ALL_CASES)
def test_partition_and_t_matches_closed_form(family, n, s):
    cand = build_case(family, n, s)
    support = set(cand.system.positive_roots) | set(
        cand.parabolic.delta_pi_prime_neg
    )
    union = set()
    for members in cand.gamma_sets.values():
        assert not (union & members)
        union |= members
    assert union | set(cand.T) | set(cand.T_star) == support
    assert cand.T == cand.T_expected
    assert len(cand.T) == cand.parabolic.index


def test_b_case_s_sets():
    cand = build_case("B", 8, 6)
    sys = cand.system
    assert set(cand.S_mixed) == {_ev(sys, [(1, 6)])}
    assert _ev(sys, [(1, 5), (-1, 1)]) in cand.S_minus  # eps_{s-i} - eps_i
    assert _ev(sys, [(-1, 7), (-1, 8)]) in cand.S_minus
    assert _ev(sys, [(1, 5), (1, 7)]) in cand.S_plus


def test_b_gamma_eps_s_pairing():
    cand = build_case("B", 6, 4)
    sys = cand.system
    os = orbit_structure(cand)
    centre = _ev(sys, [(1, 4)])
    for i in (1, 2, 3, 5, 6):
        assert os.theta[_ev(sys, [(1, i)])] == _ev(sys, [(1, 4), (-1, i)])


def test_d_case_s_mixed():
    cand = build_case("D", 8, 4)
    sys = cand.system
    assert set(cand.S_mixed) == {
        _ev(sys, [(1, 4), (-1, 8)]),
        _ev(sys, [(1, 4), (1, 8)]),
    }


def test_d4_s2_degenerate_mixed_set_is_positive():
    # boundary case: the declared mixed set at eps_2+eps_4 is sign-uniform
    cand = build_case("D", 4, 2)
    sys = cand.system
    centre = _ev(sys, [(1, 2), (1, 4)])
    assert centre in cand.S_mixed
    assert all(r.height > 0 for r in cand.gamma_sets[centre])


def test_d_extremal_split():
    cand = build_case("D", 8, 8)
    sys = cand.system
    assert cand.S_plus == (_ev(sys, [(1, 1), (1, 2)]),)
    assert cand.S_minus == ()
    assert len(cand.S_mixed) == 6
    cand6 = build_case("D", 6, 6)
    assert cand6.S_plus == (_ev(cand6.system, [(1, 1), (1, 2)]),)
    assert cand6.S_minus == (_ev(cand6.system, [(1, 6), (-1, 3)]),)


def test_e6_verbatim_sets():
    cand = build_case("E6", 6, 6)
    assert sorted(r.coeffs for r in cand.S) == sorted(
        [
            (1, 2, 2, 3, 2, 1),
            (1, 0, 1, 1, 1, 1),
            (0, 0, 1, 1, 1, 0),
            (-1, -1, -2, -2, -1, 0),
            (0, 0, 0, -1, -1, 0),
        ]
    )
    assert sorted(r.coeffs for r in cand.T) == sorted(
        [(0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 0, 1), (0, 1, 1, 1, 0, 0)]
    )
    assert sorted(r.coeffs for r in cand.T_star) == sorted(
        [
            (1, 1, 1, 2, 2, 1),
            (1, 0, 1, 1, 1, 0),
            (-1, 0, 0, 0, 0, 0),
            (0, -1, 0, 0, 0, 0),
            (0, -1, 0, -1, 0, 0),
            (0, -1, 0, -1, -1, 0),
        ]
    )
    assert len(cand.S_mixed) == 0 and len(cand.S_plus) == 3


def test_e7_verbatim_sets():
    cand = build_case("E7", 7, 3)
    assert sorted(r.coeffs for r in cand.S) == sorted(
        [
            (2, 2, 3, 4, 3, 2, 1),
            (0, 1, 1, 2, 2, 2, 1),
            (0, 1, 1, 1, 1, 0, 0),
            (0, -1, 0, -1, -1, 0, 0),
            (0, 0, 0, 0, -1, -1, 0),
            (0, 0, 0, 0, 0, 0, -1),
        ]
    )
    assert sorted(r.coeffs for r in cand.T) == sorted(
        [
            (-1, 0, 0, 0, 0, 0, 0),
            (0, 0, 0, 1, 1, 0, 0),
            (0, 0, 1, 1, 0, 0, 0),
            (0, -1, 0, -1, -1, -1, -1),
            (0, 0, 0, 0, 0, -1, 0),
        ]
    )
    # the highest-root Heisenberg set is maximal in Delta+
    b1 = cand.system.highest_root()
    assert cand.gamma_sets[b1] == frozenset(
        r for r in cand.system.positive_roots if cand.system.inner(r, b1) > 0
    )


def test_e7_embedding_is_root_isomorphism():
    e7 = build_root_system("E7", 7)
    d6 = build_root_system("D", 6)
    phi = e7_d6_embedding()
    b1 = e7.highest_root()
    for a in d6.positive_roots:
        assert e7.inner(phi[a], b1) == 0
        for b in d6.positive_roots:
            assert d6.inner(a, b) == e7.inner(phi[a], phi[b])
            s = d6.try_root(a + b)
            if s is not None:
                assert phi[s] == e7.try_root(phi[a] + phi[b])


def test_flip_d_extremal():
    flipped = build_case("D", 6, 5)
    assert flipped.s == 5
    base = build_case("D", 6, 6)
    assert len(flipped.S) == len(base.S)
    assert len(flipped.T) == len(base.T) == flipped.parabolic.index
    # T transports along eps_6 -> -eps_6
    def flipv(r):
        return tuple(list(r.eps[:-1]) + [-r.eps[-1]])
    assert {flipv(t) for t in base.T} == {t.eps for t in flipped.T}


def test_flip_e6():
    flipped = build_case("E6", 6, 1)
    perm = {1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4}
    base = build_case("E6", 6, 6)
    moved = {
        tuple(c[perm[i + 1] - 1] for i in range(6)) for c in
        (r.coeffs for r in base.S)
    }
    # moving coefficients: new[perm(i)] = old[i]
    expect = set()
    for r in base.S:
        new = [0] * 6
        for i, c in enumerate(r.coeffs, start=1):
            new[perm[i] - 1] = c
        expect.add(tuple(new))
    assert {r.coeffs for r in flipped.S} == expect


def test_orbit_structure_theta_involution():
    for family, n, s in [("B", 6, 4), ("D", 7, 4), ("D", 8, 8), ("E7", 7, 3)]:
        cand = build_case(family, n, s)
        os = orbit_structure(cand)
        for a in os.O:
            assert os.theta[os.theta[a]] == a
            assert (a + os.theta[a]) == os.centre_of[a]
            assert os.theta[a] in os.S_alpha[a]


def test_b_eps_s_plus_next_is_in_o1():
    for n, s in [(6, 4), (8, 6), (10, 4)]:
        cand = build_case("B", n, s)
        os = orbit_structure(cand)
        a = _ev(cand.system, [(1, s), (1, s + 1)])
        assert os.strata[a] == 1


def test_b_deep_strata_lie_in_o_minus_non_mixed():
    # roots with more than two partners sit in the A-part negatives and
    # never neighbour the mixed region
    for n, s in [(8, 6), (10, 8), (12, 10)]:
        cand = build_case("B", n, s)
        os = orbit_structure(cand)
        for a in os.O:
            if os.strata[a] > 2:
                assert a in os.O_minus
                assert a.height < 0
                assert not any(b in os.O_mixed for b in os.S_alpha[a])


def test_out_of_scope():
    for family, n, s, frag in [
        ("B", 5, 3, "odd"),
        ("D", 8, 5, "odd"),
        ("D", 4, 4, "D_4"),
        ("D", 7, 7, "n odd"),
        ("E6", 6, 3, "prior work"),
        ("E7", 7, 5, "only s=3"),
    ]:
        with pytest.raises(OutOfScopeError) as exc:
            build_case(family, n, s)
        assert frag in str(exc.value)
        assert case_plan(family, n, s) is not None


def test_in_scope_enumeration():
    cases = in_scope_cases(4)
    assert ("B", 2, 2) in cases and ("B", 4, 2) in cases and ("B", 4, 4) in cases
    assert ("D", 4, 2) in cases
    assert all(c[0] != "E6" for c in cases)
    cases8 = in_scope_cases(8)
    assert ("D", 6, 6) in cases8 and ("D", 8, 8) in cases8
    assert ("E6", 6, 6) in cases8 and ("E7", 7, 3) in cases8
