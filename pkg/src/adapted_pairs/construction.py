"""Case data for the supported truncated maximal parabolics.

Each builder materializes the set S = S+ | S- | Sm, one Heisenberg set per
element of S, and the complement T (plus T* in type E6), parameterized by
(family, n, s) rather than transcribed as literal tables.  The extremal
D case for s = n-1 and the E6 case s = 1 are obtained from s = n and s = 6
by the corresponding diagram flip.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .cascade import cascade_heisenberg_by_beta, indecomposables
from .parabolic import ParabolicData, build_parabolic
from .roots import Root, RootSystem, build_root_system


class OutOfScopeError(ValueError):
    """Raised for (family, n, s) outside the verified families."""


@dataclass(frozen=True)
class Candidate:
    """The sets S, Gamma_gamma, T (and T* in E6) for one case."""

    parabolic: ParabolicData
    family: str
    n: int
    s: int
    S_plus: Tuple[Root, ...]
    S_minus: Tuple[Root, ...]
    S_mixed: Tuple[Root, ...]
    gamma_sets: Dict[Root, FrozenSet[Root]]
    T: Tuple[Root, ...]
    T_star: Tuple[Root, ...]
    T_expected: Tuple[Root, ...]  # the closed-form complement list

    @property
    def S(self) -> Tuple[Root, ...]:
        return tuple(sorted(self.S_plus + self.S_minus + self.S_mixed))

    @property
    def system(self) -> RootSystem:
        return self.parabolic.system

    def dual_support(self) -> List[Root]:
        return sorted(
            list(self.system.positive_roots) + list(self.parabolic.delta_pi_prime_neg)
        )

    def case_id(self) -> str:
        return f"{self.family}_n{self.n}_s{self.s}"


@dataclass(frozen=True)
class OrbitStructure:
    """theta, S_alpha and the strata of O = union of the punctured Gamma sets."""

    O: Tuple[Root, ...]
    theta: Dict[Root, Root]
    centre_of: Dict[Root, Root]
    S_alpha: Dict[Root, Tuple[Root, ...]]
    strata: Dict[Root, int]
    O_plus: FrozenSet[Root]
    O_minus: FrozenSet[Root]
    O_mixed: FrozenSet[Root]


def case_plan(family: str, n: int, s: int) -> Optional[str]:
    """None when (family, n, s) is in scope, else the reason it is not."""
    if family == "B":
        if n < 2 or not 1 <= s <= n:
            return f"no maximal parabolic B_{n}, s={s}"
        if s % 2 == 1:
            return (
                "out of scope: for odd s the character bounds already "
                "coincide (prior work)"
            )
        return None
    if family == "D":
        if n < 4 or not 1 <= s <= n:
            return f"no maximal parabolic D_{n}, s={s}"
        if s <= n - 2:
            if s % 2 == 1:
                return (
                    "out of scope: for odd s <= n-2 the character bounds "
                    "already coincide (prior work)"
                )
            return None
        # extremal nodes s = n-1, n
        if n % 2 == 1:
            return (
                "out of scope: extremal cases with n odd have coinciding "
                "character bounds (prior work)"
            )
        if n == 4:
            return (
                "out of scope: extremal D_4 is excluded here (covered by "
                "other results)"
            )
        return None
    if family == "E6":
        if n != 6:
            return "type E6 has rank 6"
        if s in (1, 6):
            return None
        if 2 <= s <= 5:
            return (
                "out of scope: for s in {2,..,5} polynomiality is prior work"
            )
        return f"no simple root alpha_{s} in E6"
    if family == "E7":
        if n != 7:
            return "type E7 has rank 7"
        if s == 3:
            return None
        if 1 <= s <= 7:
            return "out of scope: only s=3 is treated for E7"
        return f"no simple root alpha_{s} in E7"
    return f"unsupported family {family!r}"


def _rt(system: RootSystem, terms: Sequence[Tuple[int, int]]) -> Root:
    """Root from epsilon terms [(coef, index1based), ...]."""
    v = [Fraction(0)] * system.dim
    for c, i in terms:
        v[i - 1] += Fraction(c)
    return system.root_from_eps(v)


def _split_signs(
    gamma_sets: Dict[Root, FrozenSet[Root]], declared_mixed: Sequence[Root]
) -> Tuple[Tuple[Root, ...], Tuple[Root, ...], Tuple[Root, ...]]:
    """S+/S-/Sm with Sm as declared per case.

    The declared mixed sets usually contain both signs, but may degenerate
    to one sign at boundary ranks (D_4, s = 2); the remaining sets must be
    sign-uniform, which is what the non-degeneracy conditions rely on.
    """
    mixed_set = set(declared_mixed)
    plus, minus = [], []
    for gamma in sorted(gamma_sets):
        if gamma in mixed_set:
            continue
        members = gamma_sets[gamma]
        pos = any(r.height > 0 for r in members)
        neg = any(r.height < 0 for r in members)
        if pos and neg:
            raise ValueError(f"set of {gamma.coeffs} mixes signs outside Sm")
        (plus if pos else minus).append(gamma)
    return tuple(plus), tuple(minus), tuple(sorted(mixed_set))


def _assemble(
    parab: ParabolicData,
    family: str,
    n: int,
    s: int,
    gamma_sets: Dict[Root, FrozenSet[Root]],
    t_expected: Sequence[Root],
    t_star: Sequence[Root] = (),
    mixed: Sequence[Root] = (),
) -> Candidate:
    used: set = set().union(*gamma_sets.values()) | set(t_star)
    support = set(parab.system.positive_roots) | set(parab.delta_pi_prime_neg)
    t_derived = tuple(sorted(support - used))
    plus, minus, mixed = _split_signs(gamma_sets, mixed)
    return Candidate(
        parabolic=parab,
        family=family,
        n=n,
        s=s,
        S_plus=plus,
        S_minus=minus,
        S_mixed=mixed,
        gamma_sets={g: gamma_sets[g] for g in sorted(gamma_sets)},
        T=t_derived,
        T_star=tuple(sorted(t_star)),
        T_expected=tuple(sorted(t_expected)),
    )


# ---------------------------------------------------------------------------
# type B, s even
# ---------------------------------------------------------------------------


def _build_B(n: int, s: int) -> Candidate:
    sys = build_root_system("B", n)
    parab = build_parabolic(sys, s)
    r = lambda terms: _rt(sys, terms)
    heis = cascade_heisenberg_by_beta(sys)

    gamma: Dict[Root, FrozenSet[Root]] = {}

    # Gamma of the mixed centre eps_s
    g_m = {r([(1, s)])}
    for i in range(1, n + 1):
        if i != s:
            g_m.add(r([(1, i)]))
            g_m.add(r([(1, s), (-1, i)]))
    for j in range(s + 1, n + 1):
        g_m.add(r([(1, s), (1, j)]))
        g_m.add(r([(-1, j)]))
    gamma[r([(1, s)])] = frozenset(g_m)

    # cascade members beta_i, shorts removed
    for i in range(1, s // 2):
        beta = r([(1, 2 * i - 1), (1, 2 * i)])
        removed = {r([(1, 2 * i - 1)]), r([(1, 2 * i)])}
        gamma[beta] = frozenset(set(heis[beta]) - removed)

    if n > s:
        centre = r([(1, s - 1), (1, s + 1)])
        g = {centre}
        for i in range(s + 2, n + 1):
            g.add(r([(1, s - 1), (1, i)]))
            g.add(r([(1, s + 1), (-1, i)]))
            g.add(r([(1, s - 1), (-1, i)]))
            g.add(r([(1, s + 1), (1, i)]))
        gamma[centre] = frozenset(g)

        for i in range(s // 2 + 1, (n - 1) // 2 + 1):
            centre = r([(1, 2 * i), (1, 2 * i + 1)])
            g = {centre}
            for j in range(2 * i + 2, n + 1):
                g.add(r([(1, 2 * i), (1, j)]))
                g.add(r([(1, 2 * i + 1), (-1, j)]))
                g.add(r([(1, 2 * i), (-1, j)]))
                g.add(r([(1, 2 * i + 1), (1, j)]))
            gamma[centre] = frozenset(g)

    for i in range(1, s // 2):
        centre = r([(1, s - i), (-1, i)])
        g = {centre}
        for j in range(i + 1, s - i):
            g.add(r([(1, j), (-1, i)]))
            g.add(r([(1, s - i), (-1, j)]))
        gamma[centre] = frozenset(g)

    for i in range(s // 2 + 1, n // 2 + 1):
        centre = r([(-1, 2 * i - 1), (-1, 2 * i)])
        g = {centre}
        for j in range(2 * i + 1, n + 1):
            g.add(r([(-1, 2 * i - 1), (1, j)]))
            g.add(r([(-1, 2 * i), (-1, j)]))
            g.add(r([(-1, 2 * i - 1), (-1, j)]))
            g.add(r([(-1, 2 * i), (1, j)]))
        gamma[centre] = frozenset(g)

    t_exp = [r([(1, s - 1), (1, s)])]
    t_exp += [r([(1, 2 * i - 1), (-1, 2 * i)]) for i in range(1, s // 2 + 1)]
    if n > s:
        t_exp.append(r([(1, s - 1), (-1, s + 1)]))
        t_exp += [
            r([(-1, s + 2 * j - 1), (1, s + 2 * j)])
            for j in range(1, (n - s) // 2 + 1)
        ]
        t_exp += [
            r([(1, s + 2 * k), (-1, s + 2 * k + 1)])
            for k in range(1, (n - s - 1) // 2 + 1)
        ]
    return _assemble(parab, "B", n, s, gamma, t_exp, mixed=[r([(1, s)])])


# ---------------------------------------------------------------------------
# type D, s even <= n-2
# ---------------------------------------------------------------------------


def _build_D(n: int, s: int) -> Candidate:
    sys = build_root_system("D", n)
    parab = build_parabolic(sys, s)
    r = lambda terms: _rt(sys, terms)
    heis = cascade_heisenberg_by_beta(sys)

    gamma: Dict[Root, FrozenSet[Root]] = {}

    for i in range(1, s // 2):
        beta = r([(1, 2 * i - 1), (1, 2 * i)])
        removed = {
            r([(1, 2 * i - 1), (-1, n)]),
            r([(1, 2 * i), (1, n)]),
        }
        gamma[beta] = frozenset(set(heis[beta]) - removed)

    centre = r([(1, s - 1), (1, s + 1)])
    g = {centre}
    for i in range(s + 2, n + 1):
        g.add(r([(1, s - 1), (1, i)]))
        g.add(r([(1, s + 1), (-1, i)]))
    for j in range(s + 2, n):
        g.add(r([(1, s - 1), (-1, j)]))
        g.add(r([(1, s + 1), (1, j)]))
    gamma[centre] = frozenset(g)

    for i in range(s // 2 + 1, (n - 2) // 2 + 1):
        centre = r([(1, 2 * i), (1, 2 * i + 1)])
        g = {centre}
        for j in range(2 * i + 2, n + 1):
            g.add(r([(1, 2 * i), (-1, j)]))
            g.add(r([(1, j), (1, 2 * i + 1)]))
        for k in range(2 * i + 2, n):
            g.add(r([(1, 2 * i), (1, k)]))
            g.add(r([(1, 2 * i + 1), (-1, k)]))
        gamma[centre] = frozenset(g)

    for i in range(1, s // 2):
        centre = r([(1, s - i), (-1, i)])
        g = {centre}
        for j in range(i + 1, s - i):
            g.add(r([(1, j), (-1, i)]))
            g.add(r([(1, s - i), (-1, j)]))
        gamma[centre] = frozenset(g)

    for i in range(s // 2 + 1, (n - 1) // 2 + 1):
        centre = r([(-1, 2 * i - 1), (-1, 2 * i)])
        g = {centre}
        for j in range(2 * i + 1, n):
            g.add(r([(-1, 2 * i - 1), (-1, j)]))
            g.add(r([(1, j), (-1, 2 * i)]))
        for k in range(2 * i + 1, n + 1):
            g.add(r([(-1, 2 * i - 1), (1, k)]))
            g.add(r([(-1, k), (-1, 2 * i)]))
        gamma[centre] = frozenset(g)

    centre = r([(1, s), (-1, n)])
    g = {centre}
    for i in range(1, n // 2 + 1):
        if i == s // 2 + 1:
            continue
        g.add(r([(1, s), (-1, 2 * i - 1)]))
        g.add(r([(1, 2 * i - 1), (-1, n)]))
    for j in range(s // 2, (n - 2) // 2 + 1):
        g.add(r([(1, s), (1, 2 * j + 1)]))
        g.add(r([(-1, 2 * j + 1), (-1, n)]))
    gamma[centre] = frozenset(g)

    centre = r([(1, s), (1, n)])
    g = {centre}
    for i in range(1, (n - 1) // 2 + 1):
        if i == s // 2:
            continue
        g.add(r([(1, s), (-1, 2 * i)]))
        g.add(r([(1, 2 * i), (1, n)]))
    g.add(r([(1, s), (-1, s + 1)]))
    g.add(r([(1, s + 1), (1, n)]))
    for j in range(s // 2 + 1, (n - 1) // 2 + 1):
        g.add(r([(1, s), (1, 2 * j)]))
        g.add(r([(-1, 2 * j), (1, n)]))
    gamma[centre] = frozenset(g)

    t_exp = [r([(1, s - 1), (1, s)]), r([(1, s - 1), (-1, s + 1)])]
    t_exp += [r([(1, 2 * i - 1), (-1, 2 * i)]) for i in range(1, s // 2 + 1)]
    t_exp += [
        r([(1, 2 * j), (-1, 2 * j + 1)])
        for j in range(s // 2 + 1, (n - 1) // 2 + 1)
    ]
    t_exp += [
        r([(-1, 2 * k + 1), (1, 2 * k + 2)])
        for k in range(s // 2, (n - 2) // 2 + 1)
    ]
    mixed = [r([(1, s), (-1, n)]), r([(1, s), (1, n)])]
    return _assemble(parab, "D", n, s, gamma, t_exp, mixed=mixed)


# ---------------------------------------------------------------------------
# type D, extremal s = n (n even >= 6)
# ---------------------------------------------------------------------------


def _build_D_extremal(n: int) -> Candidate:
    sys = build_root_system("D", n)
    parab = build_parabolic(sys, n)
    r = lambda terms: _rt(sys, terms)
    heis = cascade_heisenberg_by_beta(sys)

    gamma: Dict[Root, FrozenSet[Root]] = {}

    for k in range(2, n // 2 - 2):
        centre = r([(1, 2 * k), (-1, 2 * k - 2)])
        g = {centre}
        for i in range(1, 2 * k - 2):
            g.add(r([(1, 2 * k), (-1, i)]))
            g.add(r([(1, i), (-1, 2 * k - 2)]))
        gamma[centre] = frozenset(g)

    if n >= 8:
        centre = r([(1, n - 3), (-1, n - 6)])
        g = {centre}
        for i in range(1, n - 6):
            g.add(r([(1, n - 3), (-1, i)]))
            g.add(r([(1, i), (-1, n - 6)]))
        gamma[centre] = frozenset(g)

    centre = r([(1, n - 4), (-1, n - 5)])
    g = {centre, r([(1, n - 3), (-1, n - 5)]), r([(1, n - 4), (-1, n - 3)])}
    for i in range(1, n // 2 - 2):
        g.add(r([(1, n - 4), (-1, 2 * i)]))
        g.add(r([(1, 2 * i), (-1, n - 5)]))
    gamma[centre] = frozenset(g)

    centre = r([(1, n - 2), (-1, n - 4)])
    g = {
        centre,
        r([(1, n - 2), (-1, n - 1)]),
        r([(1, n - 1), (-1, n - 4)]),
        r([(1, n - 2), (-1, n)]),
        r([(1, n), (-1, n - 4)]),
    }
    for i in range(1, n - 4):
        g.add(r([(1, n - 2), (-1, i)]))
        g.add(r([(1, i), (-1, n - 4)]))
    gamma[centre] = frozenset(g)

    centre = r([(1, n), (-1, n - 3)])
    g = {
        centre,
        r([(1, n), (-1, n - 2)]),
        r([(1, n - 2), (-1, n - 3)]),
        r([(1, n), (-1, n - 1)]),
        r([(1, n - 1), (-1, n - 3)]),
    }
    for i in range(1, n - 5):
        g.add(r([(1, n), (-1, i)]))
        g.add(r([(1, i), (-1, n - 3)]))
    gamma[centre] = frozenset(g)

    centre = r([(1, n - 3), (1, n - 1)])
    g = {
        centre,
        r([(1, n - 3), (1, n)]),
        r([(1, n - 1), (-1, n)]),
        r([(1, n - 3), (-1, n)]),
        r([(1, n), (1, n - 1)]),
        r([(1, n - 3), (-1, n - 2)]),
        r([(1, n - 2), (1, n - 1)]),
        r([(1, n - 3), (1, n - 2)]),
        r([(-1, n - 2), (1, n - 1)]),
    }
    for i in range(1, n - 4):
        g.add(r([(1, n - 1), (-1, i)]))
        g.add(r([(1, i), (1, n - 3)]))
    gamma[centre] = frozenset(g)

    # Heisenberg sets of the cascade centres beta_i, by decreasing induction:
    # whatever of H_{beta_i} is still unused, plus the listed negative-side
    # completions.
    for i in range(n // 2 - 2, 0, -1):
        beta = r([(1, 2 * i - 1), (1, 2 * i)])
        used: set = set().union(*gamma.values())
        g = set(heis[beta]) - used
        extra_hi = n - 6 if i == n // 2 - 2 else 2 * i - 2
        for j in range(1, extra_hi + 1):
            g.add(r([(1, j), (1, 2 * i)]))
            g.add(r([(1, 2 * i - 1), (-1, j)]))
        if i == n // 2 - 2:
            for j in range(1, n // 2 - 2):
                g.add(r([(1, n - 4), (-1, 2 * j - 1)]))
                g.add(r([(1, 2 * j - 1), (1, n - 5)]))
        gamma[beta] = frozenset(g)

    t_exp = [
        r([(1, n - 3), (-1, n - 1)]),
        r([(1, n - 2), (1, n)]),
        r([(1, n), (-1, n - 5)]),
        r([(1, n - 3), (-1, n - 4)]),
    ]
    t_exp += [
        r([(1, n - 2 * k), (-1, n - 2 * k - 1)]) for k in range(3, n // 2)
    ]
    uniform = {r([(1, 1), (1, 2)])}
    if n == 6:
        uniform.add(r([(1, n), (-1, n - 3)]))
    mixed = [g for g in gamma if g not in uniform]
    return _assemble(parab, "D", n, n, gamma, t_exp, mixed=mixed)


# ---------------------------------------------------------------------------
# E6, s = 6
# ---------------------------------------------------------------------------


def _build_E6() -> Candidate:
    sys = build_root_system("E6", 6)
    parab = build_parabolic(sys, 6)
    rc = lambda c: sys.root_from_coeffs(c)
    heis = cascade_heisenberg_by_beta(sys)
    heis_levi = cascade_heisenberg_by_beta(sys, parab.delta_pi_prime_pos)

    beta1 = rc((1, 2, 2, 3, 2, 1))
    beta2 = rc((1, 0, 1, 1, 1, 1))
    beta3 = rc((0, 0, 1, 1, 1, 0))
    beta1p = rc((1, 1, 2, 2, 1, 0))
    s5 = rc((0, 0, 0, -1, -1, 0))  # alpha_2 - beta_2'

    gamma: Dict[Root, FrozenSet[Root]] = {}
    gamma[beta1] = frozenset(
        set(heis[beta1]) - {rc((0, 1, 1, 1, 0, 0)), rc((1, 1, 1, 2, 2, 1))}
    )
    gamma[beta2] = frozenset(
        set(heis[beta2]) - {rc((1, 0, 1, 1, 1, 0)), rc((0, 0, 0, 0, 0, 1))}
    )
    gamma[beta3] = frozenset(heis[beta3])
    gamma[-beta1p] = frozenset(-h for h in heis_levi[beta1p])
    gamma[s5] = frozenset(
        {s5, rc((0, 0, 0, -1, 0, 0)), rc((0, 0, 0, 0, -1, 0))}
    )

    t_star = (
        rc((1, 1, 1, 2, 2, 1)),
        rc((1, 0, 1, 1, 1, 0)),
        rc((-1, 0, 0, 0, 0, 0)),
        rc((0, -1, 0, 0, 0, 0)),
        rc((0, -1, 0, -1, 0, 0)),
        rc((0, -1, 0, -1, -1, 0)),
    )
    t_exp = (
        rc((0, 0, 0, 1, 0, 0)),
        rc((0, 0, 0, 0, 0, 1)),
        rc((0, 1, 1, 1, 0, 0)),
    )
    return _assemble(parab, "E6", 6, 6, gamma, t_exp, t_star, mixed=())


# ---------------------------------------------------------------------------
# E7, s = 3, via the embedded extremal D6
# ---------------------------------------------------------------------------


def e7_d6_embedding() -> Dict[Root, Root]:
    """Isomorphism from the D6 root system onto the E7 roots orthogonal to
    the highest root, computed from the induced simple systems.

    The labeling is pinned by two requirements: positive roots map to
    positive roots, and the standard Levi copy A5 inside D6 (the span of the
    first five simple roots) lands on the A5 part of pi' = pi \\ {alpha_3}.
    """
    e7 = build_root_system("E7", 7)
    d6 = build_root_system("D", 6)
    b1 = e7.highest_root()
    r_pos = [r for r in e7.positive_roots if e7.inner(r, b1) == 0]
    simples = indecomposables(e7, r_pos)
    if len(simples) != 6:
        raise RuntimeError("unexpected orthogonal complement in E7")
    adj = {
        i: [j for j in range(6) if j != i and e7.inner(simples[i], simples[j]) != 0]
        for i in range(6)
    }
    centre = next(i for i in range(6) if len(adj[i]) == 3)
    tips = [i for i in adj[centre] if len(adj[i]) == 1]
    chain_start = next(i for i in adj[centre] if i not in tips)
    chain = [centre, chain_start]
    while True:
        nxt = [j for j in adj[chain[-1]] if j != chain[-2]]
        if not nxt:
            break
        chain.append(nxt[0])
    # chain = [d6 alpha_4, alpha_3, alpha_2, alpha_1]; tips are alpha_5/alpha_6
    in_levi = [i for i in tips if simples[i].coeffs[2] == 0]
    if len(in_levi) != 1:
        raise RuntimeError("could not pin the D6 fork orientation")
    a5, a6 = in_levi[0], next(i for i in tips if i != in_levi[0])
    image = {
        1: simples[chain[3]],
        2: simples[chain[2]],
        3: simples[chain[1]],
        4: simples[centre],
        5: simples[a5],
        6: simples[a6],
    }
    phi: Dict[Root, Root] = {}
    for r in d6.positive_roots:
        v = [Fraction(0)] * e7.dim
        for k, c in enumerate(r.coeffs, start=1):
            if c:
                for d in range(e7.dim):
                    v[d] += c * image[k].eps[d]
        target = e7.root_from_eps(v)
        phi[r] = target
        phi[-r] = -target
    return phi


def _build_E7() -> Candidate:
    e7 = build_root_system("E7", 7)
    parab = build_parabolic(e7, 3)
    d6_case = _build_D_extremal(6)
    phi = e7_d6_embedding()

    b1 = e7.highest_root()
    h_b1 = frozenset(r for r in e7.positive_roots if e7.inner(r, b1) > 0)

    gamma: Dict[Root, FrozenSet[Root]] = {b1: h_b1}
    for centre, members in d6_case.gamma_sets.items():
        gamma[phi[centre]] = frozenset(phi[m] for m in members)

    t_exp = [e7.root_from_coeffs((-1, 0, 0, 0, 0, 0, 0))]
    t_exp += [phi[t] for t in d6_case.T]
    mixed = [phi[g] for g in d6_case.S_mixed]
    return _assemble(parab, "E7", 7, 3, gamma, t_exp, mixed=mixed)


# ---------------------------------------------------------------------------
# diagram flips
# ---------------------------------------------------------------------------


def _flip_candidate(cand: Candidate, perm: Dict[int, int], new_s: int) -> Candidate:
    """Transport a candidate along a diagram automorphism.

    perm maps 1-based simple indices; sets are relabeled at the coefficient
    level and the parabolic is rebuilt for the new removed root.
    """
    sys = cand.system
    rank = sys.rank

    def move(r: Root) -> Root:
        new = [0] * rank
        for i, c in enumerate(r.coeffs, start=1):
            new[perm.get(i, i) - 1] = c
        return sys.root_from_coeffs(tuple(new))

    parab = build_parabolic(sys, new_s)
    gamma = {
        move(g): frozenset(move(m) for m in members)
        for g, members in cand.gamma_sets.items()
    }
    t_star = tuple(move(t) for t in cand.T_star)
    t_exp = tuple(move(t) for t in cand.T_expected)
    mixed = tuple(move(g) for g in cand.S_mixed)
    return _assemble(parab, cand.family, cand.n, new_s, gamma, t_exp, t_star, mixed)


def build_case(family: str, n: int, s: int) -> Candidate:
    """Materialize the case data; raises OutOfScopeError outside the scope."""
    reason = case_plan(family, n, s)
    if reason is not None:
        raise OutOfScopeError(reason)
    if family == "B":
        return _build_B(n, s)
    if family == "D":
        if s <= n - 2:
            return _build_D(n, s)
        if s == n:
            return _build_D_extremal(n)
        # s = n-1: apply the alpha_{n-1} <-> alpha_n diagram swap to s = n
        return _flip_candidate(
            _build_D_extremal(n), {n - 1: n, n: n - 1}, n - 1
        )
    if family == "E6":
        if s == 6:
            return _build_E6()
        return _flip_candidate(_build_E6(), {1: 6, 6: 1, 3: 5, 5: 3}, 1)
    if family == "E7":
        return _build_E7()
    raise OutOfScopeError(f"unsupported family {family!r}")


def in_scope_cases(max_rank: int) -> List[Tuple[str, int, int]]:
    """The sweep plan: every primary case with rank at most max_rank."""
    cases: List[Tuple[str, int, int]] = []
    for n in range(2, max_rank + 1):
        for s in range(2, n + 1, 2):
            cases.append(("B", n, s))
    for n in range(4, max_rank + 1):
        for s in range(2, n - 1, 2):
            cases.append(("D", n, s))
    for n in range(6, max_rank + 1, 2):
        cases.append(("D", n, n))
    if max_rank >= 6:
        cases.append(("E6", 6, 6))
    if max_rank >= 7:
        cases.append(("E7", 7, 3))
    return cases


def orbit_structure(cand: Candidate) -> OrbitStructure:
    """theta, S_alpha and strata; requires the Heisenberg property."""
    theta: Dict[Root, Root] = {}
    centre_of: Dict[Root, Root] = {}
    sign_of_centre: Dict[Root, str] = {}
    for g in cand.S_plus:
        sign_of_centre[g] = "+"
    for g in cand.S_minus:
        sign_of_centre[g] = "-"
    for g in cand.S_mixed:
        sign_of_centre[g] = "m"
    for g, members in cand.gamma_sets.items():
        for a in members:
            if a == g:
                continue
            partner = g - a
            if partner.coeffs == a.coeffs or partner not in members:
                raise ValueError(f"{g}: not a Heisenberg set at {a}")
            theta[a] = cand.system.try_root(partner)
            centre_of[a] = g
    o_sorted = tuple(sorted(theta))
    o_set = set(o_sorted)
    s_alpha: Dict[Root, Tuple[Root, ...]] = {}
    for a in o_sorted:
        hits = []
        for g in cand.gamma_sets:
            b = cand.system.try_root(g - a)
            if b is not None and b in o_set:
                hits.append(b)
        s_alpha[a] = tuple(sorted(hits))
    strata = {a: len(s_alpha[a]) for a in o_sorted}
    by_sign = {"+": set(), "-": set(), "m": set()}
    for a in o_sorted:
        by_sign[sign_of_centre[centre_of[a]]].add(a)
    return OrbitStructure(
        O=o_sorted,
        theta=theta,
        centre_of=centre_of,
        S_alpha=s_alpha,
        strata=strata,
        O_plus=frozenset(by_sign["+"]),
        O_minus=frozenset(by_sign["-"]),
        O_mixed=frozenset(by_sign["m"]),
    )
