"""Truncated maximal parabolic data: pi' = pi \\ {alpha_s}, involutions, index.

The involution j is -w0 of the full system and i extends -w0' of the Levi
part to all of pi.  Longest-element actions are computed exactly by the
descent algorithm (repeatedly reflecting a strictly dominant vector), which
produces a reduced word for w0 in |Delta+| steps; no Weyl group enumeration
and no case tables are involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .linalg import solve_dense
from .roots import Coeffs, Eps, Root, RootSystem, dot


def subsystem_roots(system: RootSystem, subset: Sequence[int]) -> List[Root]:
    """Positive roots supported on the given simple indices (0-based)."""
    idx = set(subset)
    out = []
    for r in system.positive_roots:
        if all(c == 0 or i in idx for i, c in enumerate(r.coeffs)):
            out.append(r)
    return out


def components(system: RootSystem, subset: Sequence[int]) -> List[List[int]]:
    """Connected components of the induced Dynkin graph, 0-based indices."""
    subset = sorted(subset)
    seen = set()
    comps = []
    for start in subset:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            cur = queue.pop()
            for j in subset:
                if j not in seen and system.inner(
                    system.simple_roots[cur], system.simple_roots[j]
                ) != 0:
                    seen.add(j)
                    comp.append(j)
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def minus_w0_on_subset(system: RootSystem, subset: Sequence[int]) -> Dict[int, int]:
    """The permutation alpha -> -w0(alpha) of the chosen simple roots.

    w0 is the longest element of the Weyl group generated by the subset.
    A reduced word for it falls out of the descent algorithm applied to the
    sum of the positive roots of the subsystem.
    """
    subset = sorted(subset)
    if not subset:
        return {}
    pos = subsystem_roots(system, subset)
    v: Eps = tuple(
        sum((r.eps[d] for r in pos), Fraction(0)) for d in range(system.dim)
    )
    simples = [system.simple_roots[i] for i in subset]
    word: List[Root] = []
    guard = len(pos) + 1
    while True:
        alpha = next((a for a in simples if dot(v, a.eps) > 0), None)
        if alpha is None:
            break
        v = system.reflect_vec(alpha, v)
        word.append(alpha)
        guard -= 1
        if guard < 0:
            raise RuntimeError("descent algorithm failed to terminate")
    perm: Dict[int, int] = {}
    eps_to_idx = {system.simple_roots[i].eps: i for i in subset}
    for i in subset:
        u = system.simple_roots[i].eps
        for alpha in word:
            u = system.reflect_vec(alpha, u)
        image = tuple(-x for x in u)
        perm[i] = eps_to_idx[image]
    return perm


@dataclass
class ParabolicData:
    """Everything attached to the truncation of p_{pi \\ {alpha_s}}."""

    system: RootSystem
    s: int  # 1-based index of the removed simple root
    pi_prime: Tuple[int, ...] = field(init=False)  # 0-based indices
    delta_pi_prime_pos: List[Root] = field(init=False)
    delta_pi_prime_neg: List[Root] = field(init=False)
    h_basis_indices: Tuple[int, ...] = field(init=False)
    j_map: Dict[int, int] = field(init=False)
    i_map: Dict[int, int] = field(init=False)
    orbits: List[FrozenSet[int]] = field(init=False)
    index: int = field(init=False)

    def __post_init__(self) -> None:
        sys = self.system
        if not 1 <= self.s <= sys.rank:
            raise ValueError(f"no simple root alpha_{self.s} in rank {sys.rank}")
        s0 = self.s - 1
        self.pi_prime = tuple(i for i in range(sys.rank) if i != s0)
        self.delta_pi_prime_pos = subsystem_roots(sys, self.pi_prime)
        self.delta_pi_prime_neg = [-r for r in self.delta_pi_prime_pos]
        self.h_basis_indices = self.pi_prime
        self.j_map = minus_w0_on_subset(sys, range(sys.rank))
        self.i_map = self._build_i()
        self.orbits = self._ij_orbits()
        self.index = len(self.orbits)
        self.dual_support_coeffs: FrozenSet[Coeffs] = frozenset(
            r.coeffs for r in sys.positive_roots
        ) | frozenset(r.coeffs for r in self.delta_pi_prime_neg)
        self._coroot_rows = [sys.coroot_eps(sys.simple_roots[i]) for i in self.pi_prime]
        self._gram = [
            [dot(a, b) for b in self._coroot_rows] for a in self._coroot_rows
        ]

    def _build_i(self) -> Dict[int, int]:
        sys = self.system
        i_map: Dict[int, int] = {}
        for comp in components(sys, self.pi_prime):
            i_map.update(minus_w0_on_subset(sys, comp))
        s0 = self.s - 1
        pi_prime = set(self.pi_prime)
        x = self.j_map[s0]
        while x in pi_prime:
            x = self.j_map[i_map[x]]
        i_map[s0] = x
        return i_map

    def _ij_orbits(self) -> List[FrozenSet[int]]:
        """Orbits of the cyclic group generated by the composition i o j."""
        sigma = {a: self.i_map[self.j_map[a]] for a in range(self.system.rank)}
        seen = set()
        orbits = []
        for start in range(self.system.rank):
            if start in seen:
                continue
            orbit = set()
            x = start
            while x not in orbit:
                orbit.add(x)
                seen.add(x)
                x = sigma[x]
            orbits.append(frozenset(orbit))
        return orbits

    # -- dual-space helpers --------------------------------------------------

    @property
    def h_dim(self) -> int:
        return len(self.pi_prime)

    def coroot_basis(self) -> List[Eps]:
        """Coroots alpha_i^vee, i != s, as Cartan vectors."""
        return list(self._coroot_rows)

    def project_h(self, v: Eps) -> Eps:
        """Orthogonal projection of a Cartan vector onto the truncated Cartan."""
        coeffs = self.h_in_coroot_basis(v, strict=False)
        out = [Fraction(0)] * self.system.dim
        for c, row in zip(coeffs, self._coroot_rows):
            for d in range(self.system.dim):
                out[d] += c * row[d]
        return tuple(out)

    def h_in_coroot_basis(self, v: Eps, strict: bool = True) -> List[Fraction]:
        """Coordinates of v in the coroot basis of the truncated Cartan.

        With strict=False the vector is first projected orthogonally (normal
        equations); with strict=True v must already lie in the span.
        """
        rhs = [dot(row, v) for row in self._coroot_rows]
        coeffs = solve_dense(self._gram, rhs)
        if coeffs is None:
            raise ArithmeticError("coroot Gram matrix is singular")
        if strict:
            recon = [Fraction(0)] * self.system.dim
            for c, row in zip(coeffs, self._coroot_rows):
                for d in range(self.system.dim):
                    recon[d] += c * row[d]
            if tuple(recon) != tuple(v):
                raise ValueError("vector is not in the truncated Cartan")
        return coeffs

    def pairing_on_coroots(self, gamma: Root) -> List[Fraction]:
        """gamma(alpha_i^vee) over the coroot basis order."""
        return [dot(gamma.eps, row) for row in self._coroot_rows]


def build_parabolic(system: RootSystem, s: int) -> ParabolicData:
    return ParabolicData(system, s)
