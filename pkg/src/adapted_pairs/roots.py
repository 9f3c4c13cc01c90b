"""Exact root systems of types B, D, E6, E7 in Bourbaki epsilon-coordinates.

Roots carry two synchronized views: the coordinate vector in the orthonormal
epsilon basis of the ambient space (dimension n for B_n/D_n, 8 for E6/E7) and
the integer coefficient vector over the simple roots.  All arithmetic is in
fractions.Fraction; the bilinear form is the euclidean dot product, which
agrees with the Killing form up to a global scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import solve_dense

Eps = Tuple[Fraction, ...]
Coeffs = Tuple[int, ...]

SUPPORTED = {"B", "D", "E6", "E7"}


def _frac(vals: Iterable) -> Eps:
    return tuple(Fraction(v) for v in vals)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vec_add(a: Eps, b: Eps) -> Eps:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Eps, b: Eps) -> Eps:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: Fraction, a: Sequence[Fraction]) -> Eps:
    return tuple(Fraction(c) * x for x in a)


@dataclass(frozen=True)
class Root:
    """A vector of the root lattice with both coordinate views."""

    coeffs: Coeffs
    eps: Eps

    def __add__(self, other: "Root") -> "Root":
        return Root(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            vec_add(self.eps, other.eps),
        )

    def __sub__(self, other: "Root") -> "Root":
        return Root(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
            vec_sub(self.eps, other.eps),
        )

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.coeffs), tuple(-x for x in self.eps))

    def __eq__(self, other) -> bool:
        return isinstance(other, Root) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __lt__(self, other: "Root") -> bool:
        return self.coeffs < other.coeffs

    @property
    def height(self) -> int:
        """rho-height: the sum of simple-root coefficients."""
        return sum(self.coeffs)

    def __repr__(self) -> str:
        return f"Root{self.coeffs}"


@dataclass(frozen=True)
class Weight:
    """An exact rational vector in the epsilon basis."""

    eps: Eps

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(vec_add(self.eps, other.eps))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(vec_sub(self.eps, other.eps))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-x for x in self.eps))

    def scale(self, c) -> "Weight":
        return Weight(vec_scale(Fraction(c), self.eps))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.eps)

    def __repr__(self) -> str:
        return f"Weight{tuple(str(x) for x in self.eps)}"


def multiple_of(w: Weight, base: Weight) -> Optional[Fraction]:
    """The exact c with w == c*base, or None when not proportional."""
    ratio: Optional[Fraction] = None
    for x, y in zip(w.eps, base.eps):
        if y == 0:
            if x != 0:
                return None
            continue
        c = x / y
        if ratio is None:
            ratio = c
        elif ratio != c:
            return None
    if ratio is None:
        ratio = Fraction(0) if w.is_zero() else None
    return ratio


def _simple_root_data(family: str, rank: int) -> List[Eps]:
    if family == "B":
        if rank < 2:
            raise ValueError("type B needs rank >= 2")
        simples = []
        for i in range(rank - 1):
            v = [0] * rank
            v[i], v[i + 1] = 1, -1
            simples.append(_frac(v))
        v = [0] * rank
        v[rank - 1] = 1
        simples.append(_frac(v))
        return simples
    if family == "D":
        if rank < 4:
            raise ValueError("type D needs rank >= 4")
        simples = []
        for i in range(rank - 1):
            v = [0] * rank
            v[i], v[i + 1] = 1, -1
            simples.append(_frac(v))
        v = [0] * rank
        v[rank - 2], v[rank - 1] = 1, 1
        simples.append(_frac(v))
        return simples
    if family in ("E6", "E7"):
        n = 6 if family == "E6" else 7
        if rank != n:
            raise ValueError(f"type {family} has rank {n}")
        half = Fraction(1, 2)
        a1 = [half, -half, -half, -half, -half, -half, -half, half]
        simples = [_frac(a1), _frac([1, 1, 0, 0, 0, 0, 0, 0])]
        for i in range(n - 2):
            v = [Fraction(0)] * 8
            v[i], v[i + 1] = Fraction(-1), Fraction(1)
            simples.append(tuple(v))
        return simples
    raise ValueError(f"unsupported family {family!r}")


class RootSystem:
    """Root system data: simple roots, positive roots, exact form."""

    def __init__(self, family: str, rank: int):
        if family not in SUPPORTED:
            raise ValueError(f"unsupported family {family!r}")
        self.family = family
        self.rank = rank
        eps_simples = _simple_root_data(family, rank)
        self.dim = len(eps_simples[0])
        self.simple_roots: List[Root] = []
        for i, v in enumerate(eps_simples):
            coeffs = tuple(1 if j == i else 0 for j in range(rank))
            self.simple_roots.append(Root(coeffs, v))
        self.positive_roots = self._generate_positive()
        self._by_coeffs: Dict[Coeffs, Root] = {}
        for r in self.positive_roots:
            self._by_coeffs[r.coeffs] = r
            self._by_coeffs[(-r).coeffs] = -r
        self._by_eps: Dict[Eps, Root] = {r.eps: r for r in self._by_coeffs.values()}
        self._fundamental: Optional[List[Weight]] = None

    # -- construction -----------------------------------------------------

    def _generate_positive(self) -> List[Root]:
        """Closure from the simple roots via root strings.

        beta + alpha is a root iff p - <beta, alpha^vee> > 0 where p is the
        largest k with beta - k*alpha already a root; processing by height
        makes every needed membership test refer to shorter roots only.
        """
        known: Dict[Coeffs, Root] = {r.coeffs: r for r in self.simple_roots}
        frontier = list(self.simple_roots)
        while frontier:
            new_frontier: List[Root] = []
            for beta in frontier:
                for alpha in self.simple_roots:
                    if beta == alpha:
                        continue
                    # The alpha-string through beta never crosses zero, so
                    # membership checks against shorter known roots suffice.
                    p = 0
                    probe = beta - alpha
                    while probe.coeffs in known:
                        p += 1
                        probe = probe - alpha
                    q = p - self.pairing(beta, alpha)
                    if q > 0:
                        cand = beta + alpha
                        if cand.coeffs not in known:
                            known[cand.coeffs] = cand
                            new_frontier.append(cand)
            frontier = new_frontier
        return sorted(known.values())

    # -- basic queries -----------------------------------------------------

    def zero_coeffs(self) -> Coeffs:
        return tuple(0 for _ in range(self.rank))

    def is_root(self, r: Root) -> bool:
        return r.coeffs in self._by_coeffs

    def root_from_coeffs(self, coeffs: Sequence[int]) -> Root:
        return self._by_coeffs[tuple(coeffs)]

    def root_from_eps(self, eps: Sequence) -> Root:
        return self._by_eps[_frac(eps)]

    def try_root(self, r: Root) -> Optional[Root]:
        return self._by_coeffs.get(r.coeffs)

    def inner(self, a, b) -> Fraction:
        """Symmetric bilinear form (euclidean dot product) on eps vectors."""
        av = a.eps if hasattr(a, "eps") else a
        bv = b.eps if hasattr(b, "eps") else b
        return dot(av, bv)

    def coroot_eps(self, r: Root) -> Eps:
        """alpha^vee as a Cartan vector: 2 alpha / (alpha, alpha)."""
        return vec_scale(Fraction(2) / dot(r.eps, r.eps), r.eps)

    def pairing_vec(self, v: Sequence[Fraction], alpha: Root) -> Fraction:
        """<v, alpha^vee> = 2 (v, alpha) / (alpha, alpha)."""
        return Fraction(2) * dot(v, alpha.eps) / dot(alpha.eps, alpha.eps)

    def pairing(self, a: Root, alpha: Root) -> Fraction:
        return self.pairing_vec(a.eps, alpha)

    def reflect(self, alpha: Root, beta: Root) -> Root:
        """r_alpha(beta) = beta - <beta, alpha^vee> alpha."""
        k = self.pairing(beta, alpha)
        if k.denominator != 1:
            raise ValueError("non-integral Cartan pairing between roots")
        coeffs = tuple(b - int(k) * a for a, b in zip(alpha.coeffs, beta.coeffs))
        eps = vec_sub(beta.eps, vec_scale(k, alpha.eps))
        return Root(coeffs, eps)

    def reflect_vec(self, alpha: Root, v: Eps) -> Eps:
        k = self.pairing_vec(v, alpha)
        return vec_sub(v, vec_scale(k, alpha.eps))

    # -- weights -----------------------------------------------------------

    def fundamental_weights(self) -> List[Weight]:
        """The weights with <w_i, alpha_j^vee> = delta_ij, inside span(pi)."""
        if self._fundamental is None:
            self._fundamental = self._weights_for(list(range(self.rank)))
        return self._fundamental

    def levi_weights(self, subset: Sequence[int]) -> Dict[int, Weight]:
        """Fundamental weights of the subsystem, inside span of the subset.

        subset holds 0-based simple-root indices.
        """
        ws = self._weights_for(sorted(subset))
        return dict(zip(sorted(subset), ws))

    def _weights_for(self, idxs: List[int]) -> List[Weight]:
        simples = [self.simple_roots[i] for i in idxs]
        k = len(simples)
        cartan = [
            [self.pairing(simples[j], simples[i]) for j in range(k)]
            for i in range(k)
        ]
        weights = []
        for i in range(k):
            rhs = [Fraction(1 if j == i else 0) for j in range(k)]
            coeffs = solve_dense(cartan, rhs)
            if coeffs is None:
                raise ValueError("degenerate Cartan matrix")
            v = tuple(
                sum((c * s.eps[d] for c, s in zip(coeffs, simples)), Fraction(0))
                for d in range(self.dim)
            )
            weights.append(Weight(v))
        return weights

    # -- misc --------------------------------------------------------------

    def unit_eps(self, i: int) -> Eps:
        """epsilon_i as a vector (1-based, Bourbaki numbering)."""
        v = [Fraction(0)] * self.dim
        v[i - 1] = Fraction(1)
        return tuple(v)

    def highest_root(self) -> Root:
        return max(self.positive_roots, key=lambda r: (r.height, r.coeffs))

    def __repr__(self) -> str:
        return f"RootSystem({self.family}, {self.rank})"


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Build and cache the full root system for a supported (family, rank)."""
    return RootSystem(family, rank)


def expected_positive_count(family: str, rank: int) -> int:
    if family == "B":
        return rank * rank
    if family == "D":
        return rank * (rank - 1)
    if family == "E6":
        return 36
    if family == "E7":
        return 63
    raise ValueError(family)


def rho_height(r: Root) -> int:
    """Value of rho on the root: the sum of its simple coefficients."""
    return r.height
