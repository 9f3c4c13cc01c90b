"""Integer Chevalley structure constants and exact brackets.

The positive-pair constants are fixed by the extraspecial-pair convention on
a total order of the positive roots (height, then lexicographic coefficient
order); all other constants follow from antisymmetry, N(-a,-b) = -N(a,b) and
the length-ratio identity for triples summing to zero.  Conclusions drawn
downstream never depend on the sign convention: checks are formulated as
rank, determinant and membership statements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .roots import Coeffs, Eps, Root, RootSystem, dot, vec_add, vec_scale

Pair = Tuple[Coeffs, Coeffs]


@dataclass
class GElem:
    """A Lie algebra element: root-vector coefficients plus a Cartan part."""

    root_part: Dict[Coeffs, Fraction] = field(default_factory=dict)
    h_part: Optional[Eps] = None

    def add_root(self, coeffs: Coeffs, c: Fraction) -> None:
        v = self.root_part.get(coeffs, Fraction(0)) + c
        if v == 0:
            self.root_part.pop(coeffs, None)
        else:
            self.root_part[coeffs] = v

    def add_h(self, vec: Eps, c: Fraction = Fraction(1)) -> None:
        scaled = vec_scale(c, vec)
        self.h_part = scaled if self.h_part is None else vec_add(self.h_part, scaled)
        if all(x == 0 for x in self.h_part):
            self.h_part = None

    def is_zero(self) -> bool:
        return not self.root_part and self.h_part is None


class StructureTable:
    """Exact structure constants N(a, b) for a fixed root system."""

    def __init__(self, system: RootSystem):
        self.system = system
        self._pos: Dict[Pair, int] = {}
        self._mixed: Dict[Pair, int] = {}
        self._build_positive()

    # -- construction -------------------------------------------------------

    def string_down(self, alpha: Root, beta: Root) -> int:
        """p = max k with beta - k*alpha a root."""
        sys = self.system
        p = 0
        probe = beta - alpha
        while sys.is_root(probe):
            p += 1
            probe = probe - alpha
        return p

    def _build_positive(self) -> None:
        sys = self.system
        order = {r.coeffs: (r.height, r.coeffs) for r in sys.positive_roots}
        pos_by_order = sorted(sys.positive_roots, key=lambda r: order[r.coeffs])
        for gamma in pos_by_order:
            h = gamma.height
            if h == 1:
                continue
            pairs = []
            for alpha in pos_by_order:
                if alpha.height * 2 > h:
                    break
                beta = sys.try_root(gamma - alpha)
                if beta is None or not all(c >= 0 for c in beta.coeffs):
                    continue
                if order[alpha.coeffs] < order[beta.coeffs]:
                    pairs.append((alpha, beta))
            ex_alpha, ex_beta = pairs[0]
            n_ex = self.string_down(ex_alpha, ex_beta) + 1
            self._set_pos(ex_alpha, ex_beta, n_ex)
            for xi, eta in pairs[1:]:
                self._set_pos(xi, eta, self._special_constant(ex_alpha, ex_beta, xi, eta))

    def _set_pos(self, a: Root, b: Root, n: int) -> None:
        self._pos[(a.coeffs, b.coeffs)] = n
        self._pos[(b.coeffs, a.coeffs)] = -n

    def _special_constant(self, alpha: Root, beta: Root, xi: Root, eta: Root) -> int:
        """Constant of a special pair from the extraspecial one via Jacobi.

        With gamma = xi + eta = alpha + beta the Jacobi identity for
        (x_{-alpha}, x_xi, x_eta) gives
        N(xi,eta) N(-alpha,gamma) = N(-alpha,xi) N(xi-alpha,eta)
                                  + N(-alpha,eta) N(xi,eta-alpha),
        where every right-hand constant involves a pair with a shorter sum.
        """
        sys = self.system
        gamma = xi + eta
        lhs_factor = self.n_const(-alpha, sys.try_root(gamma))
        total = Fraction(0)
        t1a = self.n_const(-alpha, xi)
        if t1a != 0:
            total += Fraction(t1a) * self.n_const(sys.try_root(xi - alpha), eta)
        t2a = self.n_const(-alpha, eta)
        if t2a != 0:
            total += Fraction(t2a) * self.n_const(xi, sys.try_root(eta - alpha))
        val = total / lhs_factor
        if val.denominator != 1:
            raise ArithmeticError("non-integral structure constant")
        return int(val)

    # -- lookups ------------------------------------------------------------

    def n_const(self, a: Optional[Root], b: Optional[Root]) -> int:
        """N(a, b) with [x_a, x_b] = N(a, b) x_{a+b}; 0 when a+b is not a root."""
        if a is None or b is None:
            return 0
        sys = self.system
        if sys.try_root(a + b) is None:
            return 0
        a_pos = all(c >= 0 for c in a.coeffs)
        b_pos = all(c >= 0 for c in b.coeffs)
        if a_pos and b_pos:
            return self._pos.get((a.coeffs, b.coeffs), 0)
        if not a_pos and not b_pos:
            return -self._pos.get(((-a).coeffs, (-b).coeffs), 0)
        key = (a.coeffs, b.coeffs)
        if key in self._mixed:
            return self._mixed[key]
        if a_pos:
            val = -self._mixed_neg_pos(-b, a)
        else:
            val = self._mixed_neg_pos(-a, b)
        self._mixed[key] = val
        return val

    def _mixed_neg_pos(self, alpha: Root, b: Root) -> int:
        """N(-alpha, b) for positive roots alpha, b with b - alpha a root."""
        sys = self.system
        c = sys.try_root(b - alpha)
        if c is None:
            return 0
        ll = lambda r: dot(r.eps, r.eps)
        if all(x >= 0 for x in c.coeffs):
            # (-alpha) + b + (-c) = 0: N(-alpha,b)/(c,c) = N(-c,-alpha)/(b,b)
            val = Fraction(ll(c), ll(b)) * (-self._pos.get((c.coeffs, alpha.coeffs), 0))
        else:
            d = -c
            # (-alpha) + b + d = 0: N(-alpha,b)/(d,d) = N(b,d)/(alpha,alpha)
            val = Fraction(ll(d), ll(alpha)) * self._pos.get((b.coeffs, d.coeffs), 0)
        if val.denominator != 1:
            raise ArithmeticError("non-integral mixed structure constant")
        return int(val)

    # -- brackets -----------------------------------------------------------

    def bracket_roots(self, a: Root, b: Root) -> GElem:
        """[x_a, x_b] as a GElem (root vector, coroot, or zero)."""
        sys = self.system
        out = GElem()
        if (a + b).coeffs == sys.zero_coeffs():
            # Chevalley normalization [x_a, x_{-a}] = a^vee
            out.add_h(sys.coroot_eps(a))
            return out
        n = self.n_const(a, b)
        if n != 0:
            out.add_root((a + b).coeffs, Fraction(n))
        return out

    def bracket(self, x: GElem, y: GElem) -> GElem:
        """Bilinear bracket of two exact elements."""
        sys = self.system
        out = GElem()
        for ca, va in x.root_part.items():
            a = sys.root_from_coeffs(ca)
            for cb, vb in y.root_part.items():
                part = self.bracket_roots(a, sys.root_from_coeffs(cb))
                for cc, vc in part.root_part.items():
                    out.add_root(cc, va * vb * vc)
                if part.h_part is not None:
                    out.add_h(part.h_part, va * vb)
        if x.h_part is not None:
            for cb, vb in y.root_part.items():
                b = sys.root_from_coeffs(cb)
                out.add_root(cb, vb * dot(b.eps, x.h_part))
        if y.h_part is not None:
            for ca, va in x.root_part.items():
                a = sys.root_from_coeffs(ca)
                out.add_root(ca, -va * dot(a.eps, y.h_part))
        return out

    def jacobiator(self, a: Root, b: Root, c: Root) -> GElem:
        """[a,[b,c]] + [b,[c,a]] + [c,[a,b]] on root vectors; zero iff Jacobi."""
        xa, xb, xc = (GElem({r.coeffs: Fraction(1)}) for r in (a, b, c))
        out = GElem()
        for t in (
            self.bracket(xa, self.bracket(xb, xc)),
            self.bracket(xb, self.bracket(xc, xa)),
            self.bracket(xc, self.bracket(xa, xb)),
        ):
            for cc, vc in t.root_part.items():
                out.add_root(cc, vc)
            if t.h_part is not None:
                out.add_h(t.h_part)
        return out


_TABLE_CACHE: Dict[Tuple[str, int], StructureTable] = {}


def build_structure_table(system: RootSystem) -> StructureTable:
    """Build (and cache per family/rank) the full structure-constant table."""
    key = (system.family, system.rank)
    cached = _TABLE_CACHE.get(key)
    if cached is not None and cached.system is system:
        return cached
    table = StructureTable(system)
    _TABLE_CACHE[key] = table
    return table


def ad_on_dual(table: StructureTable, parabolic, x: GElem, y: GElem) -> GElem:
    """Coadjoint action of x on y in the realization of the dual space.

    The bracket is computed in the full algebra, then projected onto
    g_{Delta+} + h_trunc + g_{Delta-_{pi'}}: root components outside the
    support are dropped and the Cartan part is projected orthogonally onto
    the truncated Cartan (the dot product restricted to the Cartan agrees
    with the Killing form up to scale, so this is the Killing projection).
    """
    raw = table.bracket(x, y)
    out = GElem()
    support = parabolic.dual_support_coeffs
    for cc, vc in raw.root_part.items():
        if cc in support:
            out.add_root(cc, vc)
    if raw.h_part is not None:
        proj = parabolic.project_h(raw.h_part)
        if any(v != 0 for v in proj):
            out.add_h(proj)
    return out
