"""Kostant cascade of strongly orthogonal roots and maximal Heisenberg sets.

The cascade is built recursively: highest root of each irreducible component,
then recurse on the roots orthogonal to it.  H_beta collects the component
roots pairing strictly positively with beta; within each component these sets
are Heisenberg sets and together they partition the positive roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .roots import Root, RootSystem


@dataclass(frozen=True)
class CascadeItem:
    label: str  # tree path such as "1", "1.2"
    beta: Root
    subsystem: Tuple[Root, ...]  # positive roots of the defining component
    heisenberg: Tuple[Root, ...]  # H_beta inside the component


def indecomposables(system: RootSystem, pos: Sequence[Root]) -> List[Root]:
    """Elements of a positive subsystem that are not sums of two others."""
    pos_set = {r.coeffs for r in pos}
    out = []
    for r in pos:
        decomposable = any(
            (r - a).coeffs in pos_set for a in pos if a != r and (r - a).height > 0
        )
        if not decomposable:
            out.append(r)
    return sorted(out)


def _split_components(
    system: RootSystem, pos: Sequence[Root]
) -> List[Tuple[List[Root], List[Root]]]:
    """(simples, roots) per irreducible component of a positive subsystem."""
    simples = indecomposables(system, pos)
    comps: List[List[Root]] = []
    seen = set()
    for s in simples:
        if s.coeffs in seen:
            continue
        comp = [s]
        seen.add(s.coeffs)
        queue = [s]
        while queue:
            cur = queue.pop()
            for t in simples:
                if t.coeffs not in seen and system.inner(cur, t) != 0:
                    seen.add(t.coeffs)
                    comp.append(t)
                    queue.append(t)
        comps.append(sorted(comp))
    out = []
    for comp in comps:
        roots = [
            r for r in pos if any(system.inner(r, s) != 0 for s in comp)
        ]
        out.append((comp, sorted(roots)))
    out.sort(key=lambda cr: cr[0][0].coeffs)
    return out


def kostant_cascade(
    system: RootSystem, positive: Optional[Sequence[Root]] = None
) -> List[CascadeItem]:
    """The full cascade for Delta+ or for any closed positive subsystem."""
    if positive is None:
        positive = system.positive_roots
    items: List[CascadeItem] = []

    def recurse(pos: Sequence[Root], prefix: str) -> None:
        for k, (comp_simples, comp_roots) in enumerate(
            _split_components(system, pos), start=1
        ):
            label = f"{prefix}{k}" if not prefix else f"{prefix}.{k}"
            beta = max(comp_roots, key=lambda r: (r.height, r.coeffs))
            heis = tuple(r for r in comp_roots if system.inner(r, beta) > 0)
            items.append(CascadeItem(label, beta, tuple(comp_roots), heis))
            rest = [r for r in comp_roots if system.inner(r, beta) == 0]
            if rest:
                recurse(rest, label)

    recurse(list(positive), "")
    return items


def heisenberg_max(system: RootSystem, subsystem: Sequence[Root], beta: Root) -> List[Root]:
    """Maximal Heisenberg set of centre beta inside the given subsystem."""
    return sorted(r for r in subsystem if system.inner(r, beta) > 0)


def cascade_heisenberg_by_beta(
    system: RootSystem, positive: Optional[Sequence[Root]] = None
) -> Dict[Root, Tuple[Root, ...]]:
    """Map beta_K -> H_{beta_K} over the whole cascade."""
    return {item.beta: item.heisenberg for item in kostant_cascade(system, positive)}


def detect_type(system: RootSystem, simples: Sequence[Root]) -> Tuple[str, int]:
    """Cartan type of an irreducible simple system, e.g. ('D', 6).

    Only the shapes that occur inside B/D/E6/E7 are recognized:
    A, B, C, D, E.
    """
    k = len(simples)
    if k == 0:
        raise ValueError("empty simple system")
    adj = {
        i: [
            j
            for j in range(k)
            if j != i and system.inner(simples[i], simples[j]) != 0
        ]
        for i in range(k)
    }
    degrees = sorted(len(v) for v in adj.values())
    lengths = {system.inner(s, s) for s in simples}
    if len(lengths) > 1:
        # chain with one short/long end: B_k has the short root at one end
        short = min(lengths)
        ends = [i for i in range(k) if len(adj[i]) <= 1]
        is_b = any(system.inner(simples[i], simples[i]) == short for i in ends)
        return ("B" if is_b else "C", k)
    if not degrees or degrees[-1] <= 2:
        return ("A", k)
    if degrees[-1] == 3:
        centre = next(i for i in range(k) if len(adj[i]) == 3)
        arms = []
        for start in adj[centre]:
            length = 1
            prev, cur = centre, start
            while True:
                nxt = [j for j in adj[cur] if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return ("D", k)
        return ("E", k)
    raise ValueError("unrecognized Dynkin shape")
