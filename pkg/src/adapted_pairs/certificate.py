"""Serializable certificates: every check outcome with exact rational data.

Rationals are stored as {"num", "den"} pairs and roots as integer vectors in
the simple-root basis, so a certificate survives JSON round-tripping without
loss and an independent checker can re-validate it.  All set listings are
ordered lexicographically by coefficient vector, which makes certificates
byte-deterministic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Sequence

from .bounds import bound_multiples
from .roots import Root
from .verify import CaseResult

SCHEMA_VERSION = 1


def _rat(x: Fraction) -> Dict[str, int]:
    f = Fraction(x)
    return {"num": f.numerator, "den": f.denominator}


def rat_value(obj: Dict[str, int]) -> Fraction:
    return Fraction(obj["num"], obj["den"])


def _root_list(roots: Sequence[Root]) -> List[List[int]]:
    return [list(r.coeffs) for r in sorted(roots)]


def certificate_dict(result: CaseResult) -> dict:
    cand = result.candidate
    pair = result.pair
    eigen_sorted = sorted(pair.eigenvalues.items(), key=lambda kv: kv[0].coeffs)
    cert = {
        "schema": SCHEMA_VERSION,
        "case": {"family": cand.family, "rank": cand.n, "s": cand.s},
        "S": {
            "plus": _root_list(cand.S_plus),
            "minus": _root_list(cand.S_minus),
            "mixed": _root_list(cand.S_mixed),
        },
        "gamma_sets": [
            {"centre": list(g.coeffs), "members": _root_list(members)}
            for g, members in sorted(cand.gamma_sets.items())
        ],
        "T": _root_list(cand.T),
        "T_star": _root_list(cand.T_star),
        "h": {
            "coroot_coeffs": [
                {"alpha": idx, "value": _rat(val)}
                for idx, val in sorted(pair.h_coroot_coeffs.items())
            ],
        },
        "eigenvalues": [
            {"gamma": list(g.coeffs), "value": _rat(v)} for g, v in eigen_sorted
        ],
        "degrees": [_rat(d) for d in pair.degrees],
        "bounds": {
            "lower_multiples_of_varpi_s": [
                _rat(m) for m in bound_multiples(cand, result.lower)
            ],
            "improved_multiples_of_varpi_s": [
                _rat(m) for m in bound_multiples(cand, result.improved)
            ],
        },
        "checks": {
            "basis_det": _rat(result.basis.determinant),
            "heisenberg_ok": result.heisenberg.ok,
            "classification_ok": result.classification.ok,
            "classification_counts": {
                k: result.classification.counts[k]
                for k in sorted(result.classification.counts)
            },
            "nondegeneracy_det": _rat(result.nondegeneracy.determinant),
            "nondegeneracy_monomial_degree": result.nondegeneracy.monomial_degree,
            "regularity_rank": result.regularity.rank,
            "regularity_rank_augmented": result.regularity.rank_augmented,
            "dim_p": result.regularity.dim_p,
            "T_size_vs_index": result.t_size_vs_index,
            "eigenvalues_match_closed_form": result.eigenvalues_match,
            "bounds_coincide": result.bounds_coincide,
            "bounds_match_closed_form": result.bounds_expected_match,
        },
        "verdict": "pass" if result.verdict else "fail",
        "first_failing_check": result.first_failing,
    }
    return cert


def to_json(cert: dict) -> str:
    return json.dumps(cert, indent=2, sort_keys=True) + "\n"


def from_json(text: str) -> dict:
    return json.loads(text)
