"""Exact certificates for adapted pairs of truncated maximal parabolics.

Supported: types B and D (even node, plus the even-rank extremal node and
its mirror), E6 at the outer nodes, and E7 at the third node.  See
`adapted_pairs.verify.run_case` for the full pipeline and `adapted_pairs.cli`
for the command line.
"""

from .construction import OutOfScopeError, build_case, in_scope_cases
from .roots import build_root_system
from .verify import run_case

__all__ = [
    "OutOfScopeError",
    "build_case",
    "build_root_system",
    "in_scope_cases",
    "run_case",
]
