"""Markoff move graphs over prime fields.

Vertices are the nonzero solutions of x1^2 + x2^2 + x3^2 = 3*x1*x2*x3 in
F_p; edges come from the three Vieta moves that swap one coordinate for the
other root of its quadratic.  The package enumerates these graphs, splits
them into connected components, checks exactly that each component's size
is divisible by p (via the half-coordinate summation identities), censuses
connectivity over prime ranges, and lifts mod-p vertices back to integer
solutions by replaying move paths from (1, 1, 1).

See the demos/ directory of the source tree for walkthrough scripts, and
the `markoff` command-line tool for censuses, verification, lifting, and
DOT export.
"""

from .census import (
    CensusConfig,
    CensusRecord,
    census_prime,
    export_dot,
    run_census,
    verify_prime,
)
from .core import (
    MarkoffTriple,
    decode,
    encode,
    enumerate_bruteforce,
    enumerate_vertices,
    is_vertex,
    neighbors,
    vieta,
)
from .graph import (
    ComponentSummary,
    IntegerTriple,
    MarkoffGraph,
    bfs_path,
    components,
    is_connected,
    lift_to_integers,
    replay_moves,
    selfloop_census,
)
from .penner import (
    ComponentSums,
    PennerTriple,
    check_affine_sum,
    check_edge_identity,
    chen_verdict,
    component_sums,
    penner_map,
)
from .prime_field import (
    FieldElement,
    inv_mod,
    is_prime,
    legendre,
    primes_in_range,
    sqrt_mod,
    sqrt_table,
)

__version__ = "0.1.0"
