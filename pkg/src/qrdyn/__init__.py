"""qrdyn: dynamics of quadratic rational maps with a superattracting 3-cycle.

The family f_a(z) = (z-1)(z-a/(2-a))/z^2 carries the critical cycle
0 -> infinity -> 1 -> 0 for every a outside {0, 2}.  This package computes
orbit fates on the Riemann sphere, periodic points with multipliers, the
distinguished parameter values of the family, the hyperbolic-type and
region classification behind the Sierpinski-curve verdict, exact
angle-doubling combinatorics, and deterministic renders of dynamical and
parameter planes.
"""

from .cformat import format_complex, parse_complex
from .classify import (
    ClassificationReport,
    ContactConfig,
    ContactEvidence,
    HyperbolicType,
    Region,
    Verdict,
    hyperbolic_type,
    immediate_basin_membership,
    per3_region,
    sierpinski_verdict,
    triple_contact_test,
)
from .doubling import DoublingOrbit, angle, double, is_mixed, mixed_check, orbit, quadrant
from .maps import (
    MapConstructionError,
    MapPreset,
    RationalMap,
    critical_points,
    evaluate,
    mobius_conjugate,
    per3_map,
    preset,
)
from .orbits import (
    Connectivity,
    Converged,
    Cycle,
    FateConfig,
    OrbitFate,
    Unresolved,
    connectivity_heuristic,
    cycle_multiplier,
    iterate,
    orbit_fate,
)
from .params import (
    ParabolicParameter,
    SpecialParameters,
    conjugate_polynomial_constant,
    parabolic_parameters,
    polynomial_centers,
    special_parameters,
)
from .periodic import PeriodicPoint, fixed_points, periodic_points
from .render import (
    ImageBuffer,
    RenderConfig,
    Window,
    render_dynamical,
    render_parameter,
)
from .sphere import INFINITY, Mobius, SpherePoint, chordal_distance, finite

__version__ = "0.1.0"
