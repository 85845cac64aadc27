"""Gluing equations in region variables, pinched crossings and solution-preserving surgeries."""

from .diagram import (
    Crossing,
    Diagram,
    DiagramError,
    Region,
    TangleWord,
    WirtingerPresentation,
    change_crossings,
    connected_sum,
    mirror,
    parse_pd,
    reidemeister2,
    wirtinger,
)
from .fixtures import FAMILIES, SolutionFamily, census, knot_diagram
from .gluing import (
    DegeneracyError,
    WSolution,
    is_pinched,
    is_solution,
    pinched_set,
    propagate_pinch,
    residuals,
    tau,
)
from .holonomy import (
    ParabolicRep,
    commute,
    connected_sum_rep,
    fix_of,
    parabolic_about,
    shift_parameter,
    solve_parabolic_reps,
    transport,
)
from .solver import SolverConfig, classify, solve
from .transform import insert_tangle, r_related, transfer_crossing_change
from .volume import bloch_wigner, octahedron_shapes, volume

__version__ = "0.1.0"

__all__ = [
    "Crossing",
    "DegeneracyError",
    "Diagram",
    "DiagramError",
    "FAMILIES",
    "ParabolicRep",
    "Region",
    "SolutionFamily",
    "SolverConfig",
    "TangleWord",
    "WSolution",
    "WirtingerPresentation",
    "bloch_wigner",
    "census",
    "change_crossings",
    "classify",
    "commute",
    "connected_sum",
    "connected_sum_rep",
    "fix_of",
    "insert_tangle",
    "is_pinched",
    "is_solution",
    "knot_diagram",
    "mirror",
    "octahedron_shapes",
    "parabolic_about",
    "parse_pd",
    "pinched_set",
    "propagate_pinch",
    "r_related",
    "reidemeister2",
    "residuals",
    "shift_parameter",
    "solve",
    "solve_parabolic_reps",
    "tau",
    "transfer_crossing_change",
    "transport",
    "volume",
    "wirtinger",
]
