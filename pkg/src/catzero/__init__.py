"""Geodesics in CAT(0) cubical complexes encoded as posets with inconsistent pairs."""

from .complex import (
    Cube,
    Point,
    all_cubes,
    cube_faces,
    cube_vertices,
    euler_characteristic,
    is_valid_point,
    max_cube_dimension,
    minimal_cube_containing,
)
from .errors import (
    CatzeroError,
    CommonUpperBound,
    ComparableInconsistentPair,
    CycleDetected,
    DegenerateLeg,
    HasInconsistentPairs,
    InconsistentVertex,
    InvalidPoint,
    NotAcyclic,
    TooLarge,
    UnknownElement,
)
from .geodesic import (
    CubeSequence,
    GeodesicPath,
    ShortcutWitness,
    brute_force_geodesic,
    count_valid_sequences,
    distance,
    extended_normal_cube_path,
    geodesic,
    is_valid_cube_sequence,
    min_weight_vertex_cover,
    normal_cube_path,
    refit_sequence,
    shortcut_check,
    touring_solve,
    validate_cube_sequence,
    zero_tension_residual,
)
from .halfspace import HalfspaceSystem, Rerooted, RerootTransport, halfspace_to_pip, pip_to_halfspace, reroot
from .interval import IntervalFrame, embed_interval, interval_endpoints
from .pip import (
    Antichain,
    OrderIdeal,
    Pip,
    chain_decomposition,
    downset,
    enumerate_consistent_ideals,
    is_maximal_antichain,
    maximal_elements,
    validate_pip,
)
from .recsys import (
    Move,
    ReconfigurableSystem,
    StateComplex,
    moves_commute,
    pip_to_reconfigurable,
    state_complex,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
