"""isoloop: loop-class transport along isotopies of planar point sets.

Move a finite set of labeled points around the plane along a sampled
isotopy; a free homotopy class of loops in the complement comes along for
the ride.  This package extracts the braid of the motion from x-order
crossing events, transports loop classes through the induced free-group
automorphisms, certifies exact lower bounds on the diameter of every
representative of the transported class, and cross-checks everything
against an independent geometric oracle that carries an explicit polyline
through the motion.  A built-in family of orbit cascades drives the
certified bound to 1 - 1/n on configurations of diameter below 1, and a
CLI reproduces that experiment end to end.
"""

from .braidextract import (
    BraidWord,
    CrossingEvent,
    Extraction,
    extract_detailed,
    extract_word,
    subdivide,
)
from .configspace import (
    Config,
    MarginReport,
    StepMargin,
    Trajectory,
    gen_cascade,
    gen_rigid,
    gen_rotation,
    gen_translation,
    hausdorff_distance,
    load_trajectory,
    make_trajectory,
    save_trajectory,
    validate_config,
    validity_report,
)
from .errors import (
    AmbiguousStep,
    ChartError,
    Collision,
    DegenerateCrossing,
    DuplicatePoint,
    InvariantViolation,
    IsoloopError,
    NotCoarsenable,
    OrbitCollision,
    ParseError,
    ProximityViolation,
    SchemaError,
    StepTooLarge,
    WordOverflow,
)
from .geomoracle import (
    PolylineLoop,
    carry,
    carry_steps,
    diameter,
    polyline_from_word,
    round_polyline,
    twist_trajectory,
    word_from_polyline,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .loopalgebra import (
    Certificate,
    Clustering,
    LoopClass,
    apply_generator,
    apply_to_letters,
    apply_word,
    canonical_class,
    certify,
    coarsen,
    parse_class,
    round_loop,
)
from .transport import (
    TransportEntry,
    TransportRecord,
    cascade_experiment,
    refine_check,
    stretch_profile,
    transport,
)

__version__ = "0.1.0"
