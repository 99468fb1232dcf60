"""Average shadowing for iterated function systems.

Pseudo-orbits whose one-step errors are only small on average, constructive
shadowing bounds for contracting systems, a circle pair where average
shadowing fails, and box-graph chain recurrence. See the catalog module for
ready-made systems and the cli module for the command line front end.
"""
from __future__ import annotations

from .acceptance import CriterionResult, render_report, run_all, run_criterion, verify
from .binseq import BinarySeq, sequence_distance
from .catalog import (
    ExampleDescriptor,
    PiecewisePoly,
    all_examples,
    chaos_game,
    circle_counterexample,
    circle_halfpoint,
    circle_polynomials,
    finite_set,
    halfpoint_polynomials,
    invariant_interval,
    make,
    minimal_pair,
    minimality_probe,
    sierpinski,
    sigma2_shift,
)
from .chainrec import (
    ChainGraph,
    RealizedChain,
    RecurrenceReport,
    absence_certificate,
    analyze,
    box_fraction,
    build_chain_graph,
    chain_distance_scan,
    find_chain,
)
from .counterexample import CounterexampleSweep, run_sweep, stream_seed
from .errors import (
    BudgetExceededError,
    ConjugacyError,
    IfsShadowError,
    InfeasibleParameterError,
    PreimageError,
    SpaceMismatchError,
    UnknownSymbolError,
    ValidationFailedError,
)
from .orbits import (
    AverageValidation,
    BurstNoise,
    PlainValidation,
    PseudoOrbit,
    UniformNoise,
    block_switching_orbit,
    block_switching_points,
    block_value,
    cyclic_connecting_orbit,
    exact_orbit,
    noisy_average_orbit,
    refine_power_orbit,
    split_product_orbit,
    validate,
)
from .reporting import (
    decode_label,
    encode_label,
    fmt,
    load_orbit,
    rasterize,
    render_edges,
    render_orbit,
    render_points,
    render_recurrence,
    render_shadow_report,
    render_sweep,
    write_bytes,
    write_edges,
    write_orbit,
    write_pgm,
    write_points,
    write_recurrence,
    write_shadow_report,
    write_sweep,
    write_text,
)
from .seeding import indexed_word, indexed_words, mix_seed, splitmix64
from .shadowing import (
    ExhaustiveSearch,
    GreedySearch,
    PlainShadowVerdict,
    SearchResult,
    ShadowReport,
    average_distance_profile,
    brute_force_search,
    constructive_shadow,
    error_bound,
    plain_shadow_check,
    profile_from_distances,
    tail_statistic,
)
from .spaces import (
    Box,
    BoxCover,
    Circle,
    CircleCover,
    DiscreteCover,
    DiscretePoints,
    Interval,
    IntervalCover,
    PlaneCover,
    PlaneRegion,
    ProductCover,
    ProductSpace,
    Sigma2,
    Sigma2Cover,
    Space,
    grid_points,
)
from .systems import (
    ConjugacyResult,
    IFSystem,
    RatioEstimate,
    SymbolStream,
    conjugate_ifs,
    contraction_ratio,
    power_ifs,
    product_ifs,
)

__version__ = "0.1.0"

__all__ = [
    "AverageValidation",
    "BinarySeq",
    "Box",
    "BoxCover",
    "BudgetExceededError",
    "BurstNoise",
    "ChainGraph",
    "Circle",
    "CircleCover",
    "ConjugacyError",
    "ConjugacyResult",
    "CounterexampleSweep",
    "CriterionResult",
    "DiscreteCover",
    "DiscretePoints",
    "ExampleDescriptor",
    "ExhaustiveSearch",
    "GreedySearch",
    "IFSystem",
    "IfsShadowError",
    "InfeasibleParameterError",
    "Interval",
    "IntervalCover",
    "PiecewisePoly",
    "PlainShadowVerdict",
    "PlainValidation",
    "PlaneCover",
    "PlaneRegion",
    "PreimageError",
    "ProductCover",
    "ProductSpace",
    "PseudoOrbit",
    "RatioEstimate",
    "RealizedChain",
    "RecurrenceReport",
    "SearchResult",
    "ShadowReport",
    "Sigma2",
    "Sigma2Cover",
    "Space",
    "SpaceMismatchError",
    "SymbolStream",
    "UniformNoise",
    "UnknownSymbolError",
    "ValidationFailedError",
    "absence_certificate",
    "all_examples",
    "analyze",
    "average_distance_profile",
    "block_switching_orbit",
    "block_switching_points",
    "block_value",
    "box_fraction",
    "brute_force_search",
    "build_chain_graph",
    "chain_distance_scan",
    "chaos_game",
    "circle_counterexample",
    "circle_halfpoint",
    "circle_polynomials",
    "conjugate_ifs",
    "constructive_shadow",
    "contraction_ratio",
    "cyclic_connecting_orbit",
    "decode_label",
    "encode_label",
    "error_bound",
    "exact_orbit",
    "find_chain",
    "finite_set",
    "fmt",
    "grid_points",
    "halfpoint_polynomials",
    "indexed_word",
    "indexed_words",
    "invariant_interval",
    "load_orbit",
    "make",
    "minimal_pair",
    "minimality_probe",
    "mix_seed",
    "noisy_average_orbit",
    "plain_shadow_check",
    "power_ifs",
    "product_ifs",
    "profile_from_distances",
    "rasterize",
    "refine_power_orbit",
    "render_edges",
    "render_orbit",
    "render_points",
    "render_recurrence",
    "render_report",
    "render_shadow_report",
    "render_sweep",
    "run_all",
    "run_criterion",
    "run_sweep",
    "sequence_distance",
    "sierpinski",
    "sigma2_shift",
    "split_product_orbit",
    "splitmix64",
    "stream_seed",
    "tail_statistic",
    "validate",
    "verify",
    "write_bytes",
    "write_edges",
    "write_orbit",
    "write_pgm",
    "write_points",
    "write_recurrence",
    "write_shadow_report",
    "write_sweep",
    "write_text",
]
