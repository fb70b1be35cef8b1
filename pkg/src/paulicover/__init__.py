"""Covering measurement schedules and simulated cycle-benchmarking for
two-local sparse Pauli-Lindblad noise models on arbitrary qubit topologies."""

from .pauli import (
    ColumnSubstring,
    PauliString,
    anticommutes,
    elementwise_join,
    restrict,
    weight,
    weight_pattern,
)
from .topology import (
    Coloring,
    TopologyGraph,
    complete_graph,
    degeneracy_ordering,
    four_coloring,
    max_clique,
    parse_graph,
)
from .scheduler import (
    CoverageReport,
    MeasurementSchedule,
    general_schedule,
    heuristic_minimize,
    kn_log_schedule,
    lower_bound,
    schedule_size_formula,
    table9_schedule,
    verify_cover,
)
from .spl import (
    SplModel,
    SplTerm,
    dense_channel_oracle,
    fidelity_design_matrix,
    generate_two_local_terms,
    pauli_fidelity,
    sample_model,
    w_of_lambda,
)
from .cbsim import (
    CbConfig,
    CurveUnusableError,
    DecayCurve,
    FitResult,
    end_to_end_learn,
    fit_decay,
    fit_lambda,
    measurable_paulis,
    simulate_cb,
)

__version__ = "0.1.0"

__all__ = [
    "CbConfig",
    "Coloring",
    "ColumnSubstring",
    "CoverageReport",
    "CurveUnusableError",
    "DecayCurve",
    "FitResult",
    "MeasurementSchedule",
    "PauliString",
    "SplModel",
    "SplTerm",
    "TopologyGraph",
    "anticommutes",
    "complete_graph",
    "degeneracy_ordering",
    "dense_channel_oracle",
    "elementwise_join",
    "end_to_end_learn",
    "fidelity_design_matrix",
    "fit_decay",
    "fit_lambda",
    "four_coloring",
    "general_schedule",
    "generate_two_local_terms",
    "heuristic_minimize",
    "kn_log_schedule",
    "lower_bound",
    "max_clique",
    "measurable_paulis",
    "parse_graph",
    "pauli_fidelity",
    "restrict",
    "sample_model",
    "schedule_size_formula",
    "table9_schedule",
    "verify_cover",
    "w_of_lambda",
    "weight",
    "weight_pattern",
]
