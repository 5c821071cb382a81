"""hadsim: simulator and experiment suite for circuits built from classical
permutation gates and global Hadamard layers.

The gate set is generalized Toffolis (computational-basis permutations),
one global Hadamard layer applied to every wire at once, and named
black-box label permutations.  On top of the dense simulator sit the
local-gadget builders, the closed-form depth-2 evaluator, the order-finding
and factoring experiments with their classical eigenvalue estimator, and
the search-schedule harness with its trade-off sweeps and lower-bound
diagnostics.
"""

__version__ = "0.1.0"

from .circuit import (  # noqa: F401
    BlackBoxPerm,
    Circuit,
    CircuitError,
    CircuitMetrics,
    GlobalHadamard,
    Permutation,
    Toffoli,
    flipzero_perm,
    identity_perm,
    input_desugar,
    metrics,
    modmul_perm,
    parse,
    random_perm,
    serialize,
    table_perm,
    validate,
    xorconst_perm,
)
from .depth2 import Depth2Instance, depth2_amplitude, depth2_distribution  # noqa: F401
from .eigenest import (  # noqa: F401
    CjSchedule,
    SampleRecord,
    ThetaEstimate,
    continued_fractions,
    estimate_theta,
    make_schedule,
    simulate_samples,
)
from .gadgets import (  # noqa: F401
    conjugated_toffoli,
    local_hadamard_gadget,
    phase_flip_gadget,
    swap_from_cnots,
)
from .grover import (  # noqa: F401
    GroverSchedule,
    OracleSpec,
    build_grover_circuit,
    build_oracle,
    success_probability,
    textbook_schedule,
    tradeoff_experiment,
)
from .orderfind import (  # noqa: F401
    FactorReport,
    GroupSpec,
    OrderFindingPlan,
    build_order_finding_circuit,
    eigenvector,
    factor,
    modmul_permutation,
    run_order_finding,
)
from .statevec import StateVector, init, inner_product, run  # noqa: F401
