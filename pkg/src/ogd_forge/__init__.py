"""ogd-forge: compile circuit-reachability instances into training sequences
whose repeated consumption by online gradient descent simulates the circuit,
and simulate/verify those dynamics with exact rational arithmetic."""

from .circuits import (
    Bit,
    CircuitError,
    GeneralCircuit,
    NandCircuit,
    augment_target,
    cpath_oracle,
    ensure_gate_outputs,
    lower_to_nand,
)
from .compiler import (
    CompiledProgram,
    CompileError,
    Layout,
    apply_bias_transform,
    apply_eta_scaling,
    compile_cpath,
    compile_cpath_drd,
    compile_cpath_regularized,
    compile_cpath_relu,
    prepare_circuit,
)
from .engine import (
    BoundaryViolation,
    Decision,
    DenseRelu,
    DenseReluDense,
    HingeSvm,
    OgdState,
    TrainingExample,
    decide_first_coordinate_positive,
    decide_fixed_point,
    run_passes,
    run_sequence,
    step,
)
from .fastforward import (
    AffineStep,
    OpCounter,
    QuadraticLoss,
    build_step_matrix,
    fast_forward,
    fast_forward_mod,
    nand_affine_fit,
    simulate_quadratic,
)
from .rationals import Rational, SparseVec, format_rat, parse_rat, rat
from .verify import (
    VerificationReport,
    equivalence_suite,
    verify_equivalence,
    verify_fastforward,
    verify_gadget_tables,
)

__version__ = "0.1.0"
