"""Workbench for point-sensor feedback stabilization of planar
reaction-diffusion fronts in a rectangular domain."""

from .basis import Eigenpair, ModeIndex, enumerate_basis, eval_eigenfunction
from .design import (
    ControllerSpec,
    DesignOutcome,
    check_input_solvability,
    check_output_solvability,
    design_single_actuator,
    search_actuators,
    search_two_actuator,
    select_gain,
    verify_controller,
)
from .errors import ConfigError, FrontstabError, NumericalError
from .galerkin import (
    ActuatorSpec,
    SensorSpec,
    SpectralSystem,
    assemble_input_matrix,
    assemble_jacobian,
    assemble_output_matrix,
    assemble_state_matrix,
    build_system,
)
from .model import ModelParams, eval_dPdy, eval_P, eval_Q
from .simulate import (
    Field2D,
    FrontCurve,
    Trajectory,
    front_position,
    make_front_init,
    simulate,
)
from .steady import FrontProfile, eval_front, solve_front
from .zeros import (
    InfiniteZeroCheck,
    Precompensator,
    RootLocusTrace,
    ZeroSet,
    closed_loop_matrix,
    closed_loop_spectrum,
    finite_zeros,
    infinite_zero_check,
    input_decoupling_zeros,
    output_decoupling_zeros,
    root_locus,
)

__version__ = "0.1.0"
