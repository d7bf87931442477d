"""Exact decision procedures for convex operational theories.

State spaces are rational polytopes with a unit functional; joint systems
are minimal or maximal tensor products (or anything sandwiched between);
distinguishability, cloning and broadcasting are decided by exact
feasibility LPs whose answers always come with re-checkable witnesses or
Farkas certificates.
"""

from .channels import (
    AffineChannel,
    ChannelError,
    averaged_power_compression,
    compose,
    compression,
    constant_channel,
    fixed_set,
    identity_channel,
    lift_effect,
    lift_measurement,
    marginal_channel_a,
    marginal_channel_b,
    symmetrize,
    tensor_pair,
    validate_channel,
)
from .composites import (
    CompositeError,
    CompositeSpace,
    custom_composite,
    max_tensor,
    min_tensor,
    swap_channel,
)
from .decisions import (
    DecisionError,
    DecisionReport,
    DuplicateStateWarning,
    InfeasibilityCertificate,
    SimplexCover,
    StateSet,
    analyze,
    broadcaster_exists,
    cloner_exists,
    construct_broadcaster,
    construct_cloner,
    extract_simplex_cover,
    jointly_distinguishable,
)
from .polytope import Polytope, PolytopeError
from .rationals import ONE, ZERO, InexactNumberError, Rational, rat, rat_str
from .scenario import Scenario, ScenarioError, load_scenario, parse_scenario
from .spaces import (
    Effect,
    Measurement,
    SpaceError,
    StateSpace,
    is_classical,
    make_classical,
    make_polygon,
    make_square_gbit,
    validate_measurement,
)

__version__ = "0.1.0"

__all__ = [
    "AffineChannel",
    "ChannelError",
    "CompositeError",
    "CompositeSpace",
    "DecisionError",
    "DecisionReport",
    "DuplicateStateWarning",
    "Effect",
    "InexactNumberError",
    "InfeasibilityCertificate",
    "Measurement",
    "ONE",
    "Polytope",
    "PolytopeError",
    "Rational",
    "Scenario",
    "ScenarioError",
    "SimplexCover",
    "SpaceError",
    "StateSet",
    "StateSpace",
    "ZERO",
    "analyze",
    "averaged_power_compression",
    "broadcaster_exists",
    "cloner_exists",
    "compose",
    "compression",
    "constant_channel",
    "construct_broadcaster",
    "construct_cloner",
    "custom_composite",
    "extract_simplex_cover",
    "fixed_set",
    "identity_channel",
    "is_classical",
    "jointly_distinguishable",
    "lift_effect",
    "lift_measurement",
    "load_scenario",
    "make_classical",
    "make_polygon",
    "make_square_gbit",
    "marginal_channel_a",
    "marginal_channel_b",
    "max_tensor",
    "min_tensor",
    "parse_scenario",
    "rat",
    "rat_str",
    "swap_channel",
    "symmetrize",
    "tensor_pair",
    "validate_measurement",
]
