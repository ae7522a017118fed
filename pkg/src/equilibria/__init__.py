"""Exact algebra and geometry of equilibria in finite normal-form games."""

from .ci import (
    CIStatement,
    PlayerGraph,
    ci_ideal,
    global_markov,
    intersect_with_ci_model,
    spohn_ci,
)
from .correlated import CEPolytope, correlated_equilibria, correlated_equilibrium_h_rep, joint_expected_payoffs
from .errors import (
    BudgetExceededError,
    CannotCertifyError,
    ComputationError,
    EquilibriaError,
    FieldError,
    FormatError,
    InvalidInputError,
    NotZeroDimensionalError,
    RingMismatchError,
    UnboundedPolyhedronError,
    UndefinedMarginalError,
)
from .fields import GF, QQ, parse_field
from .gamefile import game_from_dict, game_to_dict, load_game, save_game
from .gametensor import (
    Format,
    Game,
    Tensor,
    enumerate_tensor_indices,
    expected_payoff,
    random_game,
    random_tensor,
    zero_tensor,
)
from .groebner import (
    dimension_and_degree,
    eliminate,
    groebner_basis,
    normal_form,
    saturate,
    sturm_count,
)
from .nash import (
    ParametricGame,
    block_derangements,
    count_totally_mixed_nash,
    delta_list,
    eliminant,
    nash_equilibrium_ideal,
    number_tmne,
    solve_totally_mixed,
    specialize_parameter,
)
from .polyring import Ideal, MonomialOrder, Polynomial, Ring, nash_equilibrium_ring, probability_ring
from .polytope import (
    HPolytope,
    VPolytope,
    contains_point,
    dim,
    f_vector,
    facet_enumeration,
    vertex_enumeration,
)
from .spohn import conditional_expected_payoff, konstanz_matrix, spohn_ideal, spohn_matrices

__version__ = "0.1.0"
