from .bounds import (
    BoundValue,
    RegimeCheck,
    alpha_regime,
    deviation_term,
    eval_lower_bounds,
    eval_upper_bounds,
    known_a_condition,
    regime_prediction,
)
from .verify import (
    KlTrace,
    MarkovCheck,
    deviation_radius,
    empirical_kl_trace,
    enumerate_paths,
    pigeonhole_indices,
    verify_change_of_measure,
    verify_markov_step,
    verify_xi,
    xi_hits,
)
