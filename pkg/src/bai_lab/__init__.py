"""Fixed-budget best-arm identification laboratory.

Bernoulli bandit simulation with counter-based reproducible streams, the
flipped-family problem classes behind the minimax lower bounds, closed-form
bound evaluators, and numerical checks of each proof ingredient.
"""

__version__ = "0.1.0"

from .complexity import (
    ComplexityReport,
    complexity_h,
    complexity_h2,
    complexity_h_incl,
    complexity_report,
    family_complexities,
    kl_bernoulli,
    kl_flip,
)
from .core import (
    BanditInstance,
    BudgetError,
    ContractError,
    RunResult,
    best_arm_set,
    sample_arm,
)
from .instances import (
    FlippedFamily,
    family_from_spec,
    family_instance,
    make_alpha_family,
    make_flipped_family,
    make_uniform_random_instance,
)
from .rng import RngStream, derive_stream_seed
from .simulator import ErrorEstimate, SweepRow, estimate_error, sweep_family, wilson_interval
from .strategies import StrategyConfig, run_batch, run_strategy, sh_rounds, sr_allocation
