"""Two-party measurement strategies for discriminating product-state ensembles."""

from .ensembles import (
    ProductEnsemble,
    four_state_scenario,
    peres_wootters_scenario,
    six_state_scenario,
    two_product_scenario,
)
from .measurements import (
    Povm,
    adaptive_product_povm,
    anti_trine_povm,
    bell_basis,
    projective_xz,
    validate_povm,
)
from .optimizer import OptimizerConfig, alternating_refine, optimize, probe_entangled_bound
from .protocols import build_named_protocol, helstrom_probability, two_product_locc
from .strategies import (
    EntangledSimultaneous,
    Metrics,
    OneWayLocc,
    Simultaneous,
    evaluate,
    joint_distribution,
)

__version__ = "0.1.0"
