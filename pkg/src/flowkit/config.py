from dataclasses import dataclass


@dataclass
class FlowConfig:
    """Resource caps. Every enumeration checks its cap before allocating."""

    phi_cap: int = 512
    full_power_support_cap: int = 5
    restricted_power_cap: int = 12
    rank_cap: int = 4
    model_pair_cap: int = 1024
    sigma_chain_cap: int = 64
    infinity_bound: int = 8
    hyper_depth: int = 3
