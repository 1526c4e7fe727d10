from .antichain import FrontierItem, antichain_empty_fw
from .antisat import antisat_empty
from .bre import afa_of_bre
from .dealt import dealternate_bw, dealternate_fw
from .semantics import (
    accepts,
    bfa_accepts,
    bw_predecessor,
    final_configs,
    fw_successors,
    fw_successors_bruteforce,
    initial_configs,
)

__all__ = [
    "FrontierItem",
    "accepts",
    "afa_of_bre",
    "antichain_empty_fw",
    "antisat_empty",
    "bfa_accepts",
    "bw_predecessor",
    "dealternate_bw",
    "dealternate_fw",
    "final_configs",
    "fw_successors",
    "fw_successors_bruteforce",
    "initial_configs",
]
