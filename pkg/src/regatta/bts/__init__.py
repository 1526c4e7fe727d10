from .aiger import export_aiger, import_aiger
from .reach import REACHABLE, UNKNOWN, UNREACHABLE, ReachVerdict, check_reach, replays, trace_word
from .system import Bts, build_bw_bts, build_fw_bts

__all__ = [
    "REACHABLE",
    "UNKNOWN",
    "UNREACHABLE",
    "Bts",
    "ReachVerdict",
    "build_bw_bts",
    "build_fw_bts",
    "check_reach",
    "export_aiger",
    "import_aiger",
    "replays",
    "trace_word",
]
