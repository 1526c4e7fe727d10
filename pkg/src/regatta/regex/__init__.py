from .ast import (
    Alt,
    And,
    AnchorEnd,
    AnchorStart,
    Class,
    Concat,
    Dot,
    Empty,
    Epsilon,
    Neg,
    Opt,
    Plus,
    Regex,
    Repeat,
    Star,
    is_extended,
)
from .compile import compile, compile_regex, table_for
from .parse import RegexSyntaxError, collect_classes, parse_regex, strip_anchors
from .semantics import matches

__all__ = [
    "Alt",
    "And",
    "AnchorEnd",
    "AnchorStart",
    "Class",
    "Concat",
    "Dot",
    "Empty",
    "Epsilon",
    "Neg",
    "Opt",
    "Plus",
    "Regex",
    "RegexSyntaxError",
    "Repeat",
    "Star",
    "collect_classes",
    "compile",
    "compile_regex",
    "is_extended",
    "matches",
    "parse_regex",
    "strip_anchors",
    "table_for",
]
