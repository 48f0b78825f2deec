from . import s2
from .builder import build_command, build_s2
from .coreference import resolve_coreference
from .formatter import format_s2
from .s2 import NounSpec, S2Element, reset_ids
from .validator import validate

__all__ = [
    "NounSpec", "S2Element", "build_command", "build_s2", "format_s2",
    "reset_ids", "resolve_coreference", "s2", "validate",
]
