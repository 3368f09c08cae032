"""Deciding vanishing of Schubert polynomial coefficients."""

from .core import (
    Diagram,
    NotVexillaryError,
    code_to_oneline,
    oneline_to_code,
    rothe_diagram,
)
from .schubitope import decide_nonvanishing, witness_perfect_tableau

__all__ = [
    "Diagram",
    "NotVexillaryError",
    "code_to_oneline",
    "oneline_to_code",
    "rothe_diagram",
    "decide_nonvanishing",
    "witness_perfect_tableau",
]
