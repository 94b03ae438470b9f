"""A finite kernel for a function-first foundation of mathematics."""
from .config import FlowConfig
from .terms import (ONE, PHI0, ZERO, AxiomMode, Mode, TermId, Universe, acts,
                    acts_on, evaluate, extensional_eq, images, similar, support)

__all__ = ["FlowConfig", "Universe", "Mode", "AxiomMode", "TermId", "ZERO", "ONE",
           "PHI0", "evaluate", "acts_on", "acts", "images", "support", "similar",
           "extensional_eq"]
