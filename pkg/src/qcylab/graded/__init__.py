"""Graded polynomial/form algebra and the normal-coordinate engine."""
from .algebra import GradedForm, GradedPoly, Layout, layout, power
from .recursion import Coframe, FrameCoefficients, frame_coefficients, recurse_coframe

__all__ = ["GradedForm", "GradedPoly", "Layout", "layout", "power", "Coframe", "FrameCoefficients",
           "frame_coefficients", "recurse_coframe"]
