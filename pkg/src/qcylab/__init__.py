"""Verification library for the quaternionic contact Yamabe expansion."""
from .kernels import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
