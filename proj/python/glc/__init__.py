"""Python bindings for the glc graph rewriting engine."""

from ._glc import *  # noqa: F401,F403
from ._glc import __doc__ as _core_doc

__all__ = [n for n in dir() if not n.startswith("_")]
