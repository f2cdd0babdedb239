"""Reticular wavefront catalog, jet-algebra checks, fronts, and atlases."""

from _retfront import *  # noqa: F401,F403
from _retfront import __doc__  # noqa: F401
