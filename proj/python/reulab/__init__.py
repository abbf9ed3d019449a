"""Pseudo-spectral laboratory for the rotating incompressible Euler equations."""

try:
    from ._core import *  # noqa: F401,F403  (installed layout)
except ImportError:  # pragma: no cover - build-tree layout
    from _core import *  # noqa: F401,F403
