"""One-dimensional diffusions as (scale, speed, killing) triples.

Thin Python veneer over the C++ core: named example specs, boundary
classification, Dirichlet energies, regular-subspace decisions, and the
seeded Monte Carlo estimators.
"""

try:
    from lindiff._core import *  # noqa: F401,F403  (installed layout)
    from lindiff import _core as core
except ImportError:  # in-tree build: _core.so sits on PYTHONPATH directly
    from _core import *  # noqa: F401,F403
    import _core as core

__all__ = [name for name in dir(core) if not name.startswith("_")]
