"""Additive functionals on random search trees.

Exact moment recurrences under the random-permutation and Catalan models,
transfer-theorem asymptotics, Hadamard-product singular expansions, and
limit-law moment sequences, backed by the C++ core.
"""

try:
    from ._sst import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:
    from _sst import *  # noqa: F401,F403  (in-tree build on PYTHONPATH)

__all__ = [name for name in dir() if not name.startswith("_")]
