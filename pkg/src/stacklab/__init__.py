"""Exact and asymptotic enumeration of stacks (unimodal sequences).

Modules:

- ``series_core``: exact truncated power series over the integers
- ``genfun``: generating functions and series identities
- ``combinat``: brute-force enumeration and partition bijections
- ``asym``: main terms, Tauberian transfer, numerics near q = 1
- ``cli``: the ``stacklab`` command
"""

from .genfun import IdentityTag, Variant, series, verify_identity

__version__ = "0.1.0"

__all__ = ["IdentityTag", "Variant", "series", "verify_identity", "__version__"]
