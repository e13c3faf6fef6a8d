"""Exact computations for the simple 2-representations of categorified sl2.

Subpackages and modules:

- ``qcalc``: quantum integers, Laurent series and graded dimensions
- ``symgrp``, ``polyring``, ``nilhecke``: the nil Hecke algebra and its polynomial representation
- ``gradedcx``: graded cochain complexes, cones and Gaussian elimination
- ``simple2rep``: the bimodules of L(n) and the images of the Rickard complex
- ``rickard``: the maps G and T and the quasi-isomorphism certificates
- ``cli``: the ``sl2cat`` command
"""

__version__ = "0.1.0"

from .errors import InternalError, InvalidArgument, ResourceLimit  # noqa: E402

__all__ = ["InternalError", "InvalidArgument", "ResourceLimit", "__version__"]
