"""Bounds and certificates for spherical few-distance sets and equiangular lines.

The package computes, in exact rational arithmetic wherever the input is
rational, the classical upper bounds on spherical s-distance and
equiangular sets (harmonic, Gerzon, relative, and the derived-set family
of bounds), runs eigenvalue-multiplicity and positive-semidefiniteness
certificates on concrete point configurations, and certifies extremal
equiangular sets through the strongly-regular-graph pipeline.

Layers:

* core modules (``linalg``, ``gegenbauer``, ``configurations``,
  ``analysis``, ``bounds``, ``extremal``) are pure functions over
  immutable values;
* ``service`` wraps the core in pydantic request/response models;
* ``api`` exposes the service as a FastAPI application;
* ``cli`` is a thin client over the service layer.
"""

from fewdist.errors import (
    AmbiguousSpectrumError,
    ConfigFormatError,
    FewdistError,
    InapplicableError,
    PreconditionError,
    SpectrumError,
)

__all__ = [
    "AmbiguousSpectrumError",
    "ConfigFormatError",
    "FewdistError",
    "InapplicableError",
    "PreconditionError",
    "SpectrumError",
]

__version__ = "0.1.0"
