"""Exact and finite-field checks of physical rigidity for Kloosterman and Airy
connections, through Steinberg sections, braid varieties and Stokes data."""

from .errors import (
    ConfigurationError,
    ResourceError,
    StokesBraidError,
    UnsupportedInputError,
    VerificationFailure,
)
from .fields import GF, QQ, FieldSpec
from .rootdata import RootSystem, WeylElement, build_root_system

__all__ = [
    "ConfigurationError",
    "FieldSpec",
    "GF",
    "QQ",
    "ResourceError",
    "RootSystem",
    "StokesBraidError",
    "UnsupportedInputError",
    "VerificationFailure",
    "WeylElement",
    "build_root_system",
]

__version__ = "0.1.0"
