"""Certificates for minimal Lorentzian surfaces in the pseudo-sphere S^4_2(1)."""

import json as _json

from ._core import (
    Curve,
    CurveValidationError,
    DomainError,
    ParseError,
    PslabError,
    SingularPointError,
    Surface,
    TheoremSurface,
    __version__,
    acceptance,
    builtin_curve_names,
    certificate,
    product_surface,
    veronese_surface,
)


def certificate_dict(command, **kwargs):
    """Runs a certificate command and returns (parsed json, exit code)."""
    text, code = certificate(command, **kwargs)
    return _json.loads(text), code


__all__ = [
    "Curve",
    "CurveValidationError",
    "DomainError",
    "ParseError",
    "PslabError",
    "SingularPointError",
    "Surface",
    "TheoremSurface",
    "__version__",
    "acceptance",
    "builtin_curve_names",
    "certificate",
    "certificate_dict",
    "product_surface",
    "veronese_surface",
]
