"""Complete minors in complements of maximal non-separating planar graphs."""

from .graph import Graph, complement, canonical_code, decode_graph6, encode_graph6
from .families import classify, elongated_prism, enumerate_max_outerplanar, enumerate_prisms, fixture, wheel
from .certificates import (
    MinorModel,
    outerplanar_certificate,
    prism_certificate,
    verify_minor_model,
    wheel_schedule,
)
from .search import SearchConfig, hadwiger, has_complete_minor, has_minor

__all__ = [
    "Graph", "complement", "canonical_code", "decode_graph6", "encode_graph6",
    "classify", "elongated_prism", "enumerate_max_outerplanar", "enumerate_prisms",
    "fixture", "wheel", "MinorModel", "outerplanar_certificate", "prism_certificate",
    "verify_minor_model", "wheel_schedule", "SearchConfig", "hadwiger",
    "has_complete_minor", "has_minor",
]
