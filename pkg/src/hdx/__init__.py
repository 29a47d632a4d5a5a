"""Exact cochain calculus and expansion measurement on small simplicial complexes."""

from .complexes import (
    SimplicialComplex,
    build_complex,
    complex_to_text,
    degree_bound,
    face_weight,
    link,
    load_complex,
    parse_complex_text,
    set_norm,
    skeleton,
)
from .rings import INTEGERS, Ring, modular_ring, parse_ring, prime_field

__all__ = [
    "INTEGERS",
    "Ring",
    "SimplicialComplex",
    "build_complex",
    "complex_to_text",
    "degree_bound",
    "face_weight",
    "link",
    "load_complex",
    "modular_ring",
    "parse_complex_text",
    "parse_ring",
    "prime_field",
    "set_norm",
    "skeleton",
]
