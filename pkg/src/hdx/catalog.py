"""Named example complexes used by the CLI, the verify suite, and the tests."""

from __future__ import annotations

from .complexes import SimplicialComplex, build_complex

_TOP_FACES = {
    # 1-dimensional
    "hollow_triangle": ["a b", "a c", "b c"],
    "two_triangles": ["a b", "a c", "b c", "p q", "p r", "q r"],
    "two_edges": ["a b", "c d"],
    "k4": ["a b", "a c", "a d", "b c", "b d", "c d"],
    "three_squares": [
        "a1 a2", "a2 a3", "a3 a4", "a1 a4",
        "b1 b2", "b2 b3", "b3 b4", "b1 b4",
        "c1 c2", "c2 c3", "c3 c4", "c1 c4",
    ],
    # 2-dimensional
    "full_triangle": ["a b c"],
    "tetrahedron": ["a b c", "a b d", "a c d", "b c d"],
    "octahedron": [
        "1 2 3", "1 2 4", "1 5 3", "1 5 4",
        "6 2 3", "6 2 4", "6 5 3", "6 5 4",
    ],
    # minimal 6-vertex triangulation of the projective plane
    "rp2": [
        "1 2 3", "1 2 4", "1 3 5", "1 4 6", "1 5 6",
        "2 3 6", "2 4 5", "2 5 6", "3 4 5", "3 4 6",
    ],
    # cone over two disjoint triangles: the apex link is disconnected
    "cone_two_triangles": [
        "v a b", "v a c", "v b c", "v p q", "v p r", "v q r",
    ],
}

_cache: dict = {}


def names() -> tuple:
    return tuple(sorted(_TOP_FACES))


def named_complex(name: str) -> SimplicialComplex:
    if name not in _TOP_FACES:
        raise KeyError(f"unknown example complex {name!r}; know {', '.join(names())}")
    if name not in _cache:
        _cache[name] = build_complex(_TOP_FACES[name])
    return _cache[name]
