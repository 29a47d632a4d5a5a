from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from hdx import errors
from hdx.catalog import named_complex, names
from hdx.complexes import (
    build_complex,
    complex_to_text,
    degree_bound,
    face_weight,
    link,
    parse_complex_text,
    set_norm,
    skeleton,
)


def chain_probability_oracle(X, sigma):
    """Pr[the random chain passes through sigma], by enumerating all chains.

    A chain picks a top face uniformly, then deletes one uniformly random
    vertex at a time; each full deletion order has probability
    1 / (|X(d)| * (d+1)!).
    """
    from itertools import permutations

    d = X.dim
    total = 0
    hits = 0
    for top in X.top_faces:
        for order in permutations(top):
            total += 1
            remaining = list(top)
            levels = [tuple(sorted(remaining))]
            for v in order:
                remaining.remove(v)
                levels.append(tuple(sorted(remaining)))
            if sigma in levels:
                hits += 1
    return Fraction(hits, total)


def test_build_hollow_triangle():
    X = build_complex(["a b", "b c", "a c"])
    assert X.dim == 1
    assert len(X.faces(0)) == 3
    assert len(X.faces(1)) == 3
    assert X.faces(-1) == ((),)


def test_build_single_simplex():
    X = build_complex(["a b c"])
    assert X.dim == 2
    assert len(X.faces(0)) == 3
    assert len(X.faces(1)) == 3
    assert len(X.faces(2)) == 1
    assert X.faces(-1) == ((),)


def test_build_rejects_impure():
    with pytest.raises(errors.ImpureComplex):
        build_complex(["a b", "c d e"])


def test_build_rejects_empty_and_duplicates():
    with pytest.raises(errors.EmptyInput):
        build_complex([])
    with pytest.raises(errors.EmptyInput):
        build_complex(["a b", ""])
    with pytest.raises(errors.DuplicateVertexInFace):
        build_complex(["a a b"])


def test_mixed_cardinality_pure_input_ok():
    X = build_complex(["a b c", "a b"])
    assert X.dim == 2
    assert len(X.faces(2)) == 1


def test_face_weights_hollow_triangle():
    X = named_complex("hollow_triangle")
    assert face_weight(X, ("a", "b")) == Fraction(1, 3)
    assert face_weight(X, ("a",)) == Fraction(1, 3)
    assert face_weight(X, ()) == 1


def test_face_weight_tetrahedron_vertex():
    X = named_complex("tetrahedron")
    assert face_weight(X, ("a",)) == Fraction(1, 4)


def test_face_weight_missing_face():
    X = named_complex("hollow_triangle")
    with pytest.raises(errors.FaceNotInComplex):
        face_weight(X, ("a", "z"))


@pytest.mark.parametrize("name", names())
def test_weights_sum_to_one_each_dimension(name):
    X = named_complex(name)
    for k in range(-1, X.dim + 1):
        assert set_norm(X, X.faces(k)) == 1


@pytest.mark.parametrize("name", ["hollow_triangle", "tetrahedron", "octahedron", "rp2"])
def test_one_step_chain_identity(name):
    # weight(s) equals the sum over cofaces t of weight(t) / (k+2)
    X = named_complex(name)
    for k in range(-1, X.dim):
        for sigma in X.faces(k):
            total = sum(X.weight(t) for t in X.cofaces(sigma))
            assert X.weight(sigma) == total / (k + 2)


@pytest.mark.parametrize("name", ["hollow_triangle", "full_triangle", "tetrahedron", "octahedron"])
def test_weights_match_chain_enumeration_oracle(name):
    X = named_complex(name)
    for k in range(-1, X.dim + 1):
        for sigma in X.faces(k):
            assert X.weight(sigma) == chain_probability_oracle(X, sigma)


def test_set_norm_basics():
    X = named_complex("hollow_triangle")
    assert set_norm(X, []) == 0
    assert set_norm(X, [("a", "b"), ("a", "c")]) == Fraction(2, 3)
    with pytest.raises(errors.MixedDimensions):
        set_norm(X, [("a",), ("a", "b")])
    with pytest.raises(errors.FaceNotInComplex):
        set_norm(X, [("a", "z")])


def test_link_of_vertex_in_tetrahedron():
    X = named_complex("tetrahedron")
    L = link(X, ("a",))
    assert L.dim == 1
    assert set(L.vertices()) == {"b", "c", "d"}
    assert len(L.faces(1)) == 3


def test_link_identity_and_top_face():
    X = named_complex("hollow_triangle")
    assert link(X, ()) is X
    L = link(X, ("a", "b"))
    assert L.dim == -1
    assert L.faces(-1) == ((),)


def test_link_weights_match_conditional_law():
    # weight in the link of s = Pr[r_k = s union t | r_{|s|-1} = s] in X
    for name in ["tetrahedron", "octahedron", "rp2"]:
        X = named_complex(name)
        for sigma in X.faces(0) + X.faces(1):
            L = X.link(sigma)
            i = len(sigma) - 1
            for k in range(0, L.dim + 1):
                for tau in L.faces(k):
                    union = tuple(sorted(sigma + tau))
                    kk = len(union) - 1
                    joint = X.weight(union) / comb(kk + 1, i + 1)
                    assert L.weight(tau) == joint / X.weight(sigma)


def test_skeleton():
    X = named_complex("full_triangle")
    S = skeleton(X, 1)
    assert S.dim == 1
    assert len(S.faces(1)) == 3
    assert skeleton(X, X.dim) is X
    T = named_complex("tetrahedron")
    S0 = skeleton(T, 0)
    assert S0.dim == 0
    assert len(S0.faces(0)) == 4
    with pytest.raises(errors.DimensionOutOfRange):
        skeleton(X, 5)


def test_degree_bound():
    assert degree_bound(named_complex("hollow_triangle")) == 2
    assert degree_bound(named_complex("full_triangle")) == 3
    # oracle: nonempty faces of the link of one tetrahedron vertex, counted
    # directly (the link is a hollow triangle: 3 vertices + 3 edges)
    T = named_complex("tetrahedron")
    v = ("a",)
    by_hand = sum(
        1
        for k in range(1, T.dim + 1)
        for tau in T.faces(k)
        if "a" in tau
    )
    assert by_hand == 6
    assert degree_bound(T) == 6


def test_downward_closure_and_purity_hold():
    for name in names():
        X = named_complex(name)
        d = X.dim
        for k in range(-1, d + 1):
            for f in X.faces(k):
                for c in range(len(f) + 1):
                    for sub in combinations(f, c):
                        assert X.has_face(sub)
                assert any(set(f) <= set(t) for t in X.top_faces)


def test_text_roundtrip():
    X = named_complex("octahedron")
    text = complex_to_text(X)
    Y = parse_complex_text(text)
    assert X == Y


def test_text_comments_and_blank_lines():
    X = parse_complex_text("# a comment\n\na b # trailing\nb c\na c\n")
    assert X == named_complex("hollow_triangle")


def test_link_weights_match_chain_enumeration_oracle():
    # joint law by full enumeration of deletion orders: the link weight of t
    # in the link of s must equal Pr[r = s+t at its level AND r = s later]
    # divided by Pr[r = s at its level]
    from fractions import Fraction as Fr
    from itertools import permutations

    for name in ["tetrahedron", "octahedron"]:
        X = named_complex(name)
        d = X.dim
        for sigma in X.faces(0) + X.faces(1):
            L = X.link(sigma)
            i = len(sigma) - 1
            for k in range(0, L.dim + 1):
                for tau in L.faces(k)[:4]:
                    union = tuple(sorted(sigma + tau))
                    kk = len(union) - 1
                    hits_joint = 0
                    hits_sigma = 0
                    total = 0
                    for top in X.top_faces:
                        for order in permutations(top):
                            total += 1
                            remaining = list(top)
                            levels = {len(remaining) - 1: tuple(sorted(remaining))}
                            for v in order:
                                remaining.remove(v)
                                levels[len(remaining) - 1] = tuple(sorted(remaining))
                            if levels[i] == sigma:
                                hits_sigma += 1
                                if levels[kk] == union:
                                    hits_joint += 1
                    assert L.weight(tau) == Fr(hits_joint, hits_sigma)
                    assert X.weight(sigma) == Fr(hits_sigma, total)


def test_links_and_skeletons_stay_closed_and_pure():
    for name in ["tetrahedron", "octahedron", "rp2"]:
        X = named_complex(name)
        derived = [X.skeleton(k) for k in range(0, X.dim + 1)]
        derived += [X.link(s) for k in range(0, X.dim + 1) for s in X.faces(k)[:3]]
        for Y in derived:
            for k in range(-1, Y.dim + 1):
                for f in Y.faces(k):
                    for c in range(len(f) + 1):
                        for sub in combinations(f, c):
                            assert Y.has_face(sub)
                    assert any(set(f) <= set(t) for t in Y.top_faces)
