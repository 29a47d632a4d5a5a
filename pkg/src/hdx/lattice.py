"""Integer cohomology via Smith normal form, and lattices from cocycles.

The coboundary matrices have entries in {-1, 0, +1}; Smith normal form over
the integers yields the free rank and the torsion of each cohomology group,
the universal-coefficient consistency check ties the mod-2 dimensions to
them, and bounded coset searches produce minimal cocycle representatives
whose integer span is the lattice. Norms are the probability norm of the
ambient complex; reports carry the raw support counts alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import intmat
from .cochains import Cochain, cochain_vector, delta_matrix, vector_cochain
from .complexes import SimplicialComplex
from .config import candidate_cap
from .errors import (
    DependentGenerators,
    DimensionOutOfRange,
    NoFreePart,
    NotAGraph,
    SearchSpaceTooLarge,
)
from .rings import INTEGERS, prime_field


@dataclass
class IntegerMatrix:
    """A coboundary matrix with its face labels."""

    rows: tuple  # (k+1)-faces
    cols: tuple  # k-faces
    entries: list


def coboundary_matrix(X, k) -> IntegerMatrix:
    """Matrix of the k-coboundary map; k = -1 is the augmentation column."""
    return IntegerMatrix(X.faces(k + 1), X.faces(k), delta_matrix(X, k))


@dataclass
class SmithProfile:
    rank: int
    invariant_factors: tuple
    U: list
    S: list
    V: list


def smith_profile(M) -> SmithProfile:
    """Smith normal form with the transforms, verified by multiplication."""
    entries = M.entries if isinstance(M, IntegerMatrix) else M
    if not entries or not entries[0]:
        return SmithProfile(0, (), [], [list(r) for r in entries], [])
    U, S, V = intmat.smith_normal_form(entries)
    if intmat.mat_mul(intmat.mat_mul(U, entries), V) != S:
        raise AssertionError("smith transform verification failed")
    diag = intmat.snf_diagonal(S)
    return SmithProfile(len(diag), tuple(diag), U, S, V)


@dataclass
class CohomologyProfile:
    k: int
    free_rank: int
    torsion: tuple  # invariant factors above 1


def integer_cohomology(X, k) -> CohomologyProfile:
    """H^k(X; Z) with the augmented convention (reduced cohomology at k = 0)."""
    if not 0 <= k <= X.dim:
        raise DimensionOutOfRange(f"dimension {k} not in 0..{X.dim}")
    nk = len(X.faces(k))
    rank_above = 0 if k == X.dim else smith_profile(coboundary_matrix(X, k)).rank
    below = smith_profile(coboundary_matrix(X, k - 1))
    free_rank = nk - rank_above - below.rank
    torsion = tuple(v for v in below.invariant_factors if v > 1)
    return CohomologyProfile(k, free_rank, torsion)


def fp_cohomology_dimension(X, k, p) -> int:
    """dim over F_p of H^k(X; F_p), same augmented convention."""
    if not 0 <= k <= X.dim:
        raise DimensionOutOfRange(f"dimension {k} not in 0..{X.dim}")
    nk = len(X.faces(k))

    def rank_p(kk):
        if kk == X.dim:
            return 0
        M = delta_matrix(X, kk)
        basis, _ = intmat.rref_mod_p(M, p)
        return len(basis)

    return nk - rank_p(k) - rank_p(k - 1)


@dataclass
class UctReport:
    k: int
    fp_dimension: int
    free_rank: int
    even_torsion_here: int
    even_torsion_above: int

    @property
    def ok(self) -> bool:
        return (
            self.fp_dimension
            == self.free_rank + self.even_torsion_here + self.even_torsion_above
        )


def uct_check(X, k) -> UctReport:
    """dim_F2 H^k = free rank + 2-torsion of H^k + 2-torsion of H^{k+1}."""
    here = integer_cohomology(X, k)
    above_torsion = 0
    if k + 1 <= X.dim:
        above_torsion = sum(
            1 for t in integer_cohomology(X, k + 1).torsion if t % 2 == 0
        )
    return UctReport(
        k,
        fp_cohomology_dimension(X, k, 2),
        here.free_rank,
        sum(1 for t in here.torsion if t % 2 == 0),
        above_torsion,
    )


# -- minimal representatives and lattices ------------------------------------------


@dataclass
class LatticeGenerator:
    cochain: Cochain
    certified: bool


def free_cocycle_generators(X, k):
    """Integer cocycle vectors projecting to a basis of the free part of H^k."""
    nk = len(X.faces(k))
    if k == X.dim:
        kernel = [list(col) for col in intmat.identity(nk)]
    else:
        kernel = intmat.kernel_int(delta_matrix(X, k))
    if not kernel:
        return []
    K = [[kernel[j][i] for j in range(len(kernel))] for i in range(nk)]  # columns
    D = delta_matrix(X, k - 1)
    image_cols = intmat.image_basis_int(D)
    # write the image inside kernel coordinates: K @ Y = image columns
    Y = []
    for col in image_cols:
        y = intmat.solve_int(K, col)
        if y is None:
            raise AssertionError("coboundary outside the cocycle lattice")
        Y.append(y)
    m = len(kernel)
    if Y:
        Ymat = [[Y[j][i] for j in range(len(Y))] for i in range(m)]
        U, S, _ = intmat.smith_normal_form(Ymat)
        r = len(intmat.snf_diagonal(S))
        Uinv = intmat.invert_unimodular(U)
        free_cols = [[Uinv[i][j] for i in range(m)] for j in range(r, m)]
    else:
        free_cols = [list(col) for col in intmat.identity(m)]
    gens = []
    for y in free_cols:
        vec = [sum(K[i][j] * y[j] for j in range(m)) for i in range(nk)]
        gens.append(vec)
    return gens


def _bounded_coset_minimum(X, k, base_vec, gens, coeff_bound, cap):
    """Min norm over base + integer combinations of gens with small coefficients."""
    b = int(coeff_bound)
    total = (2 * b + 1) ** len(gens)
    if total > cap:
        raise SearchSpaceTooLarge(f"{total} coset candidates exceed cap {cap}")
    wnum = [X.deg_top(f) for f in X.faces(k)]
    den = X.weight_denominator(k)
    best = None
    best_vec = None
    for coeffs in product(range(-b, b + 1), repeat=len(gens)):
        vec = list(base_vec)
        for c, g in zip(coeffs, gens):
            if c:
                for i, x in enumerate(g):
                    vec[i] += c * x
        num = sum(w for w, v in zip(wnum, vec) if v)
        val = Fraction(num, den)
        key = (val, tuple(vec))
        if best is None or key < best:
            best = key
            best_vec = vec
    return best[0], best_vec


def _mod_p_coset_floor(X, k, vec, cap):
    """Exhaustive mod-p lower bound for the integer coset minimum."""
    from .cochains import COBOUNDARIES, distance

    best = Fraction(0)
    for p in (2, 3):
        ring = prime_field(p)
        f = vector_cochain(X, ring, k, [v % p for v in vec])
        try:
            d, _ = distance(f, COBOUNDARIES, cap=cap)
        except SearchSpaceTooLarge:
            continue
        best = max(best, d)
    return best


def minimal_representatives(X, k, coeff_bound=3, cap=None):
    """A minimal-norm integer representative per free generator of H^k.

    The coset search is bounded, so each representative carries a
    certification flag; it is certified when the bounded minimum meets an
    exhaustive mod-p lower bound for the coset (reduction mod p only shrinks
    supports, so the mod-p distance is a true floor for the integer one).
    """
    cap = candidate_cap(cap)
    gens = free_cocycle_generators(X, k)
    if not gens:
        raise NoFreePart(f"H^{k} has no free part")
    D = delta_matrix(X, k - 1)
    bgens = intmat.image_basis_int(D)
    out = []
    for vec in gens:
        val, best_vec = _bounded_coset_minimum(X, k, vec, bgens, coeff_bound, cap)
        floor = _mod_p_coset_floor(X, k, best_vec, cap)
        certified = val == floor
        out.append(
            LatticeGenerator(vector_cochain(X, INTEGERS, k, best_vec), certified)
        )
    return out


@dataclass
class CohomologyLattice:
    complex: SimplicialComplex
    k: int
    generators: tuple  # Cochain over Z
    certified: tuple   # per-generator certification flags

    @property
    def dimension(self) -> int:
        return len(self.generators)


def build_lattice(reps) -> CohomologyLattice:
    """Z-span of cocycle representatives; rejects dependent generators.

    Independence is modulo the coboundaries: stacking the generators on a
    basis of B^k must raise the rank by one per generator.
    """
    reps = list(reps)
    gens = [r.cochain if isinstance(r, LatticeGenerator) else r for r in reps]
    flags = tuple(
        r.certified if isinstance(r, LatticeGenerator) else False for r in reps
    )
    if not gens:
        raise DependentGenerators("a lattice needs at least one generator")
    X = gens[0].complex
    k = gens[0].dim
    D = delta_matrix(X, k) if k < X.dim else None
    for g in gens:
        if D is not None and any(intmat.mat_vec(D, list(cochain_vector(g)))):
            raise DependentGenerators(f"generator {g} is not a cocycle")
    bgens = intmat.image_basis_int(delta_matrix(X, k - 1))
    stack = [list(b) for b in bgens]
    base_rank = intmat.rank_int([list(r) for r in zip(*stack)]) if stack else 0
    rank = base_rank
    for g in gens:
        stack.append(list(cochain_vector(g)))
        new_rank = intmat.rank_int([list(r) for r in zip(*stack)])
        if new_rank != rank + 1:
            raise DependentGenerators(
                "generators are dependent modulo the coboundaries"
            )
        rank = new_rank
    return CohomologyLattice(X, k, tuple(gens), flags)


def _lattice_minimum(L: CohomologyLattice, coeff_bound, cap):
    """(distance, certified, witness) over bounded nonzero combinations.

    Certification routes: pairwise disjoint supports make the minimum a
    single generator (any combination's support contains a whole generator
    support); otherwise an exhaustive mod-p scan over primitive coefficient
    vectors provides a floor that a matching bounded minimum certifies.
    """
    cap = candidate_cap(cap)
    X, k = L.complex, L.k
    gens = [list(cochain_vector(g)) for g in L.generators]
    wnum = [X.deg_top(f) for f in X.faces(k)]
    den = X.weight_denominator(k)

    def norm_of(vec):
        return Fraction(sum(w for w, v in zip(wnum, vec) if v), den)

    supports = [frozenset(i for i, v in enumerate(g) if v) for g in gens]
    disjoint = all(
        not (supports[i] & supports[j])
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    )
    if disjoint:
        best = None
        for g in gens:
            key = (norm_of(g), tuple(g))
            if best is None or key < best:
                best = key
        return best[0], True, best[1]

    b = int(coeff_bound)
    total = (2 * b + 1) ** len(gens)
    if total > cap:
        raise SearchSpaceTooLarge(f"{total} combinations exceed cap {cap}")
    best = None
    for coeffs in product(range(-b, b + 1), repeat=len(gens)):
        if not any(coeffs):
            continue
        vec = [0] * len(gens[0])
        for c, g in zip(coeffs, gens):
            if c:
                for i, x in enumerate(g):
                    vec[i] += c * x
        key = (norm_of(vec), tuple(vec))
        if best is None or key < best:
            best = key
    # mod-p floor over primitive coefficient vectors: any nonzero integer
    # combination divided by its content has the same support and a nonzero
    # reduction mod p, so the mod-p minimum bounds the true distance below
    floor = None
    for p in (2, 3):
        pbest = None
        count = p ** len(gens)
        if count > cap:
            continue
        for coeffs in product(range(p), repeat=len(gens)):
            if not any(coeffs):
                continue
            vec = [0] * len(gens[0])
            for c, g in zip(coeffs, gens):
                if c:
                    for i, x in enumerate(g):
                        vec[i] += c * x
            val = Fraction(sum(w for w, v in zip(wnum, vec) if v % p), den)
            if pbest is None or val < pbest:
                pbest = val
        if pbest is not None and (floor is None or pbest > floor):
            floor = pbest
    certified = floor is not None and best[0] == floor
    return best[0], certified, best[1]


def lattice_distance(L: CohomologyLattice, coeff_bound=3, cap=None):
    """Least norm of a nonzero bounded integer combination of the generators."""
    dist, certified, _ = _lattice_minimum(L, coeff_bound, cap)
    return dist, certified


def component_lattice(X) -> CohomologyLattice:
    """The connected-component lattice of a graph complex.

    Generators are the indicator cochains of the components; this follows
    the introductory construction, so there is no quotient by the constants
    (a connected graph still yields dimension 1).
    """
    if X.dim > 1:
        raise NotAGraph(f"dimension {X.dim} complex is not a graph")
    parent = {v: v for v in X.vertices()}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (u, w) in X.faces(1):
        parent[find(u)] = find(w)
    comps = {}
    for v in X.vertices():
        comps.setdefault(find(v), []).append(v)
    gens = tuple(
        Cochain(X, INTEGERS, 0, {(v,): 1 for v in comp})
        for _, comp in sorted(comps.items())
    )
    return CohomologyLattice(X, 0, gens, tuple(True for _ in gens))


def lattice_report(X, k, coeff_bound=3, cap=None) -> dict:
    """JSON document for a lattice built from minimal representatives."""
    reps = minimal_representatives(X, k, coeff_bound, cap)
    L = build_lattice(reps)
    dist, certified, witness = _lattice_minimum(L, coeff_bound, cap)
    profile = integer_cohomology(X, k)
    return {
        "k": k,
        "dimension": L.dimension,
        "torsion": list(profile.torsion),
        "generators": [g.to_lines() for g in L.generators],
        "generators_certified": list(L.certified),
        "distance": {"num": dist.numerator, "den": dist.denominator},
        "distance_support_count": sum(1 for v in witness if v),
        "certified": certified,
    }
