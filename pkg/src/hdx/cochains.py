"""Cochains and chains over a ring, with the operators that relate them.

A k-cochain stores values only on canonically ordered (sorted) faces; the
value at any other ordering is the canonical value times the sign of the
sorting permutation, so antisymmetry is structural. A k-chain is a finitely
supported ring-linear combination of faces.

Conventions fixed here and used everywhere else:

  * the coboundary of f at a sorted (k+1)-face is the alternating sum of
    f over its codimension-1 subfaces (dropping a vertex from a sorted
    tuple keeps it sorted, so no extra signs show up);
  * the boundary is augmented: the boundary of a vertex is the empty face
    with coefficient 1, which makes 0-coboundaries exactly the constants;
  * localization to the link of s reads f at s followed by the link face.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd

from . import intmat
from .complexes import SimplicialComplex
from .config import candidate_cap
from .errors import (
    DimensionMismatch,
    DimensionOutOfRange,
    FaceNotInComplex,
    FaceTooLarge,
    InputFormatError,
    IntegerRingRequiresBound,
    NegativeDimension,
    NonTerminatingSearch,
    RingMismatch,
    SearchSpaceTooLarge,
    TopDimension,
    Uncertified,
)
from .rings import Ring

COBOUNDARIES = "coboundaries"
COCYCLES = "cocycles"


def perm_sign(seq) -> int:
    """Sign of the permutation sorting seq (distinct comparable items)."""
    inv = 0
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


class Cochain:
    """Antisymmetric ring-valued function on the k-faces of a complex."""

    __slots__ = ("complex", "ring", "dim", "values")

    def __init__(self, complex: SimplicialComplex, ring: Ring, dim: int, values=None):
        self.complex = complex
        self.ring = ring
        self.dim = dim
        vals = {}
        for face, v in (values or {}).items():
            rv = ring.reduce(v)
            if rv:
                if not complex.has_face(face):
                    raise FaceNotInComplex(f"{face} is not a face")
                if len(face) - 1 != dim:
                    raise DimensionMismatch(f"{face} is not {dim}-dimensional")
                vals[face] = rv
        self.values = vals

    @classmethod
    def zero(cls, complex, ring, dim):
        return cls(complex, ring, dim, {})

    @property
    def support(self) -> frozenset:
        return frozenset(self.values)

    def is_zero(self) -> bool:
        return not self.values

    def norm(self) -> Fraction:
        return self.complex.norm(self.values) if self.values else Fraction(0)

    def __call__(self, oriented) -> int:
        """Value at an arbitrary ordering of a face."""
        face = tuple(sorted(oriented))
        v = self.values.get(face, 0)
        if not v:
            return 0
        return self.ring.reduce(perm_sign(tuple(oriented)) * v)

    def _binop(self, other, sign):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.dim != other.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")
        vals = dict(self.values)
        for f, v in other.values.items():
            vals[f] = vals.get(f, 0) + sign * v
        return Cochain(self.complex, self.ring, self.dim, vals)

    def __add__(self, other):
        return self._binop(other, 1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return Cochain(self.complex, self.ring, self.dim,
                       {f: -v for f, v in self.values.items()})

    def scaled(self, a: int):
        return Cochain(self.complex, self.ring, self.dim,
                       {f: a * v for f, v in self.values.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.ring == other.ring
            and self.dim == other.dim
            and self.values == other.values
            and self.complex == other.complex
        )

    def __repr__(self):
        return f"Cochain(dim={self.dim}, ring={self.ring}, supp={len(self.values)})"

    def to_lines(self) -> str:
        """Text form: 'v1 v2 ... : value' per support face, canonical order."""
        return "\n".join(
            f"{' '.join(face)} : {self.values[face]}".strip()
            for face in sorted(self.values)
        )


def cochain_from_lines(X, ring, dim, text) -> Cochain:
    vals = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InputFormatError(f"bad cochain line {raw!r}")
        left, right = line.rsplit(":", 1)
        face = tuple(sorted(left.split()))
        try:
            v = int(right.strip())
        except ValueError:
            raise InputFormatError(f"bad cochain value in {raw!r}") from None
        vals[face] = vals.get(face, 0) + v
    return Cochain(X, ring, dim, vals)


class Chain:
    """Finitely supported ring-linear combination of faces of one dimension."""

    __slots__ = ("ring", "dim", "coeffs")

    def __init__(self, ring: Ring, dim: int, coeffs=None):
        self.ring = ring
        self.dim = dim
        self.coeffs = {}
        for face, a in (coeffs or {}).items():
            ra = ring.reduce(a)
            if ra:
                if len(face) - 1 != dim:
                    raise DimensionMismatch(f"{face} is not {dim}-dimensional")
                self.coeffs[face] = ra

    @property
    def support(self) -> frozenset:
        return frozenset(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _binop(self, other, sign):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.dim != other.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")
        coeffs = dict(self.coeffs)
        for f, a in other.coeffs.items():
            coeffs[f] = coeffs.get(f, 0) + sign * a
        return Chain(self.ring, self.dim, coeffs)

    def __add__(self, other):
        return self._binop(other, 1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def scaled(self, a: int):
        return Chain(self.ring, self.dim, {f: a * v for f, v in self.coeffs.items()})

    def reduced(self, ring: Ring) -> "Chain":
        return Chain(ring, self.dim, dict(self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.ring == other.ring
            and self.dim == other.dim
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"Chain(dim={self.dim}, ring={self.ring}, supp={len(self.coeffs)})"


# -- operators -------------------------------------------------------------------


def coboundary(f: Cochain) -> Cochain:
    """Alternating-sum extension of f one dimension up."""
    X = f.complex
    k = f.dim
    if k >= X.dim:
        raise TopDimension(f"no coboundary above dimension {X.dim}")
    vals = {}
    get = f.values.get
    for tau in X.faces(k + 1):
        s = 0
        for i in range(len(tau)):
            v = get(tau[:i] + tau[i + 1:], 0)
            if v:
                s += -v if i % 2 else v
        if s:
            vals[tau] = s
    return Cochain(X, f.ring, k + 1, vals)


def boundary(c: Chain) -> Chain:
    """Augmented boundary; the boundary of a vertex is the empty face."""
    if c.dim < 0:
        raise NegativeDimension("no boundary below dimension 0")
    coeffs = {}
    for face, a in c.coeffs.items():
        for i in range(len(face)):
            sub = face[:i] + face[i + 1:]
            coeffs[sub] = coeffs.get(sub, 0) + (-a if i % 2 else a)
    return Chain(c.ring, c.dim - 1, coeffs)


def evaluate(f: Cochain, c: Chain) -> int:
    """Pairing <f, c> = sum of coefficients times values."""
    if f.ring != c.ring:
        raise RingMismatch(f"{f.ring} vs {c.ring}")
    if f.dim != c.dim:
        raise DimensionMismatch(f"cochain dim {f.dim} vs chain dim {c.dim}")
    s = 0
    for face, a in c.coeffs.items():
        v = f.values.get(face, 0)
        if v:
            s += a * v
    return f.ring.reduce(s)


def localize(f: Cochain, sigma) -> Cochain:
    """Restriction of f to the link of sigma: f_sigma(t) = f(sigma then t)."""
    X = f.complex
    if len(sigma) > f.dim + 1:
        raise FaceTooLarge(f"{sigma} has more than {f.dim + 1} vertices")
    L = X.link(sigma)
    if sigma == ():
        return Cochain(L, f.ring, f.dim, dict(f.values))
    ss = set(sigma)
    vals = {}
    for face, v in f.values.items():
        if ss.issubset(face):
            tau = tuple(x for x in face if x not in ss)
            sign = perm_sign(sigma + tau)
            vals[tau] = sign * v
    return Cochain(L, f.ring, f.dim - len(sigma), vals)


def lift_from_link(h: Cochain, sigma, X) -> Cochain:
    """The cochain on X supported over sigma whose localization at sigma is h."""
    vals = {}
    for tau, v in h.values.items():
        face = tuple(sorted(sigma + tau))
        sign = perm_sign(sigma + tau)
        vals[face] = sign * v
    return Cochain(X, h.ring, h.dim + len(sigma), vals)


# -- matrices and vector views ---------------------------------------------------


def delta_matrix(X, k):
    """Integer matrix of the k-coboundary map in the canonical face bases.

    Rows are the (k+1)-faces, columns the k-faces; k = -1 yields the
    augmentation column of ones.
    """
    if not -1 <= k <= X.dim - 1:
        raise DimensionOutOfRange(f"coboundary dimension {k} not in -1..{X.dim - 1}")
    cols = {f: j for j, f in enumerate(X.faces(k))}
    rows = X.faces(k + 1)
    M = [[0] * len(cols) for _ in rows]
    for r, tau in enumerate(rows):
        for i in range(len(tau)):
            M[r][cols[tau[:i] + tau[i + 1:]]] = -1 if i % 2 else 1
    return M


def cochain_vector(f: Cochain):
    faces = f.complex.faces(f.dim)
    return tuple(f.values.get(face, 0) for face in faces)


def vector_cochain(X, ring, k, vec) -> Cochain:
    faces = X.faces(k)
    return Cochain(X, ring, k, {f: v for f, v in zip(faces, vec) if v})


def norm_of_vector(X, k, vec) -> Fraction:
    faces = X.faces(k)
    num = sum(X.deg_top(face) for face, v in zip(faces, vec) if v)
    return Fraction(num, X.weight_denominator(k)) if num else Fraction(0)


# -- subgroup enumeration over finite rings --------------------------------------


def _span_vectors(basis, ring, cap, width):
    """All R-linear combinations of the basis vectors, deterministically ordered."""
    n = ring.size
    total = n ** len(basis)
    if total > cap:
        raise SearchSpaceTooLarge(f"{total} combinations exceed cap {cap}")
    if not basis:
        return [(0,) * width]
    out = []
    seen = set()
    for coeffs in product(range(n), repeat=len(basis)):
        vec = [0] * width
        for c, b in zip(coeffs, basis):
            if c:
                for i, x in enumerate(b):
                    vec[i] += c * x
        vec = tuple(ring.reduce(v) for v in vec)
        if vec not in seen:
            seen.add(vec)
            out.append(vec)
    return out


def coboundary_group(X, ring: Ring, k: int, cap=None):
    """All vectors of B^k(X; R) for a finite ring R (B^{-1} = {0})."""
    cap = candidate_cap(cap)
    key = ("B", ring, k)
    if key in X.cache:
        return X.cache[key]
    nk = len(X.faces(k))
    if k <= -1:
        vecs = [(0,) * nk]
    else:
        D = delta_matrix(X, k - 1)
        gens = [tuple(row) for row in intmat.transpose(D)] if D and D[0] else []
        if ring.is_field:
            basis, _ = intmat.rref_mod_p(gens, ring.size) if gens else ([], [])
            vecs = _span_vectors([tuple(r) for r in basis], ring, cap, nk)
        else:
            vecs = _span_vectors(gens, ring, cap, nk)
    X.cache[key] = vecs
    return vecs


def cocycle_group(X, ring: Ring, k: int, cap=None):
    """All vectors of Z^k(X; R) for a finite ring R (Z^d = C^d)."""
    cap = candidate_cap(cap)
    key = ("Zc", ring, k)
    if key in X.cache:
        return X.cache[key]
    nk = len(X.faces(k))
    if k == X.dim:
        total = ring.size ** nk
        if total > cap:
            raise SearchSpaceTooLarge(f"{total} cocycles exceed cap {cap}")
        vecs = [tuple(v) for v in product(range(ring.size), repeat=nk)]
    else:
        D = delta_matrix(X, k)
        if ring.is_field:
            basis = intmat.kernel_mod_p(D, ring.size)
            vecs = _span_vectors([tuple(b) for b in basis], ring, cap, nk)
        else:
            n = ring.size
            U, S, V = intmat.smith_normal_form(D)
            r = len(intmat.snf_diagonal(S))
            gens = []
            for j in range(nk):
                col = tuple(V[i][j] for i in range(nk))
                if j < r:
                    m = n // gcd(S[j][j], n)
                    if m % n:
                        gens.append(tuple(ring.reduce(m * x) for x in col))
                else:
                    gens.append(tuple(ring.reduce(x) for x in col))
            vecs = _span_vectors(gens, ring, cap, nk)
    X.cache[key] = vecs
    return vecs


def _target_group(X, ring, k, target, cap):
    if target == COBOUNDARIES:
        return coboundary_group(X, ring, k, cap)
    if target == COCYCLES:
        return cocycle_group(X, ring, k, cap)
    raise InputFormatError(f"unknown distance target {target!r}")


def _weights(X, k):
    faces = X.faces(k)
    return [X.deg_top(f) for f in faces], X.weight_denominator(k)


def distance(f: Cochain, target: str = COBOUNDARIES, coeff_bound=None, cap=None):
    """Distance of f from the coboundaries or the cocycles.

    Finite rings enumerate the whole subgroup, so the value is exact and
    certified. Over the integers an exact membership test handles distance
    zero; otherwise a bounded-coefficient search over a lattice basis of the
    subgroup yields an upper bound flagged as uncertified.
    """
    X, k, ring = f.complex, f.dim, f.ring
    cap = candidate_cap(cap)
    fvec = cochain_vector(f)
    wnum, wden = _weights(X, k)

    def setdist(vec):
        num = sum(w for w, a, b in zip(wnum, fvec, vec) if ring.reduce(a - b))
        return Fraction(num, wden)

    if ring.is_finite:
        best = None
        for g in _target_group(X, ring, k, target, cap):
            d = setdist(g)
            if best is None or d < best:
                best = d
        return best, True

    # integers: exact membership, then bounded search
    if target == COBOUNDARIES:
        if k <= -1:
            member = not any(fvec)
        else:
            member = intmat.solve_int(delta_matrix(X, k - 1), list(fvec)) is not None
        gens = [] if k <= -1 else intmat.image_basis_int(delta_matrix(X, k - 1))
    else:
        if k == X.dim:
            member = True
        else:
            member = not any(intmat.mat_vec(delta_matrix(X, k), list(fvec)))
        gens = (
            [list(col) for col in intmat.identity(len(fvec))]
            if k == X.dim
            else intmat.kernel_int(delta_matrix(X, k))
        )
    if member:
        return Fraction(0), True
    if coeff_bound is None:
        raise IntegerRingRequiresBound(
            "distance over Z needs coeff_bound for the bounded search"
        )
    b = int(coeff_bound)
    total = (2 * b + 1) ** len(gens)
    if total > cap:
        raise SearchSpaceTooLarge(f"{total} combinations exceed cap {cap}")
    best = f.norm()
    for coeffs in product(range(-b, b + 1), repeat=len(gens)):
        vec = [0] * len(fvec)
        for c, g in zip(coeffs, gens):
            if c:
                for i, x in enumerate(g):
                    vec[i] += c * x
        d = setdist(vec)
        if d < best:
            best = d
    return best, False


def _mod_p_distance_floor(f: Cochain, target: str, cap) -> Fraction:
    """Largest reduction-mod-p distance; a lower bound for the Z distance."""
    best = Fraction(0)
    for p in (2, 3):
        from .rings import prime_field

        ring = prime_field(p)
        g = Cochain(f.complex, ring, f.dim, dict(f.values))
        try:
            d, _ = distance(g, target, cap=cap)
        except SearchSpaceTooLarge:
            continue
        best = max(best, d)
    return best


def is_minimal(f: Cochain, coeff_bound=2, cap=None) -> bool:
    """Whether the norm of f equals its distance from the coboundaries."""
    if f.ring.is_finite:
        d, _ = distance(f, COBOUNDARIES, cap=cap)
        return d == f.norm()
    upper, certified = distance(f, COBOUNDARIES, coeff_bound=coeff_bound, cap=cap)
    if certified or upper < f.norm():
        return upper == f.norm()
    if _mod_p_distance_floor(f, COBOUNDARIES, cap) == f.norm():
        return True
    raise Uncertified("bounded integer search could not certify minimality")


def is_locally_minimal(f: Cochain, coeff_bound=2, cap=None) -> bool:
    """Whether every localization of f to a link is minimal there.

    Localizations to faces of k+1 vertices are (-1)-cochains, which are
    always minimal, so only faces of dimension below k need checking; only
    faces under the support can give a nonzero localization.
    """
    k = f.dim
    candidates = set()
    for face in f.support:
        for c in range(1, k + 1):
            for sub in combinations(face, c):
                candidates.add(sub)
    for sigma in sorted(candidates, key=lambda s: (len(s), s)):
        h = localize(f, sigma)
        if h.is_zero():
            continue
        if not is_minimal(h, coeff_bound=coeff_bound, cap=cap):
            return False
    return True


def make_locally_minimal(f: Cochain, cap=None, max_steps=100000):
    """Repair f to a locally minimal cochain by subtracting a coboundary.

    Returns (g, f2) with f2 = f - coboundary(g), f2 locally minimal and
    norm(f2) <= norm(f). Scans faces by dimension then lexicographically;
    each repair step replaces the localization at the first offending face
    by its closest link coboundary (ties broken by the lexicographically
    least link vector, then the least link preimage).
    """
    if not f.ring.is_finite:
        raise Uncertified("local minimality repair needs a finite ring")
    X, ring, k = f.complex, f.ring, f.dim
    cap = candidate_cap(cap)
    g_acc = Cochain.zero(X, ring, k - 1)
    cur = f
    for _ in range(max_steps):
        step = _first_repair_step(cur, cap)
        if step is None:
            return g_acc, cur
        g_acc = g_acc + step
        cur = cur - coboundary(step)
    raise NonTerminatingSearch("local minimality repair did not converge")


def _first_repair_step(f: Cochain, cap):
    """The lift of the best improving link coboundary at the first bad face."""
    X, ring = f.complex, f.ring
    candidates = set()
    for face in f.support:
        for c in range(1, f.dim + 1):
            for sub in combinations(face, c):
                candidates.add(sub)
    for sigma in sorted(candidates, key=lambda s: (len(s), s)):
        h = localize(f, sigma)
        if h.is_zero():
            continue
        L = h.complex
        hvec = cochain_vector(h)
        wnum, wden = _weights(L, h.dim)
        group = coboundary_group(L, ring, h.dim, cap)
        hnorm = h.norm()
        best = None
        for b in group:
            num = sum(w for w, a, x in zip(wnum, hvec, b) if ring.reduce(a - x))
            d = Fraction(num, wden)
            if d < hnorm and (best is None or d < best[0] or (d == best[0] and b < best[1])):
                best = (d, b)
        if best is None:
            continue
        target = tuple(ring.reduce(v if len(sigma) % 2 == 0 else -v) for v in best[1])
        h_pre = _lex_least_preimage(L, ring, h.dim - 1, target, cap)
        return lift_from_link(h_pre, sigma, X)
    return None


def _lex_least_preimage(L, ring, j, target_vec, cap):
    """Lexicographically least h in C^j(L) with delta(h) equal to the target."""
    faces = L.faces(j)
    total = ring.size ** len(faces)
    if total > cap:
        raise SearchSpaceTooLarge(f"{total} preimage candidates exceed cap {cap}")
    tfaces = L.faces(j + 1)
    for vec in product(range(ring.size), repeat=len(faces)):
        h = vector_cochain(L, ring, j, vec)
        dv = cochain_vector(coboundary(h))
        if tuple(dv) == tuple(target_vec):
            return h
    raise NonTerminatingSearch(
        f"no preimage for a link coboundary over {ring} at dimension {j} "
        f"({len(faces)} faces, {len(tfaces)} above)"
    )


def random_cochain(X, ring, k, rng, int_low=-9, int_high=9) -> Cochain:
    """Seeded random k-cochain; integer values are uniform on a small range."""
    vals = {}
    for face in X.faces(k):
        if ring.is_finite:
            vals[face] = rng.randrange(ring.size)
        else:
            vals[face] = rng.randint(int_low, int_high)
    return Cochain(X, ring, k, vals)
