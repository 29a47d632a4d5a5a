"""Exact measurement of coboundary, cosystolic, skeleton and small-set expansion.

All four notions are measured by exhaustive enumeration with exact rational
arithmetic. Coset scans over prime fields run through a vectorized engine
(numpy, integer weights) but report exact Fractions; every reported minimum
carries a witness that reproduces the ratio, and ties resolve to the
lexicographically least witness vector so reruns are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from . import intmat
from .cochains import (
    COBOUNDARIES,
    Cochain,
    coboundary,
    coboundary_group,
    cochain_vector,
    cocycle_group,
    delta_matrix,
    distance,
    is_locally_minimal,
    vector_cochain,
)
from .complexes import SimplicialComplex
from .config import DEFAULT_SKELETON_VERTEX_CAP, candidate_cap
from .errors import (
    ConstantExceedsOne,
    DimensionOutOfRange,
    IntegerRingRequiresBound,
    ParameterOutOfRange,
    SearchSpaceTooLarge,
    TooManyVertices,
)
from .rings import Ring

INFINITY = "infinity"  # sentinel for an empty minimum (H^k = 0 and friends)


@dataclass
class ExpansionReport:
    """Outcome of one expansion measurement; minima carry witnesses."""

    kind: str
    k: int
    ring: Ring | None
    epsilon: Fraction | str
    mu: Fraction | str | None = None
    witness: object = None  # Cochain or vertex tuple
    mu_witness: object = None
    certified: bool = True
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def frac(x):
            if x is None:
                return None
            if x == INFINITY:
                return INFINITY
            return {"num": x.numerator, "den": x.denominator}

        def wit(w):
            if w is None:
                return None
            if isinstance(w, Cochain):
                return w.to_lines()
            return list(w)

        doc = {
            "kind": self.kind,
            "k": self.k,
            "ring": str(self.ring) if self.ring is not None else None,
            "epsilon": frac(self.epsilon),
            "certified": self.certified,
            "witness": wit(self.witness),
        }
        if self.mu is not None:
            doc["mu"] = frac(self.mu)
            doc["mu_witness"] = wit(self.mu_witness)
        if self.extra:
            doc["extra"] = {
                key: (frac(v) if isinstance(v, Fraction) else v)
                for key, v in self.extra.items()
            }
        return doc


# -- skeleton expansion ------------------------------------------------------------


def skeleton_alpha(X: SimplicialComplex, max_vertices=None):
    """Least alpha with ||E(S)|| <= ||S||^2 + alpha * ||S|| for all nonempty S.

    Exhausts every vertex subset; the returned witness attains the maximum of
    (||E(S)|| - ||S||^2) / ||S|| (alpha clamps that maximum at zero).
    """
    cap = max_vertices if max_vertices is not None else DEFAULT_SKELETON_VERTEX_CAP
    verts = [f[0] for f in X.faces(0)]
    n = len(verts)
    if n > cap:
        raise TooManyVertices(f"{n} vertices exceed the exhaustive cap {cap}")
    if n == 0:
        return Fraction(0), ()
    wv = [X.deg_top((v,)) for v in verts]
    den_v = X.weight_denominator(0)
    index = {v: i for i, v in enumerate(verts)}
    edges_at = [[] for _ in range(n)]  # for vertex i: (j, weight) with j < i
    den_e = X.weight_denominator(1) if X.dim >= 1 else 1
    if X.dim >= 1:
        for (u, w) in X.faces(1):
            i, j = index[u], index[w]
            hi, lo = max(i, j), min(i, j)
            edges_at[hi].append((lo, X.deg_top(tuple(sorted((u, w))))))
    size = 1 << n
    # int64 arrays keep the table compact near the 22-vertex cap
    from array import array

    e_num = array("q", [0]) * size  # total edge weight inside the subset
    s_num = array("q", [0]) * size  # total vertex weight of the subset
    for mask in range(1, size):
        hi = mask.bit_length() - 1
        prev = mask & ~(1 << hi)
        add = 0
        for lo, we in edges_at[hi]:
            if prev >> lo & 1:
                add += we
        e_num[mask] = e_num[prev] + add
        s_num[mask] = s_num[prev] + wv[hi]
    best = None
    best_num = best_den = None
    for mask in range(1, size):
        # value = (E/den_e - (S/den_v)^2) / (S/den_v), compared exactly
        e, s = e_num[mask], s_num[mask]
        num = e * den_v * den_v - s * s * den_e
        den = s * den_v * den_e
        if best is None or num * best_den > best_num * den:
            best = mask
            best_num, best_den = num, den
    alpha = Fraction(best_num, best_den)
    witness = tuple(verts[i] for i in range(n) if best >> i & 1)
    if alpha < 0:
        alpha = Fraction(0)
    return alpha, witness


# -- coset scan engine (prime fields) ------------------------------------------------


def _lex_digit_block(start, count, base, free_cols, n_cols):
    idx = np.arange(start, start + count, dtype=np.int64)
    F = np.zeros((count, n_cols), dtype=np.uint8)
    nd = len(free_cols)
    for j, col in enumerate(free_cols):
        F[:, col] = (idx // base ** (nd - 1 - j)) % base
    return F


def _field_coset_scan(X, ring, k, subgroup_basis, cap, chunk=1 << 15):
    """Min of ||delta f|| / dist(f, span(basis)) over f outside the span.

    Representatives pin the pivot coordinates of the span to zero and are
    scanned in lexicographic order, so the reported witness is the least
    canonical representative attaining the minimum.
    """
    p = ring.size
    nk = len(X.faces(k))
    Dk = np.array(delta_matrix(X, k), dtype=np.int64) % p
    wk = np.array([X.deg_top(f) for f in X.faces(k)], dtype=np.int64)
    wk1 = np.array([X.deg_top(f) for f in X.faces(k + 1)], dtype=np.int64)
    den_k = X.weight_denominator(k)
    den_k1 = X.weight_denominator(k + 1)

    basis_rows, pivots = intmat.rref_mod_p([list(b) for b in subgroup_basis], p) \
        if subgroup_basis else ([], [])
    free_cols = [j for j in range(nk) if j not in pivots]
    n_reps = p ** len(free_cols)
    n_sub = p ** len(basis_rows)
    if n_reps > cap or n_sub > cap:
        raise SearchSpaceTooLarge(
            f"{n_reps} representatives / {n_sub} subgroup elements exceed cap {cap}"
        )
    sub = np.zeros((n_sub, nk), dtype=np.uint8)
    for i, coeffs in enumerate(product(range(p), repeat=len(basis_rows))):
        acc = np.zeros(nk, dtype=np.int64)
        for c, row in zip(coeffs, basis_rows):
            acc += c * np.array(row, dtype=np.int64)
        sub[i] = acc % p

    best_e = best_s = None
    best_index = None
    start = 0
    while start < n_reps:
        count = min(chunk, n_reps - start)
        F = _lex_digit_block(start, count, p, free_cols, nk)
        DF = (F.astype(np.int64) @ Dk.T) % p
        e = (DF != 0) @ wk1
        s = None
        for b in sub:
            diff = (F != b[None, :]) @ wk
            s = diff if s is None else np.minimum(s, diff)
        live = s > 0
        while True:
            if best_e is None:
                mask = live
            else:
                mask = live & (e * best_s < best_e * s)
            idxs = np.nonzero(mask)[0]
            if idxs.size == 0:
                break
            i0 = int(idxs[0])
            best_e, best_s = int(e[i0]), int(s[i0])
            best_index = start + i0
            live = live.copy()
            live[: i0 + 1] = False
        start += count
    if best_index is None:
        return INFINITY, None, n_reps
    ratio = Fraction(best_e * den_k, best_s * den_k1) if best_s else INFINITY
    # rebuild the witness vector from its index
    vec = [0] * nk
    nd = len(free_cols)
    for j, col in enumerate(free_cols):
        vec[col] = (best_index // p ** (nd - 1 - j)) % p
    return ratio, tuple(vec), n_reps


def _generic_coset_scan(X, ring, k, subgroup, cap):
    """Plain-Python fallback for non-field finite rings: scan all cochains."""
    nk = len(X.faces(k))
    total = ring.size ** nk
    if total > cap:
        raise SearchSpaceTooLarge(f"{total} cochains exceed cap {cap}")
    wk = [X.deg_top(f) for f in X.faces(k)]
    wk1 = [X.deg_top(f) for f in X.faces(k + 1)]
    den_k = X.weight_denominator(k)
    den_k1 = X.weight_denominator(k + 1)
    D = delta_matrix(X, k)
    best = None
    witness = None
    for vec in product(range(ring.size), repeat=nk):
        s = min(
            sum(w for w, a, b in zip(wk, vec, g) if ring.reduce(a - b))
            for g in subgroup
        )
        if s == 0:
            continue
        e = sum(
            w
            for w, row in zip(wk1, D)
            if ring.reduce(sum(c * v for c, v in zip(row, vec)))
        )
        ratio = Fraction(e * den_k, s * den_k1)
        if best is None or ratio < best:
            best, witness = ratio, vec
    if best is None:
        return INFINITY, None, total
    return best, witness, total


def coboundary_epsilon(X, ring: Ring, k: int, cap=None, coeff_bound=None) -> ExpansionReport:
    """Least ||delta f|| / dist(f, B^k) over the k-cochains outside B^k.

    Finite rings are exhaustive and certified. Over the integers only a
    bounded-coefficient scan is offered (pass coeff_bound), flagged as
    uncertified. k = -1 uses the convention B^{-1} = {0}: any nonzero
    (-1)-cochain has norm 1 and its coboundary covers every vertex, so the
    ratio is exactly 1.
    """
    cap = candidate_cap(cap)
    if not -1 <= k <= X.dim - 1:
        raise DimensionOutOfRange(f"dimension {k} not in -1..{X.dim - 1}")
    if k == -1:
        witness = None
        if ring.is_finite:
            witness = Cochain(X, ring, -1, {(): 1})
        return ExpansionReport("coboundary", k, ring, Fraction(1), witness=witness)
    if not ring.is_finite:
        if coeff_bound is None:
            raise IntegerRingRequiresBound(
                "coboundary expansion over Z needs coeff_bound"
            )
        return _integer_coboundary_scan(X, ring, k, coeff_bound, cap)
    if ring.is_field:
        D = delta_matrix(X, k - 1)
        gens = [tuple(r) for r in intmat.transpose(D)] if D and D[0] else []
        eps, vec, n_reps = _field_coset_scan(X, ring, k, gens, cap)
    else:
        subgroup = coboundary_group(X, ring, k, cap)
        eps, vec, n_reps = _generic_coset_scan(X, ring, k, subgroup, cap)
    witness = vector_cochain(X, ring, k, vec) if vec is not None else None
    return ExpansionReport(
        "coboundary", k, ring, eps, witness=witness,
        extra={"cosets_scanned": n_reps},
    )


def _integer_coboundary_scan(X, ring, k, coeff_bound, cap):
    b = int(coeff_bound)
    nk = len(X.faces(k))
    total = (2 * b + 1) ** nk
    if total > cap:
        raise SearchSpaceTooLarge(f"{total} integer cochains exceed cap {cap}")
    best = None
    witness = None
    for vec in product(range(-b, b + 1), repeat=nk):
        f = vector_cochain(X, ring, k, vec)
        if f.is_zero():
            continue
        d, _ = distance(f, COBOUNDARIES, coeff_bound=b, cap=cap)
        if d == 0:
            continue
        ratio = coboundary(f).norm() / d
        if best is None or ratio < best:
            best, witness = ratio, f
    if best is None:
        return ExpansionReport("coboundary", k, ring, INFINITY, certified=False)
    return ExpansionReport("coboundary", k, ring, best, witness=witness, certified=False)


def cosystolic_pair(X, ring: Ring, k: int, cap=None) -> ExpansionReport:
    """(epsilon, mu): cocycle-relative expansion and least nontrivial cocycle norm."""
    cap = candidate_cap(cap)
    if not 0 <= k <= X.dim - 1:
        raise DimensionOutOfRange(f"dimension {k} not in 0..{X.dim - 1}")
    if not ring.is_finite:
        raise IntegerRingRequiresBound("cosystolic measurement needs a finite ring")
    if ring.is_field:
        kern = intmat.kernel_mod_p(delta_matrix(X, k), ring.size)
        eps, vec, n_reps = _field_coset_scan(X, ring, k, [tuple(v) for v in kern], cap)
    else:
        subgroup = cocycle_group(X, ring, k, cap)
        eps, vec, n_reps = _generic_coset_scan(X, ring, k, subgroup, cap)
    witness = vector_cochain(X, ring, k, vec) if vec is not None else None

    cocycles = cocycle_group(X, ring, k, cap)
    bset = set(coboundary_group(X, ring, k, cap))
    mu = INFINITY
    mu_witness = None
    wnum = [X.deg_top(f) for f in X.faces(k)]
    den = X.weight_denominator(k)
    for z in cocycles:
        if z in bset:
            continue
        nrm = Fraction(sum(w for w, v in zip(wnum, z) if v), den)
        if mu == INFINITY or (nrm, z) < (mu, cochain_vector(mu_witness)):
            mu = nrm
            mu_witness = vector_cochain(X, ring, k, z)
    return ExpansionReport(
        "cosystolic", k, ring, eps, mu=mu, witness=witness, mu_witness=mu_witness,
        extra={"cosets_scanned": n_reps},
    )


# -- small-set expansion ---------------------------------------------------------------


def _supports_up_to_norm(X, k, mu, cap):
    """All face subsets of X(k) with norm at most mu, by pruned DFS (lex order)."""
    faces = X.faces(k)
    wnum = [X.deg_top(f) for f in faces]
    den = X.weight_denominator(k)
    limit = mu * den
    out = []
    n = len(faces)

    def rec(i, acc, chosen):
        if len(out) > cap:
            raise SearchSpaceTooLarge(f"more than {cap} supports below norm {mu}")
        if i == n:
            if chosen:
                out.append(tuple(chosen))
            return
        rec(i + 1, acc, chosen)
        if acc + wnum[i] <= limit:
            chosen.append(i)
            rec(i + 1, acc + wnum[i], chosen)
            chosen.pop()

    rec(0, 0, [])
    return [tuple(faces[i] for i in idx) for idx in sorted(out)]


def small_set_check(X, ring: Ring, epsilon: Fraction, mu: Fraction, cap=None):
    """Verify that every locally minimal f with ||f|| <= mu expands by epsilon.

    Scans all dimensions 0..d-1; returns (True, None) or the first
    counterexample in scan order (a locally minimal cochain with
    ||delta f|| < epsilon * ||f||).
    """
    cap = candidate_cap(cap)
    if not ring.is_finite:
        raise IntegerRingRequiresBound("small-set check needs a finite ring")
    nonzero = [v for v in ring.elements() if v]
    for k in range(0, X.dim):
        for support in _supports_up_to_norm(X, k, mu, cap):
            if len(nonzero) ** len(support) > cap:
                raise SearchSpaceTooLarge(
                    f"{len(nonzero) ** len(support)} value assignments exceed cap {cap}"
                )
            for values in product(nonzero, repeat=len(support)):
                f = Cochain(X, ring, k, dict(zip(support, values)))
                if coboundary(f).norm() >= epsilon * f.norm():
                    continue
                if is_locally_minimal(f, cap=cap):
                    return False, f
    return True, None


# -- link profiles and the good-links constants ---------------------------------------


def link_profile(X, ring: Ring, k: int, cap=None) -> dict:
    """beta_i = min over the i-faces of the link coboundary expansion at k-i-1.

    At i = k the link cochains sit in dimension -1 where the ratio is 1 by
    the B^{-1} = {0} convention. Links whose cochains are all coboundaries
    impose no constraint and are skipped; an unconstrained level reports
    the INFINITY sentinel.
    """
    out = {}
    for i in range(0, k + 1):
        j = k - i - 1
        best = INFINITY
        for sigma in X.faces(i):
            rep = coboundary_epsilon(X.link(sigma), ring, j, cap=cap)
            if rep.epsilon == INFINITY:
                continue
            if best == INFINITY or rep.epsilon < best:
                best = rep.epsilon
        out[i] = best
    return out


@dataclass
class GoodLinksConstants:
    epsilon: Fraction
    alpha: Fraction
    c: dict  # index i in -1..k


def good_links_constants(d: int, k: int, beta: Fraction, rho: Fraction) -> GoodLinksConstants:
    """The explicit constants that turn link expansion into small-set expansion.

    epsilon = (1-rho) / (1 + d (d-1)^{2(d-1)} / (beta^{d-1} (1-beta)));
    alpha   = (rho/(1-rho) * epsilon / (d (d+1) 2^{d+1}))^{2^d};
    c_{-1} = 0, c_0 = epsilon/((1-rho) beta), c_i = c_0 + (k^2/beta) c_{i-1}
    for 0 < i < k, and c_k = beta c_0 + (k+1) c_{k-1} for k >= 1.

    The chain of c's must stay monotone and end at most 1; parameters outside
    that regime raise ConstantExceedsOne.
    """
    beta, rho = Fraction(beta), Fraction(rho)
    if not (0 < beta < 1) or not (0 < rho < 1):
        raise ParameterOutOfRange("need 0 < beta < 1 and 0 < rho < 1")
    if d < 1 or k < 0 or k > d - 1:
        raise ParameterOutOfRange(f"need d >= 1 and 0 <= k <= d-1, got d={d} k={k}")
    eps = (1 - rho) / (
        1 + Fraction(d * (d - 1) ** (2 * (d - 1))) / (beta ** (d - 1) * (1 - beta))
    )
    alpha = (rho / (1 - rho) * eps / (d * (d + 1) * 2 ** (d + 1))) ** (2 ** d)
    c = {-1: Fraction(0), 0: eps / ((1 - rho) * beta)}
    for i in range(1, k):
        c[i] = c[0] + Fraction(k * k, 1) / beta * c[i - 1]
    if k >= 1:
        c[k] = beta * c[0] + (k + 1) * c[k - 1]
    for i in range(0, k + 1):
        if c[i] < c[i - 1]:
            raise ConstantExceedsOne(f"constants not monotone at i={i}")
    if c[k] > 1:
        raise ConstantExceedsOne(f"c_{k} = {c[k]} exceeds 1")
    return GoodLinksConstants(eps, alpha, c)
