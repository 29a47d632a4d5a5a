"""Fat faces, ladders, bad faces, and the good-dimension decomposition.

Given a support A of k-faces and a fatness constant eta, the level sets are
defined top-down: A_k = A, and an i-face is fat when the conditional chance
that the random chain sits in A_{i+1} one step above it clears the threshold
eta^(2^(k-i-1)). All conditional probabilities come from the closed-form face
weights, never from sampling, because the thresholds are sharp inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .cochains import Cochain, coboundary, localize
from .complexes import SimplicialComplex
from .errors import (
    BadEta,
    EmptyFatLevel,
    FaceNotInComplex,
    ParameterOutOfRange,
    PreconditionViolated,
    PropertyViolation,
)


@dataclass
class FatFamily:
    """Level sets A_i of fat i-faces for -1 <= i <= k, with A_k the support."""

    complex: SimplicialComplex
    k: int
    eta: Fraction
    levels: dict  # i -> frozenset of faces

    def __post_init__(self):
        self._down = None

    def down_maps(self):
        """For every face s, the set of support faces with a fat ladder to s.

        A ladder from t in A down to an i-face s is a containment chain
        t > t_{k-1} > ... > t_{i+1} > s through the fat levels. Computed by
        one dynamic-programming sweep per dimension; the map at level i is
        defined for every i-face but only routes through fat intermediates.
        """
        if self._down is not None:
            return self._down
        X, k = self.complex, self.k
        down = {k: {}}
        for sigma in X.faces(k):
            down[k][sigma] = frozenset([sigma]) if sigma in self.levels[k] else frozenset()
        for i in range(k - 1, -2, -1):
            level_up = self.levels[i + 1]
            cur = {}
            for sigma in X.faces(i):
                acc = set()
                for tau in X.cofaces(sigma):
                    if tau in level_up:
                        acc |= down[i + 1][tau]
                cur[sigma] = frozenset(acc)
            down[i] = cur
        self._down = down
        return down

    def level_probability(self, i) -> Fraction:
        """Pr[r_k lands in A restricted below r_i and r_i is fat], exact."""
        X, k = self.complex, self.k
        if i < -1 or i > k:
            raise ParameterOutOfRange(f"level {i} not in -1..{k}")
        down = self.down_maps()
        c = comb(k + 1, i + 1)
        total = Fraction(0)
        for sigma in self.levels[i]:
            for tau in down[i][sigma]:
                total += X.weight(tau) / c
        return total

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "eta": {"num": self.eta.numerator, "den": self.eta.denominator},
            "levels": [
                [list(face) for face in sorted(self.levels[i])]
                for i in range(-1, self.k + 1)
            ],
        }


def fat_family(X, A, eta, k=None) -> FatFamily:
    """Level sets of fat faces under the conditional-probability threshold."""
    eta = Fraction(eta)
    if not 0 < eta < 1:
        raise BadEta(f"eta must lie strictly between 0 and 1, got {eta}")
    A = frozenset(A)
    if k is None:
        if not A:
            raise ParameterOutOfRange("empty support needs an explicit dimension k")
        dims = {len(f) - 1 for f in A}
        if len(dims) != 1:
            raise ParameterOutOfRange(f"support mixes dimensions {sorted(dims)}")
        k = dims.pop()
    for f in A:
        if not X.has_face(f) or len(f) - 1 != k:
            raise FaceNotInComplex(f"{f} is not a {k}-face")
    levels = {k: A}
    for i in range(k - 1, -2, -1):
        threshold = eta ** (2 ** (k - i - 1))
        fat = set()
        for sigma in X.faces(i):
            up = [t for t in X.cofaces(sigma) if t in levels[i + 1]]
            if not up:
                continue
            cond = sum(X.weight(t) for t in up) / ((i + 2) * X.weight(sigma))
            if cond >= threshold:
                fat.add(sigma)
        levels[i] = frozenset(fat)
    return FatFamily(X, k, eta, levels)


def ladder_restrict(X, fam: FatFamily, sigma) -> frozenset:
    """Support faces reachable from sigma through a ladder of fat faces."""
    if not X.has_face(sigma):
        raise FaceNotInComplex(f"{sigma} is not a face")
    i = len(sigma) - 1
    if i > fam.k:
        raise ParameterOutOfRange(f"{sigma} sits above dimension {fam.k}")
    return fam.down_maps()[i][sigma]


def bad_faces(X, fam: FatFamily) -> frozenset:
    """(k+1)-faces holding two fat i-faces whose intersection is not fat."""
    k = fam.k
    out = set()
    for tau in X.faces(k + 1):
        if _is_bad(tau, fam):
            out.add(tau)
    return frozenset(out)


def _is_bad(tau, fam) -> bool:
    # two fat i-faces inside tau meeting in a non-fat (i-1)-face; their union
    # has i+2 vertices, so scan the (i+2)-subsets of tau and split off pairs
    for i in range(0, fam.k + 1):
        if len(tau) < i + 2:
            break
        level = fam.levels[i]
        below = fam.levels[i - 1]
        for union in combinations(tau, i + 2):
            for x, y in combinations(range(i + 2), 2):
                s1 = union[:x] + union[x + 1:]
                s2 = union[:y] + union[y + 1:]
                if s1 in level and s2 in level:
                    inter = tuple(v for idx, v in enumerate(union) if idx not in (x, y))
                    if inter not in below:
                        return True
    return False


@dataclass
class LinksInequalityResult:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    min_ratio: Fraction
    prob_i: Fraction
    prob_below: Fraction
    bad_norm: Fraction
    sharper_rhs: Fraction
    sharper_holds: bool


def links_inequality_check(X, ring, f: Cochain, fam: FatFamily, i: int) -> LinksInequalityResult:
    """Evaluate both sides of the link-decomposition lower bound, exactly.

    lhs = ||delta f||; rhs = (min over fat i-faces s of the link expansion
    ratio of the ladder restriction) * Pr[level i] minus the overcount term
    (k+1-i)(i+1) * Pr[level i-1] minus the bad-face norm. The sharper fields
    report the same bound with the overcount constant replaced by 1.
    """
    k = f.dim
    if fam.k != k or fam.levels[k] != f.support:
        raise PreconditionViolated("family levels must start at the support of f")
    if not 0 <= i <= k:
        raise ParameterOutOfRange(f"i = {i} not in 0..{k}")
    if not fam.levels[i]:
        raise EmptyFatLevel(f"no fat faces at level {i}")
    down = fam.down_maps()
    min_ratio = None
    for sigma in sorted(fam.levels[i]):
        restricted = Cochain(
            X, ring, k, {t: v for t, v in f.values.items() if t in down[i][sigma]}
        )
        loc = localize(restricted, sigma)
        if loc.is_zero():
            continue
        ratio = coboundary(loc).norm() / loc.norm()
        if min_ratio is None or ratio < min_ratio:
            min_ratio = ratio
    if min_ratio is None:
        min_ratio = Fraction(0)
    prob_i = fam.level_probability(i)
    prob_below = fam.level_probability(i - 1)
    bad_set = bad_faces(X, fam)
    bad = X.norm(bad_set) if bad_set else Fraction(0)
    term1 = min_ratio * prob_i
    rhs = term1 - (k + 1 - i) * (i + 1) * prob_below - bad
    sharper = term1 - prob_below - bad
    lhs = coboundary(f).norm()
    return LinksInequalityResult(
        lhs, rhs, lhs >= rhs, min_ratio, prob_i, prob_below, bad,
        sharper, lhs >= sharper,
    )


def _exact_root(x: Fraction, m: int):
    """The m-th root of x when exact, else None (integer Newton iteration)."""
    def iroot(n):
        if n < 2:
            return n if n ** m == n or n < 2 else None
        r = 1 << ((n.bit_length() + m - 1) // m)  # upper start for Newton
        while True:
            nxt = ((m - 1) * r + n // r ** (m - 1)) // m
            if nxt >= r:
                break
            r = nxt
        return r if r ** m == n else None

    a, b = iroot(x.numerator), iroot(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def good_dimension_witness(X, ring, f: Cochain, c: dict, alpha: Fraction):
    """Select the decomposition dimension and certify its expansion bound.

    Follows the selection rule of the decomposition argument: take i = 0 when
    every level probability clears c_i * ||f||, otherwise i = j+1 for the
    largest failing level j. Asserts ||delta f|| >= (beta_i c_i -
    (k+1-i)(i+1) c_{i-1} - eta (k+1)(k+2) 2^{k+2}) ||f|| with
    eta = alpha^(2^-d), and returns (i, bound).
    """
    from .expansion import INFINITY, coboundary_epsilon

    alpha = Fraction(alpha)
    k, d = f.dim, X.dim
    if f.is_zero():
        return 0, Fraction(0)
    for i in range(0, k + 1):
        lo = c.get(i - 1, None)
        hi = c.get(i, None)
        if lo is None or hi is None or lo > hi:
            raise PreconditionViolated("constants must be monotone over -1..k")
    if c[-1] != 0 or c[k] > 1:
        raise PreconditionViolated("constants must start at 0 and end at most 1")
    if f.norm() > alpha:
        raise PreconditionViolated(f"||f|| = {f.norm()} exceeds alpha = {alpha}")
    from .cochains import is_locally_minimal

    if not is_locally_minimal(f):
        raise PreconditionViolated("f is not locally minimal")
    eta = _exact_root(alpha, 2 ** d)
    if eta is None:
        raise ParameterOutOfRange(
            f"alpha = {alpha} has no exact 2^{d}-th root; pass an exact power"
        )
    fam = fat_family(X, f.support, eta)
    if fam.levels[-1]:
        raise PropertyViolation("the empty face came out fat although ||f|| <= alpha")
    norm = f.norm()
    probs = {i: fam.level_probability(i) for i in range(-1, k + 1)}
    if probs[k] != norm:
        raise PropertyViolation("top level probability must equal ||f||")
    failing = [j for j in range(0, k) if probs[j] < c[j] * norm]
    i = (max(failing) + 1) if failing else 0

    j = k - i - 1
    if j == -1:
        beta_i = Fraction(1)
    else:
        beta_i = None
        for sigma in X.faces(i):
            rep = coboundary_epsilon(X.link(sigma), ring, j)
            if rep.epsilon == INFINITY:
                continue
            if beta_i is None or rep.epsilon < beta_i:
                beta_i = rep.epsilon
        if beta_i is None:
            raise PropertyViolation(
                f"every link at level {i} is unconstrained; no finite beta"
            )
    bound = (
        beta_i * c[i]
        - (k + 1 - i) * (i + 1) * c[i - 1]
        - eta * (k + 1) * (k + 2) * 2 ** (k + 2)
    ) * norm
    if coboundary(f).norm() < bound:
        raise PropertyViolation(
            f"expansion bound failed at dimension {i}: "
            f"{coboundary(f).norm()} < {bound}"
        )
    return i, bound
