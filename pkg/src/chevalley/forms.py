"""Invariant bilinear form and the quadratic orbit form (second-type cases).

Both exist only when the module contains the negative of every weight, which
happens exactly for the second-type cases.  The bilinear form pairs opposite
weight coordinates with signs; the signs are forced, up to global scale, by
invariance under the root elements and are found by propagation from the top
weight.  The quadratic form vanishes on the orbit of the highest weight
vector; it starts from the equation of a weight square and is pushed down a
shortest path to the lowest weight, one root element substitution at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, InternalConsistencyError, UnsupportedCaseError
from .rep import rep_tables
from .rings import RingElem, RingSpec
from .rng import SplitMix64
from .roots import Root
from .weights import Weight, WeightModule


def _require_second_type(wm: WeightModule) -> None:
    if wm.kind != "second":
        raise UnsupportedCaseError("the form is only defined for second-type cases")


def x_int_matrix(wm: WeightModule, alpha: Root, value: int = 1) -> np.ndarray:
    """Integer matrix of a root element with an integer parameter."""
    srcs, dsts, signs = rep_tables(wm).patterns[alpha]
    mat = np.eye(wm.dim, dtype=np.int64)
    mat[dsts, srcs] += signs * value
    return mat


# -- bilinear form ---------------------------------------------------------------


@lru_cache(maxsize=None)
def bilinear_form_signs(wm: WeightModule) -> dict:
    """Signs eps with h(u, v) = sum_lam eps_lam u_lam v_(-lam), invariant under
    every root element."""
    _require_second_type(wm)
    tables = rep_tables(wm)
    idx = wm.index

    eps: dict = {wm.lam0: 1}
    frontier = [wm.lam0]
    roots = list(wm.case.phi)
    while frontier:
        nxt = []
        for lam in frontier:
            for alpha in roots:
                mu = wm.shift(lam, alpha)
                if mu is None or mu in eps:
                    continue
                opposite = wm.minus(mu)  # equals -(lam+alpha)
                c_lam = tables.signs[(idx[lam], alpha)]
                c_opp = tables.signs[(idx[opposite], alpha)]
                eps[mu] = -c_lam * c_opp * eps[lam]
                nxt.append(mu)
        frontier = nxt
    if len(eps) != wm.dim:
        raise InternalConsistencyError("sign propagation did not reach every weight")

    # global consistency: every edge constraint must agree
    for lam in wm.weights:
        for alpha in roots:
            mu = wm.shift(lam, alpha)
            if mu is None:
                continue
            opposite = wm.minus(mu)
            c_lam = tables.signs[(idx[lam], alpha)]
            c_opp = tables.signs[(idx[opposite], alpha)]
            if eps[mu] != -c_lam * c_opp * eps[lam]:
                raise InternalConsistencyError("bilinear sign constraints conflict")
    return eps


def bilinear_matrix(wm: WeightModule) -> np.ndarray:
    eps = bilinear_form_signs(wm)
    h = np.zeros((wm.dim, wm.dim), dtype=np.int64)
    for lam in wm.weights:
        h[wm.idx(lam), wm.idx(wm.minus(lam))] = eps[lam]
    return h


def bilinear_invariance_holds(wm: WeightModule) -> bool:
    """Exhaustive check of g^T H g = H over all generators x_alpha(1)."""
    h = bilinear_matrix(wm)
    for alpha in wm.case.phi:
        g = x_int_matrix(wm, alpha)
        if not np.array_equal(g.T @ h @ g, h):
            return False
    return True


# -- weight squares ----------------------------------------------------------------


@dataclass(frozen=True)
class WeightSquare:
    """A weight subset with a perfect matching by non-root differences."""

    members: tuple[Weight, ...]
    matching: tuple[tuple[Weight, Weight], ...]


def find_square(wm: WeightModule, lam: Weight, mu: Weight) -> WeightSquare:
    """Common neighbours of two weights at distance two, plus the pair itself,
    matched by non-root differences."""
    if wm.distance(lam, mu) != 2:
        raise DomainError("the defining pair must be at distance two")
    members = {lam, mu}
    for nu in wm.weights:
        if wm.distance(nu, lam) == 1 and wm.distance(nu, mu) == 1:
            members.add(nu)
    members = tuple(sorted(members, key=wm.idx))
    if len(members) < 4:
        raise DomainError("the common neighbour set is too small to be a square")

    matching = []
    seen = set()
    for a in members:
        partners = [
            b
            for b in members
            if b != a and wm.root_between(a, b) is None
        ]
        if len(partners) != 1:
            raise DomainError("weight set is not a square: matching is not unique")
        b = partners[0]
        if a not in seen:
            matching.append((a, b) if wm.idx(a) < wm.idx(b) else (b, a))
            seen.update((a, b))
    return WeightSquare(members=members, matching=tuple(matching))


# -- quadratic form ------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticForm:
    """Integer quadratic form over unordered weight pairs, no diagonal terms."""

    wm: WeightModule
    coeffs: tuple[tuple[int, int, int], ...]  # (i, j, c) with i < j, canonical indices

    def coefficient(self, lam: Weight, mu: Weight) -> int:
        i, j = sorted((self.wm.idx(lam), self.wm.idx(mu)))
        for a, b, c in self.coeffs:
            if (a, b) == (i, j):
                return c
        return 0

    def evaluate_int(self, v) -> int:
        return sum(c * int(v[i]) * int(v[j]) for i, j, c in self.coeffs)

    def evaluate(self, v, ring: RingSpec) -> RingElem:
        total = ring.zero
        for i, j, c in self.coeffs:
            total = total + ring.el(c) * v.entry(i) * v.entry(j)
        return total

    def dual_through(self, wm_signs: dict) -> "QuadraticForm":
        """Transport to covector coordinates through the bilinear isomorphism."""
        wm = self.wm
        out = []
        for i, j, c in self.coeffs:
            lam, mu = wm.weights[i], wm.weights[j]
            ni, nj = wm.idx(wm.minus(lam)), wm.idx(wm.minus(mu))
            coeff = c * wm_signs[lam] * wm_signs[mu]
            a, b = sorted((ni, nj))
            out.append((a, b, coeff))
        return QuadraticForm(wm=wm, coeffs=tuple(sorted(out)))

    def to_json(self) -> list:
        return [[i, j, c] for i, j, c in self.coeffs]


def _orbit_vector_int(wm: WeightModule, rng: SplitMix64, length: int = 14) -> np.ndarray:
    """A column of a random word over the integers applied to the top vector."""
    tables = rep_tables(wm)
    roots = list(wm.case.phi)
    v = np.zeros(wm.dim, dtype=object)
    v[wm.idx(wm.lam0)] = 1
    for _ in range(length):
        alpha = roots[rng.randrange(len(roots))]
        value = rng.randrange(5) - 2
        if value == 0:
            continue
        srcs, dsts, signs = tables.patterns[alpha]
        v[dsts] = v[dsts] + (signs * value) * v[srcs]
    return v


def _fraction_kernel(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    """Right kernel of an integer matrix, solved exactly."""
    mat = [[Fraction(x) for x in row] for row in rows]
    nrows = len(mat)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis


def square_equation(wm: WeightModule, square: WeightSquare, seed: int = 2026) -> QuadraticForm:
    """The quadratic equation supported on the matched pairs of a square,
    found as the kernel of evaluation on integer orbit vectors."""
    rng = SplitMix64(seed)
    pairs = [tuple(sorted((wm.idx(a), wm.idx(b)))) for a, b in square.matching]
    n_samples = 8 * len(pairs) + 40
    rows = []
    for _ in range(n_samples):
        v = _orbit_vector_int(wm, rng)
        rows.append([int(v[i]) * int(v[j]) for i, j in pairs])
    kernel = _fraction_kernel(rows, len(pairs))
    if len(kernel) != 1:
        raise InternalConsistencyError(f"square equation kernel has dimension {len(kernel)}")
    vec = kernel[0]

    # normalize: +1 at the defining pair, integer entries
    lead = tuple(sorted((wm.idx(square.matching[0][0]), wm.idx(square.matching[0][1]))))
    lead_pos = pairs.index(lead)
    if vec[lead_pos] == 0:
        raise InternalConsistencyError("square equation does not involve the defining pair")
    vec = [v / vec[lead_pos] for v in vec]
    coeffs = []
    for (i, j), v in zip(pairs, vec):
        if v.denominator != 1:
            raise InternalConsistencyError("square equation is not integral after normalization")
        c = int(v)
        if c not in (-1, 1):
            raise InternalConsistencyError(f"square equation coefficient {c} is not a sign")
        coeffs.append((i, j, c))

    form = QuadraticForm(wm=wm, coeffs=tuple(sorted(coeffs)))
    for _ in range(200):
        v = _orbit_vector_int(wm, rng)
        if form.evaluate_int(v) != 0:
            raise InternalConsistencyError("square equation fails on a fresh orbit vector")
    return form


def _canonical_shortest_path(wm: WeightModule, start: Weight, goal: Weight) -> list[Weight]:
    path = [start]
    cur = start
    while cur != goal:
        d = wm.distance(cur, goal)
        nxt = next(
            (mu for mu in sorted(wm.neighbors(cur), key=wm.idx) if wm.distance(mu, goal) == d - 1),
            None,
        )
        if nxt is None:
            raise InternalConsistencyError("no descending neighbour on a shortest path")
        path.append(nxt)
        cur = nxt
    return path


def _form_matrix(form: QuadraticForm) -> np.ndarray:
    n = form.wm.dim
    s = np.zeros((n, n), dtype=np.int64)
    for i, j, c in form.coeffs:
        s[i, j] += c
        s[j, i] += c
    return s


def _form_from_matrix(wm: WeightModule, s: np.ndarray) -> QuadraticForm:
    if np.any(np.diagonal(s) != 0):
        raise InternalConsistencyError("quadratic form acquired diagonal terms")
    coeffs = []
    n = wm.dim
    for i in range(n):
        for j in range(i + 1, n):
            if s[i, j] != 0:
                coeffs.append((i, j, int(s[i, j])))
    return QuadraticForm(wm=wm, coeffs=tuple(coeffs))


@lru_cache(maxsize=None)
def build_pi_form(wm: WeightModule) -> QuadraticForm:
    """Quadratic form vanishing on the orbit of the highest weight vector,
    with a unit coefficient at the top/bottom weight pair."""
    _require_second_type(wm)
    lam0 = wm.lam0
    bottom = wm.minus(lam0)

    candidates = [mu for mu in wm.components[2] if wm.distance(lam0, mu) == 2]
    if not candidates:
        raise InternalConsistencyError("no distance-two weight in the third component")
    mu1 = min(candidates, key=wm.idx)

    square = find_square(wm, lam0, mu1)
    form = square_equation(wm, square)

    path = _canonical_shortest_path(wm, mu1, bottom)
    s = _form_matrix(form)
    for step in range(len(path) - 1):
        gamma = wm.root_between(path[step], path[step + 1])
        if gamma is None:
            raise InternalConsistencyError("path step is not a root")
        x = x_int_matrix(wm, gamma)
        s = x.T @ s @ x
        corner = s[wm.idx(lam0), wm.idx(path[step + 1])]
        if corner not in (1, -1):
            raise InternalConsistencyError(f"intermediate corner coefficient {corner}")

    final = _form_from_matrix(wm, s)
    if final.coefficient(lam0, bottom) not in (1, -1):
        raise InternalConsistencyError("final corner coefficient is not a sign")
    return final


def pi_form_vanishes_on_samples(
    wm: WeightModule, form: QuadraticForm, ring: RingSpec, n_samples: int, seed: int
) -> bool:
    """Evaluate the form on columns of random words over the given ring."""
    from .rep import get_representation, sample_word_rng

    rng = SplitMix64(seed)
    rep = get_representation(wm, ring)
    atoms = []
    nonzero = [v for v in ring.elements() if not v.is_zero()] if ring.is_finite else [
        ring.el(v) for v in (-2, -1, 1, 2)
    ]
    for alpha in wm.case.phi:
        for v in nonzero:
            atoms.append(("x", alpha, v))
    for _ in range(n_samples):
        length = 2 + rng.randrange(6)
        g = sample_word_rng(rep, atoms, length, rng)
        col = g.column(wm.lam0)
        if not form.evaluate(col, ring).is_zero():
            return False
    return True
