"""Weights of the basic minuscule module and their combinatorics.

Weights are stored in fundamental-weight coordinates, so that the pairing of a
weight with a root is a plain dot product against the root's simple-root
coefficients, and adding a root means adding its Cartan-matrix image.

The weight set is the full Weyl orbit of the fundamental weight dual to the
crossed vertex.  Cutting the diagram edges labelled by the crossed simple root
breaks the diagram into totally ordered components; their index equals the
crossed-root coefficient of (top weight - weight) in the root lattice.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, InternalConsistencyError
from .roots import EmbeddingCase, Root, build_case, height

Weight = tuple[int, ...]


def pairing_wr(lam: Weight, alpha: Root) -> int:
    """Pairing of a weight (fundamental coordinates) with a root (simple-root
    coordinates)."""
    return sum(x * y for x, y in zip(lam, alpha))


@dataclass(frozen=True)
class WeightModule:
    case: EmbeddingCase
    weights: tuple[Weight, ...]  # canonical order, highest weight first
    lam0: Weight
    components: tuple[tuple[Weight, ...], ...]
    kind: str  # "first" or "second"

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def index(self) -> dict:
        return _index_of(self)

    @property
    def weight_set(self) -> frozenset:
        return frozenset(self.weights)

    def component_of(self, lam: Weight) -> int:
        return _component_map_of(self)[lam]

    def idx(self, lam: Weight) -> int:
        return self.index[lam]

    # -- shifts and distance -------------------------------------------------

    def shift(self, lam: Weight, alpha: Root) -> Weight | None:
        """lam + alpha when that is again a weight, else None."""
        fund = self.case.root_fund_coords(alpha)
        s = tuple(x + y for x, y in zip(lam, fund))
        return s if s in self.weight_set else None

    def distance(self, lam: Weight, mu: Weight) -> int:
        return _distances_of(self)[self.idx(lam)][self.idx(mu)]

    def root_between(self, lam: Weight, mu: Weight) -> Root | None:
        """lam - mu as a root, when it is one."""
        diff = tuple(x - y for x, y in zip(lam, mu))
        root = _fund_to_root_of(self).get(diff)
        return root

    def neighbors(self, lam: Weight) -> tuple[Weight, ...]:
        """Weights at distance one in the weight graph."""
        return _neighbors_of(self)[lam]

    def minus(self, lam: Weight) -> Weight:
        neg = tuple(-x for x in lam)
        if neg not in self.weight_set:
            raise DomainError("negated weight lies outside the module")
        return neg

    # -- component structure ---------------------------------------------------

    def component_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    @property
    def lambda1(self) -> tuple[Weight, ...]:
        return self.components[1]

    def neighbor_in_component(self, lam1: Weight, nu: Weight | None = None) -> Weight:
        """A weight of the same component at distance one from lam1 (and from
        nu when given)."""
        comp = self.component_of(lam1)
        if comp != 1:
            # the statement is used for the first non-trivial component only
            raise DomainError("weight must lie in the first non-trivial component")
        if nu is not None:
            if self.component_of(nu) != 1 or self.distance(lam1, nu) != 1:
                raise DomainError("second weight must be a component neighbour of the first")
        for mu in self.neighbors(lam1):
            if self.component_of(mu) != comp:
                continue
            if nu is None or self.distance(mu, nu) == 1:
                return mu
        raise InternalConsistencyError("no in-component neighbour found")

    # -- Weyl words -------------------------------------------------------------

    def simple_word_to_top(self, lam: Weight) -> tuple[int, ...]:
        """Indices i_1, ..., i_m of simple reflections with
        w_{i_1} ... w_{i_m} (lam) = top weight, raising at every step."""
        word = []
        cur = lam
        guard = 4 * self.dim
        while cur != self.lam0:
            for i, alpha in enumerate(self.case.simple_roots):
                if pairing_wr(cur, alpha) == -1:
                    cur = self.reflect(cur, alpha)
                    word.append(i)
                    break
            else:
                raise InternalConsistencyError("stuck below the top weight")
            guard -= 1
            if guard < 0:
                raise InternalConsistencyError("raising loop did not terminate")
        return tuple(reversed(word))

    def reflect(self, lam: Weight, alpha: Root) -> Weight:
        n = pairing_wr(lam, alpha)
        fund = self.case.root_fund_coords(alpha)
        return tuple(x - n * y for x, y in zip(lam, fund))


@lru_cache(maxsize=None)
def _index_of(wm: WeightModule) -> dict:
    return {w: i for i, w in enumerate(wm.weights)}


@lru_cache(maxsize=None)
def _component_map_of(wm: WeightModule) -> dict:
    return {w: i for i, comp in enumerate(wm.components) for w in comp}


@lru_cache(maxsize=None)
def _fund_to_root_of(wm: WeightModule) -> dict:
    return {wm.case.root_fund_coords(r): r for r in wm.case.phi}


@lru_cache(maxsize=None)
def _neighbors_of(wm: WeightModule) -> dict:
    fund_roots = list(_fund_to_root_of(wm).keys())
    out = {}
    for lam in wm.weights:
        nbrs = []
        for fr in fund_roots:
            mu = tuple(x - y for x, y in zip(lam, fr))
            if mu in wm.weight_set:
                nbrs.append(mu)
        out[lam] = tuple(nbrs)
    return out


@lru_cache(maxsize=None)
def _distances_of(wm: WeightModule) -> tuple[tuple[int, ...], ...]:
    n = wm.dim
    idx = wm.index
    rows = []
    for start in wm.weights:
        dist = [-1] * n
        dist[idx[start]] = 0
        queue = deque([start])
        while queue:
            lam = queue.popleft()
            d = dist[idx[lam]]
            for mu in wm.neighbors(lam):
                if dist[idx[mu]] < 0:
                    dist[idx[mu]] = d + 1
                    queue.append(mu)
        if min(dist) < 0:
            raise InternalConsistencyError("weight graph is not connected")
        rows.append(tuple(dist))
    return tuple(rows)


@lru_cache(maxsize=None)
def build_weights(case: EmbeddingCase) -> WeightModule:
    """Weights of the basic module as the Weyl orbit of the top weight."""
    top = tuple(1 if i == case.alpha1_index else 0 for i in range(case.l))

    def reflect(lam, alpha):
        n = pairing_wr(lam, alpha)
        fund = case.root_fund_coords(alpha)
        return tuple(x - n * y for x, y in zip(lam, fund))

    orbit = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for lam in frontier:
            for alpha in case.simple_roots:
                mu = reflect(lam, alpha)
                if mu not in orbit:
                    orbit.add(mu)
                    nxt.append(mu)
        frontier = nxt

    # depth data: top - lam in simple-root coordinates
    depth = {}
    for lam in orbit:
        diff = tuple(t - x for t, x in zip(top, lam))
        coeffs = case.root_coords_of_fund(diff)
        if any(c < 0 for c in coeffs):
            raise InternalConsistencyError("weight above the top weight")
        depth[lam] = coeffs

    weights = sorted(orbit, key=lambda lam: (sum(depth[lam]), depth[lam]))
    if weights[0] != top:
        raise InternalConsistencyError("top weight is not minimal in the canonical order")

    # components: constant crossed-root coefficient of (top - lam)
    comp_key = {lam: depth[lam][case.alpha1_index] for lam in weights}
    n_comp = max(comp_key.values()) + 1
    components = tuple(
        tuple(lam for lam in weights if comp_key[lam] == i) for i in range(n_comp)
    )
    if any(not c for c in components):
        raise InternalConsistencyError("empty diagram component")
    if components[0] != (top,):
        raise InternalConsistencyError("top component is not a singleton")

    singletons = sum(1 for c in components if len(c) == 1)
    bottom = components[-1]
    neg_top = tuple(-x for x in top)
    if len(bottom) == 1 and bottom[0] == neg_top:
        kind = "second"
        if singletons != 2:
            raise InternalConsistencyError("second-type module needs exactly two singletons")
    else:
        kind = "first"
        if singletons != 1:
            raise InternalConsistencyError("first-type module needs exactly one singleton")
    if kind != case.kind:
        raise InternalConsistencyError("module symmetry disagrees with the case parity rule")

    return WeightModule(case=case, weights=tuple(weights), lam0=top, components=components, kind=kind)


# -- shift-root decomposition ---------------------------------------------------


@dataclass(frozen=True)
class ShiftRootSplit:
    """Roots alpha with lam1 - alpha still a weight, split by orbit, together
    with the reflected subsystem through the connecting root."""

    lam1: Weight
    minus: tuple[Root, ...]  # the single root pointing up to the top weight
    zero: tuple[Root, ...]  # roots inside the subsystem
    plus: tuple[Root, ...]  # roots in the upper orbit
    reflected_delta: tuple[Root, ...]  # image of the subsystem under the connecting reflection
    overlap: tuple[Root, ...]  # delta cap reflected_delta
    core: tuple[Root, ...]  # the non-A_1 component of the overlap

    @property
    def all_roots(self) -> tuple[Root, ...]:
        return self.minus + self.zero + self.plus


@lru_cache(maxsize=None)
def sigma_split(wm: WeightModule, lam1: Weight) -> ShiftRootSplit:
    """Decompose the roots that shift lam1 inside the module."""
    case = wm.case
    if wm.component_of(lam1) != 1:
        raise DomainError("weight must lie in the first non-trivial component")

    sigma = [alpha for alpha in case.phi if wm.shift(lam1, tuple(-c for c in alpha)) is not None]
    delta_set = set(case.delta)
    plus_set = set(case.omega_plus)
    minus = tuple(a for a in sigma if a in set(case.omega_minus))
    zero = tuple(a for a in sigma if a in delta_set)
    plus = tuple(a for a in sigma if a in plus_set)
    if len(minus) + len(zero) + len(plus) != len(sigma):
        raise InternalConsistencyError("shift roots escape the orbit decomposition")

    connecting = wm.root_between(wm.lam0, lam1)
    if connecting is None:
        raise InternalConsistencyError("top weight is not adjacent to the component")
    reflected = tuple(sorted((case.reflect(d, connecting) for d in case.delta), key=lambda r: (height(r), r)))
    overlap = [r for r in reflected if r in delta_set]

    def pair(a, b):
        return case.pairing(a, b)

    from .roots import _irreducible_components

    comps = _irreducible_components(pair, overlap)
    non_a1 = [c for c in comps if len(c) > 2]
    if len(non_a1) != 1:
        raise InternalConsistencyError("expected a unique non-A_1 component in the overlap")

    return ShiftRootSplit(
        lam1=lam1,
        minus=minus,
        zero=zero,
        plus=plus,
        reflected_delta=reflected,
        overlap=tuple(overlap),
        core=tuple(non_a1[0]),
    )


def default_module(tag: str, l: int | None = None) -> WeightModule:
    return build_weights(build_case(tag, l))
