"""Root systems D_l, E_6, E_7 and the three fixed subsystem embeddings.

Roots are integer coefficient vectors over the simple roots, numbered in the
Bourbaki convention.  Each embedding case crosses out one vertex of the Dynkin
diagram; the crossed vertex carries coefficient one in the maximal root and its
neighbour carries coefficient two.  The three cases are

* ``a``: D_l with A_{l-1} inside (cross alpha_l, neighbour alpha_{l-2}), l >= 5,
* ``b``: E_6 with D_5 inside (cross alpha_1, neighbour alpha_3),
* ``c``: E_7 with E_6 inside (cross alpha_7, neighbour alpha_6).

All systems here are simply laced, so the Cartan pairing is symmetric and the
sum of two roots is again a root exactly when their pairing is -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InternalConsistencyError

Root = tuple[int, ...]

MAX_RANK_A = 10  # dense matrices grow as 2^(l-1) in case a


def _adjacency(tag: str, l: int) -> list[tuple[int, int]]:
    """Dynkin diagram edges as 0-based vertex pairs, Bourbaki numbering."""
    if tag == "a":  # D_l: chain 1..l-1 with l attached to l-2
        edges = [(i, i + 1) for i in range(l - 2)]
        edges.append((l - 3, l - 1))
        return edges
    if tag == "b":  # E_6: chain 1-3-4-5-6 with 2 attached to 4
        return [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
    if tag == "c":  # E_7: chain 1-3-4-5-6-7 with 2 attached to 4
        return [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)]
    raise DomainError(f"unknown case tag {tag!r}")


def _cartan(tag: str, l: int) -> tuple[tuple[int, ...], ...]:
    mat = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
    for i, j in _adjacency(tag, l):
        mat[i][j] = -1
        mat[j][i] = -1
    return tuple(tuple(row) for row in mat)


def height(alpha: Root) -> int:
    return sum(alpha)


@dataclass(frozen=True)
class EmbeddingCase:
    """A root system with its crossed vertex and orbit decomposition."""

    tag: str
    l: int
    cartan: tuple[tuple[int, ...], ...]
    alpha1_index: int  # crossed vertex
    alpha2_index: int  # its neighbour
    phi: tuple[Root, ...]
    delta: tuple[Root, ...]
    delta_prime: tuple[Root, ...]
    delta_dprime: tuple[Root, ...]
    omega_plus: tuple[Root, ...]
    omega_minus: tuple[Root, ...]
    max_root: Root

    # -- pairing and root arithmetic ----------------------------------------

    def pairing(self, alpha: Root, beta: Root) -> int:
        """Cartan pairing; symmetric since all roots have the same length."""
        a = self.cartan
        return sum(x * sum(a[i][j] * y for j, y in enumerate(beta)) for i, x in enumerate(alpha))

    def is_root(self, v: Root) -> bool:
        return v in self._phi_set

    def root_add(self, alpha: Root, beta: Root) -> Root | None:
        s = tuple(x + y for x, y in zip(alpha, beta))
        return s if s in self._phi_set else None

    def reflect(self, alpha: Root, beta: Root) -> Root:
        """Image of alpha under the reflection with respect to beta."""
        n = self.pairing(alpha, beta)
        return tuple(x - n * y for x, y in zip(alpha, beta))

    @property
    def _phi_set(self) -> frozenset:
        return _phi_set_of(self)

    @property
    def alpha1(self) -> Root:
        return tuple(1 if i == self.alpha1_index else 0 for i in range(self.l))

    @property
    def alpha2(self) -> Root:
        return tuple(1 if i == self.alpha2_index else 0 for i in range(self.l))

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(tuple(1 if i == j else 0 for j in range(self.l)) for i in range(self.l))

    @property
    def kind(self) -> str:
        """``first`` or ``second`` according to the symmetry of the module."""
        if self.tag == "a":
            return "second" if self.l % 2 == 0 else "first"
        return "first" if self.tag == "b" else "second"

    def root_fund_coords(self, alpha: Root) -> tuple[int, ...]:
        """Coordinates of a root in the fundamental-weight basis."""
        a = self.cartan
        return tuple(sum(a[i][j] * alpha[j] for j in range(self.l)) for i in range(self.l))

    def cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return _cartan_inverse_of(self)

    def root_coords_of_fund(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        """Simple-root coordinates of a root-lattice vector given in the
        fundamental-weight basis; raises if the result is not integral."""
        inv = self.cartan_inverse()
        out = []
        for i in range(self.l):
            v = sum(inv[i][j] * coords[j] for j in range(self.l))
            if v.denominator != 1:
                raise InternalConsistencyError("vector is not in the root lattice")
            out.append(int(v))
        return tuple(out)

    def describe(self) -> str:
        names = {"a": f"D_{self.l}", "b": "E_6", "c": "E_7"}
        sub = {"a": f"A_{self.l - 1}", "b": "D_5", "c": "E_6"}
        return f"case {self.tag}: {names[self.tag]} over {sub[self.tag]}"


@lru_cache(maxsize=None)
def _phi_set_of(case: EmbeddingCase) -> frozenset:
    return frozenset(case.phi)


@lru_cache(maxsize=None)
def _cartan_inverse_of(case: EmbeddingCase) -> tuple[tuple[Fraction, ...], ...]:
    l = case.l
    aug = [[Fraction(case.cartan[i][j]) for j in range(l)] + [Fraction(int(i == k)) for k in range(l)] for i in range(l)]
    for col in range(l):
        piv = next(r for r in range(col, l) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(l):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return tuple(tuple(row[l:]) for row in aug)


def _enumerate_roots(cartan) -> list[Root]:
    """Positive roots by closure under adding simple roots, then negatives."""
    l = len(cartan)
    simple = [tuple(1 if i == j else 0 for j in range(l)) for i in range(l)]

    def pair(alpha, beta):
        return sum(x * sum(cartan[i][j] * y for j, y in enumerate(beta)) for i, x in enumerate(alpha))

    positive = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for gamma in frontier:
            for i, alpha in enumerate(simple):
                if pair(gamma, alpha) == -1:
                    s = tuple(x + y for x, y in zip(gamma, alpha))
                    if s not in positive:
                        positive.add(s)
                        nxt.append(s)
        frontier = nxt
    roots = list(positive) + [tuple(-x for x in r) for r in positive]
    roots.sort(key=lambda r: (height(r), r))
    return roots


def _irreducible_components(case_pairing, roots: list[Root]) -> list[list[Root]]:
    """Split a closed subsystem into irreducible components (non-orthogonality
    classes)."""
    remaining = set(roots)
    comps = []
    while remaining:
        seed = next(iter(remaining))
        comp = {seed, tuple(-x for x in seed)}
        frontier = list(comp)
        while frontier:
            nxt = []
            for alpha in frontier:
                for beta in list(remaining):
                    if beta not in comp and case_pairing(alpha, beta) != 0:
                        comp.add(beta)
                        nxt.append(beta)
            frontier = nxt
        comps.append(sorted(comp, key=lambda r: (height(r), r)))
        remaining -= comp
    return comps


@lru_cache(maxsize=None)
def build_case(tag: str, l: int | None = None) -> EmbeddingCase:
    """Construct one of the three embedding cases.

    Case ``a`` needs an explicit rank (5 <= l <= 10); cases ``b`` and ``c``
    have fixed ranks 6 and 7.
    """
    if tag == "a":
        if l is None or not 5 <= l <= MAX_RANK_A:
            raise DomainError(f"case a needs 5 <= l <= {MAX_RANK_A}, got {l}")
        crossed, neighbour = l - 1, l - 3
    elif tag == "b":
        if l not in (None, 6):
            raise DomainError("case b has rank 6")
        l, crossed, neighbour = 6, 0, 2
    elif tag == "c":
        if l not in (None, 7):
            raise DomainError("case c has rank 7")
        l, crossed, neighbour = 7, 6, 5
    else:
        raise DomainError(f"unknown case tag {tag!r}")

    cartan = _cartan(tag, l)
    phi = _enumerate_roots(cartan)

    delta = tuple(r for r in phi if r[crossed] == 0)
    omega_plus = tuple(r for r in phi if r[crossed] == 1)
    omega_minus = tuple(r for r in phi if r[crossed] == -1)
    if len(delta) + len(omega_plus) + len(omega_minus) != len(phi):
        raise InternalConsistencyError("crossed vertex has coefficient beyond 1 in some root")

    delta_prime = tuple(r for r in delta if r[neighbour] == 0)

    def pair(alpha, beta):
        return sum(x * sum(cartan[i][j] * y for j, y in enumerate(beta)) for i, x in enumerate(alpha))

    comps = _irreducible_components(pair, list(delta_prime))
    if tag == "a":
        non_a1 = [c for c in comps if len(c) > 2]
        if len(non_a1) != 1:
            raise InternalConsistencyError("expected a unique component distinct from A_1")
        dprime = tuple(non_a1[0])
    else:
        if len(comps) != 1:
            raise InternalConsistencyError("expected an irreducible subsystem")
        dprime = delta_prime

    max_root = phi[-1]
    if max_root[crossed] != 1 or max_root[neighbour] != 2:
        raise InternalConsistencyError("maximal root coefficients do not match the embedding")

    return EmbeddingCase(
        tag=tag,
        l=l,
        cartan=cartan,
        alpha1_index=crossed,
        alpha2_index=neighbour,
        phi=tuple(phi),
        delta=delta,
        delta_prime=delta_prime,
        delta_dprime=dprime,
        omega_plus=omega_plus,
        omega_minus=omega_minus,
        max_root=max_root,
    )


def weyl_orbit(case: EmbeddingCase, seed: Root, generators) -> frozenset:
    """Closure of a root under reflections in the given roots."""
    gens = list(generators)
    orbit = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = case.reflect(v, g)
                if w not in orbit:
                    orbit.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(orbit)


def orbit_decomposition(case: EmbeddingCase, seeds, generators) -> list[frozenset]:
    """Distinct reflection orbits of the seed set."""
    seen = set()
    orbits = []
    for s in seeds:
        if s not in seen:
            orb = weyl_orbit(case, s, generators)
            orbits.append(orb)
            seen |= orb
    return orbits


def partner_root(case: EmbeddingCase, beta: Root) -> Root:
    """First root of the subsystem (canonical order) whose sum with beta is a root."""
    if beta in case._phi_set and beta not in set(case.delta):
        for alpha in case.delta:
            if case.root_add(alpha, beta) is not None:
                return alpha
        raise InternalConsistencyError(f"no subsystem partner for {beta}")
    raise DomainError("partner_root needs a root outside the subsystem")
