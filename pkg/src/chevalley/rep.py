"""Exact matrices for the group action on the basic minuscule module.

A root element acts on the weight basis as

    x_alpha(xi) v^lam = v^lam + c * xi * v^(lam+alpha)      (lam+alpha a weight)

with structure constants c in {+1, -1}.  A crystal basis is chosen: c = +1 for
every simple root and its negative.  The pattern of a non-simple root is the
conjugate of a simple pattern by a monomial Weyl matrix, one simple reflection
at a time; this pins one concrete sign table whose correctness is checked by
the relation suite rather than against any published table.

Group elements carry their exact inverse alongside the matrix; elements built
from generator words get the inverse by replaying the reversed word, and
matrix-only inputs fall back to per-factor elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, InternalConsistencyError, NonUnitError
from .matrices import RMat, RVec, mat_col, mat_row
from .rings import Ideal, RingElem, RingSpec
from .rng import SplitMix64
from .roots import Root, height
from .weights import Weight, WeightModule, build_weights

Atom = tuple[str, Root, RingElem]  # kinds: "x", "w", "h"


@dataclass(frozen=True)
class RepTables:
    """Ring-independent action data: root patterns and the sign table."""

    wm: WeightModule
    patterns: dict  # root -> (srcs, dsts, signs) int arrays
    signs: dict  # (weight index, root) -> +-1
    weyl_perm: dict  # simple root index -> (perm, signs) of w_i(1)

    def __hash__(self):
        return hash(self.wm)

    def __eq__(self, other):
        return isinstance(other, RepTables) and self.wm == other.wm


def _pattern_arrays(pat: dict) -> tuple:
    srcs = np.array(sorted(pat.keys()), dtype=np.intp)
    dsts = np.array([pat[s][0] for s in srcs], dtype=np.intp)
    signs = np.array([pat[s][1] for s in srcs], dtype=np.int64)
    return srcs, dsts, signs


def _apply_pat_rows(mat: np.ndarray, pat: dict, value: int) -> None:
    for src, (dst, c) in pat.items():
        mat[dst, :] += c * value * mat[src, :]


@lru_cache(maxsize=None)
def rep_tables(wm: WeightModule) -> RepTables:
    case = wm.case
    n = wm.dim
    idx = wm.index

    pat: dict = {}
    for i, alpha in enumerate(case.simple_roots):
        for root in (alpha, tuple(-x for x in alpha)):
            entries = {}
            for lam in wm.weights:
                mu = wm.shift(lam, root)
                if mu is not None:
                    entries[idx[lam]] = (idx[mu], 1)
            pat[root] = entries

    # monomial matrices of the simple w_i(1) = x_i(1) x_{-i}(-1) x_i(1)
    weyl_perm = {}
    for i, alpha in enumerate(case.simple_roots):
        neg = tuple(-x for x in alpha)
        mat = np.eye(n, dtype=np.int64)
        for root, v in ((alpha, 1), (neg, -1), (alpha, 1)):
            _apply_pat_rows(mat, pat[root], v)
        perm = np.full(n, -1, dtype=np.intp)
        sgn = np.zeros(n, dtype=np.int64)
        for j in range(n):
            nz = np.nonzero(mat[:, j])[0]
            if len(nz) != 1 or mat[nz[0], j] not in (1, -1):
                raise InternalConsistencyError("simple Weyl element is not monomial")
            perm[j] = nz[0]
            sgn[j] = mat[nz[0], j]
        weyl_perm[i] = (perm, sgn)

    def conj(entries: dict, wp) -> dict:
        perm, sgn = wp
        return {
            int(perm[src]): (int(perm[dst]), int(sgn[src] * sgn[dst] * c))
            for src, (dst, c) in entries.items()
        }

    positives = [r for r in case.phi if height(r) > 0]
    positives.sort(key=height)
    for alpha in positives:
        if alpha in pat:
            continue
        chosen = None
        for i, simple in enumerate(case.simple_roots):
            if case.pairing(alpha, simple) == 1:
                beta = tuple(a - s for a, s in zip(alpha, simple))
                if beta in pat:
                    chosen = (i, beta)
                    break
        if chosen is None:
            raise InternalConsistencyError(f"no descent for root {alpha}")
        i, beta = chosen
        neg_alpha = tuple(-x for x in alpha)
        neg_beta = tuple(-x for x in beta)
        pat[alpha] = conj(pat[beta], weyl_perm[i])
        pat[neg_alpha] = conj(pat[neg_beta], weyl_perm[i])

    signs = {}
    for root, entries in pat.items():
        expected = {idx[lam] for lam in wm.weights if wm.shift(lam, root) is not None}
        if set(entries.keys()) != expected:
            raise InternalConsistencyError(f"pattern support mismatch for {root}")
        for src, (dst, c) in entries.items():
            if c not in (1, -1):
                raise InternalConsistencyError(f"structure constant {c} for {root}")
            if wm.idx(wm.shift(wm.weights[src], root)) != dst:
                raise InternalConsistencyError(f"pattern target mismatch for {root}")
            signs[(src, root)] = c

    arrays = {root: _pattern_arrays(entries) for root, entries in pat.items()}
    return RepTables(wm=wm, patterns=arrays, signs=signs, weyl_perm=weyl_perm)


class GroupElement:
    """A module automorphism together with its exact inverse."""

    __slots__ = ("rep", "mat", "inv_mat", "word")

    def __init__(self, rep: "Representation", mat: RMat, inv_mat: RMat, word=None):
        self.rep = rep
        self.mat = mat
        self.inv_mat = inv_mat
        self.word = word

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return GroupElement(self.rep, self.mat * other.mat, other.inv_mat * self.inv_mat, word)

    def inverse(self) -> "GroupElement":
        word = None
        if self.word is not None:
            word = tuple(invert_atom(a) for a in reversed(self.word))
        return GroupElement(self.rep, self.inv_mat, self.mat, word)

    def conjugate(self, by: "GroupElement") -> "GroupElement":
        """by * self * by^-1."""
        return by * self * by.inverse()

    def commutator(self, other: "GroupElement") -> "GroupElement":
        """self * other * self^-1 * other^-1."""
        return self * other * self.inverse() * other.inverse()

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and self.mat == other.mat

    def is_identity(self) -> bool:
        return self.mat.is_identity()

    def entry(self, lam: Weight, mu: Weight) -> RingElem:
        return self.mat.entry(self.rep.wm.idx(lam), self.rep.wm.idx(mu))

    def inv_entry(self, lam: Weight, mu: Weight) -> RingElem:
        return self.inv_mat.entry(self.rep.wm.idx(lam), self.rep.wm.idx(mu))

    def column(self, mu: Weight) -> RVec:
        return mat_col(self.mat, self.rep.wm.idx(mu))

    def row(self, lam: Weight) -> RVec:
        return mat_row(self.mat, self.rep.wm.idx(lam))

    def check(self) -> None:
        if not (self.mat * self.inv_mat).is_identity():
            raise InternalConsistencyError("stored inverse does not invert the matrix")


def invert_atom(atom: Atom) -> Atom:
    kind, root, value = atom
    if kind == "x":
        return ("x", root, -value)
    if kind == "w":
        return ("w", root, -value)
    if kind == "h":
        return ("h", root, value.inv())
    raise DomainError(f"unknown atom kind {kind!r}")


class Representation:
    """The matrix group over a fixed ring, with its generator constructors."""

    def __init__(self, wm: WeightModule, ring: RingSpec):
        self.wm = wm
        self.case = wm.case
        self.ring = ring
        self.tables = rep_tables(wm)
        self.n = wm.dim

    # -- scalars ---------------------------------------------------------------

    def scalar(self, x) -> RingElem:
        if isinstance(x, RingElem):
            if x.spec != self.ring:
                raise DomainError("scalar over a different ring")
            return x
        return self.ring.el(int(x))

    def sign(self, lam: Weight, alpha: Root) -> int:
        return self.tables.signs[(self.wm.idx(lam), alpha)]

    def pattern(self, alpha: Root):
        return self.tables.patterns[alpha]

    # -- element constructors ----------------------------------------------------

    def identity(self) -> GroupElement:
        ident = RMat.identity(self.ring, self.n)
        return GroupElement(self, ident, ident.copy(), word=())

    def expand_atoms(self, atoms) -> list[tuple[Root, RingElem]]:
        out = []
        for kind, root, value in atoms:
            value = self.scalar(value)
            if kind == "x":
                out.append((root, value))
            elif kind == "w":
                if not value.is_unit():
                    raise NonUnitError("Weyl element needs a unit parameter")
                neg = tuple(-x for x in root)
                out += [(root, value), (neg, -value.inv()), (root, value)]
            elif kind == "h":
                if not value.is_unit():
                    raise NonUnitError("torus element needs a unit parameter")
                out += self.expand_atoms([("w", root, value), ("w", root, -self.ring.one)])
            else:
                raise DomainError(f"unknown atom kind {kind!r}")
        return out

    def element_from_word(self, atoms) -> GroupElement:
        atoms = tuple(
            (kind, root, self.scalar(value)) for kind, root, value in atoms
        )
        xs = self.expand_atoms(atoms)
        mat = RMat.identity(self.ring, self.n)
        for root, value in xs:
            mat.apply_x_right(self.pattern(root), value)
        inv = RMat.identity(self.ring, self.n)
        for root, value in reversed(xs):
            inv.apply_x_right(self.pattern(root), -value)
        return GroupElement(self, mat, inv, word=atoms)

    def x(self, alpha: Root, xi) -> GroupElement:
        return self.element_from_word((("x", alpha, self.scalar(xi)),))

    def w(self, alpha: Root, eps) -> GroupElement:
        return self.element_from_word((("w", alpha, self.scalar(eps)),))

    def h(self, alpha: Root, eps) -> GroupElement:
        return self.element_from_word((("h", alpha, self.scalar(eps)),))

    def z(self, alpha: Root, xi, zeta) -> GroupElement:
        """x_alpha(zeta) x_(-alpha)(xi) x_alpha(-zeta)."""
        xi, zeta = self.scalar(xi), self.scalar(zeta)
        neg = tuple(-x for x in alpha)
        return self.element_from_word(
            (("x", alpha, zeta), ("x", neg, xi), ("x", alpha, -zeta))
        )

    def from_matrix(self, mat: RMat) -> GroupElement:
        if mat.n != self.n or mat.spec != self.ring:
            raise DomainError("matrix does not match the representation")
        return GroupElement(self, mat.copy(), mat.inv(), word=None)

    # -- vectors --------------------------------------------------------------------

    def basis_vector(self, lam: Weight) -> RVec:
        return RVec.basis(self.ring, self.n, self.wm.idx(lam))

    def act(self, g: GroupElement, v: RVec) -> RVec:
        return g.mat.mul_vec(v)

    def act_covector(self, w: RVec, g: GroupElement) -> RVec:
        return g.mat.transpose().mul_vec(w)

    def word_on_vector(self, atoms, v: RVec) -> RVec:
        """Product of the atoms applied to a vector, cheaper than a full matrix."""
        out = v.copy()
        for root, value in reversed(self.expand_atoms(atoms)):
            out.apply_x(self.pattern(root), value)
        return out

    # -- reduction --------------------------------------------------------------------

    def reduce(self, g: GroupElement, ideal: Ideal) -> GroupElement:
        """Image under the reduction homomorphism modulo the ideal."""
        if ideal.spec != self.ring:
            raise DomainError("ideal over a different ring")
        qrep = get_representation(self.wm, ideal.quotient_spec())
        word = None
        if g.word is not None:
            word = tuple((k, r, ideal.reduce_elem(v)) for k, r, v in g.word)
        return GroupElement(qrep, g.mat.reduce(ideal), g.inv_mat.reduce(ideal), word)


@lru_cache(maxsize=None)
def get_representation(wm: WeightModule, ring: RingSpec) -> Representation:
    return Representation(wm, ring)


def representation(tag: str, l: int | None, ring: RingSpec) -> Representation:
    from .roots import build_case

    return get_representation(build_weights(build_case(tag, l)), ring)


def sample_word(rep: Representation, atoms: list[Atom], length: int, seed: int) -> GroupElement:
    """Product of ``length`` atoms drawn deterministically from the pool."""
    rng = SplitMix64(seed)
    if length == 0 or not atoms:
        return rep.identity()
    picked = tuple(rng.choice(atoms) for _ in range(length))
    return rep.element_from_word(picked)


def sample_word_rng(rep: Representation, atoms: list[Atom], length: int, rng: SplitMix64) -> GroupElement:
    if length == 0 or not atoms:
        return rep.identity()
    picked = tuple(rng.choice(atoms) for _ in range(length))
    return rep.element_from_word(picked)


def delta_atoms(rep: Representation, values=None) -> list[Atom]:
    """x-atoms over the subsystem roots; all nonzero values for a finite ring
    unless an explicit value pool is given."""
    if values is None:
        values = [v for v in rep.ring.elements() if not v.is_zero()]
    return [("x", alpha, v) for alpha in rep.case.delta for v in values]


def torus_atoms(rep: Representation) -> list[Atom]:
    units = [u for u in rep.ring.units()]
    return [("h", alpha, u) for alpha in rep.case.simple_roots for u in units]


@lru_cache(maxsize=None)
def _cross_component_mask(wm: WeightModule):
    n = wm.dim
    comp = np.array([wm.component_of(w) for w in wm.weights])
    return comp[:, None] != comp[None, :]


def is_component_blocked(g: GroupElement) -> bool:
    """True when the matrix never maps across diagram components."""
    mask = _cross_component_mask(g.rep.wm)
    for f, blk in zip(g.mat.spec.factors, g.mat.blocks):
        if f.kind == "poly":
            if np.any(blk[:, mask]):
                return False
        elif f.kind == "int":
            if any(v != 0 for v in blk[mask]):
                return False
        elif np.any(blk[mask]):
            return False
    return True
