"""Levels, parabolic membership, normalizer conditions, and the extraction of
root elements from overgroup samples.

Membership in an overgroup is never decided abstractly.  The module works with
two decidable surrogates: replayable generator words (membership by
construction) and necessary matrix conditions on rows and columns through the
top weight.  Extraction procedures run on actual matrices, re-reading root
coordinates after every commutator; every produced witness carries a trace
that replays to the claimed root element exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    BudgetExhausted,
    DomainError,
    InternalConsistencyError,
)
from .rep import Atom, GroupElement, Representation, sample_word_rng
from .rings import Ideal, RingElem, RingSpec
from .rng import SplitMix64
from .roots import Root, height
from .weights import Weight, sigma_split

# -- level pairs -----------------------------------------------------------------


@dataclass(frozen=True)
class SigmaPair:
    """A pair of ideals recording which root elements of the two orbits an
    overgroup is allowed to contain."""

    plus: Ideal
    minus: Ideal

    def __post_init__(self):
        if self.plus.spec != self.minus.spec:
            raise DomainError("level ideals over different rings")

    @property
    def spec(self) -> RingSpec:
        return self.plus.spec

    @staticmethod
    def zero(spec: RingSpec) -> "SigmaPair":
        return SigmaPair(Ideal.zero(spec), Ideal.zero(spec))

    @staticmethod
    def full(spec: RingSpec) -> "SigmaPair":
        return SigmaPair(Ideal.unit(spec), Ideal.unit(spec))

    def reduce(self, by: Ideal) -> "SigmaPair":
        return SigmaPair(by.reduce_ideal(self.plus), by.reduce_ideal(self.minus))

    def __le__(self, other: "SigmaPair") -> bool:
        return self.plus <= other.plus and self.minus <= other.minus

    def describe(self) -> str:
        return f"{self.plus.describe()},{self.minus.describe()}"

    def to_json(self):
        return {"plus": self.plus.to_json(), "minus": self.minus.to_json()}


def sigma_generator_atoms(rep: Representation, sigma: SigmaPair) -> list[Atom]:
    """The generating family: subsystem roots over the full ring, orbit roots
    over the respective ideal.  Zero parameters are dropped."""
    if not rep.ring.is_finite:
        raise DomainError("generator enumeration needs a finite ring")
    atoms: list[Atom] = []
    nonzero = [v for v in rep.ring.elements() if not v.is_zero()]
    for alpha in rep.case.delta:
        atoms += [("x", alpha, v) for v in nonzero]
    for alpha in rep.case.omega_plus:
        atoms += [("x", alpha, v) for v in sigma.plus.elements() if not v.is_zero()]
    for alpha in rep.case.omega_minus:
        atoms += [("x", alpha, v) for v in sigma.minus.elements() if not v.is_zero()]
    return atoms


# -- matrix membership predicates ----------------------------------------------------


def _entries_zero(mat, rows, cols) -> bool:
    for f, blk in zip(mat.spec.factors, mat.blocks):
        if f.kind == "poly":
            if np.any(blk[:, rows, cols]):
                return False
        elif f.kind == "int":
            if any(v != 0 for v in blk[rows, cols]):
                return False
        elif np.any(blk[rows, cols]):
            return False
    return True


@lru_cache(maxsize=None)
def _off_indices(wm, lam: Weight):
    j = wm.idx(lam)
    others = np.array([i for i in range(wm.dim) if i != j], dtype=np.intp)
    return others, np.full(len(others), j, dtype=np.intp)


def in_parabolic(g: GroupElement, lam: Weight | None = None) -> bool:
    """Column through the given weight is a multiple of the identity column."""
    wm = g.rep.wm
    lam = wm.lam0 if lam is None else lam
    rows, cols = _off_indices(wm, lam)
    return _entries_zero(g.mat, rows, cols)


def in_opposite_parabolic(g: GroupElement, lam: Weight | None = None) -> bool:
    wm = g.rep.wm
    lam = wm.lam0 if lam is None else lam
    rows, cols = _off_indices(wm, lam)
    return _entries_zero(g.mat, cols, rows)


@dataclass(frozen=True)
class ParabolicProfile:
    in_p: bool
    in_p_minus: bool
    in_levi: bool


def parabolic_profile(g: GroupElement, lam: Weight | None = None) -> ParabolicProfile:
    p = in_parabolic(g, lam)
    pm = in_opposite_parabolic(g, lam)
    return ParabolicProfile(in_p=p, in_p_minus=pm, in_levi=p and pm)


def _values_in_ideal(mat, rows, cols, ideal: Ideal) -> bool:
    """Vectorized membership of the selected entries in the ideal."""
    for f, j, blk in zip(mat.spec.factors, ideal.parts, mat.blocks):
        if f.kind == "poly":
            if j > 0 and np.any(blk[:j][:, rows, cols]):
                return False
        elif f.kind == "int":
            vals = blk[rows, cols]
            if j == 0:
                if any(v != 0 for v in vals):
                    return False
            elif any(v % j != 0 for v in vals):
                return False
        else:
            if f.k == 0:
                continue
            vals = blk[rows, cols]
            if np.any(vals % (f.p**j)):
                return False
    return True


def in_G_sigma(g: GroupElement, sigma: SigmaPair) -> bool:
    """Necessary matrix condition for the level-sigma congruence group: the top
    column reduces into the parabolic mod the minus ideal and the top row into
    the opposite one mod the plus ideal."""
    wm = g.rep.wm
    top = wm.idx(wm.lam0)
    others = np.array([i for i in range(wm.dim) if i != top], dtype=np.intp)
    if not _values_in_ideal(g.mat, others, np.full(len(others), top, dtype=np.intp), sigma.minus):
        return False
    return _values_in_ideal(g.mat, np.full(len(others), top, dtype=np.intp), others, sigma.plus)


def _elem_ideal_inside(x: RingElem, i: Ideal, j: Ideal) -> bool:
    return Ideal.from_elems(x.spec, [x]) * i <= j


def in_normalizer(g: GroupElement, sigma: SigmaPair) -> bool:
    """Matrix conditions cutting out the normalizer of the level-sigma
    elementary group: the congruence conditions for first-type cases, relaxed
    at the opposite corner for second-type ones."""
    wm = g.rep.wm
    if wm.kind == "first":
        return in_G_sigma(g, sigma)
    lam0 = wm.lam0
    bottom = wm.minus(lam0)
    for lam in wm.weights:
        if lam in (lam0, bottom):
            continue
        if g.entry(lam0, lam) not in sigma.plus:
            return False
        if g.inv_entry(lam, lam0) not in sigma.minus:
            return False
    if not _elem_ideal_inside(g.entry(lam0, bottom), sigma.minus, sigma.plus):
        return False
    if not _elem_ideal_inside(g.inv_entry(bottom, lam0), sigma.plus, sigma.minus):
        return False
    return True


# -- root-type matrix identities --------------------------------------------------------


@lru_cache(maxsize=None)
def _distance_mask(wm):
    """Boolean matrix marking weight pairs at graph distance two or more."""
    n = wm.dim
    mask = np.zeros((n, n), dtype=bool)
    for lam in wm.weights:
        for mu in wm.weights:
            if wm.distance(lam, mu) >= 2:
                mask[wm.idx(lam), wm.idx(mu)] = True
    return mask


def _far_entries_vanish(mat, wm) -> bool:
    mask = _distance_mask(wm)
    for f, blk in zip(mat.spec.factors, mat.blocks):
        if f.kind == "poly":
            if np.any(blk[:, mask]):
                return False
        elif f.kind == "int":
            if any(v != 0 for v in blk[mask]):
                return False
        elif np.any(blk[mask]):
            return False
    return True


def root_type_failures(g: GroupElement) -> list[str]:
    """Violated matrix identities of conjugates of root elements."""
    rep = g.rep
    wm = rep.wm
    failures = []
    ident = RMatIdentityCache.get(rep)
    nil = g.mat - ident
    sq = nil * nil
    if not sq == (nil - nil):
        failures.append("square of (g - e) is nonzero")
    if not _far_entries_vanish(g.mat, wm):
        failures.append("entry at weight distance >= 2 survives")
        return failures
    # entries over equal root differences agree up to one entrywise sign
    for alpha in rep.case.phi:
        srcs, dsts, _ = rep.pattern(alpha)
        plus_ok = None
        minus_ok = None
        for f, blk in zip(g.mat.spec.factors, g.mat.blocks):
            if f.kind == "poly":
                vals = blk[:, dsts, srcs]
                ref = vals[:, :1]
                p_ok = np.all(vals == ref, axis=0)
                m_ok = np.all(vals == (-ref) % f.p, axis=0)
            elif f.kind == "int":
                vals = blk[dsts, srcs]
                ref = vals[0]
                p_ok = np.array([v == ref for v in vals], dtype=bool)
                m_ok = np.array([v == -ref for v in vals], dtype=bool)
            else:
                m = max(f.modulus, 1)
                vals = blk[dsts, srcs]
                ref = vals[0]
                p_ok = vals == ref
                m_ok = vals == (-ref) % m
            plus_ok = p_ok if plus_ok is None else (plus_ok & p_ok)
            minus_ok = m_ok if minus_ok is None else (minus_ok & m_ok)
        if not np.all(plus_ok | minus_ok):
            failures.append(f"sign-incoherent entries over root {alpha}")
            return failures
    return failures


def is_root_type(g: GroupElement) -> bool:
    return not root_type_failures(g)


# -- parabolic splits -------------------------------------------------------------------


class RMatIdentityCache:
    _store: dict = {}

    @classmethod
    def get(cls, rep: Representation):
        key = (rep.wm, rep.ring)
        if key not in cls._store:
            cls._store[key] = rep.identity().mat
        return cls._store[key]


@lru_cache(maxsize=None)
def _component_blocks(wm) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(wm.idx(w) for w in comp) for comp in wm.components)


@lru_cache(maxsize=None)
def _radical_frozen_mask(wm):
    """Positions where a radical part must agree with the identity: everything
    except the strictly upper component blocks."""
    comp = np.array([wm.component_of(w) for w in wm.weights])
    return comp[:, None] >= comp[None, :]


def _matches_on_mask(mat, reference, mask) -> bool:
    for f, blk, ref in zip(mat.spec.factors, mat.blocks, reference.blocks):
        if f.kind == "poly":
            if np.any(blk[:, mask] != ref[:, mask]):
                return False
        elif f.kind == "int":
            if any(a != b for a, b in zip(blk[mask], ref[mask])):
                return False
        elif np.any(blk[mask] != ref[mask]):
            return False
    return True


def _block_diagonal_part(g: GroupElement) -> GroupElement:
    wm = g.rep.wm
    out = g.mat - g.mat  # zero matrix over the right spec
    for block in _component_blocks(wm):
        for i in block:
            for j in block:
                out.set_entry(i, j, g.mat.entry(i, j))
    mat = out
    inv = mat.inv()
    return GroupElement(g.rep, mat, inv, word=None)


def _weyl_word_to_top(rep: Representation, lam: Weight) -> GroupElement:
    """Monomial element carrying the lam-line to the top-weight line."""
    word = rep.wm.simple_word_to_top(lam)
    atoms = tuple(("w", rep.case.simple_roots[i], rep.ring.one) for i in word)
    return rep.element_from_word(atoms)


def levi_unipotent_split(g: GroupElement, lam: Weight | None = None) -> tuple[GroupElement, GroupElement]:
    """Factor a parabolic member as (unipotent radical part, Levi part).

    At the top weight the Levi part is the block-diagonal restriction; at any
    other weight the situation is carried to the top by a monomial element and
    back.
    """
    rep = g.rep
    wm = rep.wm
    lam = wm.lam0 if lam is None else lam
    if not in_parabolic(g, lam):
        raise DomainError("element is not in the parabolic at the given weight")
    if lam == wm.lam0:
        try:
            levi = _block_diagonal_part(g)
        except Exception as exc:
            raise DomainError(f"diagonal block is not invertible: {exc}") from exc
        u = g * levi.inverse()
        # the radical part only maps toward lower component indices, with
        # identity diagonal blocks
        if not _matches_on_mask(u.mat, RMatIdentityCache.get(rep), _radical_frozen_mask(wm)):
            raise DomainError("parabolic split is not unitriangular across components")
        if not (u * levi) == g:
            raise InternalConsistencyError("parabolic split does not multiply back")
        return u, levi
    w = _weyl_word_to_top(rep, lam)
    gt = g.conjugate(w)
    ut, lt = levi_unipotent_split(gt, None)
    winv = w.inverse()
    return ut.conjugate(winv), lt.conjugate(winv)


def opposite_levi_split(g: GroupElement, lam: Weight | None = None) -> tuple[GroupElement, GroupElement]:
    """Factor a member of the opposite parabolic as (opposite unipotent part,
    Levi part)."""
    rep = g.rep
    wm = rep.wm
    lam = wm.lam0 if lam is None else lam
    if not in_opposite_parabolic(g, lam):
        raise DomainError("element is not in the opposite parabolic at the given weight")
    if lam == wm.lam0:
        levi = _block_diagonal_part(g)
        v = g * levi.inverse()
        if not (v * levi) == g:
            raise InternalConsistencyError("opposite split does not multiply back")
        return v, levi
    w = _weyl_word_to_top(rep, lam)
    gt = g.conjugate(w)
    vt, lt = opposite_levi_split(gt, None)
    winv = w.inverse()
    return vt.conjugate(winv), lt.conjugate(winv)


def coords_row(h: GroupElement, lam: Weight, roots) -> dict:
    """Root coordinates of an abelian unipotent element read from the lam row."""
    rep = h.rep
    wm = rep.wm
    out = {}
    for beta in roots:
        mu = wm.shift(lam, tuple(-x for x in beta))
        if mu is None:
            raise DomainError(f"root {beta} does not shift the weight")
        c = rep.sign(mu, beta)
        val = h.entry(lam, mu)
        if c < 0:
            val = -val
        if not val.is_zero():
            out[beta] = val
    return out


def coords_col(h: GroupElement, lam: Weight, roots) -> dict:
    """Coordinates of an opposite unipotent element read from the lam column."""
    rep = h.rep
    wm = rep.wm
    out = {}
    for beta in roots:
        mu = wm.shift(lam, beta)
        if mu is None:
            raise DomainError(f"root {beta} does not shift the weight")
        c = rep.sign(lam, beta)
        val = h.entry(mu, lam)
        if c < 0:
            val = -val
        if not val.is_zero():
            out[beta] = val
    return out


def chevalley_matsumoto(g: GroupElement) -> tuple[GroupElement, GroupElement, GroupElement]:
    """Factor g with a unit top corner as v * g1 * u with u in the unipotent
    radical, v in the opposite one, and g1 in the Levi."""
    rep = g.rep
    wm = rep.wm
    lam0 = wm.lam0
    corner = g.entry(lam0, lam0)
    if not corner.is_unit():
        raise DomainError("decomposition needs a unit top corner")
    ainv = corner.inv()

    u_atoms = []
    for alpha in rep.case.omega_plus:
        mu = wm.shift(lam0, tuple(-x for x in alpha))
        c = rep.sign(mu, alpha)
        xi = ainv * g.entry(lam0, mu)
        if c < 0:
            xi = -xi
        if not xi.is_zero():
            u_atoms.append(("x", alpha, xi))
    u = rep.element_from_word(tuple(u_atoms))

    g2 = g * u.inverse()
    v_atoms = []
    for beta in rep.case.omega_plus:
        neg = tuple(-x for x in beta)
        mu = wm.shift(lam0, neg)
        c = rep.sign(lam0, neg)
        eta = ainv * g2.entry(mu, lam0)
        if c < 0:
            eta = -eta
        if not eta.is_zero():
            v_atoms.append(("x", neg, eta))
    v = rep.element_from_word(tuple(v_atoms))

    g1 = v.inverse() * g2
    if not (in_parabolic(g1) and in_opposite_parabolic(g1)):
        raise DomainError("middle factor is not scalar on the top row and column")
    from .rep import is_component_blocked

    if not is_component_blocked(g1):
        raise DomainError("middle factor maps across components")
    if not (v * g1 * u) == g:
        raise DomainError("decomposition does not multiply back to the element")
    return v, g1, u


# -- witnesses and replayable traces ------------------------------------------------------

TraceOp = tuple


@dataclass(frozen=True)
class Witness:
    """A root element certified inside the subgroup generated by the seed and
    the subsystem, as a replayable trace."""

    side: int  # +1 for the upper orbit, -1 for the lower
    root: Root
    value: RingElem
    trace: tuple[TraceOp, ...]

    def replay(self, rep: Representation, seed: GroupElement | None = None) -> GroupElement:
        return replay_trace(rep, self.trace, seed)

    def to_json(self):
        return {
            "side": self.side,
            "root": list(self.root),
            "value": self.value.to_json(),
            "trace": [_trace_op_json(op) for op in self.trace],
        }


def _trace_op_json(op: TraceOp):
    kind = op[0]
    if kind in ("seed",):
        return [kind]
    if kind in ("unipotent_part", "opposite_unipotent_part"):
        return [kind, list(op[1])]
    if kind in ("atom_seed", "rmul", "commute", "conj_atom", "inv_conj_atom"):
        a_kind, root, value = op[1]
        return [kind, [a_kind, list(root), value.to_json()]]
    raise DomainError(f"unknown trace op {kind!r}")


def replay_trace(rep: Representation, trace, seed: GroupElement | None = None) -> GroupElement:
    h: GroupElement | None = None
    for op in trace:
        kind = op[0]
        if kind == "seed":
            if seed is None:
                raise DomainError("trace needs a seed element")
            h = seed
        elif kind == "atom_seed":
            h = rep.element_from_word((op[1],))
        elif kind == "unipotent_part":
            h = levi_unipotent_split(h, op[1])[0]
        elif kind == "opposite_unipotent_part":
            h = opposite_levi_split(h, op[1])[0]
        elif kind == "rmul":
            h = h * rep.element_from_word((op[1],))
        elif kind == "commute":
            h = h.commutator(rep.element_from_word((op[1],)))
        elif kind == "conj_atom":
            h = rep.element_from_word((op[1],)).conjugate(h)
        elif kind == "inv_conj_atom":
            h = rep.element_from_word((op[1],)).conjugate(h.inverse())
        else:
            raise DomainError(f"unknown trace op {kind!r}")
    if h is None:
        raise DomainError("empty trace")
    return h


@dataclass(frozen=True)
class MembershipVerdict:
    reason: str


# -- extraction from the parabolic ----------------------------------------------------------


def _simple_raiser(case, beta: Root) -> Root:
    """A simple root whose sum with the given positive root is again a root."""
    for simple in case.simple_roots:
        if case.root_add(beta, simple) is not None:
            return simple
    raise InternalConsistencyError(f"no simple raiser for {beta}")


def _greedy_to_corner(
    h: GroupElement,
    trace: list[TraceOp],
    ideal: Ideal,
    side: int,
) -> Witness:
    """Drive an all-hot unipotent product to a single root element at the
    extreme root by commutators with subsystem root elements."""
    rep = h.rep
    case = rep.case
    wm = rep.wm
    lam0 = wm.lam0
    target = case.max_root if side > 0 else tuple(-x for x in case.max_root)
    guard = 4 * len(case.omega_plus) * height(case.max_root) + 16
    while True:
        guard -= 1
        if guard < 0:
            raise InternalConsistencyError("corner reduction did not terminate")
        if side > 0:
            coords = coords_row(h, lam0, case.omega_plus)
        else:
            coords = coords_col(h, lam0, [tuple(-x for x in b) for b in case.omega_plus])
        if any(v in ideal for v in coords.values()):
            raise InternalConsistencyError("cold coordinate appeared during reduction")
        if not coords:
            raise InternalConsistencyError("all coordinates vanished during reduction")
        roots = sorted(coords.keys(), key=lambda r: (height(r), r))
        if len(roots) == 1 and roots[0] == target:
            return Witness(side=side, root=target, value=coords[target], trace=tuple(trace))
        pick = next((r for r in roots if r != target), None)
        if pick is None:
            raise InternalConsistencyError("stuck at the extreme root with company")
        if side > 0:
            s = _simple_raiser(case, pick)
            atom: Atom = ("x", s, rep.ring.one)
        else:
            s = _simple_raiser(case, tuple(-x for x in pick))
            atom = ("x", tuple(-x for x in s), rep.ring.one)
        h = h.commutator(rep.element_from_word((atom,)))
        trace.append(("commute", atom))


def extract_from_parabolic(g: GroupElement, ideal: Ideal, side: int = +1) -> Witness | None:
    """From a parabolic member whose unipotent part escapes the ideal, produce
    a single root element at the extreme root with a value outside the ideal.

    Returns None when every unipotent coordinate lies inside the ideal.  The
    returned trace replays from the supplied element.
    """
    rep = g.rep
    case = rep.case
    wm = rep.wm
    lam0 = wm.lam0
    trace: list[TraceOp] = [("seed",)]
    if side > 0:
        u, _ = levi_unipotent_split(g, None)
        trace.append(("unipotent_part", lam0))
        coords = coords_row(u, lam0, case.omega_plus)
    else:
        u, _ = opposite_levi_split(g, None)
        trace.append(("opposite_unipotent_part", lam0))
        coords = coords_col(u, lam0, [tuple(-x for x in b) for b in case.omega_plus])

    hot = {r: v for r, v in coords.items() if v not in ideal}
    if not hot:
        return None
    h = u
    for r, v in sorted(coords.items(), key=lambda kv: (height(kv[0]), kv[0])):
        if r in hot:
            continue
        atom: Atom = ("x", r, -v)
        h = h * rep.element_from_word((atom,))
        trace.append(("rmul", atom))
    return _greedy_to_corner(h, trace, ideal, side)


# -- extraction from the stabilizer of a lower weight line ------------------------------------


def _first_escape_conj(
    g: GroupElement, roots, sigma: SigmaPair, inverse_side: bool = False
) -> tuple[Root, GroupElement] | None:
    """First root gamma (canonical order) whose unit root element escapes the
    congruence conditions after conjugation by g (or by its inverse)."""
    rep = g.rep
    for gamma in sorted(roots, key=lambda r: (height(r), r)):
        x = rep.x(gamma, 1)
        cand = x.conjugate(g.inverse()) if inverse_side else x.conjugate(g)
        if not in_G_sigma(cand, sigma):
            return gamma, cand
    return None


def extract_from_weight_stabilizer(
    g: GroupElement,
    lam1: Weight,
    sigma: SigmaPair,
    budget: int = 64,
) -> Witness | MembershipVerdict:
    """Extraction chain for a root-type member of the stabilizer of a first
    component weight line.

    Either certifies that the element satisfies the plus-side congruence
    conditions, or produces a single root element whose value escapes the
    corresponding ideal, as a replayable trace from the element.
    """
    rep = g.rep
    wm = rep.wm
    case = rep.case
    if wm.component_of(lam1) != 1:
        raise DomainError("weight must lie in the first non-trivial component")
    failures = root_type_failures(g)
    if failures:
        raise DomainError(f"element is not of root type: {failures[0]}")
    if not in_parabolic(g, lam1):
        raise DomainError("element does not stabilize the weight line")

    plus_only = SigmaPair(sigma.plus, Ideal.unit(rep.ring))
    if in_G_sigma(g, plus_only):
        return MembershipVerdict("element satisfies the plus-side congruence conditions")

    split = sigma_split(wm, lam1)
    trace: list[TraceOp] = [("seed",)]

    found = _first_escape_conj(g, split.core, plus_only)
    if found is None:
        raise InternalConsistencyError("no escaping conjugate in the overlap core")
    gamma1, g1 = found
    atom1: Atom = ("x", gamma1, rep.ring.one)
    trace.append(("conj_atom", atom1))

    u1, l1 = levi_unipotent_split(g1, lam1)
    if not in_G_sigma(l1, sigma):
        # the Levi part escapes: push the escape into the unipotent radical
        found2 = _first_escape_conj(l1, split.zero, sigma, inverse_side=True)
        if found2 is None:
            raise InternalConsistencyError("no escaping conjugate in the shift subsystem roots")
        gamma2, _ = found2
        atom2: Atom = ("x", gamma2, rep.ring.one)
        h = rep.element_from_word((atom2,)).conjugate(g1.inverse())
        trace.append(("inv_conj_atom", atom2))
        expected = rep.element_from_word((atom2,)).conjugate(l1.inverse())
        if not h == expected:
            raise InternalConsistencyError("abelian radical commutation failed")
    else:
        found2 = _first_escape_conj(g1, split.core, plus_only)
        if found2 is None:
            raise InternalConsistencyError("no second escaping conjugate in the core")
        gamma2, g2 = found2
        atom2 = ("x", gamma2, rep.ring.one)
        trace.append(("conj_atom", atom2))
        h, l2 = levi_unipotent_split(g2, lam1)
        trace.append(("unipotent_part", lam1))
        if not in_G_sigma(l2, sigma):
            raise InternalConsistencyError("conjugated Levi part escaped unexpectedly")
        if in_G_sigma(h, sigma):
            raise InternalConsistencyError("unipotent part does not carry the escape")

    beta0 = split.minus[0]
    while budget > 0:
        budget -= 1
        if not in_parabolic(h, lam1):
            raise InternalConsistencyError("radical element left the line stabilizer")
        coords = coords_row(h, lam1, split.all_roots)
        hot_plus = {b: v for b, v in coords.items() if b in set(split.plus) and v not in sigma.plus}
        xi0 = coords.get(beta0)
        if hot_plus:
            if xi0 is None or xi0 in sigma.minus:
                # strip every certified factor, leaving the hot upper product
                for b, v in sorted(coords.items(), key=lambda kv: (height(kv[0]), kv[0])):
                    if b in hot_plus:
                        continue
                    atom = ("x", b, -v)
                    h = h * rep.element_from_word((atom,))
                    trace.append(("rmul", atom))
                canonical = tuple(
                    ("x", b, hot_plus[b])
                    for b in sorted(hot_plus.keys(), key=lambda r: (height(r), r))
                )
                if not h == rep.element_from_word(canonical):
                    raise InternalConsistencyError("stripping left a non-radical remainder")
                return _greedy_to_corner(h, trace, sigma.plus, +1)
            # the lower factor is not certified: shift it away
            pivot = min(hot_plus.keys(), key=lambda r: (height(r), r))
            support = set(coords.keys())
            options = []
            for gamma in split.overlap:
                if case.root_add(pivot, gamma) is None:
                    continue
                if case.root_add(gamma, beta0) is not None:
                    continue
                options.append(gamma)
            if not options:
                raise InternalConsistencyError("no shifting root for the hot pivot")
            best = next(
                (
                    gm
                    for gm in options
                    if tuple(b - c for b, c in zip(beta0, gm)) not in support
                ),
                options[0],
            )
            atom = ("x", best, rep.ring.one)
            h = h.commutator(rep.element_from_word((atom,)))
            trace.append(("commute", atom))
            continue
        if xi0 is not None and xi0 not in sigma.minus:
            for b, v in sorted(coords.items(), key=lambda kv: (height(kv[0]), kv[0])):
                if b == beta0:
                    continue
                atom = ("x", b, -v)
                h = h * rep.element_from_word((atom,))
                trace.append(("rmul", atom))
            if not h == rep.x(beta0, xi0):
                raise InternalConsistencyError("stripping did not leave a single root element")
            return Witness(side=-1, root=beta0, value=xi0, trace=tuple(trace))
        raise InternalConsistencyError("element re-entered the congruence conditions")
    raise BudgetExhausted("weight-stabilizer extraction ran out of budget")


# -- extraction from a nilpotent congruence subgroup ---------------------------------------------


def nilpotent_vanishing_check(g: GroupElement, b: Ideal) -> bool:
    """Entries at weight-graph distance two or more vanish for members of the
    congruence subgroup of a square-zero ideal."""
    rep = g.rep
    wm = rep.wm
    if not b.square().is_zero():
        raise DomainError("ideal must square to zero")
    if not rep.reduce(g, b).is_identity():
        raise DomainError("element is not in the congruence subgroup of the ideal")
    return _far_entries_vanish(g.mat, wm)


@dataclass(frozen=True)
class NilpotentStep:
    element: GroupElement
    lam1: Weight
    trace: tuple[TraceOp, ...]


def extract_from_nilpotent(g: GroupElement, b: Ideal) -> NilpotentStep:
    """Turn a congruence-subgroup member outside the opposite parabolic into a
    weight-line stabilizer outside it, ready for the stabilizer extraction."""
    rep = g.rep
    wm = rep.wm
    if in_opposite_parabolic(g, None):
        raise DomainError("element lies in the opposite parabolic")
    if not nilpotent_vanishing_check(g, b):
        raise InternalConsistencyError("distance vanishing fails for a congruence member")
    lam0 = wm.lam0
    lam1 = next(
        (lam for lam in wm.weights if lam != lam0 and not g.mat.is_zero_at(wm.idx(lam0), wm.idx(lam))),
        None,
    )
    if lam1 is None:
        raise InternalConsistencyError("no nonzero top-row entry despite the parabolic check")
    if wm.distance(lam0, lam1) != 1:
        raise InternalConsistencyError("escaping entry is not adjacent to the top weight")

    nu = wm.neighbor_in_component(lam1)
    # the conjugating root element must move nu up to lam1; the dual choice
    # would push a unit-sized entry into the moved column
    alpha = wm.root_between(lam1, nu)
    if alpha is None or alpha not in set(rep.case.delta):
        raise InternalConsistencyError("component neighbour difference is not a subsystem root")
    atom: Atom = ("x", alpha, rep.ring.one)
    h = rep.element_from_word((atom,)).conjugate(g)
    trace = (("seed",), ("conj_atom", atom))

    # the conjugating root element scales the relevant inverse column
    col = g.inverse().column(lam1)
    moved = rep.act(rep.element_from_word((atom,)), col)
    scale = g.inv_entry(nu, lam1)
    ok = False
    for sgn in (1, -1):
        factor = rep.ring.one + (scale if sgn > 0 else -scale)
        test = col.copy()
        for i in range(wm.dim):
            test.set_entry(i, col.entry(i) * factor)
        if moved == test:
            ok = True
            break
    if not ok:
        raise InternalConsistencyError("line stabilization identity fails")

    if not in_parabolic(h, lam1):
        raise InternalConsistencyError("conjugate does not stabilize the weight line")
    if in_opposite_parabolic(h, None):
        raise InternalConsistencyError("conjugate fell into the opposite parabolic")
    if g.mat.is_zero_at(wm.idx(lam0), wm.idx(lam1)) or h.mat.is_zero_at(wm.idx(lam0), wm.idx(nu)):
        raise InternalConsistencyError("top-row escape did not transfer")
    return NilpotentStep(element=h, lam1=lam1, trace=trace)


# -- column stabilizers and corner ideals -----------------------------------------------------


def column_stabilizer_pair(
    g: GroupElement, lam1: Weight, mu: Weight, nu: Weight
) -> GroupElement:
    """The two-root product built from matrix entries of a root-type element
    that stabilizes its lam1 column exactly."""
    rep = g.rep
    wm = rep.wm
    if not (wm.distance(lam1, mu) == 1 and wm.distance(lam1, nu) == 1 and wm.distance(mu, nu) == 1):
        raise DomainError("the three weights must be pairwise adjacent")
    failures = root_type_failures(g)
    if failures:
        raise DomainError(f"element is not of root type: {failures[0]}")
    alpha = wm.root_between(lam1, mu)
    beta = wm.root_between(lam1, nu)
    c_mu = rep.sign(mu, alpha)
    c_nu = rep.sign(nu, beta)
    xi_a = g.entry(nu, lam1)
    if c_mu < 0:
        xi_a = -xi_a
    xi_b = -g.entry(mu, lam1)
    if c_nu < 0:
        xi_b = -xi_b
    return rep.element_from_word((("x", alpha, xi_a), ("x", beta, xi_b)))


def stabilizes_column(x: GroupElement, g: GroupElement, lam1: Weight) -> bool:
    col = g.column(lam1)
    return x.rep.act(x, col) == col


def ring_commutator_identity_holds(x: GroupElement, g: GroupElement) -> bool:
    """g^-1 x g equals x plus the ring commutator of the two matrices."""
    lhs = g.inv_mat * x.mat * g.mat
    rhs = x.mat + (x.mat * g.mat - g.mat * x.mat)
    return lhs == rhs


def corner_ideals(g: GroupElement, lam1: Weight) -> tuple[Ideal, Ideal, Ideal, Ideal]:
    """Ideals generated by the first-component column and row entries and by
    the two corner entries at the top weight."""
    rep = g.rep
    wm = rep.wm
    lam0 = wm.lam0
    others = [mu for mu in wm.components[1] if mu != lam1]
    a = Ideal.from_elems(rep.ring, [g.entry(mu, lam1) for mu in others])
    b = Ideal.from_elems(rep.ring, [g.entry(lam0, lam1)])
    a_prime = Ideal.from_elems(rep.ring, [g.entry(lam1, mu) for mu in others])
    b_prime = Ideal.from_elems(rep.ring, [g.entry(lam1, lam0)])
    return a, b, a_prime, b_prime


# -- transporter and level certificates -------------------------------------------------------


def transporter_check(
    g: GroupElement, sigma: SigmaPair, max_generators: int | None = None, seed: int = 0
) -> bool:
    """Conjugation by g carries every enumerated level generator into the
    congruence conditions.  Samples when the enumeration is capped."""
    rep = g.rep
    atoms = sigma_generator_atoms(rep, sigma)
    if max_generators is not None and len(atoms) > max_generators:
        rng = SplitMix64(seed)
        atoms = [atoms[rng.randrange(len(atoms))] for _ in range(max_generators)]
    for atom in atoms:
        x = rep.element_from_word((atom,))
        conj = x.conjugate(g)
        if not in_G_sigma(conj, sigma):
            return False
    return True


@dataclass
class LevelCertificate:
    """Witnessed lower bound for the level of a generated subgroup."""

    witnesses: list[Witness]
    lower: SigmaPair
    target: SigmaPair
    matched: bool
    normalizer_consistent: bool
    complete: bool
    seed: int

    def to_json(self):
        return {
            "witnesses": [w.to_json() for w in self.witnesses],
            "lower": self.lower.to_json(),
            "target": self.target.to_json(),
            "matched": self.matched,
            "normalizer_consistent": self.normalizer_consistent,
            "complete": self.complete,
            "seed": self.seed,
        }


def level_certificate(
    rep: Representation,
    gen_atoms: list[Atom],
    extra: list[GroupElement],
    target: SigmaPair,
    budget: int = 400,
    seed: int = 0,
    normalizer_samples: int = 50,
) -> LevelCertificate:
    """Accumulate root-element witnesses from the generated subgroup until the
    witnessed level stops growing or the budget runs out.

    The lower bound grows monotonically; the certificate never claims more
    than its witnesses replay.
    """
    rng = SplitMix64(seed)
    wm = rep.wm
    case = rep.case
    plus_set = set(case.omega_plus)
    minus_set = set(case.omega_minus)

    witnesses: list[Witness] = []
    lb_plus = Ideal.zero(rep.ring)
    lb_minus = Ideal.zero(rep.ring)

    def note(w: Witness):
        nonlocal lb_plus, lb_minus
        witnesses.append(w)
        grown = Ideal.from_elems(rep.ring, [w.value])
        if w.side > 0:
            lb_plus = lb_plus + grown
        else:
            lb_minus = lb_minus + grown

    direct_pool: list[tuple[Atom, GroupElement | None]] = [(a, None) for a in gen_atoms]
    for e in extra:
        if e.word is not None and len(e.word) == 1 and e.word[0][0] == "x":
            direct_pool.append((e.word[0], e))
    for atom, _ in direct_pool:
        _, root, value = atom
        if root in plus_set and value not in lb_plus:
            note(Witness(side=+1, root=root, value=value, trace=(("atom_seed", atom),)))
        elif root in minus_set and value not in lb_minus:
            note(Witness(side=-1, root=root, value=value, trace=(("atom_seed", atom),)))

    pool_elements = [rep.element_from_word((a,)) for a in gen_atoms[: min(len(gen_atoms), 512)]]
    pool_elements += extra
    stable = 0
    while budget > 0 and stable < 40:
        budget -= 1
        base = pool_elements[rng.randrange(len(pool_elements))]
        length = rng.randrange(5)
        w = sample_word_rng(rep, gen_atoms, length, rng) if gen_atoms else rep.identity()
        cand = base.conjugate(w)
        before = (lb_plus, lb_minus)
        try:
            if in_parabolic(cand, None):
                got = extract_from_parabolic(cand, lb_plus, side=+1)
                if got is not None:
                    note(_reseat(got, cand))
            if in_opposite_parabolic(cand, None):
                got = extract_from_parabolic(cand, lb_minus, side=-1)
                if got is not None:
                    note(_reseat(got, cand))
        except (DomainError, InternalConsistencyError):
            pass
        stable = 0 if (lb_plus, lb_minus) != before else stable + 1
        if SigmaPair(lb_plus, lb_minus) == target:
            break

    lower = SigmaPair(lb_plus, lb_minus)
    matched = lower == target

    norm_ok = True
    for _ in range(normalizer_samples):
        length = 1 + rng.randrange(8)
        g = sample_word_rng(rep, gen_atoms, length, rng) if gen_atoms else rep.identity()
        for e in extra:
            if rng.randrange(2):
                g = g * e
        if not in_normalizer(g, target):
            norm_ok = False
            break

    return LevelCertificate(
        witnesses=witnesses,
        lower=lower,
        target=target,
        matched=matched,
        normalizer_consistent=norm_ok,
        complete=matched or budget > 0,
        seed=seed,
    )


def _reseat(w: Witness, seed_elt: GroupElement) -> Witness:
    """Attach the concrete seed element to a trace-based witness by replaying
    it once for validation."""
    got = replay_trace(seed_elt.rep, w.trace, seed_elt)
    expect = seed_elt.rep.x(w.root, w.value)
    if not got == expect:
        raise InternalConsistencyError("witness trace does not replay to the claimed element")
    return w


def level_reduction_check(
    rep: Representation,
    gen_atoms: list[Atom],
    extra: list[GroupElement],
    sigma: SigmaPair,
    by: Ideal,
    seed: int = 0,
    n_samples: int = 50,
    budget: int = 400,
) -> bool:
    """Witness values reduce to generators of the reduced level, and reduced
    word samples satisfy the reduced normalizer conditions."""
    cert = level_certificate(rep, gen_atoms, extra, sigma, budget=budget, seed=seed)
    if not cert.matched:
        return False
    reduced = sigma.reduce(by)
    plus_vals = [by.reduce_elem(w.value) for w in cert.witnesses if w.side > 0]
    minus_vals = [by.reduce_elem(w.value) for w in cert.witnesses if w.side < 0]
    qspec = by.quotient_spec()
    if Ideal.from_elems(qspec, plus_vals) != reduced.plus:
        return False
    if Ideal.from_elems(qspec, minus_vals) != reduced.minus:
        return False

    rng = SplitMix64(seed + 1)
    for _ in range(n_samples):
        length = 1 + rng.randrange(8)
        g = sample_word_rng(rep, gen_atoms, length, rng)
        for e in extra:
            if rng.randrange(2):
                g = g * e
        if not in_normalizer(rep.reduce(g, by), reduced):
            return False
    return True


def parse_sigma(spec: RingSpec, text: str) -> SigmaPair:
    """Parse level strings like ``(2),(0)`` or ``R,(2)``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise DomainError("level must have exactly two components")
    ideals = []
    for p in parts:
        if p in ("R", "r", "(1)", "1"):
            ideals.append(Ideal.unit(spec))
        else:
            p = p.strip("()")
            if not p.lstrip("-").isdigit():
                raise DomainError(f"cannot parse ideal {p!r}")
            ideals.append(Ideal.from_elems(spec, [spec.el(int(p))]))
    return SigmaPair(ideals[0], ideals[1])
