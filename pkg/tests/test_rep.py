import pytest

from chevalley.errors import NonUnitError
from chevalley.rep import (
    get_representation,
    is_component_blocked,
    rep_tables,
    representation,
    sample_word,
    sample_word_rng,
)
from chevalley.rings import Ideal, RingSpec
from chevalley.rng import SplitMix64
from chevalley.weights import default_module, pairing_wr

CASES = [("a", 5), ("b", None), ("c", None)]


@pytest.mark.parametrize("tag,l", CASES)
def test_sign_table_is_crystal(tag, l):
    wm = default_module(tag, l)
    tables = rep_tables(wm)
    assert all(c in (1, -1) for c in tables.signs.values())
    for i, alpha in enumerate(wm.case.simple_roots):
        for root in (alpha, tuple(-x for x in alpha)):
            _, _, signs = tables.patterns[root]
            assert all(s == 1 for s in signs)


def test_root_element_basics():
    ring = RingSpec.zmod(8)
    rep = representation("b", None, ring)
    alpha = rep.case.omega_plus[2]
    assert rep.x(alpha, 0).is_identity()
    x = rep.x(alpha, 5)
    nil = x.mat - rep.identity().mat
    assert (nil * nil) == (nil - nil)
    assert x.inverse() == rep.x(alpha, -5)
    assert (rep.x(alpha, 3) * rep.x(alpha, 4)) == rep.x(alpha, 7)


def test_weyl_element_is_monomial_and_torus_diagonal():
    ring = RingSpec.zmod(9)
    rep = representation("b", None, ring)
    wm = rep.wm
    alpha = rep.case.delta[4]
    w = rep.w(alpha, 1)
    for mu in wm.weights:
        col = [i for i in range(wm.dim) if not w.mat.is_zero_at(i, wm.idx(mu))]
        assert len(col) == 1
        image = wm.reflect(mu, alpha)
        assert col[0] == wm.idx(image)
    eps = ring.el(2)
    h = rep.h(alpha, eps)
    for lam in wm.weights:
        i = wm.idx(lam)
        expected = {1: eps, 0: ring.one, -1: eps.inv()}[pairing_wr(lam, alpha)]
        assert h.mat.entry(i, i) == expected
        assert all(h.mat.is_zero_at(i, j) for j in range(wm.dim) if j != i)


def test_weyl_needs_unit():
    ring = RingSpec.zmod(8)
    rep = representation("b", None, ring)
    with pytest.raises(NonUnitError):
        rep.w(rep.case.alpha1, 2)
    with pytest.raises(NonUnitError):
        rep.h(rep.case.alpha1, 0)


def test_z_element_identities():
    ring = RingSpec.zmod(8)
    rep = representation("b", None, ring)
    alpha = rep.case.omega_plus[0]
    assert rep.z(alpha, 0, 5).is_identity()
    assert rep.z(alpha, 3, 0) == rep.x(tuple(-x for x in alpha), 3)
    ideal = Ideal.from_elems(ring, [ring.el(2)])
    z = rep.z(alpha, 2, 5)
    assert rep.reduce(z, ideal).is_identity()


def test_reduction_is_a_homomorphism():
    ring = RingSpec.zmod(8)
    ideal = Ideal.from_elems(ring, [ring.el(4)])
    rep = representation("b", None, ring)
    rng = SplitMix64(3)
    atoms = [("x", a, v) for a in rep.case.phi for v in ring.elements() if not v.is_zero()]
    for _ in range(20):
        g = sample_word_rng(rep, atoms, 4, rng)
        h = sample_word_rng(rep, atoms, 4, rng)
        assert rep.reduce(g * h, ideal) == rep.reduce(g, ideal) * rep.reduce(h, ideal)
    alpha = rep.case.delta[0]
    assert rep.reduce(rep.x(alpha, 5), ideal) == get_representation(
        rep.wm, ideal.quotient_spec()
    ).x(alpha, 5)
    zero = Ideal.zero(ring)
    g = sample_word_rng(rep, atoms, 4, rng)
    assert rep.reduce(g, zero).mat == g.mat


def test_sample_word_deterministic_and_trivial():
    ring = RingSpec.zmod(4)
    rep = representation("b", None, ring)
    atoms = [("x", a, ring.one) for a in rep.case.delta]
    assert sample_word(rep, atoms, 0, seed=9).is_identity()
    a = sample_word(rep, atoms, 6, seed=9)
    b = sample_word(rep, atoms, 6, seed=9)
    assert a == b and a.word == b.word


def test_subsystem_words_are_component_blocked():
    ring = RingSpec.zmod(4)
    rep = representation("b", None, ring)
    atoms = [("x", a, v) for a in rep.case.delta for v in ring.elements() if not v.is_zero()]
    rng = SplitMix64(11)
    for _ in range(20):
        g = sample_word_rng(rep, atoms, 6, rng)
        assert is_component_blocked(g)
    beta = rep.case.omega_plus[0]
    assert not is_component_blocked(rep.x(beta, 1))


def test_unipotent_coordinates_and_congruence():
    # coordinates of an upper unipotent product are its top-row entries, and
    # membership in the congruence subgroup is coordinatewise
    ring = RingSpec.zmod(8)
    rep = representation("b", None, ring)
    wm = rep.wm
    case = rep.case
    ideal = Ideal.from_elems(ring, [ring.el(2)])
    rng = SplitMix64(23)
    omega = list(case.omega_plus)
    for trial in range(30):
        coords = {}
        atoms = []
        for alpha in omega:
            v = ring.el(rng.randrange(8))
            if not v.is_zero():
                coords[alpha] = v
                atoms.append(("x", alpha, v))
        items = list(atoms)
        rng.shuffle(items)
        u = rep.element_from_word(tuple(items))
        for alpha, v in coords.items():
            mu = wm.shift(wm.lam0, tuple(-x for x in alpha))
            entry = u.entry(wm.lam0, mu)
            assert entry == v or entry == -v
        in_congruence = rep.reduce(u, ideal).is_identity()
        assert in_congruence == all(v in ideal for v in coords.values())


def test_vector_and_covector_actions():
    ring = RingSpec.zmod(8)
    rep = representation("b", None, ring)
    wm = rep.wm
    rng = SplitMix64(31)
    atoms = [("x", a, v) for a in rep.case.phi for v in ring.elements() if not v.is_zero()]
    g = sample_word_rng(rep, atoms, 5, rng)
    v = rep.basis_vector(wm.lam0)
    assert rep.act(g, v) == g.column(wm.lam0)
    w = rep.basis_vector(wm.lam0)
    assert rep.act_covector(w, g) == g.row(wm.lam0)


def test_matrix_only_elements_get_exact_inverses():
    ring = RingSpec.zmod(8)
    rep = representation("b", None, ring)
    rng = SplitMix64(37)
    atoms = [("x", a, v) for a in rep.case.phi for v in ring.elements() if not v.is_zero()]
    g = sample_word_rng(rep, atoms, 6, rng)
    rebuilt = rep.from_matrix(g.mat)
    assert rebuilt.word is None
    assert rebuilt.inv_mat == g.inv_mat
    rebuilt.check()


def test_upper_unipotent_is_abelian_and_canonical():
    ring = RingSpec.zmod(8)
    rep = representation("b", None, ring)
    case = rep.case
    rng = SplitMix64(29)
    omega = list(case.omega_plus)
    nonzero = [v for v in ring.elements() if not v.is_zero()]
    for alpha in omega:
        for beta in omega:
            if alpha != beta:
                assert rep.x(alpha, 3).commutator(rep.x(beta, 5)).is_identity()
    # any word over the upper orbit equals the canonical coordinate product
    atoms = [("x", a, v) for a in omega for v in nonzero]
    for _ in range(20):
        u = sample_word_rng(rep, atoms, 6, rng)
        wm = rep.wm
        canonical = []
        for alpha in omega:
            mu = wm.shift(wm.lam0, tuple(-x for x in alpha))
            c = rep.sign(mu, alpha)
            val = u.entry(wm.lam0, mu)
            if c < 0:
                val = -val
            if not val.is_zero():
                canonical.append(("x", alpha, val))
        assert rep.element_from_word(tuple(canonical)) == u
