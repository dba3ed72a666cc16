import pytest

from chevalley.analysis import (
    MembershipVerdict,
    SigmaPair,
    Witness,
    chevalley_matsumoto,
    column_stabilizer_pair,
    corner_ideals,
    extract_from_nilpotent,
    extract_from_parabolic,
    extract_from_weight_stabilizer,
    in_G_sigma,
    in_normalizer,
    in_opposite_parabolic,
    in_parabolic,
    level_certificate,
    level_reduction_check,
    levi_unipotent_split,
    nilpotent_vanishing_check,
    opposite_levi_split,
    parabolic_profile,
    parse_sigma,
    replay_trace,
    ring_commutator_identity_holds,
    root_type_failures,
    sigma_generator_atoms,
    stabilizes_column,
    transporter_check,
)
from chevalley.errors import DomainError
from chevalley.rep import get_representation, representation, sample_word_rng
from chevalley.rings import Ideal, RingSpec
from chevalley.rng import SplitMix64
from chevalley.weights import sigma_split


@pytest.fixture(scope="module")
def rep_b_z4():
    return representation("b", None, RingSpec.zmod(4))


@pytest.fixture(scope="module")
def rep_c_z4():
    return representation("c", None, RingSpec.zmod(4))


def _delta_atoms(rep):
    return [
        ("x", a, v) for a in rep.case.delta for v in rep.ring.elements() if not v.is_zero()
    ]


# -- congruence and normalizer predicates --------------------------------------------


def test_subsystem_words_pass_every_level(rep_b_z4):
    rep = rep_b_z4
    rng = SplitMix64(1)
    for sigma_text in ("(0),(0)", "(2),(0)", "R,R"):
        sigma = parse_sigma(rep.ring, sigma_text)
        for _ in range(10):
            g = sample_word_rng(rep, _delta_atoms(rep), 6, rng)
            assert in_G_sigma(g, sigma)
            assert in_normalizer(g, sigma)


def test_orbit_root_elements_membership(rep_b_z4):
    rep = rep_b_z4
    sigma = parse_sigma(rep.ring, "(2),(0)")
    beta = rep.case.omega_plus[0]
    assert in_G_sigma(rep.x(beta, 2), sigma)
    assert not in_G_sigma(rep.x(beta, 1), sigma)
    neg = tuple(-x for x in beta)
    assert not in_G_sigma(rep.x(neg, 2), sigma)  # minus ideal is zero


def test_identity_and_full_level(rep_b_z4):
    rep = rep_b_z4
    full = SigmaPair.full(rep.ring)
    assert in_normalizer(rep.identity(), full)
    rng = SplitMix64(2)
    atoms = [("x", a, v) for a in rep.case.phi for v in rep.ring.elements() if not v.is_zero()]
    for _ in range(10):
        g = sample_word_rng(rep, atoms, 5, rng)
        assert in_normalizer(g, full)
        assert in_G_sigma(g, full)


@pytest.mark.parametrize("tag,l", [("c", None), ("a", 6)])
def test_second_type_normalizer_exceeds_congruence(tag, l):
    rep = representation(tag, l, RingSpec.zmod(4))
    wm = rep.wm
    sigma = SigmaPair.zero(rep.ring)
    # a monomial word carrying the top line to the bottom line
    path = [wm.lam0]
    while path[-1] != wm.minus(wm.lam0):
        cur = path[-1]
        nxt = min(
            (mu for mu in wm.neighbors(cur) if wm.distance(mu, wm.minus(wm.lam0)) < wm.distance(cur, wm.minus(wm.lam0))),
            key=wm.idx,
        )
        path.append(nxt)
    atoms = []
    for a, b in zip(path, path[1:]):
        atoms.append(("w", wm.root_between(a, b), rep.ring.one))
    w = rep.element_from_word(tuple(atoms))
    assert not in_parabolic(w)
    assert not in_G_sigma(w, sigma)
    assert in_normalizer(w, sigma)
    assert transporter_check(w, sigma)


def test_moving_the_top_line_breaks_zero_level(rep_c_z4):
    rep = rep_c_z4
    sigma = SigmaPair.zero(rep.ring)
    beta = rep.case.omega_plus[0]
    g = rep.x(tuple(-x for x in beta), 1)
    assert not in_normalizer(g, sigma)


def test_parabolic_profile(rep_b_z4):
    rep = rep_b_z4
    beta = rep.case.omega_plus[0]
    prof = parabolic_profile(rep.x(beta, 1))
    assert prof.in_p and not prof.in_p_minus and not prof.in_levi
    prof = parabolic_profile(rep.x(tuple(-x for x in beta), 1))
    assert prof.in_p_minus and not prof.in_p
    prof = parabolic_profile(rep.h(rep.case.alpha1, 3))
    assert prof.in_levi


# -- decompositions ------------------------------------------------------------------------


def test_corner_decomposition_of_identity(rep_b_z4):
    v, g1, u = chevalley_matsumoto(rep_b_z4.identity())
    assert v.is_identity() and g1.is_identity() and u.is_identity()


def test_corner_decomposition_recovers_commuting_factors(rep_b_z4):
    rep = rep_b_z4
    case = rep.case
    beta = case.omega_plus[0]
    gamma = next(
        g
        for g in case.omega_plus
        if g != beta and case.root_add(beta, tuple(-x for x in g)) is None
    )
    g = rep.x(beta, 1) * rep.x(tuple(-x for x in gamma), 3)
    v, g1, u = chevalley_matsumoto(g)
    assert u == rep.x(beta, 1)
    assert v == rep.x(tuple(-x for x in gamma), 3)
    assert g1.is_identity()


def test_corner_decomposition_needs_unit_corner(rep_b_z4):
    rep = rep_b_z4
    wm = rep.wm
    # kill the corner: a monomial moving the top weight away has corner zero
    w = rep.w(rep.case.alpha1, 1)
    assert not w.entry(wm.lam0, wm.lam0).is_unit()
    with pytest.raises(DomainError):
        chevalley_matsumoto(w)


def test_levi_split_examples(rep_b_z4):
    rep = rep_b_z4
    rng = SplitMix64(5)
    levi_word = sample_word_rng(rep, _delta_atoms(rep), 4, rng) * rep.h(rep.case.alpha1, 3)
    u, l = levi_unipotent_split(levi_word)
    assert u.is_identity() and l == levi_word

    alpha = rep.case.omega_plus[2]
    g = rep.x(alpha, 3) * levi_word
    u, l = levi_unipotent_split(g)
    assert u == rep.x(alpha, 3)
    assert (u * l) == g

    v, l2 = opposite_levi_split(rep.x(tuple(-x for x in alpha), 2) * levi_word)
    assert v == rep.x(tuple(-x for x in alpha), 2)


def test_levi_split_rejects_outsiders(rep_b_z4):
    rep = rep_b_z4
    beta = rep.case.omega_plus[0]
    with pytest.raises(DomainError):
        levi_unipotent_split(rep.x(tuple(-x for x in beta), 1))


def test_levi_split_at_lower_weight(rep_b_z4):
    rep = rep_b_z4
    wm = rep.wm
    lam1 = wm.lambda1[1]
    split = sigma_split(wm, lam1)
    g = rep.x(split.plus[0], 3) * rep.x(split.zero[0], 2)
    assert in_parabolic(g, lam1)
    u, l = levi_unipotent_split(g, lam1)
    assert (u * l) == g
    assert in_parabolic(u, lam1)
    assert in_parabolic(l, lam1) and in_opposite_parabolic(l, lam1)


# -- extraction --------------------------------------------------------------------------------


def test_extract_single_hot_factor(rep_b_z4):
    rep = rep_b_z4
    ideal = Ideal.from_elems(rep.ring, [rep.ring.el(2)])
    beta = rep.case.omega_plus[5]
    g = rep.x(beta, 1)
    wit = extract_from_parabolic(g, ideal, side=+1)
    assert wit is not None and wit.root == rep.case.max_root
    # the transported value generates the same ideal as the seed value
    assert Ideal.from_elems(rep.ring, [wit.value]) == Ideal.from_elems(rep.ring, [rep.ring.el(1)])
    assert replay_trace(rep, wit.trace, g) == rep.x(wit.root, wit.value)


def test_extract_nothing_when_cold(rep_b_z4):
    rep = rep_b_z4
    ideal = Ideal.from_elems(rep.ring, [rep.ring.el(2)])
    g = rep.x(rep.case.omega_plus[1], 2) * rep.x(rep.case.omega_plus[3], 2)
    assert extract_from_parabolic(g, ideal, side=+1) is None


def test_extract_mixed_factors_keeps_hot_ideal(rep_b_z4):
    rep = rep_b_z4
    ideal = Ideal.from_elems(rep.ring, [rep.ring.el(2)])
    b1, b2 = rep.case.omega_plus[2], rep.case.omega_plus[6]
    g = rep.x(b1, 1) * rep.x(b2, 2)
    wit = extract_from_parabolic(g, ideal, side=+1)
    assert wit is not None
    hot_plus_ideal = Ideal.from_elems(rep.ring, [wit.value]) + ideal
    seed_ideal = Ideal.from_elems(rep.ring, [rep.ring.el(1)]) + ideal
    assert hot_plus_ideal == seed_ideal
    assert replay_trace(rep, wit.trace, g) == rep.x(wit.root, wit.value)


def test_extract_minus_side(rep_b_z4):
    rep = rep_b_z4
    ideal = Ideal.zero(rep.ring)
    beta = rep.case.omega_plus[4]
    g = rep.x(tuple(-x for x in beta), 3)
    wit = extract_from_parabolic(g, ideal, side=-1)
    assert wit is not None and wit.side == -1
    assert wit.root == tuple(-x for x in rep.case.max_root)
    assert replay_trace(rep, wit.trace, g) == rep.x(wit.root, wit.value)


def test_weight_stabilizer_requires_hypotheses(rep_b_z4):
    rep = rep_b_z4
    sigma = parse_sigma(rep.ring, "(2),(0)")
    lam1 = rep.wm.lambda1[0]
    with pytest.raises(DomainError):
        extract_from_weight_stabilizer(rep.x(rep.case.omega_plus[0], 1), lam1, sigma)
    with pytest.raises(DomainError):
        extract_from_weight_stabilizer(rep.identity(), rep.wm.lam0, sigma)


def test_weight_stabilizer_membership_verdict(rep_b_z4):
    rep = rep_b_z4
    sigma = parse_sigma(rep.ring, "(2),(0)")
    lam1 = rep.wm.lambda1[0]
    res = extract_from_weight_stabilizer(rep.identity(), lam1, sigma)
    assert isinstance(res, MembershipVerdict)


def test_weight_stabilizer_witness(rep_b_z4):
    rep = rep_b_z4
    wm = rep.wm
    sigma = parse_sigma(rep.ring, "(2),(0)")
    lam1 = wm.lambda1[3]
    split = sigma_split(wm, lam1)
    g = rep.x(split.plus[1], 1)
    res = extract_from_weight_stabilizer(g, lam1, sigma)
    assert isinstance(res, Witness)
    assert res.side == +1 and res.value not in sigma.plus
    assert replay_trace(rep, res.trace, g) == rep.x(res.root, res.value)


def test_nilpotent_vanishing_examples(rep_b_z4):
    rep = rep_b_z4
    b = Ideal.from_elems(rep.ring, [rep.ring.el(2)])
    assert nilpotent_vanishing_check(rep.x(rep.case.phi[0], 2), b)
    rng = SplitMix64(7)
    atoms = [("x", a, rep.ring.el(2)) for a in rep.case.phi]
    mix = [("x", a, v) for a in rep.case.phi for v in rep.ring.elements() if not v.is_zero()]
    for _ in range(40):
        g = sample_word_rng(rep, atoms, 4, rng)
        assert nilpotent_vanishing_check(g, b)
        h = sample_word_rng(rep, mix, 4, rng)
        assert nilpotent_vanishing_check(rep.x(rep.case.phi[3], 2).conjugate(h), b)
    with pytest.raises(DomainError):
        nilpotent_vanishing_check(rep.x(rep.case.phi[0], 1), b)


def test_nilpotent_extraction_rejects_opposite_members(rep_b_z4):
    rep = rep_b_z4
    b = Ideal.from_elems(rep.ring, [rep.ring.el(2)])
    g = rep.x(tuple(-x for x in rep.case.omega_plus[0]), 2)
    assert in_opposite_parabolic(g)
    with pytest.raises(DomainError):
        extract_from_nilpotent(g, b)


def test_nilpotent_extraction_produces_stabilizer(rep_b_z4):
    rep = rep_b_z4
    b = Ideal.from_elems(rep.ring, [rep.ring.el(2)])
    g = rep.x(rep.case.omega_plus[2], 2) * rep.x(tuple(-x for x in rep.case.omega_plus[5]), 2)
    step = extract_from_nilpotent(g, b)
    assert in_parabolic(step.element, step.lam1)
    assert not in_opposite_parabolic(step.element)
    assert replay_trace(rep, step.trace, g) == step.element
    res = extract_from_weight_stabilizer(step.element, step.lam1, SigmaPair.zero(rep.ring))
    assert isinstance(res, Witness)
    assert not res.value.is_zero()


# -- column stabilizers and corner ideals ----------------------------------------------------------


def test_column_stabilizer_identity_case(rep_b_z4):
    rep = rep_b_z4
    wm = rep.wm
    lam1 = wm.lambda1[0]
    mu = wm.neighbor_in_component(lam1)
    nu = wm.neighbor_in_component(lam1, mu)
    x = column_stabilizer_pair(rep.identity(), lam1, mu, nu)
    assert x.is_identity()


def test_column_stabilizer_sampled(rep_b_z4):
    rep = rep_b_z4
    wm = rep.wm
    rng = SplitMix64(13)
    atoms = [("x", a, v) for a in rep.case.phi for v in rep.ring.elements() if not v.is_zero()]
    ring8 = RingSpec.zmod(8)
    rep8 = get_representation(wm, ring8)
    atoms8 = [("x", a, v) for a in rep.case.phi for v in ring8.elements() if not v.is_zero()]
    for _ in range(25):
        w = sample_word_rng(rep8, atoms8, 5, rng)
        g = rep8.x(rep.case.phi[rng.randrange(len(rep.case.phi))], 1 + rng.randrange(7)).conjugate(w)
        lam1 = wm.lambda1[rng.randrange(len(wm.lambda1))]
        mu = wm.neighbor_in_component(lam1)
        nu = wm.neighbor_in_component(lam1, mu)
        x = column_stabilizer_pair(g, lam1, mu, nu)
        assert stabilizes_column(x, g, lam1)
        assert ring_commutator_identity_holds(x, g)


def test_column_stabilizer_on_the_largest_case(rep_c_z4):
    rep = rep_c_z4
    wm = rep.wm
    rng = SplitMix64(17)
    atoms = [("x", a, v) for a in rep.case.phi for v in rep.ring.elements() if not v.is_zero()]
    for _ in range(5):
        w = sample_word_rng(rep, atoms, 5, rng)
        g = rep.x(rep.case.phi[rng.randrange(len(rep.case.phi))], 1).conjugate(w)
        lam1 = wm.lambda1[rng.randrange(len(wm.lambda1))]
        mu = wm.neighbor_in_component(lam1)
        nu = wm.neighbor_in_component(lam1, mu)
        x = column_stabilizer_pair(g, lam1, mu, nu)
        assert stabilizes_column(x, g, lam1)
        assert ring_commutator_identity_holds(x, g)


def test_column_stabilizer_needs_adjacent_triple(rep_b_z4):
    rep = rep_b_z4
    wm = rep.wm
    lam1 = wm.lambda1[0]
    mu = wm.neighbor_in_component(lam1)
    with pytest.raises(DomainError):
        column_stabilizer_pair(rep.identity(), lam1, mu, lam1)


def test_corner_ideals_block_cases(rep_b_z4):
    rep = rep_b_z4
    wm = rep.wm
    rng = SplitMix64(19)
    lam1 = wm.lambda1[0]
    g = sample_word_rng(rep, _delta_atoms(rep), 5, rng)
    a, b, ap, bp = corner_ideals(g, lam1)
    assert b.is_zero()
    assert bp.is_zero()

    connect = wm.root_between(lam1, wm.lam0)
    g2 = rep.x(connect, 3)
    a2, b2, ap2, bp2 = corner_ideals(g2, lam1)
    assert b2.is_zero()
    assert a2.is_zero()
    assert bp2 == Ideal.from_elems(rep.ring, [rep.ring.el(3)])


def test_corner_bounds_on_level_members(rep_b_z4):
    rep = rep_b_z4
    wm = rep.wm
    sigma = parse_sigma(rep.ring, "(2),(0)")
    atoms = sigma_generator_atoms(rep, sigma)
    rng = SplitMix64(23)
    for _ in range(30):
        base = atoms[rng.randrange(len(atoms))]
        w = sample_word_rng(rep, atoms, 4, rng)
        g = rep.element_from_word((base,)).conjugate(w)
        assert not root_type_failures(g)
        for lam1 in wm.lambda1[:6]:
            a, b, ap, bp = corner_ideals(g, lam1)
            assert (a * b) <= sigma.plus
            assert (ap * bp) <= sigma.minus


# -- transporter and level certificates ------------------------------------------------------------


def test_transporter_examples(rep_b_z4):
    rep = rep_b_z4
    sigma = parse_sigma(rep.ring, "(2),(0)")
    atoms = sigma_generator_atoms(rep, sigma)
    rng = SplitMix64(29)
    g = sample_word_rng(rep, atoms, 6, rng)
    assert transporter_check(g, sigma)
    assert transporter_check(rep.h(rep.case.alpha2, 3), sigma)
    assert not transporter_check(rep.x(rep.case.omega_plus[0], 1), sigma)


def test_certificate_subsystem_only(rep_b_z4):
    rep = rep_b_z4
    target = SigmaPair.zero(rep.ring)
    cert = level_certificate(rep, _delta_atoms(rep), [], target, budget=60, seed=31)
    assert cert.matched and cert.lower == target
    assert cert.normalizer_consistent


def test_certificate_with_extra_generator(rep_b_z4):
    rep = rep_b_z4
    target = parse_sigma(rep.ring, "(2),(0)")
    extra = [rep.x(rep.case.max_root, 2)]
    cert = level_certificate(rep, _delta_atoms(rep), extra, target, budget=200, seed=37)
    assert cert.matched
    assert cert.normalizer_consistent
    for w in cert.witnesses:
        seed_elt = extra[0] if w.trace[0][0] == "seed" else None
        assert replay_trace(rep, w.trace, seed_elt) == rep.x(w.root, w.value)


def test_certificate_of_full_level_generators(rep_b_z4):
    rep = rep_b_z4
    sigma = parse_sigma(rep.ring, "(2),(2)")
    atoms = sigma_generator_atoms(rep, sigma)
    cert = level_certificate(rep, atoms, [], sigma, budget=200, seed=41)
    assert cert.matched and cert.lower == sigma


def test_grown_level_with_unit_generator(rep_b_z4):
    rep = rep_b_z4
    target = parse_sigma(rep.ring, "R,(0)")
    extra = [rep.x(rep.case.max_root, 1)]
    cert = level_certificate(rep, _delta_atoms(rep), extra, target, budget=200, seed=43)
    assert cert.lower.plus.is_unit_ideal()


def test_level_reduction(rep_b_z4):
    rep = rep_b_z4
    two = Ideal.from_elems(rep.ring, [rep.ring.el(2)])
    sigma = parse_sigma(rep.ring, "(2),(0)")
    reduced = sigma.reduce(two)
    assert reduced.plus.is_zero() and reduced.minus.is_zero()
    assert reduced.spec.size == 2
    atoms = sigma_generator_atoms(rep, sigma)
    assert level_reduction_check(rep, atoms, [], sigma, two, seed=47, n_samples=25, budget=200)


def test_reduction_edge_ideals(rep_b_z4):
    rep = rep_b_z4
    sigma = parse_sigma(rep.ring, "(2),(0)")
    zero = Ideal.zero(rep.ring)
    assert sigma.reduce(zero).plus == sigma.plus
    unit = Ideal.unit(rep.ring)
    q = sigma.reduce(unit)
    assert q.spec.size == 1


def test_parse_sigma_formats(rep_b_z4):
    ring = rep_b_z4.ring
    assert parse_sigma(ring, "(2),(0)").plus == Ideal.from_elems(ring, [ring.el(2)])
    assert parse_sigma(ring, "R,(2)").plus.is_unit_ideal()
    with pytest.raises(DomainError):
        parse_sigma(ring, "(2)")
    with pytest.raises(DomainError):
        parse_sigma(ring, "(x),(0)")


def test_machinery_over_truncated_polynomial_ring():
    ring = RingSpec.poly(2, 2)
    rep = representation("b", None, ring)
    t = ring.from_parts([(0, 1)])
    sigma = SigmaPair(Ideal.from_elems(ring, [t]), Ideal.zero(ring))
    atoms = sigma_generator_atoms(rep, sigma)
    rng = SplitMix64(5)
    for _ in range(15):
        g = sample_word_rng(rep, atoms, 5, rng)
        assert in_G_sigma(g, sigma) and in_normalizer(g, sigma)
    assert transporter_check(sample_word_rng(rep, atoms, 5, rng), sigma)
    beta = rep.case.omega_plus[3]
    wit = extract_from_parabolic(rep.x(beta, ring.one), sigma.plus, side=+1)
    assert wit is not None and wit.value not in sigma.plus
    assert replay_trace(rep, wit.trace, rep.x(beta, ring.one)) == rep.x(wit.root, wit.value)
    assert extract_from_parabolic(rep.x(beta, t), sigma.plus, side=+1) is None
    lam1 = rep.wm.lambda1[2]
    sp = sigma_split(rep.wm, lam1)
    res = extract_from_weight_stabilizer(rep.x(sp.plus[0], ring.one), lam1, sigma)
    assert isinstance(res, Witness)
    cert = level_certificate(rep, atoms, [], sigma, budget=100, seed=9)
    assert cert.matched


def test_machinery_over_mixed_modulus_ring():
    ring = RingSpec.zmod(12)
    rep = representation("a", 5, ring)
    sig = SigmaPair(
        Ideal.from_elems(ring, [ring.el(2)]), Ideal.from_elems(ring, [ring.el(3)])
    )
    atoms = sigma_generator_atoms(rep, sig)
    rng = SplitMix64(21)
    for _ in range(15):
        g = sample_word_rng(rep, atoms, 5, rng)
        assert in_G_sigma(g, sig) and in_normalizer(g, sig)
    beta = rep.case.omega_plus[0]
    assert in_G_sigma(rep.x(beta, 2), sig)
    assert not in_G_sigma(rep.x(beta, 3), sig)
    wit = extract_from_parabolic(rep.x(beta, 1), sig.plus, side=+1)
    assert wit is not None
    assert replay_trace(rep, wit.trace, rep.x(beta, 1)) == rep.x(wit.root, wit.value)
    cert = level_certificate(rep, atoms, [], sig, budget=150, seed=31)
    assert cert.matched
    assert sig.reduce(sig.plus).spec.size == 2


def test_level_generator_words_stay_inside(rep_b_z4):
    # level soundness: products of level generators satisfy both the
    # congruence and the normalizer conditions of that level
    rep = rep_b_z4
    for sigma_text in ("(2),(0)", "(0),(2)", "(2),(2)"):
        sigma = parse_sigma(rep.ring, sigma_text)
        atoms = sigma_generator_atoms(rep, sigma)
        rng = SplitMix64(53)
        for _ in range(25):
            g = sample_word_rng(rep, atoms, 1 + rng.randrange(8), rng)
            assert in_G_sigma(g, sigma)
            assert in_normalizer(g, sigma)


def test_extraction_chain_on_the_largest_case(rep_c_z4):
    rep = rep_c_z4
    wm = rep.wm
    sigma = parse_sigma(rep.ring, "(2),(0)")
    rng = SplitMix64(61)
    watoms = [("w", a, rep.ring.one) for a in rep.case.delta]
    for _ in range(10):
        lam1p = wm.lambda1[rng.randrange(len(wm.lambda1))]
        split = sigma_split(wm, lam1p)
        beta = split.plus[rng.randrange(len(split.plus))]
        g = rep.x(beta, 1).conjugate(sample_word_rng(rep, watoms, 3, rng))
        lam1 = next(lam for lam in wm.lambda1 if in_parabolic(g, lam))
        res = extract_from_weight_stabilizer(g, lam1, sigma)
        assert isinstance(res, Witness)
        assert replay_trace(rep, res.trace, g) == rep.x(res.root, res.value)

    b = Ideal.from_elems(rep.ring, [rep.ring.el(2)])
    g = rep.x(rep.case.omega_plus[7], 2) * rep.x(tuple(-x for x in rep.case.omega_plus[11]), 2)
    step = extract_from_nilpotent(g, b)
    res = extract_from_weight_stabilizer(step.element, step.lam1, SigmaPair.zero(rep.ring))
    assert isinstance(res, Witness) and not res.value.is_zero()


def test_extraction_matches_coordinate_scan(rep_b_z4):
    # a witness exists exactly when the unipotent part has a coordinate
    # outside the ideal
    from chevalley.analysis import coords_row

    rep = rep_b_z4
    wm = rep.wm
    ideal = Ideal.from_elems(rep.ring, [rep.ring.el(2)])
    rng = SplitMix64(59)
    omega_atoms = [
        ("x", a, v) for a in rep.case.omega_plus for v in rep.ring.elements() if not v.is_zero()
    ]
    for _ in range(40):
        u = sample_word_rng(rep, omega_atoms, rng.randrange(5), rng)
        l = sample_word_rng(rep, _delta_atoms(rep), rng.randrange(4), rng)
        g = u * l
        coords = coords_row(u, wm.lam0, rep.case.omega_plus)
        expect_witness = any(v not in ideal for v in coords.values())
        wit = extract_from_parabolic(g, ideal, side=+1)
        assert (wit is not None) == expect_witness
