import pytest

from chevalley.errors import DomainError, NonUnitError, SpecMismatchError
from chevalley.rings import Factor, Ideal, RingElem, RingSpec, named_ring


def test_zmod_splits_into_prime_powers():
    spec = RingSpec.zmod(12)
    kinds = [(f.kind, f.p, f.k) for f in spec.factors]
    assert kinds == [("zmod", 2, 2), ("zmod", 3, 1)]
    assert spec.size == 12


def test_modular_addition():
    spec = RingSpec.zmod(12)
    assert spec.el(7) + spec.el(8) == spec.el(3)


def test_zero_absorbs():
    spec = RingSpec.zmod(12)
    for x in spec.elements():
        assert spec.zero * x == spec.zero


def test_poly_quotient_relation():
    spec = RingSpec.poly(2, 2)
    t = spec.from_parts([(0, 1)])
    assert t * t == spec.zero


def test_unit_and_inverse_in_z12():
    spec = RingSpec.zmod(12)
    five = spec.el(5)
    assert five.is_unit()
    assert five.inv() == five
    assert five * five.inv() == spec.one
    two = spec.el(2)
    assert not two.is_unit()
    with pytest.raises(NonUnitError):
        two.inv()


def test_poly_inverse():
    spec = RingSpec.poly(3, 2)
    x = spec.from_parts([(1, 1)])  # 1 + t
    assert x.is_unit()
    assert x.inv() == spec.from_parts([(1, -1)])
    assert x * x.inv() == spec.one


def test_integers_invert_only_units():
    spec = RingSpec.integers()
    assert spec.el(-1).inv() == spec.el(-1)
    with pytest.raises(NonUnitError):
        spec.el(2).inv()


def test_spec_mismatch_raises():
    a = RingSpec.zmod(4).el(1)
    b = RingSpec.zmod(8).el(1)
    with pytest.raises(SpecMismatchError):
        a + b


def test_ideal_from_single_generator_in_z12():
    spec = RingSpec.zmod(12)
    ideal = Ideal.from_elems(spec, [spec.el(8)])
    # 8 has valuation 2 at the prime 2 and is a unit at 3
    assert ideal == Ideal(spec, (2, 0))
    gen = ideal.generator()
    assert gen == spec.el(4)


def test_ideal_product_in_z12():
    spec = RingSpec.zmod(12)
    two = Ideal.from_elems(spec, [spec.el(2)])
    three = Ideal.from_elems(spec, [spec.el(3)])
    assert (two * three).generator() == spec.el(6)


def test_intersection_square_in_z4():
    spec = RingSpec.zmod(4)
    two = Ideal.from_elems(spec, [spec.el(2)])
    zero = Ideal.zero(spec)
    assert ((two & zero) * (two & zero)).is_zero()


def test_quotient_map_examples():
    z4 = RingSpec.zmod(4)
    two = Ideal.from_elems(z4, [z4.el(2)])
    image = two.reduce_elem(z4.el(3))
    assert image.spec.size == 2
    assert image == image.spec.el(1)

    zero = Ideal.zero(z4)
    assert zero.reduce_elem(z4.el(3)).parts == z4.el(3).parts

    unit = Ideal.unit(z4)
    q = unit.quotient_spec()
    assert q.size == 1
    assert unit.reduce_elem(z4.el(3)) == q.zero == q.one


@pytest.mark.parametrize(
    "spec",
    [RingSpec.zmod(12), RingSpec.poly(2, 3), RingSpec((Factor("zmod", 2, 2), Factor("poly", 3, 2)))],
)
def test_every_ideal_reached_from_its_generator(spec):
    from itertools import product

    ranges = [range(f.k + 1) for f in spec.factors]
    for parts in product(*ranges):
        ideal = Ideal(spec, parts)
        assert Ideal.from_elems(spec, [ideal.generator()]) == ideal


@pytest.mark.parametrize("n, j", [(12, 2), (8, 2), (9, 3)])
def test_quotient_map_is_a_ring_homomorphism(n, j):
    spec = RingSpec.zmod(n)
    ideal = Ideal.from_elems(spec, [spec.el(j)])
    elements = list(spec.elements())
    for x in elements:
        for y in elements:
            assert ideal.reduce_elem(x + y) == ideal.reduce_elem(x) + ideal.reduce_elem(y)
            assert ideal.reduce_elem(x * y) == ideal.reduce_elem(x) * ideal.reduce_elem(y)


def test_ideal_containments():
    from itertools import product

    spec = RingSpec((Factor("zmod", 2, 3), Factor("zmod", 3, 1)))
    ideals = [Ideal(spec, parts) for parts in product(range(4), range(2))]
    for i in ideals:
        assert i.contains(i.square())
        for j in ideals:
            assert (i * j).contains(((i & j) * (i & j)))


def test_ideal_element_membership():
    spec = RingSpec.zmod(8)
    ideal = Ideal.from_elems(spec, [spec.el(4)])
    assert spec.el(4) in ideal
    assert spec.el(0) in ideal
    assert spec.el(2) not in ideal
    assert list(v.parts[0] for v in ideal.elements()) == [0, 4]


def test_integer_ideal_arithmetic():
    spec = RingSpec.integers()
    four = Ideal.from_elems(spec, [spec.el(4)])
    six = Ideal.from_elems(spec, [spec.el(6)])
    assert (four + six) == Ideal.from_elems(spec, [spec.el(2)])
    assert (four & six) == Ideal.from_elems(spec, [spec.el(12)])
    assert (four * six) == Ideal.from_elems(spec, [spec.el(24)])
    assert spec.el(8) in four
    assert spec.el(2) not in four
    q = four.quotient_spec()
    assert q.size == 4


def test_named_rings():
    assert named_ring("z8").describe() == "Z/8"
    assert named_ring("f2t2").describe() == "F2[t]/(t^2)"
    assert named_ring("int").describe() == "Z"
    with pytest.raises(DomainError):
        named_ring("bogus")


def test_serialization_roundtrip():
    spec = RingSpec((Factor("zmod", 2, 2), Factor("poly", 3, 2)))
    assert RingSpec.from_json(spec.to_json()) == spec
    x = spec.from_parts([3, (1, 2)])
    assert RingElem.from_json(spec, x.to_json()) == x
    ideal = Ideal(spec, (1, 1))
    assert Ideal.from_json(spec, ideal.to_json()) == ideal
