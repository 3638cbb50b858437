"""Ring catalog arithmetic, homomorphisms, and the expression grammar."""

import itertools

import pytest

from ringcode.errors import GuardExceeded, ParseError
from ringcode.rings import (
    DualNumbers,
    GaloisField,
    IntegersMod,
    PrimeField,
    Product,
    RingElement,
    add,
    apply_hom,
    canonicalize,
    characteristic,
    dual_augmentation,
    element,
    elements,
    find_irreducible,
    format_element,
    format_ring,
    galois_field,
    inverse,
    mod_reduction,
    mul,
    neg,
    one,
    parse_element,
    parse_ring,
    poly_is_irreducible,
    projection,
    ring_size,
    smallest_generator,
    subring_inclusion,
    zero,
)

GF2 = PrimeField(2)
GF3 = PrimeField(3)
GF4 = galois_field(2, 2)
Z4 = IntegersMod(4)
Z12 = IntegersMod(12)
D2 = DualNumbers(2)
D3 = DualNumbers(3)


class TestFindIrreducible:
    def test_degree_one_is_x(self):
        assert find_irreducible(2, 1) == (0, 1)
        assert find_irreducible(7, 1) == (0, 1)

    def test_gf4_modulus(self):
        # exhaustive check: x^2, x^2+x, x^2+1 all have roots in GF(2)
        for c0, c1 in [(0, 0), (0, 1), (1, 0)]:
            assert not poly_is_irreducible((c0, c1, 1), 2)
        assert find_irreducible(2, 2) == (1, 1, 1)

    def test_gf9_modulus(self):
        # smaller monic quadratics over GF(3) all have roots
        assert find_irreducible(3, 2) == (1, 0, 1)

    def test_deterministic_and_irreducible(self):
        for p, k in [(2, 3), (2, 8), (3, 3), (5, 2), (7, 2)]:
            m = find_irreducible(p, k)
            assert m == find_irreducible(p, k)
            assert len(m) == k + 1 and m[-1] == 1
            assert poly_is_irreducible(m, p)

    def test_size_guard(self):
        with pytest.raises(GuardExceeded):
            find_irreducible(2, 21)


class TestElements:
    def test_integers_mod(self):
        assert [e.payload for e in elements(Z4)] == [0, 1, 2, 3]

    def test_dual_numbers_order(self):
        assert [e.payload for e in elements(D2)] == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert [format_element(e) for e in elements(D2)] == ["0", "x", "1", "1+x"]

    def test_product_lex(self):
        prod = Product((GF2, GF3))
        got = [(a.payload, b.payload) for a, b in (e.payload for e in elements(prod))]
        assert got == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]

    def test_count_matches_size(self):
        for spec in (GF4, Z12, D3, Product((GF4, GF3))):
            assert len(elements(spec)) == ring_size(spec)

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            elements(IntegersMod(2**20 + 1))


class TestArithmetic:
    def test_gf4_x_squared(self):
        x = RingElement(GF4, (0, 1))
        assert mul(x, x).payload == (1, 1)  # x^2 = x + 1 mod x^2+x+1

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_dual_x_squared_is_zero(self, p):
        d = DualNumbers(p)
        x = RingElement(d, (0, 1))
        assert mul(x, x) == zero(d)

    def test_z12_add(self):
        assert add(RingElement(Z12, 7), RingElement(Z12, 8)).payload == 3

    def test_owner_mismatch(self):
        with pytest.raises(ValueError):
            add(RingElement(GF2, 1), RingElement(GF3, 1))

    def test_operator_sugar(self):
        a, b = RingElement(Z12, 7), RingElement(Z12, 8)
        assert (a + b).payload == 3
        assert (a * b).payload == 8
        assert (-a).payload == 5
        assert (a - b).payload == 11


class TestCharacteristic:
    @pytest.mark.parametrize(
        "spec,expected",
        [
            (Z12, 12),
            (galois_field(2, 5), 2),
            (Product((galois_field(2, 3), GF4)), 2),
            (Product((Z4, GF3)), 12),
            (D3, 3),
        ],
    )
    def test_values(self, spec, expected):
        assert characteristic(spec) == expected

    def test_divides_size(self):
        for spec in (GF2, GF4, Z12, D3, Product((Z4, GF3)), galois_field(3, 3)):
            assert ring_size(spec) % characteristic(spec) == 0


class TestInverse:
    def test_z12(self):
        assert inverse(RingElement(Z12, 5)).payload == 5
        assert inverse(RingElement(Z12, 4)) is None

    def test_gf4(self):
        x = RingElement(GF4, (0, 1))
        assert inverse(x).payload == (1, 1)

    def test_every_nonzero_field_element(self):
        for spec in (GF4, galois_field(2, 3), galois_field(3, 2), PrimeField(7)):
            units = 0
            for a in elements(spec):
                inv = inverse(a)
                if a == zero(spec):
                    assert inv is None
                else:
                    units += 1
                    assert mul(a, inv) == one(spec)
            assert units == ring_size(spec) - 1

    def test_dual_numbers(self):
        d = DualNumbers(3)
        a = RingElement(d, (2, 1))
        assert mul(a, inverse(a)) == one(d)
        assert inverse(RingElement(d, (0, 1))) is None

    def test_product_componentwise(self):
        prod = Product((Z4, GF3))
        a = element(prod, (3, 2))
        assert mul(a, inverse(a)) == one(prod)
        assert inverse(element(prod, (2, 1))) is None


class TestHoms:
    def test_mod_reduction(self):
        h = mod_reduction(Z12, Z4)
        assert apply_hom(h, RingElement(Z12, 7)).payload == 3
        with pytest.raises(ValueError):
            mod_reduction(Z4, IntegersMod(8))

    def test_dual_augmentation(self):
        h = dual_augmentation(3)
        assert apply_hom(h, RingElement(D3, (2, 1))).payload == 2

    def test_projection(self):
        prod = Product((galois_field(2, 3), GF4))
        h = projection(prod, 1)
        u = elements(prod)[7]
        assert apply_hom(h, u) == u.payload[1]

    def test_owner_check(self):
        h = dual_augmentation(3)
        with pytest.raises(ValueError):
            apply_hom(h, RingElement(D2, (1, 0)))

    def test_surjective_kinds_cover_target(self):
        cases = [
            mod_reduction(Z12, Z4),
            dual_augmentation(2),
            projection(Product((GF2, GF3)), 1),
        ]
        for h in cases:
            image = {apply_hom(h, a).payload for a in elements(h.source)}
            assert len(image) == ring_size(h.target)

    def test_hom_laws_exhaustive_small(self):
        homs = [
            mod_reduction(Z12, Z4),
            mod_reduction(Z12, GF3),
            dual_augmentation(3),
            projection(Product((Z4, GF3)), 0),
            subring_inclusion(GF2, GF4),
            subring_inclusion(GF4, galois_field(2, 4)),
            subring_inclusion(GF3, galois_field(3, 2)),
            subring_inclusion(GF2, D2),
        ]
        for h in homs:
            src = elements(h.source)
            assert apply_hom(h, zero(h.source)) == zero(h.target)
            assert apply_hom(h, one(h.source)) == one(h.target)
            for a, b in itertools.product(src, src):
                assert apply_hom(h, add(a, b)) == add(apply_hom(h, a), apply_hom(h, b))
                assert apply_hom(h, mul(a, b)) == mul(apply_hom(h, a), apply_hom(h, b))

    def test_subring_injective(self):
        h = subring_inclusion(galois_field(2, 3), galois_field(2, 6))
        images = {apply_hom(h, a).payload for a in elements(h.source)}
        assert len(images) == 8

    def test_inclusion_then_retraction_is_identity(self):
        for p in (2, 3, 5):
            f = PrimeField(p)
            inc = subring_inclusion(f, DualNumbers(p))
            aug = dual_augmentation(p)
            for a in elements(f):
                assert apply_hom(aug, apply_hom(inc, a)) == a

    def test_inclusion_sends_a_generator_to_subgroup_generator(self):
        src, tgt = GF4, galois_field(2, 4)
        h = subring_inclusion(src, tgt)
        g = smallest_generator(tgt)
        t = g
        for _ in range(4):  # g^(15/3) = g^5
            t = mul(t, g)
        images = {apply_hom(h, a) for a in elements(src)}
        assert t in images

    def test_unsupported_pair(self):
        with pytest.raises(ValueError):
            subring_inclusion(GF3, GF4)
        with pytest.raises(ValueError):
            subring_inclusion(GF4, galois_field(2, 3))


class TestCanonicalize:
    def test_flatten_and_sort(self):
        spec = Product((Product((GF4,)), galois_field(2, 3)))
        assert canonicalize(spec) == Product((galois_field(2, 3), GF4))

    def test_identity_on_scalars(self):
        assert canonicalize(PrimeField(5)) == PrimeField(5)

    def test_sort_by_prime_then_exponent(self):
        spec = Product((GF3, GF4, GF2))
        assert canonicalize(spec) == Product((GF4, GF2, GF3))

    def test_non_fields_follow_in_order(self):
        spec = Product((Z4, GF3, D2))
        assert canonicalize(spec) == Product((GF3, Z4, D2))

    def test_idempotent(self):
        spec = Product((GF3, Product((GF4, Z4)), GF2))
        assert canonicalize(canonicalize(spec)) == canonicalize(spec)


class TestAxiomsSmall:
    """Exhaustive ring laws for a few small rings; the full <=512 sweep runs
    in the acceptance suite."""

    @pytest.mark.parametrize(
        "spec", [GF4, Z4, IntegersMod(6), D2, D3, Product((GF2, GF3))]
    )
    def test_laws(self, spec):
        els = elements(spec)
        z, u = zero(spec), one(spec)
        for a in els:
            assert add(a, neg(a)) == z
            assert mul(u, a) == a
            assert mul(z, a) == z
        for a, b in itertools.product(els, els):
            assert add(a, b) == add(b, a)
            assert mul(a, b) == mul(b, a)
        for a, b, c in itertools.product(els, els, els):
            assert add(add(a, b), c) == add(a, add(b, c))
            assert mul(mul(a, b), c) == mul(a, mul(b, c))
            assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


class TestExpressionGrammar:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("GF(4)", GF4),
            ("GF(2^2)", GF4),
            ("GF(7)", PrimeField(7)),
            ("Z(12)", Z12),
            ("D(3)", D3),
            ("GF(8)xGF(4)", Product((galois_field(2, 3), GF4))),
            (" Z(4) x GF(3) ", Product((Z4, GF3))),
            ("gf(2)Xgf(3)", Product((GF2, GF3))),
        ],
    )
    def test_parse(self, text, expected):
        assert parse_ring(text) == expected

    def test_round_trip(self):
        for text in ["GF(2^5)", "GF(8)xGF(4)", "Z(6)", "D(5)", "Z(4)xGF(3)xD(2)"]:
            assert format_ring(parse_ring(text)) in (
                text,
                text.replace("GF(8)", "GF(2^3)").replace("GF(4)", "GF(2^2)"),
            )

    def test_error_offsets(self):
        with pytest.raises(ParseError) as err:
            parse_ring("GF(6)")
        assert err.value.offset == 0
        with pytest.raises(ParseError) as err:
            parse_ring("GF(4)xQ(3)")
        assert err.value.offset == 6
        with pytest.raises(ParseError) as err:
            parse_ring("Z(1)")
        assert err.value.offset == 0
        with pytest.raises(ParseError) as err:
            parse_ring("GF(4) junk")
        assert err.value.offset == 6

    def test_whitespace_insensitive(self):
        assert parse_ring("GF( 8 ) x GF( 4 )") == parse_ring("GF(8)xGF(4)")


class TestElementText:
    def test_round_trip(self):
        for spec in (Z12, GF4, galois_field(3, 3), D3, Product((GF4, GF3))):
            for el in elements(spec):
                assert parse_element(format_element(el), spec) == el

    def test_accepts_reordered_terms(self):
        assert parse_element("x+1", GF4).payload == (1, 1)
        assert parse_element("1+x", GF4).payload == (1, 1)
        assert parse_element("2*x+1", galois_field(3, 2)).payload == (1, 2)

    def test_rejects_bad(self):
        with pytest.raises(ValueError):
            parse_element("x^5", GF4)
        with pytest.raises(ValueError):
            parse_element("7", Z4)


class TestValidatingConstructor:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            element(Z4, 4)
        with pytest.raises(ValueError):
            element(GF4, (0, 2))
        with pytest.raises(ValueError):
            element(GF4, (0,))

    def test_product_components(self):
        prod = Product((GF2, GF3))
        el = element(prod, (1, 2))
        assert el.payload[0].ring == GF2
        with pytest.raises(ValueError):
            element(prod, (1, 3))


class TestSpecValidation:
    def test_galois_rejects_reducible_modulus(self):
        with pytest.raises(ValueError):
            GaloisField(2, 2, (0, 0, 1))

    def test_prime_checks(self):
        with pytest.raises(ValueError):
            PrimeField(6)
        with pytest.raises(ValueError):
            DualNumbers(4)
        with pytest.raises(ValueError):
            IntegersMod(1)
        with pytest.raises(ValueError):
            Product(())
