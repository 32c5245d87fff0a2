import json
from fractions import Fraction

import pytest

from npcuboid import (
    CongruentCurve,
    CurveMismatch,
    DegeneratePair,
    InvalidSeed,
    SolutionPair,
    TrivialInput,
    VerticalSecant,
    is_square,
    kummer_map,
    load_seeds,
    point_from_json,
    point_to_json,
    same_parity_pair,
    secant_y_intercept,
)

from helpers import generated_pairs, point_above


@pytest.fixture
def p5(curve5):
    return curve5.point(-4, 6)


class TestOnCurve:
    def test_hand_checkable(self, curve5, p5):
        # (-4)^3 - 25*(-4) = 36 = 6^2
        assert p5.on_curve()

    def test_golden_point(self, curve5):
        assert curve5.point(Fraction(25, 4), Fraction(75, 8)).on_curve()

    def test_off_curve(self, curve5):
        assert not curve5.point(1, 1).on_curve()

    def test_infinity(self, curve5):
        assert curve5.infinity().on_curve()

    def test_trivial_points(self, curve5):
        for x in (0, 5, -5):
            point = curve5.point(x, 0)
            assert point.on_curve()
            assert point.is_trivial

    def test_rejects_bad_curve_parameter(self):
        with pytest.raises(ValueError):
            CongruentCurve(0)
        with pytest.raises(ValueError):
            CongruentCurve(-3)


class TestGroupLaw:
    def test_identity_element(self, curve5, p5):
        infinity = curve5.infinity()
        assert p5.add(infinity) == p5
        assert infinity.add(p5) == p5
        assert infinity.add(infinity) == infinity

    def test_inverse_pair(self, curve5, p5):
        assert p5.add(p5.neg()) == curve5.infinity()

    def test_secant_through_two_torsion(self, curve5, p5):
        # The sum with (0,0) shares its abscissa with the first reflected
        # point and negates its ordinate (the reflection IS the third
        # intersection; the group law reflects it).
        total = p5.add(curve5.point(0, 0))
        assert total == curve5.point(Fraction(25, 4), Fraction(75, 8))
        assert total == p5.reflect_first().neg()

    def test_double_golden(self, curve5, p5):
        doubled = p5.double()
        assert doubled.x == Fraction(1681, 144)
        assert doubled.y == Fraction(-62279, 1728)

    def test_two_torsion_doubles_to_infinity(self, curve5):
        assert curve5.point(0, 0).double() == curve5.infinity()
        assert curve5.point(5, 0).double() == curve5.infinity()

    def test_tangent_abscissa_is_a_square(self, curve5, p5):
        n = curve5.N
        for k in range(1, 5):
            point = p5.mul(k)
            expected = ((point.x ** 2 + n * n) / (2 * point.y)) ** 2
            assert point.double().x == expected

    def test_commutative(self, p5):
        q = p5.double()
        assert p5.add(q) == q.add(p5)

    def test_associative(self, p5):
        points = [p5.mul(k) for k in (1, 2, 3)]
        a, b, c = points
        assert a.add(b).add(c) == a.add(b.add(c))

    def test_curve_mismatch(self, p5):
        with pytest.raises(CurveMismatch):
            p5.add(CongruentCurve(6).point(-3, 9))

    def test_results_stay_on_curve(self, p5):
        for k in range(1, 9):
            assert p5.mul(k).on_curve()


class TestMul:
    def test_one(self, p5):
        assert p5.mul(1) == p5

    def test_two_matches_double(self, curve5, p5):
        assert p5.mul(2) == curve5.point(Fraction(1681, 144), Fraction(-62279, 1728))

    def test_four_is_double_double(self, p5):
        assert p5.mul(4) == p5.double().double()

    def test_zero_is_infinity(self, curve5, p5):
        assert p5.mul(0) == curve5.infinity()

    def test_negative(self, p5):
        assert p5.mul(-3) == p5.mul(3).neg()

    def test_additivity(self, p5):
        for k in range(-3, 4):
            for m in range(-3, 4):
                assert p5.mul(k + m) == p5.mul(k).add(p5.mul(m))

    def test_operator_sugar(self, p5):
        assert 2 * p5 == p5.double()
        assert p5 + (-p5) == p5.curve.infinity()


class TestSecantIntercept:
    def test_three_point_product_identity(self, p5):
        doubled = p5.double()
        tripled = p5.add(doubled)
        d = secant_y_intercept(p5, doubled)
        assert p5.x * doubled.x * tripled.x == d * d

    def test_axis_points(self, curve5):
        assert secant_y_intercept(curve5.point(0, 0), curve5.point(5, 0)) == 0

    def test_vertical_rejected(self, curve5, p5):
        with pytest.raises(VerticalSecant):
            secant_y_intercept(p5, curve5.point(-4, -6))
        with pytest.raises(VerticalSecant):
            secant_y_intercept(p5, curve5.infinity())

    def test_identity_across_seed_curves(self, seeds):
        for seed in seeds:
            for k in (1, 2, 3):
                p = seed.mul(k)
                q = p.double()
                d = secant_y_intercept(p, q)
                assert p.x * q.x * p.add(q).x == d * d


class TestReflections:
    def test_first_golden(self, curve5, p5):
        assert p5.reflect_first() == curve5.point(Fraction(25, 4), Fraction(-75, 8))

    def test_first_is_involution_on_x(self, curve5, p5):
        image = p5.reflect_first()
        assert image.reflect_first().x == p5.x

    def test_second_direct_substitution(self, curve5, p5):
        assert p5.reflect_second() == curve5.point(Fraction(-5, 9), Fraction(100, 27))

    def test_second_matches_inversion_pair(self):
        # On N=34 the second reflection carries 833/16 to 162: the third
        # recovered pair of the 672/153/104 cuboid.
        point = point_above(CongruentCurve(34), Fraction(833, 16))
        assert point.reflect_second().x == 162

    def test_third_matches_inversion_pair(self):
        point = point_above(CongruentCurve(34), Fraction(833, 16))
        assert point.reflect_third().x == Fraction(-578, 81)

    def test_third_is_involution_on_x(self, seeds):
        for seed in seeds:
            for k in (1, 2, 3):
                point = seed.mul(k)
                assert point.reflect_third().reflect_third().x == point.x

    def test_composition_of_first_and_second(self, p5):
        composed = p5.reflect_first().reflect_second()
        assert composed.x == p5.reflect_third().x

    def test_images_stay_on_curve(self, seeds):
        for seed in seeds:
            for image in (seed.reflect_first(), seed.reflect_second(), seed.reflect_third()):
                assert image.on_curve()

    def test_poles_rejected(self, curve5):
        with pytest.raises(TrivialInput):
            curve5.point(0, 0).reflect_first()
        with pytest.raises(TrivialInput):
            curve5.point(5, 0).reflect_second()
        with pytest.raises(TrivialInput):
            curve5.point(-5, 0).reflect_third()


class TestSameParityPair:
    def test_even_pair(self, p5):
        pair = same_parity_pair(p5, 2, 4)
        assert is_square(pair.P.x * pair.Q.x)

    def test_odd_pair(self, p5):
        pair = same_parity_pair(p5, 1, 3)
        assert is_square(pair.P.x * pair.Q.x)

    def test_parity_mismatch(self, p5):
        with pytest.raises(DegeneratePair):
            same_parity_pair(p5, 1, 2)

    def test_equal_or_zero_multipliers(self, p5):
        with pytest.raises(DegeneratePair):
            same_parity_pair(p5, 3, 3)
        with pytest.raises(DegeneratePair):
            same_parity_pair(p5, 0, 2)

    def test_opposite_multipliers_share_abscissa(self, p5):
        with pytest.raises(DegeneratePair):
            same_parity_pair(p5, -2, 2)

    def test_trivial_base_point(self, curve5):
        with pytest.raises(DegeneratePair):
            same_parity_pair(curve5.point(0, 0), 1, 3)

    def test_square_products_for_all_parity_pairs(self, p5):
        # 1 <= k < m <= 8, same parity: twelve pairs, all square products.
        checked = 0
        for k in range(1, 8):
            for m in range(k + 2, 9, 2):
                pair = same_parity_pair(p5, k, m)
                assert is_square(pair.P.x * pair.Q.x)
                checked += 1
        assert checked == 12


class TestSolutionPair:
    def test_rejects_non_square_product(self, curve5, p5):
        with pytest.raises(DegeneratePair):
            SolutionPair(p5, p5.double())  # product is negative

    def test_rejects_trivial_points(self, curve5, p5):
        with pytest.raises(DegeneratePair):
            SolutionPair(p5, curve5.point(0, 0))

    def test_rejects_equal_abscissae(self, p5):
        with pytest.raises(DegeneratePair):
            SolutionPair(p5, p5.neg())

    def test_rejects_off_curve_points(self, curve5):
        with pytest.raises(DegeneratePair):
            SolutionPair(curve5.point(1, 1), curve5.point(4, 2))

    def test_rejects_curve_mismatch(self, p5):
        with pytest.raises(CurveMismatch):
            SolutionPair(p5, CongruentCurve(6).point(-3, 9))

    def test_swapped(self, golden_pair):
        swapped = golden_pair.swapped()
        assert swapped.P == golden_pair.Q and swapped.Q == golden_pair.P


class TestKummerMap:
    def test_golden_pair(self, golden_pair):
        xi, zeta, eta = kummer_map(golden_pair)
        assert (xi, zeta) == (Fraction(5, 4), Fraction(1681, 720))
        assert eta == Fraction(62279, 23040)
        assert eta * eta == xi * zeta * (xi * xi - 1) * (zeta * zeta - 1)

    def test_identity_over_generated_pairs(self, seeds):
        count = 0
        for pair in generated_pairs(seeds, max_multiple=6):
            xi, zeta, eta = kummer_map(pair)
            assert eta * eta == xi * zeta * (xi * xi - 1) * (zeta * zeta - 1)
            assert eta != 0 and xi != zeta
            count += 1
        assert count >= 20


class TestSerialization:
    def test_point_round_trip(self, p5):
        assert point_from_json(point_to_json(p5)) == p5

    def test_infinity_round_trip(self, curve5):
        record = point_to_json(curve5.infinity())
        assert record == {"N": 5, "infinity": True}
        assert point_from_json(record) == curve5.infinity()

    def test_default_seeds(self, seeds):
        assert [s.curve.N for s in seeds] == [5, 6, 7, 34]
        for seed in seeds:
            assert seed.on_curve() and not seed.is_trivial

    def test_seed_file_loading(self, tmp_path):
        path = tmp_path / "seeds.jsonl"
        path.write_text(json.dumps({"N": 5, "x": "-4", "y": "6"}) + "\n")
        assert load_seeds(path)[0].x == -4

    def test_invalid_seed_rejected(self, tmp_path):
        path = tmp_path / "seeds.jsonl"
        path.write_text(json.dumps({"N": 5, "x": "1", "y": "1"}) + "\n")
        with pytest.raises(InvalidSeed):
            load_seeds(path)

    def test_malformed_seed_rejected(self, tmp_path):
        path = tmp_path / "seeds.jsonl"
        path.write_text('{"N": 5}\n')
        with pytest.raises(InvalidSeed):
            load_seeds(path)
