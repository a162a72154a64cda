import pytest
from hypothesis import given, settings, strategies as st

import ispaces as I
from ispaces import BetweennessTable, HypothesisNotMetError, validate
from ispaces.properties import (
    antisymmetry_conditions,
    property_report,
    resolve_properties,
    transitivity_conditions,
)

import naive
from conftest import space_strategy


@pytest.fixture(scope="module")
def non_stiff_3():
    # the two orbits <0,1,2>/<2,1,0> and <1,2,0>/<0,2,1> set true
    return validate(BetweennessTable.completed(3, [(0, 1, 2), (1, 2, 0)]))


@pytest.fixture(scope="module")
def single():
    return I.linear_order_space(1)


class TestNamedProperties:
    def test_single_point_vacuous(self, single):
        report = property_report(single)
        assert all(v is True for v in report.flags.values())

    def test_chain_properties(self, l3):
        assert I.is_point_transitive(l3)
        assert I.is_point_antisymmetric(l3)
        assert I.is_interval_transitive(l3)
        assert I.is_interval_antisymmetric(l3)
        assert I.is_interval_convex(l3)
        assert I.is_stiff(l3)

    def test_non_stiff_example(self, non_stiff_3):
        assert I.stiffness_witness(non_stiff_3) == (0, 1, 2, 0)
        assert not I.is_stiff(non_stiff_3)

    def test_k23_interval_convexity_witness(self, k23):
        witness = I.interval_convexity_witness(k23)
        assert witness == (2, 3, 0, 1, 4)
        assert naive.witness_falsifies(k23, "interval-convex", witness)

    def test_k23_interval_transitivity_fails(self, k23):
        assert not I.is_interval_transitive(k23)
        assert naive.witness_falsifies(k23, "C1", I.interval_transitivity_witness(k23))

    @given(space_strategy(max_n=4))
    @settings(max_examples=80)
    def test_checkers_match_naive(self, space):
        assert I.is_point_transitive(space) == naive.point_transitive(space)
        assert I.is_point_antisymmetric(space) == naive.point_antisymmetric(space)
        assert I.is_interval_transitive(space) == naive.interval_transitive(space)
        assert I.is_interval_antisymmetric(space) == naive.interval_antisymmetric(space)
        assert I.is_interval_convex(space) == naive.interval_convex(space)
        assert I.is_stiff(space) == naive.stiff(space)

    @given(space_strategy(max_n=5))
    @settings(max_examples=60)
    def test_interval_transitive_implies_point_transitive(self, space):
        if I.is_interval_transitive(space):
            assert I.is_point_transitive(space)


class TestTransitivityConditions:
    def test_chain_all_true(self, l3):
        cv = transitivity_conditions(l3)
        assert cv.values == (True,) * 9
        assert cv.all_equal() and cv.witnesses == {}

    def test_k23_all_false_and_agreeing(self, k23):
        cv = transitivity_conditions(k23)
        assert cv.values == (False,) * 9
        assert cv.all_equal()
        for name, witness in cv.witnesses.items():
            assert naive.witness_falsifies(k23, name, witness)

    @given(space_strategy(max_n=3))
    @settings(max_examples=30)
    def test_against_naive_vector(self, space):
        cv = transitivity_conditions(space)
        assert cv.values == naive.transitivity_vector(space)

    @pytest.mark.parametrize("encoding", [0, 1, 25, 100, 777, 2048, 4095])
    def test_against_naive_vector_n4(self, encoding):
        # full brute-force route at the exhaustive-verification size,
        # including the (2^4)^3 subset-triple conditions
        space = I.free_orbit_encoding(4).decode(encoding)
        cv = transitivity_conditions(space)
        assert cv.values == naive.transitivity_vector(space)

    @given(space_strategy(max_n=4))
    @settings(max_examples=60)
    def test_logical_weakenings(self, space):
        flags = transitivity_conditions(space).flags()
        if flags["C5"]:
            assert flags["C4"]
        if flags["C3"]:
            assert flags["C2"]

    def test_semigroup_skip(self, l3):
        cv = transitivity_conditions(l3, semigroup_conditions=False)
        assert cv.values[3] is None and cv.values[4] is None
        assert cv.skipped == ("C4", "C5")
        assert cv.all_equal()
        assert cv.flags()["C4"] is None

    def test_skipped_by_cap(self):
        # a dense space keeps the convex family tiny, so only the subset
        # lattice size matters here
        big = I.random_space(11, seed=0, density=1.0)
        cv = transitivity_conditions(big)
        assert cv.skipped == ("C4", "C5")
        assert cv.all_equal()


class TestAntisymmetryConditions:
    def test_chain_all_true(self, l3):
        dv = antisymmetry_conditions(l3)
        assert dv.values == (True,) * 5
        assert dv.hypothesis_met

    def test_hypothesis_enforced(self, k23):
        with pytest.raises(HypothesisNotMetError):
            antisymmetry_conditions(k23)
        dv = antisymmetry_conditions(k23, allow_non_interval_transitive=True)
        assert not dv.hypothesis_met

    @given(space_strategy(max_n=3))
    @settings(max_examples=30)
    def test_against_naive_vector(self, space):
        dv = antisymmetry_conditions(space, allow_non_interval_transitive=True)
        assert dv.values == naive.antisymmetry_vector(space)

    def test_equivalence_can_fail_without_hypothesis(self):
        # regression: exhaustive n <= 4 count of non-interval-transitive
        # spaces whose D values disagree, and the first such space
        disagreeing = 0
        first = None
        for n in (3, 4):
            for index, space in enumerate(I.enumerate_spaces(n)):
                if I.is_interval_transitive(space):
                    continue
                dv = antisymmetry_conditions(space, allow_non_interval_transitive=True)
                if not dv.all_equal():
                    disagreeing += 1
                    if first is None:
                        first = (n, index, dv.values)
        assert disagreeing == 56
        assert first == (4, 25, (True, True, True, False, False))


class TestRationalSamples:
    def test_qualifying_samples_satisfy_all_antisymmetry_conditions(self, triangle):
        collinear = I.vector_space_on_points([(i,) for i in range(5)])
        for space in (triangle, collinear):
            assert I.is_interval_transitive(space)
            assert I.antisymmetry_conditions(space).values == (True,) * 5

    def test_witness_conditions_not_inherited_by_samples(self):
        # the ambient plane satisfies every condition, but a finite sample
        # need not: the 3x3 grid lacks the witnesses interval-transitivity
        # asks for, so results are reported per sample, never extrapolated
        grid = I.vector_space_on_points([(x, y) for x in range(3) for y in range(3)])
        assert I.is_point_transitive(grid) and I.is_stiff(grid)
        assert not I.is_interval_transitive(grid)


class TestPropositions:
    def test_exhaustive_small(self):
        for n in (1, 2, 3):
            for space in I.enumerate_spaces(n):
                assert I.check_base_interval_transitivity_prop(space)
                assert I.check_base_interval_antisymmetry_prop(space)
                assert I.check_stiff_implies_convex_antisymmetry(space)

    @given(space_strategy(min_n=4, max_n=5))
    @settings(max_examples=60)
    def test_sampled(self, space):
        assert I.check_base_interval_transitivity_prop(space)
        assert I.check_base_interval_antisymmetry_prop(space)
        assert I.check_stiff_implies_convex_antisymmetry(space)

    def test_vacuous_when_not_point_transitive(self):
        space = next(s for s in I.enumerate_spaces(4) if not I.is_point_transitive(s))
        assert I.base_interval_antisymmetry_prop_witness(space) is None


class TestWitnessSoundness:
    @given(space_strategy(max_n=4))
    @settings(max_examples=60)
    def test_every_false_flag_has_sound_witness(self, space):
        report = property_report(space)
        for name, value in report.flags.items():
            if value is False:
                assert name in report.witnesses, f"missing witness for {name}"
                assert naive.witness_falsifies(space, name, report.witnesses[name]), (
                    name,
                    report.witnesses[name],
                )
            elif value is True:
                assert name not in report.witnesses


class TestPropertyReport:
    def test_selected_names_only(self, k23):
        report = property_report(k23, ["stiff", "interval-convex"], include_conditions=False)
        assert set(report.flags) == {"stiff", "interval-convex"}

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError, match="unknown property"):
            resolve_properties(["no-such-property"])

    def test_hypothesis_note_recorded(self, k23):
        report = property_report(k23)
        assert "antisymmetry-conditions" in report.notes
        assert report.flags["D1"] in (True, False)

    def test_registry_covers_documented_names(self):
        assert set(I.PROPERTY_NAMES) | set(I.CLOSURE_FLAG_NAMES) == set(I.PROPERTY_CHECKS)
