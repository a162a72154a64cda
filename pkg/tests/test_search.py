import json

import pytest
from hypothesis import given, settings, strategies as st

import ispaces as I
from ispaces import (
    CapExceededError,
    ExhaustivePopulation,
    SampledPopulation,
    enumerate_spaces,
    find_separating,
    free_orbit_encoding,
    random_space,
    verify_antisymmetry_theorem,
    verify_transitivity_theorem,
)

import naive


class TestFreeOrbitEncoding:
    def test_orbit_counts(self):
        for n in range(1, 7):
            assert free_orbit_encoding(n).orbit_count == n * (n - 1) * (n - 2) // 2

    def test_decode_encode_roundtrip_exhaustive(self):
        for n in (1, 2, 3, 4):
            enc = free_orbit_encoding(n)
            for bits in range(enc.space_count):
                assert enc.encode(enc.decode(bits)) == bits

    @given(st.integers(0, free_orbit_encoding(5).space_count - 1))
    @settings(max_examples=80)
    def test_decoded_tables_validate(self, bits):
        space = free_orbit_encoding(5).decode(bits)
        assert I.axiom_violations(space.table) == []

    def test_decode_range_checked(self):
        enc = free_orbit_encoding(3)
        with pytest.raises(ValueError):
            enc.decode(8)
        with pytest.raises(ValueError):
            enc.decode(-1)

    def test_encode_checks_universe(self, l3):
        with pytest.raises(ValueError):
            free_orbit_encoding(4).encode(l3)

    def test_encoding_of_known_space(self, l3):
        # L3 has exactly the <0,1,2> orbit set: first orbit in lex order
        assert free_orbit_encoding(3).encode(l3) == 1


class TestEnumerateSpaces:
    def test_counts(self):
        assert [sum(1 for _ in enumerate_spaces(n)) for n in (1, 2, 3, 4)] == [1, 1, 8, 4096]

    def test_all_distinct_and_valid(self):
        seen = {s.table.bits for s in enumerate_spaces(3)}
        assert len(seen) == 8

    def test_cross_check_against_raw_symmetry_filter(self):
        # independent route: all 2^6 assignments of the six pairwise-distinct
        # triples at n=3, kept iff middle-symmetric
        distinct = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)
                    if len({a, b, c}) == 3]
        assert len(distinct) == 6
        valid = set()
        for bits in range(1 << 6):
            chosen = {t for k, t in enumerate(distinct) if (bits >> k) & 1}
            if all((c, b, a) in chosen for (a, b, c) in chosen):
                table = I.BetweennessTable.completed(3, chosen)
                assert I.axiom_violations(table) == []
                valid.add(table.bits)
        assert valid == {s.table.bits for s in enumerate_spaces(3)}

    def test_exhaustive_cap(self):
        with pytest.raises(CapExceededError):
            next(enumerate_spaces(5))
        assert next(enumerate_spaces(5, allow_large=True)).n == 5


class TestRandomSpace:
    def test_density_extremes(self):
        enc = free_orbit_encoding(4)
        assert random_space(4, 123, 0.0) == enc.decode(0)
        assert random_space(4, 123, 1.0) == enc.decode(enc.space_count - 1)

    def test_deterministic(self):
        a = random_space(5, seed=42, density=0.5)
        b = random_space(5, seed=42, density=0.5)
        assert a.table == b.table

    def test_density_validated(self):
        with pytest.raises(ValueError):
            random_space(3, 0, 1.5)


class TestPopulations:
    def test_sampled_slicing_is_consistent(self):
        pop = SampledPopulation(n=4, seed=9, count=20)
        whole = list(pop.spaces())
        parts = list(pop.spaces(0, 7)) + list(pop.spaces(7, 20))
        assert [(i, s.table.bits) for i, s in whole] == [(i, s.table.bits) for i, s in parts]

    def test_density_sweep_hits_extremes(self):
        pop = SampledPopulation(n=3, seed=0, count=102)
        assert pop.density_at(0) == 0.0
        assert pop.density_at(100) == 1.0
        assert pop.density_at(101) == 0.0

    def test_exhaustive_cap_enforced(self):
        with pytest.raises(CapExceededError):
            list(ExhaustivePopulation(5).spaces())


class TestVerifyTheorems:
    def test_transitivity_exhaustive_n3(self):
        report = verify_transitivity_theorem(ExhaustivePopulation(3))
        assert report.total == 8
        assert report.violation_count == 0
        assert report.skipped == ()
        assert dict(report.condition_counts)["C1"] == 8
        assert dict(report.vector_counts) == {"TTTTTTTTT": 8}

    def test_budget_skips_semigroup(self):
        report = verify_transitivity_theorem(ExhaustivePopulation(3), triple_budget=0)
        assert report.skipped == ("C4", "C5")
        assert report.violation_count == 0
        assert dict(report.vector_counts) == {"TTT--TTTT": 8}

    def test_antisymmetry_exhaustive_n3(self):
        report = verify_antisymmetry_theorem(ExhaustivePopulation(3))
        assert report.total == 8
        assert report.hypothesis_excluded == 0
        assert report.violation_count == 0

    def test_sampled_census_matches_direct_loop(self):
        pop = SampledPopulation(n=4, seed=5, count=30)
        report = verify_transitivity_theorem(pop)
        direct = sum(1 for _, s in pop.spaces() if naive.interval_transitive(s))
        assert dict(report.condition_counts)["C1"] == direct

    def test_workers_byte_identical(self):
        pop = SampledPopulation(n=4, seed=31, count=60)
        reports = [
            verify_transitivity_theorem(pop, workers=w).to_dict() for w in (1, 3)
        ]
        assert json.dumps(reports[0], sort_keys=True) == json.dumps(reports[1], sort_keys=True)

    def test_interval_transitive_counts_frozen(self):
        # regression values from the first verified exhaustive runs
        n3 = verify_transitivity_theorem(ExhaustivePopulation(3))
        n4 = verify_transitivity_theorem(ExhaustivePopulation(4), triple_budget=0)
        assert dict(n3.condition_counts)["C1"] == 8
        assert dict(n4.condition_counts)["C1"] == 400

    def test_hypothesis_excluded_is_complement_of_qualifying(self):
        report = verify_antisymmetry_theorem(ExhaustivePopulation(4))
        assert report.hypothesis_excluded == 4096 - 400

    def test_sampled_equivalences_hold_beyond_exhaustive_sizes(self):
        # C4/C5 exceed the default triple budget here and must be skipped,
        # not guessed; the remaining columns still have to agree
        for n, count in ((5, 3000), (6, 1000)):
            pop = SampledPopulation(n=n, seed=606060 + n, count=count)
            trans = verify_transitivity_theorem(pop)
            assert trans.violation_count == 0
            assert trans.skipped == ("C4", "C5")
            anti = verify_antisymmetry_theorem(pop)
            assert anti.violation_count == 0
            assert anti.hypothesis_excluded < count  # some samples qualify


class TestFindSeparating:
    def test_empty_constraints_return_first_space(self):
        space = find_separating([], [], max_spaces=10)
        assert space == free_orbit_encoding(1).decode(0)

    def test_unknown_property(self):
        with pytest.raises(ValueError, match="unknown property"):
            find_separating(["white-chocolate"], [], max_spaces=1)

    def test_zero_budget(self):
        assert find_separating([], [], max_spaces=0) is None

    def test_proven_implication_direction_never_separates(self):
        for budget in (1, 10, 500, 5000):
            assert find_separating(
                ["interval-transitive"], ["point-transitive"], max_spaces=budget, seed=3
            ) is None

    def test_point_transitive_separation_frozen(self):
        # regression: no separating space at n <= 4 (coincide exhaustively);
        # the first sampled hit for this plan sits at n = 5
        space = find_separating(
            ["point-transitive"], ["interval-transitive"],
            max_spaces=4500, ns=(1, 2, 3, 4, 5), seed=777000,
        )
        assert space is not None and space.n == 5
        assert free_orbit_encoding(5).encode(space) == 6152
        assert naive.point_transitive(space)
        assert not naive.interval_transitive(space)

    def test_workers_agree(self):
        kwargs = dict(max_spaces=4500, ns=(1, 2, 3, 4, 5), seed=777000)
        w1 = find_separating(["point-transitive"], ["interval-transitive"], workers=1, **kwargs)
        w4 = find_separating(["point-transitive"], ["interval-transitive"], workers=4, **kwargs)
        assert w1 == w4
