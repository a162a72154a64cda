"""Enumeration, sampling, censuses and counterexample search over spaces.

The axioms pin most of a betweenness table: <x,x,a> and <a,x,x> are forced
true, <x,y,x> (y != x) forced false, and middle symmetry ties the remaining
pairwise-distinct triples into orbits {<a,b,c>, <c,b,a>}.  The free orbits
give a bijection between bit strings of length n(n-1)(n-2)/2 and the valid
spaces on n labeled points, which drives exhaustive enumeration (small n),
seeded sampling, extensional verification of both condition-equivalence
theorems, and search for spaces separating named properties.

All sampling is partition-stable: sample i is drawn from seed + i, never
from a shared generator, so censuses are identical for every worker count.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union

from .core import (
    BetweennessTable,
    CapExceededError,
    FiniteIntervalSpace,
    _forced_bits,
    _triple_index,
)
from .properties import (
    ANTISYMMETRY_CONDITIONS,
    TRANSITIVITY_CONDITIONS,
    PROPERTY_CHECKS,
    ConditionVector,
    antisymmetry_conditions,
    interval_transitivity_witness,
    resolve_properties,
    transitivity_conditions,
)

#: Largest n enumerated exhaustively without an explicit override
#: (n = 5 already has 2^30 spaces).
EXHAUSTIVE_CAP = 4

#: Default budget on population-size * (2^n)^3 before the semigroup
#: conditions C4/C5 are skipped in a census.
DEFAULT_TRIPLE_BUDGET = 1 << 25


class FreeOrbitEncoding:
    """Bijection between orbit bit strings and valid tables on n points.

    Orbit k is the pair {<a,b,c>, <c,b,a>} for the k-th pairwise-distinct
    triple (a, b, c) with a < c in lexicographic order.  Decoding ORs the
    selected orbit pairs onto the axiom-forced bits; every decoded table is
    a valid space, and encoding a decoded space returns the original bits.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("need at least one point")
        self.n = n
        self.orbits: tuple[tuple[int, int, int], ...] = tuple(
            (a, b, c)
            for a in range(n)
            for b in range(n)
            for c in range(n)
            if a != b and b != c and a < c
        )
        self._base = _forced_bits(n)
        self._masks = tuple(
            (1 << _triple_index(n, a, b, c)) | (1 << _triple_index(n, c, b, a))
            for a, b, c in self.orbits
        )

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def space_count(self) -> int:
        return 1 << len(self.orbits)

    def decode(self, bits: int) -> FiniteIntervalSpace:
        if not 0 <= bits < self.space_count:
            raise ValueError(f"encoding {bits} out of range [0, 2^{self.orbit_count})")
        table_bits = self._base
        rest = bits
        while rest:
            low = rest & -rest
            table_bits |= self._masks[low.bit_length() - 1]
            rest ^= low
        return FiniteIntervalSpace._trusted(BetweennessTable(self.n, table_bits))

    def encode(self, space: FiniteIntervalSpace) -> int:
        if space.n != self.n:
            raise ValueError(f"space has {space.n} points, encoding expects {self.n}")
        n = self.n
        table_bits = space.table.bits
        bits = 0
        for k, (a, b, c) in enumerate(self.orbits):
            if (table_bits >> _triple_index(n, a, b, c)) & 1:
                bits |= 1 << k
        return bits


@lru_cache(maxsize=64)
def free_orbit_encoding(n: int) -> FreeOrbitEncoding:
    return FreeOrbitEncoding(n)


def enumerate_spaces(n: int, *, allow_large: bool = False) -> Iterator[FiniteIntervalSpace]:
    """All valid spaces on n labeled points, in ascending encoding order."""
    if n > EXHAUSTIVE_CAP and not allow_large:
        raise CapExceededError(
            f"exhaustive enumeration at n={n} needs 2^{free_orbit_encoding(n).orbit_count} spaces; "
            f"cap is n <= {EXHAUSTIVE_CAP}, pass allow_large=True to override"
        )
    enc = free_orbit_encoding(n)
    for bits in range(enc.space_count):
        yield enc.decode(bits)


def random_space(n: int, seed: int, density: float = 0.5) -> FiniteIntervalSpace:
    """A seeded random space: each free orbit is true with probability ``density``.

    Deterministic in (n, seed, density); independent of any global state.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {density}")
    enc = free_orbit_encoding(n)
    rng = random.Random(seed)
    bits = 0
    for k in range(enc.orbit_count):
        if rng.random() < density:
            bits |= 1 << k
    return enc.decode(bits)


# ---------------------------------------------------------------------------
# Populations


@dataclass(frozen=True)
class ExhaustivePopulation:
    """Every valid space on n points, indexed by encoding."""

    n: int
    allow_large: bool = False

    def size(self) -> int:
        return free_orbit_encoding(self.n).space_count

    def describe(self) -> str:
        return f"exhaustive n={self.n}"

    def spaces(self, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, FiniteIntervalSpace]]:
        if self.n > EXHAUSTIVE_CAP and not self.allow_large:
            raise CapExceededError(
                f"exhaustive population at n={self.n} exceeds the cap n <= {EXHAUSTIVE_CAP}"
            )
        enc = free_orbit_encoding(self.n)
        stop = enc.space_count if stop is None else stop
        for bits in range(start, stop):
            yield bits, enc.decode(bits)


@dataclass(frozen=True)
class SampledPopulation:
    """``count`` seeded random spaces on n points.

    Sample i is drawn from seed + i at density ``density``; with
    density=None the density sweeps the grid 0.00, 0.01, ..., 1.00
    cyclically, which covers both near-minimal and near-maximal tables.
    """

    n: int
    seed: int
    count: int
    density: float | None = None

    def size(self) -> int:
        return self.count

    def density_at(self, i: int) -> float:
        return self.density if self.density is not None else (i % 101) / 100.0

    def describe(self) -> str:
        density = "sweep" if self.density is None else f"{self.density:g}"
        return f"sampled n={self.n} seed={self.seed} count={self.count} density={density}"

    def spaces(self, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, FiniteIntervalSpace]]:
        stop = self.count if stop is None else stop
        for i in range(start, stop):
            yield i, random_space(self.n, self.seed + i, self.density_at(i))


Population = Union[ExhaustivePopulation, SampledPopulation]


# ---------------------------------------------------------------------------
# Censuses


@dataclass(frozen=True)
class EquivalenceViolation:
    """A space whose supposedly equivalent condition values disagree."""

    index: int
    encoding: int
    values: tuple[bool | None, ...]


@dataclass(frozen=True)
class CensusReport:
    """Aggregated condition census over a population.

    Counts merge as a commutative monoid and the final report is
    canonicalized (fixed condition order, sorted vector patterns, violations
    sorted by index), so the report is identical for every work
    partitioning.  ``violations`` lists the spaces where evaluated condition
    values disagree; the theorems say it must stay empty.
    """

    theorem: str
    n: int
    population: str
    total: int
    hypothesis_excluded: int
    skipped: tuple[str, ...]
    condition_counts: tuple[tuple[str, int], ...]
    vector_counts: tuple[tuple[str, int], ...]
    violations: tuple[EquivalenceViolation, ...]

    @property
    def violation_count(self) -> int:
        return len(self.violations)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "n": self.n,
            "population": self.population,
            "spaces": self.total,
            "hypothesis_excluded": self.hypothesis_excluded,
            "skipped": list(self.skipped),
            "condition_counts": dict(self.condition_counts),
            "vector_counts": dict(self.vector_counts),
            "violations": self.violation_count,
            "violation_details": [
                {"index": v.index, "encoding": v.encoding,
                 "values": [x if x is None else bool(x) for x in v.values]}
                for v in self.violations
            ],
        }

    def render(self) -> str:
        lines = [
            f"theorem: {self.theorem}",
            f"population: {self.population}",
            f"spaces: {self.total}",
        ]
        if self.theorem == "antisymmetry":
            lines.append(f"hypothesis_excluded: {self.hypothesis_excluded}")
        if self.skipped:
            lines.append(f"skipped: {','.join(self.skipped)}")
        lines.append("condition_counts: " + " ".join(f"{k}={v}" for k, v in self.condition_counts))
        lines.append("vector_counts: " + " ".join(f"{k}={v}" for k, v in self.vector_counts))
        lines.append(f"violations: {self.violation_count}")
        for v in self.violations[:20]:
            lines.append(f"  index={v.index} encoding={v.encoding} values={_pattern(v.values)}")
        return "\n".join(lines)


def _pattern(values: tuple[bool | None, ...]) -> str:
    return "".join("-" if v is None else ("T" if v else "F") for v in values)


def _census_chunk(args: tuple) -> dict:
    theorem, population, start, stop, semigroup = args
    enc = free_orbit_encoding(population.n)
    counts: Counter = Counter()
    vectors: Counter = Counter()
    violations: list[EquivalenceViolation] = []
    excluded = 0
    for index, space in population.spaces(start, stop):
        if theorem == "transitivity":
            cv: ConditionVector = transitivity_conditions(space, semigroup_conditions=semigroup)
        else:
            if interval_transitivity_witness(space) is not None:
                excluded += 1
                continue
            cv = antisymmetry_conditions(space)
        for name, value in zip(cv.names, cv.values):
            if value:
                counts[name] += 1
        vectors[_pattern(cv.values)] += 1
        if not cv.all_equal():
            violations.append(EquivalenceViolation(index, enc.encode(space), cv.values))
    return {"counts": counts, "vectors": vectors, "violations": violations, "excluded": excluded}


def _partition(total: int, workers: int) -> list[tuple[int, int]]:
    if total == 0:
        return []
    chunk = total if workers <= 1 else max(1, -(-total // (workers * 4)))
    return [(s, min(s + chunk, total)) for s in range(0, total, chunk)]


def _run_chunks(task, args_list: list[tuple], workers: int) -> list:
    if workers <= 1 or len(args_list) <= 1:
        return [task(a) for a in args_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, args_list))


def _verify(theorem: str, population: Population, semigroup: bool, workers: int) -> CensusReport:
    total = population.size()
    chunk_results = _run_chunks(
        _census_chunk,
        [(theorem, population, s, e, semigroup) for s, e in _partition(total, workers)],
        workers,
    )
    counts: Counter = Counter()
    vectors: Counter = Counter()
    violations: list[EquivalenceViolation] = []
    excluded = 0
    for r in chunk_results:
        counts.update(r["counts"])
        vectors.update(r["vectors"])
        violations.extend(r["violations"])
        excluded += r["excluded"]
    names = TRANSITIVITY_CONDITIONS if theorem == "transitivity" else ANTISYMMETRY_CONDITIONS
    skipped = ("C4", "C5") if theorem == "transitivity" and not semigroup else ()
    return CensusReport(
        theorem=theorem,
        n=population.n,
        population=population.describe(),
        total=total,
        hypothesis_excluded=excluded,
        skipped=skipped,
        condition_counts=tuple((name, counts.get(name, 0)) for name in names),
        vector_counts=tuple(sorted(vectors.items())),
        violations=tuple(sorted(violations, key=lambda v: v.index)),
    )


def verify_transitivity_theorem(
    population: Population,
    *,
    triple_budget: int = DEFAULT_TRIPLE_BUDGET,
    workers: int = 1,
) -> CensusReport:
    """Census C1..C9 over a population; equivalence violations must be absent.

    C4/C5 are evaluated in full when population-size * (2^n)^3 fits the
    triple budget, and reported as skipped otherwise.
    """
    semigroup = population.size() * (8 ** population.n) <= triple_budget
    return _verify("transitivity", population, semigroup, workers)


def verify_antisymmetry_theorem(population: Population, *, workers: int = 1) -> CensusReport:
    """Census D1..D5 over the interval-transitive spaces of a population.

    Spaces failing the interval-transitivity hypothesis are counted in
    ``hypothesis_excluded`` and take no part in the equivalence assertion.
    """
    return _verify("antisymmetry", population, True, workers)


# ---------------------------------------------------------------------------
# Separating search


def _sample_density(density: float | None, i: int) -> float:
    return density if density is not None else (i % 101) / 100.0


def _search_chunk(args: tuple) -> int | None:
    kind, n, seed, density, start, stop, want, want_not = args
    enc = free_orbit_encoding(n) if kind == "exhaustive" else None
    want_checks = [PROPERTY_CHECKS[name] for name in want]
    want_not_checks = [PROPERTY_CHECKS[name] for name in want_not]
    for i in range(start, stop):
        space = (
            enc.decode(i)
            if enc is not None
            else random_space(n, seed + i, _sample_density(density, i))
        )
        if all(check(space) for check in want_checks) and not any(
            check(space) for check in want_not_checks
        ):
            return i
    return None


def _search_plan(ns: Iterable[int], max_spaces: int) -> list[tuple[str, int, int]]:
    """(kind, n, count) segments: exhaustive sizes ascending, then sampled
    sizes ascending with the leftover budget split evenly."""
    sizes = sorted(set(ns))
    plan: list[tuple[str, int, int]] = []
    remaining = max_spaces
    for n in [m for m in sizes if m <= EXHAUSTIVE_CAP]:
        k = min(remaining, free_orbit_encoding(n).space_count)
        if k > 0:
            plan.append(("exhaustive", n, k))
            remaining -= k
    sampled = [m for m in sizes if m > EXHAUSTIVE_CAP]
    if sampled and remaining > 0:
        base, extra = divmod(remaining, len(sampled))
        for j, n in enumerate(sampled):
            k = base + (1 if j < extra else 0)
            if k > 0:
                plan.append(("sampled", n, k))
    return plan


def find_separating(
    want: Iterable[str],
    want_not: Iterable[str],
    *,
    max_spaces: int = 100_000,
    ns: Iterable[int] = (1, 2, 3, 4, 5, 6),
    seed: int = 0,
    density: float | None = None,
    workers: int = 1,
) -> FiniteIntervalSpace | None:
    """First space with every ``want`` property and no ``want_not`` property.

    Candidates are scanned in a deterministic order: exhaustive enumeration
    for the sizes within the exhaustive cap (ascending encodings), then
    seeded samples for the larger sizes, all bounded by ``max_spaces``
    candidates in total.  Sample i of a sampled segment is drawn from
    seed + i; density=None sweeps the 0.00..1.00 grid like
    :class:`SampledPopulation`.  Property names come from
    ``PROPERTY_CHECKS``.  Returns None when no candidate within the budget
    separates the properties; the answer is identical for every worker
    count.
    """
    want = resolve_properties(want)
    want_not = resolve_properties(want_not)
    if max_spaces < 0:
        raise ValueError("max_spaces must be nonnegative")
    for kind, n, count in _search_plan(ns, max_spaces):
        args_list = [
            (kind, n, seed, density, s, e, tuple(want), tuple(want_not))
            for s, e in _partition(count, workers)
        ]
        hits = _run_chunks(_search_chunk, args_list, workers)
        for hit in hits:
            if hit is not None:
                if kind == "exhaustive":
                    return free_orbit_encoding(n).decode(hit)
                return random_space(n, seed + hit, _sample_density(density, hit))
    return None
