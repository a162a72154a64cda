"""Closure systems over the convex sets of an interval space.

A :class:`ClosureSystem` is a materialized Moore family: it contains the
universe and is closed under nonempty intersection (verified at
construction, whether the family comes from a space or is hand-built).
On top of it live the closure operator cl, the relative entailment
relations, and the antiexchange / combinatorial / antimatroid predicates.

For a system built from a space by :func:`convex_closure_system`, cl agrees
with the space's fixpoint hull; the two are computed by different routes,
which the test suite exploits as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import FiniteIntervalSpace, PointSet, bits_of


class HypothesisNotMetError(ValueError):
    """An operation's stated hypothesis fails and no override was requested."""


@dataclass(frozen=True)
class ClosureSystem:
    """A Moore family on [0, n): the universe plus nonempty-intersection closure.

    ``closed`` holds the member bit masks in ascending mask order.  Both
    invariants are verified at construction; a family violating them is
    rejected rather than repaired.
    """

    n: int
    closed: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("universe size must be nonnegative")
        full = (1 << self.n) - 1
        members = set(self.closed)
        if len(members) != len(self.closed) or tuple(sorted(self.closed)) != self.closed:
            raise ValueError("closed sets must be distinct and ascending by mask")
        for m in self.closed:
            if m < 0 or m > full:
                raise ValueError("closed set exceeds the universe")
        if full not in members:
            raise ValueError("a closure system must contain the full universe")
        for a in self.closed:
            for b in self.closed:
                if b >= a:
                    break
                if a & b not in members:
                    raise ValueError(
                        f"not intersection-closed: {PointSet(self.n, a)} and {PointSet(self.n, b)}"
                    )

    @classmethod
    def of(cls, n: int, sets) -> "ClosureSystem":
        masks = sorted({PointSet.of(n, s).mask if not isinstance(s, PointSet) else s.mask for s in sets})
        return cls(n, tuple(masks))

    def sets(self) -> list[PointSet]:
        return [PointSet(self.n, m) for m in self.closed]

    def is_closed(self, s: PointSet) -> bool:
        self._check_set(s)
        return s.mask in set(self.closed)

    def has_empty(self) -> bool:
        return 0 in self.closed

    def cl(self, a_set: PointSet) -> PointSet:
        """Smallest closed superset: intersection of all closed supersets."""
        self._check_set(a_set)
        return PointSet(self.n, self._cl_mask(a_set.mask))

    def entails(self, a_set: PointSet, x: int, y: int, *, allow_unclosed: bool = False) -> bool:
        """Relative entailment: x |-_A y iff y lies in cl(A + {x}).

        The antiexchange condition only quantifies over closed A, so an
        unclosed base set is rejected unless ``allow_unclosed`` is passed.
        """
        self._check_set(a_set)
        if not allow_unclosed and a_set.mask not in set(self.closed):
            raise HypothesisNotMetError(
                f"base set {a_set} is not closed; pass allow_unclosed=True to relax"
            )
        if not 0 <= x < self.n or not 0 <= y < self.n:
            raise ValueError("point id out of range")
        return (self._cl_mask(a_set.mask | (1 << x)) >> y) & 1 == 1

    # -- mask internals ------------------------------------------------------

    def _check_set(self, s: PointSet) -> None:
        if s.n != self.n:
            raise ValueError(f"point set universe {s.n} does not match system universe {self.n}")

    def _cl_mask(self, am: int) -> int:
        out = (1 << self.n) - 1
        for m in self.closed:
            if am & ~m == 0:
                out &= m
        return out


@lru_cache(maxsize=256)
def _convex_closure_system_cached(space: FiniteIntervalSpace, allow_large: bool) -> ClosureSystem:
    return ClosureSystem(space.n, tuple(space._convex_masks(allow_large=allow_large)))


def convex_closure_system(space: FiniteIntervalSpace, *, allow_large: bool = False) -> ClosureSystem:
    """The closure system of all convex sets of a space.

    Materializes the convex family (subset-enumeration cap applies) and runs
    the full Moore verification on it, so a convexity bug cannot produce a
    silently broken system.  The result is memoized per space; systems are
    immutable, so sharing is safe.
    """
    return _convex_closure_system_cached(space, allow_large)


# ---------------------------------------------------------------------------
# Antiexchange / combinatorial / antimatroid predicates


def antiexchange_witness(cs: ClosureSystem) -> tuple[PointSet, int, int] | None:
    """Smallest (A, x, y): A closed, x < y outside A, x |-_A y and y |-_A x."""
    full = (1 << cs.n) - 1
    for a_mask in cs.closed:
        outside = full & ~a_mask
        if outside == 0:
            continue
        cl_with = {x: cs._cl_mask(a_mask | (1 << x)) for x in bits_of(outside)}
        rest = outside
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            rest ^= low
            cands = cl_with[x] & outside & ~((1 << (x + 1)) - 1)
            while cands:
                lo = cands & -cands
                y = lo.bit_length() - 1
                cands ^= lo
                if (cl_with[y] >> x) & 1:
                    return (PointSet(cs.n, a_mask), x, y)
    return None


def is_antiexchange(cs: ClosureSystem) -> bool:
    """Whether every relative entailment relation is antisymmetric off its base."""
    return antiexchange_witness(cs) is None


@lru_cache(maxsize=2048)
def _chain_union_witness(n: int, closed: tuple[int, ...]) -> tuple[int, ...] | None:
    """First chain (by size-then-mask DFS order) whose union is not closed.

    Enumerates every nonempty chain of the containment order exactly once;
    chain counts grow steeply with the family, so callers should keep
    standalone families small.
    """
    members = set(closed)
    by_size = sorted(closed, key=lambda m: (m.bit_count(), m))
    k = len(by_size)
    # Proper supersets have strictly more bits, so their indices are larger;
    # chains are therefore enumerated exactly once as increasing sequences.
    supersets: list[list[int]] = [
        [j for j in range(i + 1, k) if by_size[i] != by_size[j] and by_size[i] & ~by_size[j] == 0]
        for i in range(k)
    ]
    stack: list[tuple[tuple[int, ...], int]] = [((i,), by_size[i]) for i in range(k - 1, -1, -1)]
    while stack:
        chain, union = stack.pop()
        if union not in members:
            return tuple(by_size[i] for i in chain)
        for j in reversed(supersets[chain[-1]]):
            stack.append((chain + (j,), union | by_size[j]))
    return None


def combinatorial_witness(cs: ClosureSystem) -> tuple[PointSet, ...] | None:
    """A chain of closed sets whose union is not closed, or None.

    On any finite system the union of a nonempty chain is its largest
    element, so this must return None; the exhaustive chain walk is kept as
    a genuine extensional check rather than being short-circuited.
    """
    witness = _chain_union_witness(cs.n, cs.closed)
    if witness is None:
        return None
    return tuple(PointSet(cs.n, m) for m in witness)


def is_combinatorial(cs: ClosureSystem) -> bool:
    """Whether the union of every nonempty chain of closed sets is closed."""
    return combinatorial_witness(cs) is None


def antimatroid_report(cs: ClosureSystem) -> dict:
    """The three antimatroid conjuncts, reported separately.

    ``empty_closed`` is data, not an assumption: hand-built systems may or
    may not contain the empty set, while convex systems always do.
    """
    witness = antiexchange_witness(cs)
    report = {
        "empty_closed": cs.has_empty(),
        "combinatorial": is_combinatorial(cs),
        "antiexchange": witness is None,
    }
    report["antimatroid"] = all(report.values())
    if witness is not None:
        report["antiexchange_witness"] = witness
    return report


def is_antimatroid(cs: ClosureSystem) -> bool:
    """Combinatorial, antiexchange, and the empty set closed."""
    return cs.has_empty() and is_combinatorial(cs) and is_antiexchange(cs)


# ---------------------------------------------------------------------------
# Space-level bridges


def entailment_reverse_witness(space: FiniteIntervalSpace, a_set: PointSet) -> tuple[int, int] | None:
    """Smallest (b, c) where c |-_A b disagrees with <A, b, c>, or None.

    Hypotheses: the space is interval-transitive and A is nonempty and
    convex; under them the entailment relation relative to A is exactly the
    reverse of the base-set relation of A.  Nonemptiness matters: c |-_{}
    c always holds (cl({c}) contains c) while <{}, c, c> never does.
    Entailment is evaluated through the convex closure system, the other
    side through the space's own operators.
    """
    from .properties import interval_transitivity_witness

    space._check_set(a_set)
    if interval_transitivity_witness(space) is not None:
        raise HypothesisNotMetError("space is not interval-transitive")
    if a_set.mask == 0:
        raise HypothesisNotMetError("base set must be nonempty")
    if not space._is_convex_mask(a_set.mask):
        raise HypothesisNotMetError(f"base set {a_set} is not convex")
    cs = convex_closure_system(space)
    n = space.n
    rows = space._base_set_rows(a_set.mask)  # rows[b] bit c: <A, b, c>
    entailed_by = [cs._cl_mask(a_set.mask | (1 << c)) for c in range(n)]
    for b in range(n):
        for c in range(n):
            if ((entailed_by[c] >> b) & 1) != ((rows[b] >> c) & 1):
                return (b, c)
    return None


def entailment_is_reverse_of_between(space: FiniteIntervalSpace, a_set: PointSet) -> bool:
    return entailment_reverse_witness(space, a_set) is None


def verify_combinatorial_prop(space: FiniteIntervalSpace, *, allow_large: bool = False) -> bool:
    """Whether the convex closure system of the space is combinatorial."""
    return is_combinatorial(convex_closure_system(space, allow_large=allow_large))
