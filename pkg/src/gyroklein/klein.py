"""Finite Klein geometries ``(S, T)``: congruence, invariance, n-transitivity.

Figures are ``frozenset`` s of point indices and families are ``frozenset`` s
of figures, so equality is structural. Witnesses are always the first
transformation in the group's canonical order.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable

from . import errors
from .finite import FiniteGyrogroup, gamma_m, gyr_group
from .perm import PermGroup, Permutation, fixed_points

Figure = frozenset
FigureFamily = frozenset

DEFAULT_TUPLE_CAP = 10**7


def figure(points: Iterable[int]) -> frozenset[int]:
    return frozenset(points)


def family(figures: Iterable[Iterable[int]]) -> frozenset[frozenset[int]]:
    return frozenset(frozenset(f) for f in figures)


def figure_to_json(fig: Iterable[int]) -> list[int]:
    return sorted(fig)


def family_to_json(fam: Iterable[Iterable[int]]) -> list[list[int]]:
    return sorted((sorted(f) for f in fam), key=lambda f: (len(f), f))


@dataclass(frozen=True)
class Geometry:
    """Points ``0..n-1`` acted on by ``group``.

    ``labels`` names the points for display (e.g. after restricting to
    ``G \\ {e}``); it defaults to the indices themselves.
    """

    group: PermGroup
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != self.group.degree:
            raise errors.DegreeMismatch("labels must match the group degree")

    @property
    def n(self) -> int:
        return self.group.degree

    @property
    def points(self) -> range:
        return range(self.n)

    def label(self, i: int) -> int:
        return i if self.labels is None else self.labels[i]


def congruent(geo: Geometry, A: Iterable[int], B: Iterable[int]) -> Permutation | None:
    """First transformation ``T`` with ``T(A) = B``, or ``None``."""
    A, B = frozenset(A), frozenset(B)
    if len(A) != len(B):
        return None
    for T in geo.group:
        if T.apply_set(A) == B:
            return T
    return None


def congruence_class(geo: Geometry, A: Iterable[int]) -> frozenset[frozenset[int]]:
    """The orbit ``{T(A) : T in group}``."""
    A = frozenset(A)
    return frozenset(T.apply_set(A) for T in geo.group)


def congruence_classes(geo: Geometry, figures: Iterable[Iterable[int]]) -> list[frozenset[frozenset[int]]]:
    """Distinct classes met by ``figures``, in first-seen order."""
    out, seen = [], set()
    for F in figures:
        F = frozenset(F)
        if F in seen:
            continue
        C = congruence_class(geo, F)
        seen |= C
        out.append(C)
    return out


def is_invariant(geo: Geometry, fam: Iterable[Iterable[int]]) -> bool:
    fam = family(fam)
    return all(T.apply_set(F) in fam for F in fam for T in geo.group)


def is_union_of_classes(geo: Geometry, fam: Iterable[Iterable[int]]) -> bool:
    fam = family(fam)
    union = frozenset().union(*congruence_classes(geo, fam)) if fam else frozenset()
    return union == fam


def is_minimally_invariant(geo: Geometry, fam: Iterable[Iterable[int]]) -> bool:
    """Invariant with all members pairwise congruent.

    Equivalent to ``fam`` being the congruence class of any of its members.
    """
    fam = family(fam)
    if not fam:
        raise errors.EmptyFamily("minimal invariance is defined for nonempty families")
    if not is_invariant(geo, fam):
        return False
    first = min(fam, key=lambda f: (len(f), sorted(f)))
    return all(congruent(geo, first, F) is not None for F in fam)


def check_invariant_function(
    geo: Geometry, f: Callable[[frozenset[int]], Hashable], domain: Iterable[Iterable[int]]
) -> bool:
    """True iff ``f(A) == f(T(A))`` for every ``A`` in ``domain`` and every ``T``."""
    dom = family(domain)
    if not is_invariant(geo, dom):
        raise errors.DomainNotInvariant("domain is not closed under the group action")
    return all(f(T.apply_set(A)) == f(A) for A in dom for T in geo.group)


def all_subsets(n: int, size: int | None = None) -> list[frozenset[int]]:
    sizes = range(n + 1) if size is None else [size]
    return [frozenset(c) for k in sizes for c in itertools.combinations(range(n), k)]


@dataclass(frozen=True)
class TransitivityReport:
    n: int
    transitive: bool
    sharp: bool
    witness_counts_min: int
    witness_counts_max: int
    reason: str = ""

    def __bool__(self) -> bool:
        return self.transitive

    def to_json(self) -> dict[str, Any]:
        out = {
            "n": self.n,
            "transitive": self.transitive,
            "sharp": self.sharp,
            "witness_counts_min": self.witness_counts_min,
            "witness_counts_max": self.witness_counts_max,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def transitivity_report(geo: Geometry, n: int, cap: int = DEFAULT_TUPLE_CAP) -> TransitivityReport:
    """Count, for every pair of distinct-entry ``n``-tuples, the transformations
    carrying one onto the other."""
    if n < 1:
        raise ValueError("n must be at least 1")
    size = geo.n
    if size < n:
        return TransitivityReport(n, False, False, 0, 0, reason=f"only {size} points, fewer than {n}")
    n_tuples = 1
    for k in range(n):
        n_tuples *= size - k
    work = n_tuples * len(geo.group)
    if work > cap:
        raise errors.TupleCapExceeded(f"{work} witness checks exceed the cap of {cap}")

    lo, hi = None, 0
    elems = [T.images for T in geo.group]
    for xs in itertools.permutations(range(size), n):
        counts = Counter(tuple(T[x] for x in xs) for T in elems)
        # every y-tuple not hit has witness count 0
        cmin = 0 if len(counts) < n_tuples else min(counts.values())
        cmax = max(counts.values())
        lo = cmin if lo is None else min(lo, cmin)
        hi = max(hi, cmax)
    return TransitivityReport(n, lo >= 1, lo == 1 and hi == 1, lo, hi)


def is_n_transitive(geo: Geometry, n: int, cap: int = DEFAULT_TUPLE_CAP) -> bool:
    return transitivity_report(geo, n, cap=cap).transitive


def is_sharply_n_transitive(geo: Geometry, n: int, cap: int = DEFAULT_TUPLE_CAP) -> bool:
    return transitivity_report(geo, n, cap=cap).sharp


def is_homogeneous(geo: Geometry) -> bool:
    return is_n_transitive(geo, 1)


def max_fixed_points(group: PermGroup) -> int:
    """Largest fixed-point count of a nonidentity element; 0 for the trivial group."""
    counts = [len(fixed_points(T)) for T in group if not T.is_identity()]
    return max(counts, default=0)


def translation_geometry(G: FiniteGyrogroup) -> Geometry:
    """``(G, Gamma_m)``."""
    return Geometry(gamma_m(G))


def gyr_restricted_geometry(G: FiniteGyrogroup) -> Geometry:
    """``(G \\ {e}, GYR(G) restricted)``, reindexed in increasing label order."""
    if G.n < 2:
        raise errors.TrivialGyrogroup("need at least two elements")
    labels = tuple(x for x in range(G.n) if x != G.identity)
    index = {x: i for i, x in enumerate(labels)}
    restricted = [
        Permutation(tuple(index[g(x)] for x in labels)) for g in gyr_group(G)
    ]
    return Geometry(PermGroup(len(labels), restricted), labels=labels)


def restricted_gyr_obstruction(G: FiniteGyrogroup) -> tuple[int, int] | None:
    """Labels ``(x, y)`` of ``G \\ {e}`` that no gyration carries ``x`` to ``y``.

    Any such pair shows ``(G, Gamma_m)`` is not n-transitive for n >= 2.
    """
    geo = gyr_restricted_geometry(G)
    for x in geo.points:
        orbit = {T(x) for T in geo.group}
        for y in geo.points:
            if y not in orbit:
                return geo.label(x), geo.label(y)
    return None
