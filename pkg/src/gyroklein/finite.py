"""Finite gyrogroups given by Cayley tables.

Gyrations are always derived from the table as
``gyr[a, b] = L_{a+b}^{-1} o L_a o L_b``; a supplied gyration table is only
ever cross-checked against that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import errors
from .perm import PermGroup, Permutation, compose, compose_all, generate_group, inverse, max_closure
from .tables import Table, check_table

AUT_SEARCH_CAP = 16
SUBGYROGROUP_SEARCH_CAP = 16


class FiniteGyrogroup:
    """A validated finite gyrogroup. Build instances with :func:`validate_gyrogroup`."""

    def __init__(self, table: Table, identity: int, inv: tuple[int, ...], gyr: dict):
        self.table = table
        self.n = len(table)
        self.identity = identity
        self.inv = inv
        self._gyr = gyr

    def __repr__(self) -> str:
        return f"FiniteGyrogroup(n={self.n}, identity={self.identity})"

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def neg(self, a: int) -> int:
        return self.inv[a]

    def gyr(self, a: int, b: int) -> Permutation:
        return self._gyr[a, b]

    def L(self, a: int) -> Permutation:
        return self.left_translations[a]

    @cached_property
    def left_translations(self) -> tuple[Permutation, ...]:
        return tuple(Permutation._unchecked(row) for row in self.table)

    @cached_property
    def gyrations(self) -> tuple[Permutation, ...]:
        """Distinct gyrations, in canonical order."""
        return tuple(sorted(set(self._gyr.values())))

    @cached_property
    def nontrivial_gyrations(self) -> tuple[Permutation, ...]:
        return tuple(g for g in self.gyrations if not g.is_identity())

    def is_group(self) -> bool:
        return not self.nontrivial_gyrations

    def image(self, p: Permutation, subset: Iterable[int]) -> frozenset[int]:
        return p.apply_set(subset)

    def left_coset(self, a: int, subset: Iterable[int]) -> frozenset[int]:
        row = self.table[a]
        return frozenset(row[h] for h in subset)


def _first_bad_row(table: Table) -> int | None:
    n = len(table)
    for a, row in enumerate(table):
        if len(set(row)) != n:
            return a
    return None


def validate_gyrogroup(table: Sequence[Sequence[int]]) -> FiniteGyrogroup:
    """Check the gyrogroup axioms on a Cayley table and derive its gyrations.

    Raises the matching :class:`~gyroklein.errors.GyrogroupAxiomError`
    subclass with the lexicographically smallest counterexample.
    """
    t = check_table(table)
    n = len(t)
    elems = range(n)

    bad = _first_bad_row(t)
    if bad is not None:
        row = t[bad]
        seen = {}
        for b, x in enumerate(row):
            if x in seen:
                raise errors.RowNotBijective(
                    f"L_{bad} is not bijective: {bad}+{seen[x]} = {bad}+{b} = {x}", (bad, seen[x], b)
                )
            seen[x] = b

    ids = [e for e in elems if all(t[e][a] == a and t[a][e] == a for a in elems)]
    if not ids:
        raise errors.NoIdentity("no two-sided identity element")
    if len(ids) > 1:
        raise errors.MultipleIdentities(f"several identities: {ids}", tuple(ids[:2]))
    e = ids[0]

    inv = []
    for a in elems:
        cands = [b for b in elems if t[b][a] == e and t[a][b] == e]
        if not cands:
            raise errors.MissingInverse(f"{a} has no two-sided inverse", (a,))
        inv.append(cands[0])
    inv = tuple(inv)

    Ls = [Permutation._unchecked(row) for row in t]
    Linv = [inverse(L) for L in Ls]
    gyr = {}
    for a in elems:
        for b in elems:
            gyr[a, b] = compose_all(Linv[t[a][b]], Ls[a], Ls[b])

    for a in elems:
        for b in elems:
            g = gyr[a, b].images
            for x in elems:
                for y in elems:
                    if g[t[x][y]] != t[g[x]][g[y]]:
                        raise errors.GyrNotAutomorphism(
                            f"gyr[{a},{b}] = {gyr[a, b]} is not an automorphism: "
                            f"fails on ({x}, {y})",
                            (a, b, x, y),
                        )

    # left gyroassociativity holds by construction; recheck it anyway
    for a, b, c in itertools.product(elems, repeat=3):
        if t[a][t[b][c]] != t[t[a][b]][gyr[a, b](c)]:
            raise errors.GyrogroupAxiomError(
                f"left gyroassociative law fails at ({a}, {b}, {c})", (a, b, c)
            )

    for a in elems:
        for b in elems:
            if gyr[t[a][b], b] != gyr[a, b]:
                raise errors.LoopPropertyFails(
                    f"gyr[{a}+{b}, {b}] != gyr[{a}, {b}]", (a, b)
                )

    for a in elems:
        for b in elems:
            if t[inv[a]][t[a][b]] != b:
                raise errors.LeftCancellationFails(f"-{a}+({a}+{b}) != {b}", (a, b))

    return FiniteGyrogroup(t, e, inv, gyr)


def check_gyration_table(G: FiniteGyrogroup, supplied: dict) -> list[tuple[int, int]]:
    """Pairs ``(a, b)`` where a supplied gyration disagrees with the derived one."""
    return sorted(k for k, p in supplied.items() if G.gyr(*k) != p)


def gyr_group(G: FiniteGyrogroup) -> PermGroup:
    """The group generated by all gyrations of ``G``."""
    return generate_group(G.gyrations, degree=G.n)


def left_translations(G: FiniteGyrogroup) -> tuple[Permutation, ...]:
    return G.left_translations


def _semidirect(G: FiniteGyrogroup, autos: Sequence[Permutation]) -> PermGroup:
    """``{L_a o alpha}`` for ``alpha`` in ``autos``, checked to be a group."""
    Ls = G.left_translations
    cap = max_closure()
    if len(Ls) * len(autos) > cap:
        raise errors.ClosureTooLarge(f"{len(Ls)} x {len(autos)} products exceed the closure cap of {cap}")
    elems = {compose(L, alpha) for L in Ls for alpha in autos}
    # a finite set containing I that is stable under right multiplication by
    # every generator of the group it generates is that group
    gens = list(Ls) + [a for a in autos if not a.is_identity()]
    for s in elems:
        for g in gens:
            if compose(s, g) not in elems:
                raise AssertionError(f"translation set not closed: {s} o {g}")
    if len(elems) <= 200:
        _check_product_identities(G, autos, elems)
    return PermGroup(G.n, elems)


def _check_product_identities(G: FiniteGyrogroup, autos, elems) -> None:
    for a, alpha in itertools.product(range(G.n), autos):
        lhs = compose(G.L(a), alpha)
        ai = inverse(alpha)
        if inverse(lhs) != compose(G.L(ai(G.neg(a))), ai):
            raise AssertionError(f"inverse identity fails for a={a}, alpha={alpha}")
        for b, beta in itertools.product(range(G.n), autos):
            ab = alpha(b)
            prod = compose(lhs, compose(G.L(b), beta))
            rhs = compose(G.L(G.op(a, ab)), compose_all(G.gyr(a, ab), alpha, beta))
            if prod != rhs or prod not in elems:
                raise AssertionError(f"composition identity fails for a={a}, b={b}")


def gamma_m(G: FiniteGyrogroup) -> PermGroup:
    """``{L_a o gamma : a in G, gamma in GYR(G)}``."""
    return _semidirect(G, gyr_group(G).elements)


def gamma_M(G: FiniteGyrogroup, cap: int = AUT_SEARCH_CAP) -> PermGroup:
    """``{L_a o tau : a in G, tau in Aut(G)}``."""
    return _semidirect(G, automorphism_group(G, cap=cap).elements)


def automorphism_group(G: FiniteGyrogroup, cap: int = AUT_SEARCH_CAP) -> PermGroup:
    """All table automorphisms, by backtracking over partial homomorphisms."""
    if G.n > cap:
        raise errors.AutSearchTooLarge(f"automorphism search capped at n <= {cap}, got {G.n}")
    n, t, e = G.n, G.table, G.identity
    found: list[Permutation] = []

    def extend(phi: dict[int, int], used: set[int]) -> bool:
        # propagate phi(x+y) = phi(x)+phi(y) to a fixed point
        changed = True
        while changed:
            changed = False
            for x, y in itertools.product(list(phi), repeat=2):
                z, w = t[x][y], t[phi[x]][phi[y]]
                if z in phi:
                    if phi[z] != w:
                        return False
                elif w in used:
                    return False
                else:
                    phi[z] = w
                    used.add(w)
                    changed = True
        return True

    def search(phi: dict[int, int], used: set[int]) -> None:
        if len(phi) == n:
            found.append(Permutation(tuple(phi[i] for i in range(n))))
            return
        x = min(i for i in range(n) if i not in phi)
        for y in range(n):
            if y in used:
                continue
            phi2, used2 = dict(phi), set(used)
            phi2[x] = y
            used2.add(y)
            if extend(phi2, used2):
                search(phi2, used2)

    start = {e: e}
    if extend(start, {e}):
        search(start, {e})
    return PermGroup(n, found)


def right_nucleus(G: FiniteGyrogroup) -> frozenset[int]:
    """Elements fixed by every gyration."""
    gyrs = G.nontrivial_gyrations
    return frozenset(c for c in range(G.n) if all(g(c) == c for g in gyrs))


@dataclass(frozen=True)
class SubgyrogroupReport:
    carrier: frozenset[int]
    is_subgyrogroup: bool
    is_L: bool
    is_strong: bool
    is_characteristic: bool | None  # None when the automorphism search was skipped

    def to_json(self) -> dict:
        return {
            "carrier": sorted(self.carrier),
            "is_subgyrogroup": self.is_subgyrogroup,
            "is_L": self.is_L,
            "is_strong": self.is_strong,
            "is_characteristic": self.is_characteristic,
        }


def is_subgyrogroup(G: FiniteGyrogroup, H: Iterable[int]) -> bool:
    H = frozenset(H)
    if not H:
        return False
    t = G.table
    if G.identity not in H or any(G.neg(h) not in H for h in H):
        return False
    if any(t[a][b] not in H for a in H for b in H):
        return False
    return all(G.gyr(a, b).apply_set(H) == H for a in H for b in H)


def classify_subgyrogroup(
    G: FiniteGyrogroup, H: Iterable[int], aut: PermGroup | None = None, cap: int = AUT_SEARCH_CAP
) -> SubgyrogroupReport:
    H = frozenset(H)
    if not H:
        raise errors.EmptySubset("subset must be nonempty")
    if not H <= frozenset(range(G.n)):
        raise ValueError(f"subset {sorted(H)} not contained in 0..{G.n - 1}")
    sub = is_subgyrogroup(G, H)
    is_L = sub and all(G.gyr(a, h).apply_set(H) == H for a in range(G.n) for h in H)
    strong = sub and all(g.apply_set(H) == H for g in G.gyrations)
    if aut is None and G.n <= cap:
        aut = automorphism_group(G, cap=cap)
    if aut is None:
        char = None
    else:
        char = sub and all(tau.apply_set(H) == H for tau in aut)
    return SubgyrogroupReport(H, sub, is_L, strong, char)


def subgyrogroup_closure(G: FiniteGyrogroup, subset: Iterable[int]) -> frozenset[int]:
    """Smallest subgyrogroup containing ``subset``."""
    H = set(subset) | {G.identity}
    t = G.table
    while True:
        new = {t[a][b] for a in H for b in H} | {G.neg(a) for a in H}
        new |= {G.gyr(a, b)(c) for a in H for b in H for c in H}
        if new <= H:
            return frozenset(H)
        H |= new


def enumerate_subgyrogroups(G: FiniteGyrogroup, cap: int = SUBGYROGROUP_SEARCH_CAP) -> list[SubgyrogroupReport]:
    """Every subgyrogroup of ``G``, classified, sorted by size then members."""
    if G.n > cap:
        raise errors.SearchTooLarge(f"subgyrogroup search capped at n <= {cap}, got {G.n}")
    # every subgyrogroup is reached by adjoining its elements one at a time
    start = frozenset([G.identity])
    found = {start}
    stack = [start]
    while stack:
        H = stack.pop()
        for g in range(G.n):
            if g in H:
                continue
            K = subgyrogroup_closure(G, H | {g})
            if K not in found:
                found.add(K)
                stack.append(K)
    aut = automorphism_group(G) if G.n <= AUT_SEARCH_CAP else None
    carriers = sorted(found, key=lambda H: (len(H), sorted(H)))
    return [classify_subgyrogroup(G, H, aut=aut) for H in carriers]


def cosets(G: FiniteGyrogroup, H: Iterable[int]) -> frozenset[frozenset[int]]:
    """The left coset space ``{a + H : a in G}``."""
    H = frozenset(H)
    if not is_subgyrogroup(G, H):
        raise errors.NotASubgyrogroup(f"{sorted(H)} is not a subgyrogroup")
    return frozenset(G.left_coset(a, H) for a in range(G.n))


def decompose_permutation(G: FiniteGyrogroup, sigma: Permutation) -> tuple[int, Permutation]:
    """Factor ``sigma = L_a o rho`` with ``rho`` fixing the identity."""
    if sigma.degree != G.n:
        raise errors.DegreeMismatch(f"permutation of degree {sigma.degree} on gyrogroup of order {G.n}")
    a = sigma(G.identity)
    rho = compose(G.L(G.neg(a)), sigma)
    assert rho(G.identity) == G.identity
    return a, rho


def composition_law_check(
    G: FiniteGyrogroup, a: int, alpha: Permutation, b: int, beta: Permutation
) -> bool:
    """Evaluate the Sym(G) composition law for ``(L_a o alpha) o (L_b o beta)``.

    True iff both sides agree pointwise and the right factor
    ``gyr[a, alpha(b)] o L_{-alpha(b)} o alpha o L_b o beta`` fixes the identity.
    """
    e = G.identity
    for name, p in (("alpha", alpha), ("beta", beta)):
        if p(e) != e:
            raise errors.NotInStabilizer(f"{name} = {p} does not fix the identity {e}")
    ab = alpha(b)
    lhs = compose_all(G.L(a), alpha, G.L(b), beta)
    right = compose_all(G.gyr(a, ab), G.L(G.neg(ab)), alpha, G.L(b), beta)
    rhs = compose(G.L(G.op(a, ab)), right)
    return lhs == rhs and right(e) == e
