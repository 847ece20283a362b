"""Exact permutations on dense point indices and finite permutation groups."""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ClosureTooLarge, DegreeMismatch

DEFAULT_MAX_CLOSURE = 10**6


def max_closure() -> int:
    """Closure cap, overridable through ``GYROKLEIN_MAX_CLOSURE``."""
    raw = os.environ.get("GYROKLEIN_MAX_CLOSURE")
    return int(raw) if raw else DEFAULT_MAX_CLOSURE


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0, ..., n-1}``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _unchecked(cls, images: tuple[int, ...]) -> Permutation:
        # caller guarantees a bijection; skips validation on hot paths
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls._unchecked(tuple(range(n)))

    @classmethod
    def from_cycles(cls, text: str, n: int, base: int = 0) -> Permutation:
        """Parse cycle notation such as ``"(4 6)(5 7)"``.

        ``base`` is the label of point 0, so ``base=1`` reads the usual
        one-based notation for ``{1, ..., n}``.
        """
        images = list(range(n))
        seen: set[int] = set()
        for body in re.findall(r"\(([^()]*)\)", text):
            pts = [int(tok) - base for tok in body.replace(",", " ").split()]
            for p in pts:
                if not 0 <= p < n or p in seen:
                    raise ValueError(f"bad cycle notation {text!r}")
                seen.add(p)
            for i, p in enumerate(pts):
                images[p] = pts[(i + 1) % len(pts)]
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise ValueError(f"bad cycle notation {text!r}")
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        out = []
        seen = [False] * self.degree
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def to_cycles(self, base: int = 0) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(p + base) for p in c) + ")" for c in cyc)

    def __str__(self) -> str:
        return self.to_cycles()

    def apply_set(self, points: Iterable[int]) -> frozenset[int]:
        return frozenset(self.images[p] for p in points)

    def to_json(self) -> dict:
        return {"cycles": self.to_cycles(), "images": list(self.images)}


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p o q``, i.e. ``i -> p(q(i))``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree}")
    pi = p.images
    return Permutation._unchecked(tuple(pi[j] for j in q.images))


def compose_all(*perms: Permutation) -> Permutation:
    """Right-to-left composite of its arguments."""
    out = perms[-1]
    for p in reversed(perms[:-1]):
        out = compose(p, out)
    return out


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation._unchecked(tuple(inv))


def fixed_points(p: Permutation) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(p.images) if i == x)


class PermGroup:
    """A finite set of permutations of one degree, closed under composition.

    Elements are kept in lexicographic order of their image tuples, which is
    the canonical order used everywhere a witness has to be picked.
    """

    def __init__(self, degree: int, elements: Iterable[Permutation]):
        elems = sorted(set(elements))
        for p in elems:
            if p.degree != degree:
                raise DegreeMismatch(f"element of degree {p.degree} in group of degree {degree}")
        self.degree = degree
        self.elements: tuple[Permutation, ...] = tuple(elems)
        self._set = frozenset(elems)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, p: object) -> bool:
        return p in self._set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self._set == other._set

    def __hash__(self) -> int:
        return hash((self.degree, self._set))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={len(self)})"

    def as_set(self) -> frozenset[Permutation]:
        return self._set

    def is_closed(self) -> bool:
        """Exhaustive check of identity, composition and inverse closure."""
        if Permutation.identity(self.degree) not in self._set:
            return False
        for p in self.elements:
            if inverse(p) not in self._set:
                return False
            for q in self.elements:
                if compose(p, q) not in self._set:
                    return False
        return True


def generate_group(
    generators: Iterable[Permutation], degree: int | None = None, cap: int | None = None
) -> PermGroup:
    """Breadth-first closure of ``generators`` under composition.

    For a finite set of permutations, closure under composition already
    contains all inverses. ``degree`` is required when ``generators`` is empty.
    """
    gens = sorted(set(generators))
    if degree is None:
        if not gens:
            raise ValueError("degree is required for an empty generating set")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator of degree {g.degree}, expected {degree}")
    cap = max_closure() if cap is None else cap

    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    gen_images = [g.images for g in gens]
    while queue:
        cur = queue.popleft()
        for g in gen_images:
            nxt = tuple(g[j] for j in cur)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise ClosureTooLarge(f"closure exceeds {cap} elements")
                queue.append(nxt)
    return PermGroup(degree, (Permutation._unchecked(t) for t in seen))
