"""Standard small permutation groups and group tables used as test corpora."""

from __future__ import annotations

import itertools

from .perm import PermGroup, Permutation, compose, generate_group
from .tables import Table, cyclic_table, direct_product_table


def cyclic(n: int) -> PermGroup:
    return generate_group([Permutation(tuple((i + 1) % n for i in range(n)))], degree=n)


def dihedral(n: int) -> PermGroup:
    rot = Permutation(tuple((i + 1) % n for i in range(n)))
    ref = Permutation(tuple((-i) % n for i in range(n)))
    return generate_group([rot, ref], degree=n)


def symmetric(n: int) -> PermGroup:
    return PermGroup(n, (Permutation(p) for p in itertools.permutations(range(n))))


def alternating(n: int) -> PermGroup:
    def even(p):
        inv = sum(1 for i, j in itertools.combinations(range(n), 2) if p[i] > p[j])
        return inv % 2 == 0

    return PermGroup(n, (Permutation(p) for p in itertools.permutations(range(n)) if even(p)))


def trivial(n: int) -> PermGroup:
    return PermGroup(n, [Permutation.identity(n)])


def affine_line(p: int) -> PermGroup:
    """AGL(1, p): ``x -> a x + b`` on ``Z_p``, sharply 2-transitive."""
    return PermGroup(
        p, (Permutation(tuple((a * x + b) % p for x in range(p))) for a in range(1, p) for b in range(p))
    )


def projective_line(p: int) -> PermGroup:
    """PGL(2, p) on the ``p + 1`` points of the projective line; point ``p`` is infinity.

    Sharply 3-transitive.
    """
    inf = p

    def mobius(a, b, c, d):
        img = []
        for x in range(p + 1):
            if x == inf:
                num, den = a, c
            else:
                num, den = (a * x + b) % p, (c * x + d) % p
            img.append(inf if den == 0 else (num * pow(den, -1, p)) % p)
        return Permutation(tuple(img))

    elems = {
        mobius(a, b, c, d)
        for a, b, c, d in itertools.product(range(p), repeat=4)
        if (a * d - b * c) % p
    }
    return PermGroup(p + 1, elems)


def group_table(group: PermGroup) -> Table:
    """Cayley table of ``group`` with elements indexed in canonical order
    (the identity comes first)."""
    elems = group.elements
    index = {g: i for i, g in enumerate(elems)}
    return tuple(tuple(index[compose(a, b)] for b in elems) for a in elems)


def quaternion_group() -> PermGroup:
    """Q8 in its regular representation on 8 points."""
    i = Permutation.from_cycles("(1 2 3 4)(5 6 7 8)", 8, base=1)
    j = Permutation.from_cycles("(1 5 3 7)(2 8 4 6)", 8, base=1)
    return generate_group([i, j])


def group_tables(max_order: int = 8) -> dict[str, Table]:
    """Small group tables keyed by name, all of order ``<= max_order``."""
    out: dict[str, Table] = {f"Z{n}": cyclic_table(n) for n in range(1, max_order + 1)}
    z2 = cyclic_table(2)
    extra = {
        "Z2xZ2": direct_product_table(z2, z2),
        "Z2xZ2xZ2": direct_product_table(direct_product_table(z2, z2), z2),
        "Z2xZ4": direct_product_table(z2, cyclic_table(4)),
        "S3": group_table(symmetric(3)),
        "D4": group_table(dihedral(4)),
        "Q8": group_table(quaternion_group()),
    }
    out.update({k: v for k, v in extra.items() if len(v) <= max_order})
    return out


def geometry_corpus(max_points: int = 8) -> dict[str, PermGroup]:
    """Named transformation groups on at most ``max_points`` points.

    Mixes regular, multiply transitive, intransitive and trivial actions so
    that every branch of the transitivity and invariance theorems is hit.
    """
    out: dict[str, PermGroup] = {}
    for n in range(1, max_points + 1):
        out[f"C{n}"] = cyclic(n)
        out[f"triv{n}"] = trivial(n)
        if n >= 3:
            out[f"D{n}"] = dihedral(n)
    for n in range(2, min(max_points, 5) + 1):
        out[f"S{n}"] = symmetric(n)
    for n in range(3, min(max_points, 6) + 1):
        out[f"A{n}"] = alternating(n)
    for p in (3, 5, 7):
        if p <= max_points:
            out[f"AGL1_{p}"] = affine_line(p)
        if p + 1 <= max_points:
            out[f"PGL2_{p}"] = projective_line(p)
    if max_points >= 6:
        # S3 acting on {0,1,2} and {3,4,5} simultaneously: intransitive
        out["S3diag"] = generate_group(
            [Permutation.from_cycles("(0 1)(3 4)", 6), Permutation.from_cycles("(0 1 2)(3 4 5)", 6)]
        )
    if max_points >= 8:
        out["Q8reg"] = quaternion_group()
    return out
