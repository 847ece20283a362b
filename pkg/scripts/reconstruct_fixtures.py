"""Rebuild the K16, G8 and G15 fixture tables.

The original Cayley tables live in the literature and are not reproduced in
this repository's sources.  This script produces a gyrogroup on
{0, ..., n-1} whose gyrations are exactly the published ones (the identity
plus the listed cycles), which pins down the right nucleus as well.  The
tables it writes are reconstructions consistent with those invariants, not
transcriptions.

G8 and K16 come from an SMT search (needs ``z3-solver``).  The same search
does not finish for G15 in reasonable time, so G15 is built as a transversal
of a subgroup of order 5 in (Z5 x Z5) x| Z3 and then relabelled so that its
gyrations are the published 5-cycles.

    python scripts/reconstruct_fixtures.py [--out fixtures] [--only g15]
"""

from __future__ import annotations

import argparse
import itertools
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from gyroklein.errors import GyrogroupAxiomError  # noqa: E402
from gyroklein.finite import validate_gyrogroup  # noqa: E402
from gyroklein.perm import Permutation  # noqa: E402
from gyroklein.tables import write_table  # noqa: E402

# name -> (order, published nontrivial gyrations in cycle notation)
TARGETS = {
    "g8": (8, ["(4 6)(5 7)"]),
    "k16": (16, ["(8 9)(10 11)(12 13)(14 15)"]),
    "g15": (
        15,
        [
            "(1 7 5 10 6)(2 3 8 11 14)",
            "(1 6 10 5 7)(2 14 11 8 3)",
            "(1 10 7 6 5)(2 11 3 14 8)",
            "(1 5 6 7 10)(2 8 14 3 11)",
        ],
    ),
}


def search(n: int, cycles: list[str], seed: int = 0, cyclic_nucleus: bool = False) -> list[list[int]]:
    """Find a table whose gyrations are exactly ``I`` and ``cycles``.

    ``cyclic_nucleus`` fixes the common fixed points of the gyrations to
    carry a cyclic group table in increasing label order. It only narrows
    the search; whatever comes back is still validated from scratch.
    """
    import z3

    gyrations = [Permutation.identity(n)] + [Permutation.from_cycles(c, n) for c in cycles]
    E, elems = z3.EnumSort(f"E{n}", [f"x{i}" for i in range(n)])
    K, kinds = z3.EnumSort(f"K{n}", [f"g{k}" for k in range(len(gyrations))])
    op = z3.Function("op", E, E, E)
    sel = z3.Function("sel", E, E, K)
    act = z3.Function("act", K, E, E)

    s = z3.Solver()
    s.set("random_seed", seed)
    for k, g in enumerate(gyrations):
        for i in range(n):
            s.add(act(kinds[k], elems[i]) == elems[g(i)])
    e = elems[0]
    for a in elems:
        s.add(op(e, a) == a, op(a, e) == a)
        s.add(z3.Or([op(b, a) == e for b in elems]))
        s.add(z3.Distinct([op(a, b) for b in elems]))
    for a in elems:
        for b in elems:
            s.add(sel(op(a, b), b) == sel(a, b))
            for c in elems:
                s.add(op(a, op(b, c)) == op(op(a, b), act(sel(a, b), c)))
    # every listed gyration is an automorphism and actually occurs
    for k in range(1, len(gyrations)):
        for a in elems:
            for b in elems:
                s.add(act(kinds[k], op(a, b)) == op(act(kinds[k], a), act(kinds[k], b)))
        s.add(z3.Or([sel(a, b) == kinds[k] for a in elems for b in elems]))

    if cyclic_nucleus:
        fixed = [i for i in range(n) if all(g(i) == i for g in gyrations)]
        k = len(fixed)
        for i in range(k):
            for j in range(k):
                s.add(op(elems[fixed[i]], elems[fixed[j]]) == elems[fixed[(i + j) % k]])

    if s.check() != z3.sat:
        raise RuntimeError(f"no table of order {n} with the requested gyrations")
    m = s.model()
    index = {str(x): i for i, x in enumerate(elems)}
    return [[index[str(m.eval(op(a, b)))] for b in elems] for a in elems]


# (Z5 x Z5) x| Z3, with Z3 acting through a matrix of order 3 that has no
# eigenvector over F5, so no subgroup of order 5 is normal
P = 5
M = ((0, P - 1), (1, P - 1))


def _mat_pow(k):
    R = ((1, 0), (0, 1))
    for _ in range(k % 3):
        R = tuple(tuple(sum(R[i][t] * M[t][j] for t in range(2)) % P for j in range(2)) for i in range(2))
    return R


def _act(k, v):
    R = _mat_pow(k)
    return tuple((R[i][0] * v[0] + R[i][1] * v[1]) % P for i in range(2))


def _mul(x, y):
    (n1, k1), (n2, k2) = x, y
    m = _act(k1, n2)
    return (((n1[0] + m[0]) % P, (n1[1] + m[1]) % P), (k1 + k2) % 3)


def _inv(x):
    n, k = x
    m = _act(-k, n)
    return (((-m[0]) % P, (-m[1]) % P), (-k) % 3)


def _line(d):
    return [((s * d[0]) % P, (s * d[1]) % P) for s in range(P)]


def transversal_g15() -> list[list[int]]:
    """A gyrogroup of order 15 as a left transversal ``B`` of ``H = <(1,0)>``.

    ``a + b`` is the element of ``B`` in the coset ``a b H``.  ``B`` is a
    complementary line in Z5 x Z5 together with one ``H``-conjugation orbit in
    each nontrivial coset of Z5 x Z5, closed under inverses.
    """
    H = [(n, 0) for n in _line((1, 0))]
    IM = ((1, 0), (0, 1))
    IM = tuple(tuple((IM[i][j] - M[i][j]) % P for j in range(2)) for i in range(2))

    def coset(g):
        return frozenset(_mul(g, h) for h in H)

    for t, n0 in itertools.product(range(P), itertools.product(range(P), repeat=2)):
        part = [
            (((n0[0] + IM[0][0] * h[0] + IM[0][1] * h[1]) % P, (n0[1] + IM[1][0] * h[0] + IM[1][1] * h[1]) % P), 1)
            for h, _ in H
        ]
        B = [(n, 0) for n in _line((t, 1))] + part + [_inv(x) for x in part]
        if len({coset(b) for b in B}) != 15:
            continue
        idx = {coset(b): i for i, b in enumerate(B)}
        table = [[idx[coset(_mul(a, b))] for b in B] for a in B]
        try:
            G = validate_gyrogroup(table)
        except GyrogroupAxiomError:
            continue
        if len(G.nontrivial_gyrations) == 4:
            return table
    raise RuntimeError("no suitable transversal found")


def relabel_onto(table: list[list[int]], target: Permutation) -> list[list[int]]:
    """Rename elements so that some gyration of ``table`` becomes ``target``."""
    G = validate_gyrogroup(table)
    n = G.n
    src = G.nontrivial_gyrations[0]
    src_cycles = sorted(c for c in src.cycles() if len(c) > 1)
    tgt_cycles = sorted(c for c in target.cycles() if len(c) > 1)
    if sorted(map(len, src_cycles)) != sorted(map(len, tgt_cycles)):
        raise ValueError("cycle types differ")
    pi = {}
    for c, d in zip(src_cycles, tgt_cycles):
        for x, y in zip(c, d):
            pi[x] = y
    # fixed points: identity to 0, the rest in increasing order
    src_fixed = sorted(x for x in range(n) if src(x) == x)
    tgt_fixed = sorted(x for x in range(n) if target(x) == x)
    src_fixed.remove(G.identity)
    tgt_fixed.remove(0)
    pi[G.identity] = 0
    pi.update(zip(src_fixed, tgt_fixed))
    inv = {y: x for x, y in pi.items()}
    return [[pi[table[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]


def build_g15() -> list[list[int]]:
    return relabel_onto(transversal_g15(), Permutation.from_cycles(TARGETS["g15"][1][0], 15))


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="fixtures")
    ap.add_argument("--only", nargs="*", default=list(TARGETS))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cyclic-nucleus", action="store_true", help="narrow the search with a cyclic nucleus table")
    args = ap.parse_args(argv)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in args.only:
        n, cycles = TARGETS[name]
        if name == "g15":
            table = build_g15()
        else:
            table = search(n, cycles, seed=args.seed, cyclic_nucleus=args.cyclic_nucleus)
        check = validate_gyrogroup(table)
        got = sorted(str(g) for g in check.nontrivial_gyrations)
        want = sorted(str(Permutation.from_cycles(c, n)) for c in cycles)
        assert got == want, (got, want)
        write_table(out / f"{name}.tbl", table)
        print(f"wrote {out / f'{name}.tbl'} (n={n})")


if __name__ == "__main__":
    main()
