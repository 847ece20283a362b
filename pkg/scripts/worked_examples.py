"""Run the worked examples end to end and print what each one shows.

    python scripts/worked_examples.py [--fixtures fixtures] [--seeds 5] [--json out.json]

Finite part: gyrations, right nucleus, |Gamma_m| and 2-transitivity for each
fixture table found, plus the A3 geometry.  Analytic part: every property
suite on every model over several seeds, reporting the worst error.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from gyroklein.analytic import EinsteinBall, MobiusBall, MobiusDisk, norm_obstruction_witness  # noqa: E402
from gyroklein.checks import SuiteConfig, suite_names  # noqa: E402
from gyroklein.finite import gamma_m, right_nucleus, validate_gyrogroup  # noqa: E402
from gyroklein.klein import (  # noqa: E402
    Geometry,
    all_subsets,
    congruence_class,
    is_minimally_invariant,
    is_n_transitive,
    restricted_gyr_obstruction,
    transitivity_report,
    translation_geometry,
)
from gyroklein.standard import alternating  # noqa: E402
from gyroklein.tables import read_table  # noqa: E402


def finite_examples(fixtures: pathlib.Path) -> dict:
    out = {}
    for name in ("g8", "k16", "g15"):
        path = fixtures / f"{name}.tbl"
        if not path.exists():
            print(f"{name}: no table at {path}, skipped")
            continue
        G = validate_gyrogroup(read_table(path))
        geo = translation_geometry(G)
        one = transitivity_report(geo, 1)
        rec = {
            "gyrations": [str(g) for g in G.nontrivial_gyrations],
            "nucleus": sorted(right_nucleus(G)),
            "gamma_m_order": len(gamma_m(G)),
            "transitive": one.transitive,
            "sharply_transitive": one.sharp,
            "two_transitive": is_n_transitive(geo, 2),
            "restricted_obstruction": restricted_gyr_obstruction(G),
        }
        out[name] = rec
        print(f"{name}: n={G.n}  |Gamma_m|={rec['gamma_m_order']}  N_r={rec['nucleus']}")
        for g in rec["gyrations"]:
            print(f"    gyration {g}")
        x, y = rec["restricted_obstruction"]
        print(
            f"    transitive={one.transitive} sharp={one.sharp} two-transitive={rec['two_transitive']}"
            f"  (no gyration sends {x} to {y})"
        )

    geo = Geometry(alternating(3))
    cls = sorted(sorted(x + 1 for x in F) for F in congruence_class(geo, {0, 1}))
    a3 = {
        "class_of_12": cls,
        "F2_minimal": is_minimally_invariant(geo, all_subsets(3, 2)),
        "two_transitive": is_n_transitive(geo, 2),
    }
    out["A3"] = a3
    print(f"A3 on {{1,2,3}}: [{{1,2}}] = {cls}, F2 minimally invariant={a3['F2_minimal']}, 2-transitive={a3['two_transitive']}")
    return out


def analytic_examples(seeds: int) -> dict:
    out = {}
    disk = MobiusDisk()
    w = norm_obstruction_witness(disk, 0.5, 0.7)
    print(f"disk, x=0.5, y=0.7: {w}")
    out["disk_obstruction"] = {"norm_x": w.norm_x, "norm_y": w.norm_y}
    print(f"{'model':18s} {'suite':16s} {'worst':>10s}  {'tol':>6s}  seeds")
    for model in (disk, MobiusBall(3), EinsteinBall(3)):
        for name in suite_names(model):
            reps = [SuiteConfig(seed=s).run(name, model) for s in range(seeds)]
            worst = max(r.max_error for r in reps)
            ok = all(r.passed for r in reps)
            out[f"{model.spec}/{name}"] = {"worst": worst, "tolerance": reps[0].tolerance, "passed": ok}
            print(f"{model.spec:18s} {name:16s} {worst:10.3e}  {reps[0].tolerance:6.0e}  {seeds}  {'ok' if ok else 'FAIL'}")
    return out


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fixtures", type=pathlib.Path, default=pathlib.Path(__file__).resolve().parents[1] / "fixtures")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--json", type=pathlib.Path)
    args = ap.parse_args(argv)
    result = {"finite": finite_examples(args.fixtures), "analytic": analytic_examples(args.seeds)}
    if args.json:
        args.json.write_text(json.dumps(result, indent=2))
    return 0 if all(v["passed"] for k, v in result["analytic"].items() if "/" in k) else 2


if __name__ == "__main__":
    sys.exit(main())
