"""Seeded property suites for the analytic models.

Each suite returns a :class:`CheckReport`; ``max_error`` is the worst
deviation over all sub-properties and ``errors`` breaks it down.
Samples are drawn uniformly (by volume) from the ball of Euclidean radius
``max_radius``.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from .analytic import (
    GyroTransform,
    MobiusDisk,
    NormedGyrogroupModel,
    OpenBall,
    apply_transform,
    check_ball_image,
    cross_ratio,
    gyr_via_definition,
    random_transform,
)

log = logging.getLogger(__name__)

# double-precision conditioning of the derived gyration grows like
# 1/(1 - |a+b|^2); past this radius a 1e-9 budget is no longer met reliably
SAMPLE_RADIUS = 0.99
# parameters of random transforms; their images of SAMPLE_RADIUS points then
# stay clear of the boundary
TRANSFORM_RADIUS = 0.9


@dataclass
class CheckReport:
    check: str
    model: str
    samples: int
    seed: int
    tolerance: float
    max_error: float
    errors: dict[str, float] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tolerance)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "model": self.model,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "max_error": self.max_error,
            "passed": self.passed,
            "errors": dict(self.errors),
        }


def _report(check, model, samples, seed, tol, errors, t0) -> CheckReport:
    errs = {k: float(v) for k, v in errors.items()}
    rep = CheckReport(check, model.spec, samples, seed, tol, max(errs.values(), default=0.0), errs, time.perf_counter() - t0)
    log.info("%s on %s: seed=%d samples=%d max_error=%.3g", check, model.spec, seed, samples, rep.max_error)
    return rep


def _dev(model, x, y) -> float:
    return float(np.max(model._abs(model._coerce(x) - model._coerce(y))))


def check_axioms(model: NormedGyrogroupModel, samples: int = 1000, seed: int = 0, max_radius: float = SAMPLE_RADIUS) -> CheckReport:
    """Gyrogroup axioms and left cancellation on random triples."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    a, b, c, d = (model.random_points(rng, samples, max_radius=max_radius) for _ in range(4))
    z = model.zero()
    add, neg = model.add, model.neg
    g_abc = gyr_via_definition(model, a, b, c)
    errors = {
        "left_identity": _dev(model, add(z, a), a),
        "right_identity": _dev(model, add(a, z), a),
        "left_inverse": _dev(model, add(neg(a), a), z),
        "right_inverse": _dev(model, add(a, neg(a)), z),
        "left_gyroassociative": _dev(model, add(a, add(b, c)), add(add(a, b), g_abc)),
        "gyr_automorphism": _dev(
            model,
            gyr_via_definition(model, a, b, add(c, d)),
            add(g_abc, gyr_via_definition(model, a, b, d)),
        ),
        "gyr_fixes_identity": _dev(model, gyr_via_definition(model, a, b, z), z),
        "left_loop": _dev(model, gyr_via_definition(model, add(a, b), b, c), g_abc),
        "left_cancellation": _dev(model, add(neg(a), add(a, b)), b),
    }
    return _report("axioms", model, samples, seed, model.tolerance, errors, t0)


def check_gyr_closed_form(model: MobiusDisk, samples: int = 1000, seed: int = 0, max_radius: float = 0.9, tolerance: float = 1e-12) -> CheckReport:
    """Disk gyration multiplier against the derived gyration."""
    if not isinstance(model, MobiusDisk):
        raise ValueError("the closed-form gyration check applies to the disk model only")
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    a, b, c = (model.random_points(rng, samples, max_radius=max_radius) for _ in range(3))
    errors = {"closed_form": _dev(model, model.gyr_closed_form(a, b, c), gyr_via_definition(model, a, b, c))}
    return _report("gyr-closed-form", model, samples, seed, tolerance, errors, t0)


def check_norm(model: NormedGyrogroupModel, samples: int = 1000, seed: int = 0, max_radius: float = SAMPLE_RADIUS) -> CheckReport:
    """Gyronorm axioms: positivity, inverse and gyration invariance, subadditivity."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    x, y, a, b = (model.random_points(rng, samples, max_radius=max_radius) for _ in range(4))
    nx = model.norm(x)
    errors = {
        "norm_of_identity": abs(float(model.norm(model.zero()))),
        # any nonzero point with a nonpositive norm counts as a full failure
        "positivity": float(np.any(nx[model._abs(x) > 0] <= 0)),
        "inverse_invariance": float(np.max(np.abs(model.norm(model.neg(x)) - nx))),
        "subadditivity": float(np.max(np.maximum(0.0, model.norm(model.add(x, y)) - nx - model.norm(y)))),
        "gyration_invariance": float(np.max(np.abs(model.norm(gyr_via_definition(model, a, b, x)) - nx))),
    }
    return _report("norm", model, samples, seed, model.tolerance, errors, t0)


def check_metric(model: NormedGyrogroupModel, samples: int = 1000, seed: int = 0, max_radius: float = SAMPLE_RADIUS) -> CheckReport:
    """Gyronorm metric: zero diagonal, symmetry, triangle inequality, isometries."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    x, y, w, a = (model.random_points(rng, samples, max_radius=max_radius) for _ in range(4))
    d = model.dist
    dxy = d(x, y)
    T = random_transform(model, rng, max_word=3, max_radius=TRANSFORM_RADIUS, size=samples)
    iso = float(np.max(np.abs(d(apply_transform(model, T, x), apply_transform(model, T, y)) - dxy)))
    errors = {
        "zero_diagonal": float(np.max(np.abs(d(x, x)))),
        "symmetry": float(np.max(np.abs(dxy - d(y, x)))),
        "triangle": float(np.max(np.maximum(0.0, d(x, w) - dxy - d(y, w)))),
        "left_translation": float(np.max(np.abs(d(model.add(a, x), model.add(a, y)) - dxy))),
        "transform_invariance": iso,
    }
    return _report("metric", model, samples, seed, model.tolerance, errors, t0)


def check_cross_ratio(model: NormedGyrogroupModel, samples: int = 500, seed: int = 0, max_radius: float = SAMPLE_RADIUS, rel_tolerance: float | None = None) -> CheckReport:
    """Relative change of the cross ratio under random transforms (word length <= 3)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    u, v, x, y = (model.random_points(rng, samples, max_radius=max_radius) for _ in range(4))
    T = random_transform(model, rng, max_word=3, max_radius=TRANSFORM_RADIUS, size=samples)
    before = cross_ratio(model, u, v, x, y)
    after = cross_ratio(model, *(apply_transform(model, T, p) for p in (u, v, x, y)))
    worst = float(np.max(np.abs(after - before) / np.abs(before)))
    tol = model.tolerance if rel_tolerance is None else rel_tolerance
    return _report("cross-ratio", model, samples, seed, tol, {"relative_deviation": worst}, t0)


def check_balls(model: NormedGyrogroupModel, samples: int = 20, seed: int = 0, points: int = 200, max_radius: float = 0.9) -> CheckReport:
    """Membership sampling for ``L_a(B(x, r)) = B(a + x, r)`` and ``T(B(x, r)) = B(T x, r)``.

    ``max_error`` counts membership mismatches outside the margin band.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    mism = {"translation": 0, "transform": 0, "carrying": 0}
    for _ in range(samples):
        a, x, y = model.random_points(rng, 3, max_radius=max_radius)
        eps = float(rng.uniform(0.05, 1.5))
        B = OpenBall(x, eps)
        mism["translation"] += check_ball_image(model, GyroTransform(a, []), B, rng, points).mismatches
        T = random_transform(model, rng, max_word=3, max_radius=TRANSFORM_RADIUS)
        mism["transform"] += check_ball_image(model, T, B, rng, points).mismatches
        mism["carrying"] += check_ball_image(model, GyroTransform.carrying(model, x, y), B, rng, points).mismatches
    return _report("balls", model, samples, seed, 0.0, mism, t0)


SUITES = {
    "axioms": check_axioms,
    "gyr-closed-form": check_gyr_closed_form,
    "norm": check_norm,
    "metric": check_metric,
    "cross-ratio": check_cross_ratio,
    "balls": check_balls,
}


@dataclass(frozen=True)
class SuiteConfig:
    """Run parameters for the property suites; ``None`` keeps each suite's default."""

    seed: int = 0
    samples: int | None = None
    max_radius: float | None = None

    def run(self, name: str, model: NormedGyrogroupModel) -> CheckReport:
        if name not in SUITES:
            raise ValueError(f"unknown check {name!r}; choose from {sorted(SUITES)}")
        kw = {"seed": self.seed}
        if self.samples is not None:
            kw["samples"] = self.samples
        if self.max_radius is not None:
            kw["max_radius"] = self.max_radius
        return SUITES[name](model, **kw)


def suite_names(model: NormedGyrogroupModel) -> list[str]:
    """Every suite that applies to ``model``."""
    return [n for n in SUITES if n != "gyr-closed-form" or isinstance(model, MobiusDisk)]
