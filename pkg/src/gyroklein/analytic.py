"""Normed gyrogroups on the open unit disk and ball.

Points of the ball models are real arrays whose last axis holds the
coordinates; every operation broadcasts over leading axes. Points of the
complex disk model are complex scalars or arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegeneratePair, DimensionMismatch, OutOfBall

BOUNDARY_GUARD = 1e-6
DEFAULT_TOL = 1e-9


# -- scalar formulas -------------------------------------------------------


def _check_disk(*zs) -> None:
    for z in zs:
        if np.any(np.abs(z) >= 1):
            raise OutOfBall("point outside the open unit disk")


def mobius_add_disk(w, z):
    """``(w + z) / (1 + conj(w) z)``."""
    _check_disk(w, z)
    return (w + z) / (1 + np.conj(w) * z)


def mobius_gyr_disk(a, b):
    """Unit-modulus multiplier of ``gyr[a, b]`` on the disk: ``(1 + a conj(b)) / (1 + conj(a) b)``."""
    _check_disk(a, b)
    return (1 + a * np.conj(b)) / (1 + np.conj(a) * b)


def _dot(u, v):
    return np.sum(u * v, axis=-1, keepdims=True)


def _check_ball(*vs) -> None:
    dims = {np.shape(v)[-1] for v in vs}
    if len(dims) != 1:
        raise DimensionMismatch(f"dimensions differ: {sorted(dims)}")
    for v in vs:
        if np.any(np.linalg.norm(v, axis=-1) >= 1):
            raise OutOfBall("point outside the open unit ball")


def mobius_add_ball_direct(u, v):
    """Mobius addition evaluated term by term from its textbook form.

    Loses precision when ``v`` is close to ``-u`` near the boundary (the
    denominator collapses to ``(1 - |u|^2)^2``); kept as a reference.
    """
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    _check_ball(u, v)
    uv, uu, vv = _dot(u, v), _dot(u, u), _dot(v, v)
    return ((1 + 2 * uv + vv) * u + (1 - uu) * v) / (1 + 2 * uv + uu * vv)


def mobius_add_ball(u, v):
    """Mobius addition on the unit ball.

    Evaluated through the identities
    ``num = (1 + <u,v>) s + <s,v> u - <s,u> v`` with ``s = u + v`` and
    ``den = (1 + <u,v>)^2 + |u|^2 |v_perp|^2`` (``v_perp`` the part of ``v``
    orthogonal to ``u``), which equal the textbook numerator and denominator
    but keep relative accuracy when ``u + v`` is small.
    """
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    _check_ball(u, v)
    s = u + v
    uv, uu = _dot(u, v), _dot(u, u)
    c = 1 + uv
    num = c * s + _dot(s, v) * u - _dot(s, u) * v
    safe = np.where(uu > 0, uu, 1.0)
    v_perp = v - (uv / safe) * u
    den = c * c + uu * _dot(v_perp, v_perp)
    return num / den


def lorentz_factor(u):
    return 1.0 / np.sqrt(1 - _dot(u, u))


def einstein_add(u, v):
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    _check_ball(u, v)
    g = lorentz_factor(u)
    uv = _dot(u, v)
    return (u + v / g + (g / (1 + g)) * uv * u) / (1 + uv)


# -- models ----------------------------------------------------------------


class NormedGyrogroupModel:
    """Common interface: ``add``, ``neg``, ``gyr``, ``norm`` and the metric."""

    name = "model"
    dim = 0

    def __init__(self, tolerance: float = DEFAULT_TOL):
        self.tolerance = tolerance

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec!r})"

    @property
    def spec(self) -> str:
        return self.name

    # subclasses implement _add, _abs, _coerce, zero_point
    def add(self, u, v):
        return self._add(u, v)

    def neg(self, u):
        return -self._coerce(u)

    def gyr(self, a, b, c):
        return gyr_via_definition(self, a, b, c)

    def norm(self, v):
        """Gyronorm."""
        r = self._abs(self._coerce(v))
        self._check_radius(r)
        return self._gyronorm_of_radius(r)

    def dist(self, x, y):
        """Gyronorm metric ``|| -x + y ||``.

        Equal to ``norm(add(neg(x), y))``; evaluated as
        ``log(1 + r) - log(1 - r^2) / 2`` with ``1 - r^2`` taken from a
        closed form in ``x`` and ``y``, so far-apart points near the boundary
        keep full accuracy.
        """
        x, y = self._coerce(x), self._coerce(y)
        r = self._abs(self.add(self.neg(x), y))
        q = self._one_minus_sq_of_difference(x, y)
        # rounding can leave a tiny negative value on the diagonal
        return np.maximum(np.log1p(r) - 0.5 * np.log(q), 0.0)

    def _one_minus_sq(self, v):
        return 1 - self._abs(v) ** 2

    def _check_radius(self, r) -> None:
        if np.any(r >= 1):
            raise OutOfBall(f"point outside the open unit ball of {self.spec}")

    def radius_for_norm(self, s):
        """Euclidean radius whose gyronorm is ``s``."""
        # both paper norms reduce to artanh(r): artanh(2r/(1+r^2)) = 2 artanh(r)
        return np.tanh(s)

    def random_directions(self, rng: np.random.Generator, size: int | Sequence[int] = ()):
        size = (size,) if isinstance(size, int) else tuple(size)
        dirs = rng.standard_normal(size + (self.dim,))
        dirs /= np.linalg.norm(dirs, axis=-1, keepdims=True)
        return self._from_real(dirs)

    def random_points(self, rng: np.random.Generator, size: int | Sequence[int] = (), max_radius: float | None = None):
        """Uniform (by volume) in the ball of radius ``max_radius``, which
        defaults to the boundary guard ``1 - BOUNDARY_GUARD``."""
        lim = 1 - BOUNDARY_GUARD if max_radius is None else max_radius
        size = (size,) if isinstance(size, int) else tuple(size)
        r = lim * rng.random(size) ** (1.0 / self.dim)
        return self.scale(self.random_directions(rng, size), r)

    def scale(self, v, r):
        """Multiply points by real scalars ``r`` (broadcast over leading axes)."""
        return v * np.asarray(r)[..., None]

    def _from_real(self, x):
        return x

    def point(self, coords, guard: float = BOUNDARY_GUARD):
        """Validated carrier point; rejects anything beyond ``1 - guard``."""
        v = self._coerce(coords)
        if np.any(self._abs(v) > 1 - guard):
            raise OutOfBall(f"norm exceeds the boundary guard 1 - {guard}")
        return v

    def to_json(self, v) -> list:
        return np.asarray(v, dtype=float).tolist()

    def from_json(self, data):
        return self._coerce(np.asarray(data, dtype=float))


class MobiusDisk(NormedGyrogroupModel):
    """Complex Mobius gyrogroup on the unit disk."""

    name = "disk"
    dim = 2

    def _coerce(self, z):
        return np.asarray(z, dtype=complex)

    def _abs(self, z):
        return np.abs(z)

    def _add(self, w, z):
        return mobius_add_disk(self._coerce(w), self._coerce(z))

    def _gyronorm_of_radius(self, r):
        return 0.5 * np.arctanh(2 * r / (1 + r * r))

    def zero(self):
        return np.complex128(0)

    def _from_real(self, x):
        return x[..., 0] + 1j * x[..., 1]

    def scale(self, v, r):
        return v * r

    def _one_minus_sq_of_difference(self, x, y):
        # 1 - |-x + y|^2 = (1 - |x|^2)(1 - |y|^2) / |1 - conj(x) y|^2
        return self._one_minus_sq(x) * self._one_minus_sq(y) / np.abs(1 - np.conj(x) * y) ** 2

    def gyr_closed_form(self, a, b, c):
        return mobius_gyr_disk(self._coerce(a), self._coerce(b)) * self._coerce(c)

    def to_json(self, v) -> list:
        v = np.asarray(v, dtype=complex)
        return np.stack([v.real, v.imag], axis=-1).tolist()

    def from_json(self, data):
        x = np.asarray(data, dtype=float)
        return self._from_real(x)


class _BallModel(NormedGyrogroupModel):
    def __init__(self, dim: int, tolerance: float = DEFAULT_TOL):
        super().__init__(tolerance)
        if dim < 1:
            raise ValueError("dimension must be at least 1")
        self.dim = dim

    @property
    def spec(self) -> str:
        return f"{self.name}:{self.dim}"

    def _coerce(self, v):
        v = np.asarray(v, dtype=float)
        if v.shape[-1:] != (self.dim,):
            raise DimensionMismatch(f"expected last axis {self.dim}, got shape {v.shape}")
        return v

    def _abs(self, v):
        return np.linalg.norm(v, axis=-1)

    def zero(self):
        return np.zeros(self.dim)


class MobiusBall(_BallModel):
    name = "mobius-ball"

    def _one_minus_sq_of_difference(self, x, y):
        # 1 - |-x + y|^2 = (1 - |x|^2)(1 - |y|^2) / den(-x, y)
        xy, xx = _dot(x, y)[..., 0], _dot(x, x)[..., 0]
        c = 1 - xy
        safe = np.where(xx > 0, xx, 1.0)
        y_perp = y - (xy / safe)[..., None] * x
        den = c * c + xx * _dot(y_perp, y_perp)[..., 0]
        return self._one_minus_sq(x) * self._one_minus_sq(y) / den

    def _add(self, u, v):
        return mobius_add_ball(self._coerce(u), self._coerce(v))

    def _gyronorm_of_radius(self, r):
        return 0.5 * np.arctanh(2 * r / (1 + r * r))


class EinsteinBall(_BallModel):
    name = "einstein-ball"

    def _one_minus_sq_of_difference(self, x, y):
        # gamma(-x + y) = gamma(x) gamma(y) (1 - <x, y>)
        c = 1 - _dot(x, y)[..., 0]
        return self._one_minus_sq(x) * self._one_minus_sq(y) / (c * c)

    def _add(self, u, v):
        return einstein_add(self._coerce(u), self._coerce(v))

    def _gyronorm_of_radius(self, r):
        return np.arctanh(r)


def parse_model(spec: str, tolerance: float = DEFAULT_TOL) -> NormedGyrogroupModel:
    """``disk``, ``mobius-ball:d`` or ``einstein-ball:d``."""
    kind, _, dim = spec.partition(":")
    if kind == "disk" and not dim:
        return MobiusDisk(tolerance)
    cls = {"mobius-ball": MobiusBall, "einstein-ball": EinsteinBall}.get(kind)
    if cls is None or not dim.isdigit() or int(dim) < 1:
        raise ValueError(f"unknown model {spec!r}; use disk, mobius-ball:d or einstein-ball:d")
    return cls(int(dim), tolerance)


# -- derived operations ----------------------------------------------------


def gyr_via_definition(model: NormedGyrogroupModel, a, b, c):
    """``gyr[a, b] c = -(a + b) + (a + (b + c))``."""
    return model.add(model.neg(model.add(a, b)), model.add(a, model.add(b, c)))


def gyronorm(model: NormedGyrogroupModel, v):
    return model.norm(v)


def gyrometric(model: NormedGyrogroupModel, x, y):
    """``d(x, y) = || -x + y ||``."""
    return model.dist(x, y)


def cross_ratio(model: NormedGyrogroupModel, u, v, x, y):
    duv, dxy = model.dist(u, v), model.dist(x, y)
    if np.any(duv < model.tolerance) or np.any(dxy < model.tolerance):
        raise DegeneratePair("cross ratio needs u != v and x != y")
    return model.dist(u, x) * model.dist(v, y) / (duv * dxy)


@dataclass
class GyroTransform:
    """``L_a o gyr[a1, b1] o ... o gyr[ak, bk]``; gyrations act right to left."""

    translation: np.ndarray
    word: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list)

    @classmethod
    def identity(cls, model: NormedGyrogroupModel) -> GyroTransform:
        return cls(model.zero(), [])

    @classmethod
    def carrying(cls, model: NormedGyrogroupModel, x, y) -> GyroTransform:
        """``L_y o L_{-x}``, written as ``L_{y - x} o gyr[y, -x]``; sends ``x`` to ``y``."""
        mx = model.neg(x)
        return cls(model.add(y, mx), [(y, mx)])

    @classmethod
    def isotropy(cls, model: NormedGyrogroupModel, p, word) -> GyroTransform:
        """``L_p o gamma o L_{-p}`` in normal form, for ``gamma`` the gyration ``word``.

        Equals ``L_{p + gamma(-p)} o gyr[p, gamma(-p)] o gamma``.
        """
        gamma = cls(model.zero(), list(word))
        gp = apply_transform(model, gamma, model.neg(p))
        return cls(model.add(p, gp), [(p, gp)] + list(word))

    def to_json(self, model: NormedGyrogroupModel) -> dict:
        return {
            "a": model.to_json(self.translation),
            "word": [[model.to_json(a), model.to_json(b)] for a, b in self.word],
        }

    @classmethod
    def from_json(cls, model: NormedGyrogroupModel, data: dict) -> GyroTransform:
        return cls(model.from_json(data["a"]), [(model.from_json(a), model.from_json(b)) for a, b in data["word"]])


def apply_transform(model: NormedGyrogroupModel, T: GyroTransform, x):
    for a, b in reversed(T.word):
        x = model.gyr(a, b, x)
    return model.add(T.translation, x)


def random_transform(
    model: NormedGyrogroupModel,
    rng: np.random.Generator,
    max_word: int = 3,
    max_radius: float | None = None,
    size: int | None = None,
) -> GyroTransform:
    """Random element of Gamma_m with a word of 0..``max_word`` gyrations.

    With ``size`` set, returns a batch of ``size`` transforms stored as arrays
    with a leading axis; shorter words are padded with ``gyr[0, 0]``, which is
    the identity exactly.
    """
    if size is None:
        k = int(rng.integers(0, max_word + 1))
        pts = model.random_points(rng, 2 * k + 1, max_radius=max_radius)
        return GyroTransform(pts[0], [(pts[1 + 2 * i], pts[2 + 2 * i]) for i in range(k)])
    ks = rng.integers(0, max_word + 1, size=size)
    a = model.random_points(rng, size, max_radius=max_radius)
    word = []
    for i in range(max_word):
        use = ks > i
        pair = []
        for _ in range(2):
            p = model.random_points(rng, size, max_radius=max_radius)
            pair.append(np.where(use[:, None], p, 0) if p.ndim > 1 else np.where(use, p, 0))
        word.append(tuple(pair))
    return GyroTransform(a, word)


def is_rotation_about(
    model: NormedGyrogroupModel, T: GyroTransform, p, samples: int = 100, rng: np.random.Generator | None = None
) -> bool:
    """Sample-based: ``T`` fixes ``p`` and keeps the gyronorm of every sample.

    A ``True`` answer means "consistent with a rotation about p", never a proof.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(0) if rng is None else rng
    tol = model.tolerance
    if model._abs(apply_transform(model, T, p) - model._coerce(p)) > tol:
        return False
    xs = model.random_points(rng, samples)
    err = np.abs(model.norm(apply_transform(model, T, xs)) - model.norm(xs))
    return bool(np.all(err <= tol))


@dataclass(frozen=True)
class OpenBall:
    """``{y : d(center, y) < radius}`` with ``radius`` in gyronorm-metric units."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def contains(self, model: NormedGyrogroupModel, y):
        return model.dist(self.center, y) < self.radius

    def margin_distance(self, model: NormedGyrogroupModel, y):
        return np.abs(model.dist(self.center, y) - self.radius)


def ball_transform(model: NormedGyrogroupModel, T: GyroTransform, B: OpenBall) -> OpenBall:
    return OpenBall(apply_transform(model, T, B.center), B.radius)


def sample_near_ball(model: NormedGyrogroupModel, B: OpenBall, rng: np.random.Generator, count: int):
    """Points ``center + w`` with ``||w||`` uniform in ``(0, 2 radius)``, so about
    half fall inside ``B``."""
    s = 2 * B.radius * rng.random(count)
    w = model.scale(model.random_directions(rng, count), model.radius_for_norm(s))
    return model.add(B.center, w)


@dataclass(frozen=True)
class BallImageCheck:
    checked: int
    excluded: int
    mismatches: int

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


def check_ball_image(
    model: NormedGyrogroupModel,
    T: GyroTransform,
    B: OpenBall,
    rng: np.random.Generator,
    samples: int = 200,
    margin: float = 1e-7,
) -> BallImageCheck:
    """Membership sampling for ``T(B) = ball_transform(T, B)``.

    Checks ``y in B  <=>  T(y) in T(B)`` on points sampled around ``B``;
    points within ``margin`` of either boundary sphere are excluded.
    """
    image = ball_transform(model, T, B)
    ys = sample_near_ball(model, B, rng, samples)
    Ty = apply_transform(model, T, ys)
    keep = (B.margin_distance(model, ys) > margin) & (image.margin_distance(model, Ty) > margin)
    inside = B.contains(model, ys)
    inside_img = image.contains(model, Ty)
    mism = int(np.sum((inside != inside_img) & keep))
    return BallImageCheck(int(np.sum(keep)), int(np.sum(~keep)), mism)


@dataclass(frozen=True)
class NormObstruction:
    norm_x: float
    norm_y: float

    @property
    def explanation(self) -> str:
        return (
            f"||x|| = {self.norm_x:.12g} != ||y|| = {self.norm_y:.12g}; every gyration word "
            "preserves the gyronorm, so no transformation fixing the identity carries x to y "
            "and (G, Gamma_m) is not n-transitive for any n >= 2"
        )

    def __str__(self) -> str:
        return self.explanation


def norm_obstruction_witness(model: NormedGyrogroupModel, x, y) -> NormObstruction | None:
    nx, ny = float(model.norm(x)), float(model.norm(y))
    if nx <= model.tolerance or ny <= model.tolerance:
        raise ValueError("x and y must be nonidentity points")
    if abs(nx - ny) <= model.tolerance:
        return None
    return NormObstruction(nx, ny)
