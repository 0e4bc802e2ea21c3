"""Evaluable functions on the line or half-line, grids, and the oracle catalog.

Evaluators are vectorised: they receive a float ndarray and return an array
of the same shape.  Half-line functions carry a parity tag describing how
they extend to the whole line.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ParityMismatch, UnknownFunction


class Domain(enum.Enum):
    HALF_LINE = "half_line"
    FULL_LINE = "full_line"


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    NONE = "none"


@dataclass(frozen=True)
class FunctionSpec:
    """A real function together with the metadata the integrators rely on.

    ``decay_hint`` is an exponent p with |g(t)| = O(|t|^-p); ``jumps`` lists
    the abscissae of jump discontinuities (used as quadrature breakpoints).
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    domain: Domain = Domain.HALF_LINE
    parity: Parity = Parity.NONE
    decay_hint: Optional[float] = None
    jumps: tuple = ()
    name: str = ""

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        y = np.asarray(self.evaluator(t), dtype=float)
        if y.shape != t.shape:
            y = np.broadcast_to(y, t.shape).copy()
        return y

    @property
    def has_jumps(self) -> bool:
        return bool(self.jumps)

    def breakpoints(self) -> tuple:
        """Points where the evaluator may be non-smooth."""
        pts = set(self.jumps)
        if self.domain is Domain.FULL_LINE and self.parity is not Parity.NONE:
            pts.add(0.0)
        return tuple(sorted(pts))


def extend(g: FunctionSpec, parity: Parity) -> FunctionSpec:
    """Extend a half-line function to the whole line as an even or odd function.

    The odd extension is 0 at the origin whatever g(0) is.
    """
    if g.domain is not Domain.HALF_LINE:
        raise ValueError("extend expects a half-line function")
    if parity is Parity.NONE:
        raise ParityMismatch("extension needs an even or odd parity")

    if parity is Parity.EVEN:
        def h(t):
            return g(np.abs(t))
    else:
        def h(t):
            y = g(np.abs(t))
            return np.where(t > 0, y, np.where(t < 0, -y, 0.0))

    jumps = sorted({j for j in g.jumps} | {-j for j in g.jumps})
    return FunctionSpec(
        h,
        domain=Domain.FULL_LINE,
        parity=parity,
        decay_hint=g.decay_hint,
        jumps=tuple(jumps),
        name=f"{g.name}[{parity.value}]" if g.name else "",
    )


def as_full_line(g: FunctionSpec) -> FunctionSpec:
    """Full-line view of ``g``: parity extension, or zero extension when untagged."""
    if g.domain is Domain.FULL_LINE:
        return g
    if g.parity is not Parity.NONE:
        return extend(g, g.parity)

    def h(t):
        return np.where(t >= 0, g(np.maximum(t, 0.0)), 0.0)

    return FunctionSpec(h, Domain.FULL_LINE, Parity.NONE, g.decay_hint,
                        tuple(sorted(set(g.jumps) | {0.0})), g.name)


def with_parity(g: FunctionSpec, parity: Parity) -> FunctionSpec:
    """Copy of a half-line spec re-tagged with another parity."""
    return FunctionSpec(g.evaluator, g.domain, parity, g.decay_hint, g.jumps, g.name)


ZERO = FunctionSpec(lambda t: np.zeros_like(t), name="zero")


# ---------------------------------------------------------------------------
# grids


class GridKind(enum.Enum):
    UNIFORM = "uniform"
    LOGARITHMIC = "logarithmic"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class Grid:
    points: tuple
    kind: GridKind = GridKind.EXPLICIT

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("grid must be a non-empty list of abscissae")
        if not np.all(np.isfinite(pts)):
            raise ValueError("grid points must be finite")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("grid points must be strictly increasing")
        object.__setattr__(self, "points", tuple(float(p) for p in pts))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @classmethod
    def uniform(cls, a: float, b: float, n: int) -> "Grid":
        return cls(tuple(np.linspace(a, b, n)), GridKind.UNIFORM)

    @classmethod
    def logarithmic(cls, a: float, b: float, n: int) -> "Grid":
        if a <= 0:
            raise ValueError("logarithmic grid needs a > 0")
        return cls(tuple(np.geomspace(a, b, n)), GridKind.LOGARITHMIC)

    @classmethod
    def explicit(cls, points: Sequence[float]) -> "Grid":
        return cls(tuple(points), GridKind.EXPLICIT)

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """Parse ``log:a:b:n``, ``lin:a:b:n`` or ``at:x1,x2,...``."""
        kind, _, rest = text.partition(":")
        try:
            if kind in ("log", "lin"):
                a, b, n = rest.split(":")
                n = int(n)
                if n < 1:
                    raise ValueError
                ctor = cls.logarithmic if kind == "log" else cls.uniform
                return ctor(float(a), float(b), n)
            if kind == "at":
                return cls.explicit([float(v) for v in rest.split(",")])
        except ValueError as exc:
            raise ValueError(f"bad grid spec {text!r}: {exc}") from None
        raise ValueError(f"bad grid spec {text!r}")

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "points": list(self.points)}

    @classmethod
    def from_dict(cls, d: dict) -> "Grid":
        return cls(tuple(d["points"]), GridKind(d["kind"]))


DEFAULT_GRID = Grid.logarithmic(0.1, 10.0, 16)


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class CatalogEntry:
    """A function f on the half-line with its transforms in closed form."""

    name: str
    f: FunctionSpec
    Fc_closed: Optional[FunctionSpec] = None
    Fs_closed: Optional[FunctionSpec] = None
    HFc_closed: Optional[FunctionSpec] = None
    Fc_integrable: Optional[bool] = None
    Fs_integrable: Optional[bool] = None
    provenance: str = ""
    extra: dict = field(default_factory=dict)


def _spec(fn, parity=Parity.NONE, decay=None, jumps=(), name=""):
    return FunctionSpec(fn, Domain.HALF_LINE, parity, decay, tuple(jumps), name)


def _indicator(t):
    return np.where((t >= 0) & (t <= 1.0), 1.0, 0.0)


def _sinc(x):
    return np.sinc(x / np.pi)


def _one_minus_cos_over_x(x):
    # 2 sin^2(x/2)/x avoids cancellation near 0
    s = np.sin(0.5 * x)
    with np.errstate(divide="ignore", invalid="ignore"):
        y = 2.0 * s * s / x
    return np.where(x == 0, 0.0, y)


def _build_catalog() -> tuple:
    sq = math.sqrt(0.5 * math.pi)
    return (
        CatalogEntry(
            name="exp_decay",
            f=_spec(lambda t: np.exp(-t), name="exp(-t)"),
            Fc_closed=_spec(lambda x: 1.0 / (1.0 + x * x), Parity.EVEN, 2.0,
                            name="1/(1+x^2)"),
            Fs_closed=_spec(lambda x: x / (1.0 + x * x), Parity.ODD, 1.0,
                            name="x/(1+x^2)"),
            HFc_closed=_spec(lambda x: x / (1.0 + x * x), Parity.ODD, 1.0,
                             name="x/(1+x^2)"),
            Fc_integrable=True,
            Fs_integrable=False,
            provenance="Laplace-type integrals of exp(-t); the sine transform "
                       "x/(1+x^2) is the standard non-integrable counterexample",
        ),
        CatalogEntry(
            name="t_exp_decay",
            f=_spec(lambda t: t * np.exp(-t), name="t*exp(-t)"),
            Fc_closed=_spec(lambda x: (1.0 - x * x) / (1.0 + x * x) ** 2,
                            Parity.EVEN, 2.0, name="(1-x^2)/(1+x^2)^2"),
            Fs_closed=_spec(lambda x: 2.0 * x / (1.0 + x * x) ** 2,
                            Parity.ODD, 3.0, name="2x/(1+x^2)^2"),
            HFc_closed=_spec(lambda x: 2.0 * x / (1.0 + x * x) ** 2,
                             Parity.ODD, 3.0, name="2x/(1+x^2)^2"),
            Fc_integrable=True,
            Fs_integrable=True,
            provenance="real and imaginary parts of (1-ix)^-2",
        ),
        CatalogEntry(
            name="gaussian",
            f=_spec(lambda t: np.exp(-0.5 * t * t), name="exp(-t^2/2)"),
            Fc_closed=_spec(lambda x: sq * np.exp(-0.5 * x * x), Parity.EVEN,
                            name="sqrt(pi/2) exp(-x^2/2)"),
            Fc_integrable=True,
            Fs_integrable=False,
            provenance="Gaussian integral; the sine transform is a Dawson "
                       "function (no elementary form) decaying like 1/x",
        ),
        CatalogEntry(
            name="indicator",
            f=_spec(_indicator, jumps=(1.0,), name="1_[0,1]"),
            Fc_closed=_spec(_sinc, Parity.EVEN, 1.0, name="sin(x)/x"),
            Fs_closed=_spec(_one_minus_cos_over_x, Parity.ODD, 1.0,
                            name="(1-cos x)/x"),
            Fc_integrable=False,
            Fs_integrable=False,
            provenance="elementary antiderivatives on [0,1]",
        ),
    )


_CATALOG = _build_catalog()


def catalog() -> list:
    return list(_CATALOG)


def get_entry(name: str) -> CatalogEntry:
    for entry in _CATALOG:
        if entry.name == name:
            return entry
    raise UnknownFunction(f"unknown catalog function {name!r}; "
                          f"known: {', '.join(e.name for e in _CATALOG)}")
