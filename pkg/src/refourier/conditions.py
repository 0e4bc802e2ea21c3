"""Integrability conditions related to Hardy-space membership.

Each checker returns either a float or a :class:`Divergent` record carrying
the partial value and the evidence (a tail verdict, or the x-slices whose
inner integral blows up).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

import numpy as np

from .errors import CancellationPreconditionFailed, InvalidQ, NotIntegrable, ParityMismatch
from .funcmodel import Domain, FunctionSpec, Parity, as_full_line
from .quad import (DEFAULT_CONFIG, QuadConfig, TailVerdict, VerdictKind, integrate,
                   integrate_halfline)
from .transforms import VM_TOL

DEFAULT_CONDITIONS = ("vm", "logc", "local", "llogl", "aq")
DEFAULT_QS = (2.0, math.inf)

# outer layers of the double integrals run at this accuracy
NESTED = QuadConfig(rel_tol=1e-7, abs_tol=1e-11)
PROBE_STEPS = (1e-3, 1e-6, 1e-9)


@dataclass(frozen=True)
class Divergent:
    partial: float
    verdict: Optional[TailVerdict] = None
    reason: str = "tail"
    points: tuple = ()

    def to_dict(self) -> dict:
        return {
            "divergent": True,
            "partial": self.partial,
            "reason": self.reason,
            "verdict": self.verdict.to_dict() if self.verdict else None,
            "points": list(self.points),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Divergent":
        v = d.get("verdict")
        return cls(d["partial"], TailVerdict.from_dict(v) if v else None,
                   d.get("reason", "tail"), tuple(d.get("points", ())))


Value = Union[float, Divergent]


def is_finite(v) -> bool:
    return v is not None and not isinstance(v, Divergent)


def _value_to_json(v):
    return v.to_dict() if isinstance(v, Divergent) else v


def _value_from_json(v):
    return Divergent.from_dict(v) if isinstance(v, dict) else v


def _symmetric(g: FunctionSpec) -> bool:
    """Half-line spec whose extension has |g(-t)| = |g(t)|."""
    return g.domain is Domain.HALF_LINE and g.parity is not Parity.NONE


def _two_sided(g: FunctionSpec, integrand, a: float, cfg: QuadConfig, points=()):
    """Sum over x >= a and x <= -a of integrand(g, x) >= 0.

    ``integrand(h, x)`` is evaluated on x >= a for h = g and h = g(-.).
    Returns (value, worst verdict).
    """
    gf = as_full_line(g)
    right, v_r = integrate_halfline(lambda x: integrand(gf, x), a, cfg,
                                    [p for p in points if p > a])
    if _symmetric(g):
        return 2.0 * right.value, v_r
    if g.domain is Domain.HALF_LINE:
        return right.value, v_r
    mirror = FunctionSpec(lambda t: gf(-t), Domain.FULL_LINE)
    left, v_l = integrate_halfline(lambda x: integrand(mirror, x), a, cfg,
                                   [-p for p in points if -p > a])
    worst = v_r if v_r.kind is not VerdictKind.CONVERGENT else v_l
    return right.value + left.value, worst


def _finite_or_divergent(value: float, verdict: TailVerdict) -> Value:
    if verdict.kind is VerdictKind.CONVERGENT:
        return float(value)
    return Divergent(float(value), verdict)


def l1_norm(g: FunctionSpec, cfg: QuadConfig = DEFAULT_CONFIG) -> Value:
    """int |g| over the line (the half-line for an untagged half-line spec)."""
    pts = tuple(abs(p) for p in g.breakpoints())
    value, verdict = _two_sided(g, lambda h, x: np.abs(h(x)), 0.0, cfg, pts)
    return _finite_or_divergent(value, verdict)


def check_vanishing_moment(g: FunctionSpec, cfg: QuadConfig = DEFAULT_CONFIG):
    """(moment, passed) for the vanishing-moment condition.

    Odd functions pass with moment 0.  Even half-line functions must have
    zero integral on the half-line itself.
    """
    norm = l1_norm(g, cfg)
    if not is_finite(norm):
        raise NotIntegrable(f"int |g| diverges ({norm.verdict.kind.value})")
    if g.parity is Parity.ODD:
        return 0.0, True
    if g.domain is Domain.HALF_LINE:
        res, _ = integrate_halfline(g, 0.0, cfg, g.jumps)
        value = res.value
    else:
        right, _ = integrate_halfline(g, 0.0, cfg, [p for p in g.breakpoints() if p > 0])
        left, _ = integrate_halfline(lambda u: g(-u), 0.0, cfg,
                                     [-p for p in g.breakpoints() if p < 0])
        value = right.value + left.value
    return float(value), abs(value) <= VM_TOL


def check_log_weight(g: FunctionSpec, cfg: QuadConfig = DEFAULT_CONFIG) -> Value:
    """int_{|x| >= 1/2} |g(x)| log(3|x|) dx."""
    pts = tuple(abs(p) for p in g.breakpoints())
    value, verdict = _two_sided(g, lambda h, x: np.abs(h(x)) * np.log(3.0 * x), 0.5, cfg, pts)
    return _finite_or_divergent(value, verdict)


def _local_breaks(jumps: Iterable[float]) -> list:
    """Abscissae x > 0 where the inner integral of the local condition has a kink."""
    out = {1.0}
    for p in jumps:
        if p > 0:
            out.update({p, p - 0.5, p + 0.5, 2.0 * p / 3.0, 2.0 * p})
    return sorted(v for v in out if v > 0)


def slice_diverges(g: FunctionSpec, x: float) -> bool:
    """Probe |g(x+t)-g(x)| + |g(x-t)-g(x)| at t = 1e-3, 1e-6, 1e-9.

    A difference that does not shrink with t means a jump at x, where the
    inner integral of dt/|t| diverges logarithmically.
    """
    if x == 0:
        return False
    t = np.array(PROBE_STEPS)
    gx = float(g(np.array(x)))
    d = np.abs(g(x + t) - gx) + np.abs(g(x - t) - gx)
    scale = max(abs(gx), float(np.max(np.abs(g(x + t)))), 1e-300)
    return bool(d[-1] > 1e-8 * scale and d[-1] > 0.1 * d[0])


def _local_inner(g: FunctionSpec, x: float, cfg: QuadConfig, breaks) -> float:
    w = 0.5 * min(abs(x), 1.0)
    if w == 0:
        return 0.0
    gx = float(g(np.array(x)))

    def q(s):
        return (np.abs(g(x + s) - gx) + np.abs(g(x - s) - gx)) / s

    pts = [abs(p - x) for p in breaks if 0 < abs(p - x) < w]
    return integrate(q, 0.0, w, cfg, pts).value


def check_local_smoothness(g: FunctionSpec, cfg: QuadConfig = DEFAULT_CONFIG) -> Value:
    """int_R int_{|t| <= min(|x|,1)/2} |g(x+t) - g(x)| / |t| dt dx.

    Each x-slice is probed before integration; slices where the inner
    integral diverges (jumps of g) are reported as ``Divergent(reason="inner")``
    together with the outer value obtained between them.
    """
    gf = as_full_line(g)
    breaks = gf.breakpoints()
    inner_cfg = NESTED
    offending = sorted({float(p) for p in breaks if p != 0 and slice_diverges(gf, p)})

    def slice_value(h, xs):
        xs = np.asarray(xs, dtype=float)
        out = np.empty(xs.shape)
        for i, xi in np.ndenumerate(xs):
            out[i] = _local_inner(h, float(xi), inner_cfg, hb)
        return out

    hb = breaks
    right, v_r = integrate_halfline(lambda xs: slice_value(gf, xs), 0.0, cfg,
                                    _local_breaks(p for p in breaks if p > 0))
    value, verdict = right.value, v_r
    if _symmetric(g):
        value *= 2.0
    else:
        mirror = FunctionSpec(lambda t: gf(-t), Domain.FULL_LINE)
        hb = tuple(-p for p in breaks)
        left, v_l = integrate_halfline(lambda xs: slice_value(mirror, xs), 0.0, cfg,
                                       _local_breaks(-p for p in breaks if p < 0))
        value += left.value
        if v_l.kind is not VerdictKind.CONVERGENT:
            verdict = v_l
    if offending:
        return Divergent(float(value), None, "inner", tuple(offending))
    return _finite_or_divergent(value, verdict)


def check_zygmund_llogl(g: FunctionSpec, cfg: QuadConfig = DEFAULT_CONFIG) -> Value:
    """int |g| log+ |g|, with log+ u = log u for u > 1 and 0 otherwise."""
    def integrand(h, x):
        a = np.abs(h(x))
        return np.where(a > 1.0, a * np.log(np.maximum(a, 1.0)), 0.0)

    pts = tuple(abs(p) for p in g.breakpoints())
    value, verdict = _two_sided(g, integrand, 0.0, cfg, pts)
    return _finite_or_divergent(value, verdict)


def _parse_q(q) -> float:
    q = float(q)
    if not q > 1:
        raise InvalidQ(f"A_q needs q > 1, got {q}")
    return q


def aq_norm(g: FunctionSpec, q, cfg: QuadConfig = DEFAULT_CONFIG) -> Value:
    """int_0^inf ((1/u) int_{u <= |t| <= 2u} |g(t)|^q dt)^(1/q) du.

    For q = inf the inner factor is the maximum of |g| over 64 samples of
    [u, 2u], a lower bound for the essential supremum.
    """
    q = _parse_q(q)
    if g.domain is not Domain.HALF_LINE:
        raise ParityMismatch("aq_norm expects a half-line function")
    sides = 2.0 if g.parity is not Parity.NONE else 1.0
    jumps = g.jumps

    def block(us):
        us = np.asarray(us, dtype=float)
        out = np.empty(us.shape)
        for i, u in np.ndenumerate(us):
            u = float(u)
            if math.isinf(q):
                out[i] = float(np.max(np.abs(g(np.linspace(u, 2.0 * u, 64)))))
            else:
                r = integrate(lambda t: np.abs(g(t)) ** q, u, 2.0 * u, NESTED,
                              [p for p in jumps if u < p < 2.0 * u])
                out[i] = (sides * r.value / u) ** (1.0 / q)
        return out

    pts = sorted({p for j in jumps for p in (0.5 * j, j)})
    res, verdict = integrate_halfline(block, 0.0, cfg, pts)
    return _finite_or_divergent(res.value, verdict)


# ---------------------------------------------------------------------------
# truncation constants


@dataclass(frozen=True)
class TruncationBound:
    lhs: float
    norm: float
    constant: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.norm if self.norm else 0.0

    @property
    def passed(self) -> bool:
        return self.ratio <= self.constant + 1e-3

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "norm": self.norm, "constant": self.constant,
                "ratio": self.ratio, "passed": self.passed}


TRUNCATION_CONSTANTS = {"far": math.log(3.0), "near": 2.0 / 3.0, "canc": 1.0 / 6.0}


def _outer(fn, cfg: QuadConfig, points=()) -> float:
    def vec(xs):
        xs = np.asarray(xs, dtype=float)
        out = np.empty(xs.shape)
        for i, xi in np.ndenumerate(xs):
            out[i] = abs(fn(float(xi)))
        return out

    res, verdict = integrate_halfline(vec, 0.0, cfg, points)
    if verdict.kind is not VerdictKind.CONVERGENT:
        return math.inf
    return res.value


def verify_truncation_constants(g: FunctionSpec, cfg: QuadConfig = NESTED,
                                include_canc: Optional[bool] = None) -> dict:
    """Evaluate the three truncated left-hand sides against ||g||_1 on the half-line.

    far:  int_0^inf |int_{3x/2}^inf g(t)/(x-t) dt| dx       <= ln 3 ||g||_1
    near: int_0^inf |int_0^{x/2} t g(t)/(x^2-t^2) dt| dx     <= 2/3 ||g||_1
    canc: int_0^inf |int_0^{x/2} t^2 g(t)/(x(x^2-t^2)) dt| dx <= 1/6 ||g||_1

    ``canc`` needs an even g with vanishing half-line moment; by default it is
    included exactly when that holds, and ``include_canc=True`` makes the
    precondition an error.
    """
    if g.domain is not Domain.HALF_LINE:
        raise ParityMismatch("truncation constants are defined for half-line functions")
    jumps = g.jumps
    norm_res, verdict = integrate_halfline(lambda t: np.abs(g(t)), 0.0, cfg, jumps)
    if verdict.kind is not VerdictKind.CONVERGENT:
        raise NotIntegrable("truncation bounds need an integrable g")
    norm = norm_res.value

    canc_ok = False
    if g.parity is Parity.EVEN:
        moment, _ = integrate_halfline(g, 0.0, cfg, jumps)
        canc_ok = abs(moment.value) <= VM_TOL
    if include_canc and not canc_ok:
        if g.parity is not Parity.EVEN:
            raise ParityMismatch("the 1/6 bound needs an even function")
        raise CancellationPreconditionFailed("the 1/6 bound needs a vanishing half-line moment")
    if include_canc is None:
        include_canc = canc_ok

    inner = QuadConfig(rel_tol=cfg.rel_tol * 1e-2, abs_tol=cfg.abs_tol * 1e-2)

    def far(x):
        a = 1.5 * x
        r, _ = integrate_halfline(lambda t: g(t) / (x - t), a, inner, [p for p in jumps if p > a])
        return r.value

    def near(x):
        b = 0.5 * x
        return integrate(lambda t: t * g(t) / ((x - t) * (x + t)), 0.0, b, inner,
                         [p for p in jumps if p < b]).value

    def canc(x):
        b = 0.5 * x
        return integrate(lambda t: t * t * g(t) / (x * (x - t) * (x + t)), 0.0, b, inner,
                         [p for p in jumps if p < b]).value

    out = {}
    if norm == 0:
        for name in ("far", "near") + (("canc",) if include_canc else ()):
            out[name] = TruncationBound(0.0, 0.0, TRUNCATION_CONSTANTS[name])
        return out
    out["far"] = TruncationBound(_outer(far, cfg, [2.0 * p / 3.0 for p in jumps]), norm,
                                 TRUNCATION_CONSTANTS["far"])
    out["near"] = TruncationBound(_outer(near, cfg, [2.0 * p for p in jumps]), norm,
                                  TRUNCATION_CONSTANTS["near"])
    if include_canc:
        out["canc"] = TruncationBound(_outer(canc, cfg, [2.0 * p for p in jumps]), norm,
                                      TRUNCATION_CONSTANTS["canc"])
    return out


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class ConditionReport:
    vm_value: Optional[float] = None
    vm_pass: Optional[bool] = None
    logc_value: Optional[Value] = None
    local_value: Optional[Value] = None
    llogl_value: Optional[Value] = None
    aq_values: dict = field(default_factory=dict)
    h1_plausible: bool = False
    function: str = ""

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "vm_value": self.vm_value,
            "vm_pass": self.vm_pass,
            "logc_value": _value_to_json(self.logc_value),
            "local_value": _value_to_json(self.local_value),
            "llogl_value": _value_to_json(self.llogl_value),
            "aq_values": {_q_key(q): _value_to_json(v) for q, v in self.aq_values.items()},
            "h1_plausible": self.h1_plausible,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConditionReport":
        return cls(
            vm_value=d["vm_value"],
            vm_pass=d["vm_pass"],
            logc_value=_value_from_json(d["logc_value"]),
            local_value=_value_from_json(d["local_value"]),
            llogl_value=_value_from_json(d["llogl_value"]),
            aq_values={float(q): _value_from_json(v) for q, v in d["aq_values"].items()},
            h1_plausible=d["h1_plausible"],
            function=d.get("function", ""),
        )

    def csv_rows(self):
        """(key, value, verdict) rows."""
        rows = []
        if self.vm_value is not None:
            rows.append(("vm", self.vm_value, "pass" if self.vm_pass else "fail"))
        for key, v in (("logc", self.logc_value), ("local", self.local_value),
                       ("llogl", self.llogl_value)):
            if v is not None:
                rows.append((key, *_row_value(v)))
        for q, v in self.aq_values.items():
            rows.append((f"aq_{_q_key(q)}", *_row_value(v)))
        rows.append(("h1_plausible", "", "true" if self.h1_plausible else "false"))
        return rows


CSV_CONDITION_HEADER = ("key", "value", "verdict")


def _row_value(v):
    if isinstance(v, Divergent):
        kind = v.verdict.kind.value if v.verdict else f"divergent_{v.reason}"
        return v.partial, kind
    return v, "finite"


def _q_key(q: float) -> str:
    return "inf" if math.isinf(q) else f"{q:g}"


def condition_report(g: FunctionSpec, conditions: Iterable[str] = DEFAULT_CONDITIONS,
                     qs: Iterable = DEFAULT_QS, cfg: QuadConfig = DEFAULT_CONFIG) -> ConditionReport:
    """Run the selected checkers; h1_plausible is the conjunction of their passes.

    Only the vanishing moment is a necessary condition; the others are
    sufficient, so a False verdict never claims g is outside H^1 on their account.
    """
    conditions = tuple(conditions)
    unknown = set(conditions) - set(DEFAULT_CONDITIONS)
    if unknown:
        raise ValueError(f"unknown conditions: {', '.join(sorted(unknown))}")
    kw = {}
    passes = []
    if "vm" in conditions:
        vm_value, vm_pass = check_vanishing_moment(g, cfg)
        kw.update(vm_value=vm_value, vm_pass=vm_pass)
        passes.append(vm_pass)
    nested = NESTED if cfg is DEFAULT_CONFIG else cfg
    for key, fn in (("logc", check_log_weight), ("local", check_local_smoothness),
                    ("llogl", check_zygmund_llogl)):
        if key in conditions:
            v = fn(g, nested if key == "local" else cfg)
            kw[f"{key}_value"] = v
            passes.append(is_finite(v))
    if "aq" in conditions:
        aq = {}
        for q in qs:
            q = _parse_q(q)
            aq[q] = aq_norm(g, q, nested)
            passes.append(is_finite(aq[q]))
        kw["aq_values"] = aq
    return ConditionReport(h1_plausible=bool(passes) and all(passes), function=g.name, **kw)
