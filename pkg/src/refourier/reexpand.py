"""Re-expansion of a cosine-transform representation as a sine transform and back.

Both identities F_s = H F_c and F_c = -H F_s are checked along two routes:
the Hilbert transform of the source transform, and the target transform
computed directly from f.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .conditions import check_vanishing_moment
from .errors import PreconditionFailed
from .funcmodel import DEFAULT_GRID, CatalogEntry, FunctionSpec, Grid, Parity
from .quad import (DEFAULT_CONFIG, Kernel, QuadConfig, TailVerdict, VerdictKind,
                   integrate_halfline)
from .transforms import (L1_OUTER, HilbertForm, cosine_transform, hilbert, hilbert_l1,
                         sine_transform, tabulate, transform_function)

ID_TOL = 1e-6
ID_TOL_NESTED = 1e-4


class Direction(enum.Enum):
    COS_TO_SIN = "cos_to_sin"
    SIN_TO_COS = "sin_to_cos"


@dataclass(frozen=True)
class ReexpansionReport:
    direction: Direction
    grid: Grid
    path_hilbert: tuple
    path_direct: tuple
    max_abs_diff: float
    l1_verdict: TailVerdict
    hilbert_l1_verdict: TailVerdict
    identity_holds: bool
    id_tol: float = ID_TOL
    flagged_points: tuple = ()
    function: str = ""
    source: str = "closed"

    @property
    def classifications_agree(self) -> bool:
        """Both integrability classifications of the re-expanded transform agree."""
        return self.l1_verdict.kind is self.hilbert_l1_verdict.kind

    @property
    def abs_diff(self) -> tuple:
        return tuple(abs(a - b) for a, b in zip(self.path_hilbert, self.path_direct))

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "direction": self.direction.value,
            "source": self.source,
            "grid": self.grid.to_dict(),
            "path_hilbert": list(self.path_hilbert),
            "path_direct": list(self.path_direct),
            "max_abs_diff": self.max_abs_diff,
            "id_tol": self.id_tol,
            "identity_holds": self.identity_holds,
            "flagged_points": list(self.flagged_points),
            "l1_verdict": self.l1_verdict.kind.value,
            "l1_detail": self.l1_verdict.to_dict(),
            "hilbert_l1_verdict": self.hilbert_l1_verdict.kind.value,
            "hilbert_l1_detail": self.hilbert_l1_verdict.to_dict(),
            "classifications_agree": self.classifications_agree,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReexpansionReport":
        return cls(
            direction=Direction(d["direction"]),
            grid=Grid.from_dict(d["grid"]),
            path_hilbert=tuple(d["path_hilbert"]),
            path_direct=tuple(d["path_direct"]),
            max_abs_diff=d["max_abs_diff"],
            l1_verdict=TailVerdict.from_dict(d["l1_detail"]),
            hilbert_l1_verdict=TailVerdict.from_dict(d["hilbert_l1_detail"]),
            identity_holds=d["identity_holds"],
            id_tol=d["id_tol"],
            flagged_points=tuple(d["flagged_points"]),
            function=d.get("function", ""),
            source=d.get("source", "closed"),
        )

    def csv_rows(self):
        return list(zip(self.grid.points, self.path_hilbert, self.path_direct, self.abs_diff))


CSV_REEXPAND_HEADER = ("x", "path_hilbert", "path_direct", "abs_diff")


def _source(entry: CatalogEntry, kernel: Kernel, cfg: QuadConfig):
    """(spec, nested) for the source transform: closed form if catalogued,
    otherwise a spline through quadrature values."""
    closed = entry.Fc_closed if kernel is Kernel.COS else entry.Fs_closed
    if closed is not None:
        return closed, False
    parity = Parity.EVEN if kernel is Kernel.COS else Parity.ODD
    numeric = transform_function(entry.f, kernel, cfg)
    return tabulate(numeric, parity, name=numeric.name), True


def _l1(g, jumps=()) -> tuple:
    return integrate_halfline(lambda x: np.abs(g(x)), 0.0, L1_OUTER, jumps)


def _reexpand(entry: CatalogEntry, direction: Direction, grid: Grid, cfg: QuadConfig,
              enforce_precondition: bool) -> ReexpansionReport:
    cos_to_sin = direction is Direction.COS_TO_SIN
    src_kernel, dst_kernel = (Kernel.COS, Kernel.SIN) if cos_to_sin else (Kernel.SIN, Kernel.COS)
    source, nested = _source(entry, src_kernel, cfg)

    _, src_verdict = _l1(source, source.jumps)
    if enforce_precondition and src_verdict.kind is not VerdictKind.CONVERGENT:
        raise PreconditionFailed(
            f"int |F{src_kernel.value[0]}| is not finite for {entry.name} "
            f"({src_verdict.kind.value})")

    if cos_to_sin:
        form, sign, direct = HilbertForm.EVEN_HALF_LINE, 1.0, sine_transform
    else:
        form, sign, direct = HilbertForm.ODD_HALF_LINE, -1.0, cosine_transform

    via_h, via_d = [], []
    for x in grid.points:
        if x < 0:
            raise ValueError("re-expansion grids live on x >= 0")
        if x == 0 and cos_to_sin:
            # the sine transform vanishes at the origin by parity
            via_h.append(0.0)
        else:
            via_h.append(sign * hilbert(source, x, form, cfg).value)
        via_d.append(direct(entry.f, x, cfg).value)

    diffs = np.abs(np.array(via_h) - np.array(via_d))
    max_diff = float(diffs.max()) if diffs.size else 0.0
    id_tol = ID_TOL_NESTED if nested else ID_TOL
    flagged = tuple(float(x) for x, d in zip(grid.points, diffs) if not d <= id_tol)
    holds = not flagged or (len(flagged) == 1 and entry.f.has_jumps)

    target = transform_function(entry.f, dst_kernel, cfg)
    _, l1_verdict = _l1(target)
    _, h_verdict = hilbert_l1(source)

    return ReexpansionReport(
        direction=direction,
        grid=grid,
        path_hilbert=tuple(float(v) for v in via_h),
        path_direct=tuple(float(v) for v in via_d),
        max_abs_diff=max_diff,
        l1_verdict=l1_verdict,
        hilbert_l1_verdict=h_verdict,
        identity_holds=bool(holds),
        id_tol=id_tol,
        flagged_points=flagged,
        function=entry.name,
        source="numeric" if nested else "closed",
    )


def reexpand_cos_to_sin(entry: CatalogEntry, grid: Grid = DEFAULT_GRID,
                        cfg: QuadConfig = DEFAULT_CONFIG,
                        enforce_precondition: bool = True) -> ReexpansionReport:
    """Compare H F_c (even half-line form) with F_s computed from f.

    Raises PreconditionFailed unless int |F_c| converges.
    """
    return _reexpand(entry, Direction.COS_TO_SIN, grid, cfg, enforce_precondition)


def reexpand_sin_to_cos(entry: CatalogEntry, grid: Grid = DEFAULT_GRID,
                        cfg: QuadConfig = DEFAULT_CONFIG,
                        enforce_precondition: bool = True) -> ReexpansionReport:
    """Compare -H F_s (odd half-line form) with F_c computed from f.

    Raises PreconditionFailed unless int |F_s| converges.
    """
    return _reexpand(entry, Direction.SIN_TO_COS, grid, cfg, enforce_precondition)


def round_trip(entry: CatalogEntry, grid: Grid = DEFAULT_GRID,
               cfg: QuadConfig = DEFAULT_CONFIG) -> np.ndarray:
    """-H(H F_c) on the grid, with the inner H F_c tabulated from quadrature.

    Should reproduce F_c; the caller compares against the closed form.
    """
    if entry.Fc_closed is None:
        raise PreconditionFailed(f"{entry.name} has no catalogued cosine transform")
    fc = entry.Fc_closed

    def h_fc(xs):
        return np.array([hilbert(fc, float(x), HilbertForm.EVEN_HALF_LINE, cfg).value
                         for x in np.ravel(xs)]).reshape(np.shape(xs))

    fs = tabulate(h_fc, Parity.ODD, name=f"H[{fc.name}]")
    return np.array([-hilbert(fs, x, HilbertForm.ODD_HALF_LINE, cfg).value
                     for x in grid.points])


# ---------------------------------------------------------------------------


class HardyKind(enum.Enum):
    IN_H1 = "in_h1"
    NOT_IN_H1 = "not_in_h1"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class HardyVerdict:
    kind: HardyKind
    vm_value: float
    vm_pass: bool
    hilbert_l1: float
    hilbert_l1_verdict: TailVerdict
    reasons: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "vm_value": self.vm_value,
            "vm_pass": self.vm_pass,
            "hilbert_l1": self.hilbert_l1,
            "hilbert_l1_verdict": self.hilbert_l1_verdict.to_dict(),
            "reasons": list(self.reasons),
        }


def hardy_space_verdict(g: FunctionSpec, cfg: QuadConfig = DEFAULT_CONFIG,
                        form: Optional[HilbertForm] = None) -> HardyVerdict:
    """Classify g against H^1 = {g in L^1 : Hg in L^1}.

    A failed vanishing moment or a divergent int |Hg| is a definite negative;
    an inconclusive tail leaves the question open.
    """
    vm_value, vm_pass = check_vanishing_moment(g, cfg)
    res, verdict = hilbert_l1(g, form)
    reasons = []
    if not vm_pass:
        reasons.append("vanishing moment fails")
    if verdict.kind.divergent:
        reasons.append(f"int |Hg| {verdict.kind.value}")
    if reasons:
        kind = HardyKind.NOT_IN_H1
    elif verdict.kind is VerdictKind.CONVERGENT:
        kind = HardyKind.IN_H1
    else:
        kind = HardyKind.INCONCLUSIVE
        reasons.append("int |Hg| inconclusive")
    return HardyVerdict(kind, vm_value, vm_pass, res.value, verdict, tuple(reasons))
