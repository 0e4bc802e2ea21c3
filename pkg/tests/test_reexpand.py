import math

import numpy as np
import pytest

from refourier.errors import PreconditionFailed
from refourier.funcmodel import DEFAULT_GRID, ZERO, CatalogEntry, Grid, Parity, with_parity
from refourier.quad import VerdictKind
from refourier.reexpand import (Direction, HardyKind, ReexpansionReport, hardy_space_verdict,
                                reexpand_cos_to_sin, reexpand_sin_to_cos, round_trip)

X = np.array(DEFAULT_GRID.points)


def test_exponential_counterexample(entries):
    r = reexpand_cos_to_sin(entries["exp_decay"])
    assert np.max(np.abs(np.array(r.path_hilbert) - X / (1 + X * X))) <= 1e-6
    assert r.identity_holds
    assert r.l1_verdict.kind is VerdictKind.DIVERGENT_LOGARITHMIC
    assert r.classifications_agree


@pytest.mark.parametrize("fn", [reexpand_cos_to_sin, reexpand_sin_to_cos])
def test_t_exp_both_directions(entries, fn):
    r = fn(entries["t_exp_decay"])
    assert r.identity_holds and r.max_abs_diff <= 1e-6
    assert r.l1_verdict.kind is VerdictKind.CONVERGENT
    assert r.classifications_agree
    assert len(r.path_hilbert) == len(r.path_direct) == len(r.grid)


def test_sin_to_cos_matches_closed_form(entries):
    e = entries["t_exp_decay"]
    r = reexpand_sin_to_cos(e)
    np.testing.assert_allclose(r.path_hilbert, e.Fc_closed(X), atol=1e-6)


def test_gaussian_dual_numeric_paths(entries):
    # no closed-form sine transform: the source is tabulated from quadrature
    r = reexpand_sin_to_cos(entries["gaussian"], Grid.logarithmic(0.1, 10, 6),
                            enforce_precondition=False)
    assert r.source == "numeric"
    assert r.max_abs_diff <= 1e-5 and r.identity_holds


def test_precondition_enforced(entries):
    with pytest.raises(PreconditionFailed):
        reexpand_sin_to_cos(entries["exp_decay"])
    with pytest.raises(PreconditionFailed):
        reexpand_cos_to_sin(entries["indicator"])


def test_zero_function():
    e = CatalogEntry("zero", ZERO)
    for fn in (reexpand_cos_to_sin, reexpand_sin_to_cos):
        r = fn(e, Grid.logarithmic(0.1, 10, 4))
        assert r.path_hilbert == r.path_direct == (0.0,) * 4
        assert r.identity_holds


def test_report_round_trip(entries):
    r = reexpand_cos_to_sin(entries["t_exp_decay"], Grid.explicit([0.0, 1.0, 3.0]))
    assert r.path_hilbert[0] == 0.0
    back = ReexpansionReport.from_dict(r.to_dict())
    assert back == r and back.direction is Direction.COS_TO_SIN


def test_round_trip_composition(entries):
    e = entries["t_exp_decay"]
    np.testing.assert_allclose(round_trip(e), e.Fc_closed(X), atol=1e-4)


def test_hardy_space_verdicts(entries):
    assert hardy_space_verdict(entries["exp_decay"].Fc_closed).kind is HardyKind.NOT_IN_H1
    assert hardy_space_verdict(entries["t_exp_decay"].Fc_closed).kind is HardyKind.IN_H1
    odd = with_parity(entries["exp_decay"].f, Parity.ODD)
    assert hardy_space_verdict(odd).kind is HardyKind.IN_H1
