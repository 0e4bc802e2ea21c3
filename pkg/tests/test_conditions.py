import math

import numpy as np
import pytest
from scipy import integrate as si
from scipy import special

from refourier.conditions import (ConditionReport, Divergent, aq_norm, check_local_smoothness,
                                  check_log_weight, check_vanishing_moment, check_zygmund_llogl,
                                  condition_report, slice_diverges, verify_truncation_constants)
from refourier.errors import CancellationPreconditionFailed, InvalidQ, NotIntegrable
from refourier.funcmodel import ZERO, Domain, FunctionSpec, Parity, with_parity
from refourier.quad import VerdictKind


@pytest.fixture
def exp_odd(entries):
    return with_parity(entries["exp_decay"].f, Parity.ODD)


def test_vanishing_moment(entries, exp_odd):
    v, ok = check_vanishing_moment(entries["t_exp_decay"].Fc_closed)
    assert ok and abs(v) < 1e-9
    v, ok = check_vanishing_moment(entries["exp_decay"].Fc_closed)
    assert not ok and v == pytest.approx(math.pi / 2, rel=1e-9)
    assert check_vanishing_moment(exp_odd) == (0.0, True)


def test_vanishing_moment_full_line():
    g = FunctionSpec(lambda t: t * np.exp(-t * t), Domain.FULL_LINE)
    v, ok = check_vanishing_moment(g)
    assert ok and abs(v) < 1e-12


def test_vanishing_moment_needs_integrable_input(entries):
    with pytest.raises(NotIntegrable):
        check_vanishing_moment(entries["exp_decay"].Fs_closed)


def test_log_weight_matches_exponential_integral(exp_odd):
    # 2 int_{1/2}^inf e^-t log(3t) dt = 2 (e^{-1/2} log(3/2) + E1(1/2))
    want = 2 * (math.exp(-0.5) * math.log(1.5) + special.exp1(0.5))
    assert check_log_weight(exp_odd) == pytest.approx(want, rel=1e-9)


def test_log_weight_diverges_for_slow_decay():
    g = FunctionSpec(lambda t: 1 / (1 + t) ** 1.0, parity=Parity.ODD)
    v = check_log_weight(g)
    assert isinstance(v, Divergent) and v.verdict.kind.divergent


def test_local_smoothness_matches_shi_oracle(exp_odd):
    # for x > 0 the inner integral is e^-x * 2 Shi(min(x,1)/2)
    inner = lambda x: math.exp(-x) * 2 * special.shichi(min(x, 1.0) / 2)[0]
    want = 2 * (si.quad(inner, 0, 1)[0] + si.quad(inner, 1, np.inf)[0])
    assert check_local_smoothness(exp_odd) == pytest.approx(want, rel=1e-6)


def test_local_smoothness_flags_jumps(entries):
    g = with_parity(entries["indicator"].f, Parity.ODD)
    v = check_local_smoothness(g)
    assert isinstance(v, Divergent) and v.reason == "inner"
    assert v.points == (-1.0, 1.0)
    assert math.isfinite(v.partial)


def test_slice_probe():
    step = FunctionSpec(lambda t: np.where(t < 2, 0.0, 1.0), Domain.FULL_LINE)
    assert slice_diverges(step, 2.0)
    assert not slice_diverges(step, 1.0)
    cusp = FunctionSpec(lambda t: np.sqrt(np.abs(t - 2)), Domain.FULL_LINE)
    assert not slice_diverges(cusp, 2.0)


def test_zygmund_llogl():
    g = FunctionSpec(lambda t: np.where(t <= 1, 2.0, 0.0), jumps=(1.0,))
    assert check_zygmund_llogl(g) == pytest.approx(2 * math.log(2), rel=1e-12)
    assert check_zygmund_llogl(ZERO) == 0.0


def test_aq_norm(exp_odd):
    inner = lambda u: math.sqrt((math.exp(-2 * u) - math.exp(-4 * u)) / u)
    want = si.quad(inner, 0, 1)[0] + si.quad(inner, 1, np.inf)[0]
    assert aq_norm(exp_odd, 2) == pytest.approx(want, rel=1e-6)
    # the supremum over [u, 2u] of e^-t is e^-u
    assert aq_norm(exp_odd, math.inf) == pytest.approx(1.0, rel=1e-6)
    with pytest.raises(InvalidQ):
        aq_norm(exp_odd, 1)


def test_truncation_constants(entries):
    for name in ("exp_decay", "indicator"):
        b = verify_truncation_constants(entries[name].f)
        assert b["far"].passed and b["near"].passed
        assert "canc" not in b
    b = verify_truncation_constants(entries["t_exp_decay"].Fc_closed)
    assert b["canc"].ratio <= 1 / 6 + 1e-3
    with pytest.raises(CancellationPreconditionFailed):
        verify_truncation_constants(entries["exp_decay"].Fc_closed, include_canc=True)


def test_truncation_of_zero():
    b = verify_truncation_constants(ZERO)
    assert all(v.lhs == 0 and v.norm == 0 for v in b.values())


def test_condition_report_and_round_trip(entries):
    r = condition_report(entries["t_exp_decay"].Fc_closed)
    assert r.h1_plausible and r.vm_pass
    assert set(r.aq_values) == {2.0, math.inf}
    assert ConditionReport.from_dict(r.to_dict()) == r

    r = condition_report(with_parity(entries["indicator"].f, Parity.ODD), ("vm", "local"))
    assert not r.h1_plausible
    back = ConditionReport.from_dict(r.to_dict())
    assert back == r and isinstance(back.local_value, Divergent)


def test_condition_report_rejects_unknown(entries):
    with pytest.raises(ValueError):
        condition_report(entries["exp_decay"].Fc_closed, ("vm", "bogus"))
