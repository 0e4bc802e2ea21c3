import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as si
from scipy import special

from refourier.errors import CancellationPreconditionFailed, ParityMismatch
from refourier.funcmodel import DEFAULT_GRID, FunctionSpec, Parity, with_parity
from refourier.quad import VerdictKind
from refourier.transforms import (HilbertForm, cesaro_hilbert_mean, cesaro_kernel,
                                  cesaro_kernel_array, cosine_transform, hilbert, hilbert_l1,
                                  natural_form, sine_transform, tabulate)

GRID = DEFAULT_GRID.points


@pytest.mark.parametrize("name", ["exp_decay", "t_exp_decay", "gaussian", "indicator"])
def test_cosine_transform_matches_closed_form(entries, name):
    e = entries[name]
    for x in GRID:
        assert cosine_transform(e.f, x).value == pytest.approx(float(e.Fc_closed(x)), abs=1e-9)


@pytest.mark.parametrize("name", ["exp_decay", "t_exp_decay", "indicator"])
def test_sine_transform_matches_closed_form(entries, name):
    e = entries[name]
    for x in GRID:
        assert sine_transform(e.f, x).value == pytest.approx(float(e.Fs_closed(x)), abs=1e-9)


@pytest.mark.parametrize("x", [0.1, 1.0, 3.0, 25.0])
def test_gaussian_sine_transform_is_dawson(entries, x):
    want = math.sqrt(2) * special.dawsn(x / math.sqrt(2))
    assert sine_transform(entries["gaussian"].f, x).value == pytest.approx(want, abs=1e-10)


def test_transforms_reject_negative_points(entries):
    with pytest.raises(ValueError):
        cosine_transform(entries["exp_decay"].f, -1.0)


def test_transform_of_zero():
    z = FunctionSpec(lambda t: np.zeros_like(t))
    assert cosine_transform(z, 2.0).value == 0.0
    assert sine_transform(z, 2.0).value == 0.0


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 5.0, 40.0])
def test_hilbert_of_lorentzian(entries, x):
    g = entries["exp_decay"].Fc_closed
    want = x / (1 + x * x)
    for form in (HilbertForm.FULL_LINE, HilbertForm.EVEN_HALF_LINE):
        assert hilbert(g, x, form).value == pytest.approx(want, abs=1e-10)


def _cauchy_oracle(g, x, L=2000.0):
    # scipy's Cauchy weight gives PV int g(t)/(t - x) on [-L, L]; the tails are regular
    core = si.quad(g, -L, L, weight="cauchy", wvar=x, limit=400)[0]
    tails = (si.quad(lambda t: g(t) / (x - t), L, np.inf)[0]
             + si.quad(lambda t: g(t) / (x - t), -np.inf, -L)[0])
    return (tails - core) / math.pi


@pytest.mark.parametrize("x", [0.3, 1.0, 2.0, 7.0])
def test_hilbert_against_cauchy_weight_quadrature(entries, x):
    fc = entries["t_exp_decay"].Fc_closed
    g = lambda t: float(fc(abs(t)))
    want = _cauchy_oracle(g, x)
    assert hilbert(fc, x, HilbertForm.EVEN_HALF_LINE_CANCELLED).value == pytest.approx(want, abs=1e-8)
    assert want == pytest.approx(2 * x / (1 + x * x) ** 2, abs=1e-8)


CASES = [("exp_decay", "Fc_closed", (HilbertForm.EVEN_HALF_LINE,)),
         ("t_exp_decay", "Fc_closed", (HilbertForm.EVEN_HALF_LINE, HilbertForm.EVEN_HALF_LINE_CANCELLED)),
         ("t_exp_decay", "Fs_closed", (HilbertForm.ODD_HALF_LINE,)),
         ("gaussian", "Fc_closed", (HilbertForm.EVEN_HALF_LINE,))]


@pytest.mark.parametrize("name, attr, forms", CASES)
@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 5.0])
def test_half_line_forms_agree_with_full_line(entries, name, attr, forms, x):
    g = getattr(entries[name], attr)
    full = hilbert(g, x, HilbertForm.FULL_LINE).value
    for form in forms:
        assert hilbert(g, x, form).value == pytest.approx(full, abs=1e-7)
    # H of even is odd, H of odd is even
    sign = -1.0 if g.parity is Parity.EVEN else 1.0
    assert hilbert(g, -x, HilbertForm.FULL_LINE).value == pytest.approx(sign * full, abs=1e-7)


def test_form_parity_checks(entries):
    with pytest.raises(ParityMismatch):
        hilbert(entries["exp_decay"].Fc_closed, 1.0, HilbertForm.ODD_HALF_LINE)
    with pytest.raises(ParityMismatch):
        hilbert(entries["exp_decay"].f, 1.0, HilbertForm.EVEN_HALF_LINE)
    with pytest.raises(CancellationPreconditionFailed):
        hilbert(entries["exp_decay"].Fc_closed, 1.0, HilbertForm.EVEN_HALF_LINE_CANCELLED)


def test_hilbert_at_origin(entries):
    assert hilbert(entries["exp_decay"].Fc_closed, 0.0, HilbertForm.EVEN_HALF_LINE).value == 0.0
    fs = entries["t_exp_decay"].Fs_closed
    # -(2/pi) int_0^inf 2/(1+t^2)^2 dt = -1
    assert hilbert(fs, 0.0, HilbertForm.ODD_HALF_LINE).value == pytest.approx(-1.0, abs=1e-10)


@pytest.mark.parametrize("x", [1e3, 1e5])
def test_cancelled_form_far_out(entries, x):
    g = entries["t_exp_decay"].Fc_closed
    want = 2 * x / (1 + x * x) ** 2
    assert hilbert(g, x, HilbertForm.EVEN_HALF_LINE_CANCELLED).value == pytest.approx(want, rel=1e-3)


def test_natural_form(entries):
    assert natural_form(entries["t_exp_decay"].Fc_closed) is HilbertForm.EVEN_HALF_LINE_CANCELLED
    assert natural_form(entries["exp_decay"].Fc_closed) is HilbertForm.EVEN_HALF_LINE
    assert natural_form(entries["t_exp_decay"].Fs_closed) is HilbertForm.ODD_HALF_LINE
    assert natural_form(entries["exp_decay"].f) is HilbertForm.FULL_LINE


def test_hilbert_l1_classifications(entries):
    res, verdict = hilbert_l1(entries["t_exp_decay"].Fc_closed)
    assert verdict.kind is VerdictKind.CONVERGENT
    # int_R 2|x|/(1+x^2)^2 dx = 2
    assert res.value == pytest.approx(2.0, rel=1e-5)
    _, verdict = hilbert_l1(entries["exp_decay"].Fc_closed)
    assert verdict.kind is VerdictKind.DIVERGENT_LOGARITHMIC


def _ces_lhs(A, N):
    return si.quad(lambda t: (1 - t / N) * math.sin(A * t), 0, N, limit=500,
                   epsabs=1e-12, epsrel=1e-12)[0]


@settings(max_examples=60, deadline=None)
@given(A=st.floats(0.1, 10.0), N=st.floats(1.0, 100.0))
def test_cesaro_kernel_identity(A, N):
    assert cesaro_kernel(A, N) == pytest.approx(_ces_lhs(A, N), abs=1e-9)


def test_cesaro_kernel_small_argument_branch():
    A = np.array([1e-9, 1e-4, 0.099, 0.101])
    N = 1.0
    direct = np.array([float(_ces_lhs(a, N)) for a in A])
    np.testing.assert_allclose(cesaro_kernel_array(A, N), direct, atol=1e-13)
    assert cesaro_kernel_array(np.array([0.0]), 5.0)[0] == 0.0
    with pytest.raises(ValueError):
        cesaro_kernel(0.0, 1.0)


def test_cesaro_means_converge_to_hilbert(entries):
    g = entries["exp_decay"].Fc_closed
    errs = [abs(cesaro_hilbert_mean(g, 1.0, n).value - 0.5) for n in (25, 50, 100, 200)]
    assert all(a > b for a, b in zip(errs, errs[1:]))
    assert errs[-1] <= 5e-3


def test_tabulate_reproduces_smooth_function(entries):
    g = entries["t_exp_decay"].Fs_closed
    tab = tabulate(g, Parity.ODD)
    x = np.geomspace(1e-4, 1e4, 57)
    np.testing.assert_allclose(tab(x), g(x), rtol=1e-5, atol=1e-12)
    assert tab.parity is Parity.ODD
