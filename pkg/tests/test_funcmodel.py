import math

import numpy as np
import pytest
from scipy import integrate as si

from refourier.errors import ParityMismatch, UnknownFunction
from refourier.funcmodel import (DEFAULT_GRID, ZERO, Domain, FunctionSpec, Grid, GridKind,
                                 Parity, as_full_line, catalog, extend, get_entry, with_parity)


def test_evaluator_broadcasts_scalars_to_input_shape():
    g = FunctionSpec(lambda t: 3.0)
    assert g(np.zeros((2, 3))).shape == (2, 3)
    assert float(g(1.0)) == 3.0


def test_even_and_odd_extension():
    g = FunctionSpec(lambda t: np.exp(-t), jumps=(1.0,))
    t = np.array([-2.0, -0.5, 0.0, 0.5, 2.0])
    ev = extend(g, Parity.EVEN)
    od = extend(g, Parity.ODD)
    np.testing.assert_allclose(ev(t), np.exp(-np.abs(t)))
    np.testing.assert_allclose(od(t), np.sign(t) * np.exp(-np.abs(t)))
    assert od(0.0) == 0.0
    assert ev.domain is Domain.FULL_LINE
    assert ev.jumps == (-1.0, 1.0)
    assert 0.0 in od.breakpoints()


def test_extension_needs_parity():
    with pytest.raises(ParityMismatch):
        extend(FunctionSpec(np.exp), Parity.NONE)


def test_untagged_half_line_extends_by_zero():
    h = as_full_line(FunctionSpec(lambda t: 1.0 + t))
    np.testing.assert_allclose(h(np.array([-1.0, 0.0, 2.0])), [0.0, 1.0, 3.0])


def test_with_parity_retags():
    g = with_parity(get_entry("exp_decay").f, Parity.ODD)
    assert g.parity is Parity.ODD and g.name == "exp(-t)"


@pytest.mark.parametrize("text, n, kind", [
    ("log:0.1:10:16", 16, GridKind.LOGARITHMIC),
    ("lin:0:1:5", 5, GridKind.UNIFORM),
    ("at:1,2.5,4", 3, GridKind.EXPLICIT),
])
def test_grid_parse(text, n, kind):
    g = Grid.parse(text)
    assert len(g) == n and g.kind is kind
    assert Grid.from_dict(g.to_dict()) == g


@pytest.mark.parametrize("text", ["log:0:1:4", "lin:0:1", "at:", "at:2,1", "cube:1:2:3", "lin:0:1:0"])
def test_grid_parse_rejects(text):
    with pytest.raises(ValueError):
        Grid.parse(text)


def test_default_grid():
    assert len(DEFAULT_GRID) == 16
    assert DEFAULT_GRID.points[0] == pytest.approx(0.1)
    assert DEFAULT_GRID.points[-1] == pytest.approx(10.0)


def test_unknown_catalog_name():
    with pytest.raises(UnknownFunction):
        get_entry("nope")


def test_zero_function():
    assert np.all(ZERO(np.linspace(0, 5, 7)) == 0)


def _scipy_transform(f, x, weight):
    # independent oracle: QUADPACK's Fourier-integral routine
    if x == 0:
        return si.quad(f, 0, np.inf)[0] if weight == "cos" else 0.0
    return si.quad(f, 0, np.inf, weight=weight, wvar=x)[0]


@pytest.mark.parametrize("name", ["exp_decay", "t_exp_decay", "gaussian"])
@pytest.mark.parametrize("x", [0.0, 0.3, 1.0, 4.0])
def test_catalog_closed_forms_match_quadpack(name, x):
    e = get_entry(name)
    f = lambda t: float(e.f(t))
    assert float(e.Fc_closed(x)) == pytest.approx(_scipy_transform(f, x, "cos"), abs=1e-9)
    if e.Fs_closed is not None:
        assert float(e.Fs_closed(x)) == pytest.approx(_scipy_transform(f, x, "sin"), abs=1e-9)


@pytest.mark.parametrize("x", [0.0, 0.3, 1.0, 4.0])
def test_indicator_closed_forms(x):
    e = get_entry("indicator")
    assert float(e.Fc_closed(x)) == pytest.approx(si.quad(lambda t: math.cos(x * t), 0, 1)[0], abs=1e-12)
    assert float(e.Fs_closed(x)) == pytest.approx(si.quad(lambda t: math.sin(x * t), 0, 1)[0], abs=1e-12)


def test_catalog_parities():
    for e in catalog():
        assert e.Fc_closed.parity is Parity.EVEN
        if e.Fs_closed is not None:
            assert e.Fs_closed.parity is Parity.ODD
