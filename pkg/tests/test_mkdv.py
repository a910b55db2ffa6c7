import csv
import math

import numpy as np
import pytest
import sympy as sp

from stefan_chain.errors import InvalidParams, NonMonotone
from stefan_chain.mkdv import (KinkParams, casimir_refinement, hodograph_to_psi, kink_field, kink_residual,
                               verify_casimir, verify_mkdv, write_samples_csv)


@pytest.fixture(scope="module")
def field():
    return hodograph_to_psi(KinkParams())


class TestKinkParams:
    @pytest.mark.parametrize("kw", [dict(amp=0.0), dict(y_max=0.5), dict(n_y=4), dict(n_t=2),
                                    dict(t_range=(1.0, 0.0)), dict(tanh_floor=0.0), dict(tanh_floor=1.0)])
    def test_rejects(self, kw):
        with pytest.raises(InvalidParams):
            KinkParams(**kw)

    def test_refined_halves_steps(self):
        p = KinkParams(n_y=11, n_t=5).refined(2)
        assert (p.n_y, p.n_t) == (41, 17)


class TestKink:
    def test_centre_is_still(self):
        p = KinkParams()
        assert kink_field(p, 0.0, 0.0)[3] == 0.0

    def test_far_field_speed(self):
        p = KinkParams(amp=2.0)
        assert kink_field(p, 40.0, 0.0)[3] == pytest.approx(-4.0, rel=1e-15)
        assert kink_field(p, -40.0, 0.0)[3] == pytest.approx(4.0, rel=1e-15)

    def test_symbolic_substitution(self):
        # v = A tanh(B(y - c t)) solves v_t = (v_yy - v^3/2)_y only for B = A/2, c = A^2/2
        y, t, A, B, c = sp.symbols("y t A B c", positive=True)
        v = A * sp.tanh(B * (y - c * t))
        res = sp.diff(v, t) - sp.diff(sp.diff(v, y, 2) - v ** 3 / 2, y)
        f = sp.lambdify((y, t, A, B, c), res)
        rng = np.random.default_rng(3)
        for _ in range(10):
            yy, tt, aa = rng.uniform(-2, 2), rng.uniform(0, 1), rng.uniform(0.5, 3)
            assert abs(f(yy, tt, aa, aa / 2, aa ** 2 / 2)) <= 1e-10
        assert abs(f(0.3, 0.2, 2.0, 1.0, 1.0)) > 1e-2

    def test_residual_rounding_level(self):
        p = KinkParams(amp=1.7)
        rng = np.random.default_rng(0)
        yy, tt = rng.uniform(-5, 5, 100), rng.uniform(0, 1, 100)
        assert np.abs(kink_residual(p, yy, tt)).max() <= 1e-12

    def test_profile_is_antiderivative(self):
        p = KinkParams()
        h = 1e-5
        x_p, x_m = kink_field(p, 1.2 + h, 0.1)[0], kink_field(p, 1.2 - h, 0.1)[0]
        assert (x_p - x_m) / (2 * h) == pytest.approx(kink_field(p, 1.2, 0.1)[1], rel=1e-8)

    def test_large_phase_stays_finite(self):
        x = kink_field(KinkParams(), 800.0, 0.0)[0]
        assert math.isfinite(x) and x == pytest.approx(2 * (800.0 - math.log(2.0)))


class TestHodograph:
    def test_psi_is_reciprocal_slope(self, field):
        _, x_y, _, _ = kink_field(field.params, field.y, field.t[:, None])
        np.testing.assert_allclose(field.psi * x_y, 1.0, rtol=1e-15)
        assert (field.psi > 0).all()
        assert field.psi.max() <= 1.0 / (field.params.amp * field.params.tanh_floor)

    def test_closed_form_inverse(self, field):
        # cosh(theta) = exp(x/2) inverts the kink profile on theta > 0
        p = field.params
        theta = np.arccosh(np.exp(field.x / 2))
        y_exact = 2 * theta / p.amp + p.speed * field.t[:, None]
        np.testing.assert_allclose(field.y, y_exact, atol=1e-10)

    def test_edge_round_trip(self):
        from stefan_chain.mkdv import hodograph_to_psi_roundtrip
        assert hodograph_to_psi_roundtrip(KinkParams()) <= 1e-10

    def test_centre_inside_domain(self):
        with pytest.raises(NonMonotone):
            hodograph_to_psi(KinkParams(y_min=0.1))

    def test_below_floor(self):
        with pytest.raises(InvalidParams):
            hodograph_to_psi(KinkParams(y_min=0.55))

    def test_no_common_range(self):
        with pytest.raises(InvalidParams):
            hodograph_to_psi(KinkParams(y_min=0.75, y_max=0.9, t_range=(0.0, 0.1)))


class TestCasimir:
    def test_baseline(self, field):
        rep = verify_casimir(field)
        assert rep.passed
        assert rep.residual("casimir (fd)").max_abs <= 1e-3
        assert rep.residual("flux (fd)").max_abs <= 1e-3

    def test_without_reflection(self, field):
        rep = verify_casimir(field, reflect=False)
        assert not rep.passed
        # the stationary image cannot tell the orientations apart; the time part of the map can
        assert rep.residual("casimir (fd)").max_abs <= 1e-3
        assert rep.residual("flux (fd)").max_abs == pytest.approx(field.params.amp ** 2, rel=1e-3)

    def test_second_order(self):
        study = casimir_refinement(KinkParams(), levels=3)
        assert all(1.8 <= o <= 2.2 for o in study["flux (fd)"][1])
        assert 1.8 <= study["casimir (fd)"][1][0] <= 2.2

    def test_full_report(self):
        rep = verify_mkdv(KinkParams(n_y=100, n_t=20), levels=2)
        assert rep.passed
        assert rep.residual("kink identity").max_abs <= 1e-12
        assert len(rep.notes["flux_orders"]) == 1


def test_samples_csv(tmp_path):
    f = hodograph_to_psi(KinkParams(n_y=7, n_t=3))
    out = tmp_path / "kink.csv"
    write_samples_csv(f, out)
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["y", "t", "x", "v", "psi"] and len(rows) == 22
    y, t, x, v, psi = map(float, rows[1])
    assert v * psi == pytest.approx(1.0)
