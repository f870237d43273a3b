import math

import numpy as np
import pytest

from gravreduce.averages import avg_qg_force_point, avg_quantum_force, expect
from gravreduce.core import Body, PhysicalContext, WavePacket
from gravreduce.criticality import (CriticalMethod, ObjectRegime, Regime,
                                    classify_regime, critical_mass,
                                    critical_width_energy_min,
                                    critical_width_energy_min_exact,
                                    critical_width_point, force_balance_residual,
                                    force_ratio, reference_formulas,
                                    stationary_energy, transition_width_object)
from gravreduce.errors import BodyKindError, BracketError, DomainError
from gravreduce.minimize import minimize_bracketed

# Frozen from a 50-digit oracle.
FORCE_BALANCE_CONST = 1.2533141373155003        # sqrt(pi/2)
CRITICAL_MASS_CONST = 1.0781685172131611        # (pi/2)^(1/6)
ENERGY_MIN_POINT = 1.4540808000358965           # 3 sqrt(pi) / (2 (2 sqrt2 - 1))
ENERGY_MIN_OBJECT = 0.96541666470535785         # (3 / (8 (3/4 - 1/pi)))^(1/4)
MICRO_WIDTH_CONST = 0.79280474333514738         # sqrt(4 sqrt2 / 9)
MACRO_WIDTH_CONST = 0.93191956908496532         # (8 sqrt2 / 15)^(1/4)
STATIONARY_ENERGY = -0.17735939055665065        # -(9 - 4 sqrt2)/(6 pi)
RESIDUAL_AT_ONE = -0.23394144903828673          # 0.25 - sqrt(2/pi) e^(-1/2)

PROTON_MASS = 1.67262192369e-27                 # kg


class TestForceBalanceWidth:
    def test_unit_constant(self, point, ctx):
        assert critical_width_point(point, ctx) == pytest.approx(
            FORCE_BALANCE_CONST, rel=1e-12)

    def test_proton_order_of_magnitude(self):
        si = PhysicalContext.si()
        proton = Body.point(PROTON_MASS)
        scale = si.hbar ** 2 / (si.G * PROTON_MASS ** 3)
        assert scale == pytest.approx(3.5608464e22, rel=1e-5)
        width = critical_width_point(proton, si)
        assert abs(math.log10(width) - 22.0) <= 1.0

    def test_forces_balance_at_critical_width(self, point, ctx):
        packet = WavePacket(critical_width_point(point, ctx))
        fq = avg_quantum_force(packet, point, ctx)
        fqg = avg_qg_force_point(packet, point, ctx)
        assert fq == pytest.approx(abs(fqg), rel=1e-9)

    def test_monotone_decreasing_in_mass(self, ctx):
        widths = [critical_width_point(Body.point(m), ctx) for m in (0.5, 1.0, 2.0, 8.0)]
        assert all(a > b for a, b in zip(widths, widths[1:]))

    def test_kind_guard(self, sphere, ctx):
        with pytest.raises(BodyKindError):
            critical_width_point(sphere, ctx)


class TestCriticalMass:
    def test_unit_constant(self, packet, ctx):
        assert critical_mass(packet, ctx) == pytest.approx(CRITICAL_MASS_CONST, rel=1e-12)

    def test_cgs_benchmark(self):
        # 1e-2 cm packet holds a critical mass of about 1e-15 grams
        cgs = PhysicalContext.cgs()
        mc = critical_mass(WavePacket(1e-2), cgs)
        assert abs(math.log10(mc) - (-15.0)) <= 1.0
        assert mc == pytest.approx(1.2785e-15, rel=1e-3)

    def test_round_trip_with_width(self, ctx):
        for m in (0.1, 1.0, 25.0):
            width = critical_width_point(Body.point(m), ctx)
            assert critical_mass(WavePacket(width), ctx) == pytest.approx(m, rel=1e-12)

    def test_monotone_decreasing_in_width(self, ctx):
        ms = [critical_mass(WavePacket(s), ctx) for s in (0.1, 1.0, 10.0, 100.0)]
        assert all(a > b for a, b in zip(ms, ms[1:]))


class TestRegimeClassification:
    def test_transition_at_exact_balance(self, ctx):
        packet = WavePacket(1.0)
        mc = critical_mass(packet, ctx)
        report = classify_regime(packet, Body.point(mc), ctx)
        assert report.regime is Regime.TRANSITION
        assert report.force_ratio == pytest.approx(1.0, rel=1e-12)

    def test_cube_law_above_and_below(self, ctx):
        packet = WavePacket(1.0)
        mc = critical_mass(packet, ctx)
        heavy = classify_regime(packet, Body.point(2.0 * mc), ctx)
        assert heavy.regime is Regime.GRAVITY_DOMINANT
        assert heavy.force_ratio == pytest.approx(0.125, rel=1e-12)
        light = classify_regime(packet, Body.point(0.5 * mc), ctx)
        assert light.regime is Regime.QUANTUM_DOMINANT
        assert light.force_ratio == pytest.approx(8.0, rel=1e-12)

    def test_tie_band(self, ctx):
        packet = WavePacket(1.0)
        mc = critical_mass(packet, ctx)
        assert classify_regime(packet, Body.point(mc * (1.0 + 5e-7)), ctx).regime \
            is Regime.TRANSITION
        assert classify_regime(packet, Body.point(mc * (1.0 + 5e-6)), ctx).regime \
            is Regime.GRAVITY_DOMINANT

    def test_cube_law_identity_random(self, ctx):
        rng = np.random.default_rng(3)
        for _ in range(50):
            m = 10.0 ** rng.uniform(-3, 3)
            s0 = 10.0 ** rng.uniform(-3, 3)
            packet = WavePacket(s0)
            ratio = force_ratio(packet, Body.point(m), ctx)
            cube = (critical_mass(packet, ctx) / m) ** 3
            assert cube == pytest.approx(ratio, rel=1e-9)

    def test_sphere_report_carries_object_references(self, packet, sphere, ctx):
        report = classify_regime(packet, sphere, ctx)
        assert report.method is CriticalMethod.ENERGY_MINIMIZATION
        assert "diosi_macro_width" in report.reference_values


class TestEnergyMinimization:
    def test_point_constant(self, point, ctx):
        got = critical_width_energy_min(point, ctx)
        assert got == pytest.approx(ENERGY_MIN_POINT, rel=1e-9)
        assert critical_width_energy_min_exact(point, ctx) == pytest.approx(
            ENERGY_MIN_POINT, rel=1e-13)

    def test_object_constant(self, sphere, ctx):
        got = critical_width_energy_min(sphere, ctx)
        assert got == pytest.approx(ENERGY_MIN_OBJECT, rel=1e-9)
        assert critical_width_energy_min_exact(sphere, ctx) == pytest.approx(
            ENERGY_MIN_OBJECT, rel=1e-13)

    def test_close_to_reference_scale(self, point, ctx):
        # within a factor 1.5 of hbar^2 / (G m^3)
        got = critical_width_energy_min(point, ctx)
        assert 1.0 / 1.5 < got / 1.0 < 1.5

    def test_agreement_between_routes(self, point, ctx):
        fb = critical_width_point(point, ctx)
        em = critical_width_energy_min_exact(point, ctx)
        assert 1.0 < em / fb < 1.2

    def test_hbar_scaling(self, point):
        # hbar -> lam hbar maps the point minimizer by lam^2
        base = critical_width_energy_min(point, PhysicalContext(1.0, 1.0))
        for lam in (0.1, 10.0):
            scaled = critical_width_energy_min(
                point, PhysicalContext(lam, 1.0, unit_system="si"))
            assert scaled == pytest.approx(lam ** 2 * base, rel=1e-9)

    def test_bad_bracket_raises(self, point, ctx):
        with pytest.raises(BracketError):
            critical_width_energy_min(point, ctx, bracket=(5.0, 50.0))
        with pytest.raises(DomainError):
            critical_width_energy_min(point, ctx, bracket=(-1.0, 2.0))

    def test_minimizer_requires_sign_change(self):
        with pytest.raises(BracketError):
            minimize_bracketed(lambda x: x, 1.0, 2.0)


class TestStationaryEnergy:
    def test_unit_value(self, point, ctx):
        assert stationary_energy(point, ctx) == pytest.approx(STATIONARY_ENERGY, rel=1e-12)

    def test_negative_for_any_mass(self, ctx):
        for m in (1e-3, 1.0, 1e3):
            assert stationary_energy(Body.point(m), ctx) < 0.0

    def test_scale_is_g2m5_over_hbar2(self, ctx):
        for m in (0.3, 1.0, 7.0):
            scale = ctx.G ** 2 * m ** 5 / ctx.hbar ** 2
            ratio = abs(stationary_energy(Body.point(m), ctx)) / scale
            assert 0.01 <= ratio <= 1.0

    def test_kind_guard(self, sphere, ctx):
        with pytest.raises(BodyKindError):
            stationary_energy(sphere, ctx)


class TestObjectTransitionWidths:
    def test_constants(self, sphere, ctx):
        macro = transition_width_object(sphere, ctx, ObjectRegime.MACRO)
        micro = transition_width_object(sphere, ctx, ObjectRegime.MICRO)
        inter = transition_width_object(sphere, ctx, ObjectRegime.INTERMEDIATE)
        assert macro.value == pytest.approx(MACRO_WIDTH_CONST, rel=1e-12)
        assert micro.value == pytest.approx(MICRO_WIDTH_CONST, rel=1e-12)
        assert macro.paper_form == micro.paper_form == inter.value == 1.0

    def test_proton_micro_width(self):
        si = PhysicalContext.si()
        proton = Body.sphere(PROTON_MASS, 1e-15)
        width_cm = transition_width_object(proton, si, ObjectRegime.MICRO).value * 100.0
        assert abs(math.log10(width_cm) - 6.0) <= 1.0

    def test_ball_macro_width(self):
        si = PhysicalContext.si()
        ball = Body.sphere(0.1, 0.05)
        width_cm = transition_width_object(ball, si, ObjectRegime.MACRO).paper_form * 100.0
        assert abs(math.log10(width_cm) - (-12.0)) <= 1.0

    def test_regimes_coincide_when_width_equals_radius(self, ctx):
        # with R = hbar^2 / (G m^3) both unit-constant forms collapse to it
        m = 1.3
        scale = ctx.hbar ** 2 / (ctx.G * m ** 3)
        body = Body.sphere(m, scale)
        macro = transition_width_object(body, ctx, ObjectRegime.MACRO).paper_form
        micro = transition_width_object(body, ctx, ObjectRegime.MICRO).paper_form
        assert macro == pytest.approx(scale, rel=1e-12)
        assert micro == pytest.approx(scale, rel=1e-12)

    def test_micro_balances_against_quantum_force(self, ctx):
        from gravreduce.averages import avg_qg_force_object_micro
        body = Body.sphere(1.0, 1.0)
        packet = WavePacket(transition_width_object(body, ctx, ObjectRegime.MICRO).value)
        fq = avg_quantum_force(packet, body, ctx)
        fqg = avg_qg_force_object_micro(packet, body, ctx)
        assert fq == pytest.approx(fqg, rel=1e-12)

    def test_macro_balances_against_quantum_force(self, ctx):
        from gravreduce.averages import avg_qg_force_object_macro
        body = Body.sphere(1.0, 1.0)
        packet = WavePacket(transition_width_object(body, ctx, ObjectRegime.MACRO).value)
        fq = avg_quantum_force(packet, body, ctx)
        fqg = avg_qg_force_object_macro(packet, body, ctx)
        assert fq == pytest.approx(fqg, rel=1e-12)

    def test_kind_guard(self, point, ctx):
        with pytest.raises(BodyKindError):
            transition_width_object(point, ctx, ObjectRegime.MACRO)


class TestForceBalanceResidual:
    def test_zero_at_origin(self, packet, point, ctx):
        assert force_balance_residual(0.0, packet, point, ctx) == 0.0

    def test_unit_value(self, packet, point, ctx):
        got = force_balance_residual(1.0, packet, point, ctx)
        assert got == pytest.approx(RESIDUAL_AT_ONE, rel=1e-13)

    def test_mean_residual_vanishes_at_critical_width(self, point, ctx):
        packet = WavePacket(critical_width_point(point, ctx))
        mean = expect(lambda r: force_balance_residual(r, packet, point, ctx),
                      packet, ctx).value
        scale = avg_quantum_force(packet, point, ctx)
        assert abs(mean) / scale < 1e-9

    def test_sphere_variant(self, packet, sphere, ctx):
        got = force_balance_residual(1.0, packet, sphere, ctx)
        from gravreduce.potentials import qg_force_object, quantum_force
        want = (quantum_force(1.0, packet, sphere, ctx)
                + qg_force_object(1.0, packet, sphere, ctx))
        assert got == want

    def test_domain_error(self, packet, point, ctx):
        with pytest.raises(DomainError):
            force_balance_residual(-0.5, packet, point, ctx)


class TestReferenceFormulas:
    def test_dimensionless_unit_values(self, packet, ctx):
        refs = reference_formulas(Body.sphere(1.0, 1.0), packet, ctx)
        assert set(refs) == {"karolyhazy_width", "karolyhazy_time",
                             "karolyhazy_object_width", "diosi_macro_width",
                             "diosi_micro_width"}
        for value in refs.values():
            assert value == pytest.approx(1.0, rel=1e-14)

    def test_point_subset(self, packet, point, ctx):
        refs = reference_formulas(point, packet, ctx)
        assert set(refs) == {"karolyhazy_width", "karolyhazy_time"}

    def test_proton_orders(self):
        si = PhysicalContext.si()
        refs = reference_formulas(Body.point(PROTON_MASS), WavePacket(1.0), si)
        assert abs(math.log10(refs["karolyhazy_width"]) - 22.0) <= 1.0
        assert abs(math.log10(refs["karolyhazy_time"]) - 53.0) <= 1.0

    def test_tennis_ball_object_width(self):
        si = PhysicalContext.si()
        refs = reference_formulas(Body.sphere(0.057, 0.04), WavePacket(1.0), si)
        width_cm = refs["karolyhazy_object_width"] * 100.0
        assert abs(math.log10(width_cm) - (-17.0)) <= 1.0

    def test_macro_reference_matches_transition_form(self, ctx):
        body = Body.sphere(2.0, 0.3)
        refs = reference_formulas(body, WavePacket(1.0), ctx)
        macro = transition_width_object(body, ctx, ObjectRegime.MACRO)
        assert refs["diosi_macro_width"] == pytest.approx(macro.paper_form, rel=1e-14)
