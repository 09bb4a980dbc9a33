"""Acceptance suite: every shipping criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion with its runtime.
"""

import math
import time
from contextlib import contextmanager

import numpy as np

from extcalc import scalar as S
from extcalc import shapes as sh
from extcalc.cells import Cell
from extcalc.cohomology import (
    cech_betti,
    circle_connecting_generator,
    cycle_nerve,
    klein_nerve,
    poincare_duality_check,
    sphere_betti,
    torus_nerve,
)
from extcalc.forms import (
    DifferentialForm,
    VectorFieldSym,
    angular_form,
    solid_angle_form,
    sphere_area_form,
    work_form,
)
from extcalc.geometry import (
    Loop,
    Surface,
    gauss_bonnet_check,
    linking_number,
    surface_area,
    winding_number,
)
from extcalc.homotopy import homotopy_identity_residual, primitive
from extcalc.integrate import (
    hemisphere_transfer_check,
    integrate_cell,
    stokes_check,
)
from extcalc.maps import SmoothMap, compose, pullback
from extcalc.tensors import (
    GenericTensor,
    alt,
    basis_covector,
    covector,
    covector_wedge_determinant,
    pullback_linear,
    tensor_product,
    wedge_constant,
)

from helpers import make_rng, rand_form, rand_map, rand_point

x, y, z = S.variable(0), S.variable(1), S.variable(2)
DF = DifferentialForm


@contextmanager
def criterion(number, label):
    start = time.perf_counter()
    try:
        yield
    except Exception:
        elapsed = (time.perf_counter() - start) * 1000
        print(f"FAIL {number:2d} {label} [{elapsed:.1f} ms]")
        raise
    elapsed = (time.perf_counter() - start) * 1000
    print(f"PASS {number:2d} {label} [{elapsed:.1f} ms]")


def test_criterion_01_symbolic_worked_example():
    with criterion(1, "exterior derivative worked example"):
        a = DF(2, 1, {(0,): x * y, (1,): S.exp(x)})
        assert a.d() == DF(2, 2, {(0, 1): S.exp(x) - x})


def test_criterion_02_property_suite():
    with criterion(2, "200-instance symbolic property suite"):
        rng = make_rng(2026)
        for _ in range(200):
            n = rng.randint(2, 4)
            a = rand_form(rng, n, rng.randint(0, min(3, n)), degree=3)
            assert a.d().d().is_zero()
        for _ in range(200):
            n = rng.randint(2, 4)
            a = rand_form(rng, n, rng.randint(0, 2), degree=2)
            b = rand_form(rng, n, rng.randint(0, 2), degree=2)
            lhs = a.wedge(b).d()
            rhs = a.d().wedge(b) + a.wedge(b.d()) * ((-1) ** a.k)
            assert (lhs - rhs).is_zero()
        for _ in range(200):
            n = rng.randint(2, 4)
            ka, kb = rng.randint(0, n), rng.randint(0, n)
            a, b = rand_form(rng, n, ka), rand_form(rng, n, kb)
            assert (b.wedge(a) - a.wedge(b) * ((-1) ** (ka * kb))).is_zero()
        for _ in range(200):
            n = rng.randint(2, 4)
            a, b, c = (rand_form(rng, n, rng.randint(0, 2)) for _ in range(3))
            assert (a.wedge(b).wedge(c) - a.wedge(b.wedge(c))).is_zero()
        for _ in range(200):
            n, m, p = rng.randint(2, 3), rng.randint(2, 3), rng.randint(2, 3)
            g, h = rand_map(rng, n, m), rand_map(rng, m, p)
            a = rand_form(rng, p, rng.randint(0, min(2, p)), degree=2)
            lhs = pullback(compose(h, g), a)
            rhs = pullback(g, pullback(h, a))
            assert (lhs - rhs).is_zero()
        for _ in range(200):
            n, m = rng.randint(2, 3), rng.randint(2, 4)
            g = rand_map(rng, n, m)
            a = rand_form(rng, m, rng.randint(0, min(2, m - 1)), degree=2)
            assert (pullback(g, a.d()) - pullback(g, a).d()).is_zero()


def test_criterion_03_closedness_certificates():
    with criterion(3, "angular and solid-angle forms are closed"):
        assert angular_form().is_closed()
        assert solid_angle_form().is_closed()


def test_criterion_04_periods():
    with criterion(4, "periods over the circle and the sphere"):
        w = DF(2, 1, {(0,): -y, (1,): x})
        circle = integrate_cell(w, sh.circle_cell(), 32)
        assert abs(circle - 2 * math.pi) <= 1e-8
        sphere = integrate_cell(sphere_area_form(), sh.sphere_cell(), 32)
        assert abs(sphere - 4 * math.pi) <= 1e-6


def test_criterion_05_stokes_residuals():
    with criterion(5, "Stokes residuals (FTC, Green, Kelvin, transfer)"):
        f = DF.from_scalar(1, x**3 + x)
        _, _, res = stokes_check(f, sh.interval_cell(0, 1), 16)
        assert res <= 1e-8
        lhs, rhs, res = stokes_check(DF(2, 1, {(1,): x}), sh.disk_cell(), 32)
        assert abs(lhs - math.pi) <= 1e-8 and abs(rhs - math.pi) <= 1e-8
        assert res <= 1e-8
        v = VectorFieldSym(3, [y * z, -x, x * x])
        _, _, res = stokes_check(work_form(v), sh.hemisphere_cell(), 32)
        assert res <= 1e-8
        w = DF(
            3,
            2,
            {(0, 1): x * x + y * y, (1, 2): x + y * S.exp(z), (0, 2): S.exp(x)},
        )
        assert hemisphere_transfer_check(w, 16) <= 1e-6


def test_criterion_06_tensor_suite():
    with criterion(6, "alternating-tensor kernel identities"):
        rng = make_rng(6)
        for _ in range(20):
            n, k = 3, rng.randint(1, 3)
            data = np.array([rng.uniform(-2, 2) for _ in range(n**k)])
            t = GenericTensor(n, k, data.reshape((n,) * k))
            once = alt(t)
            assert np.allclose(alt(once).coeffs, once.coeffs, atol=1e-12)
            g = GenericTensor(3, 2, np.array([[rng.uniform(-1, 1) for _ in range(3)] for _ in range(3)]))
            sym = GenericTensor(3, 2, (g.coeffs + g.coeffs.T) / 2)
            b = GenericTensor(3, 1, np.array([rng.uniform(-1, 1) for _ in range(3)]))
            assert np.allclose(alt(tensor_product(sym, b)).coeffs, 0, atol=1e-12)
        for k in range(1, 6):
            for el in range(1, 6):
                for m in range(1, 6):
                    assert wedge_constant(k, el) * wedge_constant(k + el, m) == \
                        wedge_constant(el, m) * wedge_constant(k, el + m)
        for _ in range(10):
            covs = [rand_point(rng, 4) for _ in range(3)]
            vecs = [rand_point(rng, 4) for _ in range(3)]
            value = covector_wedge_determinant(covs, vecs)
            pairing = np.array([[np.dot(c, v) for v in vecs] for c in covs])
            assert abs(value - np.linalg.det(pairing)) <= 1e-10
        from extcalc.tensors import wedge_alt

        idx = (0, 2, 3)
        wedge = basis_covector(4, idx[0])
        prod = basis_covector(4, idx[0]).expand()
        for i in idx[1:]:
            wedge = wedge_alt(wedge, basis_covector(4, i))
            prod = tensor_product(prod, basis_covector(4, i))
        assert np.allclose(
            wedge.expand().coeffs, math.factorial(3) * alt(prod).coeffs
        )
        a = np.array([[rng.uniform(-2, 2) for _ in range(2)] for _ in range(3)])
        comp = [rng.uniform(-2, 2) for _ in range(3)]
        pulled = pullback_linear(a, covector(comp))
        got = np.array([pulled.coeffs.get((i,), 0.0) for i in range(2)])
        assert np.allclose(got, a.T @ np.array(comp))


def test_criterion_07_constructive_poincare():
    with criterion(7, "primitives and homotopy identity (50 random each)"):
        rng = make_rng(7)
        done = 0
        while done < 50:
            n = rng.randint(2, 4)
            k = rng.randint(0, n - 1)
            closed = rand_form(rng, n, k, degree=3).d()
            if closed.is_zero():
                continue
            b = primitive(closed)
            assert (b.d() - closed).is_zero()
            done += 1
        for _ in range(50):
            n = rng.randint(2, 4)
            a = rand_form(rng, n, rng.randint(0, n), degree=3)
            assert homotopy_identity_residual(a).is_zero()


def test_criterion_08_cohomology_tables():
    with criterion(8, "cohomology: spheres, circle pipeline, torus, Klein"):
        for n in range(1, 6):
            assert sphere_betti(n) == [1] + [0] * (n - 1) + [1]
        assert cech_betti(cycle_nerve(4)) == [1, 1]
        gen = circle_connecting_generator((1, 0))
        assert abs(gen.integral - 1.0) <= 1e-8
        assert cech_betti(torus_nerve()) == [1, 2, 1]
        klein = cech_betti(klein_nerve())
        assert klein[2] == 0  # orientability theorem anchor
        assert klein[1] == 1  # Cech oracle
        assert poincare_duality_check(cech_betti(torus_nerve()))
        for n in range(1, 6):
            assert poincare_duality_check(sphere_betti(n))


def test_criterion_09_degree_suite():
    with criterion(9, "winding and linking integrals"):
        for k in range(-2, 4):
            value, nearest = winding_number(Loop(sh.circle_cell(k=k)), 32)
            assert nearest == k and abs(value - k) <= 1e-6
        l1 = Loop(
            Cell(
                ((0.0, 2 * math.pi),),
                SmoothMap(1, 3, [S.cos(x), S.sin(x), S.constant(0)]),
            )
        )
        l2 = Loop(
            Cell(
                ((0.0, 2 * math.pi),),
                SmoothMap(1, 3, [1 + S.cos(x), S.constant(0), S.sin(x)]),
            )
        )
        value, nearest = linking_number(l1, l2, 32)
        assert nearest in (-1, 1)
        assert abs(value - nearest) <= 1e-3
        far = Loop(
            Cell(
                ((0.0, 2 * math.pi),),
                SmoothMap(1, 3, [10 + S.cos(x), S.constant(0), S.sin(x)]),
            )
        )
        value, nearest = linking_number(l1, far, 32)
        assert nearest == 0 and abs(value) <= 1e-6


def test_criterion_10_gauss_bonnet():
    with criterion(10, "Gauss-Bonnet and hypersurface areas"):
        sphere = Surface([sh.sphere_cell()], chi=2)
        total, _, res = gauss_bonnet_check(sphere, 24)
        assert abs(total - 4 * math.pi) <= 1e-4 and res <= 1e-4
        torus = Surface([sh.torus_cell(2, 1)], chi=0)
        total, _, res = gauss_bonnet_check(torus, 24)
        assert abs(total) <= 1e-4 and res <= 1e-4
        ellipsoid = Surface([sh.ellipsoid_cell(1.5, 1.0, 0.75)], chi=2)
        total, _, res = gauss_bonnet_check(ellipsoid, 24)
        assert abs(total - 4 * math.pi) <= 1e-3 and res <= 1e-3
        assert abs(surface_area(sphere, 32) - 4 * math.pi) <= 1e-6
