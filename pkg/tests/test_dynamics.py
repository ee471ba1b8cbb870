import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from momentbc.dynamics import (
    Control,
    apply_response,
    auxiliary_response,
    convolve,
    goursat_kernel,
    response_vector,
    simulate_finite,
    simulate_semi_infinite,
    solution_via_kernel,
)
from momentbc.errors import HorizonMismatch, InsufficientCoefficients, SizeExceedsSpec
from momentbc.jacobi import JacobiSpec, random_spec

SPEC_1 = JacobiSpec(a0=1.0, a=[], b=[2 + 1j])          # single node, b_1 = 2+i
SPEC_2 = JacobiSpec(a0=1.0, a=[1.0], b=[0.0, 0.0])     # two free nodes


def random_control(rng, T):
    return Control(rng.uniform(-1, 1, T) + 1j * rng.uniform(-1, 1, T))


class TestSimulateFinite:
    def test_single_node_hand_run(self):
        field = simulate_finite(SPEC_1, Control.delta(), N=1, T=3)
        assert field.at(1, 1) == 1
        assert field.at(1, 2) == 2 + 1j
        assert field.at(1, 3) == (2 + 1j) ** 2 - 1  # = 2+4i

    def test_two_node_hand_run(self):
        field = simulate_finite(SPEC_2, Control.delta(), N=2, T=5)
        assert [field.at(1, t) for t in range(1, 6)] == [1, 0, 0, 0, -1]
        assert field.at(2, 2) == 1
        assert field.at(2, 4) == -1

    def test_zero_control_zero_field(self, rng):
        spec = random_spec(4, rng)
        field = simulate_finite(spec, Control(np.zeros(4)), N=4, T=6)
        assert np.all(field.values[1:] == 0)

    def test_zero_initial_state(self, rng):
        spec = random_spec(3, rng)
        field = simulate_finite(spec, random_control(rng, 3), N=3, T=3)
        assert np.all(field.values[1:, 0] == 0)
        assert np.all(field.values[1:, 1] == 0)

    def test_finite_speed(self, rng):
        spec = random_spec(6, rng)
        field = simulate_finite(spec, random_control(rng, 6), N=6, T=6)
        for n in range(1, 7):
            for t in range(-1, n):
                assert field.at(n, t) == 0

    def test_linearity(self, rng):
        spec = random_spec(5, rng)
        f = random_control(rng, 5)
        g = random_control(rng, 5)
        alpha, beta = 1.5 - 0.5j, -0.25 + 2j
        combo = Control(alpha * f.samples + beta * g.samples)
        u_combo = simulate_finite(spec, combo, 5, 5).values
        u_f = simulate_finite(spec, f, 5, 5).values
        u_g = simulate_finite(spec, g, 5, 5).values
        scale = max(1.0, float(np.max(np.abs(u_combo))))
        assert np.max(np.abs(u_combo - alpha * u_f - beta * u_g)) / scale < 1e-12

    def test_size_guard(self):
        with pytest.raises(SizeExceedsSpec):
            simulate_finite(SPEC_2, Control.delta(), N=3, T=3)


class TestSemiInfinite:
    def test_agrees_with_finite_inside_cone(self, rng):
        spec = random_spec(3, rng)
        f = random_control(rng, 3)
        semi = simulate_semi_infinite(spec, f, 3)
        fin = simulate_finite(spec, f, 3, 3)
        for n in range(1, 4):
            for t in range(n, 4):
                assert semi.at(n, t) == fin.at(n, t)

    def test_cone_containment_short_spec(self):
        # one stored coefficient still covers the boundary row up to t = 2
        semi = simulate_semi_infinite(SPEC_1, Control.delta(), 2)
        assert semi.at(1, 1) == 1
        assert semi.at(1, 2) == 2 + 1j

    def test_zero_control(self, rng):
        spec = random_spec(3, rng)
        semi = simulate_semi_infinite(spec, Control(np.zeros(2)), 3)
        assert np.all(semi.values[1:] == 0)

    def test_insufficient_coefficients(self):
        with pytest.raises(InsufficientCoefficients):
            simulate_semi_infinite(SPEC_1, Control.delta(), 3)


class TestGoursatKernel:
    def test_corner_value(self):
        kernel = goursat_kernel(SPEC_1, 2)
        assert kernel.w[1, 1] == 2 + 1j          # a_0 b_1

    def test_corner_zero_when_diagonal_zero(self):
        kernel = goursat_kernel(SPEC_2, 3)
        assert kernel.w[1, 1] == 0

    def test_free_chain_kernel_vanishes(self):
        # b = 0, a = 1 kills both the diagonal seed and the interior source
        spec = JacobiSpec(a0=1.0, a=np.ones(5), b=np.zeros(6))
        kernel = goursat_kernel(spec, 6)
        assert np.all(kernel.w == 0)

    def test_solution_matches_timestep(self, rng):
        for _ in range(10):
            n = int(rng.integers(1, 7))
            spec = random_spec(n, rng)
            f = random_control(rng, n)
            kernel = goursat_kernel(spec, n)
            via_kernel = solution_via_kernel(spec, kernel, f)
            stepped = simulate_finite(spec, f, n, n)
            rows = via_kernel.n_interior
            assert_allclose(
                via_kernel.values[1 : rows + 1],
                stepped.values[1 : rows + 1],
                atol=1e-10,
            )

    def test_delta_diagonal_is_product(self, rng):
        spec = random_spec(5, rng)
        kernel = goursat_kernel(spec, 5)
        field = solution_via_kernel(spec, kernel, Control.delta())
        for n in range(1, kernel.wall_row + 1):
            assert field.at(n, n) == kernel.products[n]

    def test_horizon_guard(self, rng):
        spec = random_spec(3, rng)
        kernel = goursat_kernel(spec, 2)
        with pytest.raises(HorizonMismatch):
            solution_via_kernel(spec, kernel, random_control(rng, 3))


class TestResponseVector:
    def test_single_node_values(self):
        assert_allclose(response_vector(SPEC_1, 3), [1, 2 + 1j, 2 + 4j], atol=0)

    def test_two_node_values(self):
        assert_allclose(response_vector(SPEC_2, 5), [1, 0, 0, 0, -1], atol=0)

    def test_leading_entry_is_boundary_coupling(self, rng):
        for _ in range(10):
            spec = random_spec(int(rng.integers(1, 7)), rng)
            assert response_vector(spec, 1)[0] == spec.a0

    def test_methods_agree(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 7))
            spec = random_spec(n, rng)
            L = 2 * n - 1 if n > 1 else 1
            rt = response_vector(spec, L, "timestep")
            rk = response_vector(spec, L, "kernel")
            scale = np.maximum(1.0, np.abs(rt))
            assert np.max(np.abs(rt - rk) / scale) < 1e-10

    def test_delta_row_matches_kernel_row(self):
        # u^delta_{1,t} = r_{t-1} and r_1 = w_{1,1}
        kernel = goursat_kernel(SPEC_1, 3)
        r = response_vector(SPEC_1, 3)
        assert r[1] == kernel.w[1, 1]

    def test_parity_sign_flips(self, rng):
        # flipping any single a_k leaves r untouched and flips u_{n,.} iff k < n
        for _ in range(10):
            n = int(rng.integers(2, 7))
            spec = random_spec(n, rng)
            k = int(rng.integers(1, n))
            flipped_a = spec.a.copy()
            flipped_a[k - 1] = -flipped_a[k - 1]
            flipped = JacobiSpec(spec.a0, flipped_a, spec.b)
            assert np.array_equal(
                response_vector(spec, 2 * n - 1), response_vector(flipped, 2 * n - 1)
            )
            f = random_control(rng, n)
            u = simulate_finite(spec, f, n, n).values
            u_flipped = simulate_finite(flipped, f, n, n).values
            for node in range(1, n + 1):
                expected = -u[node] if k < node else u[node]
                assert np.array_equal(u_flipped[node], expected)


class TestConvolutionAndResponseMap:
    def test_delta_is_identity(self, rng):
        f = rng.uniform(-1, 1, 6) + 1j * rng.uniform(-1, 1, 6)
        out = convolve([1.0], f)
        assert np.array_equal(out, f)

    def test_binomial(self):
        assert np.array_equal(convolve([1, 1], [1, 1]), np.array([1, 2, 1], dtype=complex))

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=6),
           st.lists(st.integers(-5, 5), min_size=1, max_size=6))
    def test_commutative(self, f, g):
        assert np.array_equal(convolve(f, g), convolve(g, f))

    def test_apply_response_delta(self, rng):
        spec = random_spec(3, rng)
        r = response_vector(spec, 5)
        out = apply_response(r, Control.delta(5))
        assert np.array_equal(out, r)

    def test_apply_response_matches_simulation(self, rng):
        for _ in range(10):
            n = int(rng.integers(1, 7))
            spec = random_spec(n, rng)
            f = random_control(rng, n)
            r = response_vector(spec, n)
            out = apply_response(r, f)
            row = simulate_finite(spec, f, n, n).values[1, 2 : n + 2]
            assert np.max(np.abs(out - row)) < 1e-10

    def test_apply_response_scaling(self, rng):
        spec = random_spec(3, rng)
        r = response_vector(spec, 3)
        doubled = apply_response(r, Control(2 * Control.delta(3).samples))
        assert np.array_equal(doubled, 2 * apply_response(r, Control.delta(3)))

    def test_short_response_rejected(self):
        with pytest.raises(HorizonMismatch):
            apply_response(np.array([1.0]), Control.delta(3))


class TestAuxiliaryResponse:
    def test_real_spec_unchanged(self, rng):
        spec = JacobiSpec(1.0, rng.uniform(0.2, 2, 3), rng.uniform(-2, 2, 4))
        assert np.array_equal(auxiliary_response(spec, 7), response_vector(spec, 7))

    def test_hand_example(self):
        assert_allclose(auxiliary_response(SPEC_1, 3), [1, 2 - 1j, 2 - 4j], atol=0)

    def test_conjugation_identity(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 7))
            spec = random_spec(n, rng)
            L = 2 * n - 1 if n > 1 else 1
            aux = auxiliary_response(spec, L)
            assert np.max(np.abs(aux - np.conj(response_vector(spec, L)))) < 1e-12
