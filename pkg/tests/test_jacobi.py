import numpy as np
import pytest
from hypothesis import given, strategies as st

from momentbc.errors import LengthMismatch, NonFiniteEntry, SizeExceedsSpec, ZeroCoefficient
from momentbc.jacobi import JacobiSpec, random_spec, truncate, validate


def test_minimal_valid_spec():
    validate(JacobiSpec(a0=1.0, a=[], b=[2 + 1j]))


def test_zero_coupling_rejected():
    with pytest.raises(ZeroCoefficient):
        validate(JacobiSpec(a0=1.0, a=[0.0], b=[0.0, 0.0]))
    with pytest.raises(ZeroCoefficient):
        validate(JacobiSpec(a0=0.0, a=[], b=[1.0]))


def test_length_mismatch_rejected():
    with pytest.raises(LengthMismatch):
        validate(JacobiSpec(a0=1.0, a=[1.0, 1.0], b=[0.0, 0.0]))


def test_nonfinite_rejected():
    with pytest.raises(NonFiniteEntry):
        validate(JacobiSpec(a0=1.0, a=[np.nan], b=[0.0, 0.0]))
    with pytest.raises(NonFiniteEntry):
        validate(JacobiSpec(a0=1.0, a=[], b=[complex(np.inf, 0)]))


def test_truncate_direct_placement():
    block = truncate(JacobiSpec(a0=1.0, a=[1.0], b=[0.0, 0.0]), 2)
    assert np.array_equal(block.entries, np.array([[0, 1], [1, 0]], dtype=complex))


def test_truncate_single():
    block = truncate(JacobiSpec(a0=1.0, a=[], b=[2 + 1j]), 1)
    assert block.entries[0, 0] == 2 + 1j


def test_truncate_too_large():
    with pytest.raises(SizeExceedsSpec):
        truncate(JacobiSpec(a0=1.0, a=[1.0], b=[0.0, 0.0]), 3)


@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=2**32 - 1))
def test_truncate_symmetric_and_exact(n, seed):
    spec = random_spec(n, np.random.default_rng(seed))
    for m in range(1, n + 1):
        block = truncate(spec, m).entries
        assert np.array_equal(block, block.T)
        # diagonal is a bit-exact copy
        assert all(block[i, i] == spec.b[i] for i in range(m))


def test_random_spec_respects_bounds(rng):
    for _ in range(50):
        spec = random_spec(6, rng)
        validate(spec)
        assert abs(spec.a0) >= 0.1
        assert np.all(np.abs(spec.a) >= 0.1)
        for values in (spec.a, spec.b, np.array([spec.a0])):
            assert np.all(np.abs(values.real) <= 2.0)
            assert np.all(np.abs(values.imag) <= 2.0)


def test_conjugate_roundtrip(rng):
    spec = random_spec(4, rng)
    twice = spec.conjugate().conjugate()
    assert twice.a0 == spec.a0
    assert np.array_equal(twice.a, spec.a)
    assert np.array_equal(twice.b, spec.b)
