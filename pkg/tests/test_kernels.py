"""Backend parity: the compiled kernels must agree bit-for-bit with pure Python."""

import random

import numpy as np
import pytest

from skyshot.kernels import pure

try:
    from skyshot.kernels import _fast
except ImportError:
    _fast = None

needs_compiled = pytest.mark.skipif(_fast is None, reason="compiled kernel extension not built")


@needs_compiled
def test_frustum_scalar_parity():
    rng = random.Random(11)
    for _ in range(5000):
        args = (
            rng.uniform(-500, 500),
            rng.uniform(-500, 500),
            rng.uniform(0, 200),
            rng.uniform(0, 360),
            rng.uniform(-30, 90),
            rng.uniform(5, 40),
            rng.uniform(4, 30),
            rng.uniform(10, 120),
            rng.uniform(-500, 500),
            rng.uniform(-500, 500),
            rng.uniform(-200, 400),
        )
        assert pure.point_in_frustum(*args) == _fast.point_in_frustum(*args)


@needs_compiled
def test_frustum_batch_parity():
    rng = np.random.default_rng(7)
    samples = np.column_stack(
        [
            rng.uniform(-100, 100, 2000),
            rng.uniform(-100, 100, 2000),
            rng.uniform(0, 100, 2000),
            rng.uniform(0, 360, 2000),
            rng.uniform(-30, 90, 2000),
        ]
    )
    args = (samples, 23.66, 13.3, 35.0, 5.0, -3.0, 1.0)
    assert pure.frustum_visible_count(*args) == _fast.frustum_visible_count(*args)


@needs_compiled
def test_bilinear_parity():
    rng = np.random.default_rng(3)
    grid = np.ascontiguousarray(rng.uniform(-50, 150, (17, 23)))
    cell = 12.5
    es = rng.uniform(0, 22 * cell, 5000)
    ns = rng.uniform(0, 16 * cell, 5000)
    out_pure = np.empty(5000)
    out_fast = np.empty(5000)
    pure.bilinear_heights_into(grid, cell, es, ns, out_pure)
    _fast.bilinear_heights_into(grid, cell, es, ns, out_fast)
    assert np.array_equal(out_pure, out_fast)
    for e, n, h in zip(es[:100], ns[:100], out_pure[:100]):
        assert _fast.bilinear_height(grid, cell, e, n) == h
        assert pure.bilinear_height(grid, cell, e, n) == h


def test_batch_count_matches_scalar_loop():
    rng = np.random.default_rng(5)
    samples = np.column_stack(
        [
            rng.uniform(-50, 50, 500),
            rng.uniform(-50, 50, 500),
            rng.uniform(0, 60, 500),
            rng.uniform(0, 360, 500),
            rng.uniform(-30, 90, 500),
        ]
    )
    expected = sum(
        pure.point_in_frustum(*row, 23.66, 13.3, 35.0, 0.0, 0.0, 0.0) for row in samples
    )
    assert pure.frustum_visible_count(samples, 23.66, 13.3, 35.0, 0.0, 0.0, 0.0) == expected
