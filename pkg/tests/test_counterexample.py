"""Vectorized sweep against a scalar re-implementation, plus frozen pins."""
from __future__ import annotations

import numpy as np
import pytest

from ifs_shadow import (
    Circle,
    SymbolStream,
    block_switching_points,
    make,
    profile_from_distances,
    run_sweep,
    stream_seed,
    tail_statistic,
)


@pytest.fixture(scope="module")
def small_sweep():
    return run_sweep(
        a=0.5, block=4, doublings=4, grid=8, streams=4,
        capture_tol=1e-3, capture_steps=500, seed=5,
    )


def test_sweep_shapes_and_delta(small_sweep):
    s = small_sweep
    assert s.horizon == 3 * 2**4 * 4
    assert s.tails.shape == (8, 4)
    assert s.captured.shape == (8, 4)
    assert s.separation == 0.5
    assert s.delta == 3.0 * 0.5 / 4 + 1e-9
    assert s.validation.passed


def test_sweep_frozen_pin(small_sweep):
    assert small_sweep.min_tail == 0.1812175143579945
    assert small_sweep.all_captured


def test_sweep_is_deterministic(small_sweep):
    again = run_sweep(
        a=0.5, block=4, doublings=4, grid=8, streams=4,
        capture_tol=1e-3, capture_steps=500, seed=5,
    )
    assert np.array_equal(again.tails, small_sweep.tails)
    assert np.array_equal(again.captured, small_sweep.captured)
    other = run_sweep(
        a=0.5, block=4, doublings=4, grid=8, streams=4,
        capture_tol=1e-3, capture_steps=500, seed=6,
    )
    assert not np.array_equal(other.tails, small_sweep.tails)


def test_sweep_matches_scalar_replay(small_sweep):
    """Each sweep cell equals a plain one-point simulation driven by the
    equivalent symbol stream: bit 1 in column s picks the second map."""
    s = small_sweep
    ifs = make("circle_counterexample", a=0.5)
    circle = Circle()
    targets = block_switching_points(0.0, 0.5, s.block, s.horizon)
    for g in (0, 3, 7):
        for col in range(4):
            stream = SymbolStream.random((1, 2), stream_seed(5, col))
            x = (g + 0.5) / 8.0
            distances = [circle.distance(x, targets[0])]
            for n in range(s.horizon):
                x = ifs.apply(stream[n], x)
                distances.append(circle.distance(x, targets[n + 1]))
            profile = profile_from_distances(distances)
            assert tail_statistic(profile, s.window) == pytest.approx(
                s.tails[g, col], abs=1e-12
            )


def test_capture_flags_match_scalar_replay(small_sweep):
    s = small_sweep
    ifs = make("circle_counterexample", a=0.5)
    circle = Circle()
    for g in (0, 5):
        for col in range(4):
            stream = SymbolStream.random((1, 2), stream_seed(5, col))
            x = (g + 0.5) / 8.0
            hit = min(circle.distance(x, 0.0), circle.distance(x, 0.5)) <= 1e-3
            for n in range(min(s.horizon, s.capture_steps)):
                x = ifs.apply(stream[n], x)
                if min(circle.distance(x, 0.0), circle.distance(x, 0.5)) <= 1e-3:
                    hit = True
                    break
            assert hit == bool(s.captured[g, col])


def test_sweep_rejects_degenerate_blocks():
    with pytest.raises(ValueError):
        run_sweep(block=0, doublings=2, grid=4, streams=2)
    with pytest.raises(ValueError):
        run_sweep(block=4, doublings=0, grid=4, streams=2)
