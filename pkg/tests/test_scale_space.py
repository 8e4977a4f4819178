import numpy as np
import pytest

from jplse import InvalidInput
from jplse.scale_space import (
    ScaleSpacePath,
    build_path,
    deterministic_path,
    eval_path,
    lower_hull,
    suggest_grid,
    table_row,
    truncate,
)
from jplse.segment import fit_all_k, fit_fixed_gamma
from jplse.signals import load_blocks
from jplse.step import SIGNALS, StepFunction, cell_means

from conftest import mixed_series


def path_of(y):
    y = np.asarray(y, dtype=float)
    return build_path(fit_all_k(y, y.size - 1))


def test_two_point_path():
    p = path_of([0, 1])
    np.testing.assert_allclose(p.critical_gammas, [0.25])
    assert p.ks == [0, 1]
    assert p.pieces[0].function == StepFunction.constant(0.5)
    assert p.pieces[1].function == StepFunction([0.5], [0, 1])


def test_constant_series_has_single_piece():
    p = path_of([2, 2, 2])
    assert p.critical_gammas.size == 0 and p.ks == [0]


def test_flat_tail_collapses():
    p = path_of([1, 1, 5, 5])
    np.testing.assert_allclose(p.critical_gammas, [4])
    assert p.ks == [0, 1]


def test_build_path_refuses_partial_or_non_monotone():
    with pytest.raises(InvalidInput):
        build_path(fit_all_k([0, 1, 2], 1))
    t = fit_all_k([0, 1, 3], 2)
    bad = type(t)(t.n, t.K, np.array([1.0, 2.0, 0.0]), t.y, t.next_end)
    with pytest.raises(InvalidInput):
        build_path(bad)


def test_eval_path_conventions():
    p = path_of([0, 1])
    assert eval_path(p, 0.0) == StepFunction.constant(0.5)
    assert eval_path(p, 1 / 0.25) == StepFunction([0.5], [0, 1])
    assert eval_path(p, 1.0) == StepFunction.constant(0.5)
    with pytest.raises(InvalidInput):
        eval_path(p, -1.0)


def test_deterministic_indicator_path():
    p = deterministic_path(StepFunction([0.5], [0, 1]), 2)
    np.testing.assert_allclose(p.critical_gammas, [0.25])
    assert p.pieces[0].function == StepFunction.constant(0.5)
    assert p.pieces[1].function == StepFunction([0.5], [0, 1])
    assert p.residual == 0


def test_deterministic_constant_path():
    assert deterministic_path(StepFunction.constant(3), 8).critical_gammas.size == 0


def test_deterministic_refuses_off_grid_with_hint():
    with pytest.raises(InvalidInput, match="N = 100"):
        deterministic_path(load_blocks(), 64)


def test_blocks_paths_counts():
    f = load_blocks()
    assert suggest_grid(f) == 100
    exact = deterministic_path(f, 100)
    assert exact.ks == [0, 2, 4, 6, 7, 8, 9, 10, 11]
    coarse = deterministic_path(f, 64, allow_off_grid=True)
    hull = lower_hull(fit_all_k(cell_means(f, 64), 63).delta)
    assert coarse.ks == hull and coarse.critical_gammas.size == 15


def test_blocks_grid_refinement_stable():
    f = load_blocks()
    a = deterministic_path(f, 100).critical_gammas
    b = deterministic_path(f, 200).critical_gammas
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-9)


def test_smooth_signal_residual_matches_norm():
    f = SIGNALS["sin"]
    p = deterministic_path(f, 32)
    # gamma -> infinity piece is the mean (0), so its objective is ||f||^2 = 1/2
    assert p.objective(1e6) == pytest.approx(0.5, abs=1e-12)


def test_piece_constancy_and_changepoint_coincidence(rng):
    for _ in range(10):
        y = mixed_series(rng, 24)
        p = path_of(y)
        for piece in p.pieces:
            hi = piece.gamma_hi if np.isfinite(piece.gamma_hi) else 2 * max(piece.gamma_lo, 1e-3)
            lo = piece.gamma_lo if piece.gamma_lo > 0 else hi * 1e-3
            for g in np.exp(rng.uniform(np.log(lo), np.log(hi), 10)):
                if g <= lo * (1 + 1e-9) or g >= hi * (1 - 1e-9):
                    continue
                assert fit_fixed_gamma(y, g)[0] == piece.segmentation
        for i, g in enumerate(p.critical_gammas):
            a, b = p.pieces[i], p.pieces[i + 1]
            assert a.k * g + a.delta == pytest.approx(b.k * g + b.delta, abs=1e-9)


def test_hull_dominance(rng):
    for _ in range(20):
        y = mixed_series(rng, 20)
        d = fit_all_k(y, 19).delta
        hull = set(lower_hull(d))
        gam = np.logspace(-6, 2, 400)
        env = np.min(np.arange(20)[:, None] * gam + d[:, None], axis=0)
        for k in set(range(20)) - hull:
            assert np.all(k * gam + d[k] - env >= -1e-9)
        assert len(hull) <= y.size


def test_truncate_and_table_row():
    p = deterministic_path(load_blocks(), 100)
    T = float(p.zeta_jumps[3]) + 1e-9
    t = truncate(p, T)
    assert t.critical_gammas.size == 4 and t.pieces[-1].gamma_lo == 0.0
    row = table_row(p, 11)
    assert row.size == 11 and np.all(row[8:] == 0) and np.all(row[:8] > 0)


def test_path_json_round_trip():
    p = path_of([0, 3, 3, 1, 0])
    q = ScaleSpacePath.from_dict(p.to_dict())
    np.testing.assert_array_equal(p.critical_gammas, q.critical_gammas)
    assert [a.function for a in p.pieces] == [b.function for b in q.pieces]
