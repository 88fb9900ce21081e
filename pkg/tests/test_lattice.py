"""Lattice geometry, cell indexing, and the sampled atom matrix."""

import numpy as np
import pytest
from oracles import lattices_up_to, naive_gabor_matrix

from pgb import (
    InvalidArgumentError,
    build_config,
    build_gabor_matrix,
    cell_to_column,
    column_to_cell,
    freq_centers,
    gaussian_sample,
    time_centers,
)


def test_config_fields_8x8():
    cfg = build_config(8, 8)
    assert cfg.n_time == 8 and cfg.n_freq == 8 and cfg.n_total == 64
    assert cfg.dt == 8.0
    assert cfg.dw == pytest.approx(np.pi / 4)
    assert cfg.alpha == pytest.approx(np.pi / 64)
    assert cfg.t0 == -4.0
    assert cfg.w0 == pytest.approx(-(2 * np.pi + np.pi / 4) / 2)


def test_cell_area_is_2pi_everywhere():
    for nt, nw in lattices_up_to(16):
        cfg = build_config(nt, nw)
        assert cfg.dt * cfg.dw == pytest.approx(2 * np.pi, abs=1e-12)


@pytest.mark.parametrize("bad", [0, -1, 2.5, "4", True, np.float64(4.0)])
def test_build_config_rejects_non_positive_ints(bad):
    with pytest.raises(InvalidArgumentError):
        build_config(bad, 4)
    with pytest.raises(InvalidArgumentError):
        build_config(4, bad)


def test_build_config_accepts_numpy_integers():
    cfg = build_config(np.int64(4), np.int32(8))
    assert cfg.n_total == 32


def test_time_centers_tile_the_period():
    cfg = build_config(5, 3)
    t = time_centers(cfg)
    assert len(t) == 5
    assert np.allclose(np.diff(t), cfg.dt)
    # centers sit at (n - 1/2) dt, so the first and last straddle [0, N)
    assert t[0] == pytest.approx(cfg.dt / 2)
    assert t[0] + t[-1] == pytest.approx(cfg.n_total)


def test_freq_centers_symmetric_inside_band():
    for nw in (1, 2, 3, 8, 13):
        cfg = build_config(2, nw)
        w = freq_centers(cfg)
        assert len(w) == nw
        assert np.allclose(w + w[::-1], 0.0, atol=1e-12)
        assert np.all(w > -np.pi) and np.all(w < np.pi)
        assert np.allclose(np.diff(w), cfg.dw)


def test_cell_column_round_trip():
    cfg = build_config(4, 6)
    seen = set()
    for n in range(1, 5):
        for l in range(1, 7):
            j = cell_to_column(cfg, n, l)
            assert column_to_cell(cfg, j) == (n, l)
            seen.add(j)
    assert seen == set(range(24))


def test_column_order_is_frequency_fastest():
    cfg = build_config(3, 4)
    assert cell_to_column(cfg, 1, 1) == 0
    assert cell_to_column(cfg, 1, 2) == 1
    assert cell_to_column(cfg, 2, 1) == 4


@pytest.mark.parametrize("n,l", [(0, 1), (1, 0), (5, 1), (1, 7), (-1, 2)])
def test_cell_to_column_range_errors(n, l):
    cfg = build_config(4, 6)
    with pytest.raises(InvalidArgumentError):
        cell_to_column(cfg, n, l)


@pytest.mark.parametrize("j", [-1, 24, 1000])
def test_column_to_cell_range_errors(j):
    cfg = build_config(4, 6)
    with pytest.raises(InvalidArgumentError):
        column_to_cell(cfg, j)


def test_gaussian_sample_peak_value():
    # the first time center of the 8x8 lattice lands on sample 4, where the
    # envelope peaks and the phase factor is exactly 1
    cfg = build_config(8, 8)
    peak = (2 * cfg.alpha / np.pi) ** 0.25
    for l in range(1, 9):
        v = gaussian_sample(cfg, (1, l), 4)
        assert v == pytest.approx(peak)
        assert v.imag == pytest.approx(0.0, abs=1e-15)


def test_gaussian_sample_envelope_even_about_center():
    cfg = build_config(8, 8)
    for u in (1, 2, 3):
        left = gaussian_sample(cfg, (2, 3), 12 - u)
        right = gaussian_sample(cfg, (2, 3), 12 + u)
        assert abs(left) == pytest.approx(abs(right))


def test_gaussian_sample_range_errors():
    cfg = build_config(4, 4)
    with pytest.raises(InvalidArgumentError):
        gaussian_sample(cfg, (0, 1), 0)
    with pytest.raises(InvalidArgumentError):
        gaussian_sample(cfg, (1, 5), 0)
    with pytest.raises(InvalidArgumentError):
        gaussian_sample(cfg, (1, 1), 16)
    with pytest.raises(InvalidArgumentError):
        gaussian_sample(cfg, (1, 1), -1)


@pytest.mark.parametrize("nt,nw", [(1, 1), (2, 3), (3, 2), (4, 4), (8, 8),
                                   (2, 8), (8, 2), (1, 16), (16, 1)])
def test_gabor_matrix_matches_naive_oracle(nt, nw):
    built = build_gabor_matrix(build_config(nt, nw))
    naive = naive_gabor_matrix(nt, nw)
    assert built.shape == (nt * nw, nt * nw)
    assert np.max(np.abs(built - naive)) < 1e-14


def test_gabor_matrix_agrees_with_gaussian_sample():
    cfg = build_config(3, 5)
    g = build_gabor_matrix(cfg)
    for j in (0, 7, 14):
        n, l = column_to_cell(cfg, j)
        col = np.array([gaussian_sample(cfg, (n, l), k) for k in range(15)])
        assert np.allclose(g[:, j], col, atol=1e-15)
