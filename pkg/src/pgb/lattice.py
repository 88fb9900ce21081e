"""Critically sampled Gabor lattice and the sampled Gaussian matrix.

The lattice covers N = n_time * n_freq unit-spaced samples with one
Gaussian atom per 2*pi of time-frequency area: time step dt = N / n_time,
frequency step dw = 2*pi / n_freq, so dt * dw = 2*pi exactly.  The width
parameter alpha = dw / (2 dt) = pi / n_freq**2 balances the time and
frequency spreads of every atom.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class LatticeConfig:
    """Geometry of one critically sampled lattice.

    Attributes
    ----------
    n_time, n_freq : int
        Cell counts along the time and frequency axes.
    n_total : int
        Sample count N = n_time * n_freq.
    dt, dw : float
        Cell sizes: dt in samples, dw in rad/sample; dt * dw = 2*pi.
    alpha : float
        Gaussian width parameter pi / n_freq**2.
    t0, w0 : float
        Origin shifts.  Atom centers sit at t0 + n*dt for n = 1..n_time
        (inside (0, N)) and w0 + l*dw for l = 1..n_freq (inside (-pi, pi),
        symmetric about zero).
    """

    n_time: int
    n_freq: int
    n_total: int
    dt: float
    dw: float
    alpha: float
    t0: float
    w0: float


def build_config(n_time, n_freq):
    """Build a LatticeConfig for n_time by n_freq cells.

    Raises InvalidArgumentError unless both counts are positive integers.
    """
    for name, v in (("n_time", n_time), ("n_freq", n_freq)):
        if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 1:
            raise InvalidArgumentError(f"{name} must be a positive integer, got {v!r}")
    n_time = int(n_time)
    n_freq = int(n_freq)
    n = n_time * n_freq
    dt = n / n_time
    dw = 2.0 * np.pi / n_freq
    return LatticeConfig(
        n_time=n_time,
        n_freq=n_freq,
        n_total=n,
        dt=dt,
        dw=dw,
        alpha=np.pi / n_freq**2,
        t0=-dt / 2.0,
        w0=-(2.0 * np.pi + dw) / 2.0,
    )


def time_centers(config):
    """Atom time centers t_n = t0 + n*dt, n = 1..n_time."""
    return config.t0 + config.dt * np.arange(1, config.n_time + 1)


def freq_centers(config):
    """Atom frequency centers w_l = w0 + l*dw, l = 1..n_freq."""
    return config.w0 + config.dw * np.arange(1, config.n_freq + 1)


def cell_to_column(config, n, l):
    """0-based column index of 1-based cell (n, l): (n-1)*n_freq + (l-1).

    The frequency index varies fastest along columns.
    """
    if not (1 <= n <= config.n_time and 1 <= l <= config.n_freq):
        raise InvalidArgumentError(
            f"cell ({n}, {l}) outside lattice {config.n_time} x {config.n_freq}"
        )
    return (n - 1) * config.n_freq + (l - 1)


def column_to_cell(config, j):
    """1-based cell (n, l) of 0-based column j; inverse of cell_to_column."""
    if not (0 <= j < config.n_total):
        raise InvalidArgumentError(f"column {j} outside [0, {config.n_total})")
    return j // config.n_freq + 1, j % config.n_freq + 1


def gaussian_sample(config, cell, k):
    """Value of atom ``cell`` = (n, l) at integer sample k.

    The atom is the unit-normalized Gaussian centered on t_n, modulated to
    w_l, with the phase referenced to the center:

        (2 alpha / pi)**0.25 * exp(-alpha (k - t_n)**2 + 1j w_l (k - t_n))

    Samples are taken on the principal period k = 0..N-1; the periodic
    extension of the basis is carried by the band-limited interpolation
    kernel, not by wrapping the envelope.
    """
    n, l = cell
    if not (1 <= n <= config.n_time and 1 <= l <= config.n_freq):
        raise InvalidArgumentError(
            f"cell ({n}, {l}) outside lattice {config.n_time} x {config.n_freq}"
        )
    if not (0 <= k < config.n_total):
        raise InvalidArgumentError(f"sample index {k} outside [0, {config.n_total})")
    tn = config.t0 + n * config.dt
    wl = config.w0 + l * config.dw
    u = k - tn
    amp = (2.0 * config.alpha / np.pi) ** 0.25
    return complex(amp * np.exp(-config.alpha * u * u) * np.exp(1j * wl * u))


def build_gabor_matrix(config):
    """Dense N x N complex matrix G with G[k, j] = atom j at sample k.

    Columns follow the cell_to_column ordering.  Memory is O(N^2); large
    lattices should go through transform.build_plan, which switches to a
    truncated sparse representation instead of calling this.
    """
    k = np.arange(config.n_total, dtype=float)
    u = k[:, None] - time_centers(config)[None, :]  # (N, n_time)
    env = (2.0 * config.alpha / np.pi) ** 0.25 * np.exp(-config.alpha * u**2)
    phase = np.exp(1j * u[:, :, None] * freq_centers(config)[None, None, :])
    g = env[:, :, None] * phase
    return g.reshape(config.n_total, config.n_total)
