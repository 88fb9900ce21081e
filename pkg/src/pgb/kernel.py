"""Dirichlet (periodic sinc) kernel and band-limited off-grid evaluation.

The Dirichlet kernel interpolates N unit-spaced periodic samples exactly:
D(0) = 1 and D(k) = 0 at every other integer, so running it over a sample
vector reproduces the unique band-limited periodic signal through those
samples.  That is also how the lattice atoms and their biorthogonal
partners acquire values between the samples.
"""

import numpy as np

from .errors import InvalidArgumentError


def dirichlet_eval(n, t):
    """Dirichlet kernel for n unit-spaced samples, evaluated at t.

    Odd n gives the classical real kernel sin(pi t) / (n sin(pi t / n)).
    Even n uses the asymmetric mode range -n/2 .. n/2 - 1, which keeps
    exact on-sample interpolation at the cost of a complex value off the
    samples; the closed form is the odd-n ratio times exp(-1j pi t / n).
    The removable singularity at t = 0 (mod n) evaluates to 1 for both
    parities.  t may be a scalar or an array; the result matches its shape.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n!r}")
    t = np.asarray(t, dtype=float)
    r = np.remainder(t, n)
    on_sample = np.minimum(r, n - r) < 1e-9 * n
    num = np.sin(np.pi * t)
    den = n * np.sin(np.pi * t / n)
    ratio = np.where(on_sample, 1.0, num) / np.where(on_sample, 1.0, den)
    if n % 2 == 0:
        out = np.where(on_sample, 1.0 + 0.0j, ratio * np.exp(-1j * np.pi * t / n))
    else:
        out = np.where(on_sample, 1.0, ratio)
    if out.ndim == 0:
        return out[()]
    return out


def interpolate(x, t):
    """Band-limited evaluation of the sample vector x at real positions t.

    Returns sum_i x[i] * D(t - i) with D = dirichlet_eval(len(x), .).
    Reproduces x[k] exactly at integer t = k and is periodic in t with
    period len(x).
    """
    x = np.asarray(getattr(x, "samples", x))
    if x.ndim != 1 or x.size == 0:
        raise InvalidArgumentError("interpolate needs a nonempty 1-D sample vector")
    t = np.asarray(t, dtype=float)
    d = dirichlet_eval(x.size, t[..., None] - np.arange(x.size))
    return d @ x.astype(complex)


def pg_eval(plan, m, t):
    """Off-grid value of lattice atom m (0-based column index).

    Interpolates the sampled atom column through the Dirichlet kernel; at
    integer t = k this returns G[k, m] exactly.
    """
    return interpolate(_column(plan, m, plan.gabor_column), t)


def bg_eval(plan, m, t):
    """Off-grid value of the biorthogonal partner of atom m.

    Interpolates column m of B = (G^H)^-1; at integer t = k this returns
    B[k, m].
    """
    return interpolate(_column(plan, m, plan.biorthogonal_column), t)


def _column(plan, m, getter):
    n = plan.config.n_total
    if not (0 <= m < n):
        raise InvalidArgumentError(f"cell index {m} outside [0, {n})")
    return getter(int(m))
