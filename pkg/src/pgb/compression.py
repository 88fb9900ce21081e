"""Top-k selection, sparse synthesis, least-squares refinement, baselines.

The compression story is: transform, keep the k largest-magnitude
coefficients, synthesize from the kept columns alone.  Optionally the
kept values are refit by least squares over their own synthesis span
(the refinement of Porat's construction), which can only shrink the
error.  A unitary-DFT top-k path provides the baseline.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import (
    IllConditionedError,
    InvalidArgumentError,
    ModeError,
    ShapeMismatchError,
)
from .signalio import Signal1D
from .transform import COND_FAIL, _BandedPlan, forward_pg, forward_pgb

_MODES = ("pgb", "pg", "dft")


@dataclass
class SparseCoefficients:
    """A kept subset of coefficients as (linear index, value) pairs.

    Entries are sorted by strictly increasing index.  ``config2`` is the
    column-axis lattice of a separable 2-D set and stays None for 1-D
    sets; dft-mode sets carry no lattice at all, only ``n_total``.
    ``porat`` records that the values were least-squares refined.
    """

    mode: str
    entries: list
    n_total: int
    config: object = None
    config2: object = None
    porat: bool = False

    def __post_init__(self):
        if self.mode not in _MODES:
            raise InvalidArgumentError(f"unknown mode {self.mode!r}")
        last = -1
        for idx, _ in self.entries:
            if not 0 <= idx < self.n_total:
                raise InvalidArgumentError(
                    f"index {idx} outside [0, {self.n_total})")
            if idx <= last:
                raise InvalidArgumentError(
                    f"indices must be strictly increasing, {idx} after {last}")
            last = idx

    def __len__(self):
        return len(self.entries)

    def indices(self):
        return np.array([i for i, _ in self.entries], dtype=int)

    def values(self):
        return np.array([v for _, v in self.entries], dtype=complex)

    def scatter(self):
        """Zero-filled dense vector with the kept values in place."""
        dense = np.zeros(self.n_total, dtype=complex)
        if self.entries:
            dense[self.indices()] = self.values()
        return dense


def top_k(coeffs, k):
    """Keep the k largest-magnitude entries of a dense coefficient set.

    Ties keep the lower linear index (stable sort on negated magnitudes),
    which makes kept sets nested as k grows.
    """
    values = np.asarray(coeffs.values)
    if not 0 <= k <= values.size:
        raise InvalidArgumentError(f"k={k} outside [0, {values.size}]")
    order = np.argsort(-np.abs(values), kind="stable")
    keep = np.sort(order[:k])
    entries = [(int(i), complex(values[i])) for i in keep]
    return SparseCoefficients(coeffs.mode, entries, values.size, config=coeffs.config)


def reconstruct_sparse(plan, sparse):
    """Synthesize a sparse set: biorthogonal columns for pgb, atoms for pg.

    Implemented as a zero-filled dense vector through the plan's exact
    synthesis, which equals the sum over kept columns.
    """
    if sparse.mode == "dft":
        raise ModeError("dft sets are reconstructed by dft_topk, not a lattice plan")
    if sparse.n_total != plan.config.n_total:
        raise ShapeMismatchError(
            f"sparse set over {sparse.n_total} cells does not match lattice "
            f"size {plan.config.n_total}")
    dense = sparse.scatter()
    if sparse.mode == "pgb":
        x = plan.solve_gh(dense)
    else:
        x = plan.mul_g(dense)
    return Signal1D(x)


def porat_correct(plan, sparse, x):
    """Least-squares refit of the kept values over their own synthesis span.

    Solves the normal equations of min ||x - M' d'|| where M' holds the
    kept synthesis columns: biorthogonal columns in pgb mode, atoms in pg
    mode.  The refit residual is orthogonal to every kept column, so the
    refined error never exceeds the plain top-k error.

    On the dense path the pgb normal matrix is formed literally as
    B_K^H B_K from the kept biorthogonal columns.  The banded path uses
    the identity B^H B = S^-1 and gathers the principal submatrix of
    S^-1 from one multi-column banded solve, never forming the columns.
    """
    if sparse.mode == "dft":
        raise ModeError("refinement applies to lattice modes, not dft")
    n = plan.config.n_total
    if sparse.n_total != n:
        raise ShapeMismatchError(
            f"sparse set over {sparse.n_total} cells does not match lattice size {n}")
    xs = np.asarray(getattr(x, "samples", x), dtype=complex)
    if xs.shape != (n,):
        raise ShapeMismatchError(f"signal shape {xs.shape} does not match ({n},)")
    if len(sparse) == 0:
        return SparseCoefficients(sparse.mode, [], n, config=sparse.config, porat=True)

    kept = sparse.indices()
    if sparse.mode == "pgb":
        if isinstance(plan, _BandedPlan):
            z = plan.solve_s(_unit_columns(n, kept))
            normal = z[kept, :]
            rhs = plan.solve_s(plan.mul_gh(xs))[kept]
        else:
            bk = plan.solve_gh(_unit_columns(n, kept))
            normal = bk.conj().T @ bk
            rhs = bk.conj().T @ xs
    else:
        if isinstance(plan, _BandedPlan):
            normal = _gather_band(plan.s_band_matrix(), plan.halfband, kept)
            rhs = plan.mul_gh(xs)[kept]
        else:
            gk = plan.g[:, kept]
            normal = gk.conj().T @ gk
            rhs = gk.conj().T @ xs
    normal = 0.5 * (normal + normal.conj().T)
    refined = _solve_posdef(normal, rhs)
    entries = [(int(i), complex(v)) for i, v in zip(kept, refined)]
    return SparseCoefficients(sparse.mode, entries, n, config=sparse.config, porat=True)


def _unit_columns(n, idx):
    e = np.zeros((n, len(idx)), dtype=complex)
    e[idx, np.arange(len(idx))] = 1.0
    return e


def _gather_band(ab, halfband, idx):
    """Dense principal submatrix A[idx][:, idx] of a lower-banded Hermitian."""
    ii = idx[:, None]
    jj = idx[None, :]
    off = ii - jj
    out = np.zeros((len(idx), len(idx)), dtype=complex)
    lower = (off >= 0) & (off <= halfband)
    out[lower] = ab[off[lower], np.broadcast_to(jj, off.shape)[lower]]
    upper = (off < 0) & (-off <= halfband)
    out[upper] = np.conj(ab[-off[upper], np.broadcast_to(ii, off.shape)[upper]])
    return out


def _solve_posdef(a, rhs):
    """Cholesky solve with a reciprocal-condition gate at the 1e12 policy."""
    try:
        c, low = sla.cho_factor(a, lower=True, check_finite=False)
    except sla.LinAlgError as exc:
        raise IllConditionedError(f"normal matrix is not positive definite: {exc}") from exc
    pocon, = sla.get_lapack_funcs(("pocon",), (a,))
    rcond, info = pocon(c, np.linalg.norm(a, 1), uplo=b"L")
    if info == 0 and rcond > 0 and 1.0 / rcond > COND_FAIL:
        raise IllConditionedError(
            f"normal matrix condition about {1.0 / rcond:.3e} exceeds {COND_FAIL:.0e}",
            cond=1.0 / rcond)
    return sla.cho_solve((c, low), rhs, check_finite=False)


def dft_topk(x, k):
    """Unitary-DFT top-k baseline: keep k bins, zero-fill, invert.

    Every complex bin counts as one coefficient; conjugate partners of a
    real signal are not bundled.  Ties follow the same lower-index rule
    as top_k.  Returns (sparse set, reconstruction).
    """
    xs = np.asarray(getattr(x, "samples", x))
    if xs.ndim != 1:
        raise InvalidArgumentError(f"expected a 1-D signal, got shape {xs.shape}")
    n = xs.size
    if not 0 <= k <= n:
        raise InvalidArgumentError(f"k={k} outside [0, {n}]")
    spectrum = np.fft.fft(xs, norm="ortho")
    order = np.argsort(-np.abs(spectrum), kind="stable")
    keep = np.sort(order[:k])
    kept = np.zeros(n, dtype=complex)
    kept[keep] = spectrum[keep]
    recon = np.fft.ifft(kept, norm="ortho")
    entries = [(int(i), complex(spectrum[i])) for i in keep]
    return SparseCoefficients("dft", entries, n), Signal1D(recon)


def dft_reconstruct(sparse):
    """Invert a dft-mode sparse set (zero-filled unitary inverse FFT)."""
    if sparse.mode != "dft":
        raise ModeError(f"expected dft coefficients, got {sparse.mode!r}")
    return Signal1D(np.fft.ifft(sparse.scatter(), norm="ortho"))


@dataclass(frozen=True)
class ErrorMetrics:
    """l2 error, mean squared error, and PSNR in dB (peak 255 by default)."""

    l2_error: float
    mse: float
    psnr: float


def compute_metrics(x, xhat, peak=255.0):
    """Error metrics between two same-shape signals or images.

    mse is l2_error**2 / size; psnr is 10 log10(peak^2 / mse) with the
    8-bit peak of 255 unless overridden, and +inf for an exact match.
    """
    a = np.asarray(_payload(x))
    b = np.asarray(_payload(xhat))
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shape {a.shape} vs {b.shape}")
    diff = (a - b).ravel()
    l2 = float(np.linalg.norm(diff))
    mse = l2**2 / diff.size
    psnr = np.inf if mse == 0 else float(10.0 * np.log10(peak**2 / mse))
    return ErrorMetrics(l2_error=l2, mse=mse, psnr=psnr)


def _payload(obj):
    if hasattr(obj, "samples"):
        return obj.samples
    if hasattr(obj, "pixels"):
        return obj.pixels
    return obj


def error_vs_k_sweep(plan, x, k_list, modes=("pgb", "pg", "dft"), porat=False):
    """Reconstruction-error table over k for each mode.

    Returns a list of row dicts with keys k, mode, porat, l2_error, mse,
    psnr, in deterministic order: k in the given order, then mode, with
    the Porat-refined variant (when requested) right after its plain row.
    Refinement rows are emitted for the lattice modes only.  Render with
    sweep_csv.
    """
    ks = [int(k) for k in k_list]
    n = plan.config.n_total
    for k in ks:
        if not 0 <= k <= n:
            raise InvalidArgumentError(f"k={k} outside [0, {n}]")
    for mode in modes:
        if mode not in _MODES:
            raise InvalidArgumentError(f"unknown mode {mode!r}")
    xs = np.asarray(getattr(x, "samples", x))

    full = {}
    if "pgb" in modes:
        full["pgb"] = forward_pgb(plan, xs)
    if "pg" in modes:
        full["pg"] = forward_pg(plan, xs)

    rows = []

    def add(k, mode, porat_flag, rec):
        m = compute_metrics(xs, rec.samples)
        rows.append({"k": k, "mode": mode, "porat": int(porat_flag),
                     "l2_error": m.l2_error, "mse": m.mse, "psnr": m.psnr})

    for k in ks:
        for mode in modes:
            if mode == "dft":
                _, rec = dft_topk(xs, k)
                add(k, mode, 0, rec)
                continue
            sparse = top_k(full[mode], k)
            add(k, mode, 0, reconstruct_sparse(plan, sparse))
            if porat:
                refined = porat_correct(plan, sparse, xs)
                add(k, mode, 1, reconstruct_sparse(plan, refined))
    return rows


def sweep_csv(rows):
    """Render sweep rows as CSV with 9-significant-digit floats."""
    lines = ["k,mode,porat,l2_error,mse,psnr"]
    for r in rows:
        lines.append(
            f"{r['k']},{r['mode']},{r['porat']},"
            f"{r['l2_error']:.9g},{r['mse']:.9g},{r['psnr']:.9g}")
    return "\n".join(lines) + "\n"
