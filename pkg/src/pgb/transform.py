"""Transform plans and the exact pgb / pg analysis and synthesis paths.

A plan factors the Gabor matrix once so that every later transform is a
matrix product or a triangular solve.  The two modes share the plan:

* pgb mode analyzes with the atoms themselves, d = G^H x, and
  synthesizes with the biorthogonal columns, x = B d with B = (G^H)^-1.
  The coefficients are plain localized inner products.
* pg mode is the conventional expansion: analysis solves G c = x and
  synthesis is x = G c.

Small lattices keep G dense behind one LU factorization.  Large lattices
(the 100 x 100 audio grid, for instance) switch to a truncated sparse G
with a banded Cholesky factorization of the overlap matrix S = G^H G;
the Gaussian envelope falls below 1e-18 within a few time cells of each
center, so the truncation sits far beneath every round-trip tolerance
used here.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .errors import (
    IllConditionedError,
    InvalidArgumentError,
    ModeError,
    ShapeMismatchError,
)
from .lattice import build_gabor_matrix, freq_centers, time_centers
from .signalio import Signal1D

COND_WARN = 1e8
COND_FAIL = 1e12

# Envelope truncation for the sparse path: exp(-41.45) is about 1e-18.
_LN_TRUNC = 41.45
# Largest N kept dense under method="auto".
_DENSE_MAX = 2048


@dataclass
class CoefficientSet:
    """Dense coefficient vector tagged with its mode and lattice.

    ``real_input`` records that analysis saw a purely real signal, so the
    exact inverse may hand back a real signal again.
    """

    mode: str
    values: np.ndarray
    config: object
    real_input: bool = False

    def __len__(self):
        return len(self.values)


class TransformPlan:
    """Immutable solver state for one lattice.

    Attributes
    ----------
    config : LatticeConfig
    g : ndarray or scipy.sparse.csr_matrix
        The Gabor matrix; sparse and envelope-truncated on the banded path.
    method : str
        "dense" or "banded".
    cond_estimate : float
        Condition estimate of G (exact SVD up to N = 1024, power iteration
        beyond).
    warning : str or None
        Set when cond_estimate exceeds the warn threshold.

    The five primitives below are everything the higher layers need:
    products with G and G^H plus solves against G, G^H, and S = G^H G.
    """

    def __init__(self, config, g, method):
        self.config = config
        self.g = g
        self.method = method
        self.cond_estimate = None
        self.warning = None

    def mul_g(self, v):
        raise NotImplementedError

    def mul_gh(self, v):
        raise NotImplementedError

    def solve_g(self, b):
        raise NotImplementedError

    def solve_gh(self, b):
        raise NotImplementedError

    def solve_s(self, b):
        raise NotImplementedError

    def gabor_column(self, j):
        raise NotImplementedError

    def biorthogonal_column(self, j):
        """Column j of B = (G^H)^-1, via one factorization solve."""
        e = np.zeros(self.config.n_total, dtype=complex)
        e[j] = 1.0
        return self.solve_gh(e)


class _DensePlan(TransformPlan):
    def __init__(self, config, g, lu):
        super().__init__(config, g, "dense")
        self._lu = lu

    def mul_g(self, v):
        return self.g @ v

    def mul_gh(self, v):
        return self.g.conj().T @ v

    def solve_g(self, b):
        return sla.lu_solve(self._lu, np.asarray(b, dtype=complex), trans=0,
                            check_finite=False)

    def solve_gh(self, b):
        # trans=2 solves the conjugate-transposed system G^H x = b
        return sla.lu_solve(self._lu, np.asarray(b, dtype=complex), trans=2,
                            check_finite=False)

    def solve_s(self, b):
        # S^-1 = G^-1 (G^H)^-1, two solves against the same factorization
        return self.solve_g(self.solve_gh(b))

    def gabor_column(self, j):
        return self.g[:, j].copy()


class _BandedPlan(TransformPlan):
    def __init__(self, config, g, gh, s_band, chol, halfband):
        super().__init__(config, g, "banded")
        self._gh = gh
        self._s_band = s_band
        self._chol = chol
        self.halfband = halfband

    def mul_g(self, v):
        return self.g @ v

    def mul_gh(self, v):
        return self._gh @ v

    def solve_s(self, b):
        return sla.cho_solve_banded((self._chol, True), np.asarray(b, dtype=complex),
                                    check_finite=False)

    def solve_g(self, b):
        # Normal-equation route, exact because G is square and invertible.
        return self.solve_s(self.mul_gh(b))

    def solve_gh(self, b):
        # (G^H)^-1 = G S^-1 for square invertible G.
        return self.mul_g(self.solve_s(b))

    def gabor_column(self, j):
        return self.g[:, [j]].toarray().ravel()

    def s_band_matrix(self):
        """Lower-banded storage of S (row i of the band holds diagonal -i)."""
        return self._s_band


def build_plan(config, method="auto"):
    """Factor the lattice's Gabor matrix and record a condition estimate.

    method "auto" keeps G dense up to N = 2048 and switches to the
    truncated sparse, banded-Cholesky backend above that whenever the
    band is genuinely narrow (many time cells).  "dense" and "banded"
    force a backend.

    Raises IllConditionedError when the condition estimate exceeds 1e12;
    attaches a warning string to the plan above 1e8.
    """
    if method not in ("auto", "dense", "banded"):
        raise InvalidArgumentError(f"unknown method {method!r}")
    n = config.n_total
    if method == "auto":
        method = "banded" if (n > _DENSE_MAX and config.n_time > 16) else "dense"

    if method == "dense":
        g = build_gabor_matrix(config)
        try:
            lu = sla.lu_factor(g, check_finite=False)
        except sla.LinAlgError as exc:
            raise IllConditionedError(f"Gabor matrix is singular: {exc}") from exc
        plan = _DensePlan(config, g, lu)
        if n <= 1024:
            sv = np.linalg.svd(g, compute_uv=False)
            cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else np.inf
        else:
            cond = _cond_power(lambda v: plan.mul_gh(plan.mul_g(v)), plan.solve_s, n)
    else:
        rows, blocks = _atom_blocks(config)
        g = _assemble_sparse_g(config, rows, blocks)
        gh = g.conj().T.tocsr()
        s_band, halfband = _assemble_s_band(config, rows, blocks)
        try:
            chol = sla.cholesky_banded(s_band, lower=True, check_finite=False)
        except sla.LinAlgError as exc:
            raise IllConditionedError(f"overlap matrix is not positive definite: {exc}") from exc
        plan = _BandedPlan(config, g, gh, s_band, chol, halfband)
        cond = _cond_power(lambda v: plan.mul_gh(plan.mul_g(v)), plan.solve_s, n)

    plan.cond_estimate = cond
    if cond > COND_FAIL:
        raise IllConditionedError(
            f"condition estimate {cond:.3e} exceeds the failure threshold {COND_FAIL:.0e}",
            cond=cond,
        )
    if cond > COND_WARN:
        plan.warning = (
            f"condition estimate {cond:.3e} exceeds {COND_WARN:.0e}; "
            "round trips may lose several digits"
        )
    return plan


def _atom_blocks(config):
    """Per-time-slab atom values on their truncated sample windows.

    Returns (rows, blocks): rows[n] is the integer window where slab n's
    envelope exceeds the cutoff, blocks[n] the (len(window), n_freq)
    matrix of atom values there.  All n_freq atoms of a slab share the
    window because modulation changes phase only.
    """
    w = np.sqrt(_LN_TRUNC / config.alpha)
    tn = time_centers(config)
    wl = freq_centers(config)
    amp = (2.0 * config.alpha / np.pi) ** 0.25
    rows = []
    blocks = []
    for n in range(config.n_time):
        lo = max(0, int(np.ceil(tn[n] - w)))
        hi = min(config.n_total - 1, int(np.floor(tn[n] + w)))
        k = np.arange(lo, hi + 1)
        u = k - tn[n]
        env = amp * np.exp(-config.alpha * u * u)
        blocks.append(env[:, None] * np.exp(1j * np.outer(u, wl)))
        rows.append(k)
    return rows, blocks


def _assemble_sparse_g(config, rows, blocks):
    nw = config.n_freq
    data = np.concatenate([b.ravel() for b in blocks])
    rix = np.concatenate([np.repeat(r, nw) for r in rows])
    cix = np.concatenate(
        [np.tile(np.arange(n * nw, (n + 1) * nw), len(rows[n]))
         for n in range(config.n_time)]
    )
    shape = (config.n_total, config.n_total)
    return sp.csr_matrix((data, (rix, cix)), shape=shape)


def _assemble_s_band(config, rows, blocks):
    """S = G^H G in LAPACK lower-banded storage, built block by block.

    Slabs n and n + d only overlap while d*dt stays under the window
    width, so S is block banded; each nonzero block is one small dense
    product between the overlapping window pieces.
    """
    nw = config.n_freq
    nt = config.n_time
    n_total = config.n_total
    w = np.sqrt(_LN_TRUNC / config.alpha)
    nblock = min(nt - 1, int(np.floor(2.0 * w / config.dt)))
    halfband = nblock * nw + nw - 1
    ab = np.zeros((halfband + 1, n_total), dtype=complex)
    a_idx = np.arange(nw)[:, None]
    b_idx = np.arange(nw)[None, :]
    for n in range(nt):
        for d in range(0, min(nblock, nt - 1 - n) + 1):
            i = n + d  # block row (lower triangle)
            lo = max(rows[i][0], rows[n][0])
            hi = min(rows[i][-1], rows[n][-1])
            if lo > hi:
                continue
            bi = blocks[i][lo - rows[i][0]: hi - rows[i][0] + 1]
            bn = blocks[n][lo - rows[n][0]: hi - rows[n][0] + 1]
            block = bi.conj().T @ bn
            offs = d * nw + a_idx - b_idx
            cols = n * nw + np.broadcast_to(b_idx, (nw, nw))
            if d == 0:
                m = offs >= 0
                ab[offs[m], cols[m]] = block[m]
            else:
                ab[offs, cols] = block
    return ab, halfband


def _cond_power(mul_s, solve_s, n, iters=50):
    """Condition estimate sqrt(lmax(S) * lmax(S^-1)) by power iteration."""
    v0 = 1.0 + np.arange(n) / n
    v0 = v0 / np.linalg.norm(v0)

    def extreme(op):
        v = v0.astype(complex)
        lam = 1.0
        for _ in range(iters):
            w = op(v)
            lam = np.linalg.norm(w)
            if lam == 0:
                return 0.0
            v = w / lam
        return lam

    lmax = extreme(mul_s)
    lmax_inv = extreme(solve_s)
    if lmax_inv == 0:
        return np.inf
    return float(np.sqrt(lmax * lmax_inv))


def forward_pgb(plan, x):
    """Analysis in pgb mode: the localized inner products d = G^H x."""
    xs, was_real = _as_vector(plan, x)
    return CoefficientSet("pgb", plan.mul_gh(xs), plan.config, was_real)


def inverse_pgb(plan, coeffs):
    """Synthesis from pgb coefficients: solve G^H x = d, i.e. x = B d."""
    _check_full(plan, coeffs, "pgb")
    x = plan.solve_gh(np.asarray(coeffs.values, dtype=complex))
    return _finish(x, coeffs.real_input)


def forward_pg(plan, x):
    """Analysis in pg mode: the unique expansion coefficients solving G c = x.

    Equivalently c = S^-1 G^H x; the plan solves the linear system rather
    than forming any inverse.
    """
    xs, was_real = _as_vector(plan, x)
    return CoefficientSet("pg", plan.solve_g(xs), plan.config, was_real)


def inverse_pg(plan, coeffs):
    """Synthesis from pg coefficients: x = G c, the expansion itself."""
    _check_full(plan, coeffs, "pg")
    x = plan.mul_g(np.asarray(coeffs.values, dtype=complex))
    return _finish(x, coeffs.real_input)


def biorthogonal_matrix(plan):
    """The full matrix B = (G^H)^-1 = G S^-1 of biorthogonal columns.

    Computed from the plan's factorization (one multi-column solve), not
    by explicit inversion.  The result is dense N x N; at large N ask for
    single columns through the plan instead.
    """
    return plan.solve_gh(np.eye(plan.config.n_total, dtype=complex))


def _as_vector(plan, x):
    xs = np.asarray(getattr(x, "samples", x))
    if xs.ndim != 1:
        raise InvalidArgumentError(f"expected a 1-D signal, got shape {xs.shape}")
    if xs.size != plan.config.n_total:
        raise ShapeMismatchError(
            f"signal length {xs.size} does not match lattice size {plan.config.n_total}"
        )
    was_real = not np.iscomplexobj(xs)
    return np.ascontiguousarray(xs, dtype=complex), was_real


def _check_full(plan, coeffs, mode):
    if getattr(coeffs, "mode", None) != mode:
        raise ModeError(
            f"expected {mode} coefficients, got {getattr(coeffs, 'mode', None)!r}"
        )
    values = np.asarray(coeffs.values)
    if values.ndim != 1 or values.size != plan.config.n_total:
        raise ShapeMismatchError(
            f"need a full-length coefficient vector of {plan.config.n_total}, "
            f"got shape {values.shape}"
        )
    if coeffs.config is not None and coeffs.config != plan.config:
        raise ShapeMismatchError("coefficients were built on a different lattice")


def _finish(x, was_real):
    if was_real:
        nrm = np.linalg.norm(x)
        if nrm > 0 and np.linalg.norm(x.imag) <= 1e-10 * nrm:
            return Signal1D(x.real.copy())
    return Signal1D(x)
