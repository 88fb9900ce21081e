"""Command-line front end: compress, reconstruct, compare, analyze, selftest.

Every command is deterministic given its arguments.  Standard output
carries only data rows (CSV or the selftest table); diagnostics go to
standard error.  Exit codes: 0 success, 1 selftest failure, 2 I/O or
parse error, 3 ill-conditioned or non-convergent solve, 4 invalid
argument or shape mismatch.

Inputs are picked by extension: .wav and .csv are 1-D signals, .pgm is
an image.  The pseudo-path ``splat:N`` generates the built-in percussive
test signal of length N (seeded by --seed) so the audio experiments need
no external recording.  Coefficient files for ``reconstruct`` may use
any extension; they are parsed by content.
"""

import argparse
import sys
from dataclasses import dataclass, field

import numpy as np

from .compression import (
    compute_metrics,
    dft_reconstruct,
    dft_topk,
    error_vs_k_sweep,
    porat_correct,
    reconstruct_sparse,
    sweep_csv,
    top_k,
)
from .errors import (
    ConvergenceError,
    IllConditionedError,
    InvalidArgumentError,
    ModeError,
    ParseError,
    ShapeMismatchError,
)
from .image2d import (
    build_plan_2d,
    compress_2d,
    dft_topk_2d,
    forward_2d,
    reconstruct_sparse_2d,
)
from .lattice import build_config, build_gabor_matrix
from .signalio import (
    Signal1D,
    parse_coeffs,
    read_pgm,
    read_signal_csv,
    read_wav,
    serialize_coeffs,
    synthetic_splat,
    write_pgm,
    write_signal_csv,
    write_wav,
)
from .transform import build_plan, forward_pg, forward_pgb

_MODES = ("pgb", "pg", "dft")


@dataclass
class RunConfig:
    """One command invocation: paths, lattice shape, and knobs."""

    command: str
    in_path: str = None
    out_path: str = None
    nt: int = None
    nw: int = None
    nt2: int = None
    nw2: int = None
    mode: str = "pgb"
    k: int = None
    k_list: tuple = field(default_factory=tuple)
    porat: bool = False
    seed: int = 1
    ref: str = None
    tol: float = 1e-6


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.command == "selftest":
        return run_selftest(corrupt_g=args.corrupt_g)
    rc = RunConfig(
        command=args.command,
        in_path=getattr(args, "in_path", None),
        out_path=getattr(args, "out_path", None),
        nt=getattr(args, "nt", None),
        nw=getattr(args, "nw", None),
        nt2=getattr(args, "nt2", None),
        nw2=getattr(args, "nw2", None),
        mode=getattr(args, "mode", "pgb"),
        k=getattr(args, "k", None),
        k_list=tuple(getattr(args, "k_list", None) or ()),
        porat=getattr(args, "porat", False),
        seed=getattr(args, "seed", 1),
        ref=getattr(args, "ref", None),
        tol=getattr(args, "tol", 1e-6),
    )
    handler = {"compress": cmd_compress, "reconstruct": cmd_reconstruct,
               "compare": cmd_compare, "analyze": cmd_analyze}[rc.command]
    try:
        return handler(rc)
    except ParseError as exc:
        return _fail(2, str(exc))
    except OSError as exc:
        return _fail(2, str(exc))
    except (IllConditionedError, ConvergenceError) as exc:
        return _fail(3, str(exc))
    except (InvalidArgumentError, ModeError) as exc:
        return _fail(4, str(exc))


def _fail(code, message):
    print(f"pgb: {message}", file=sys.stderr)
    return code


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="pgb",
        description="Lattice transform coding for 1-D signals and images.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, k=False, k_list=False, out_required=False):
        p.add_argument("--in", dest="in_path", required=True,
                       help="input file (.wav/.csv/.pgm) or splat:N")
        p.add_argument("--out", dest="out_path", required=out_required,
                       help="output file")
        p.add_argument("--nt", type=int, help="time cells (rows for images)")
        p.add_argument("--nw", type=int, help="frequency cells per time cell")
        p.add_argument("--nt2", type=int,
                       help="time cells along image columns (default --nt)")
        p.add_argument("--nw2", type=int,
                       help="frequency cells along image columns (default --nw)")
        p.add_argument("--mode", default="pgb", help="pgb, pg, or dft")
        if k:
            p.add_argument("--k", type=int, help="coefficients to keep")
        if k_list:
            p.add_argument("--k-list", dest="k_list", type=_int_list,
                           help="comma-separated k values")
        p.add_argument("--porat", action="store_true",
                       help="least-squares refit of the kept values")
        p.add_argument("--seed", type=int, default=1,
                       help="seed for splat:N inputs")
        p.add_argument("--ref", help="reference input for metrics")
        p.add_argument("--tol", type=float, default=1e-6,
                       help="relative tolerance of the 2-D refinement")

    p = sub.add_parser("compress", help="top-k transform coding to a "
                       "coefficient file; prints k,energy_fraction,l2,mse,psnr")
    common(p, k=True, out_required=True)

    p = sub.add_parser("reconstruct", help="synthesize a coefficient file; "
                       "prints l2,mse,psnr when --ref is given")
    p.add_argument("--in", dest="in_path", required=True,
                   help="coefficient file")
    p.add_argument("--out", dest="out_path", required=True,
                   help="output file (.wav/.csv for 1-D, .pgm for images)")
    p.add_argument("--ref", help="reference input for metrics and WAV rate")

    p = sub.add_parser("compare", help="error-vs-k CSV over pgb, pg, and dft")
    common(p, k_list=True)

    p = sub.add_parser("analyze", help="dump the dense coefficient-magnitude "
                       "grid as CSV")
    common(p)

    p = sub.add_parser("selftest", help="run the built-in checks; exit 0 "
                       "iff all pass")
    p.add_argument("--corrupt-g", dest="corrupt_g", action="store_true",
                   help=argparse.SUPPRESS)
    return parser


def _int_list(text):
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k list {text!r}") from None


# ---------------------------------------------------------------------------
# Input plumbing

def _load_input(rc):
    """Load --in as ("1d", Signal1D) or ("2d", Image)."""
    path = rc.in_path
    if path.startswith("splat:"):
        try:
            n = int(path.split(":", 1)[1])
        except ValueError:
            raise InvalidArgumentError(
                f"bad generator spec {path!r}, expected splat:N") from None
        return "1d", synthetic_splat(n, rc.seed)
    lower = path.lower()
    if lower.endswith(".wav"):
        return "1d", read_wav(path)
    if lower.endswith(".csv"):
        return "1d", read_signal_csv(path)
    if lower.endswith(".pgm"):
        return "2d", read_pgm(path)
    raise InvalidArgumentError(
        f"unrecognized input extension on {path!r} (need .wav, .csv, or .pgm)")


def _lattice(nt, nw, expected, what):
    if nt is None or nw is None:
        raise InvalidArgumentError(f"{what} must be given for lattice modes")
    config = build_config(nt, nw)
    if config.n_total != expected:
        raise ShapeMismatchError(
            f"lattice {nt} x {nw} covers {config.n_total} samples, "
            f"input axis has {expected}")
    return config


def _check_mode(mode):
    if mode not in _MODES:
        raise ModeError(f"unknown --mode {mode!r} (need pgb, pg, or dft)")


def _plans_2d(rc, img):
    row_cfg = _lattice(rc.nt, rc.nw, img.rows, "--nt/--nw")
    nt2 = rc.nt2 if rc.nt2 is not None else rc.nt
    nw2 = rc.nw2 if rc.nw2 is not None else rc.nw
    col_cfg = _lattice(nt2, nw2, img.cols, "--nt2/--nw2")
    return build_plan_2d(row_cfg, col_cfg)


def _metrics_row(metrics):
    return (f"{metrics.l2_error:.9g},{metrics.mse:.9g},{metrics.psnr:.9g}")


def _energy_fraction(kept_values, full_values):
    total = float(np.sum(np.abs(full_values) ** 2))
    if total == 0.0:
        return 1.0
    return float(np.sum(np.abs(np.asarray(kept_values)) ** 2)) / total


# ---------------------------------------------------------------------------
# Commands

def cmd_compress(rc):
    """Top-k (optionally refined) coding; writes PGBC1, prints one CSV row."""
    _check_mode(rc.mode)
    if rc.k is None:
        raise InvalidArgumentError("--k is required for compress")
    kind, data = _load_input(rc)

    if kind == "1d":
        x = data.samples
        if rc.mode == "dft":
            if rc.porat:
                raise ModeError("refinement applies to lattice modes, not dft")
            sparse, rec = dft_topk(x, rc.k)
            frac = _energy_fraction(sparse.values(),
                                    np.fft.fft(x, norm="ortho"))
            metrics = compute_metrics(x, rec.samples)
        else:
            config = _lattice(rc.nt, rc.nw, x.size, "--nt/--nw")
            plan = build_plan(config)
            coeffs = forward_pgb(plan, x) if rc.mode == "pgb" else forward_pg(plan, x)
            sparse = top_k(coeffs, rc.k)
            frac = _energy_fraction(sparse.values(), coeffs.values)
            if rc.porat:
                sparse = porat_correct(plan, sparse, x)
            rec = reconstruct_sparse(plan, sparse)
            metrics = compute_metrics(x, rec.samples)
    else:
        img = data
        if rc.mode == "dft":
            if rc.porat:
                raise ModeError("refinement applies to lattice modes, not dft")
            sparse, rec = dft_topk_2d(img, rc.k)
            frac = _energy_fraction(sparse.values(),
                                    np.fft.fft2(img.pixels, norm="ortho"))
            metrics = compute_metrics(img.pixels, rec.pixels)
        else:
            plan2d = _plans_2d(rc, img)
            sparse, rec, metrics = compress_2d(
                plan2d, img, rc.k, mode=rc.mode, porat=rc.porat, tol=rc.tol)
            full = forward_2d(plan2d, img, rc.mode).values
            plain = top_k_values(full, rc.k)
            frac = _energy_fraction(plain, full)

    serialize_coeffs(sparse, rc.out_path)
    print(f"{rc.k},{frac:.9g},{_metrics_row(metrics)}")
    return 0


def top_k_values(grid, k):
    """The k largest-magnitude entries of a dense array (selection only)."""
    flat = np.asarray(grid).ravel()
    order = np.argsort(-np.abs(flat), kind="stable")
    return flat[np.sort(order[:k])]


def cmd_reconstruct(rc):
    """Synthesize a coefficient file back into a signal or image file."""
    sparse = parse_coeffs(rc.in_path)
    out = rc.out_path.lower()

    if sparse.config2 is not None:
        plan2d = build_plan_2d(sparse.config, sparse.config2)
        img = reconstruct_sparse_2d(plan2d, sparse)
        if not out.endswith(".pgm"):
            raise InvalidArgumentError(
                f"2-D coefficient files reconstruct to .pgm, not {rc.out_path!r}")
        write_pgm(rc.out_path, img)
        if rc.ref:
            ref = read_pgm(rc.ref)
            print(_metrics_row(compute_metrics(ref.pixels, img.pixels)))
        return 0

    if sparse.mode == "dft":
        rec = dft_reconstruct(sparse)
    else:
        plan = build_plan(sparse.config)
        rec = reconstruct_sparse(plan, sparse)

    ref = None
    if rc.ref:
        _, ref = _load_input(RunConfig(command=rc.command, in_path=rc.ref,
                                       seed=rc.seed))
    if out.endswith(".wav"):
        rate = getattr(ref, "sample_rate", None)
        write_wav(rc.out_path, Signal1D(rec.samples.real, sample_rate=rate))
    elif out.endswith(".csv"):
        write_signal_csv(rc.out_path, rec)
    else:
        raise InvalidArgumentError(
            f"1-D coefficient files reconstruct to .wav or .csv, "
            f"not {rc.out_path!r}")
    if ref is not None:
        print(_metrics_row(compute_metrics(ref.samples, rec.samples)))
    return 0


def cmd_compare(rc):
    """Error-vs-k sweep CSV over pgb, pg, and dft (plus refined rows)."""
    if not rc.k_list:
        raise InvalidArgumentError("--k-list must contain at least one k")
    kind, data = _load_input(rc)
    if kind == "1d":
        config = _lattice(rc.nt, rc.nw, len(data), "--nt/--nw")
        plan = build_plan(config)
        rows = error_vs_k_sweep(plan, data, rc.k_list, porat=rc.porat)
    else:
        rows = _sweep_2d(rc, data)
    text = sweep_csv(rows)
    if rc.out_path:
        with open(rc.out_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _sweep_2d(rc, img):
    plan2d = _plans_2d(rc, img)
    total = img.rows * img.cols
    for k in rc.k_list:
        if not 0 <= k <= total:
            raise InvalidArgumentError(f"k={k} outside [0, {total}]")
    rows = []

    def add(k, mode, porat_flag, metrics):
        rows.append({"k": int(k), "mode": mode, "porat": int(porat_flag),
                     "l2_error": metrics.l2_error, "mse": metrics.mse,
                     "psnr": metrics.psnr})

    for k in rc.k_list:
        for mode in ("pgb", "pg"):
            _, _, metrics = compress_2d(plan2d, img, k, mode=mode)
            add(k, mode, 0, metrics)
            if rc.porat:
                _, _, metrics = compress_2d(plan2d, img, k, mode=mode,
                                            porat=True, tol=rc.tol)
                add(k, mode, 1, metrics)
        _, rec = dft_topk_2d(img, k)
        add(k, "dft", 0, compute_metrics(img.pixels, rec.pixels))
    return rows


def cmd_analyze(rc):
    """Dump the dense coefficient-magnitude grid as CSV rows."""
    _check_mode(rc.mode)
    kind, data = _load_input(rc)
    if kind == "1d":
        x = data.samples
        if rc.mode == "dft":
            grid = np.abs(np.fft.fft(x, norm="ortho"))[None, :]
        else:
            config = _lattice(rc.nt, rc.nw, x.size, "--nt/--nw")
            plan = build_plan(config)
            coeffs = forward_pgb(plan, x) if rc.mode == "pgb" else forward_pg(plan, x)
            grid = np.abs(coeffs.values).reshape(config.n_time, config.n_freq)
    else:
        if rc.mode == "dft":
            grid = np.abs(np.fft.fft2(data.pixels, norm="ortho"))
        else:
            plan2d = _plans_2d(rc, data)
            grid = np.abs(forward_2d(plan2d, data, rc.mode).values)
    lines = [",".join(f"{v:.9g}" for v in row) for row in grid]
    text = "\n".join(lines) + "\n"
    if rc.out_path:
        with open(rc.out_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# Selftest

def run_selftest(corrupt_g=False):
    """Run the built-in check table; return 0 iff every check passes.

    Covers the construction oracles at N <= 64, the exact-inversion
    invariants, refinement dominance, the energy identity, and the three
    built-in regressions (chirp fit, pulse coding, percussive-signal
    error ordering).  ``corrupt_g`` is a test hook that perturbs one atom
    before the biorthogonality check, which must then fail.
    """
    checks = []

    def check(name, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        checks.append(ok)
        print(f"{name:<34s} {'pass' if ok else 'FAIL':<4s}  {detail}")

    check("lattice atoms vs direct formula", _st_lattice)
    check("interpolation kernel vs mode sum", _st_kernel)
    check("biorthogonality (8,8)", lambda: _st_biorthogonality(corrupt_g))
    check("round trips pgb/pg", _st_round_trip)
    check("refinement dominance", _st_porat)
    check("energy identity", _st_energy)
    check("chirp regression", _st_chirp)
    check("pulse regression", _st_pulse)
    check("percussive ordering", _st_splat)
    print(f"{'selftest':<34s} {'pass' if all(checks) else 'FAIL'}")
    return 0 if all(checks) else 1


def _st_lattice():
    from .lattice import gaussian_sample
    worst = 0.0
    for nt, nw in ((2, 3), (4, 4), (8, 8), (3, 5)):
        config = build_config(nt, nw)
        g = build_gabor_matrix(config)
        for j in (0, 1, config.n_total // 2, config.n_total - 1):
            n, l = (j // nw) + 1, (j % nw) + 1
            for k in range(config.n_total):
                worst = max(worst, abs(g[k, j] - gaussian_sample(config, (n, l), k)))
    return worst < 1e-13, f"max atom deviation {worst:.2e}"


def _st_kernel():
    from .kernel import dirichlet_eval
    worst = 0.0
    for n in (5, 8, 12, 63, 64):
        t = np.linspace(-1.5 * n, 1.5 * n, 101)
        if n % 2:
            m = np.arange(-(n // 2), n // 2 + 1)
        else:
            m = np.arange(-(n // 2), n // 2)
        ref = np.exp(2j * np.pi * np.outer(t, m) / n).sum(axis=1) / n
        worst = max(worst, np.abs(dirichlet_eval(n, t) - ref).max())
    return worst < 1e-10, f"max kernel deviation {worst:.2e}"


def _st_biorthogonality(corrupt_g):
    from .transform import biorthogonal_matrix
    plan = build_plan(build_config(8, 8))
    g = plan.g.copy()
    if corrupt_g:
        g[0, 0] += 0.01
    b = biorthogonal_matrix(plan)
    r1 = np.abs(b.conj().T @ g - np.eye(64)).max()
    r2 = np.abs(g @ b.conj().T - np.eye(64)).max()
    worst = max(r1, r2)
    return worst < 1e-10, f"max biorthogonality residual {worst:.2e}"


def _st_round_trip():
    from .transform import forward_pg as fpg, forward_pgb as fpgb
    from .transform import inverse_pg, inverse_pgb
    rng = np.random.default_rng(11)
    worst = 0.0
    for nt, nw in ((8, 8), (4, 4)):
        plan = build_plan(build_config(nt, nw))
        n = plan.config.n_total
        for _ in range(5):
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            nx = np.linalg.norm(x)
            e1 = np.linalg.norm(inverse_pgb(plan, fpgb(plan, x)).samples - x)
            e2 = np.linalg.norm(inverse_pg(plan, fpg(plan, x)).samples - x)
            worst = max(worst, e1 / nx, e2 / nx)
    return worst < 1e-10, f"max relative round-trip error {worst:.2e}"


def _st_porat():
    rng = np.random.default_rng(5)
    plan = build_plan(build_config(8, 8))
    x = rng.standard_normal(64)
    ok = True
    worst = 0.0
    for mode, fwd in (("pgb", forward_pgb), ("pg", forward_pg)):
        sparse = top_k(fwd(plan, x), 20)
        plain = np.linalg.norm(x - reconstruct_sparse(plan, sparse).samples)
        refined = porat_correct(plan, sparse, x)
        corrected = np.linalg.norm(
            x - reconstruct_sparse(plan, refined).samples)
        ok = ok and corrected <= plain + 1e-12
        worst = max(worst, corrected - plain)
    return ok, f"max refined-minus-plain error {worst:.2e}"


def _st_energy():
    rng = np.random.default_rng(6)
    plan = build_plan(build_config(8, 8))
    x = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    d = forward_pgb(plan, x).values
    c = forward_pg(plan, x).values
    resid = abs(np.vdot(c, d).real - np.linalg.norm(x) ** 2)
    resid /= np.linalg.norm(x) ** 2
    return resid < 1e-10, f"relative energy mismatch {resid:.2e}"


def _st_chirp():
    from .experiments import chirp_error_energies
    e = chirp_error_energies()
    ok = (1.8e-5 / 5 < e["pg"] < 1.8e-5 * 5) and (0.0347 / 2 < e["gabor"] < 0.0347 * 2)
    return ok, f"pg {e['pg']:.3e}, gabor {e['gabor']:.3e}"


def _st_pulse():
    from .experiments import pulse_localization
    p = pulse_localization()
    ok = p["pgb"] < 0.10 and p["pg"] > 0.25 and p["ratio"] < 0.35
    return ok, f"pgb {p['pgb']:.4f}, pg {p['pg']:.4f}, ratio {p['ratio']:.4f}"


def _st_splat():
    from .experiments import splat_error_table
    rows = splat_error_table()
    by_key = {(r["k"], r["mode"], r["porat"]): r["l2_error"] for r in rows}
    ok = True
    for k in (200, 500, 1000, 2000):
        ok = ok and by_key[(k, "pgb", 0)] < by_key[(k, "dft", 0)]
        ok = ok and by_key[(k, "pgb", 1)] <= by_key[(k, "pgb", 0)] + 1e-12
    detail = ", ".join(
        f"k={k}: {by_key[(k, 'pgb', 0)]:.3f}<{by_key[(k, 'dft', 0)]:.3f}"
        for k in (200, 2000))
    return ok, detail


if __name__ == "__main__":
    sys.exit(main())
