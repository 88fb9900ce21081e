"""Top-level acceptance checks, one per shipped guarantee.

Each test prints exactly one ``criterion NN: PASS/FAIL`` line with the
measured numbers, then asserts.  Criterion 7 runs against the canonical
512 x 512 benchmark photograph when the environment variable
``PGB_BENCHMARK_IMAGE`` points at its PGM file; otherwise it checks the
ordering properties on the built-in synthetic benchmark image.
"""

import os
import time

import numpy as np
from oracles import (
    gauss_jordan_inverse,
    kron_analysis_matrix,
    kron_synthesis_matrix,
    lattices_up_to,
    lstsq_refit,
    naive_gabor_matrix,
)

from pgb import (
    Image,
    Signal1D,
    build_config,
    build_plan,
    build_plan_2d,
    forward_2d,
    forward_pg,
    forward_pgb,
    inverse_pg,
    inverse_pgb,
    parse_coeffs,
    porat_2d,
    porat_correct,
    read_pgm,
    read_wav,
    reconstruct_sparse,
    serialize_coeffs,
    top_k,
    write_pgm,
    write_wav,
)
from pgb.compression import SparseCoefficients
from pgb.experiments import (
    benchmark_image,
    chirp_error_energies,
    image_error_summary,
    pulse_localization,
    splat_error_table,
)
from pgb.transform import biorthogonal_matrix


def _report(num, ok, detail):
    print(f"criterion {num:02d}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def test_c01_biorthogonality():
    start = time.perf_counter()
    plan = build_plan(build_config(8, 8))
    g = plan.g
    b = biorthogonal_matrix(plan)
    r1 = float(np.abs(b.conj().T @ g - np.eye(64)).max())
    r2 = float(np.abs(g @ b.conj().T - np.eye(64)).max())
    elapsed = time.perf_counter() - start
    ok = r1 < 1e-10 and r2 < 1e-10 and elapsed < 0.1
    assert _report(1, ok,
                   f"residuals {r1:.2e}/{r2:.2e}, {elapsed * 1e3:.1f} ms")


def test_c02_exact_round_trip():
    start = time.perf_counter()
    plan = build_plan(build_config(8, 8))
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(100):
        x = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        nx = np.linalg.norm(x)
        eb = np.linalg.norm(inverse_pgb(plan, forward_pgb(plan, x)).samples - x)
        eg = np.linalg.norm(inverse_pg(plan, forward_pg(plan, x)).samples - x)
        worst = max(worst, eb / nx, eg / nx)
    elapsed = time.perf_counter() - start
    ok = worst < 1e-10 and elapsed < 1.0
    assert _report(2, ok,
                   f"worst relative error {worst:.2e} over 100 signals, "
                   f"{elapsed:.2f} s")


def test_c03_oracle_equivalence_small_lattices():
    rng = np.random.default_rng(3)
    lattices = lattices_up_to(16)
    worst = 0.0
    for nt, nw in lattices:
        n = nt * nw
        plan = build_plan(build_config(nt, nw))
        g_or = naive_gabor_matrix(nt, nw)
        b_or = gauss_jordan_inverse(g_or.conj().T)
        ginv_or = gauss_jordan_inverse(g_or)
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)

        d = forward_pgb(plan, x)
        c = forward_pg(plan, x)
        worst = max(worst, np.abs(d.values - g_or.conj().T @ x).max())
        worst = max(worst, np.abs(c.values - ginv_or @ x).max())
        worst = max(worst, np.abs(inverse_pgb(plan, d).samples
                                  - b_or @ d.values).max())
        worst = max(worst, np.abs(inverse_pg(plan, c).samples
                                  - g_or @ c.values).max())

        k = max(1, n // 2)
        for coeffs, cols in ((d, b_or), (c, g_or)):
            kept = top_k(coeffs, k)
            refined = porat_correct(plan, kept, x)
            want = lstsq_refit(cols[:, kept.indices()], x)
            worst = max(worst, np.abs(refined.values() - want).max())
    ok = worst < 1e-10
    assert _report(3, ok,
                   f"worst oracle deviation {worst:.2e} over "
                   f"{len(lattices)} lattices")


def test_c04_chirp_fit():
    start = time.perf_counter()
    e = chirp_error_energies()
    elapsed = time.perf_counter() - start
    ok = (1.8e-5 / 5 < e["pg"] < 1.8e-5 * 5
          and 0.0347 / 2 < e["gabor"] < 0.0347 * 2
          and elapsed < 5.0)
    assert _report(4, ok,
                   f"pg {e['pg']:.3e} (target 1.8e-05 x/5), "
                   f"gabor {e['gabor']:.4f} (target 0.0347 x/2), "
                   f"{elapsed:.2f} s")


def test_c05_pulse_localization():
    start = time.perf_counter()
    p = pulse_localization(k=25)
    elapsed = time.perf_counter() - start
    ok = (p["pgb"] < 0.10 and p["pg"] > 0.25 and p["ratio"] < 0.35
          and elapsed < 1.0)
    assert _report(5, ok,
                   f"pgb {p['pgb']:.4f} (<0.10), pg {p['pg']:.4f} (>0.25), "
                   f"ratio {p['ratio']:.4f} (<0.35), {elapsed:.2f} s")


def test_c06_refinement_dominance():
    plan = build_plan(build_config(8, 8))
    rng = np.random.default_rng(6)
    worst_gap = -np.inf
    for case in range(50):
        x = rng.standard_normal(64)
        if case % 2:
            x = x + 1j * rng.standard_normal(64)
        k = int(rng.integers(1, 65))
        for fwd in (forward_pgb, forward_pg):
            kept = top_k(fwd(plan, x), k)
            plain = np.linalg.norm(
                x - reconstruct_sparse(plan, kept).samples)
            refined = np.linalg.norm(
                x - reconstruct_sparse(plan, porat_correct(plan, kept, x)).samples)
            worst_gap = max(worst_gap, refined - plain)
    ok = worst_gap <= 1e-12

    # nested sweeps: refined error must fall (or stay) as k grows
    monotone = True
    for seed in range(5):
        x = np.random.default_rng(60 + seed).standard_normal(64)
        for fwd in (forward_pgb, forward_pg):
            coeffs = fwd(plan, x)
            prev = np.inf
            for k in (4, 8, 16, 32, 64):
                refined = porat_correct(plan, top_k(coeffs, k), x)
                err = np.linalg.norm(
                    x - reconstruct_sparse(plan, refined).samples)
                monotone = monotone and err <= prev + 1e-12
                prev = err
    ok = ok and monotone
    assert _report(6, ok,
                   f"worst refined-minus-plain gap {worst_gap:.2e}, "
                   f"nested sweeps monotone: {monotone}")


def test_c07_image_benchmark():
    start = time.perf_counter()
    canonical = os.environ.get("PGB_BENCHMARK_IMAGE")
    if canonical:
        img = read_pgm(canonical)
        summary = image_error_summary(img)
        targets = {"pg": 417.0, "pgb": 327.0, "pg_porat": 279.0,
                   "pgb_porat": 144.0, "dft": 173.0}
        within = all(0.75 * t <= summary[key] <= 1.25 * t
                     for key, t in targets.items())
        source = "canonical image"
    else:
        summary = image_error_summary(benchmark_image())
        within = True
        source = "synthetic image"
    ordered = (summary["pgb"] < summary["pg"]
               and summary["pgb_porat"] < summary["pg_porat"]
               and summary["pgb_porat"] < summary["dft"])
    elapsed = time.perf_counter() - start
    ok = within and ordered and elapsed < 120.0
    assert _report(7, ok,
                   f"{source}: mse pg {summary['pg']:.1f}, "
                   f"pgb {summary['pgb']:.1f}, "
                   f"pg+refit {summary['pg_porat']:.1f}, "
                   f"pgb+refit {summary['pgb_porat']:.1f}, "
                   f"dft {summary['dft']:.1f}; "
                   f"orderings {ordered}, within-band {within}, "
                   f"{elapsed:.1f} s")


def test_c08_audio_ordering():
    start = time.perf_counter()
    rows = splat_error_table()
    by = {(r["k"], r["mode"], r["porat"]): r["l2_error"] for r in rows}
    beats_dft = all(by[(k, "pgb", 0)] < by[(k, "dft", 0)]
                    for k in (200, 500, 1000, 2000))
    refit_helps = all(by[(k, "pgb", 1)] <= by[(k, "pgb", 0)] + 1e-12
                      for k in (200, 500, 1000, 2000))
    elapsed = time.perf_counter() - start
    ok = beats_dft and refit_helps and elapsed < 60.0
    pairs = ", ".join(f"k={k}: {by[(k, 'pgb', 0)]:.3f} vs "
                      f"dft {by[(k, 'dft', 0)]:.3f}"
                      for k in (200, 2000))
    assert _report(8, ok, f"{pairs}; refit dominance {refit_helps}, "
                          f"{elapsed:.1f} s")


def test_c09_2d_separability():
    rng = np.random.default_rng(9)
    plan2d = build_plan_2d(build_config(4, 4), build_config(4, 4))
    g = plan2d.row.g
    analysis = kron_analysis_matrix(g, g)
    ginv = gauss_jordan_inverse(g)
    analysis_pg = np.kron(ginv, ginv)
    worst = 0.0
    for _ in range(5):
        img = Image(16, 16, rng.standard_normal((16, 16)))
        flat = img.pixels.ravel().astype(complex)
        d = forward_2d(plan2d, img, mode="pgb").values
        c = forward_2d(plan2d, img, mode="pg").values
        worst = max(worst, np.abs(d.ravel() - analysis @ flat).max())
        worst = max(worst, np.abs(c.ravel() - analysis_pg @ flat).max())
    forward_ok = worst < 1e-10

    img = Image(16, 16, rng.standard_normal((16, 16)))
    grid = forward_2d(plan2d, img)
    kept = np.sort(np.argsort(-np.abs(grid.values.ravel()), kind="stable")[:32])
    refined = porat_2d(plan2d, kept, img, tol=1e-12, max_iter=2000)
    b = biorthogonal_matrix(plan2d.row)
    cols = kron_synthesis_matrix(b, b)[:, kept]
    want = lstsq_refit(cols, img.pixels.ravel().astype(complex))
    refit_dev = float(np.abs(refined - want).max())
    refit_ok = refit_dev < 1e-6

    ok = forward_ok and refit_ok
    assert _report(9, ok,
                   f"forward deviation {worst:.2e} (<1e-10), "
                   f"refit deviation {refit_dev:.2e} (<1e-6)")


def test_c10_io_round_trips(tmp_path):
    rng = np.random.default_rng(10)

    wav_ok = 0
    for case in range(100):
        n = int(rng.integers(1, 200))
        p = tmp_path / f"w{case}.wav"
        if case % 2:
            x = rng.integers(-32768, 32768, n) / 32768.0
            write_wav(p, Signal1D(x, sample_rate=int(rng.integers(1, 96000))))
        else:
            x = rng.standard_normal(n).astype(np.float32).astype(float)
            write_wav(p, Signal1D(x, sample_rate=8000), encoding="float32")
        wav_ok += int(read_wav(p).samples.tolist() == x.tolist())

    pgm_ok = 0
    for case in range(100):
        rows = int(rng.integers(1, 40))
        cols = int(rng.integers(1, 40))
        img = Image(rows, cols,
                    rng.integers(0, 256, (rows, cols)).astype(float))
        p = tmp_path / f"i{case}.pgm"
        write_pgm(p, img)
        back = read_pgm(p)
        pgm_ok += int(np.array_equal(back.pixels, img.pixels))

    coeff_ok = 0
    for case in range(100):
        mode = ("pgb", "pg", "dft")[case % 3]
        config = config2 = None
        if mode == "dft":
            n = int(rng.integers(1, 300))
        else:
            config = build_config(int(rng.integers(1, 7)),
                                  int(rng.integers(1, 7)))
            n = config.n_total
            if case % 2:
                config2 = build_config(int(rng.integers(1, 7)),
                                       int(rng.integers(1, 7)))
                n *= config2.n_total
        idx = np.flatnonzero(rng.random(n) < 0.3)
        scale = 10.0 ** rng.integers(-200, 200)
        vals = (rng.standard_normal(idx.size)
                + 1j * rng.standard_normal(idx.size)) * scale
        s = SparseCoefficients(
            mode, [(int(i), complex(v)) for i, v in zip(idx, vals)], n,
            config=config, config2=config2, porat=bool(case % 4 == 0))
        p = tmp_path / f"c{case}.pgbc"
        serialize_coeffs(s, p)
        back = parse_coeffs(p)
        coeff_ok += int(back.entries == s.entries and back.mode == mode
                        and back.n_total == n and back.porat == s.porat
                        and back.config == config and back.config2 == config2)

    ok = wav_ok == 100 and pgm_ok == 100 and coeff_ok == 100
    assert _report(10, ok,
                   f"wav {wav_ok}/100, pgm {pgm_ok}/100, "
                   f"coefficient files {coeff_ok}/100")
