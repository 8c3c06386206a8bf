"""One test per acceptance criterion; each prints a PASS/FAIL line.

All arithmetic is exact, so every comparison is equality (tolerance zero).
"""

import json
import subprocess
import sys
import time
from itertools import product

import numpy as np
import pytest

from hopfinv.basechange import h1_flat_bridge, inclusion_instance, run_pipeline
from hopfinv.cli import main
from hopfinv.comodule import (base_change_comodule, cobar_complex, cohomology,
                              group_cohomology_oracle, grouplike_comodule, trivial_comodule,
                              universal_coefficient_check)
from hopfinv.corpus import generate_corpus, sign_entry
from hopfinv.detinv import hilbert_dim, hilbert_dim_exact
from hopfinv.exactlin import GF, QQ, ZZ, IntMatrix, Zmod, smith_normal_form
from hopfinv.glinv import ActionSpec, fft_check, invariant_space
from hopfinv.hopf import BUILTIN_NAMES, base_change_hopf, builtin, mu_n, validate_axioms

SEED = 0
ALGEBRAS = (QQ, GF(2), GF(3), GF(5), Zmod(4), Zmod(6))
FFT_SPECS = [((1, 1, 1, 1, 1), 2), ((2, 2, 1, 1, 1), 2), ((2, 2, 2, 2, 2), 2),
             ((2, 2, 2, 1, 1), 2), ((3, 2, 2, 2, 2), 2), ((2, 2, 2, 2, 2), 3)]


@pytest.fixture(scope="module")
def corpus():
    return generate_corpus(SEED, per_group=20, max_rank=3)


@pytest.fixture
def verdict(capsys):
    def emit(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return emit


def test_criterion_1_cobar_matches_bar_oracle(corpus, verdict):
    t0 = time.perf_counter()
    mismatches = []
    for e in corpus:
        C = cobar_complex(e.comodule(), 3)
        for i in range(3):
            if cohomology(C, i).structure != group_cohomology_oracle(e.table, e.reps, i).structure:
                mismatches.append((e.label, i))
    dt = time.perf_counter() - t0
    groups = {e.group for e in corpus}
    ok = (len(corpus) >= 50 and groups == {"Z2", "Z3", "Z2xZ2"}
          and max(e.rank for e in corpus) <= 3 and not mismatches and dt < 60)
    verdict(1, ok, f"{len(corpus)} representations, {len(mismatches)} mismatches, {dt:.1f}s")


def test_criterion_2_universal_coefficients(corpus, verdict):
    t0 = time.perf_counter()
    failures = []
    for e in corpus:
        M = e.comodule()
        for S in ALGEBRAS:
            try:
                universal_coefficient_check(M, S)
            except Exception as exc:  # any failure counts
                failures.append((e.label, str(S), repr(exc)))
    rep = universal_coefficient_check(sign_entry().comodule(), GF(2))
    sign_ok = (rep.invariants_tensored.dimension == 0 and rep.tensored_invariants.dimension == 1
               and rep.tor.dimension == 1 and rep.h1.torsion == (2,) and rep.rho.injective)
    dt = time.perf_counter() - t0
    ok = not failures and sign_ok and dt < 120
    verdict(2, ok, f"{len(corpus) * len(ALGEBRAS)} checks, {len(failures)} failures, "
                   f"sign over F2: {rep.to_json()['sequence']}, {dt:.1f}s")


def test_criterion_3_theorem_pipeline(corpus, verdict, tmp_path, capsys):
    t0 = time.perf_counter()
    bad = []
    codes = []
    for k, e in enumerate(corpus):
        rep = run_pipeline(inclusion_instance(e.comodule()))
        if rep.hypothesis_holds and not rep.conclusion_holds:
            bad.append(e.label)
        path = tmp_path / f"inst{k}.json"
        path.write_text(json.dumps({"comodule": e.comodule().to_json()}))
        codes.append(main(["theorem1", "--instance", str(path), "--out", str(tmp_path / "r.json")]))
    capsys.readouterr()
    neg = run_pipeline(inclusion_instance(sign_entry().comodule()))
    f2 = next(c for c in neg.conclusions if c.scalar == GF(2))
    dt = time.perf_counter() - t0
    ok = (not bad and 2 not in codes and set(codes) <= {0, 1} and neg.failing_primes == [2]
          and not f2.bijective and dt < 120)
    verdict(3, ok, f"exit codes {sorted(set(codes))}, inconsistent {len(bad)}, "
                   f"sign instance fails at {neg.failing_primes}, {dt:.1f}s")


def test_criterion_4_h1_flatness_bridge(corpus, verdict):
    disagree = []
    for e in corpus:
        M = e.comodule()
        primes = run_pipeline(inclusion_instance(M)).bad_primes.primes
        flat, surj = h1_flat_bridge(M, primes)
        if flat != surj:
            disagree.append(e.label)
    verdict(4, not disagree, f"{len(corpus)} instances, {len(disagree)} disagreements")


def test_criterion_5_hilbert_functions(verdict):
    t0 = time.perf_counter()
    mismatches = []
    count = 0
    for g in range(1, 10):
        for f in range(1, 9 // g + 1):
            for v in range(3):
                for d in range(5):
                    count += 1
                    a, b = hilbert_dim((g, f), v, d, SEED), hilbert_dim_exact((g, f), v, d)
                    if a != b:
                        mismatches.append(((g, f), v, d, a, b))
    dims = [hilbert_dim((2, 2), 1, d, SEED) for d in range(4)]
    dt = time.perf_counter() - t0
    ok = not mismatches and dims == [1, 4, 9, 16] and dt < 120
    verdict(5, ok, f"{count} (shape, v, d) cases, {len(mismatches)} mismatches, "
                   f"2x2 rank<=1 dims {dims}, {dt:.1f}s")


def test_criterion_6_first_fundamental_theorem(verdict):
    t0 = time.perf_counter()
    lines = []
    ok = True
    for spec, dmax in FFT_SPECS:
        rep = fft_check(ActionSpec(*spec), dmax, SEED)
        ys, invs = rep.dims()
        ok &= rep.overall and ys == invs
        ok &= all(r.injective and r.image_invariant for r in rep.per_degree)
        lines.append(f"{spec} d<={dmax}: {ys} {'PASS' if rep.overall else 'FAIL'}")
        if spec == (2, 2, 2, 2, 2) and dmax == 2:
            ok &= ys == [1, 4, 10]
        if spec == (2, 2, 1, 1, 1):
            ok &= ys == [1, 4, 9]
    dt = time.perf_counter() - t0
    ok &= dt < 600
    verdict(6, ok, "; ".join(lines) + f"; {dt:.1f}s")


def _det(M: IntMatrix) -> int:
    from sympy import Matrix
    return int(Matrix(M.to_dense()).det())


def test_criterion_7_structural_invariants(corpus, verdict):
    rng = np.random.default_rng(SEED)
    snf_bad = 0
    for _ in range(1000):
        r, c = (int(x) for x in rng.integers(1, 7, size=2))
        A = IntMatrix.from_dense(rng.integers(-50, 51, size=(r, c)).tolist(), r, c)
        S = smith_normal_form(A)
        d = [x for x in S.diagonal if x]
        good = (S.U @ A @ S.V == S.D and abs(_det(S.U)) == 1 and abs(_det(S.V)) == 1
                and all(i == j for i, j, _ in S.D.entries) and all(x > 0 for x in d)
                and all(b % a == 0 for a, b in zip(d, d[1:])))
        snf_bad += not good

    complexes = [cobar_complex(e.comodule(), 3) for e in corpus]
    complexes += [cobar_complex(grouplike_comodule(mu_n(n), k), 3) for n in (2, 3, 4) for k in range(n)]
    complexes += [cobar_complex(trivial_comodule(builtin(name)), 3)
                  for name in ("const_Z2", "const_Z3", "const_Z4", "const_Z2xZ2", "const_S3")]
    complexes += [cobar_complex(base_change_comodule(sign_entry().comodule(), S), 3)
                  for S in (GF(2), GF(3), Zmod(4))]
    dd_bad = 0
    for C in complexes:
        n = C.comodule.scalar.modulus
        for k in range(C.n_max - 1):
            dd_bad += not (C.differential(k + 1) @ C.differential(k)).mod(n).is_zero()

    hopf_bad = []
    for name in BUILTIN_NAMES:
        H = builtin(name)
        for S in ((ZZ,) + ALGEBRAS if H.scalar == ZZ else (H.scalar,)):
            HS = H if S == H.scalar else base_change_hopf(H, S)
            if not validate_axioms(HS).passed:
                hopf_bad.append((name, str(S)))

    offdiag_bad = []
    for spec, _ in FFT_SPECS:
        A = ActionSpec(*spec)
        for d1, d2 in product(range(4), repeat=2):
            if d1 != d2 and invariant_space(A, (d1, d2)).dimension:
                offdiag_bad.append((spec, d1, d2))

    ok = not (snf_bad or dd_bad or hopf_bad or offdiag_bad)
    verdict(7, ok, f"SNF failures {snf_bad}/1000, dd!=0 in {dd_bad}/{len(complexes)} complexes, "
                   f"Hopf axiom failures {len(hopf_bad)}, off-diagonal invariants {len(offdiag_bad)}")


CLI_RUNS = [
    ["hopf-check", "--hopf", "const_Z2xZ2", "--scalar", "z,q,f2,z6"],
    ["cobar", "--comodule", "{sign}"],
    ["ucs-check", "--comodule", "{sign}", "--scalar", "q,f2,f3,f5,z4,z6"],
    ["theorem1", "--instance", "{instance}"],
    ["hilbert", "--shape", "3x3", "--rank", "1", "--degree", "3"],
    ["fft-check", "--m", "2", "--n", "2", "--r", "2", "--s", "1", "--t", "1", "--dmax", "2"],
]


def _cli_reports(tmp_path, tag: str, subprocess_run: bool, jobs: int) -> list[bytes]:
    sign = tmp_path / "sign.json"
    sign.write_text(json.dumps(sign_entry().comodule().to_json()))
    inst = tmp_path / "instance.json"
    inst.write_text(json.dumps({"comodule": sign_entry().comodule().to_json()}))
    outs = []
    for k, argv in enumerate(CLI_RUNS):
        argv = [a.format(sign=sign, instance=inst) for a in argv]
        out = tmp_path / f"{tag}{k}.json"
        argv = argv + ["--seed", str(SEED), "--jobs", str(jobs), "--out", str(out)]
        if subprocess_run:
            subprocess.run([sys.executable, "-m", "hopfinv.cli", *argv], check=False,
                           capture_output=True)
        else:
            main(argv)
        outs.append(out.read_bytes())
    return outs


def test_criterion_8_determinism(tmp_path, verdict, capsys):
    first = _cli_reports(tmp_path, "a", subprocess_run=False, jobs=1)
    second = _cli_reports(tmp_path, "b", subprocess_run=True, jobs=2)
    capsys.readouterr()
    same = [a == b for a, b in zip(first, second)]
    ok = all(same) and len(first) == len(CLI_RUNS)
    verdict(8, ok, f"{sum(same)}/{len(same)} reports byte-identical across an in-process run "
                   f"and a fresh-process run with --jobs 2")
