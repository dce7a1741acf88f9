"""The twelve acceptance criteria, each at its stated tolerance and runtime budget.

Every test prints one ``[criterion N] PASS|FAIL`` line (visible with ``pytest -v``) before asserting.
"""

import cmath
import math
import time

import numpy as np
import pytest
from scipy.linalg import expm
from scipy.stats import unitary_group

from braidjones.braid import BraidWord, ClosureSpec, ConjugateBy, Stabilize, TangleWord, markov_move, parse_braid
from braidjones.compiler import QuantumCircuit, compile_circuit, verify_compiled
from braidjones.invariants import (
    jones_closure,
    jones_generalized_closure,
    jones_plat,
    normalized_trace,
    plat_conjugated_braid,
)
from braidjones.kauffman import kauffman_oracle
from braidjones.rep import apply_tangle, cupcap_image, generator_unitary, irrep_block
from braidjones.sampler import auto_sample_count, estimate_homflypt, estimate_jones_closure, verify_register_encoding
from braidjones.young import MarkovWeightTable, RootParams, enumerate_diagrams, quantum_integer
from conftest import random_braid

ROOT_SET = [(2, 5), (2, 7), (2, 8), (3, 7), (4, 9)]
TREFOIL = parse_braid("n:4; word: 2 -3 2")


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n:2d}] {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def test_criterion_01_quantum_integers(report):
    t0 = time.perf_counter()
    worst = 0.0
    for l in range(2, 21):
        q = cmath.exp(2j * math.pi / l)
        for k in range(1, l):
            power_sum = sum(q ** (-(k - 1) / 2 + j) for j in range(k))
            worst = max(worst, abs(quantum_integer(k, l) - power_sum))
    dt = time.perf_counter() - t0
    report(1, worst <= 1e-12 and dt < 1, f"max |[k] - power sum| = {worst:.2e}, {dt:.2f} s")


def test_criterion_02_weight_sums(report):
    t0 = time.perf_counter()
    worst = max(abs(MarkovWeightTable(n, RootParams(k, l)).total - 1)
                for k, l in ROOT_SET for n in range(13))
    dt = time.perf_counter() - t0
    report(2, worst <= 1e-10 and dt < 10, f"max |sum s d - 1| = {worst:.2e}, {dt:.2f} s")


def _blocks_within(params, dim_max=200, n_cap=40):
    """Every block with dim <= dim_max; stops once two consecutive layers have none."""
    empty = 0
    for n in range(2, n_cap + 1):
        found = [irrep_block(lam, params) for lam in enumerate_diagrams(n, params)]
        found = [b for b in found if b.dim <= dim_max]
        yield from found
        empty = 0 if found else empty + 1
        if empty == 2:
            return


def test_criterion_03_relations(report):
    t0 = time.perf_counter()
    worst, count = 0.0, 0
    for k, l in ROOT_SET:
        p = RootParams(k, l)
        for block in _blocks_within(p):
            count += 1
            n, eye = block.n, np.eye(block.dim)
            g = {i: generator_unitary(i, 1, block) for i in range(1, n)}
            errs = []
            for i in range(1, n):
                errs.append(np.abs(g[i].conj().T @ g[i] - eye).max())
                errs.append(np.abs(g[i] @ g[i] - ((p.q - 1) * g[i] + p.q * eye)).max())
            for i in range(1, n - 1):
                errs.append(np.abs(g[i] @ g[i + 1] @ g[i] - g[i + 1] @ g[i] @ g[i + 1]).max())
            for i in range(1, n):
                for j in range(i + 2, n):
                    errs.append(np.abs(g[i] @ g[j] - g[j] @ g[i]).max())
            if k == 2:
                E = {i: cupcap_image(i, block) for i in range(1, n)}
                for i in range(1, n):
                    errs.append(np.abs(E[i] @ E[i] - p.q2 * E[i]).max())
                    if i + 1 < n:
                        errs.append(np.abs(E[i] @ E[i + 1] @ E[i] - E[i]).max())
                        errs.append(np.abs(E[i + 1] @ E[i] @ E[i + 1] - E[i + 1]).max())
                    for j in range(i + 2, n):
                        errs.append(np.abs(E[i] @ E[j] - E[j] @ E[i]).max())
            worst = max([worst] + errs)
    dt = time.perf_counter() - t0
    report(3, worst <= 1e-10 and dt < 60, f"{count} blocks, max residual {worst:.2e}, {dt:.1f} s")


def test_criterion_04_dimensions(report):
    t0 = time.perf_counter()
    got = {
        "d[2,2] l=5": irrep_block((2, 2), RootParams(2, 5)).dim,
        "d[4,4] l=5": irrep_block((4, 4), RootParams(2, 5)).dim,
        **{f"d[4,4] l={l}": irrep_block((4, 4), RootParams(2, l)).dim for l in (7, 8, 9, 10, 12, 20)},
    }
    want = {"d[2,2] l=5": 2, "d[4,4] l=5": 13, **{f"d[4,4] l={l}": 14 for l in (7, 8, 9, 10, 12, 20)}}
    dt = time.perf_counter() - t0
    report(4, got == want and dt < 1, f"{got}, {dt:.2f} s")


def test_criterion_05_markov_invariance(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2005)
    worst = 0.0
    for _ in range(200):
        k = int(rng.integers(2, 5))
        l = int(rng.integers(k + 1, 11))
        p = RootParams(k, l)
        n = int(rng.integers(2, 6))
        b = random_braid(rng, n, int(rng.integers(0, 9)))
        if rng.random() < 0.5:
            moved = markov_move(b, ConjugateBy(random_braid(rng, n, int(rng.integers(1, 3)))))
        else:
            moved = markov_move(b, Stabilize(int(rng.choice([-1, 1]))))
        assert moved.strands <= 6 and moved.length <= 12
        a, c = normalized_trace(b, p), normalized_trace(moved, p)
        worst = max(worst, abs(a - c) / max(1.0, abs(a)))
    dt = time.perf_counter() - t0
    report(5, worst <= 1e-9 and dt < 60, f"200 cases, max relative deviation {worst:.2e}, {dt:.1f} s")


def _oracle_corpus():
    rng = np.random.default_rng(2006)
    out = [TREFOIL, BraidWord(2, ((1, 1),) * 3), BraidWord(2, ((1, 1),) * 2), BraidWord.identity(3)]
    for _ in range(30):
        n = int(rng.integers(2, 6))
        out.append(random_braid(rng, n, int(rng.integers(0, 11))))
    return out


def _closure_specs(n):
    specs = [ClosureSpec.trace(n)]
    if n % 2 == 0:
        specs.append(ClosureSpec.plat(n))
    specs += [ClosureSpec.generalized(p, n - 2 * p) for p in range(1, n // 2 + 1)]
    return specs


def test_criterion_06_oracle_equivalence(report):
    t0 = time.perf_counter()
    worst, cases = 0.0, 0
    for l in (5, 7, 8):
        p = RootParams(2, l)
        for b in _oracle_corpus():
            for spec in _closure_specs(b.strands):
                cases += 1
                worst = max(worst, abs(abs(jones_closure(b, spec, p).value) - kauffman_oracle(spec, b, l)))
    # the trefoil plat and unknot-plus-Hopf trace words from the worked examples
    trefoil = abs(jones_plat(TREFOIL, RootParams(2, 5)).value)
    unknot_hopf = abs(jones_closure(TREFOIL, ClosureSpec.trace(4), RootParams(2, 5)).value)
    t = cmath.exp(2j * math.pi / 5)
    worst = max(worst, abs(trefoil - abs(t + t ** 3 - t ** 4)), abs(unknot_hopf - abs(1 + t + t ** 2 + t ** 3)))
    dt = time.perf_counter() - t0
    report(6, worst <= 1e-8 and dt < 300, f"{cases} closures, max |J - oracle| = {worst:.2e}, {dt:.1f} s")


def _cupcap_projector(block, p_caps):
    m = np.zeros((block.dim, block.dim))
    caps = tuple(r for _ in range(p_caps) for r in (0, 1))
    for j, t in enumerate(block.basis):
        if t.rows[:2 * p_caps] == caps:
            m[j, j] = 1.0
    return m


def test_criterion_07_cupcap_lemma(report):
    worst, structural = 0.0, True
    for l in (5, 7, 8):
        p = RootParams(2, l)
        for n in range(2, 9):
            for p_caps in range(1, min(3, n // 2) + 1):
                w = TangleWord(n, BraidWord.identity(n), tuple(range(1, 2 * p_caps, 2)))
                for lam in enumerate_diagrams(n, p):
                    block = irrep_block(lam, p)
                    img = apply_tangle(w, block, np.eye(block.dim, dtype=complex))
                    proj = _cupcap_projector(block, p_caps)
                    if lam.row(1) >= p_caps:
                        want = p.q2 ** p_caps * proj
                        structural &= bool(proj.any())
                    else:
                        want = np.zeros_like(img)
                        structural &= not proj.any()
                    # same support exactly, values to tolerance
                    structural &= bool(np.array_equal(np.abs(img) > 1e-12, np.abs(want) > 0))
                    worst = max(worst, np.abs(img - want).max())
    report(7, structural and worst <= 1e-10, f"support exact: {structural}, max residual {worst:.2e}")


def test_criterion_08_cross_route(report):
    rng = np.random.default_rng(2008)
    worst = 0.0
    for i in range(50):
        l = (5, 7, 8)[i % 3]
        p = RootParams(2, l)
        n = int(rng.integers(3, 7))
        pp = int(rng.integers(1, n // 2 + 1))
        spec = ClosureSpec.generalized(pp, n - 2 * pp)
        b = random_braid(rng, n, int(rng.integers(0, 11)))
        direct = jones_generalized_closure(b, spec, p).value
        via_plat = jones_plat(plat_conjugated_braid(b, spec), p).value
        worst = max(worst, abs(abs(direct) - abs(via_plat)))
    report(8, worst <= 1e-10, f"50 instances, max | |J_gen| - |J_plat(b')| | = {worst:.2e}")


def test_criterion_09_estimator_soundness(report):
    t0 = time.perf_counter()
    delta = 0.1
    M = auto_sample_count(delta)
    rng = np.random.default_rng(2009)
    p = RootParams(2, 5)
    runs = []
    for _ in range(200):
        runs.append(estimate_jones_closure(TREFOIL, ClosureSpec.plat(4), 5, delta, rng, fast=True))
    for _ in range(200):
        b = random_braid(rng, 4, int(rng.integers(1, 11)))
        runs.append(estimate_homflypt(b, p, delta, rng, fast=True))
    fast_fail = sum(r.error > delta for r in runs) / len(runs)
    full = [estimate_jones_closure(TREFOIL, ClosureSpec.plat(4), 5, delta, rng) for _ in range(10)]
    full += [estimate_homflypt(random_braid(rng, 4, 8), p, delta, rng) for _ in range(10)]
    full_fail = sum(r.error > delta for r in full) / len(full)
    modes_ok = all(r.mode == "circuit" for r in full) and all(r.M == M for r in runs + full)
    dt = time.perf_counter() - t0
    ok = M == 2219 and fast_fail < 0.30 and full_fail < 0.30 and modes_ok and dt < 600
    report(9, ok, f"M = {M}, failure fraction {fast_fail:.3f} over 400 fast runs, "
                  f"{full_fail:.2f} over 20 full-circuit runs, {dt:.1f} s")


def test_criterion_10_register_encoding(report):
    rng = np.random.default_rng(2010)
    worst, passed = 0.0, True
    for k, l in ((2, 5), (3, 7)):
        for _ in range(10):
            rep = verify_register_encoding(random_braid(rng, 4, int(rng.integers(1, 13))), RootParams(k, l))
            passed &= rep.passed
            worst = max(worst, rep.max_deviation)
    report(10, passed and worst <= 1e-9, f"20 braids, max deviation {worst:.2e}")


def test_criterion_11_compiler(report):
    t0 = time.perf_counter()
    circuit = QuantumCircuit(2).add("cnot", 1)
    cb = compile_circuit(circuit, 5, 0.3)
    rep = verify_compiled(cb, circuit)
    dt = time.perf_counter() - t0
    ok = cb.success and rep.gap <= 0.3 and rep.passed and cb.braid.strands == 8 and dt < 600
    report(11, ok, f"|<00|U|00>|^2 = {rep.amplitude_sq:.6f}, (|J|/[2]^3)^2 = {rep.plat_sq:.6f}, "
                   f"|J|^2/[2]^3 = {rep.literal:.6f}, gap = {rep.gap:.2e}, "
                   f"operator-norm gap = {rep.operator_gap:.4f}, {cb.braid.length} letters, {dt:.1f} s")


def test_criterion_12_distance_lemma(report):
    rng = np.random.default_rng(2012)
    worst_ratio, violations = 0.0, 0
    for _ in range(1000):
        d = int(rng.integers(1, 17))
        u = unitary_group.rvs(d, random_state=rng) if d > 1 else np.exp(1j * rng.uniform(0, 2 * np.pi)) * np.eye(1)
        h = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        h = (h + h.conj().T) / 2
        theta = rng.uniform(0, 2 * np.arcsin(0.5))  # keeps ||U - U'|| <= 1
        u2 = u @ expm(1j * theta * h / max(np.linalg.norm(h, 2), 1e-300))
        eps = np.linalg.norm(u - u2, 2)
        phi = rng.normal(size=d) + 1j * rng.normal(size=d)
        psi = rng.normal(size=d) + 1j * rng.normal(size=d)
        phi, psi = phi / np.linalg.norm(phi), psi / np.linalg.norm(psi)
        gap = abs(abs(np.vdot(phi, u @ psi)) ** 2 - abs(np.vdot(phi, u2 @ psi)) ** 2)
        violations += gap > eps + 1e-12
        if eps > 1e-9:
            worst_ratio = max(worst_ratio, gap / eps)
    report(12, violations == 0, f"1000 pairs, {violations} violations, max gap/eps {worst_ratio:.3f}")
