import numpy as np
import pytest
from scipy.linalg import expm
from scipy.stats import unitary_group

from braidjones.braid import (
    BraidWord,
    ClosureSpec,
    ConjugateBy,
    Stabilize,
    include_strand,
    markov_move,
    parse_braid,
)
from braidjones.invariants import (
    homflypt_trace_closure,
    jones_closure,
    jones_generalized_closure,
    jones_generalized_via_tangle,
    jones_plat,
    markov_trace,
    normalized_trace,
    plat_conjugated_braid,
)
from braidjones.kauffman import kauffman_oracle
from braidjones.young import RootParams
from conftest import HOPF, ROOTS, TREFOIL, UNKNOT_HOPF, jones_poly_abs, random_braid

TREFOIL_WORD = parse_braid("n:4; word: 2 -3 2")


def closure_specs(n):
    specs = [ClosureSpec.trace(n)]
    if n % 2 == 0:
        specs.append(ClosureSpec.plat(n))
    for p in range(1, n // 2 + 1):
        specs.append(ClosureSpec.generalized(p, n - 2 * p))
    return specs


def oracle_corpus():
    rng = np.random.default_rng(20240601)
    out = [TREFOIL_WORD, BraidWord(2, ((1, 1),) * 3), BraidWord(2, ((1, 1),) * 2), BraidWord.identity(3)]
    for _ in range(24):
        n = int(rng.integers(2, 6))
        out.append(random_braid(rng, n, int(rng.integers(0, 11))))
    return out


@pytest.mark.parametrize("k, l", ROOTS)
def test_trace_of_identity(k, l):
    p = RootParams(k, l)
    for n in range(1, 9):
        assert markov_trace(BraidWord.identity(n), p) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("k, l", ROOTS)
def test_trace_stabilization_factor(k, l):
    p = RootParams(k, l)
    rng = np.random.default_rng(k * 100 + l)
    for _ in range(10):
        w = random_braid(rng, 3, 6)
        lhs = markov_trace(BraidWord(4, ((3, 1),)) * include_strand(w), p)
        rhs = p.q_pow((k + 1) / 2) / p.qk * markov_trace(w, p)
        assert abs(lhs - rhs) < 1e-10


def test_trace_cyclic():
    p = RootParams(3, 7)
    rng = np.random.default_rng(5)
    for _ in range(10):
        v, w = random_braid(rng, 5, 6), random_braid(rng, 5, 6)
        assert abs(markov_trace(v * w, p) - markov_trace(w * v, p)) < 1e-10


def test_homflypt_examples():
    for k, l in ROOTS:
        p = RootParams(k, l)
        for n in range(1, 6):
            v = homflypt_trace_closure(BraidWord.identity(n), p)
            assert v.value == pytest.approx(p.qk ** (n - 1), abs=1e-10)
            assert v.normalized_abs == pytest.approx(1.0, abs=1e-12)
        assert homflypt_trace_closure(BraidWord(2, ((1, 1),)), p).value == pytest.approx(1.0, abs=1e-10)
        assert homflypt_trace_closure(BraidWord(2, ((1, -1),)), p).value == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("l", [5, 7, 8])
def test_unknot_hopf(l):
    b = parse_braid("n:4; word: 2 -3 2")
    got = abs(homflypt_trace_closure(b, RootParams(2, l)).value)
    assert got == pytest.approx(kauffman_oracle(ClosureSpec.trace(4), b, l), abs=1e-8)
    assert got == pytest.approx(jones_poly_abs(UNKNOT_HOPF, l), abs=1e-8)


@pytest.mark.parametrize("l", [5, 7, 8])
def test_trefoil_plat(l):
    p = RootParams(2, l)
    got = jones_plat(TREFOIL_WORD, p)
    assert abs(got.value) == pytest.approx(jones_poly_abs(TREFOIL, l), abs=1e-8)
    assert abs(got.value) == pytest.approx(kauffman_oracle(ClosureSpec.plat(4), TREFOIL_WORD, l), abs=1e-8)
    gen = jones_generalized_closure(TREFOIL_WORD, ClosureSpec.plat(4), p)
    assert abs(gen.value) == pytest.approx(abs(got.value), abs=1e-10)


def test_trefoil_value_frozen():
    # frozen from the bracket oracle and the published polynomial t + t^3 - t^4
    assert abs(jones_plat(TREFOIL_WORD, RootParams(2, 5)).value) == pytest.approx(1.543361918426817, abs=1e-12)


def test_hopf_trace():
    b = BraidWord(2, ((1, 1), (1, 1)))
    for l in (5, 7, 8):
        assert abs(homflypt_trace_closure(b, RootParams(2, l)).value) == pytest.approx(jones_poly_abs(HOPF, l))


def test_identity_saturates_bound():
    p = RootParams(2, 7)
    for n in range(2, 8):
        for spec in closure_specs(n):
            v = jones_closure(BraidWord.identity(n), spec, p)
            assert v.normalized_abs == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("l", [5, 7, 8])
def test_oracle_equivalence(l):
    p = RootParams(2, l)
    for b in oracle_corpus():
        for spec in closure_specs(b.strands):
            exact = abs(jones_closure(b, spec, p).value)
            assert exact == pytest.approx(kauffman_oracle(spec, b, l), abs=1e-8), (b, spec)
            assert exact / jones_closure(b, spec, p).normalization <= 1 + 1e-9


def test_framing_braids():
    p = RootParams(2, 7)
    rng = np.random.default_rng(11)
    x, y, b = random_braid(rng, 4, 3), random_braid(rng, 4, 3), random_braid(rng, 4, 4)
    spec = ClosureSpec.generalized(1, 2, x, y)
    got = abs(jones_generalized_closure(b, spec, p).value)
    assert got == pytest.approx(kauffman_oracle(spec, b, 7), abs=1e-8)
    assert got == pytest.approx(abs(jones_generalized_closure(x * b * y, ClosureSpec.generalized(1, 2), p).value))


@pytest.mark.parametrize("l", [5, 7, 8])
def test_cross_route_equality(l):
    p = RootParams(2, l)
    rng = np.random.default_rng(l)
    for _ in range(15):
        n = int(rng.integers(3, 6))
        pp = int(rng.integers(1, n // 2 + 1))
        spec = ClosureSpec.generalized(pp, n - 2 * pp)
        b = random_braid(rng, n, 8)
        direct = abs(jones_generalized_closure(b, spec, p).value)
        via_plat = abs(jones_plat(plat_conjugated_braid(b, spec), p).value)
        via_tangle = abs(jones_generalized_via_tangle(b, spec, p))
        assert direct == pytest.approx(via_plat, abs=1e-10)
        assert direct == pytest.approx(via_tangle, abs=1e-10)


def test_conjugated_braid_example():
    b = random_braid(np.random.default_rng(1), 3, 6)
    spec = ClosureSpec.generalized(1, 1)
    p = RootParams(2, 5)
    bp = plat_conjugated_braid(b, spec)
    assert bp.strands == 4
    assert abs(jones_plat(bp, p).value) == pytest.approx(abs(jones_generalized_closure(b, spec, p).value), abs=1e-10)


def random_markov_case(rng):
    n = int(rng.integers(1, 6))
    b = random_braid(rng, n, int(rng.integers(0, 12))) if n > 1 else BraidWord.identity(1)
    if n > 1 and rng.random() < 0.5:
        x = random_braid(rng, n, int(rng.integers(1, 5)))
        return b, markov_move(b, ConjugateBy(x))
    return b, markov_move(b, Stabilize(int(rng.choice([-1, 1]))))


def test_markov_invariance():
    rng = np.random.default_rng(99)
    for case in range(200):
        k = int(rng.integers(2, 4))
        l = int(rng.integers(k + 1, 10))
        p = RootParams(k, l)
        b, moved = random_markov_case(rng)
        a, c = normalized_trace(b, p), normalized_trace(moved, p)
        assert abs(a - c) <= 1e-9 * max(1.0, abs(a)), (case, b, moved, k, l)


def test_trace_specialization():
    p = RootParams(2, 7)
    rng = np.random.default_rng(4)
    for _ in range(10):
        b = random_braid(rng, 4, 8)
        h = homflypt_trace_closure(b, p)
        gen = jones_generalized_closure(b, ClosureSpec.trace(4), p)
        assert abs(h.value) == pytest.approx(abs(gen.value), abs=1e-10)
        assert h.normalization == pytest.approx(gen.normalization)


def test_errors():
    with pytest.raises(ValueError):
        jones_generalized_closure(BraidWord.identity(4), ClosureSpec.generalized(1, 1), RootParams(2, 5))
    with pytest.raises(ValueError):
        jones_plat(BraidWord.identity(4), RootParams(3, 7))
    with pytest.raises(ValueError):
        jones_plat(BraidWord.identity(3), RootParams(2, 7))


def test_record_schema():
    rec = jones_closure(TREFOIL_WORD, ClosureSpec.plat(4), RootParams(2, 5)).as_record()
    assert set(rec) == {"closure", "k", "l", "value", "abs", "normalization", "normalized_abs", "wall_time"}
    assert rec["closure"] == {"kind": "plat", "p": 2, "r": 0}


def amplitude_gap(u, u2, phi, psi):
    return abs(abs(np.vdot(phi, u @ psi)) ** 2 - abs(np.vdot(phi, u2 @ psi)) ** 2)


def test_amplitude_distance_property():
    rng = np.random.default_rng(8)
    for _ in range(200):
        d = int(rng.integers(2, 9))
        u = unitary_group.rvs(d, random_state=rng)
        h = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        h = (h + h.conj().T) / 2
        u2 = u @ expm(1j * rng.uniform(0, 0.5) * h / np.linalg.norm(h, 2))
        eps = np.linalg.norm(u - u2, 2)
        phi = rng.normal(size=d) + 1j * rng.normal(size=d)
        psi = rng.normal(size=d) + 1j * rng.normal(size=d)
        phi, psi = phi / np.linalg.norm(phi), psi / np.linalg.norm(psi)
        assert amplitude_gap(u, u2, phi, psi) <= eps + 1e-12
