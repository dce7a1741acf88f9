"""Simulated quantum additive approximations: Hadamard tests, estimator loops, register encoding."""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .braid import BraidWord, ClosureKind, ClosureSpec
from .invariants import homflypt_trace_closure, jones_generalized_closure, plat_conjugated_braid
from .rep import apply_braid, irrep_block
from .young import (
    MarkovWeightTable,
    RootParams,
    Tableau,
    YoungDiagram,
    a_coefficient,
    enumerate_diagrams,
    enumerate_tableaux,
    rectangular_tableau,
    sample_tableau,
    young_graph,
)

__all__ = [
    "auto_sample_count",
    "controlled_state",
    "reduced_control_state",
    "hadamard_test",
    "EstimatorRun",
    "Route",
    "estimate_homflypt",
    "estimate_jones_closure",
    "RegisterState",
    "RegisterReport",
    "encode_tableau",
    "decode_state",
    "apply_register_generator",
    "verify_register_encoding",
]


def auto_sample_count(delta: float) -> int:
    """M = ceil(32 ln 2 / delta^2), the Chernoff sample count for failure probability 1/4."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    return math.ceil(32 * math.log(2) / delta ** 2)


# ---------------------------------------------------------------- Hadamard test

def _as_operator(U) -> Callable[[np.ndarray], np.ndarray]:
    if callable(U):
        return U
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError("U must be a square matrix")
    if np.abs(U.conj().T @ U - np.eye(U.shape[0])).max() > 1e-10:
        raise ValueError("U is not unitary to 1e-10")
    return lambda v: U @ v


def _check_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise ValueError("state is not normalized")
    return psi


def controlled_state(U, psi) -> np.ndarray:
    """State after H on the control and controlled-U: rows are control values 0 and 1."""
    op = _as_operator(U)
    psi = _check_state(psi)
    return np.stack([psi, op(psi)]) / math.sqrt(2)


def reduced_control_state(U, psi) -> np.ndarray:
    """2x2 density matrix of the control qubit, i.e. (1 + X Re<U> + Y Im<U>) / 2."""
    s = controlled_state(U, psi)
    return s @ s.conj().T


_H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
_SDG = np.diag([1, -1j])


def _measure_control(state: np.ndarray, basis_change: np.ndarray, rng: np.random.Generator) -> int:
    out = basis_change @ state
    p0 = float(np.vdot(out[0], out[0]).real)
    return 1 if rng.random() < p0 else -1


def hadamard_test(U, psi, rng: np.random.Generator, fast: bool = False) -> tuple[int, int]:
    """One sample (X, Y) with E[X + iY] = <psi|U|psi>.

    The controlled-U circuit is simulated on the control plus target statevector; X comes from a
    final Hadamard on the control, Y from S^dagger then Hadamard, each on a fresh run. With
    ``fast=True`` the two outcomes are Bernoulli draws on the exact matrix element instead.
    """
    if fast:
        op = _as_operator(U)
        psi = _check_state(psi)
        amp = complex(np.vdot(psi, op(psi)))
        x = 1 if rng.random() < (1 + amp.real) / 2 else -1
        y = 1 if rng.random() < (1 + amp.imag) / 2 else -1
        return x, y
    state = controlled_state(U, psi)
    return _measure_control(state, _H, rng), _measure_control(state, _H @ _SDG, rng)


def _sample_pairs(amps: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Vectorized Bernoulli (X, Y) draws for a batch of matrix elements."""
    u = rng.random((len(amps), 2))
    x = np.where(u[:, 0] < (1 + amps.real) / 2, 1, -1)
    y = np.where(u[:, 1] < (1 + amps.imag) / 2, 1, -1)
    return np.stack([x, y], axis=1).astype(np.int8)


# ---------------------------------------------------------------- estimators

class Route(enum.Enum):
    VIA_PLAT = "plat"
    DIRECT = "direct"


@dataclass
class EstimatorRun:
    """Configuration and outcome of one simulated additive approximation.

    Attributes:
        target: Short description of the estimated quantity.
        params: Root parameters.
        delta: Requested accuracy.
        M: Number of (X, Y) samples.
        samples: Array of shape (M, 2) with entries +-1.
        estimate: Z, complex for HOMFLYPT, real modulus for Jones closures.
        phase_correction: Unit complex factor applied to the sample mean.
        exact: Exact normalized value when it was computed.
        seed: Seed of the generator, when known.
    """

    target: str
    params: RootParams
    delta: float
    M: int
    samples: np.ndarray = field(repr=False)
    estimate: complex
    phase_correction: complex = 1.0
    exact: complex | None = None
    seed: int | None = None
    route: str | None = None
    mode: str = "circuit"
    wall_time: float = 0.0

    @property
    def mean(self) -> complex:
        s = self.samples
        return complex(s[:, 0].mean(), s[:, 1].mean())

    @property
    def error(self) -> float | None:
        return None if self.exact is None else abs(self.estimate - self.exact)

    def as_record(self) -> dict:
        est = complex(self.estimate)
        rec = {
            "target": self.target,
            "k": self.params.k,
            "l": self.params.l,
            "delta": self.delta,
            "M": self.M,
            "route": self.route,
            "mode": self.mode,
            "Z": {"re": est.real, "im": est.imag},
            "abs_Z": abs(est),
            "exact": None if self.exact is None else {"re": complex(self.exact).real, "im": complex(self.exact).imag},
            "error": self.error,
            "seed": self.seed,
        }
        return rec


def _resolve_M(delta: float, M: int | None) -> int:
    auto = auto_sample_count(delta)
    if M is None:
        return auto
    if M < auto:
        raise ValueError(f"sample count may only be raised above the automatic {auto}")
    return int(M)


class _Sampler:
    """Draws (X, Y) for matrix elements <t|pi_lambda(b)|t>, caching images per tableau."""

    def __init__(self, b: BraidWord, params: RootParams, rng: np.random.Generator, fast: bool):
        self.b, self.params, self.rng, self.fast = b, params, rng, fast
        self._cache: dict[tuple, tuple[np.ndarray, np.ndarray]] = {}

    def vectors(self, lam: YoungDiagram, t: Tableau) -> tuple[np.ndarray, np.ndarray]:
        key = (lam.parts, t.rows)
        hit = self._cache.get(key)
        if hit is None:
            block = irrep_block(lam, self.params)
            v = np.zeros(block.dim, dtype=complex)
            v[block.index(t)] = 1.0
            hit = (v, apply_braid(self.b, block, v))
            self._cache[key] = hit
        return hit

    def amplitude(self, lam, t) -> complex:
        v, w = self.vectors(lam, t)
        return complex(np.vdot(v, w))

    def draw(self, lam, t) -> tuple[int, int]:
        v, w = self.vectors(lam, t)
        if self.fast:
            x, y = _sample_pairs(np.array([complex(np.vdot(v, w))]), self.rng)[0]
            return int(x), int(y)
        state = np.stack([v, w]) / math.sqrt(2)
        return _measure_control(state, _H, self.rng), _measure_control(state, _H @ _SDG, self.rng)


def _mixture_samples(b: BraidWord, params: RootParams, layer: list[YoungDiagram], probs: np.ndarray,
                     prefix: Callable[[YoungDiagram], YoungDiagram], embed: Callable[[Tableau], Tableau],
                     M: int, rng: np.random.Generator, fast: bool) -> np.ndarray:
    """M samples: lambda ~ probs, t uniform in T_lambda by reverse walk, Hadamard test on pi(b)."""
    sampler = _Sampler(b, params, rng, fast)
    n = layer[0].size if layer else 0
    graph = young_graph(n, params)
    probs = np.asarray(probs, dtype=float)
    probs = probs / probs.sum()
    choice = rng.choice(len(layer), size=M, p=probs)
    out = np.empty((M, 2), dtype=np.int8)
    if fast:
        amps = np.empty(M, dtype=complex)
        for j, c in enumerate(choice):
            mu = layer[c]
            t = sample_tableau(mu, params, rng, graph)
            amps[j] = sampler.amplitude(prefix(mu), embed(t))
        return _sample_pairs(amps, rng)
    for j, c in enumerate(choice):
        mu = layer[c]
        t = sample_tableau(mu, params, rng, graph)
        out[j] = sampler.draw(prefix(mu), embed(t))
    return out


def _to_unit_disk(z: complex) -> complex:
    """Project onto |z| <= 1; the exact normalized values lie there, so this never adds error."""
    r = abs(z)
    return z / r if r > 1 else z


def estimate_homflypt(b: BraidWord, params: RootParams, delta: float, rng: np.random.Generator,
                      M: int | None = None, fast: bool = False, exact: bool = True,
                      seed: int | None = None) -> EstimatorRun:
    """Additive approximation of H^(k)/[k]^(n-1) for the trace closure of b.

    Samples lambda with probability s_lambda d_lambda, a uniform tableau of that shape, then one
    Hadamard test on <t|pi_lambda(b)|t>; Z is the phase-corrected sample mean, projected onto the
    unit disk.
    """
    t0 = time.perf_counter()
    M = _resolve_M(delta, M)
    table = MarkovWeightTable(b.strands, params)
    layer = table.diagrams()
    samples = _mixture_samples(b, params, layer, table.probabilities(), lambda mu: mu, lambda t: t, M, rng, fast)
    phase = params.q_pow(-(params.k + 1) * b.exponent_sum / 2)
    mean = complex(samples[:, 0].mean(), samples[:, 1].mean())
    ex = homflypt_trace_closure(b, params).normalized_value if exact else None
    return EstimatorRun("homflypt-trace", params, delta, M, samples, _to_unit_disk(phase * mean), phase, ex, seed,
                        None, "fast" if fast else "circuit", time.perf_counter() - t0)


def _closure_pr(b: BraidWord, spec: ClosureSpec) -> tuple[int, int]:
    spec.validate(b.strands)
    if spec.kind is ClosureKind.TRACE:
        return 0, b.strands
    if spec.kind is ClosureKind.PLAT:
        return b.strands // 2, 0
    return spec.p, spec.r


def estimate_jones_closure(b: BraidWord, spec: ClosureSpec, l: int, delta: float, rng: np.random.Generator,
                           route: Route = Route.VIA_PLAT, M: int | None = None, fast: bool = False,
                           exact: bool = True, seed: int | None = None) -> EstimatorRun:
    """Additive approximation of |J| / [2]^(p+r-1) for a generalized closure.

    ``Route.VIA_PLAT`` estimates <t_2p'|pi(c^-1 b c)|t_2p'> on 2p+2r strands; ``Route.DIRECT``
    samples mu over Lambda_r and tests <t_2p t'|pi_[p,p]+mu(b)|t_2p t'>. The estimate is the
    modulus of the sample mean, capped at 1.
    """
    t0 = time.perf_counter()
    params = RootParams(2, l)
    M = _resolve_M(delta, M)
    p, r = _closure_pr(b, spec)
    word = spec.framed(b)
    if route is Route.VIA_PLAT:
        bp = plat_conjugated_braid(b, spec)
        h = bp.strands // 2
        lam = YoungDiagram((h, h))
        t = rectangular_tableau(h)
        sampler = _Sampler(bp, params, rng, fast)
        if fast:
            samples = _sample_pairs(np.full(M, sampler.amplitude(lam, t)), rng)
        else:
            samples = np.array([sampler.draw(lam, t) for _ in range(M)], dtype=np.int8).reshape(M, 2)
    elif route is Route.DIRECT:
        table = MarkovWeightTable(r, params)
        t2p = rectangular_tableau(p)
        rect = YoungDiagram((p, p))
        samples = _mixture_samples(word, params, table.diagrams(), table.probabilities(),
                                   lambda mu: rect + mu, lambda t: t2p.concat(t), M, rng, fast)
    else:
        raise ValueError(f"unknown route {route!r}")
    mean = complex(samples[:, 0].mean(), samples[:, 1].mean())
    ex = jones_generalized_closure(b, spec, params).normalized_abs if exact else None
    return EstimatorRun(f"jones-{spec.kind.value}", params, delta, M, samples, abs(_to_unit_disk(mean)), 1.0, ex, seed,
                        route.value, "fast" if fast else "circuit", time.perf_counter() - t0)


# ---------------------------------------------------------------- register encoding

@dataclass(frozen=True)
class RegisterState:
    """Computational-basis content of the R, D (and optionally C, L) registers.

    Rows and columns are 1-based as in the register description; ``d`` has n-1 entries.
    """

    r: tuple[int, ...]
    d: tuple[int, ...] = ()
    c: tuple[int, ...] | None = None
    shape: tuple[int, ...] | None = None


def _w_prime(r: tuple[int, ...], k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """W' = W'_n ... W'_1: column registers and the shape register from the row registers."""
    lam = [0] * k
    cols = []
    for ri in r:
        lam[ri - 1] += 1
        cols.append(lam[ri - 1])
    return tuple(cols), tuple(lam)


def encode_tableau(t: Tableau, params: RootParams) -> RegisterState:
    """W |r(t)> = |r(t)>|d(t)>, computed through W', the W_i, and uncomputation of C and L."""
    r = tuple(x + 1 for x in t.rows)
    if any(x > params.k for x in r):
        raise ValueError("tableau has more than k rows")
    c, _ = _w_prime(r, params.k)
    d = tuple(c[i] - c[i + 1] - (r[i] - r[i + 1]) for i in range(len(r) - 1))
    return RegisterState(r, d)


def decode_state(s: RegisterState, params: RootParams) -> Tableau:
    """W^-1 on the image of W; raises if the D registers are inconsistent with R."""
    t = Tableau(tuple(x - 1 for x in s.r))
    if encode_tableau(t, params).d != s.d:
        raise ValueError(f"D registers {s.d} do not match rows {s.r}")
    return t


def _u_prime_coeffs(d: int, params: RootParams, sign: int) -> tuple[complex, complex]:
    a = min(max(a_coefficient(d, params), 0.0), 1.0)
    if a * (1 - a) < 1e-13:  # no partner state: a is exactly 0 or 1 up to rounding
        a = float(round(a))
    q = params.q if sign > 0 else params.q.conjugate()
    return q - (1 + q) * a, -(1 + q) * math.sqrt(a * (1 - a))


def apply_register_generator(i: int, sign: int, state: dict[RegisterState, complex],
                             params: RootParams) -> dict[RegisterState, complex]:
    """U'_i^sign on a sparse superposition of register basis states.

    Only R_i, R_{i+1}, D_{i-1}, D_i, D_{i+1} are read or written.
    """
    out: dict[RegisterState, complex] = {}
    for s, amp in state.items():
        di = s.d[i - 1]
        alpha, beta = _u_prime_coeffs(di, params, sign)
        out[s] = out.get(s, 0) + alpha * amp
        if abs(beta) > 0:
            r = list(s.r)
            r[i - 1], r[i] = r[i], r[i - 1]
            d = list(s.d)
            if i >= 2:
                d[i - 2] += di
            d[i - 1] = -di
            if i < len(d):
                d[i] += di
            s2 = RegisterState(tuple(r), tuple(d))
            out[s2] = out.get(s2, 0) + beta * amp
    return out


@dataclass
class RegisterReport:
    max_deviation: float
    n_states: int
    roundtrip_ok: bool
    tolerance: float = 1e-9

    @property
    def passed(self) -> bool:
        return self.roundtrip_ok and self.max_deviation < self.tolerance


def verify_register_encoding(b: BraidWord, params: RootParams, n_max: int = 10) -> RegisterReport:
    """Compare rho(b) = W^-1 U'... W on every encoded tableau against pi(b)."""
    n = b.strands
    if n > n_max:
        raise ValueError(f"n = {n} exceeds the enumeration limit {n_max}")
    worst = 0.0
    count = 0
    roundtrip = True
    for lam in enumerate_diagrams(n, params):
        block = irrep_block(lam, params)
        for j, t in enumerate(block.basis):
            enc = encode_tableau(t, params)
            roundtrip &= decode_state(enc, params) == t
            state = {enc: 1.0 + 0j}
            for i, sgn in reversed(b.letters):
                state = apply_register_generator(i, sgn, state, params)
            got = np.zeros(block.dim, dtype=complex)
            for s, amp in state.items():
                try:
                    t2 = decode_state(s, params)
                    got[block.index(t2)] += amp
                except (ValueError, KeyError):
                    worst = max(worst, abs(amp))
            v = np.zeros(block.dim, dtype=complex)
            v[j] = 1.0
            want = apply_braid(b, block, v)
            worst = max(worst, float(np.abs(got - want).max()))
            count += 1
    return RegisterReport(worst, count, bool(roundtrip))
