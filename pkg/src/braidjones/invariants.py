"""Exact Markov traces and Jones/HOMFLYPT values of braid closures at q = exp(2 pi i / l)."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .braid import BraidWord, ClosureKind, ClosureSpec, TangleWord, conjugator_braid
from .kauffman import kauffman_oracle
from .rep import apply_braid, block_trace, irrep_block
from .young import (
    RootParams,
    Tableau,
    YoungDiagram,
    enumerate_diagrams,
    enumerate_tableaux,
    markov_weight,
    rectangular_tableau,
)

__all__ = [
    "InvariantValue",
    "markov_trace",
    "normalized_trace",
    "homflypt_trace_closure",
    "jones_generalized_closure",
    "jones_generalized_via_tangle",
    "jones_plat",
    "jones_closure",
    "plat_conjugated_braid",
    "kauffman_oracle",
]


@dataclass(frozen=True)
class InvariantValue:
    """An exact invariant evaluation.

    For trace closures ``value`` is the complex HOMFLYPT (Jones when k = 2). For plat and
    generalized closures only ``abs(value)`` is an invariant; the stored complex number is the raw
    matrix-element expression it came from.
    """

    value: complex
    normalization: float
    params: RootParams
    closure: ClosureSpec
    wall_time: float = field(default=0.0, compare=False)

    @property
    def normalized_abs(self) -> float:
        return abs(self.value) / self.normalization

    @property
    def normalized_value(self) -> complex:
        return self.value / self.normalization

    def as_record(self) -> dict:
        c = self.closure
        return {
            "closure": {"kind": c.kind.value, "p": c.p, "r": c.r},
            "k": self.params.k,
            "l": self.params.l,
            "value": {"re": self.value.real, "im": self.value.imag},
            "abs": abs(self.value),
            "normalization": self.normalization,
            "normalized_abs": self.normalized_abs,
            "wall_time": self.wall_time,
        }


def markov_trace(w: BraidWord | TangleWord, params: RootParams) -> complex:
    """tr(w) = sum over lambda of s_lambda Tr pi_lambda(w)."""
    total = 0j
    for lam in enumerate_diagrams(w.strands, params):
        total += markov_weight(lam, params) * block_trace(w, irrep_block(lam, params))
    return total


def normalized_trace(w: BraidWord | TangleWord, params: RootParams) -> complex:
    """[k]^(n-1) q^(-(k+1) e / 2) tr(w); invariant under both Markov moves."""
    n, e = w.strands, w.exponent_sum
    return params.qk ** (n - 1) * params.q_pow(-(params.k + 1) * e / 2) * markov_trace(w, params)


def homflypt_trace_closure(b: BraidWord, params: RootParams) -> InvariantValue:
    t0 = time.perf_counter()
    val = normalized_trace(b, params)
    return InvariantValue(val, params.qk ** (b.strands - 1), params, ClosureSpec.trace(b.strands),
                          time.perf_counter() - t0)


def _require_k2(params: RootParams) -> None:
    if params.k != 2:
        raise ValueError("Jones closures need k = 2")


def _cupcap_word(b: BraidWord, p: int) -> TangleWord:
    return TangleWord(b.strands, b, tuple(range(1, 2 * p, 2)))


def jones_generalized_via_tangle(b: BraidWord, spec: ClosureSpec, params: RootParams) -> complex:
    """Normalized trace of (x b y) omega_1 omega_3 ... omega_{2p-1}; only the modulus is invariant."""
    _require_k2(params)
    spec.validate(b.strands)
    return normalized_trace(_cupcap_word(spec.framed(b), spec.p), params)


def _rect_sum(b: BraidWord, p: int, r: int, params: RootParams) -> complex:
    """sum over mu in Lambda_r of [mu1 - mu2 + 1] Tr(pi_{[p,p]+mu}(b) (t_2p x 1_mu))."""
    t2p = rectangular_tableau(p)
    total = 0j
    for mu in enumerate_diagrams(r, params):
        lam = YoungDiagram((p, p)) + mu
        block = irrep_block(lam, params)
        idx = [block.index(t2p.concat(t)) for t in enumerate_tableaux(mu, params)]
        cols = np.zeros((block.dim, len(idx)), dtype=complex)
        cols[idx, np.arange(len(idx))] = 1.0
        out = apply_braid(b, block, cols)
        total += params.qint(mu.row(0) - mu.row(1) + 1) * complex(out[idx, np.arange(len(idx))].sum())
    return total


def jones_generalized_closure(b: BraidWord, spec: ClosureSpec, params: RootParams) -> InvariantValue:
    """|J| of a generalized (or plat) closure via the rectangular-tableau sum.

    The normalization is [2]^(p + r - 1); the identity braid gives normalized_abs = 1.
    """
    _require_k2(params)
    t0 = time.perf_counter()
    spec.validate(b.strands)
    word = spec.framed(b)
    p, r = spec.p, spec.r
    if spec.kind is ClosureKind.TRACE:
        p, r = 0, b.strands
    elif spec.kind is ClosureKind.PLAT:
        p, r = b.strands // 2, 0
    val = params.q2 ** (p - 1) * _rect_sum(word, p, r, params)
    return InvariantValue(val, params.q2 ** (p + r - 1), params, spec, time.perf_counter() - t0)


def jones_plat(b: BraidWord, params: RootParams) -> InvariantValue:
    """[2]^(n/2 - 1) <t_n| pi_[n/2, n/2](b) |t_n>; only the modulus is invariant."""
    _require_k2(params)
    if b.strands % 2:
        raise ValueError("plat closure needs an even strand count")
    t0 = time.perf_counter()
    h = b.strands // 2
    block = irrep_block((h, h), params)
    v = np.zeros(block.dim, dtype=complex)
    v[block.index(rectangular_tableau(h))] = 1.0
    amp = np.vdot(v, apply_braid(b, block, v))
    return InvariantValue(params.q2 ** (h - 1) * amp, params.q2 ** (h - 1), params,
                          ClosureSpec.plat(b.strands), time.perf_counter() - t0)


def plat_conjugated_braid(b: BraidWord, spec: ClosureSpec) -> BraidWord:
    """c^-1 (x b y) c on 2p + 2r strands, whose plat closure is the generalized closure of b."""
    spec.validate(b.strands)
    p, r = spec.p, spec.r
    if spec.kind is ClosureKind.TRACE:
        p, r = 0, b.strands
    elif spec.kind is ClosureKind.PLAT:
        p, r = b.strands // 2, 0
    c = conjugator_braid(p, r)
    inner = spec.framed(b).widened(2 * p + 2 * r)
    return c.inverse() * inner * c


def jones_closure(b: BraidWord, spec: ClosureSpec, params: RootParams) -> InvariantValue:
    """Dispatch on the closure kind; trace closures return the full complex Jones value."""
    if spec.kind is ClosureKind.TRACE:
        _require_k2(params)
        spec.validate(b.strands)
        return homflypt_trace_closure(spec.framed(b), params)
    if spec.kind is ClosureKind.PLAT:
        spec.validate(b.strands)
        out = jones_plat(spec.framed(b), params)
        return InvariantValue(out.value, out.normalization, params, spec, out.wall_time)
    return jones_generalized_closure(b, spec, params)
