"""Compile qubit circuits into braids through the path encoding in V_[2n,2n] at k = 2.

One qubit lives on four strands: its two basis states are the tableaux ``t0 = (0,1,0,1)`` and
``t1 = (0,0,1,1)`` (row sequences), and n qubits are their concatenations inside the rectangular
shape [2n, 2n]. A two-qubit gate becomes a target on the block V_[4,4] and is approximated by a
word in B_8, which is then shifted four strands per qubit.

Gate approximation steers in the Lie algebra of SU(V_[4,4]). Balanced words in sigma_1, sigma_2
act on the first three strands as ``u (x) 1`` on the pairs of tableaux that start with
(0,0,1) / (0,1,0) and trivially elsewhere. Conjugating that sector by short B_8 words gives a
spanning family of directions; each Newton step solves for coefficients, turns every group of
coefficients into an SU(2) element, approximates it by a Solovay-Kitaev word and conjugates back.
"""

from __future__ import annotations

import functools
import math
import time
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .braid import BraidWord
from .invariants import jones_plat
from .rep import apply_braid, braid_matrix, generator_unitary, irrep_block
from .sk import SU2Approximator
from .young import RootParams, Tableau

__all__ = [
    "GATES",
    "Gate",
    "QuantumCircuit",
    "CircuitParseError",
    "ExcludedRoot",
    "EpsilonUnreachable",
    "parse_circuit",
    "format_circuit",
    "check_root",
    "qubit_tableau",
    "qubit_basis",
    "encoded_indices",
    "embed_gate",
    "CompilerConfig",
    "GateApproximation",
    "GateCompiler",
    "gate_compiler",
    "approximate_gate",
    "CompiledBraid",
    "compile_circuit",
    "VerificationReport",
    "verify_compiled",
    "encoded_action",
    "encoded_distance",
    "word_net",
    "net_distance",
]

_W = np.exp(1j * math.pi / 4)

#: Built-in two-qubit gates, each scaled to unit determinant. Basis order is |x1 x2> with x1 the
#: more significant bit.
GATES: dict[str, np.ndarray] = {
    # e^{i pi/4} diag(1, 1, 1, -1)
    "cz": _W * np.diag([1, 1, 1, -1]).astype(complex),
    # e^{i pi/4} CNOT with the first qubit as control
    "cnot": _W * np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    # iSWAP
    "swap-like": np.array([[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex),
}

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class CircuitParseError(ValueError):
    """Malformed circuit text; ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ExcludedRoot(ValueError):
    pass


class EpsilonUnreachable(RuntimeError):
    """The requested accuracy was not met; the best word found is kept."""

    def __init__(self, message: str, best_distance: float, best_word: BraidWord | None = None):
        super().__init__(message)
        self.best_distance = best_distance
        self.best_word = best_word


def check_root(l: int) -> None:
    if l < 5 or l == 6:
        raise ExcludedRoot(f"excluded root: l = {l} (need l >= 5 and l != 6)")


def _check_gate(m: np.ndarray, what: str) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"{what}: expected a 4x4 matrix")
    if np.abs(m.conj().T @ m - np.eye(4)).max() > 1e-12:
        raise ValueError(f"{what}: matrix is not unitary to 1e-12")
    if abs(np.linalg.det(m) - 1) >= 1e-10:
        raise ValueError(f"{what}: determinant is not 1")
    return m


@dataclass(frozen=True, eq=False)
class Gate:
    matrix: np.ndarray
    pair: int
    name: str | None = None


@dataclass
class QuantumCircuit:
    """``n`` qubits and a gate list; gate ``pair = i`` acts on qubits i and i+1 (1-based)."""

    n: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one qubit")
        checked = []
        for g in self.gates:
            if not 1 <= g.pair <= self.n - 1:
                raise ValueError(f"gate position {g.pair} outside [1, {self.n - 1}]")
            checked.append(Gate(_check_gate(g.matrix, f"gate on pair {g.pair}"), g.pair, g.name))
        self.gates = checked

    def add(self, gate: str | np.ndarray, pair: int) -> "QuantumCircuit":
        name = gate if isinstance(gate, str) else None
        m = GATES[gate] if isinstance(gate, str) else gate
        g = Gate(_check_gate(m, f"gate on pair {pair}"), pair, name)
        if not 1 <= pair <= self.n - 1:
            raise ValueError(f"gate position {pair} outside [1, {self.n - 1}]")
        self.gates.append(g)
        return self

    def gate_operator(self, g: Gate) -> np.ndarray:
        i = g.pair
        return np.kron(np.kron(np.eye(2 ** (i - 1)), g.matrix), np.eye(2 ** (self.n - i - 1)))

    def unitary(self) -> np.ndarray:
        """U = U_m ... U_1 on 2^n amplitudes, the first gate applied first."""
        u = np.eye(2 ** self.n, dtype=complex)
        for g in self.gates:
            u = self.gate_operator(g) @ u
        return u


def _parse_complex(tok: str) -> complex:
    return complex(tok.replace("i", "j").replace("I", "j"))


def parse_circuit(text: str) -> QuantumCircuit:
    """Parse ``qubits <n>`` followed by ``gate <pair> <name | 16 complex entries>`` lines.

    Entries are row-major Python-style complex literals (``1``, ``-0.5j``, ``0.7+0.7j``);
    ``#`` starts a comment.
    """
    n = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "qubits":
            if n is not None:
                raise CircuitParseError("duplicate qubits line", lineno)
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise CircuitParseError("expected 'qubits <positive int>'", lineno)
            n = int(parts[1])
        elif parts[0] == "gate":
            if n is None:
                raise CircuitParseError("gate before the qubits line", lineno)
            if len(parts) < 3:
                raise CircuitParseError("expected 'gate <pair> <name or 16 entries>'", lineno)
            try:
                pair = int(parts[1])
            except ValueError:
                raise CircuitParseError(f"bad pair index {parts[1]!r}", lineno) from None
            if not 1 <= pair <= n - 1:
                raise CircuitParseError(f"pair index {pair} outside [1, {n - 1}]", lineno)
            if len(parts) == 3:
                if parts[2] not in GATES:
                    raise CircuitParseError(f"unknown gate {parts[2]!r}", lineno)
                gates.append(Gate(GATES[parts[2]], pair, parts[2]))
                continue
            if len(parts) != 18:
                raise CircuitParseError("an explicit gate needs 16 entries", lineno)
            try:
                m = np.array([_parse_complex(t) for t in parts[2:]]).reshape(4, 4)
            except ValueError as exc:
                raise CircuitParseError(f"bad matrix entry ({exc})", lineno) from None
            try:
                m = _check_gate(m, "explicit gate")
            except ValueError as exc:
                raise CircuitParseError(str(exc), lineno) from None
            gates.append(Gate(m, pair))
        else:
            raise CircuitParseError(f"unknown directive {parts[0]!r}", lineno)
    if n is None:
        raise CircuitParseError("missing qubits line", 1)
    return QuantumCircuit(n, gates)


def format_circuit(c: QuantumCircuit) -> str:
    lines = [f"qubits {c.n}"]
    for g in c.gates:
        if g.name is not None:
            lines.append(f"gate {g.pair} {g.name}")
        else:
            lines.append(f"gate {g.pair} " + " ".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in g.matrix.ravel()))
    return "\n".join(lines) + "\n"


_QUBIT_ROWS = ((0, 1, 0, 1), (0, 0, 1, 1))


def qubit_tableau(bits) -> Tableau:
    """The tableau t_{x1} ... t_{xn} for a bit sequence."""
    rows: tuple[int, ...] = ()
    for x in bits:
        rows += _QUBIT_ROWS[int(x)]
    return Tableau(rows)


def qubit_basis(n: int, l: int) -> list[Tableau]:
    """Computational basis tableaux, indexed by the integer with bits x1 (most significant) ... xn."""
    check_root(l)
    params = RootParams(2, l)
    out = []
    for x in range(2 ** n):
        bits = [(x >> (n - 1 - j)) & 1 for j in range(n)]
        t = qubit_tableau(bits)
        assert t.is_admissible(params)
        out.append(t)
    return out


def encoded_indices(n: int, l: int) -> np.ndarray:
    block = irrep_block((2 * n, 2 * n), RootParams(2, l))
    return np.array([block.index(t) for t in qubit_basis(n, l)], dtype=np.int_)


def embed_gate(v: np.ndarray, l: int) -> np.ndarray:
    """V on the encoded 4-dim subspace of V_[4,4], c * identity on the rest, with det 1."""
    v = np.asarray(v, dtype=complex)
    idx = encoded_indices(2, l)
    dim = irrep_block((4, 4), RootParams(2, l)).dim
    c = np.linalg.det(v) ** (-1.0 / (dim - 4))
    out = c * np.eye(dim, dtype=complex)
    out[np.ix_(idx, idx)] = v
    return out


@dataclass(frozen=True)
class CompilerConfig:
    """Engineering constants of the gate approximation.

    Attributes:
        net_depth: Length of the breadth-first B_8 net used for exact hits and starting points.
        conjugator_depth: Length of the conjugating words that generate the direction family.
        sk_net_depth: Length of the balanced sigma_1/sigma_2 net used by the SU(2) base search.
        sk_depth: Solovay-Kitaev recursion depth per factor.
        max_rounds: Refinement rounds (angle solve plus word synthesis) before giving up.
        max_letters: Word-length budget per gate.
    """

    net_depth: int = 3
    conjugator_depth: int = 2
    sk_net_depth: int = 12
    sk_depth: int = 1
    max_rounds: int = 4
    max_letters: int = 1_000_000


@dataclass
class GateApproximation:
    word: BraidWord
    distance: float
    subspace_distance: float
    rounds: int
    wall_time: float


def _herm_log(r: np.ndarray) -> np.ndarray:
    """Traceless Hermitian K with exp(iK) = r for r in SU(d)."""
    t, z = scipy.linalg.schur(r, output="complex")
    theta = np.angle(np.diag(t))
    k = int(round(theta.sum() / (2 * math.pi)))
    order = np.argsort(theta)
    if k > 0:
        theta[order[-k:]] -= 2 * math.pi
    elif k < 0:
        theta[order[:-k]] += 2 * math.pi
    return (z * theta) @ z.conj().T


def _su2(c) -> np.ndarray:
    """exp(i (c_x X + c_y Y + c_z Z))."""
    return scipy.linalg.expm(1j * (c[0] * _PAULI[0] + c[1] * _PAULI[1] + c[2] * _PAULI[2]))


def _su2_jacobian(c, h: float = 1e-6) -> np.ndarray:
    """M[a, b]: Pauli-b component of -i (d/dc_a exp(i c.sigma)) exp(i c.sigma)^dagger."""
    u_inv = _su2(c).conj().T
    out = np.zeros((3, 3))
    for a in range(3):
        e = np.zeros(3)
        e[a] = h
        d = -1j * (_su2(c + e) - _su2(c - e)) / (2 * h) @ u_inv
        out[a] = [np.trace(d @ p).real / 2 for p in _PAULI]
    return out


def _inverse(w: tuple) -> tuple:
    return tuple((i, -s) for i, s in reversed(w))


def _vec(h: np.ndarray) -> np.ndarray:
    return np.concatenate([h.real.ravel(), h.imag.ravel()])


def word_net(depth: int, l: int, strands: int = 8, shape=(4, 4)):
    """Breadth-first words over all sigma_i^{+-1}, deduplicated on a coarse grid of their images.

    Returns:
        (words, matrices) with words as letter tuples, shortest first.
    """
    block = irrep_block(shape, RootParams(2, l))
    letters = [(i, s) for i in range(1, strands) for s in (1, -1)]
    gm = {L: generator_unitary(L[0], L[1], block) for L in letters}
    words = [()]
    mats = [np.eye(block.dim, dtype=complex)]
    seen = {np.round(mats[0], 8).tobytes()}
    frontier = [0]
    for _ in range(depth):
        nxt = []
        for j in frontier:
            w = words[j]
            for L in letters:
                if w and w[-1] == (L[0], -L[1]):
                    continue
                m = mats[j] @ gm[L]
                key = np.round(m, 8).tobytes()
                if key in seen:
                    continue
                seen.add(key)
                words.append(w + (L,))
                mats.append(m)
                nxt.append(len(words) - 1)
        frontier = nxt
    return words, np.array(mats)


class GateCompiler:
    """Approximates SU(V_[4,4]) targets by B_8 words at a fixed l."""

    def __init__(self, l: int, config: CompilerConfig = CompilerConfig()):
        check_root(l)
        self.l = l
        self.config = config
        self.params = RootParams(2, l)
        self.block = irrep_block((4, 4), self.params)
        self.dim = self.block.dim
        self.encoded = encoded_indices(2, l)
        sub = irrep_block((2, 1), self.params)
        gens = {(i, s): generator_unitary(i, s, sub) for i in (1, 2) for s in (1, -1)}
        self.su2 = SU2Approximator(gens, -self.params.q, depth=config.sk_net_depth)
        self._sector_pairs()
        self.net_words, self.net_mats = word_net(config.net_depth, l)
        self.net_dets = np.linalg.det(self.net_mats)
        self._directions()

    def _sector_pairs(self) -> None:
        j0, j1 = [], []
        for j, t in enumerate(self.block.basis):
            if t.rows[:3] == (0, 0, 1):
                j0.append(j)
                j1.append(self.block.index(Tableau((0, 1, 0) + t.rows[3:])))
        self.j0, self.j1 = np.array(j0), np.array(j1)

    def sector_embed(self, u: np.ndarray) -> np.ndarray:
        """(u (x) 1) on the sector pairs, identity elsewhere."""
        out = np.eye(self.dim, dtype=complex)
        for a, ja in enumerate((self.j0, self.j1)):
            for b, jb in enumerate((self.j0, self.j1)):
                out[ja, jb] = u[a, b]
        return out

    def _sector_generator(self, p: np.ndarray) -> np.ndarray:
        return self.sector_embed(p) - self.sector_embed(np.zeros((2, 2)))

    def _directions(self) -> None:
        """Conjugators g whose Ad(pi(g)) images of the sector algebra span su(V_[4,4]).

        Krylov-style growth: a word is extended on the left by every letter only once it has
        contributed new directions, and it contributes when its three images have a component of
        size at least ``tol`` outside the current span. Larger tolerances give a better conditioned
        family; the ladder falls back to smaller ones if the search runs dry.
        """
        gens = [self._sector_generator(p) for p in _PAULI]
        letters = [(i, s) for i in range(1, 8) for s in (1, -1)]
        gm = {L: generator_unitary(L[0], L[1], self.block) for L in letters}
        target = self.dim ** 2 - 1
        for tol in (0.2, 0.05, 1e-3, 1e-6):
            basis = np.zeros((2 * self.dim ** 2, 0))
            accepted, mats = [], []
            queue = [((), np.eye(self.dim, dtype=complex))]
            qi = 0
            while qi < len(queue) and basis.shape[1] < target:
                w, m = queue[qi]
                qi += 1
                cols = np.array([_vec(m @ e @ m.conj().T) for e in gens]).T
                resid = cols - basis @ (basis.T @ cols)
                u, s, _ = np.linalg.svd(resid, full_matrices=False)
                k = int((s > tol).sum())
                if k == 0:
                    continue
                basis = np.hstack([basis, u[:, :k]])
                accepted.append(w)
                mats.append(m)
                for L in letters:
                    if not w or w[0] != (L[0], -L[1]):
                        queue.append(((L,) + w, gm[L] @ m))
            if basis.shape[1] >= target:
                break
        else:
            raise RuntimeError("sector conjugates do not span the special unitary algebra")
        self.conjugators = accepted
        self.conj_mats = mats
        self.dir_matrix = np.array([_vec(m @ e @ m.conj().T) for m in mats for e in gens]).T

    def full_distance(self, m: np.ndarray, target: np.ndarray) -> float:
        return float(np.linalg.norm(m - target, 2))

    def subspace_distance(self, m: np.ndarray, target: np.ndarray) -> float:
        idx = self.encoded
        return float(np.linalg.norm(m[np.ix_(idx, idx)] - target[np.ix_(idx, idx)], 2))

    def _start(self, target: np.ndarray):
        ok = np.abs(self.net_dets - np.linalg.det(target)) < 1e-9
        if not ok.any():
            return None
        dist = np.linalg.norm(self.net_mats - target, ord=2, axis=(1, 2))
        dist[~ok] = np.inf
        j = int(np.argmin(dist))
        return self.net_words[j], self.net_mats[j], float(dist[j])

    def _prefixes(self, angles: np.ndarray) -> list[np.ndarray]:
        out = [np.eye(self.dim, dtype=complex)]
        for gm, c in zip(self.conj_mats, angles):
            out.append(out[-1] @ gm @ self.sector_embed(_su2(c)) @ gm.conj().T)
        return out

    def _solve_angles(self, r: np.ndarray, tol: float = 1e-11, max_iter: int = 100) -> np.ndarray | None:
        """Angles c_j with prod_j Ad(g_j)(exp(i c_j . sigma) (x) 1) = r, by damped Gauss-Newton.

        The Jacobian is right-trivialized: moving c_j shifts the product by
        Ad(prefix_j g_j) of the sector image of the derivative of exp(i c_j . sigma).
        """
        gens = [self._sector_generator(p) for p in _PAULI]
        c = np.zeros((len(self.conj_mats), 3))
        pre = self._prefixes(c)
        res = np.linalg.norm(_herm_log(r @ pre[-1].conj().T), 2)
        for _ in range(max_iter):
            if res < tol:
                return c
            err = _herm_log(r @ pre[-1].conj().T)
            cols = []
            for j, (gm, cj) in enumerate(zip(self.conj_mats, c)):
                a = pre[j] @ gm
                base = np.array([_vec(a @ e @ a.conj().T) for e in gens])
                cols.append(_su2_jacobian(cj) @ base)
            jac = np.concatenate(cols).T
            step = np.linalg.lstsq(jac, _vec(err), rcond=None)[0].reshape(-1, 3)
            scale = min(1.0, 0.5 / max(np.abs(step).max(), 1e-300))
            while True:
                c_new = c + scale * step
                pre_new = self._prefixes(c_new)
                res_new = np.linalg.norm(_herm_log(r @ pre_new[-1].conj().T), 2)
                if res_new < res or scale < 1e-4:
                    break
                scale /= 2
            if res_new >= res:
                return None
            c, pre, res = c_new, pre_new, res_new
        return c if res < 1e-6 else None

    def approximate(self, v: np.ndarray, eps: float) -> GateApproximation:
        """Word w in B_8 with ||pi_[4,4](w) - target||_2 <= eps on the full block.

        Args:
            v: A 4x4 gate on the encoded subspace (embedded with a determinant-fixing phase on the
                complement) or a full-block target.
            eps: Operator-norm accuracy.

        Raises:
            EpsilonUnreachable: The Newton loop stalled or ran out of budget.
        """
        t0 = time.perf_counter()
        v = np.asarray(v, dtype=complex)
        target = embed_gate(v, self.l) if v.shape == (4, 4) else v
        if target.shape != (self.dim, self.dim):
            raise ValueError(f"target must be 4x4 or {self.dim}x{self.dim}")
        start = self._start(target)
        if start is None:
            raise EpsilonUnreachable("target determinant is not reachable", math.inf)
        word, m, dist = start
        best = (dist, word, m)
        rounds = 0
        while best[0] > eps and rounds < self.config.max_rounds:
            word, m = best[1], best[2]
            angles = self._solve_angles(target @ m.conj().T)
            if angles is None:
                break
            depth = self.config.sk_depth + min(rounds, 2)
            rounds += 1
            prefix: tuple = ()
            f_total = np.eye(self.dim, dtype=complex)
            for g, gm, cg in zip(self.conjugators, self.conj_mats, angles):
                w, um = self.su2.approximate(_su2(cg), depth)
                if not w:
                    continue
                prefix += g + w + _inverse(g)
                f_total = f_total @ gm @ self.sector_embed(um) @ gm.conj().T
            if len(prefix) + len(word) > self.config.max_letters:
                break
            new_m = f_total @ m
            new_dist = self.full_distance(new_m, target)
            if new_dist < best[0]:
                best = (new_dist, prefix + word, new_m)
        dist, word, _ = best
        bw = BraidWord(8, word)
        exact = braid_matrix(bw, self.block)
        dist = self.full_distance(exact, target)
        if dist > eps:
            raise EpsilonUnreachable(f"best distance {dist:.6g} exceeds eps = {eps:.6g}", dist, bw)
        return GateApproximation(bw, dist, self.subspace_distance(exact, target), rounds,
                                 time.perf_counter() - t0)


@functools.lru_cache(maxsize=8)
def gate_compiler(l: int, config: CompilerConfig = CompilerConfig()) -> GateCompiler:
    """Shared compiler instance per (l, config); construction builds the nets."""
    return GateCompiler(l, config)


def approximate_gate(v: np.ndarray, l: int, eps: float, config: CompilerConfig = CompilerConfig()) -> GateApproximation:
    check_root(l)
    return gate_compiler(l, config).approximate(v, eps)


@dataclass
class CompiledBraid:
    """A circuit compiled to a braid on 4n strands.

    Attributes:
        braid: The braid, whose representation approximates the circuit unitary.
        n: Qubit count.
        l: Root order.
        eps_target: Requested accuracy.
        eps_achieved: ||pi(b) restricted to encoded inputs - embedded U||_2, leakage included.
        gate_log: Per-gate records (pair, name, budget, achieved, letters).
        telescoping_bound: Sum of the per-gate achieved distances.
    """

    braid: BraidWord
    n: int
    l: int
    eps_target: float
    eps_achieved: float
    gate_log: list[dict]
    telescoping_bound: float
    wall_time: float = 0.0

    @property
    def success(self) -> bool:
        return self.eps_achieved <= self.eps_target

    def as_record(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "strands": self.braid.strands,
            "length": self.braid.length,
            "eps_target": self.eps_target,
            "eps_achieved": self.eps_achieved,
            "telescoping_bound": self.telescoping_bound,
            "success": bool(self.success),
            "gates": self.gate_log,
            "wall_time": self.wall_time,
        }


def encoded_action(b: BraidWord, n: int, l: int) -> np.ndarray:
    """Columns pi_[2n,2n](b)|x> for all computational states x, as a (dim, 2^n) array."""
    block = irrep_block((2 * n, 2 * n), RootParams(2, l))
    idx = encoded_indices(n, l)
    cols = np.zeros((block.dim, len(idx)), dtype=complex)
    cols[idx, np.arange(len(idx))] = 1.0
    return apply_braid(b, block, cols)


def encoded_distance(b: BraidWord, u: np.ndarray, n: int, l: int) -> float:
    out = encoded_action(b, n, l)
    out[encoded_indices(n, l)] -= u
    return float(np.linalg.norm(out, 2))


def compile_circuit(c: QuantumCircuit, l: int, eps: float, config: CompilerConfig = CompilerConfig()) -> CompiledBraid:
    """Braid on 4n strands approximating the circuit to operator-norm eps.

    Every gate gets the budget eps/m; the telescoping sum bounds the total.

    Raises:
        ExcludedRoot: l < 5 or l = 6.
        EpsilonUnreachable: Some gate could not be approximated within its budget.
    """
    check_root(l)
    t0 = time.perf_counter()
    strands = 4 * c.n
    m = len(c.gates)
    budget = eps / m if m else eps
    braid = BraidWord.identity(strands)
    log = []
    for g in c.gates:
        try:
            res = approximate_gate(g.matrix, l, budget, config)
        except EpsilonUnreachable as exc:
            raise EpsilonUnreachable(f"gate on pair {g.pair}: {exc}", exc.best_distance, exc.best_word) from None
        # later gates act after earlier ones, so they multiply on the left
        braid = res.word.shifted(4 * (g.pair - 1), strands) * braid
        log.append({"pair": g.pair, "name": g.name, "eps_budget": budget, "eps_achieved": res.distance,
                    "subspace_distance": res.subspace_distance, "letters": res.word.length})
    achieved = encoded_distance(braid, c.unitary(), c.n, l) if m else 0.0
    return CompiledBraid(braid, c.n, l, eps, achieved, log, sum(e["eps_achieved"] for e in log),
                         time.perf_counter() - t0)


@dataclass
class VerificationReport:
    """Both sides of the amplitude/plat comparison for a compiled circuit.

    ``amplitude_sq`` is |<0...0|U|0...0>|^2; ``plat_sq`` is (|J(plat(b))| / [2]^(2n-1))^2, the
    squared normalized plat value; ``literal`` is |J|^2 / [2]^(2n-1) for reference. The check
    passes iff the squared-amplitude gap is at most the recomputed operator-norm gap.
    """

    amplitude_sq: float
    jones_abs: float
    plat_sq: float
    literal: float
    gap: float
    operator_gap: float
    eps_target: float

    @property
    def passed(self) -> bool:
        return self.gap <= self.operator_gap + 1e-12

    def as_record(self) -> dict:
        return {
            "amplitude_sq": self.amplitude_sq,
            "jones_abs": self.jones_abs,
            "plat_sq": self.plat_sq,
            "literal": self.literal,
            "gap": self.gap,
            "operator_gap": self.operator_gap,
            "eps_target": self.eps_target,
            "within_target": self.gap <= self.eps_target,
            "passed": self.passed,
        }


def verify_compiled(cb: CompiledBraid, c: QuantumCircuit, max_qubits: int = 3) -> VerificationReport:
    """Recompute both sides from the braid itself, so a tampered braid reports its true gap."""
    if c.n > max_qubits:
        raise ValueError(f"exact verification is limited to {max_qubits} qubits")
    if cb.braid.strands != 4 * c.n:
        raise ValueError("braid and circuit disagree on the qubit count")
    params = RootParams(2, cb.l)
    u = c.unitary()
    amp_sq = float(abs(u[0, 0]) ** 2)
    j = float(abs(jones_plat(cb.braid, params).value))
    norm = params.q2 ** (2 * c.n - 1)
    plat_sq = (j / norm) ** 2
    op_gap = encoded_distance(cb.braid, u, c.n, cb.l)
    return VerificationReport(amp_sq, j, plat_sq, j ** 2 / norm, abs(amp_sq - plat_sq), op_gap, cb.eps_target)


def net_distance(targets, l: int, depth: int) -> np.ndarray:
    """For each 4x4 target, the least ||P pi(w) P^dagger - V||_2 over the depth-limited B_8 net."""
    check_root(l)
    _, mats = word_net(depth, l)
    idx = encoded_indices(2, l)
    sub = mats[:, idx][:, :, idx]
    return np.array([np.linalg.norm(sub - np.asarray(v), ord=2, axis=(1, 2)).min() for v in targets])
