"""Solovay-Kitaev approximation in SU(2) by balanced words over a two-generator braid group.

SU(2) elements are handled as unit quaternions ``(a, b, c, d)`` for the matrix
``[[a + ib, -c + id], [c + id, a - ib]]``; for such matrices the operator-norm distance equals the
Euclidean distance between quaternions. The base approximation is a meet-in-the-middle search over
a breadth-first net of words with exponent sum zero; the group-commutator recursion refines it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

__all__ = [
    "to_quat",
    "from_quat",
    "axis_angle",
    "rotation",
    "gc_decompose",
    "BalancedNet",
    "SU2Approximator",
]

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

Letter = tuple[int, int]


def to_quat(u: np.ndarray) -> np.ndarray:
    """Quaternion of an SU(2) matrix (or a stack of them)."""
    u = np.asarray(u)
    return np.stack([u[..., 0, 0].real, u[..., 0, 0].imag, u[..., 1, 0].real, u[..., 1, 0].imag], axis=-1)


def from_quat(x: np.ndarray) -> np.ndarray:
    a, b, c, d = np.moveaxis(np.asarray(x, dtype=float), -1, 0)
    out = np.empty(np.shape(a) + (2, 2), dtype=complex)
    out[..., 0, 0] = a + 1j * b
    out[..., 0, 1] = -c + 1j * d
    out[..., 1, 0] = c + 1j * d
    out[..., 1, 1] = a - 1j * b
    return out


def rotation(axis, angle: float) -> np.ndarray:
    """exp(-i angle/2 n.sigma) for a unit axis n."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    ns = n[0] * _PAULI[0] + n[1] * _PAULI[1] + n[2] * _PAULI[2]
    return math.cos(angle / 2) * np.eye(2) - 1j * math.sin(angle / 2) * ns


def axis_angle(u: np.ndarray) -> tuple[np.ndarray, float]:
    """(n, theta) with u = exp(-i theta/2 n.sigma), theta in [0, 2 pi]."""
    a = float(np.clip(((u[0, 0] + u[1, 1]) / 2).real, -1.0, 1.0))
    half = math.acos(a)
    s = math.sin(half)
    if s < 1e-12:
        return np.array([0.0, 0.0, 1.0]), 2 * half
    # traceless part: u - a I = -i s n.sigma
    m = (u - a * np.eye(2)) / (-1j * s)
    n = np.array([m[0, 1].real, m[1, 0].imag, m[0, 0].real])
    return n / np.linalg.norm(n), 2 * half


def gc_decompose(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Balanced group commutator: v, w with v w v^dagger w^dagger = u."""
    n, theta = axis_angle(u)
    phi = 2 * math.asin(math.sqrt(math.sqrt(max(0.0, 0.5 - 0.5 * math.cos(theta / 2)))))
    v = rotation([1, 0, 0], phi)
    w = rotation([0, 1, 0], phi)
    c = v @ w @ v.conj().T @ w.conj().T
    m, _ = axis_angle(c)
    cross = np.cross(m, n)
    sin_a = np.linalg.norm(cross)
    cos_a = float(np.dot(m, n))
    if sin_a < 1e-12:
        s = np.eye(2) if cos_a > 0 else rotation(_perpendicular(m), math.pi)
    else:
        s = rotation(cross, math.atan2(sin_a, cos_a))
    sd = s.conj().T
    return s @ v @ sd, s @ w @ sd


def _perpendicular(m: np.ndarray) -> np.ndarray:
    trial = np.array([1.0, 0.0, 0.0]) if abs(m[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    return np.cross(m, trial)


def _inverse_word(w: tuple[Letter, ...]) -> tuple[Letter, ...]:
    return tuple((i, -s) for i, s in reversed(w))


@dataclass
class BalancedNet:
    """Breadth-first net of words with exponent sum zero, deduplicated on their 2x2 images.

    Attributes:
        quats: (N, 4) quaternions of the net elements, shortest words first.
        words: Matching letter tuples.
    """

    quats: np.ndarray
    words: list[tuple[Letter, ...]]

    @classmethod
    def build(cls, generators: dict[Letter, np.ndarray], depth: int, det_factor: complex) -> "BalancedNet":
        """Enumerate reduced words up to ``depth`` and keep those with exponent sum zero.

        Args:
            generators: 2x2 images keyed by letter (i, sign); the inverse letters must be present.
            depth: Maximum word length.
            det_factor: det of the image of a positive letter; images are rescaled by
                det_factor^(-e/2) while enumerating so that all stored matrices are in SU(2).
        """
        letters = sorted(generators)
        half = np.sqrt(det_factor + 0j)
        gm = {L: generators[L] / (half if L[1] > 0 else 1 / half) for L in letters}
        mats = np.array([np.eye(2, dtype=complex)])
        esum = np.array([0])
        last = np.array([-1])
        parent = [np.array([-1])]
        letter_of = [np.array([-1])]
        seen = {(_key(mats[0]), 0)}
        all_mats, all_e = [mats], [esum]
        offsets = [0]
        total = 1
        for _ in range(depth):
            new_m, new_e, new_p, new_l = [], [], [], []
            for li, L in enumerate(letters):
                inv = letters.index((L[0], -L[1]))
                keep = last != inv
                if not keep.any():
                    continue
                m = mats[keep] @ gm[L]
                e = esum[keep] + L[1]
                idx = np.nonzero(keep)[0] + offsets[-1]
                for j in range(len(m)):
                    k = (_key(m[j]), int(e[j]))
                    if k in seen:
                        continue
                    seen.add(k)
                    new_m.append(m[j])
                    new_e.append(e[j])
                    new_p.append(idx[j])
                    new_l.append(li)
            if not new_m:
                break
            mats = np.array(new_m)
            esum = np.array(new_e)
            last = np.array(new_l)
            offsets.append(total)
            total += len(mats)
            all_mats.append(mats)
            all_e.append(esum)
            parent.append(np.array(new_p))
            letter_of.append(last)
        M = np.concatenate(all_mats)
        E = np.concatenate(all_e)
        P = np.concatenate(parent)
        Lo = np.concatenate(letter_of)
        keep = np.nonzero(E == 0)[0]
        words = []
        for j in keep:
            w = []
            x = j
            while P[x] >= 0:
                w.append(letters[Lo[x]])
                x = P[x]
            words.append(tuple(reversed(w)))
        return cls(to_quat(M[keep]), words)

    def __len__(self) -> int:
        return len(self.words)


def _key(m: np.ndarray) -> tuple:
    return tuple(np.round(to_quat(m), 9).tolist())


class SU2Approximator:
    """Maps SU(2) targets to balanced words: meet-in-the-middle base plus Solovay-Kitaev recursion."""

    def __init__(self, generators: dict[Letter, np.ndarray], det_factor: complex, depth: int = 12,
                 left_size: int = 3000):
        self.generators = generators
        self.net = BalancedNet.build(generators, depth, det_factor)
        self.tree = cKDTree(self.net.quats)
        self.left = min(left_size, len(self.net))
        self._left_mats_inv = from_quat(self.net.quats[: self.left]).conj().transpose(0, 2, 1)

    def word_matrix(self, word) -> np.ndarray:
        m = np.eye(2, dtype=complex)
        for L in word:
            m = m @ self.generators[L]
        return m

    def base(self, u: np.ndarray) -> tuple[tuple[Letter, ...], float]:
        """Best product a*b with a among the shortest net words and b anywhere in the net."""
        queries = to_quat(self._left_mats_inv @ u)
        dist, idx = self.tree.query(queries)
        j = int(np.argmin(dist))
        a, b = self.net.words[j], self.net.words[int(idx[j])]
        return a + b, float(dist[j])

    def approximate(self, u: np.ndarray, sk_depth: int = 1) -> tuple[tuple[Letter, ...], np.ndarray]:
        """Word and its exact image for an SU(2) target."""
        if sk_depth <= 0:
            w, _ = self.base(u)
            return w, self.word_matrix(w)
        w_prev, u_prev = self.approximate(u, sk_depth - 1)
        v, w = gc_decompose(u @ u_prev.conj().T)
        wv, mv = self.approximate(v, sk_depth - 1)
        ww, mw = self.approximate(w, sk_depth - 1)
        word = wv + ww + _inverse_word(wv) + _inverse_word(ww) + w_prev
        mat = mv @ mw @ mv.conj().T @ mw.conj().T @ u_prev
        if np.linalg.norm(mat - u, 2) > np.linalg.norm(u_prev - u, 2):
            return w_prev, u_prev
        return word, mat
