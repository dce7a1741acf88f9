"""Unitary Jones-Wenzl representations of braid generators in the tableau basis.

Each irreducible block stores, per table row, a partner index, a diagonal coefficient and an
off-diagonal coefficient, so that one letter acts as
``new[j] = diag[j] * v[j] + off[j] * v[partner[j]]``. Table rows are laid out as
``3 * (i - 1) + {0: sigma_i, 1: sigma_i^-1, 2: E_i = [2] e_i}``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .braid import BraidWord, TangleWord
from .young import (
    InadmissibleShape,
    RootParams,
    Tableau,
    YoungDiagram,
    a_coefficient,
    enumerate_tableaux,
    rectangular_tableau,
)

__all__ = [
    "IrrepBlock",
    "RepVector",
    "irrep_block",
    "projection_e",
    "generator_unitary",
    "apply_braid",
    "braid_matrix",
    "cupcap_image",
    "embed_tensor",
    "matrix_to_csv",
    "DENSE_CAP",
]

DENSE_CAP = 4096

_PLUS, _MINUS, _CUPCAP = 0, 1, 2


def _row(i: int, kind: int) -> int:
    return 3 * (i - 1) + kind


@dataclass(frozen=True, eq=False)
class IrrepBlock:
    """The representation pi_lambda restricted to one (k,l)-diagram.

    Attributes:
        shape: The diagram lambda.
        params: Root-of-unity parameters.
        basis: Tableaux of shape lambda in canonical order.
        pairs: ``pairs[i-1]`` lists ``(j, j2, d)`` for every 2x2 cell of generator i, with d the
            axial distance of ``basis[j]``.
        fixed: ``fixed[i-1]`` lists ``(j, d)`` for every 1x1 cell of generator i.
    """

    shape: YoungDiagram
    params: RootParams
    basis: tuple[Tableau, ...]
    pairs: tuple[tuple[tuple[int, int, int], ...], ...]
    fixed: tuple[tuple[tuple[int, int], ...], ...]
    partner: np.ndarray = field(repr=False)
    diag: np.ndarray = field(repr=False)
    off: np.ndarray = field(repr=False)
    e_diag: np.ndarray = field(repr=False)
    e_off: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return self.shape.size

    def index(self, t: Tableau) -> int:
        return self._index[t.rows]

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {t.rows: j for j, t in enumerate(self.basis)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def word_rows(self, b: BraidWord) -> np.ndarray:
        if b.strands != self.n:
            raise ValueError(f"braid on {b.strands} strands applied to a shape with {self.n} boxes")
        return np.array([_row(i, _PLUS if s > 0 else _MINUS) for i, s in b.letters], dtype=np.int_)


def _build(shape: YoungDiagram, params: RootParams) -> IrrepBlock:
    basis = tuple(enumerate_tableaux(shape, params))
    index = {t.rows: j for j, t in enumerate(basis)}
    n, dim = shape.size, len(basis)
    rows = max(3 * (n - 1), 1)
    partner = np.tile(np.arange(dim, dtype=np.int_), (rows, 1))
    e_diag = np.zeros((rows, dim))
    e_off = np.zeros((rows, dim))
    all_pairs, all_fixed = [], []
    for i in range(1, n):
        pairs, fixed = [], []
        for j, t in enumerate(basis):
            d = t.axial_distance(i)
            s = t.swapped(i)
            j2 = index.get(s.rows) if s is not None else None
            if j2 is not None:
                a = a_coefficient(d, params)
                e_diag[_row(i, 0), j] = a
                e_off[_row(i, 0), j] = math.sqrt(max(a * (1.0 - a), 0.0))
                partner[[_row(i, k) for k in range(3)], j] = j2
                if j < j2:
                    pairs.append((j, j2, d))
            else:
                # 1x1 cell; d = +1 (same column) gives 1, d = -1 (same row) gives 0, and a
                # neighbour cut off by the level bound gives a(d) in {0, 1}
                e_diag[_row(i, 0), j] = 1.0 if d == 1 else 0.0 if d == -1 else round(a_coefficient(d, params))
                fixed.append((j, d))
        all_pairs.append(tuple(pairs))
        all_fixed.append(tuple(fixed))
    q = params.q
    diag = np.zeros((rows, dim), dtype=complex)
    off = np.zeros((rows, dim), dtype=complex)
    for i in range(1, n):
        e_d, e_o = e_diag[_row(i, 0)].copy(), e_off[_row(i, 0)].copy()
        for kind, c in ((_PLUS, q), (_MINUS, q.conjugate())):
            diag[_row(i, kind)] = c - (1 + c) * e_d
            off[_row(i, kind)] = -(1 + c) * e_o
        diag[_row(i, _CUPCAP)] = params.q2 * e_d
        off[_row(i, _CUPCAP)] = params.q2 * e_o
        e_diag[_row(i, _CUPCAP)] = e_d
        e_off[_row(i, _CUPCAP)] = e_o
    for a in (partner, diag, off, e_diag, e_off):
        a.setflags(write=False)
    return IrrepBlock(shape, params, basis, tuple(all_pairs), tuple(all_fixed),
                      partner, diag, off, e_diag, e_off)


@lru_cache(maxsize=512)
def _cached_block(parts: tuple[int, ...], params: RootParams) -> IrrepBlock:
    return _build(YoungDiagram(parts), params)


def irrep_block(shape, params: RootParams) -> IrrepBlock:
    """Build (or fetch from cache) the block for ``shape``; raises InadmissibleShape if needed."""
    shape = shape if isinstance(shape, YoungDiagram) else YoungDiagram(tuple(shape))
    if not params.admissible(shape.parts):
        raise InadmissibleShape(f"{shape} is not ({params.k},{params.l})-admissible")
    return _cached_block(shape.parts, params)


def _check_index(i: int, block: IrrepBlock) -> None:
    if not 1 <= i <= block.n - 1:
        raise IndexError(f"generator index {i} outside [1, {block.n - 1}]")


def _dense_from_row(block: IrrepBlock, diag: np.ndarray, off: np.ndarray, partner: np.ndarray) -> np.ndarray:
    if block.dim > DENSE_CAP:
        raise MemoryError(f"dimension {block.dim} exceeds the dense cap {DENSE_CAP}")
    m = np.zeros((block.dim, block.dim), dtype=np.result_type(diag, off))
    j = np.arange(block.dim)
    m[j, j] += diag
    moved = partner != j
    m[j[moved], partner[moved]] += off[moved]
    return m


def projection_e(i: int, block: IrrepBlock) -> np.ndarray:
    """Dense real symmetric idempotent e_i."""
    _check_index(i, block)
    r = _row(i, 0)
    return _dense_from_row(block, block.e_diag[r], block.e_off[r], block.partner[r])


def generator_unitary(i: int, sign: int, block: IrrepBlock) -> np.ndarray:
    """Dense image of sigma_i^sign, built as q - (1 + q) e_i (conjugated for sign -1)."""
    _check_index(i, block)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    r = _row(i, _PLUS if sign > 0 else _MINUS)
    return _dense_from_row(block, block.diag[r], block.off[r], block.partner[r])


def cupcap_image(i: int, block: IrrepBlock) -> np.ndarray:
    """Dense image E_i = [2] e_i of the cup-cap omega_i; only defined for k = 2."""
    if block.params.k != 2:
        raise NotImplementedError("cup-cap images are only defined for k = 2")
    return block.params.q2 * projection_e(i, block)


@dataclass
class RepVector:
    block: IrrepBlock
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.block.dim,):
            raise ValueError("amplitude vector has the wrong length")

    @classmethod
    def basis_state(cls, block: IrrepBlock, t: Tableau) -> "RepVector":
        v = np.zeros(block.dim, dtype=complex)
        v[block.index(t)] = 1.0
        return cls(block, v)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def _apply_rows(block: IrrepBlock, rows: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(vecs, dtype=complex).copy()
    if out.ndim == 1:
        out2 = out.reshape(-1, 1)
        kernels.apply_word(block.partner, block.diag, block.off, rows, out2)
        return out2.reshape(-1)
    kernels.apply_word(block.partner, block.diag, block.off, rows, out)
    return out


def apply_braid(b: BraidWord, block: IrrepBlock, v) -> RepVector | np.ndarray:
    """pi(b) v with pi(b) = pi(l_1) pi(l_2) ... pi(l_m); the last letter acts first.

    ``v`` may be a RepVector, a vector, or a (dim, batch) array of column vectors.
    """
    rows = block.word_rows(b)[::-1].copy()
    if isinstance(v, RepVector):
        if v.block is not block:
            raise ValueError("vector belongs to a different block")
        return RepVector(block, _apply_rows(block, rows, v.amplitudes))
    return _apply_rows(block, rows, v)


def apply_tangle(w: TangleWord, block: IrrepBlock, vecs: np.ndarray) -> np.ndarray:
    """pi(b w) applied to column vectors (cup-caps act first)."""
    if w.strands != block.n:
        raise ValueError("strand/shape mismatch")
    if w.cupcap_part and block.params.k != 2:
        raise NotImplementedError("cup-cap images are only defined for k = 2")
    rows = np.concatenate([
        block.word_rows(w.braid_part),
        np.array([_row(i, _CUPCAP) for i in w.cupcap_part], dtype=np.int_),
    ])[::-1].copy()
    return _apply_rows(block, rows, vecs)


def braid_matrix(b: BraidWord | TangleWord, block: IrrepBlock) -> np.ndarray:
    """Dense pi(b), obtained by applying the word to the identity."""
    if block.dim > DENSE_CAP:
        raise MemoryError(f"dimension {block.dim} exceeds the dense cap {DENSE_CAP}")
    eye = np.eye(block.dim, dtype=complex)
    if isinstance(b, TangleWord):
        return apply_tangle(b, block, eye)
    return apply_braid(b, block, eye)


def block_trace(b: BraidWord | TangleWord, block: IrrepBlock) -> complex:
    """Tr pi(b), via column-batched sparse application."""
    total = 0j
    step = 256
    for start in range(0, block.dim, step):
        stop = min(block.dim, start + step)
        cols = np.zeros((block.dim, stop - start), dtype=complex)
        cols[np.arange(start, stop), np.arange(stop - start)] = 1.0
        if isinstance(b, TangleWord):
            out = apply_tangle(b, block, cols)
        else:
            out = apply_braid(b, block, cols)
        total += complex(np.trace(out[start:stop]))
    return total


def embed_tensor(t: Tableau, t2: Tableau, params: RootParams | None = None) -> Tableau:
    """The tableau tt': entries of t2 shifted by the size of t and placed to its right."""
    out = t.concat(t2)
    if params is not None and not out.is_admissible(params):
        raise InadmissibleShape(f"{out} is not ({params.k},{params.l})-admissible")
    return out


def matrix_to_csv(m: np.ndarray, tol: float = 0.0) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "re", "im"])
    for (r, c), z in np.ndenumerate(m):
        if abs(z) > tol:
            w.writerow([r, c, f"{z.real:.15g}", f"{z.imag:.15g}"])
    return buf.getvalue()


__all__ += ["apply_tangle", "block_trace", "rectangular_tableau"]
