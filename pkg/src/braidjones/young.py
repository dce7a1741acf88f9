"""Quantum integers, (k, l)-restricted Young diagrams and tableaux, and Markov weights.

A tableau is stored by its row sequence ``rows[i]`` = row (0-based) of the
box numbered ``i + 1``; the row sequence determines the tableau uniquely and
doubles as the path through the restricted Young graph.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator

import numpy as np

__all__ = [
    "RootParams",
    "quantum_integer",
    "a_coefficient",
    "DegenerateAxialDistance",
    "InadmissibleShape",
    "YoungDiagram",
    "Tableau",
    "YoungGraph",
    "enumerate_diagrams",
    "enumerate_tableaux",
    "sample_tableau",
    "markov_weight",
    "MarkovWeightTable",
    "hook_length",
    "rectangular_tableau",
]


class InadmissibleShape(ValueError):
    pass


class DegenerateAxialDistance(ArithmeticError):
    pass


def quantum_integer(d: int, l: int) -> float:
    """[d]_l = sin(pi d / l) / sin(pi / l)."""
    if l < 2:
        raise ValueError("quantum integers need l >= 2")
    return math.sin(math.pi * d / l) / math.sin(math.pi / l)


@dataclass(frozen=True)
class RootParams:
    """The pair (k, l) and the root of unity q = exp(2 pi i / l)."""

    k: int
    l: int

    def __post_init__(self):
        if not (isinstance(self.k, int) and isinstance(self.l, int)):
            raise TypeError("k and l must be integers")
        if not 2 <= self.k < self.l:
            raise ValueError(f"need 2 <= k < l, got k={self.k}, l={self.l}")

    @property
    def q(self) -> complex:
        return cmath.exp(2j * math.pi / self.l)

    def q_pow(self, half_exponent: float) -> complex:
        """q**(half_exponent) on the principal branch q^(1/2) = exp(i pi / l)."""
        return cmath.exp(2j * math.pi * half_exponent / self.l)

    def qint(self, d: int) -> float:
        return quantum_integer(d, self.l)

    @property
    def qk(self) -> float:
        return self.qint(self.k)

    @property
    def q2(self) -> float:
        return self.qint(2)

    @property
    def tau(self) -> float:
        return self.q2 ** -2

    def admissible(self, parts: tuple[int, ...]) -> bool:
        if len(parts) > self.k:
            return False
        if not parts:
            return True
        last = parts[self.k - 1] if len(parts) >= self.k else 0
        return parts[0] - last <= self.l - self.k


def a_coefficient(d: int, params: RootParams) -> float:
    """a_l(d) = [d+1] / ([2] [d]); raises on a vanishing denominator."""
    qd = params.qint(d)
    if abs(qd) < 1e-12:
        raise DegenerateAxialDistance(f"[{d}]_{params.l} vanishes")
    return params.qint(d + 1) / (params.q2 * qd)


@dataclass(frozen=True, order=False)
class YoungDiagram:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def row(self, i: int) -> int:
        return self.parts[i] if i < len(self.parts) else 0

    def add_box(self, row: int) -> "YoungDiagram | None":
        """Diagram with one more box in ``row`` (0-based), or None if that is not a diagram."""
        if row > len(self.parts):
            return None
        if row > 0 and self.row(row - 1) <= self.row(row):
            return None
        parts = list(self.parts) + [0]
        parts[row] += 1
        return YoungDiagram(tuple(parts))

    def remove_box(self, row: int) -> "YoungDiagram | None":
        if self.row(row) == 0 or self.row(row + 1) >= self.row(row):
            return None
        parts = list(self.parts)
        parts[row] -= 1
        return YoungDiagram(tuple(parts))

    def __add__(self, other: "YoungDiagram") -> "YoungDiagram":
        m = max(len(self.parts), len(other.parts))
        return YoungDiagram(tuple(self.row(i) + other.row(i) for i in range(m)))

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    def boxes(self) -> Iterator[tuple[int, int]]:
        for i, length in enumerate(self.parts):
            for j in range(length):
                yield i, j


def _diagram(x) -> YoungDiagram:
    return x if isinstance(x, YoungDiagram) else YoungDiagram(tuple(x))


def hook_length(shape: YoungDiagram, i: int, j: int) -> int:
    """Arm + leg + 1 of the box in row i, column j (0-based)."""
    arm = shape.row(i) - j - 1
    leg = sum(1 for r in range(i + 1, len(shape.parts)) if shape.parts[r] > j)
    return arm + leg + 1


@dataclass(frozen=True)
class Tableau:
    """A standard tableau encoded by the row of each entry (0-based rows, entries 1..n)."""

    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        counts: list[int] = []
        for r in rows:
            if r > len(counts) or r < 0:
                raise ValueError(f"row sequence {rows} is not a standard tableau")
            if r == len(counts):
                counts.append(0)
            if r > 0 and counts[r - 1] <= counts[r]:
                raise ValueError(f"row sequence {rows} is not a standard tableau")
            counts[r] += 1
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """0-based column of each entry."""
        counts: dict[int, int] = {}
        cols = []
        for r in self.rows:
            cols.append(counts.get(r, 0))
            counts[r] = counts.get(r, 0) + 1
        return tuple(cols)

    @cached_property
    def shape(self) -> YoungDiagram:
        counts = [0] * (max(self.rows) + 1 if self.rows else 0)
        for r in self.rows:
            counts[r] += 1
        return YoungDiagram(tuple(counts))

    def path(self) -> list[YoungDiagram]:
        """Diagrams mu_0 = empty, mu_1, ..., mu_n = shape."""
        out = [YoungDiagram()]
        for r in self.rows:
            out.append(out[-1].add_box(r))
        return out

    def entries(self) -> list[list[int]]:
        """Box numbering as a list of rows."""
        grid: list[list[int]] = [[] for _ in range(len(self.shape.parts))]
        for idx, r in enumerate(self.rows, start=1):
            grid[r].append(idx)
        return grid

    @classmethod
    def from_entries(cls, grid: list[list[int]]) -> "Tableau":
        n = sum(len(row) for row in grid)
        rows = [None] * n
        for r, row in enumerate(grid):
            for v in row:
                rows[v - 1] = r
        if any(r is None for r in rows):
            raise ValueError("entries must be exactly 1..n")
        return cls(tuple(rows))

    def axial_distance(self, i: int) -> int:
        """d_i(t) = c_i - c_{i+1} - (r_i - r_{i+1}) for 1 <= i < n."""
        if not 1 <= i < self.n:
            raise IndexError(i)
        c, r = self.columns, self.rows
        return c[i - 1] - c[i] - (r[i - 1] - r[i])

    def swapped(self, i: int) -> "Tableau | None":
        """Numbering with i and i+1 exchanged, or None if it is not a standard tableau."""
        rows = list(self.rows)
        if rows[i - 1] == rows[i]:
            return None
        rows[i - 1], rows[i] = rows[i], rows[i - 1]
        try:
            return Tableau(tuple(rows))
        except ValueError:
            return None

    def is_admissible(self, params: RootParams) -> bool:
        return all(params.admissible(mu.parts) for mu in self.path())

    def concat(self, other: "Tableau") -> "Tableau":
        """Place ``other`` (entries shifted by n) to the right of this rectangular two-row tableau."""
        sh = self.shape.parts
        if len(sh) not in (0, 2) or (sh and sh[0] != sh[1]):
            raise InadmissibleShape(f"left factor must be a two-row rectangle, got {self.shape}")
        return Tableau(self.rows + other.rows)

    def __str__(self) -> str:
        return "/".join(",".join(str(v) for v in row) for row in self.entries())


def rectangular_tableau(p: int) -> Tableau:
    """t_{2p}: shape [p, p] filled column by column (1 over 2, 3 over 4, ...)."""
    return Tableau((0, 1) * p)


# ---------------------------------------------------------------- enumeration

def enumerate_diagrams(n: int, params: RootParams) -> list[YoungDiagram]:
    """All (k,l)-admissible diagrams with n boxes, descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, maxpart: int, acc: tuple[int, ...]):
        if remaining == 0:
            if params.admissible(acc):
                out.append(acc)
            return
        if len(acc) == params.k:
            return
        for p in range(min(remaining, maxpart), 0, -1):
            rec(remaining - p, p, acc + (p,))

    rec(n, n, ())
    out.sort(reverse=True)
    return [YoungDiagram(p) for p in out]


class YoungGraph:
    """Layers 0..n of the (k,l)-Young graph with exact path counts from the empty diagram."""

    def __init__(self, n: int, params: RootParams):
        self.n = n
        self.params = params
        self._pred_cache: dict[YoungDiagram, list[tuple[int, YoungDiagram]]] = {}
        self.layers: list[list[YoungDiagram]] = [enumerate_diagrams(j, params) for j in range(n + 1)]
        self.count: dict[YoungDiagram, int] = {YoungDiagram(): 1}
        for j in range(1, n + 1):
            for lam in self.layers[j]:
                self.count[lam] = sum(self.count.get(mu, 0) for mu in self.predecessors(lam))

    def predecessors(self, lam: YoungDiagram) -> list[YoungDiagram]:
        preds = []
        for r in range(len(lam.parts)):
            mu = lam.remove_box(r)
            if mu is not None and self.params.admissible(mu.parts):
                preds.append(mu)
        return preds

    def predecessor_rows(self, lam: YoungDiagram) -> list[tuple[int, YoungDiagram]]:
        out = self._pred_cache.get(lam)
        if out is None:
            out = []
            for r in range(len(lam.parts)):
                mu = lam.remove_box(r)
                if mu is not None and self.params.admissible(mu.parts):
                    out.append((r, mu))
            self._pred_cache[lam] = out
        return out

    def paths(self, lam: YoungDiagram) -> int:
        return self.count.get(lam, 0)

    def to_dot(self) -> str:
        lines = ["digraph young {", "  rankdir=TB;"]
        names = {}
        for j, layer in enumerate(self.layers):
            for lam in layer:
                names[lam] = f"n{j}_" + ("_".join(map(str, lam.parts)) or "empty")
                label = str(lam) if lam.parts else "&empty;"
                lines.append(f'  {names[lam]} [label="{label}\\n{self.count[lam]}"];')
        for j in range(1, len(self.layers)):
            for lam in self.layers[j]:
                for mu in self.predecessors(lam):
                    lines.append(f"  {names[mu]} -> {names[lam]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def _graph(n: int, params: RootParams) -> YoungGraph:
    return YoungGraph(n, params)


def young_graph(n: int, params: RootParams) -> YoungGraph:
    return _graph(n, params)


def enumerate_tableaux(lam, params: RootParams) -> list[Tableau]:
    """All (k,l)-tableaux of shape lam in lexicographic order of their row sequences."""
    lam = _diagram(lam)
    if not params.admissible(lam.parts):
        raise InadmissibleShape(f"{lam} is not ({params.k},{params.l})-admissible")
    return list(_tableaux(lam, params))


@lru_cache(maxsize=256)
def _tableaux(lam: YoungDiagram, params: RootParams) -> tuple[Tableau, ...]:
    g = young_graph(lam.size, params)
    out: list[tuple[int, ...]] = []

    def rec(mu: YoungDiagram, suffix: tuple[int, ...]):
        if mu.size == 0:
            out.append(suffix)
            return
        for r, nu in g.predecessor_rows(mu):
            rec(nu, (r,) + suffix)

    rec(lam, ())
    out.sort()
    return tuple(Tableau(rows) for rows in out)


def _randbelow(rng: np.random.Generator, n: int) -> int:
    """Exact uniform integer in [0, n) for arbitrarily large n."""
    if n <= 0:
        raise ValueError("n must be positive")
    if n < 2 ** 62:
        return int(rng.integers(n))
    bits = n.bit_length()
    while True:
        x = 0
        got = 0
        while got < bits:
            x = (x << 32) | int(rng.integers(0, 2 ** 32))
            got += 32
        x >>= got - bits
        if x < n:
            return x


def sample_tableau(lam, params: RootParams, rng: np.random.Generator,
                   graph: YoungGraph | None = None) -> Tableau:
    """Uniformly random (k,l)-tableau of shape lam via a reverse walk weighted by path counts."""
    lam = _diagram(lam)
    if not params.admissible(lam.parts):
        raise InadmissibleShape(f"{lam} is not ({params.k},{params.l})-admissible")
    g = graph if graph is not None else young_graph(lam.size, params)
    rows: list[int] = []
    mu = lam
    while mu.size:
        x = _randbelow(rng, g.count[mu])
        for r, nu in g.predecessor_rows(mu):
            c = g.count[nu]
            if x < c:
                rows.append(r)
                mu = nu
                break
            x -= c
    return Tableau(tuple(reversed(rows)))


# ---------------------------------------------------------------- Markov weights

def markov_weight(lam, params: RootParams) -> float:
    """s_lambda = [k]^-n prod over boxes (i,j) of [j - i + k] / [h(i,j)] (1-based i, j)."""
    lam = _diagram(lam)
    if not params.admissible(lam.parts):
        raise InadmissibleShape(f"{lam} is not ({params.k},{params.l})-admissible")
    val = params.qk ** (-lam.size)
    for i, j in lam.boxes():
        val *= params.qint(j - i + params.k) / params.qint(hook_length(lam, i, j))
    return val


@dataclass(frozen=True)
class WeightEntry:
    weight: float
    dim: int
    probability: float


class MarkovWeightTable:
    """Weights s_lambda, dimensions d_lambda and probabilities s_lambda d_lambda for one layer."""

    def __init__(self, n: int, params: RootParams):
        self.n = n
        self.params = params
        g = young_graph(n, params)
        self.entries: dict[YoungDiagram, WeightEntry] = {}
        for lam in g.layers[n]:
            s = markov_weight(lam, params)
            d = g.count[lam]
            self.entries[lam] = WeightEntry(s, d, s * d)

    @property
    def total(self) -> float:
        return math.fsum(e.probability for e in self.entries.values())

    def diagrams(self) -> list[YoungDiagram]:
        return list(self.entries)

    def probabilities(self) -> np.ndarray:
        return np.array([e.probability for e in self.entries.values()])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda", "dim", "weight", "probability"])
        for lam, e in self.entries.items():
            w.writerow([str(lam), e.dim, f"{e.weight:.15g}", f"{e.probability:.15g}"])
        return buf.getvalue()
