"""Selections: morphisms of the opposite category of finite cardinals.

A selection ``f: [n] -> [m]`` picks an m-tuple out of an n-tuple.  It is
stored by its underlying index map ``[m] -> [n]`` as a tuple of 1-based
values, so ``f.values[i - 1]`` is ``f[i]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .report import Report, make_rng


class DimensionError(ValueError):
    """Raised when selections of incompatible sizes are combined."""


@dataclass(frozen=True)
class Selection:
    source_size: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.source_size < 0:
            raise DimensionError(f"negative source size {self.source_size}")
        values = tuple(int(v) for v in self.values)
        for v in values:
            if not 1 <= v <= self.source_size:
                raise DimensionError(
                    f"index {v} outside 1..{self.source_size}")
        object.__setattr__(self, "values", values)

    @property
    def target_size(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        """1-based lookup, ``f[i]``."""
        if not 1 <= i <= len(self.values):
            raise IndexError(i)
        return self.values[i - 1]

    def __len__(self):
        return len(self.values)

    def to_json(self) -> dict:
        return {"n": self.source_size, "values": list(self.values)}

    @classmethod
    def from_json(cls, data: dict) -> "Selection":
        return cls(int(data["n"]), tuple(data["values"]))

    def __repr__(self):
        return f"Selection(n={self.source_size}, values={list(self.values)})"


def identity(n: int) -> Selection:
    return Selection(n, tuple(range(1, n + 1)))


def compose(g: Selection, f: Selection) -> Selection:
    """``g o f`` for ``f: [n] -> [m]`` and ``g: [m] -> [k]``."""
    if g.source_size != len(f.values):
        raise DimensionError(
            f"cannot compose: g has source {g.source_size}, "
            f"f has target {len(f.values)}")
    fv = f.values
    return Selection(f.source_size, tuple(fv[i - 1] for i in g.values))


def oplus(*fs: Selection) -> Selection:
    """Monoidal product: concatenate, shifting each block past its predecessors."""
    offset = 0
    values: list[int] = []
    for f in fs:
        values.extend(v + offset for v in f.values)
        offset += f.source_size
    return Selection(offset, tuple(values))


def delta(n: int) -> Selection:
    """Uniform copying ``[n] -> [2n]``, selecting ``(1..n, 1..n)``."""
    return delta_power(n, 2)


def epsilon(n: int) -> Selection:
    """Uniform deletion ``[n] -> [0]``."""
    return Selection(n, ())


def delta_power(n: int, m: int) -> Selection:
    """Copying applied ``m - 1`` times: ``[n] -> [mn]``."""
    if m < 1:
        raise DimensionError("delta_power needs m >= 1")
    return Selection(n, tuple(range(1, n + 1)) * m)


def proj(i: int, sizes: Sequence[int]) -> Selection:
    """Canonical projection ``[m_1 + ... + m_k] -> [m_i]``."""
    if not 1 <= i <= len(sizes):
        raise DimensionError(f"projection index {i} outside 1..{len(sizes)}")
    offset = sum(sizes[: i - 1])
    return Selection(sum(sizes), tuple(range(offset + 1, offset + sizes[i - 1] + 1)))


def substitute(f: Selection, gs: Sequence[Selection]) -> Selection:
    """Substitution ``f ≀ (g_1, ..., g_n)``.

    Block ``j`` of the result is ``g_{f[j]}`` shifted by the total source
    size of ``g_1 .. g_{f[j]-1}``; the source is the sum of all sources.
    """
    if len(gs) != f.source_size:
        raise DimensionError(
            f"substitute expects {f.source_size} selections, got {len(gs)}")
    offsets = [0]
    for g in gs:
        offsets.append(offsets[-1] + g.source_size)
    values: list[int] = []
    for j in f.values:
        off = offsets[j - 1]
        values.extend(v + off for v in gs[j - 1].values)
    return Selection(offsets[-1], tuple(values))


def random_selection(rng: random.Random, n: int, m: int) -> Selection:
    if n == 0 and m > 0:
        raise DimensionError("no selection [0] -> [m] with m > 0")
    return Selection(n, tuple(rng.randint(1, n) for _ in range(m)))


def check_laws(trials: int, seed: int = 0, max_n: int = 4) -> Report:
    """Randomised associativity, interchange, coassociativity and counit laws."""
    rng = make_rng(seed)
    report = Report("fincard-laws", seed=seed)

    def sel(n, m):
        return random_selection(rng, n, m) if n else epsilon(0)

    def size():
        return rng.randint(1, max_n)

    for trial in range(trials):
        n, m, k, l = size(), size(), size(), size()
        f, g, h = sel(n, m), sel(m, k), sel(k, l)
        n2, m2, k2 = size(), size(), size()
        f2, g2 = sel(n2, m2), sel(m2, k2)
        laws = {
            "associativity": (compose(h, compose(g, f)), compose(compose(h, g), f)),
            "left-identity": (compose(identity(m), f), f),
            "right-identity": (compose(f, identity(n)), f),
            "interchange": (oplus(compose(g, f), compose(g2, f2)),
                            compose(oplus(g, g2), oplus(f, f2))),
            "coassociativity": (compose(oplus(delta(n), identity(n)), delta(n)),
                                compose(oplus(identity(n), delta(n)), delta(n))),
            "copy-power": (compose(oplus(delta(n), identity(n)), delta(n)),
                           delta_power(n, 3)),
            "counit-left": (compose(proj(1, [n, n]), delta(n)), identity(n)),
            "counit-right": (compose(proj(2, [n, n]), delta(n)), identity(n)),
            "delete": (compose(epsilon(m), f), epsilon(n)),
        }
        for name, (lhs, rhs) in laws.items():
            if lhs != rhs:
                return report.fail(trial=trial, law=name, lhs=lhs.to_json(),
                                   rhs=rhs.to_json())
        report.checked += 1
    return report
