"""Finite sets as a concrete cartesian model.

Tuples are acted on by selections, and the finitary operations on a finite
carrier form the classical clone of all operations.  Operation tables are
dense, row-major, with the last argument varying fastest.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import fincard
from .clone_core import CartesianOperad, Clone
from .fincard import Selection
from .report import Report, make_rng


@dataclass(frozen=True, order=True)
class FiniteOp:
    s: int
    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("carrier size must be >= 1")
        if self.arity < 0:
            raise ValueError("arity must be >= 0")
        table = tuple(int(v) for v in self.table)
        if len(table) != self.s ** self.arity:
            raise ValueError(
                f"table length {len(table)} != {self.s}^{self.arity}")
        if any(not 0 <= v < self.s for v in table):
            raise ValueError("table entry outside carrier")
        object.__setattr__(self, "table", table)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)

    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments")
        idx = 0
        for a in args:
            idx = idx * self.s + a
        return self.table[idx]

    def to_json(self) -> dict:
        return {"s": self.s, "arity": self.arity, "table": list(self.table)}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteOp":
        return cls(int(data["s"]), int(data["arity"]), tuple(data["table"]))


@lru_cache(maxsize=None)
def tuples(s: int, n: int) -> np.ndarray:
    """All n-tuples over ``{0..s-1}`` in row-major order, shape ``(s**n, n)``."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.indices((s,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grid, dtype=np.int64)


def _encode(s: int, columns: np.ndarray) -> np.ndarray:
    """Row-major index of each row of ``columns``."""
    idx = np.zeros(columns.shape[0], dtype=np.int64)
    for j in range(columns.shape[1]):
        idx = idx * s + columns[:, j]
    return idx


def apply_selection(f: Selection, x: Sequence) -> tuple:
    """Pick ``(x[f[1]], ..., x[f[m]])`` out of the n-tuple ``x``."""
    if len(x) != f.source_size:
        raise fincard.DimensionError(
            f"tuple of length {len(x)} for selection with source {f.source_size}")
    return tuple(x[v - 1] for v in f.values)


def substitute_on_tuples(f: Selection, gs: Sequence[Selection], x: Sequence) -> tuple:
    """Evaluate ``(g_{f[1]} x ... x g_{f[m]}) o pi^(f)`` on a concatenated tuple.

    Materialises the block tuple first, then selects blocks by ``f``; used
    as an independent route to :func:`fincard.substitute`.
    """
    blocks, pos = [], 0
    for g in gs:
        blocks.append(tuple(x[pos:pos + g.source_size]))
        pos += g.source_size
    if pos != len(x):
        raise fincard.DimensionError("tuple length does not match blocks")
    out: list = []
    for j, block in enumerate(apply_selection(f, blocks)):
        out.extend(apply_selection(gs[f.values[j] - 1], block))
    return tuple(out)


def set_projection(i: int, n: int, s: int) -> FiniteOp:
    if not 1 <= i <= n:
        raise ValueError(f"projection index {i} outside 1..{n}")
    return FiniteOp(s, n, tuple(tuples(s, n)[:, i - 1].tolist()))


def set_bullet(phi: FiniteOp, psis: Sequence[FiniteOp], arity: int | None = None) -> FiniteOp:
    """Shared-argument composition ``x -> phi(psi_1(x), ..., psi_m(x))``.

    ``arity`` is only needed when ``phi`` is nullary (no psis to read it from).
    """
    if len(psis) != phi.arity:
        raise ValueError(f"phi has arity {phi.arity}, got {len(psis)} operands")
    if psis:
        n = psis[0].arity
        if arity is not None and arity != n:
            raise ValueError("explicit arity disagrees with operands")
    elif arity is None:
        raise ValueError("arity required for a nullary phi")
    else:
        n = arity
    s = phi.s
    idx = np.zeros(s ** n, dtype=np.int64)
    for psi in psis:
        if psi.s != s or psi.arity != n:
            raise ValueError("operands must share carrier and arity")
        idx = idx * s + psi.array
    return FiniteOp(s, n, tuple(phi.array[idx].tolist()))


def set_dot(phi: FiniteOp, f: Selection) -> FiniteOp:
    """Precompose with the tuple selection: ``x -> phi(pi^(f) x)``."""
    if len(f.values) != phi.arity:
        raise fincard.DimensionError("selection target must equal arity")
    s, n = phi.s, f.source_size
    cols = tuples(s, n)[:, [v - 1 for v in f.values]]
    return FiniteOp(s, n, tuple(phi.array[_encode(s, cols)].tolist()))


def set_compose(phi: FiniteOp, psis: Sequence[FiniteOp]) -> FiniteOp:
    """Operadic composition on disjoint argument blocks."""
    if len(psis) != phi.arity:
        raise ValueError(f"phi has arity {phi.arity}, got {len(psis)} operands")
    s = phi.s
    total = sum(p.arity for p in psis)
    grid = tuples(s, total)
    idx = np.zeros(grid.shape[0], dtype=np.int64)
    pos = 0
    for psi in psis:
        if psi.s != s:
            raise ValueError("operands must share carrier")
        inner = psi.array[_encode(s, grid[:, pos:pos + psi.arity])]
        idx = idx * s + inner
        pos += psi.arity
    return FiniteOp(s, total, tuple(phi.array[idx].tolist()))


def all_ops(s: int, arity: int) -> Iterable[FiniteOp]:
    for table in itertools.product(range(s), repeat=s ** arity):
        yield FiniteOp(s, arity, table)


def random_op(rng: random.Random, s: int, arity: int) -> FiniteOp:
    return FiniteOp(s, arity, tuple(rng.randrange(s) for _ in range(s ** arity)))


def clone_closure(generators: Iterable[FiniteOp], max_arity: int,
                  s: int | None = None) -> frozenset[FiniteOp]:
    """Smallest set of operations of arity <= ``max_arity`` containing the
    projections and the generators and closed under :func:`set_bullet`.

    Generators above ``max_arity`` are dropped.
    """
    gens = sorted(set(generators))
    if s is None:
        if not gens:
            raise ValueError("carrier size needed when there are no generators")
        s = gens[0].s
    if any(g.s != s for g in gens):
        raise ValueError("generators must share a carrier")
    layers: list[set[FiniteOp]] = [set() for _ in range(max_arity + 1)]
    for n in range(1, max_arity + 1):
        layers[n].update(set_projection(i, n, s) for i in range(1, n + 1))
    for g in gens:
        if g.arity <= max_arity:
            layers[g.arity].add(g)

    changed = True
    while changed:
        changed = False
        snapshot = [sorted(layer) for layer in layers]
        for m, phis in enumerate(snapshot):
            for phi in phis:
                for n in range(max_arity + 1):
                    for psis in itertools.product(snapshot[n], repeat=m):
                        r = set_bullet(phi, psis, arity=n)
                        if r not in layers[n]:
                            layers[n].add(r)
                            changed = True
    return frozenset().union(*layers)


def check_pi_properties(trials: int, max_n: int, carrier_size: int,
                        seed: int = 0) -> Report:
    """Randomised check of the six identities satisfied by tuple selections,
    plus agreement of block-arithmetic substitution with the tuple route."""
    rng = make_rng(seed)
    report = Report("pi-properties", seed=seed)
    s = carrier_size

    def tup(n):
        return tuple(rng.randrange(s) for _ in range(n))

    def sel(n, m):
        return fincard.random_selection(rng, n, m) if n else fincard.epsilon(0)

    for _ in range(trials):
        n = rng.randint(1, max_n)
        m = rng.randint(0, max_n)
        k = rng.randint(0, max_n)
        x = tup(n)
        f, g = sel(n, m), sel(m, k)
        checks = {
            "identity": (apply_selection(fincard.identity(n), x), x),
            "composition": (apply_selection(fincard.compose(g, f), x),
                            apply_selection(g, apply_selection(f, x))),
            "copy": (apply_selection(fincard.delta(n), x), x + x),
            "delete": (apply_selection(fincard.epsilon(n), x), ()),
        }
        n2 = rng.randint(0, max_n)
        y = tup(n2)
        f2 = sel(n2, rng.randint(0, max_n))
        checks["oplus"] = (apply_selection(fincard.oplus(f, f2), x + y),
                           apply_selection(f, x) + apply_selection(f2, y))
        i = rng.randint(1, n)
        checks["projection"] = (apply_selection(fincard.proj(i, [1] * n), x),
                                (x[i - 1],))
        gs = [sel(rng.randint(0, max_n), rng.randint(0, max_n)) for _ in range(n)]
        z = tup(sum(gg.source_size for gg in gs))
        checks["substitution"] = (apply_selection(fincard.substitute(f, gs), z),
                                  substitute_on_tuples(f, gs, z))
        for name, (lhs, rhs) in checks.items():
            if lhs != rhs:
                report.fail(property=name, f=f.to_json(), g=g.to_json(),
                            x=list(x), lhs=list(lhs), rhs=list(rhs))
        report.checked += 1
        if not report.ok:
            break
    return report


class SetClone(Clone):
    """The clone of all finitary operations on ``{0..s-1}``."""

    def __init__(self, s: int):
        self.s = s

    def arity(self, phi: FiniteOp) -> int:
        return phi.arity

    def projection(self, i: int, n: int) -> FiniteOp:
        return set_projection(i, n, self.s)

    def bullet(self, phi, psis, arity=None):
        return set_bullet(phi, psis, arity=arity)

    def serialize(self, phi):
        return phi.to_json()


class SetOperad(CartesianOperad):
    """Operations on ``{0..s-1}`` with disjoint-block composition and the
    selection action by precomposition with tuple selections."""

    def __init__(self, s: int):
        self.s = s

    def arity(self, phi: FiniteOp) -> int:
        return phi.arity

    def identity(self) -> FiniteOp:
        return set_projection(1, 1, self.s)

    def compose(self, phi, psis):
        return set_compose(phi, psis)

    def dot(self, phi, f):
        return set_dot(phi, f)

    def serialize(self, phi):
        return phi.to_json()
