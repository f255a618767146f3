"""Abstract clones, cartesian operads, and the translation between them.

Both structures are handled through behavioural interfaces with explicit
arities.  Elements are opaque; equality is whatever ``==`` means for the
instance.  The axiom checkers draw elements from a caller-supplied sampler
``sampler(rng, arity)`` so that infinite families can be tested.
"""

from __future__ import annotations

import itertools
import random
from abc import ABC, abstractmethod
from typing import Any, Callable, Mapping, Sequence

from . import fincard
from .fincard import Selection
from .report import Report, make_rng

Sampler = Callable[[random.Random, int], Any]


class Clone(ABC):
    @abstractmethod
    def arity(self, phi) -> int: ...

    @abstractmethod
    def projection(self, i: int, n: int): ...

    @abstractmethod
    def bullet(self, phi, psis: Sequence, arity: int | None = None):
        """``phi • (psi_1, ..., psi_m)``; ``arity`` is needed only when m = 0."""

    def equal(self, a, b) -> bool:
        return a == b

    def serialize(self, phi):
        return repr(phi)


class CartesianOperad(ABC):
    @abstractmethod
    def arity(self, phi) -> int: ...

    @abstractmethod
    def identity(self): ...

    @abstractmethod
    def compose(self, phi, psis: Sequence):
        """Multicomposition ``phi o (psi_1, ..., psi_n)`` on disjoint inputs."""

    @abstractmethod
    def dot(self, phi, f: Selection):
        """Action ``phi . f`` of a selection ``f: [n] -> [arity(phi)]``."""

    def equal(self, a, b) -> bool:
        return a == b

    def serialize(self, phi):
        return repr(phi)


class OperadOfClone(CartesianOperad):
    """Cartesian operad structure carried by a clone."""

    def __init__(self, clone: Clone):
        self.clone = clone

    def arity(self, phi):
        return self.clone.arity(phi)

    def identity(self):
        return self.clone.projection(1, 1)

    def dot(self, phi, f):
        if len(f.values) != self.clone.arity(phi):
            raise fincard.DimensionError("selection target must equal arity")
        n = f.source_size
        projs = [self.clone.projection(v, n) for v in f.values]
        return self.clone.bullet(phi, projs, arity=n)

    def compose(self, phi, psis):
        sizes = [self.clone.arity(p) for p in psis]
        total = sum(sizes)
        spread = [self.dot(p, fincard.proj(i, sizes)) for i, p in enumerate(psis, 1)]
        return self.clone.bullet(phi, spread, arity=total)

    def equal(self, a, b):
        return self.clone.equal(a, b)

    def serialize(self, phi):
        return self.clone.serialize(phi)


class CloneOfOperad(Clone):
    """Clone structure carried by a cartesian operad."""

    def __init__(self, operad: CartesianOperad):
        self.operad = operad

    def arity(self, phi):
        return self.operad.arity(phi)

    def projection(self, i, n):
        return self.operad.dot(self.operad.identity(), fincard.proj(i, [1] * n))

    def bullet(self, phi, psis, arity=None):
        m = len(psis)
        if m:
            n = self.operad.arity(psis[0])
            if any(self.operad.arity(p) != n for p in psis):
                raise ValueError("bullet operands must share an arity")
        elif arity is None:
            raise ValueError("arity required for a nullary phi")
        else:
            n = arity
        copy = fincard.delta_power(n, m) if m else fincard.epsilon(n)
        return self.operad.dot(self.operad.compose(phi, psis), copy)

    def equal(self, a, b):
        return self.operad.equal(a, b)

    def serialize(self, phi):
        return self.operad.serialize(phi)


def operad_from_clone(clone: Clone) -> CartesianOperad:
    return OperadOfClone(clone)


def clone_from_operad(operad: CartesianOperad) -> Clone:
    return CloneOfOperad(operad)


def check_clone_axioms(clone: Clone, sampler: Sampler, trials: int, seed: int = 0,
                       max_arity: int | tuple[int, int, int] = 3, min_arity: int = 1,
                       suite: str = "clone-axioms") -> Report:
    """Randomised check of the identity, projection and associativity axioms.

    Each trial draws arities m, n, l uniformly from ``min_arity`` up to
    ``max_arity`` (one bound, or separate bounds for m, n, l), then
    ``phi`` of arity m, ``psi_1..psi_m`` of arity n and ``rho_1..rho_n`` of
    arity l.
    """
    rng = make_rng(seed)
    report = Report(suite, seed=seed)
    ser = clone.serialize
    bounds = (max_arity,) * 3 if isinstance(max_arity, int) else tuple(max_arity)
    for trial in range(trials):
        m, n, l = (rng.randint(min_arity, b) for b in bounds)
        phi = sampler(rng, m)
        psis = [sampler(rng, n) for _ in range(m)]
        rhos = [sampler(rng, l) for _ in range(n)]
        projs = [clone.projection(i, n) for i in range(1, n + 1)]

        chi = sampler(rng, n)
        got = clone.bullet(chi, projs, arity=n)
        if not clone.equal(got, chi):
            return report.fail(trial=trial, axiom=1, phi=ser(chi), result=ser(got))
        if m:
            i = rng.randint(1, m)
            got = clone.bullet(clone.projection(i, m), psis, arity=n)
            if not clone.equal(got, psis[i - 1]):
                return report.fail(trial=trial, axiom=2, i=i, m=m,
                                   psis=[ser(p) for p in psis], result=ser(got))
        inner = [clone.bullet(p, rhos, arity=l) for p in psis]
        left = clone.bullet(phi, inner, arity=l)
        right = clone.bullet(clone.bullet(phi, psis, arity=n), rhos, arity=l)
        if not clone.equal(left, right):
            return report.fail(trial=trial, axiom=3, phi=ser(phi),
                               psis=[ser(p) for p in psis],
                               rhos=[ser(r) for r in rhos],
                               left=ser(left), right=ser(right))
        report.checked += 1
    return report


def check_clone_axioms_exhaustive(clone: Clone, elements: Mapping[int, Sequence],
                                  suite: str = "clone-axioms-exhaustive") -> Report:
    """Check all three axioms on every tuple drawn from ``elements``.

    ``elements[k]`` must list the arity-k elements and be closed under the
    clone operations; results are interned so each bullet is computed once.
    """
    report = Report(suite)
    arities = sorted(elements)
    index: dict[Any, int] = {}
    pool: list = []
    for k in arities:
        for e in elements[k]:
            if e not in index:
                index[e] = len(pool)
                pool.append(e)
    ids = {k: [index[e] for e in elements[k]] for k in arities}
    memo: dict[tuple, int] = {}

    def bul(phi: int, psis: tuple, n: int) -> int:
        key = (phi, psis, n)
        r = memo.get(key)
        if r is None:
            res = clone.bullet(pool[phi], [pool[p] for p in psis], arity=n)
            r = index.get(res)
            if r is None:
                raise ValueError(f"element set not closed: {clone.serialize(res)}")
            memo[key] = r
        return r

    ser = lambda i: clone.serialize(pool[i])
    proj = {}
    for n in arities:
        ps = [clone.projection(i, n) for i in range(1, n + 1)]
        missing = [p for p in ps if p not in index]
        if missing:
            raise ValueError(f"element set lacks projection {clone.serialize(missing[0])}")
        proj[n] = tuple(index[p] for p in ps)
    for n in arities:
        for phi in ids[n]:
            report.checked += 1
            if bul(phi, proj[n], n) != phi:
                return report.fail(axiom=1, phi=ser(phi))
    for m in arities:
        for n in arities:
            for psis in itertools.product(ids[n], repeat=m):
                for i in range(m):
                    report.checked += 1
                    if bul(proj[m][i], psis, n) != psis[i]:
                        return report.fail(axiom=2, i=i + 1,
                                           psis=[ser(p) for p in psis])
    for m in arities:
        for n in arities:
            for l in arities:
                all_rhos = list(itertools.product(ids[l], repeat=n))
                for psis in itertools.product(ids[n], repeat=m):
                    for rhos in all_rhos:
                        inner = tuple(bul(p, rhos, l) for p in psis)
                        for phi in ids[m]:
                            report.checked += 1
                            left = bul(phi, inner, l)
                            right = bul(bul(phi, psis, n), rhos, l)
                            if left != right:
                                return report.fail(
                                    axiom=3, phi=ser(phi),
                                    psis=[ser(p) for p in psis],
                                    rhos=[ser(r) for r in rhos])
    return report


def _random_selection(rng, n, m):
    return fincard.random_selection(rng, n, m) if n else fincard.epsilon(0)


def check_cartesian_axioms(operad: CartesianOperad, sampler: Sampler, trials: int,
                           seed: int = 0, max_arity: int = 2,
                           suite: str = "cartesian-axioms") -> Report:
    """Randomised check of the selection-action laws and the interchange law,
    together with the operad unit laws."""
    rng = make_rng(seed)
    report = Report(suite, seed=seed)
    eq, ser = operad.equal, operad.serialize
    ident = operad.identity()

    def arity():
        return rng.randint(1, max_arity)

    for trial in range(trials):
        m = arity()
        phi = sampler(rng, m)

        got = operad.dot(phi, fincard.identity(m))
        if not eq(got, phi):
            return report.fail(trial=trial, law="dot-identity", phi=ser(phi), result=ser(got))

        for law, got in (("unit-left", operad.compose(ident, [phi])),
                         ("unit-right", operad.compose(phi, [ident] * m))):
            if not eq(got, phi):
                return report.fail(trial=trial, law=law, phi=ser(phi), result=ser(got))

        n, k = arity(), arity()
        g = _random_selection(rng, n, m)
        f = _random_selection(rng, k, n)
        left = operad.dot(operad.dot(phi, g), f)
        right = operad.dot(phi, fincard.compose(g, f))
        if not eq(left, right):
            return report.fail(trial=trial, law="dot-composition", phi=ser(phi),
                               g=g.to_json(), f=f.to_json(),
                               left=ser(left), right=ser(right))

        f = _random_selection(rng, n, m)
        bs = [arity() for _ in range(n)]
        gs = [_random_selection(rng, arity(), b) for b in bs]
        psis = [sampler(rng, b) for b in bs]
        left = operad.compose(operad.dot(phi, f),
                              [operad.dot(p, gi) for p, gi in zip(psis, gs)])
        right = operad.dot(operad.compose(phi, [psis[j - 1] for j in f.values]),
                           fincard.substitute(f, gs))
        if not eq(left, right):
            return report.fail(trial=trial, law="interchange", phi=ser(phi),
                               f=f.to_json(), gs=[gi.to_json() for gi in gs],
                               psis=[ser(p) for p in psis],
                               left=ser(left), right=ser(right))
        report.checked += 1
    return report


def check_clone_roundtrip(clone: Clone, sampler: Sampler, trials: int, seed: int = 0,
                          max_arity: int = 3, suite: str = "roundtrip-clone") -> Report:
    """clone -> operad -> clone reproduces bullet and projections."""
    rng = make_rng(seed)
    report = Report(suite, seed=seed)
    back = clone_from_operad(operad_from_clone(clone))
    ser = clone.serialize
    for trial in range(trials):
        m, n = rng.randint(1, max_arity), rng.randint(1, max_arity)
        i = rng.randint(1, n)
        if not clone.equal(back.projection(i, n), clone.projection(i, n)):
            return report.fail(trial=trial, what="projection", i=i, n=n)
        phi = sampler(rng, m)
        psis = [sampler(rng, n) for _ in range(m)]
        a, b = back.bullet(phi, psis), clone.bullet(phi, psis)
        if not clone.equal(a, b):
            return report.fail(trial=trial, what="bullet", phi=ser(phi),
                               psis=[ser(p) for p in psis],
                               roundtrip=ser(a), direct=ser(b))
        report.checked += 1
    return report


def check_operad_roundtrip(operad: CartesianOperad, sampler: Sampler, trials: int,
                           seed: int = 0, max_arity: int = 2,
                           suite: str = "roundtrip-operad") -> Report:
    """operad -> clone -> operad reproduces dot, composition and identity."""
    rng = make_rng(seed)
    report = Report(suite, seed=seed)
    back = operad_from_clone(clone_from_operad(operad))
    ser = operad.serialize
    if not operad.equal(back.identity(), operad.identity()):
        return report.fail(what="identity")
    for trial in range(trials):
        m, n = rng.randint(1, max_arity), rng.randint(1, max_arity)
        phi = sampler(rng, m)
        f = _random_selection(rng, n, m)
        a, b = back.dot(phi, f), operad.dot(phi, f)
        if not operad.equal(a, b):
            return report.fail(trial=trial, what="dot", phi=ser(phi), f=f.to_json(),
                               roundtrip=ser(a), direct=ser(b))
        psis = [sampler(rng, rng.randint(1, max_arity)) for _ in range(m)]
        a, b = back.compose(phi, psis), operad.compose(phi, psis)
        if not operad.equal(a, b):
            return report.fail(trial=trial, what="compose", phi=ser(phi),
                               psis=[ser(p) for p in psis],
                               roundtrip=ser(a), direct=ser(b))
        report.checked += 1
    return report


def check_projections_agree(clone: Clone, operad: CartesianOperad, max_n: int,
                            suite: str = "projections") -> Report:
    """``id . pi^i`` in the operad equals the clone's own projection."""
    report = Report(suite)
    derived = clone_from_operad(operad)
    for n in range(1, max_n + 1):
        for i in range(1, n + 1):
            report.checked += 1
            if not clone.equal(derived.projection(i, n), clone.projection(i, n)):
                return report.fail(i=i, n=n)
    return report
