"""Ring morphisms ``A -> A^(x)n`` and their clone structure.

A morphism is stored through the images of the generators ``t`` and ``x``;
the image of ``tx`` is always derived as their product.  Every morphism
(for non-square q) has the shape::

    t -> ±t_d + f x_d,    x -> g x_d

and :class:`CanonicalForm` records ``(sign, d, f, g)`` with ``f`` and ``g``
normalised to contain no ``x_d``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import fincard, lemmas, zring
from .clone_core import CartesianOperad, Clone
from .fincard import Selection
from .zring import Key, RingElem


class NotClassifiable(ValueError):
    """The images do not have the canonical shape."""


@dataclass(frozen=True)
class GenImages:
    t: RingElem
    x: RingElem

    def __post_init__(self):
        if (self.t.n, self.t.q) != (self.x.n, self.x.q):
            raise zring.RingMismatchError("generator images must share n and q")

    @property
    def n(self) -> int:
        return self.t.n

    @property
    def q(self) -> int:
        return self.t.q

    @property
    def tx(self) -> RingElem:
        return self.t * self.x

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "t": str(self.t), "x": str(self.x)}

    @classmethod
    def from_json(cls, data: Mapping, hopf: bool = False) -> "GenImages":
        n, q = int(data["n"]), int(data["q"])
        return cls(zring.parse(data["t"], n, q, hopf=hopf),
                   zring.parse(data["x"], n, q, hopf=hopf))

    def __str__(self):
        return f"t -> {self.t}, x -> {self.x}"


@dataclass(frozen=True)
class CanonicalForm:
    sign: int
    d: int
    f: RingElem
    g: RingElem

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not 1 <= self.d <= self.f.n:
            raise ValueError(f"d = {self.d} outside 1..{self.f.n}")
        bit = 1 << (self.d - 1)
        for name, h in (("f", self.f), ("g", self.g)):
            if any(T & bit for (_, T) in h.terms):
                raise ValueError(f"{name} must not contain x_{self.d}")

    def to_json(self) -> dict:
        return {"sign": self.sign, "d": self.d, "f": str(self.f), "g": str(self.g)}

    @classmethod
    def from_json(cls, data: Mapping, n: int, q: int, hopf: bool = False) -> "CanonicalForm":
        return cls(int(data["sign"]), int(data["d"]),
                   zring.parse(data["f"], n, q, hopf=hopf),
                   zring.parse(data["g"], n, q, hopf=hopf))


def relation_defects(m: GenImages) -> dict[str, RingElem]:
    """Nonzero defects among ``t^2 - q``, ``x^2`` and ``tx + xt``."""
    one = RingElem._raw(m.n, m.q, {(0, 0): 1})
    out = {
        "t^2 - q": m.t * m.t - m.q * one,
        "x^2": m.x * m.x,
        "tx + xt": m.t * m.x + m.x * m.t,
    }
    return {k: v for k, v in out.items() if v}


def is_ring_morphism(m: GenImages) -> bool:
    return not relation_defects(m)


def projection(i: int, n: int, q: int, hopf: bool = False) -> GenImages:
    return GenImages(zring.generator_t(i, n, q, hopf=hopf),
                     zring.generator_x(i, n, q, hopf=hopf))


def apply(m: GenImages, a: RingElem) -> RingElem:
    """Linear extension over the basis ``1, t, x, tx`` of A."""
    if a.n != 1 or a.q != m.q:
        raise zring.RingMismatchError("apply expects an element of A with matching q")
    images = {(0, 0): RingElem._raw(m.n, m.q, {(0, 0): 1}), (1, 0): m.t,
              (0, 1): m.x, (1, 1): m.tx}
    out = RingElem._raw(m.n, m.q, {})
    for key, c in a.terms.items():
        out = out + c * images[key]
    return out


def to_canonical(m: GenImages) -> CanonicalForm:
    scalar = {S: c for (S, T), c in m.t.terms.items() if T == 0}
    if len(scalar) != 1:
        raise NotClassifiable(f"t-image has {len(scalar)} x-free terms, need exactly one")
    (S, c), = scalar.items()
    if S.bit_count() != 1 or abs(c) != 1:
        raise NotClassifiable(
            f"x-free part {c}*{zring.format_monomial(S, 0)} is not ±t_d")
    d = S.bit_length()
    bit = S
    td = RingElem._raw(m.n, m.q, {(S, 0): 1})
    rest = m.t - c * td
    for name, h in (("t", rest), ("x", m.x)):
        stray = [k for k in h.terms if not k[1] & bit]
        if stray:
            raise NotClassifiable(
                f"{name}-image has term {zring.format_monomial(*stray[0])} without x_{d}")
    form = CanonicalForm(c, d, zring.strip_x(d, rest), zring.strip_x(d, m.x))
    if from_canonical(form) != m:
        raise NotClassifiable("canonical form does not reproduce the images")
    return form


def from_canonical(c: CanonicalForm, n: int | None = None, q: int | None = None) -> GenImages:
    n = c.f.n if n is None else n
    q = c.f.q if q is None else q
    if (c.f.n, c.f.q) != (n, q) or (c.g.n, c.g.q) != (n, q):
        raise zring.RingMismatchError("f and g must live in the target tensor power")
    xd = RingElem._raw(n, q, {(0, 1 << (c.d - 1)): 1})
    td = RingElem._raw(n, q, {(1 << (c.d - 1), 0): 1})
    return GenImages(c.sign * td + c.f * xd, c.g * xd)


def _check_family(psis: Sequence[GenImages]):
    n, q = psis[0].n, psis[0].q
    for p in psis:
        if (p.n, p.q) != (n, q):
            raise zring.RingMismatchError("operands must share n and q")
    return n, q


def apply_tensor(psis: Sequence[GenImages], h: RingElem) -> RingElem:
    """``mu^(m-1) o (psi_1 (x) ... (x) psi_m)`` applied to ``h`` in ``A^(x)m``.

    Each monomial ``t_S x_T`` is the elementary tensor whose i-th factor is
    ``t^[i in S] x^[i in T]``; factor i goes through ``psi_i`` and the
    results are multiplied left to right.
    """
    if h.n != len(psis):
        raise zring.RingMismatchError(
            f"element of arity {h.n} needs {h.n} maps, got {len(psis)}")
    n, q = _check_family(psis)
    if h.q != q:
        raise zring.RingMismatchError("q differs between element and maps")
    one = RingElem._raw(n, q, {(0, 0): 1})
    local = [(one, p.t, p.x, p.tx) for p in psis]
    out: dict[Key, int] = {}
    for (S, T), c in h.terms.items():
        prod = one
        for i, images in enumerate(local):
            code = ((S >> i) & 1) | (((T >> i) & 1) << 1)
            if code:
                prod = prod * images[code]
        for key, v in prod.terms.items():
            s = out.get(key, 0) + c * v
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return RingElem._raw(n, q, out)


def bullet(phi: GenImages, psis: Sequence[GenImages]) -> GenImages:
    """Clone substitution: ``mu^(m-1) o (psi_1 (x) ... (x) psi_m) o phi``."""
    if len(psis) != phi.n:
        raise zring.RingMismatchError(f"phi has arity {phi.n}, got {len(psis)} operands")
    _check_family(psis)
    return GenImages(apply_tensor(psis, phi.t), apply_tensor(psis, phi.x))


def dot_selection(phi: GenImages, f: Selection) -> GenImages:
    if len(f.values) != phi.n:
        raise fincard.DimensionError("selection target must equal arity")
    n = f.source_size
    return bullet(phi, [projection(v, n, phi.q, hopf=True) for v in f.values])


def tensor_compose(phi: GenImages, psis: Sequence[GenImages]) -> GenImages:
    """Operadic composition: ``(psi_1 (x) ... (x) psi_n) o phi`` into disjoint blocks."""
    if len(psis) != phi.n:
        raise zring.RingMismatchError(f"phi has arity {phi.n}, got {len(psis)} operands")
    total = sum(p.n for p in psis)
    blocks, off = [], 0
    for p in psis:
        blocks.append(GenImages(zring.shift(p.t, off, total), zring.shift(p.x, off, total)))
        off += p.n
    return GenImages(apply_tensor(blocks, phi.t), apply_tensor(blocks, phi.x))


def random_canonical(rng: random.Random, n: int, q: int, max_terms: int = 3,
                     coeff: int = 3) -> CanonicalForm:
    d = rng.randint(1, n)
    f = lemmas.random_element(rng, n, q, max_terms, coeff, exclude_x=d)
    g = lemmas.random_element(rng, n, q, max_terms, coeff, exclude_x=d)
    return CanonicalForm(rng.choice((1, -1)), d, f, g)


def random_morphism(rng: random.Random, n: int, q: int, max_terms: int = 3,
                    coeff: int = 3) -> GenImages:
    return from_canonical(random_canonical(rng, n, q, max_terms, coeff))


class EndoClone(Clone):
    """Ring morphisms ``A -> A^(x)n`` under ``bullet``."""

    def __init__(self, q: int, hopf: bool = False):
        self.q = zring.check_q(q, hopf)

    def arity(self, phi):
        return phi.n

    def projection(self, i, n):
        return projection(i, n, self.q, hopf=True)

    def bullet(self, phi, psis, arity=None):
        if not psis:
            raise ValueError("A has no morphisms to A^(x)0 for non-square q")
        return bullet(phi, psis)

    def serialize(self, phi):
        return phi.to_json()


class EndoOperad(CartesianOperad):
    """Ring morphisms with tensor composition and the selection action."""

    def __init__(self, q: int, hopf: bool = False):
        self.q = zring.check_q(q, hopf)

    def arity(self, phi):
        return phi.n

    def identity(self):
        return projection(1, 1, self.q, hopf=True)

    def compose(self, phi, psis):
        return tensor_compose(phi, psis)

    def dot(self, phi, f):
        return dot_selection(phi, f)

    def serialize(self, phi):
        return phi.to_json()


def _support(n: int, support) -> list[Key]:
    return list(zring.basis(n) if support is None else support)


def enumerate_morphisms(n: int, q: int, coeff_bound: int, support=None,
                        hopf: bool = False) -> list[GenImages]:
    """All morphisms whose generator images have coefficients in the box.

    Candidates for the t-image are filtered to square roots of q over the
    whole box first; for each root the x-image is searched over the
    anticommutant of the root in the box, then filtered by ``x^2 = 0``.
    ``support`` restricts which monomials may carry a nonzero coefficient.
    """
    zring.check_q(q, hopf)
    keys = _support(n, support)
    roots = lemmas.square_roots_in_box(n, q, coeff_bound, keys, hopf=hopf)
    out = []
    for tv in roots.tolist():
        t = zring.from_vector(tv, n, q, keys, hopf=hopf)
        for xv in lemmas.anticommutant_in_box(t, coeff_bound, keys).tolist():
            x = zring.from_vector(xv, n, q, keys, hopf=hopf)
            if (x * x).is_zero():
                out.append(GenImages(t, x))
    return out


def enumerate_morphisms_naive(n: int, q: int, coeff_bound: int, support=None,
                              hopf: bool = False) -> list[GenImages]:
    """Brute force over every pair of images in the box; tiny boxes only."""
    zring.check_q(q, hopf)
    keys = _support(n, support)
    rng = range(-coeff_bound, coeff_bound + 1)
    elems = [zring.from_vector(v, n, q, keys, hopf=hopf)
             for v in itertools.product(rng, repeat=len(keys))]
    return [GenImages(t, x) for t in elems for x in elems
            if is_ring_morphism(GenImages(t, x))]


def canonical_family(n: int, q: int, coeff_bound: int, support=None,
                     hopf: bool = False) -> list[GenImages]:
    """``from_canonical`` over all ``(sign, d, f, g)`` whose images fit the box."""
    zring.check_q(q, hopf)
    keys = _support(n, support)
    keyset = set(keys)
    rng = range(-coeff_bound, coeff_bound + 1)

    def fits(h):
        return all(k in keyset and abs(c) <= coeff_bound for k, c in h.terms.items())

    out = []
    for d in range(1, n + 1):
        bit = 1 << (d - 1)
        free = [k for k in zring.basis(n) if not k[1] & bit and
                (k[0], k[1] | bit) in keyset]
        params = [RingElem._raw(n, q, {k: c for k, c in zip(free, v) if c})
                  for v in itertools.product(rng, repeat=len(free))]
        for sign in (1, -1):
            if (bit, 0) not in keyset:
                continue
            for f in params:
                for g in params:
                    m = from_canonical(CanonicalForm(sign, d, f, g))
                    if fits(m.t) and fits(m.x):
                        out.append(m)
    return out


def morphism_key(m: GenImages, keys=None) -> tuple:
    return zring.to_vector(m.t, keys) + zring.to_vector(m.x, keys)
