"""Exact arithmetic in tensor powers of the ring ``Z<t, x> / (t^2 = q, tx = -xt, x^2 = 0)``.

An element of the n-th tensor power is a finite integer combination of the
basis monomials ``t_S x_T`` with ``S, T`` subsets of ``{1..n}``.  Subsets are
bit sets (position i is bit ``i - 1``), so a term key is the pair of ints
``(S, T)``.  Two monomials multiply as::

    t_S x_T * t_U x_V = 0                                       if T & V
                      = (-1)^|T & U| q^|S & U| t_(S ^ U) x_(T | V)  otherwise
"""

from __future__ import annotations

import re
from math import isqrt
from types import MappingProxyType
from typing import Iterable, Mapping

MAX_N = 16

Key = tuple[int, int]


class SquareParameterError(ValueError):
    """q is a perfect square (or not positive) and hopf mode does not admit it."""


class RingMismatchError(ValueError):
    """Operands live in different tensor powers or use different q."""


class ParseError(ValueError):
    pass


def check_q(q: int, hopf: bool = False) -> int:
    """Validate the deformation parameter.

    Only non-square ``q >= 2`` are admitted, except ``q = 1`` when ``hopf``
    is set.  ``q = 0`` is a square and always rejected.
    """
    q = int(q)
    if q < 1:
        raise SquareParameterError(f"q must be a positive non-square, got {q}")
    r = isqrt(q)
    if r * r == q and not (hopf and q == 1):
        raise SquareParameterError(
            f"q = {q} is a perfect square" + ("" if q == 1 else
                                               "; only q = 1 is admitted, in hopf mode"))
    return q


def is_square(q: int) -> bool:
    return q >= 0 and isqrt(q) ** 2 == q


def check_n(n: int) -> int:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"tensor arity must be in 1..{MAX_N}, got {n}")
    return n


def bits(indices: Iterable[int]) -> int:
    """1-based index set to bit set."""
    out = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"index {i} is not 1-based")
        out |= 1 << (i - 1)
    return out


def indices(mask: int) -> list[int]:
    """Bit set to ascending 1-based indices."""
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def sort_key(key: Key) -> tuple[int, int]:
    """Canonical order: T as bits first, then S."""
    return key[1], key[0]


def basis(n: int) -> list[Key]:
    """All ``4**n`` monomial keys in canonical order."""
    full = 1 << n
    return [(S, T) for T in range(full) for S in range(full)]


class RingElem:
    """An element of the n-th tensor power; immutable."""

    __slots__ = ("n", "q", "_terms", "_hash")

    def __init__(self, n: int, q: int, terms: Mapping[Key, int] | None = None,
                 *, hopf: bool = False):
        check_n(n)
        check_q(q, hopf)
        full = (1 << n) - 1
        clean: dict[Key, int] = {}
        for (S, T), c in (terms or {}).items():
            S, T, c = int(S), int(T), int(c)
            if S & ~full or T & ~full or S < 0 or T < 0:
                raise ValueError(f"monomial ({S}, {T}) outside arity {n}")
            clean[(S, T)] = clean.get((S, T), 0) + c
        self._init(n, q, {k: v for k, v in clean.items() if v})

    def _init(self, n, q, terms):
        self.n = n
        self.q = q
        self._terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, n: int, q: int, terms: dict) -> "RingElem":
        obj = object.__new__(cls)
        obj._init(n, q, terms)
        return obj

    @property
    def terms(self) -> Mapping[Key, int]:
        return MappingProxyType(self._terms)

    def coeff(self, S: int, T: int) -> int:
        return self._terms.get((S, T), 0)

    def items(self) -> list[tuple[Key, int]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: sort_key(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return (self.n, self.q, self._terms) == (other.n, other.q, other._terms)
        if isinstance(other, int):
            return self == scale(other, unit(self.n, self.q, hopf=True))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.q, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = scale(other, unit(self.n, self.q, hopf=True))
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = scale(other, unit(self.n, self.q, hopf=True))
        return add(self, neg(other))

    def __rsub__(self, other):
        return neg(self) + other

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(other, self)
        if isinstance(other, RingElem):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(other, self)
        return NotImplemented

    def __str__(self):
        return format_elem(self)

    def __repr__(self):
        return f"RingElem(n={self.n}, q={self.q}, {format_elem(self)!r})"

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "expr": format_elem(self)}

    @classmethod
    def from_json(cls, data: Mapping, hopf: bool = False) -> "RingElem":
        return parse(data["expr"], int(data["n"]), int(data["q"]), hopf=hopf)


def _same(a: RingElem, b: RingElem):
    if a.n != b.n or a.q != b.q:
        raise RingMismatchError(
            f"operands differ: (n={a.n}, q={a.q}) vs (n={b.n}, q={b.q})")


def zero(n: int, q: int, hopf: bool = False) -> RingElem:
    return RingElem(n, q, hopf=hopf)


def unit(n: int, q: int, hopf: bool = False) -> RingElem:
    return RingElem(n, q, {(0, 0): 1}, hopf=hopf)


def monomial(S: Iterable[int], T: Iterable[int], n: int, q: int, coeff: int = 1,
             hopf: bool = False) -> RingElem:
    """``coeff * t_S x_T`` from 1-based index sets."""
    return RingElem(n, q, {(bits(S), bits(T)): coeff}, hopf=hopf)


def generator_t(i: int, n: int, q: int, hopf: bool = False) -> RingElem:
    if not 1 <= i <= n:
        raise ValueError(f"index {i} outside 1..{n}")
    return monomial([i], [], n, q, hopf=hopf)


def generator_x(i: int, n: int, q: int, hopf: bool = False) -> RingElem:
    if not 1 <= i <= n:
        raise ValueError(f"index {i} outside 1..{n}")
    return monomial([], [i], n, q, hopf=hopf)


def add(a: RingElem, b: RingElem) -> RingElem:
    _same(a, b)
    out = dict(a._terms)
    for k, v in b._terms.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return RingElem._raw(a.n, a.q, out)


def neg(a: RingElem) -> RingElem:
    return RingElem._raw(a.n, a.q, {k: -v for k, v in a._terms.items()})


def scale(c: int, a: RingElem) -> RingElem:
    c = int(c)
    if not c:
        return RingElem._raw(a.n, a.q, {})
    return RingElem._raw(a.n, a.q, {k: c * v for k, v in a._terms.items()})


def mul(a: RingElem, b: RingElem) -> RingElem:
    """Bilinear extension of the monomial product rule."""
    _same(a, b)
    q = a.q
    qpow = [q ** k for k in range(a.n + 1)]
    out: dict[Key, int] = {}
    bt = list(b._terms.items())
    for (S, T), c in a._terms.items():
        for (U, V), e in bt:
            if T & V:
                continue
            v = c * e * qpow[(S & U).bit_count()]
            if (T & U).bit_count() & 1:
                v = -v
            key = (S ^ U, T | V)
            out[key] = out.get(key, 0) + v
    return RingElem._raw(a.n, q, {k: v for k, v in out.items() if v})


def tau(d: int, a: RingElem) -> RingElem:
    """The twist sending ``t_d -> -t_d``, ``x_d -> 0`` and fixing the rest."""
    if not 1 <= d <= a.n:
        raise ValueError(f"index {d} outside 1..{a.n}")
    bit = 1 << (d - 1)
    out = {}
    for (S, T), c in a._terms.items():
        if T & bit:
            continue
        out[(S, T)] = -c if S & bit else c
    return RingElem._raw(a.n, a.q, out)


def squares_to_q(a: RingElem) -> bool:
    return mul(a, a)._terms == {(0, 0): a.q}


def in_ideal_x(d: int, a: RingElem) -> bool:
    """Membership in ``A^(x)n * x_d``: every term carries ``x_d``."""
    if not 1 <= d <= a.n:
        raise ValueError(f"index {d} outside 1..{a.n}")
    bit = 1 << (d - 1)
    return all(T & bit for (_, T) in a._terms)


def anticommutes(a: RingElem, b: RingElem) -> bool:
    return add(mul(a, b), mul(b, a)).is_zero()


def strip_x(d: int, a: RingElem) -> RingElem:
    """Remove ``x_d`` from every term that has it, dropping the others.

    For ``a`` in the ideal generated by ``x_d`` this is the unique ``f``
    without ``x_d`` terms such that ``f * x_d == a``.
    """
    bit = 1 << (d - 1)
    return RingElem._raw(a.n, a.q, {(S, T & ~bit): c for (S, T), c in a._terms.items()
                                    if T & bit})


def shift(a: RingElem, offset: int, n: int) -> RingElem:
    """Embed ``a`` into the n-th tensor power at positions ``offset+1 .. offset+a.n``."""
    if offset < 0 or offset + a.n > n:
        raise ValueError("block does not fit")
    check_n(n)
    return RingElem._raw(n, a.q, {(S << offset, T << offset): c
                                  for (S, T), c in a._terms.items()})


def to_vector(a: RingElem, keys: list[Key] | None = None) -> tuple[int, ...]:
    keys = basis(a.n) if keys is None else keys
    return tuple(a._terms.get(k, 0) for k in keys)


def from_vector(vec, n: int, q: int, keys: list[Key] | None = None,
                hopf: bool = False) -> RingElem:
    keys = basis(n) if keys is None else keys
    if len(vec) != len(keys):
        raise ValueError("vector length does not match keys")
    return RingElem(n, q, {k: int(c) for k, c in zip(keys, vec) if c}, hopf=hopf)


def format_monomial(S: int, T: int) -> str:
    return ("t{" + ",".join(map(str, indices(S))) + "}x{"
            + ",".join(map(str, indices(T))) + "}")


def format_elem(a: RingElem) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for (S, T), c in a.items():
        mag = abs(c)
        if (S, T) == (0, 0):
            body = str(mag)
        else:
            body = ("" if mag == 1 else f"{mag}*") + format_monomial(S, T)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TERM = re.compile(r"(?:(\d+)\*)?t\{([\d,]*)\}x\{([\d,]*)\}|(\d+)")


def _idxlist(text: str, n: int) -> int:
    if not text:
        return 0
    idx = [int(p) for p in text.split(",") if p != ""]
    if len(idx) != len(text.split(",")):
        raise ParseError(f"malformed index list {text!r}")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ParseError(f"indices must be strictly ascending: {text!r}")
    if any(not 1 <= i <= n for i in idx):
        raise ParseError(f"index outside 1..{n} in {text!r}")
    return bits(idx)


def parse(text: str, n: int, q: int, hopf: bool = False) -> RingElem:
    """Parse the text form, e.g. ``"t{1}x{} - 2*t{}x{1,2} + 3"``."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty expression")
    terms: dict[Key, int] = {}
    pos, first = 0, True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            if first and s[pos] == "+":
                raise ParseError("leading '+'")
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' at position {pos} in {text!r}")
        m = _TERM.match(s, pos)
        if not m:
            raise ParseError(f"cannot parse term at position {pos} in {text!r}")
        coef, sidx, tidx, bare = m.groups()
        if bare is not None:
            key, c = (0, 0), int(bare)
        else:
            key = (_idxlist(sidx, n), _idxlist(tidx, n))
            c = int(coef) if coef is not None else 1
        terms[key] = terms.get(key, 0) + sign * c
        pos = m.end()
        first = False
    return RingElem(n, q, terms, hopf=hopf)
