"""Exhaustive coefficient-box oracles for the square-root, anticommutant
and twist identities in tensor powers of the deformed ring.

Coefficient vectors are numpy int64 arrays over a list of monomial keys
(the *support*, by default the full canonical basis).  Structure constants
are obtained from :func:`zring.mul` on monomials, so the oracles check the
same multiplication the rest of the library uses.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

import numpy as np

from . import zring
from .report import Report, make_rng
from .zring import Key, RingElem

# vectors per materialised block of a box enumeration
_BLOCK = 1 << 19


def box_grid(k: int, bound: int) -> np.ndarray:
    """All vectors of ``[-bound, bound]^k`` in lexicographic order."""
    vals = np.arange(-bound, bound + 1, dtype=np.int64)
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.stack(np.meshgrid(*([vals] * k), indexing="ij"), axis=-1)
    return grid.reshape(-1, k)


def structure_constants(keys: Sequence[Key], n: int, q: int, hopf: bool = False):
    """Products of support monomials.

    Returns ``{out_key: [(i, j, c), ...]}``: the coefficient of ``out_key`` in
    ``(sum a_i e_i)(sum b_j e_j)`` is ``sum c * a_i * b_j``.
    """
    monos = [RingElem(n, q, {k: 1}, hopf=hopf) for k in keys]
    table: dict[Key, list[tuple[int, int, int]]] = {}
    for i, a in enumerate(monos):
        for j, b in enumerate(monos):
            for key, c in (a * b).terms.items():
                table.setdefault(key, []).append((i, j, c))
    return table


def _quad(cols, pairs):
    acc = 0
    for i, j, c in pairs:
        acc = acc + c * cols(i) * cols(j)
    return acc


def square_roots_in_box(n: int, q: int, bound: int, support: Sequence[Key] | None = None,
                        hopf: bool = False) -> np.ndarray:
    """Every coefficient vector ``a`` over ``support`` with entries in
    ``[-bound, bound]`` and ``a*a == q``, in lexicographic order.

    The quadratic system is evaluated one output coordinate at a time over
    the whole box, discarding vectors as soon as a coordinate is wrong.  The
    constant coordinate is checked first.
    """
    keys = list(zring.basis(n) if support is None else support)
    k = len(keys)
    table = structure_constants(keys, n, q, hopf=hopf)
    coords = sorted(table, key=lambda key: (key != (0, 0), zring.sort_key(key)))
    if (0, 0) not in table:
        return np.zeros((0, k), dtype=np.int64)

    width = 2 * bound + 1
    k_inner = 0
    while k_inner < k and width ** (k_inner + 1) <= _BLOCK:
        k_inner += 1
    k_outer = k - k_inner
    inner = box_grid(k_inner, bound)
    found = []
    for outer in itertools.product(range(-bound, bound + 1), repeat=k_outer):
        def col(i, outer=outer):
            return outer[i] if i < k_outer else inner[:, i - k_outer]

        first = _quad(col, table[(0, 0)])
        mask = np.broadcast_to(first == q, (inner.shape[0],))
        if not mask.any():
            continue
        block = np.hstack([np.broadcast_to(np.asarray(outer, dtype=np.int64),
                                           (int(mask.sum()), k_outer)),
                           inner[mask]])
        for key in coords[1:]:
            vals = _quad(lambda i: block[:, i], table[key])
            block = block[np.broadcast_to(vals == 0, (block.shape[0],))]
            if not len(block):
                break
        if len(block):
            found.append(block)
    if not found:
        return np.zeros((0, k), dtype=np.int64)
    return np.vstack(found)


def kernel_in_box(matrix: np.ndarray, bound: int) -> np.ndarray:
    """All integer ``v`` with entries in ``[-bound, bound]`` and ``matrix @ v == 0``.

    Meet in the middle: the columns are split in two halves, each half box is
    enumerated, and partial images are joined through a hash table.  The
    result is sorted lexicographically.
    """
    matrix = np.asarray(matrix, dtype=np.int64)
    k = matrix.shape[1]
    h = k // 2
    left, right = box_grid(h, bound), box_grid(k - h, bound)
    img_l = left @ matrix[:, :h].T
    img_r = right @ matrix[:, h:].T
    buckets: dict[bytes, list[int]] = {}
    for idx, row in enumerate(img_l):
        buckets.setdefault(row.tobytes(), []).append(idx)
    out = []
    for jdx, row in enumerate(img_r):
        hits = buckets.get((-row).tobytes())
        if hits:
            for idx in hits:
                out.append(np.concatenate([left[idx], right[jdx]]))
    if not out:
        return np.zeros((0, k), dtype=np.int64)
    sols = np.array(out, dtype=np.int64)
    return sols[np.lexsort(sols.T[::-1])]


def anticommutator_matrix(a: RingElem, keys: Sequence[Key]) -> np.ndarray:
    """Matrix of ``X -> aX + Xa`` from ``keys`` coordinates to the full basis."""
    full = zring.basis(a.n)
    cols = []
    for key in keys:
        e = RingElem._raw(a.n, a.q, {key: 1})
        cols.append(zring.to_vector(a * e + e * a, full))
    return np.array(cols, dtype=np.int64).T.reshape(len(full), len(keys))


def anticommutant_in_box(a: RingElem, bound: int,
                         support: Sequence[Key] | None = None) -> np.ndarray:
    keys = list(zring.basis(a.n) if support is None else support)
    return kernel_in_box(anticommutator_matrix(a, keys), bound)


def ideal_in_box(d: int, n: int, bound: int,
                 support: Sequence[Key] | None = None) -> np.ndarray:
    """Vectors in the box whose every nonzero entry sits on a monomial with ``x_d``."""
    keys = list(zring.basis(n) if support is None else support)
    bit = 1 << (d - 1)
    allowed = [i for i, (_, T) in enumerate(keys) if T & bit]
    grid = box_grid(len(allowed), bound)
    out = np.zeros((grid.shape[0], len(keys)), dtype=np.int64)
    out[:, allowed] = grid
    return out[np.lexsort(out.T[::-1])]


def structural_square_roots(n: int, q: int, bound: int,
                            support: Sequence[Key] | None = None,
                            hopf: bool = False) -> set[tuple[int, ...]]:
    """``{±t_d + f x_d}`` restricted to the box, built by multiplying out ``f x_d``."""
    keys = list(zring.basis(n) if support is None else support)
    keyset = set(keys)
    out = set()
    for d in range(1, n + 1):
        bit = 1 << (d - 1)
        free = [key for key in zring.basis(n) if not key[1] & bit]
        xd = zring.generator_x(d, n, q, hopf=hopf)
        td = zring.generator_t(d, n, q, hopf=hopf)
        fx = set()
        for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(free)):
            f = RingElem._raw(n, q, {key: c for key, c in zip(free, coeffs) if c})
            fx.add(f * xd)
        for sign in (1, -1):
            for h in fx:
                a = sign * td + h
                if all(key in keyset and abs(c) <= bound for key, c in a.terms.items()):
                    out.add(zring.to_vector(a, keys))
    return out


def check_square_root_lemma(n: int, q: int, bound: int, hopf: bool = False) -> Report:
    """``{a : a^2 = q}`` equals ``{±t_d + f x_d}`` on the full coefficient box."""
    report = Report("square-root-lemma")
    found = {tuple(v) for v in square_roots_in_box(n, q, bound, hopf=hopf).tolist()}
    expected = structural_square_roots(n, q, bound, hopf=hopf)
    report.checked = (2 * bound + 1) ** (4 ** n)
    report.details = {"n": n, "q": q, "bound": bound, "roots": len(found),
                      "structural": len(expected)}
    keys = zring.basis(n)
    extra = sorted(found - expected)
    missing = sorted(expected - found)
    if extra or missing:
        v = (extra or missing)[0]
        report.fail(kind="root-not-structural" if extra else "structural-not-root",
                    element=str(zring.from_vector(v, n, q, keys, hopf=True)))
    return report


def random_element(rng, n: int, q: int, max_terms: int = 3, coeff: int = 3,
                   exclude_x: int | None = None, hopf: bool = False) -> RingElem:
    """Up to ``max_terms`` random monomials with coefficients in ``[-coeff, coeff]``.

    ``exclude_x = d`` restricts to monomials without ``x_d``.
    """
    keys = zring.basis(n)
    if exclude_x is not None:
        bit = 1 << (exclude_x - 1)
        keys = [key for key in keys if not key[1] & bit]
    terms: dict[Key, int] = {}
    for _ in range(rng.randint(0, max_terms)):
        key = keys[rng.randrange(len(keys))]
        terms[key] = terms.get(key, 0) + rng.randint(-coeff, coeff)
    return RingElem(n, q, terms, hopf=hopf)


def check_anticommutant_lemma(n: int, q: int, bound: int, trials: int,
                              seed: int = 0, f_terms: int = 3, f_coeff: int = 3) -> Report:
    """For random ``T = ±t_d + f x_d``: ``{X : TX + XT = 0} = A x_d`` on the box."""
    rng = make_rng(seed)
    report = Report("anticommutant-lemma", seed=seed)
    ideals = {d: ideal_in_box(d, n, bound) for d in range(1, n + 1)}
    for trial in range(trials):
        d = rng.randint(1, n)
        sign = rng.choice((1, -1))
        f = random_element(rng, n, q, f_terms, f_coeff)
        T = sign * zring.generator_t(d, n, q) + f * zring.generator_x(d, n, q)
        sols = anticommutant_in_box(T, bound)
        if sols.shape != ideals[d].shape or not np.array_equal(sols, ideals[d]):
            a = {tuple(v) for v in sols.tolist()}
            b = {tuple(v) for v in ideals[d].tolist()}
            v = sorted(a ^ b)[0]
            return report.fail(trial=trial, T=str(T), d=d,
                               X=str(zring.from_vector(v, n, q)),
                               anticommutes=v in a, in_ideal=v in b)
        report.checked += 1
    return report


def check_tau_lemma(n: int, q: int, trials: int, seed: int = 0,
                    max_terms: int = 4, coeff: int = 3) -> Report:
    """``x_d a = tau_d(a) x_d``, ``t_d tau_d(a) = tau_d(a) t_d``, and
    ``tau_d tau_d`` kills exactly the ``x_d`` terms."""
    rng = make_rng(seed)
    report = Report("tau-lemma", seed=seed)
    for trial in range(trials):
        nn = rng.randint(1, n)
        d = rng.randint(1, nn)
        a = random_element(rng, nn, q, max_terms, coeff)
        xd, td = zring.generator_x(d, nn, q), zring.generator_t(d, nn, q)
        ta = zring.tau(d, a)
        bit = 1 << (d - 1)
        no_x = RingElem(nn, q, {k: c for k, c in a.terms.items() if not k[1] & bit})
        checks = {
            "x-slide": (xd * a, ta * xd),
            "t-commute": (td * ta, ta * td),
            "involution": (zring.tau(d, ta), no_x),
        }
        for name, (lhs, rhs) in checks.items():
            if lhs != rhs:
                return report.fail(trial=trial, identity=name, d=d, a=str(a),
                                   lhs=str(lhs), rhs=str(rhs))
        report.checked += 1
    return report
