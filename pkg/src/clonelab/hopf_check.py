"""The q = 1 member of the family: the integral Sweedler Hopf ring.

Its comultiplication is a ring morphism ``A -> A (x) A``, but contracting it
with the multiplication of A is not, because A is noncommutative.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from . import zring
from .endo_operad import (GenImages, NotClassifiable, apply_tensor, is_ring_morphism,
                   projection, relation_defects, to_canonical)
from .zring import Key, RingElem

_A_BASIS = zring.basis(1)  # 1, t, x, tx


def sweedler_delta() -> GenImages:
    """``t -> t (x) t``, ``x -> 1 (x) x + x (x) t``."""
    t = zring.parse("t{1,2}x{}", 2, 1, hopf=True)
    x = zring.parse("t{}x{2} + t{2}x{1}", 2, 1, hopf=True)
    return GenImages(t, x)


def multiply_out(h: RingElem) -> RingElem:
    """The multiplication ``A^(x)k -> A``, factors multiplied left to right."""
    ident = projection(1, 1, h.q, hopf=True)
    return apply_tensor([ident] * h.n, h)


def mu_contract(m: GenImages) -> GenImages:
    """Postcompose a map into ``A (x) A`` with the multiplication of A."""
    if m.n != 2:
        raise zring.RingMismatchError("mu_contract expects a map into A (x) A")
    return GenImages(multiply_out(m.t), multiply_out(m.x))


def contraction_witness(m: GenImages) -> dict:
    """Compare ``mu(m(t) m(x))`` with ``mu(m(t)) mu(m(x))``.

    For a ring morphism ``m`` the first is the image of ``tx`` under the
    contraction; the contraction is multiplicative on ``(t, x)`` iff they agree.
    """
    derived = multiply_out(m.t * m.x)
    c = mu_contract(m)
    images = c.t * c.x
    return {
        "pair": ["t", "x"],
        "derived_tx_image": str(derived),
        "product_of_images": str(images),
        "difference": str(derived - images),
        "multiplicative": derived == images,
    }


def _monomial(key: Key, n: int, q: int) -> RingElem:
    return RingElem._raw(n, q, {key: 1})


def is_commutative(q: int, monomials: Sequence[Key] | None = None,
                   hopf: bool = False) -> tuple[bool, dict | None]:
    """Check ``ab == ba`` on basis monomials of A (or of a subring spanned by
    ``monomials``); returns the first failing pair as a witness."""
    zring.check_q(q, hopf)
    keys = list(_A_BASIS if monomials is None else monomials)
    for ka in keys:
        for kb in keys:
            a, b = _monomial(ka, 1, q), _monomial(kb, 1, q)
            if a * b != b * a:
                return False, {"a": str(a), "b": str(b), "ab": str(a * b),
                               "ba": str(b * a)}
    return True, None


def mul_is_morphism(q: int, factors: int = 2, monomials: Sequence[Key] | None = None,
                    hopf: bool = False) -> tuple[bool, dict | None]:
    """Is the multiplication ``A^(x)factors -> A`` multiplicative?

    Tested on all pairs of basis tensors built from ``monomials`` (default:
    the whole basis of A).  Returns the first failing pair in canonical
    order as a witness.
    """
    zring.check_q(q, hopf)
    local = list(_A_BASIS if monomials is None else monomials)
    keys = []
    for combo in itertools.product(local, repeat=factors):
        S = sum(s << i for i, (s, _) in enumerate(combo))
        T = sum(t << i for i, (_, t) in enumerate(combo))
        keys.append((S, T))
    keys.sort(key=zring.sort_key)
    for ka in keys:
        for kb in keys:
            a, b = _monomial(ka, factors, q), _monomial(kb, factors, q)
            lhs = multiply_out(a * b)
            rhs = multiply_out(a) * multiply_out(b)
            if lhs != rhs:
                return False, {"a": str(a), "b": str(b), "mu(ab)": str(lhs),
                               "mu(a)mu(b)": str(rhs), "difference": str(lhs - rhs)}
    return True, None



def demo() -> dict:
    """Full q = 1 witness computation, as a JSON-ready dict."""
    delta = sweedler_delta()
    contracted = mu_contract(delta)
    try:
        to_canonical(delta)
        classifiable = True
    except NotClassifiable:
        classifiable = False
    comm, comm_w = is_commutative(1, hopf=True)
    mul_ok = {}
    for q in (1, 2):
        ok, w = mul_is_morphism(q, hopf=True)
        mul_ok[str(q)] = {"is_morphism": ok, "witness": w}
    return {
        "delta": delta.to_json(),
        "delta_is_ring_morphism": is_ring_morphism(delta),
        "delta_classifiable": classifiable,
        "contraction": contracted.to_json(),
        "contraction_is_ring_morphism": is_ring_morphism(contracted),
        "contraction_defects": {k: str(v) for k, v in relation_defects(contracted).items()},
        "witness": contraction_witness(delta),
        "commutative": comm,
        "commutativity_witness": comm_w,
        "mul_is_morphism": mul_ok,
    }
