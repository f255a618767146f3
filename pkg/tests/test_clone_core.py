import pytest

from clonelab import clone_core, endo_operad as endo, fincard, set_model
from clonelab.clone_core import clone_from_operad, operad_from_clone


def endo_sampler(q):
    return lambda rng, k: endo.random_morphism(rng, k, q)


def set_sampler(s):
    return lambda rng, k: set_model.random_op(rng, s, k)


INSTANCES = {
    "set": (set_model.SetClone(3), set_model.SetOperad(3), set_sampler(3)),
    "endo": (endo.EndoClone(3), endo.EndoOperad(3), endo_sampler(3)),
}


@pytest.mark.parametrize("name", sorted(INSTANCES))
def test_clone_roundtrip(name):
    clone, _, sampler = INSTANCES[name]
    r = clone_core.check_clone_roundtrip(clone, sampler, 200, seed=1)
    assert r.ok, r.counterexample
    assert r.checked == 200


@pytest.mark.parametrize("name", sorted(INSTANCES))
def test_operad_roundtrip(name):
    _, operad, sampler = INSTANCES[name]
    r = clone_core.check_operad_roundtrip(operad, sampler, 200, seed=2)
    assert r.ok, r.counterexample


@pytest.mark.parametrize("name", sorted(INSTANCES))
def test_projections_agree(name):
    clone, operad, _ = INSTANCES[name]
    assert clone_core.check_projections_agree(clone, operad, 4).ok


def test_set_cartesian_axioms():
    r = clone_core.check_cartesian_axioms(set_model.SetOperad(2), set_sampler(2), 300, seed=3)
    assert r.ok, r.counterexample


def test_set_operad_from_clone_is_cartesian():
    op = operad_from_clone(set_model.SetClone(2))
    r = clone_core.check_cartesian_axioms(op, set_sampler(2), 200, seed=4)
    assert r.ok, r.counterexample


def test_clone_from_set_operad_satisfies_axioms():
    clone = clone_from_operad(set_model.SetOperad(2))
    r = clone_core.check_clone_axioms(clone, set_sampler(2), 200, seed=5, max_arity=2)
    assert r.ok, r.counterexample


def test_endo_clone_axioms_report_associativity_failure():
    r = clone_core.check_clone_axioms(endo.EndoClone(2), endo_sampler(2), 1000, seed=42)
    assert not r.ok
    assert r.counterexample["axiom"] == 3
    left = endo.GenImages.from_json(r.counterexample["left"])
    right = endo.GenImages.from_json(r.counterexample["right"])
    assert endo.is_ring_morphism(left) and endo.is_ring_morphism(right)
    assert left != right


def test_endo_cartesian_dot_composition_fails():
    op = operad_from_clone(endo.EndoClone(2))
    r = clone_core.check_cartesian_axioms(op, endo_sampler(2), 500, seed=0)
    assert not r.ok
    assert r.counterexample["law"] == "dot-composition"


def test_mutated_bullet_is_caught():
    class SignFlipped(endo.EndoClone):
        def bullet(self, phi, psis, arity=None):
            b = super().bullet(phi, psis, arity)
            return endo.GenImages(b.t, -b.x)

    r = clone_core.check_clone_axioms(SignFlipped(2), endo_sampler(2), 50, seed=0)
    assert not r.ok
    assert r.counterexample["axiom"] in (1, 2)


def test_mutated_substitute_is_caught(monkeypatch):
    def no_offset(f, gs):
        values = []
        for j in f.values:
            values.extend(gs[j - 1].values)
        n = sum(g.source_size for g in gs)
        return fincard.Selection(n, tuple(values))

    monkeypatch.setattr(fincard, "substitute", no_offset)
    r = clone_core.check_cartesian_axioms(set_model.SetOperad(2), set_sampler(2), 300, seed=0)
    assert not r.ok
    assert r.counterexample["law"] == "interchange"


def test_report_json_schema():
    r = clone_core.check_projections_agree(set_model.SetClone(2), set_model.SetOperad(2), 2)
    assert set(r.to_json()) >= {"suite", "status", "trials", "seed", "counterexample"}


def test_exhaustive_detects_non_closed_set():
    elements = {1: [set_model.set_projection(1, 1, 2)],
                2: [set_model.FiniteOp(2, 2, (0, 0, 0, 1))]}
    with pytest.raises(ValueError):
        clone_core.check_clone_axioms_exhaustive(set_model.SetClone(2), elements)
