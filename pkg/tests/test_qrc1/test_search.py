"""
Copyright 2026 The qrc1 Authors

Licensed under the Apache License, Version 2.0 (the "License"); you may not
use this file except in compliance with the License. You may obtain a copy of
the License at http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
License for the specific language governing permissions and limitations under
the License.
"""

from __future__ import annotations

import itertools
import random
import time

import pytest

import qrc1
from qrc1.calculus import (
    all_c,
    all_il,
    all_ir,
    all_sub,
    alpha_conversion,
    and_el,
    and_er,
    and_i,
    check_derivation,
    const_all_ir,
    const_e,
    cut,
    diam_all,
    nec,
    refl,
    term_i,
    term_ir,
    top,
    trans,
)
from qrc1.errors import PreconditionError
from qrc1.generate import ModelBounds, generate_models
from qrc1.language import TOP, And, Const, Diam, Sequent, Signature, Var, freefor, fv, occurs_const, sub
from qrc1.parser import parse_source
from qrc1.rules import Rule
from qrc1.search import (
    Exhausted,
    Proved,
    Refuted,
    SearchBounds,
    decide,
    enumerate_countermodels,
    proof_search,
    rooted_orders,
    size_stages,
    soundness_check,
    verify_outcome,
)

from .utils import SEMANTIC_SIG, VARIABLES, random_formula, random_term

X = 0
k = Const("k")
SOUNDNESS_MODELS = 1000
SMOKE_BOUNDS = SearchBounds(max_worlds=4, max_domain=3, max_proof_depth=8)
KSIG = SEMANTIC_SIG.extend(constants=["k"])
INSTANCES_PER_RULE = 20
MODELS_PER_INSTANCE = SOUNDNESS_MODELS // INSTANCES_PER_RULE


def formula(rng, depth=3, sig=SEMANTIC_SIG, variables=VARIABLES):
    return random_formula(rng, sig, depth, variables)


def variable(rng):
    return rng.choice(VARIABLES)


def fresh_for(rng, *phis):
    taken = set().union(*(fv(phi) for phi in phis))
    return rng.choice([v for v in range(len(VARIABLES) + 1) if v not in taken])


def eliminated(rng, *phis):
    """The variable ConstE replaces, free in phis whenever they have one."""
    free = sorted(set().union(*(fv(phi) for phi in phis)))
    return rng.choice(free) if free else variable(rng)


def _and_i(rng):
    phi, psi = formula(rng), formula(rng)
    return and_i(and_er(phi, psi), and_el(phi, psi))


def _cut(rng):
    phi, psi, chi = formula(rng, 2), formula(rng, 2), formula(rng, 2)
    return cut(and_el(And(phi, psi), chi), and_er(phi, psi))


def _all_ir(rng):
    phi, psi = formula(rng), formula(rng)
    premise = rng.choice([and_el(phi, psi), nec(and_el(phi, psi))])
    return all_ir(fresh_for(rng, phi, psi), premise)


def _all_il(rng):
    phi, psi = formula(rng, 2), formula(rng, 2)
    v, t = variable(rng), random_term(rng, SEMANTIC_SIG)
    kind = rng.randrange(3)
    body = And(phi, psi) if kind < 2 else Diam(Diam(phi))
    if not freefor(body, v, t):
        return None
    if kind == 0:
        return all_il(body, v, t, refl(sub(body, v, t)))
    if kind == 1:
        return all_il(body, v, t, and_el(sub(phi, v, t), sub(psi, v, t)))
    return all_il(body, v, t, trans(sub(phi, v, t)))


def _term_i(rng):
    premise = nec(and_el(formula(rng), formula(rng)))
    seq = check_derivation(premise, KSIG)
    v, t = variable(rng), random_term(rng, SEMANTIC_SIG)
    if not (freefor(seq.antecedent, v, t) and freefor(seq.consequent, v, t)):
        return None
    return term_i(v, t, premise)


def _const_e(rng):
    phi, psi = formula(rng, 2), formula(rng, 2)
    v = eliminated(rng, phi, psi)
    phi_k, psi_k = sub(phi, v, k), sub(psi, v, k)
    kind = rng.randrange(3)
    if kind == 0:
        return const_e(Diam(And(phi, psi)), Diam(phi), v, "k", nec(and_el(phi_k, psi_k)))
    if kind == 1:
        return const_e(Diam(Diam(phi)), Diam(phi), v, "k", trans(phi_k))
    premise = cut(trans(And(phi_k, psi_k)), nec(and_el(phi_k, psi_k)))
    return const_e(Diam(Diam(And(phi, psi))), Diam(phi), v, "k", premise)


def _term_ir(rng):
    chi, v = formula(rng), variable(rng)
    return term_ir(nec(all_sub(chi, v, Var(v))), v, random_term(rng, SEMANTIC_SIG), KSIG)


def _const_all_ir(rng):
    chi, rest, v = formula(rng, 2), formula(rng, 2), variable(rng)
    chi_k, rest_k = sub(chi, v, k), sub(rest, v, k)
    premise = nec(cut(all_sub(And(chi, rest), v, k), and_el(chi_k, rest_k)))
    return const_all_ir(premise, Diam(chi), v, "k", KSIG)


def _all_c(rng):
    v, w = rng.sample(VARIABLES, 2)
    return all_c(formula(rng), v, w)


def _alpha_conversion(rng):
    v, w = rng.sample(range(len(VARIABLES) + 1), 2)
    return alpha_conversion(formula(rng), v, w)


RANDOM_INSTANCES = {
    "Top": lambda rng: top(formula(rng)),
    "Refl": lambda rng: refl(formula(rng)),
    "AndEl": lambda rng: and_el(formula(rng), formula(rng)),
    "AndEr": lambda rng: and_er(formula(rng), formula(rng)),
    "AndI": _and_i,
    "Cut": _cut,
    "Nec": lambda rng: nec(and_el(formula(rng), formula(rng))),
    "Trans": lambda rng: trans(formula(rng)),
    "AllIr": _all_ir,
    "AllIl": _all_il,
    "TermI": _term_i,
    "ConstE": _const_e,
    "allC": _all_c,
    "allSub": lambda rng: all_sub(formula(rng), variable(rng), random_term(rng, SEMANTIC_SIG)),
    "diamAll": lambda rng: diam_all(formula(rng), variable(rng)),
    "alphaConversion": _alpha_conversion,
    "termIr": _term_ir,
    "constAllIr": _const_all_ir,
}


def random_instance(name, rng):
    """Draw instances of the rule until one meets its side conditions."""
    while True:
        try:
            d = RANDOM_INSTANCES[name](rng)
        except PreconditionError:
            continue
        if d is not None:
            return d


# single-predicate axiom instances keep the full countermodel bounds affordable
AXIOM_SIG = Signature([], {"P": 1})
AXIOMS = {
    "Top": lambda rng: top(formula(rng, sig=AXIOM_SIG, variables=(X,))),
    "Refl": lambda rng: refl(formula(rng, sig=AXIOM_SIG, variables=(X,))),
    "AndEl": lambda rng: and_el(formula(rng, 2, AXIOM_SIG, (X,)), formula(rng, 2, AXIOM_SIG, (X,))),
    "AndEr": lambda rng: and_er(formula(rng, 2, AXIOM_SIG, (X,)), formula(rng, 2, AXIOM_SIG, (X,))),
    "Trans": lambda rng: trans(formula(rng, sig=AXIOM_SIG, variables=(X,))),
}


def sequent(text):
    sig, seq = parse_source(text)
    return sig, seq


# soundness harness


@pytest.mark.parametrize("name", sorted(RANDOM_INSTANCES))
def test_rules_are_sound(name):
    rng = random.Random(f"soundness {name}")
    models = generate_models(SEMANTIC_SIG, ModelBounds(), seed=17)
    for _ in range(INSTANCES_PER_RULE):
        instance = random_instance(name, rng)
        batch = itertools.islice(models, MODELS_PER_INSTANCE)
        assert soundness_check(instance, KSIG, batch, samples_per_model=8, seed=17) is None


def test_constant_elimination_instances_go_under_diamonds():
    rng = random.Random(3)
    for _ in range(50):
        seq = check_derivation(random_instance("ConstE", rng), KSIG)
        assert isinstance(seq.antecedent, Diam)
        assert not occurs_const("k", seq.antecedent)
        assert not occurs_const("k", seq.consequent)
        assert random_instance("constAllIr", rng).rule is Rule.ALL_IR


def test_soundness_check_reports_violations(monkeypatch):
    monkeypatch.setattr(qrc1.search, "check_derivation", lambda d, sig: Sequent(TOP, Diam(TOP)))
    models = itertools.islice(generate_models(SEMANTIC_SIG, ModelBounds(), seed=0), 200)
    witness = soundness_check(refl(TOP), SEMANTIC_SIG, models)
    assert witness is not None
    assert not witness.model.frame.successors(witness.world)


# countermodel enumeration


def test_rooted_orders():
    assert rooted_orders(1) == [frozenset()]
    assert rooted_orders(2) == [frozenset({(0, 1)})]
    orders = rooted_orders(3)
    assert len(orders) == 3
    assert all((w, w) not in order for order in orders for w in range(3))
    assert size_stages(SearchBounds(max_worlds=2, max_domain=2)) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_countermodel_of_seriality():
    sig, seq = sequent("T ~> <> T")
    witness = enumerate_countermodels(sig, seq, SearchBounds(max_worlds=2, max_domain=1))
    assert witness.model.worlds == 1
    assert witness.model.frame.rel == frozenset()
    assert witness.world == 0


def test_no_countermodel_of_an_axiom():
    sig, seq = sequent("<> <> P(x) ~> <> P(x)")
    assert enumerate_countermodels(sig, seq, SearchBounds(max_worlds=3, max_domain=3)) is None


@pytest.mark.parametrize("name", sorted(AXIOMS))
def test_axioms_have_no_countermodel_within_full_bounds(name):
    seq = check_derivation(AXIOMS[name](random.Random(f"axiom {name}")), AXIOM_SIG)
    assert enumerate_countermodels(AXIOM_SIG, seq, SearchBounds(max_worlds=4, max_domain=3)) is None


@pytest.mark.parametrize("name", sorted(AXIOMS))
def test_axioms_have_no_countermodel(name):
    rng = random.Random(f"axioms {name}")
    for _ in range(10):
        seq = check_derivation(AXIOMS[name](rng), AXIOM_SIG)
        assert enumerate_countermodels(AXIOM_SIG, seq, SearchBounds(max_worlds=3, max_domain=2)) is None


def test_countermodel_of_density():
    sig, seq = sequent("<> P(x) ~> <> <> P(x)")
    witness = enumerate_countermodels(sig, seq, SearchBounds(max_worlds=3, max_domain=2))
    m = witness.model
    assert m.worlds == 2
    assert m.frame.rel == {(0, 1)}
    assert (witness.assignment(0),) in m.raw.pred_interp[1]["P"]
    assert verify_outcome(sig, seq, Refuted(m, witness.world, witness.assignment))


def test_countermodels_are_reproducible():
    sig, seq = sequent("P(x) & S(x, y) ~> <> S(y, x)")
    bounds = SearchBounds(max_worlds=2, max_domain=2)
    first = enumerate_countermodels(sig, seq, bounds)
    assert first is not None
    assert enumerate_countermodels(sig, seq, bounds) == first


def test_workers_find_the_same_witness():
    sig, seq = sequent("<> P(x) & <> Q(x) ~> <> (P(x) & Q(x))")
    single = enumerate_countermodels(sig, seq, SearchBounds(max_worlds=3, max_domain=1))
    parallel = enumerate_countermodels(sig, seq, SearchBounds(max_worlds=3, max_domain=1, workers=2))
    assert single is not None
    assert parallel == single
    assert single.model.worlds == 3


# proof search and decide


def test_proof_search_finds_checked_proofs():
    sig, seq = sequent("A x . S(x, x) & P(x) ~> A x . S(x, x)")
    proved = proof_search(sig, seq, SMOKE_BOUNDS)
    assert proved is not None
    assert "_k0" in proved.signature.constants
    assert check_derivation(proved.derivation, proved.signature) == seq


def test_seriality_is_not_provable():
    sig, seq = sequent("T ~> <> T")
    assert proof_search(sig, seq, SMOKE_BOUNDS) is None


def test_decide_irreflexivity():
    sig, seq = sequent("T ~> <> T")
    start = time.perf_counter()
    outcome = decide(sig, seq, SearchBounds(max_worlds=2, max_domain=1, max_proof_depth=4))
    assert time.perf_counter() - start < 1.0
    assert isinstance(outcome, Refuted)
    assert outcome.model.worlds == 1
    assert outcome.model.frame.rel == frozenset()
    assert verify_outcome(sig, seq, outcome)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("<> <> P(x) ~> <> P(x)", Proved),
        ("const c. A x . P(x) ~> P(c)", Proved),
        ("<> P(x) ~> <> <> P(x)", Refuted),
        ("P(x) & Q(x) ~> Q(x) & P(x)", Proved),
        ("A x . P(x) ~> A y . P(y)", Proved),
        ("<> A x . S(x, y) ~> A x . <> S(x, y)", Proved),
    ],
)
def test_decide_smoke(text, expected):
    sig, seq = sequent(text)
    start = time.perf_counter()
    outcome = decide(sig, seq, SMOKE_BOUNDS)
    assert time.perf_counter() - start < 10.0
    assert isinstance(outcome, expected)
    assert verify_outcome(sig, seq, outcome)


def test_decide_refutation_has_two_worlds():
    sig, seq = sequent("<> P(x) ~> <> <> P(x)")
    outcome = decide(sig, seq, SMOKE_BOUNDS)
    assert outcome.model.worlds == 2
    assert outcome.model.frame.is_irreflexive()
    assert outcome.model.frame.is_constant_domain()


def test_decide_exhausted():
    sig, seq = sequent("P(x) ~> P(y)")
    outcome = decide(sig, seq, SearchBounds(max_worlds=1, max_domain=1, max_proof_depth=2))
    assert outcome == Exhausted("max-proof-depth=2, max-worlds=1, max-domain=1")
    assert isinstance(decide(sig, seq, SearchBounds(max_worlds=1, max_domain=2)), Refuted)


def test_verify_outcome_rejects_wrong_claims():
    sig, seq = sequent("<> <> P(x) ~> <> P(x)")
    assert not verify_outcome(sig, seq, Proved(refl(seq.consequent), sig))
    _, other = sequent("T ~> <> T")
    refuted = decide(sig, other, SearchBounds(max_worlds=1, max_domain=1))
    assert not verify_outcome(sig, seq, refuted)


def test_search_bounds_validation():
    with pytest.raises(ValueError):
        SearchBounds(max_worlds=0)
    with pytest.raises(ValueError):
        SearchBounds(deadline=0)
    with pytest.raises(ValueError):
        SearchBounds(workers=0)
