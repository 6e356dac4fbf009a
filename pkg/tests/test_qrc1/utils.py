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

import contextlib
import random
import sys

from hypothesis import strategies as st

from qrc1.language import TOP, All, And, Const, Diam, Formula, Pred, Signature, Var
from qrc1.semantics import Assignment, Model, RawFrame, RawModel, constant_domain_eta

SIG = Signature(["c", "d"], {"P": 1, "Q": 1, "S": 2, "R": 0})
# the semantic suites stay within two predicates of arity at most 2 and two constants
SEMANTIC_SIG = Signature(["c", "d"], {"P": 1, "S": 2})
VARIABLES = (0, 1, 2)


@contextlib.contextmanager
def nostderr():
    savestderr = sys.stderr

    class Devnull:
        def write(self, _):
            pass

        def flush(self):
            pass

    sys.stderr = Devnull()
    try:
        yield
    finally:
        sys.stderr = savestderr


# hypothesis strategies

variables = st.sampled_from(VARIABLES)
terms = st.one_of(variables.map(Var), st.sampled_from(["c", "d"]).map(Const))
atoms = st.one_of(
    st.just(TOP),
    st.just(Pred("R", ())),
    st.builds(lambda t: Pred("P", (t,)), terms),
    st.builds(lambda t: Pred("Q", (t,)), terms),
    st.builds(lambda s, t: Pred("S", (s, t)), terms, terms),
)
formulas = st.recursive(
    atoms,
    lambda inner: st.one_of(
        st.builds(And, inner, inner),
        st.builds(Diam, inner),
        st.builds(All, variables, inner),
    ),
    max_leaves=8,
)


# seeded generators for the semantic suites


def random_term(rng: random.Random, sig: Signature, variables=VARIABLES):
    constants = sorted(sig.constants)
    if constants and rng.random() < 0.3:
        return Const(rng.choice(constants))
    return Var(rng.choice(variables))


def random_formula(rng: random.Random, sig: Signature, depth: int, variables=VARIABLES) -> Formula:
    if depth == 0 or rng.random() < 0.25:
        if not sig.predicates or rng.random() < 0.1:
            return TOP
        name, arity = rng.choice(sig.predicates)
        return Pred(name, tuple(random_term(rng, sig, variables) for _ in range(arity)))
    kind = rng.randrange(3)
    if kind == 0:
        return And(random_formula(rng, sig, depth - 1, variables), random_formula(rng, sig, depth - 1, variables))
    if kind == 1:
        return Diam(random_formula(rng, sig, depth - 1, variables))
    return All(rng.choice(variables), random_formula(rng, sig, depth - 1, variables))


def random_assignment(rng: random.Random, m, w: int, variables=VARIABLES) -> Assignment:
    size = m.frame.domains[w]
    overrides = {x: rng.randrange(size) for x in variables if rng.random() < 0.8}
    return Assignment.at(m, w, rng.randrange(size), overrides)


# hand-built models


def constant_domain_model(
    sig: Signature, worlds: int, rel, size: int, consts=None, preds=None, validate: bool = True
) -> RawModel | Model:
    """Identity eta, the same constants everywhere; preds is one {name: tuples} per world."""
    frame = RawFrame(worlds=worlds, rel=frozenset(rel), domains=(size,) * worlds, eta=constant_domain_eta(worlds, size))
    const_interp = tuple(dict(consts or {c: 0 for c in sig.constants}) for _ in range(worlds))
    pred_interp = []
    for w in range(worlds):
        given = (preds or [{}] * worlds)[w]
        pred_interp.append({name: frozenset(map(tuple, given.get(name, ()))) for name, _ in sig.predicates})
    raw = RawModel(signature=sig, frame=frame, const_interp=const_interp, pred_interp=tuple(pred_interp))
    return Model.validate(raw) if validate else raw
