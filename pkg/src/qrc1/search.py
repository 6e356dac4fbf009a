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

import dataclasses
import itertools
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Final, Iterable, Iterator, Sequence, Union

from qrc1.calculus import (
    Derivation,
    all_il,
    all_ir,
    and_el,
    and_er,
    and_i,
    check_derivation,
    const_e,
    cut,
    nec,
    refl,
    top,
    trans,
)
from qrc1.errors import InvariantViolation
from qrc1.language import (
    RESERVED_CONSTANT_PREFIX,
    All,
    And,
    Const,
    Diam,
    Formula,
    Sequent,
    Signature,
    Term,
    Top,
    Var,
    constants_of,
    freefor,
    fresh_var,
    fv,
    fv_sequent,
    predicates_of,
    sub,
    terms_of,
    vars_of,
)
from qrc1.semantics import (
    Assignment,
    Model,
    RawFrame,
    RawModel,
    World,
    check_adequacy,
    constant_domain_eta,
    sat,
)

LOGGER: Final = logging.getLogger(__name__)

@dataclasses.dataclass(frozen=True)
class SearchBounds:
    max_worlds: int = 4
    max_domain: int = 3
    max_proof_depth: int = 8
    max_candidate_terms: int = 1
    deadline: float | None = None
    workers: int = 1

    def __post_init__(self):
        for name in ("max_worlds", "max_domain", "max_proof_depth", "max_candidate_terms", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.deadline is not None and self.deadline <= 0:
            raise ValueError(f"deadline must be positive, got {self.deadline}")


@dataclasses.dataclass(frozen=True)
class Witness:
    """A model, a world and an assignment where the antecedent holds and the consequent fails."""

    model: Model
    world: World
    assignment: Assignment


@dataclasses.dataclass(frozen=True)
class Proved:
    derivation: Derivation
    signature: Signature


@dataclasses.dataclass(frozen=True)
class Refuted:
    model: Model
    world: World
    assignment: Assignment


@dataclasses.dataclass(frozen=True)
class Exhausted:
    reason: str


SearchOutcome = Union[Proved, Refuted, Exhausted]


class _OutOfTime(Exception):
    pass


def _deadline_at(bounds: SearchBounds) -> float | None:
    return None if bounds.deadline is None else time.time() + bounds.deadline


def _tick(deadline_at: float | None):
    if deadline_at is not None and time.time() > deadline_at:
        raise _OutOfTime


# soundness harness


def _sample_assignments(
    rng: random.Random, world: World, size: int, variables: Sequence[int], samples: int
) -> Iterator[Assignment]:
    if size ** len(variables) <= samples:
        for values in itertools.product(range(size), repeat=len(variables)):
            yield Assignment(world, 0, dict(zip(variables, values)))
        return
    yield Assignment(world, 0, {})
    for _ in range(samples - 1):
        yield Assignment(world, rng.randrange(size), {x: rng.randrange(size) for x in variables})


def soundness_check(
    d: Derivation, sig: Signature, models: Iterable[Model], samples_per_model: int = 8, seed: int = 0
) -> Witness | None:
    """
    Look for a model, world and assignment where the conclusion of d fails:
    the antecedent holds and the consequent does not. Any result means the
    kernel accepted an unsound tree.
    """
    seq = check_derivation(d, sig)
    variables = sorted(fv_sequent(seq))
    rng = random.Random(seed)
    for visited, m in enumerate(models, 1):
        for w in range(m.worlds):
            size = m.frame.domains[w]
            if size == 0:
                continue
            for g in _sample_assignments(rng, w, size, variables, samples_per_model):
                if sat(m, w, g, seq.antecedent) and not sat(m, w, g, seq.consequent):
                    LOGGER.info("soundness violated after %d models", visited)
                    return Witness(m, w, g)
    return None


# countermodel enumeration


def _is_transitive(pairs: frozenset) -> bool:
    return all((w, v) in pairs for (w, u) in pairs for (u2, v) in pairs if u == u2)


def rooted_orders(worlds: int) -> list[frozenset]:
    """Irreflexive transitive relations on range(worlds) in which 0 sees every other world."""
    base = frozenset((0, u) for u in range(1, worlds))
    others = [(a, b) for a in range(1, worlds) for b in range(1, worlds) if a != b]
    orders = []
    for mask in range(2 ** len(others)):
        pairs = base | {pair for i, pair in enumerate(others) if mask >> i & 1}
        if _is_transitive(pairs):
            orders.append(pairs)
    return orders


def size_stages(bounds: SearchBounds) -> list[tuple[int, int]]:
    return [(n, k) for n in range(1, bounds.max_worlds + 1) for k in range(1, bounds.max_domain + 1)]


def _stage_models(sig: Signature, seq: Sequent, worlds: int, size: int, rel: frozenset) -> Iterator[RawModel]:
    """Every constant-domain model over one relation, in lexicographic order of its tables."""
    frame = RawFrame(worlds=worlds, rel=rel, domains=(size,) * worlds, eta=constant_domain_eta(worlds, size))
    arities = sig.arities
    used_preds = sorted(set(predicates_of(seq.antecedent)) | set(predicates_of(seq.consequent)))
    used_consts = sorted(constants_of(seq.antecedent) | constants_of(seq.consequent))
    idle_consts = {c: 0 for c in sig.constants if c not in used_consts}
    tuples = {name: list(itertools.product(range(size), repeat=arities[name])) for name in used_preds}
    slots = [(w, name) for w in range(worlds) for name in used_preds]
    for const_values in itertools.product(range(size), repeat=len(used_consts)):
        consts = dict(idle_consts)
        consts.update(zip(used_consts, const_values))
        const_interp = tuple(consts for _ in range(worlds))
        for masks in itertools.product(*(range(2 ** len(tuples[name])) for _, name in slots)):
            pred_interp: list[dict] = [{name: frozenset() for name, _ in sig.predicates} for _ in range(worlds)]
            for (w, name), mask in zip(slots, masks):
                pred_interp[w][name] = frozenset(tup for i, tup in enumerate(tuples[name]) if mask >> i & 1)
            yield RawModel(signature=sig, frame=frame, const_interp=const_interp, pred_interp=tuple(pred_interp))


def _search_relations(
    sig: Signature, seq: Sequent, worlds: int, size: int, relations: Sequence[frozenset], deadline_at: float | None
) -> tuple[RawModel, Assignment] | None:
    variables = sorted(fv_sequent(seq))
    for rel in relations:
        for raw in _stage_models(sig, seq, worlds, size, rel):
            _tick(deadline_at)
            for values in itertools.product(range(size), repeat=len(variables)):
                g = Assignment(0, 0, dict(zip(variables, values)))
                if sat(raw, 0, g, seq.antecedent) and not sat(raw, 0, g, seq.consequent):
                    return raw, g
    return None


def _search_chunk(args) -> tuple[RawModel, Assignment] | str | None:
    try:
        return _search_relations(*args)
    except _OutOfTime:
        return "deadline"


class _Enumerator:
    """Runs the countermodel stages, fanning the relations of a stage out to worker processes when asked."""

    def __init__(self, sig: Signature, seq: Sequent, bounds: SearchBounds, deadline_at: float | None):
        self.sig = sig
        self.seq = seq
        self.deadline_at = deadline_at
        self.pool = ProcessPoolExecutor(bounds.workers) if bounds.workers > 1 else None

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()

    def stage(self, worlds: int, size: int) -> Witness | None:
        LOGGER.debug("countermodel stage: %d worlds, %d elements", worlds, size)
        relations = rooted_orders(worlds)
        if self.pool is None:
            found = _search_relations(self.sig, self.seq, worlds, size, relations, self.deadline_at)
        else:
            # one job per relation, read back in enumeration order
            jobs = [
                self.pool.submit(_search_chunk, (self.sig, self.seq, worlds, size, [rel], self.deadline_at))
                for rel in relations
            ]
            found = None
            try:
                for job in jobs:
                    result = job.result()
                    if result == "deadline":
                        raise _OutOfTime
                    if result is not None:
                        found = result
                        break
            finally:
                for job in jobs:
                    job.cancel()
        if found is None:
            return None
        raw, g = found
        return Witness(Model.validate(raw), 0, g)


def enumerate_countermodels(sig: Signature, seq: Sequent, bounds: SearchBounds) -> Witness | None:
    """
    Search adequate, constant-domain, irreflexive models with identity eta for a
    world and assignment where the antecedent holds and the consequent fails.
    Stages go by increasing (worlds, domain size); only models rooted at world 0
    are visited and the witness is always at the root.
    """
    enumerator = _Enumerator(sig, seq, bounds, _deadline_at(bounds))
    try:
        for worlds, size in size_stages(bounds):
            witness = enumerator.stage(worlds, size)
            if witness is not None:
                return witness
    except _OutOfTime:
        LOGGER.info("countermodel search ran out of time")
    finally:
        enumerator.close()
    return None


# backward proof search


class _Prover:
    def __init__(self, sig: Signature, seq: Sequent, bounds: SearchBounds, deadline_at: float | None):
        self.sig = sig
        self.deadline_at = deadline_at
        taken = vars_of(seq.antecedent) | vars_of(seq.consequent)
        fresh: list[Term] = []
        for _ in range(bounds.max_candidate_terms):
            x = fresh_var(taken)
            taken = taken | {x}
            fresh.append(Var(x))
        seen = [*terms_of(seq.antecedent), *terms_of(seq.consequent)]
        seen.extend(Var(x) for x in sorted(vars_of(seq.antecedent) | vars_of(seq.consequent)))
        self.candidates: list[Term] = list(dict.fromkeys(seen)) + fresh
        self.failed: dict[tuple[Formula, Formula], int] = {}
        self.proved: dict[tuple[Formula, Formula], Derivation] = {}

    def fresh_constant(self, *formulas: Formula) -> str:
        avoid = set(self.sig.constants)
        for phi in formulas:
            avoid |= constants_of(phi)
        for i in itertools.count():
            name = f"{RESERVED_CONSTANT_PREFIX}{i}"
            if name not in avoid:
                return name
        raise AssertionError("unreachable")

    def terms_for(self, phi: Formula, psi: Formula) -> list[Term]:
        return list(dict.fromkeys([*self.candidates, *terms_of(phi), *terms_of(psi)]))

    def prove(self, phi: Formula, psi: Formula, depth: int) -> Derivation | None:
        key = (phi, psi)
        if key in self.proved:
            return self.proved[key]
        if self.failed.get(key, 0) >= depth:
            return None
        _tick(self.deadline_at)
        found = self._attempt(phi, psi, depth)
        if found is None:
            self.failed[key] = depth
        else:
            self.proved[key] = found
        return found

    def _attempt(self, phi: Formula, psi: Formula, depth: int) -> Derivation | None:
        if phi == psi:
            return refl(phi)
        if isinstance(psi, Top):
            return top(phi)
        if isinstance(phi, Diam) and isinstance(phi.body, Diam) and psi == phi.body:
            return trans(phi.body.body)
        if depth <= 1:
            return None
        below = depth - 1

        if isinstance(psi, And):
            left = self.prove(phi, psi.left, below)
            right = self.prove(phi, psi.right, below) if left is not None else None
            return and_i(left, right) if right is not None else None
        if isinstance(psi, All):
            if psi.var not in fv(phi):
                body = self.prove(phi, psi.body, below)
                return all_ir(psi.var, body) if body is not None else None
            # rename the clashing free variable to a fresh constant first
            c = self.fresh_constant(phi, psi)
            renamed = self.prove(sub(phi, psi.var, Const(c)), psi, below)
            return const_e(phi, psi, psi.var, c, renamed) if renamed is not None else None

        if isinstance(phi, And):
            for part, eliminate in ((phi.left, and_el), (phi.right, and_er)):
                rest = self.prove(part, psi, below)
                if rest is not None:
                    return cut(eliminate(phi.left, phi.right), rest)
        if isinstance(phi, Diam) and isinstance(psi, Diam):
            inner = self.prove(phi.body, psi.body, below)
            if inner is not None:
                return nec(inner)
        if isinstance(phi, Diam) and isinstance(phi.body, Diam):
            rest = self.prove(phi.body, psi, below)
            if rest is not None:
                return cut(trans(phi.body.body), rest)
        if isinstance(phi, All):
            for t in self.terms_for(phi, psi):
                if not freefor(phi.body, phi.var, t):
                    continue
                rest = self.prove(sub(phi.body, phi.var, t), psi, below)
                if rest is not None:
                    return all_il(phi.body, phi.var, t, rest)
        return None

    def signature_for(self, d: Derivation) -> Signature:
        used = set()
        stack = [d]
        while stack:
            node = stack.pop()
            if node.c is not None:
                used.add(node.c)
            stack.extend(node.premises)
        return self.sig.extend(constants=used)


def _prove_at(prover: _Prover, seq: Sequent, depth: int) -> Proved | None:
    LOGGER.debug("proof search at depth %d", depth)
    d = prover.prove(seq.antecedent, seq.consequent, depth)
    if d is None:
        return None
    ext = prover.signature_for(d)
    if check_derivation(d, ext) != seq:
        raise InvariantViolation("proof search returned a derivation of another sequent")
    return Proved(d, ext)


def proof_search(sig: Signature, seq: Sequent, bounds: SearchBounds) -> Proved | None:
    """
    Iterative deepening backward search over the rules. Best effort: a miss at
    a given depth says nothing about provability.
    """
    prover = _Prover(sig, seq, bounds, _deadline_at(bounds))
    try:
        for depth in range(1, bounds.max_proof_depth + 1):
            proved = _prove_at(prover, seq, depth)
            if proved is not None:
                return proved
    except _OutOfTime:
        LOGGER.info("proof search ran out of time")
    return None


def decide(sig: Signature, seq: Sequent, bounds: SearchBounds) -> SearchOutcome:
    """
    Alternate one proof search depth with one countermodel stage until one of
    them answers or every bound is used up.
    """
    deadline_at = _deadline_at(bounds)
    prover = _Prover(sig, seq, bounds, deadline_at)
    enumerator = _Enumerator(sig, seq, bounds, deadline_at)
    stages = size_stages(bounds)
    try:
        for step in range(max(bounds.max_proof_depth, len(stages))):
            if step < bounds.max_proof_depth:
                proved = _prove_at(prover, seq, step + 1)
                if proved is not None:
                    LOGGER.info("proved at depth %d", step + 1)
                    return proved
            if step < len(stages):
                witness = enumerator.stage(*stages[step])
                if witness is not None:
                    LOGGER.info("refuted with %d worlds, %d elements", *stages[step])
                    return Refuted(witness.model, witness.world, witness.assignment)
    except _OutOfTime:
        return Exhausted("deadline")
    finally:
        enumerator.close()
    return Exhausted(
        f"max-proof-depth={bounds.max_proof_depth}, max-worlds={bounds.max_worlds}, max-domain={bounds.max_domain}"
    )


def verify_outcome(sig: Signature, seq: Sequent, outcome: SearchOutcome) -> bool:
    """Re-check a definitive outcome from scratch: the kernel for proofs, the semantics for refutations."""
    if isinstance(outcome, Proved):
        return check_derivation(outcome.derivation, outcome.signature) == seq
    if isinstance(outcome, Refuted):
        m = outcome.model
        return (
            check_adequacy(m).adequate
            and m.frame.is_irreflexive()
            and m.frame.is_constant_domain()
            and sat(m, outcome.world, outcome.assignment, seq.antecedent)
            and not sat(m, outcome.world, outcome.assignment, seq.consequent)
        )
    return True
