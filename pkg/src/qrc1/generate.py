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
import random
from typing import Iterable, Iterator

from qrc1.errors import InadequateModelError, InvariantViolation
from qrc1.language import Signature
from qrc1.semantics import Element, Model, RawFrame, RawModel, World, constant_domain_eta

FAMILIES = ("constant", "tree")


@dataclasses.dataclass(frozen=True)
class ModelBounds:
    max_worlds: int = 4
    max_domain: int = 3
    density: float = 0.5
    families: tuple[str, ...] = FAMILIES

    def __post_init__(self):
        if self.max_worlds < 1 or self.max_domain < 1:
            raise ValueError("model bounds must be positive")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        unknown = set(self.families) - set(FAMILIES)
        if unknown or not self.families:
            raise ValueError(f"unknown model families: {sorted(unknown)}")


def transitive_closure(pairs: Iterable[tuple[World, World]], worlds: int) -> frozenset[tuple[World, World]]:
    reach = [[(w, u) in set(pairs) for u in range(worlds)] for w in range(worlds)]
    for k, w, u in itertools.product(range(worlds), repeat=3):
        if reach[w][k] and reach[k][u]:
            reach[w][u] = True
    return frozenset((w, u) for w in range(worlds) for u in range(worlds) if reach[w][u])


def _random_predicates(
    rng: random.Random, sig: Signature, domains: tuple[int, ...], density: float
) -> tuple[dict[str, frozenset[tuple[Element, ...]]], ...]:
    interp = []
    for size in domains:
        tables = {}
        for name, arity in sig.predicates:
            tuples = itertools.product(range(size), repeat=arity)
            tables[name] = frozenset(tup for tup in tuples if rng.random() < density)
        interp.append(tables)
    return tuple(interp)


def _constant_domain_model(rng: random.Random, sig: Signature, bounds: ModelBounds) -> RawModel:
    worlds = rng.randint(1, bounds.max_worlds)
    size = rng.randint(1, bounds.max_domain)
    edges = [(w, u) for w in range(worlds) for u in range(worlds) if rng.random() < 0.3]
    frame = RawFrame(
        worlds=worlds,
        rel=transitive_closure(edges, worlds),
        domains=(size,) * worlds,
        eta=constant_domain_eta(worlds, size),
    )
    constants = {c: rng.randrange(size) for c in sorted(sig.constants)}
    return RawModel(
        signature=sig,
        frame=frame,
        const_interp=tuple(dict(constants) for _ in range(worlds)),
        pred_interp=_random_predicates(rng, sig, frame.domains, bounds.density),
    )


def _tree_model(rng: random.Random, sig: Signature, bounds: ModelBounds) -> RawModel:
    """
    A forest whose edges carry random eta tables. R is the strict ancestor
    relation, so it is irreflexive. eta along R composes the tables on the
    unique path, eta on (w, w) is the identity and every other pair gets the
    constant map onto element 0.
    """
    worlds = rng.randint(1, bounds.max_worlds)
    domains = tuple(rng.randint(1, bounds.max_domain) for _ in range(worlds))
    parent: list[World | None] = [None]
    for w in range(1, worlds):
        parent.append(rng.choice([None, *range(w)]))
    edge_eta = {
        w: tuple(rng.randrange(domains[w]) for _ in range(domains[p]))
        for w, p in enumerate(parent)
        if p is not None
    }

    eta: dict[tuple[World, World], tuple[Element, ...]] = {}
    rel: set[tuple[World, World]] = set()
    for w in range(worlds):
        eta[(w, w)] = tuple(range(domains[w]))
    # parents precede their children, so the path to the parent is already composed
    for u in range(worlds):
        p = parent[u]
        while p is not None:
            via = eta[(p, parent[u])]
            eta[(p, u)] = tuple(edge_eta[u][d] for d in via)
            rel.add((p, u))
            p = parent[p]
    for w, u in itertools.product(range(worlds), repeat=2):
        eta.setdefault((w, u), (0,) * domains[w])

    const_interp = []
    for u in range(worlds):
        root = u
        while parent[root] is not None:
            root = parent[root]
        if root == u:
            const_interp.append({c: rng.randrange(domains[u]) for c in sorted(sig.constants)})
        else:
            const_interp.append({c: eta[(root, u)][const_interp[root][c]] for c in sorted(sig.constants)})

    return RawModel(
        signature=sig,
        frame=RawFrame(worlds=worlds, rel=frozenset(rel), domains=domains, eta=eta),
        const_interp=tuple(const_interp),
        pred_interp=_random_predicates(rng, sig, domains, bounds.density),
    )


_BUILDERS = {"constant": _constant_domain_model, "tree": _tree_model}


def generate_models(sig: Signature, bounds: ModelBounds | None = None, seed: int = 0) -> Iterator[Model]:
    """An endless, reproducible stream of adequate models, cycling through the requested families."""
    bounds = bounds or ModelBounds()
    rng = random.Random(seed)
    for family in itertools.cycle(bounds.families):
        raw = _BUILDERS[family](rng, sig, bounds)
        try:
            yield Model.validate(raw)
        except InadequateModelError as e:
            raise InvariantViolation(f"{family} generator produced an inadequate model: {e.report.summary()}") from e
