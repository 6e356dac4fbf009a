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
from typing import AbstractSet, Iterator, Mapping, Union

from qrc1.errors import FormatError, InadequateModelError, InvariantViolation, PreconditionError
from qrc1.language import All, And, Diam, Formula, Pred, Signature, Term, Top, Var, VarName

World = int
Element = int


@dataclasses.dataclass(frozen=True)
class RawFrame:
    """
    Worlds are 0..worlds-1 and the domain of world w is range(domains[w]).
    eta holds a compatibility table for every ordered pair of worlds, not
    only for related ones: eta[(w, u)][d] is the image of d in the domain of u.
    """

    worlds: int
    rel: frozenset[tuple[World, World]]
    domains: tuple[int, ...]
    eta: Mapping[tuple[World, World], tuple[Element, ...]]

    def related(self, w: World, u: World) -> bool:
        return (w, u) in self.rel

    def successors(self, w: World) -> list[World]:
        return [u for u in range(self.worlds) if (w, u) in self.rel]

    def domain(self, w: World) -> range:
        return range(self.domains[w])

    def is_irreflexive(self) -> bool:
        return all((w, w) not in self.rel for w in range(self.worlds))

    def is_constant_domain(self) -> bool:
        if len(set(self.domains)) > 1:
            return False
        return all(self.eta[(w, u)] == tuple(self.domain(u)) for w in range(self.worlds) for u in range(self.worlds))


@dataclasses.dataclass(frozen=True)
class RawModel:
    """A frame with per-world interpretations of the constants and predicates of a signature."""

    signature: Signature
    frame: RawFrame
    const_interp: tuple[Mapping[str, Element], ...]
    pred_interp: tuple[Mapping[str, frozenset[tuple[Element, ...]]], ...]

    @property
    def worlds(self) -> int:
        return self.frame.worlds

    def validate_shape(self) -> RawModel:
        """Check that every table is total and stays inside the domains."""
        frame = self.frame
        if frame.worlds < 1:
            raise FormatError("a model needs at least one world")
        if len(frame.domains) != frame.worlds:
            raise FormatError(f"expected {frame.worlds} domain sizes, got {len(frame.domains)}")
        if any(size < 0 for size in frame.domains):
            raise FormatError("domain sizes must be natural numbers")
        for w, u in frame.rel:
            if not (0 <= w < frame.worlds and 0 <= u < frame.worlds):
                raise FormatError(f"relation pair ({w}, {u}) mentions an unknown world")
        for w, u in itertools.product(range(frame.worlds), repeat=2):
            table = frame.eta.get((w, u))
            if table is None:
                raise FormatError(f"eta is missing for the pair ({w}, {u})")
            if len(table) != frame.domains[w] or any(not 0 <= d < frame.domains[u] for d in table):
                raise FormatError(f"eta for ({w}, {u}) is not a function from M_{w} to M_{u}")
        if len(self.const_interp) != frame.worlds or len(self.pred_interp) != frame.worlds:
            raise FormatError("interpretations must be given for every world")
        for w in range(frame.worlds):
            for c in self.signature.constants:
                if c not in self.const_interp[w] or not 0 <= self.const_interp[w][c] < frame.domains[w]:
                    raise FormatError(f"constant {c} has no interpretation in the domain of world {w}")
            for name, tuples in self.pred_interp[w].items():
                arity = self.signature.arity(name)
                if arity is None:
                    raise FormatError(f"world {w} interprets undeclared predicate {name}")
                for tup in tuples:
                    if len(tup) != arity or any(not 0 <= d < frame.domains[w] for d in tup):
                        raise FormatError(f"tuple {list(tup)} of {name} at world {w} does not fit arity {arity}")
        return self


@dataclasses.dataclass(frozen=True)
class AdequacyReport:
    transitive_r: bool = True
    transitivity_witness: tuple[World, World, World] | None = None
    eta_functorial: bool = True
    functoriality_witness: tuple[World, World, World, Element] | None = None
    eta_identity: bool = True
    identity_witness: tuple[World, Element] | None = None
    concordant: bool = True
    concordance_witness: tuple[World, World, str] | None = None

    @property
    def adequate(self) -> bool:
        return self.transitive_r and self.eta_functorial and self.eta_identity and self.concordant

    def summary(self) -> str:
        failures = []
        if not self.transitive_r:
            w, u, v = self.transitivity_witness
            failures.append(f"R is not transitive: {w}R{u}, {u}R{v} but not {w}R{v}")
        if not self.eta_functorial:
            w, u, v, d = self.functoriality_witness
            failures.append(f"eta does not respect transitivity: worlds {w}, {u}, {v} on element {d}")
        if not self.eta_identity:
            w, d = self.identity_witness
            failures.append(f"eta_{{{w},{w}}} is not the identity on element {d}")
        if not self.concordant:
            w, u, c = self.concordance_witness
            failures.append(f"constant {c} is not concordant along {w}R{u}")
        return "; ".join(failures) if failures else "adequate"


@dataclasses.dataclass(frozen=True)
class Model:
    """A raw model that passed check_adequacy."""

    raw: RawModel
    report: AdequacyReport

    @classmethod
    def validate(cls, raw: RawModel) -> Model:
        report = check_adequacy(raw)
        if not report.adequate:
            raise InadequateModelError(report)
        return cls(raw, report)

    @property
    def signature(self) -> Signature:
        return self.raw.signature

    @property
    def frame(self) -> RawFrame:
        return self.raw.frame

    @property
    def worlds(self) -> int:
        return self.raw.frame.worlds


AnyModel = Union[RawModel, Model]


def _raw(m: AnyModel) -> RawModel:
    return m.raw if isinstance(m, Model) else m


@dataclasses.dataclass(frozen=True)
class Assignment:
    """
    A w-assignment: the total function sending x to overrides[x] when present
    and to default otherwise.
    """

    world: World
    default: Element
    overrides: Mapping[VarName, Element] = dataclasses.field(default_factory=dict)

    @classmethod
    def at(cls, m: AnyModel, world: World, default: Element = 0, overrides: Mapping[VarName, Element] | None = None):
        frame = _raw(m).frame
        if not 0 <= world < frame.worlds:
            raise PreconditionError(f"world {world} is not in the model")
        size = frame.domains[world]
        if size == 0:
            raise PreconditionError(f"world {world} has an empty domain and admits no assignment")
        overrides = dict(overrides or {})
        for d in (default, *overrides.values()):
            if not 0 <= d < size:
                raise PreconditionError(f"element {d} is not in the domain of world {world}")
        return cls(world, default, overrides)

    def __call__(self, x: VarName) -> Element:
        return self.overrides.get(x, self.default)

    def update(self, x: VarName, d: Element) -> Assignment:
        overrides = dict(self.overrides)
        overrides[x] = d
        return Assignment(self.world, self.default, overrides)

    def relocate(self, world: World) -> Assignment:
        return Assignment(world, self.default, dict(self.overrides))


def check_adequacy(m: AnyModel) -> AdequacyReport:
    raw = _raw(m)
    frame = raw.frame
    worlds = range(frame.worlds)
    found: dict = {}
    for w, u, v in itertools.product(worlds, repeat=3):
        if not (frame.related(w, u) and frame.related(u, v)):
            continue
        if not frame.related(w, v):
            found.setdefault("transitivity", (w, u, v))
        for d in frame.domain(w):
            if frame.eta[(w, v)][d] != frame.eta[(u, v)][frame.eta[(w, u)][d]]:
                found.setdefault("functoriality", (w, u, v, d))
                break
    for w in worlds:
        for d in frame.domain(w):
            if frame.eta[(w, w)][d] != d:
                found.setdefault("identity", (w, d))
                break
    for (w, u), c in itertools.product(sorted(frame.rel), sorted(raw.signature.constants)):
        if raw.const_interp[u][c] != frame.eta[(w, u)][raw.const_interp[w][c]]:
            found.setdefault("concordance", (w, u, c))
    return AdequacyReport(
        transitive_r="transitivity" not in found,
        transitivity_witness=found.get("transitivity"),
        eta_functorial="functoriality" not in found,
        functoriality_witness=found.get("functoriality"),
        eta_identity="identity" not in found,
        identity_witness=found.get("identity"),
        concordant="concordance" not in found,
        concordance_witness=found.get("concordance"),
    )


def assign_term(m: AnyModel, g: Assignment, t: Term) -> Element:
    if isinstance(t, Var):
        return g(t.id)
    interp = _raw(m).const_interp[g.world]
    if t.name not in interp:
        raise PreconditionError(f"undeclared constant {t.name}")
    return interp[t.name]


def eta_compose(m: AnyModel, w: World, u: World, g: Assignment) -> Assignment:
    """eta_{w,u} after g, as a u-assignment."""
    table = _raw(m).frame.eta[(w, u)]
    return Assignment(u, table[g.default], {x: table[d] for x, d in g.overrides.items()})


def xaltern(g: Assignment, h: Assignment, gamma: AbstractSet[VarName], over: AbstractSet[VarName] | None = None) -> bool:
    """
    g and h coincide outside gamma. With over only the variables of that
    set are compared; without it the comparison is over every variable,
    which the finite representation makes decidable.
    """
    if over is not None:
        return all(g(x) == h(x) for x in over if x not in gamma)
    if g.default != h.default:
        return False
    keys = set(g.overrides) | set(h.overrides)
    return all(g(x) == h(x) for x in keys if x not in gamma)


def xeq(g: Assignment, h: Assignment, gamma: AbstractSet[VarName]) -> bool:
    return all(g(x) == h(x) for x in gamma)


def alternatives(g: Assignment, x: VarName, size: int) -> Iterator[Assignment]:
    """Every x-alternative of g over a domain of the given size, one per value of x."""
    for d in range(size):
        yield g.update(x, d)


def sat(m: AnyModel, w: World, g: Assignment, phi: Formula) -> bool:
    """M, w |=^g phi. Adequacy is not needed to evaluate."""
    raw = _raw(m)
    if g.world != w:
        raise PreconditionError(f"assignment for world {g.world} used at world {w}")
    return _sat(raw, w, g, phi)


def _sat(raw: RawModel, w: World, g: Assignment, phi: Formula) -> bool:
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Pred):
        values = tuple(assign_term(raw, g, t) for t in phi.args)
        return values in raw.pred_interp[w].get(phi.name, frozenset())
    if isinstance(phi, And):
        return _sat(raw, w, g, phi.left) and _sat(raw, w, g, phi.right)
    if isinstance(phi, Diam):
        return any(_sat(raw, u, eta_compose(raw, w, u, g), phi.body) for u in raw.frame.successors(w))
    if isinstance(phi, All):
        return all(_sat(raw, w, h, phi.body) for h in alternatives(g, phi.var, raw.frame.domains[w]))
    raise TypeError(f"Not a formula: {phi!r}")


# model surgery


def replace_i(m: AnyModel, w: World, c: str, d: Element) -> RawModel:
    """Interpret c as eta_{w,u}(d) at every world u. Other constants keep their meaning."""
    raw = _raw(m)
    if c not in raw.signature.constants:
        raise PreconditionError(f"undeclared constant {c}")
    if d not in raw.frame.domain(w):
        raise PreconditionError(f"element {d} is not in the domain of world {w}")
    const_interp = []
    for u in range(raw.frame.worlds):
        interp = dict(raw.const_interp[u])
        interp[c] = raw.frame.eta[(w, u)][d]
        const_interp.append(interp)
    return dataclasses.replace(raw, const_interp=tuple(const_interp))


def cone(m: AnyModel, w: World) -> list[World]:
    """w followed by its successors in increasing order."""
    return [w] + [u for u in _raw(m).frame.successors(w) if u != w]


def restrict_to_cone(m: AnyModel, w: World) -> RawModel:
    """Keep w and its successors only; w becomes world 0 and the others keep their relative order."""
    raw = _raw(m)
    kept = cone(raw, w)
    index = {old: new for new, old in enumerate(kept)}
    frame = raw.frame
    restricted = RawFrame(
        worlds=len(kept),
        rel=frozenset((index[a], index[b]) for a, b in frame.rel if a in index and b in index),
        domains=tuple(frame.domains[u] for u in kept),
        eta={(index[a], index[b]): frame.eta[(a, b)] for a in kept for b in kept},
    )
    return RawModel(
        signature=raw.signature,
        frame=restricted,
        const_interp=tuple(raw.const_interp[u] for u in kept),
        pred_interp=tuple(raw.pred_interp[u] for u in kept),
    )


def restrict_replace(m: Model, w: World, c: str, d: Element) -> Model:
    """The cone of w with c reinterpreted from d. The result is world 0 of an adequate model."""
    raw = restrict_to_cone(replace_i(m, w, c, d), w)
    try:
        return Model.validate(raw)
    except InadequateModelError as e:
        raise InvariantViolation(f"restrict_replace produced an inadequate model: {e.report.summary()}") from e


def constant_domain_eta(worlds: int, size: int) -> dict[tuple[World, World], tuple[Element, ...]]:
    identity = tuple(range(size))
    return {(w, u): identity for w in range(worlds) for u in range(worlds)}
