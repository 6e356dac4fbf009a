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
from typing import Iterable, Iterator, Mapping, Union

VarName = int

KEYWORDS = frozenset({"T", "A", "const", "pred"})
RESERVED_CONSTANT_PREFIX = "_k"


def is_reserved_constant(name: str) -> bool:
    """Names `_k0`, `_k1`, ... belong to constants made up by proof search."""
    suffix = name[len(RESERVED_CONSTANT_PREFIX) :]
    return name.startswith(RESERVED_CONSTANT_PREFIX) and suffix.isdigit()


@dataclasses.dataclass(frozen=True)
class Signature:
    """Constant names plus predicate names with their arities."""

    constants: frozenset[str] = frozenset()
    predicates: tuple[tuple[str, int], ...] = ()

    def __init__(self, constants: Iterable[str] = (), predicates: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        preds = dict(predicates.items() if isinstance(predicates, Mapping) else predicates)
        consts = frozenset(constants)
        for name, arity in preds.items():
            if not isinstance(arity, int) or arity < 0:
                raise ValueError(f"Arity of predicate {name} should be a natural number, got {arity!r}")
        keywords = (consts | preds.keys()) & KEYWORDS
        if keywords:
            raise ValueError(f"Keywords cannot name constants or predicates: {', '.join(sorted(keywords))}")
        clash = consts & preds.keys()
        if clash:
            raise ValueError(f"Names declared both as constant and predicate: {', '.join(sorted(clash))}")
        object.__setattr__(self, "constants", consts)
        object.__setattr__(self, "predicates", tuple(sorted(preds.items())))

    @property
    def arities(self) -> dict[str, int]:
        return dict(self.predicates)

    def arity(self, name: str) -> int | None:
        return self.arities.get(name)

    def extend(self, constants: Iterable[str] = (), predicates: Mapping[str, int] | None = None) -> Signature:
        preds = self.arities
        preds.update(predicates or {})
        return Signature(self.constants | frozenset(constants), preds)


@dataclasses.dataclass(frozen=True)
class Var:
    id: VarName


@dataclasses.dataclass(frozen=True)
class Const:
    name: str


Term = Union[Var, Const]


@dataclasses.dataclass(frozen=True)
class Top:
    pass


@dataclasses.dataclass(frozen=True)
class Pred:
    name: str
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclasses.dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclasses.dataclass(frozen=True)
class Diam:
    body: Formula


@dataclasses.dataclass(frozen=True)
class All:
    var: VarName
    body: Formula


Formula = Union[Top, Pred, And, Diam, All]

TOP = Top()


@dataclasses.dataclass(frozen=True)
class Sequent:
    antecedent: Formula
    consequent: Formula


def fv_term(t: Term) -> frozenset[VarName]:
    if isinstance(t, Var):
        return frozenset((t.id,))
    return frozenset()


def fv(phi: Formula) -> frozenset[VarName]:
    if isinstance(phi, Top):
        return frozenset()
    if isinstance(phi, Pred):
        return frozenset(t.id for t in phi.args if isinstance(t, Var))
    if isinstance(phi, And):
        return fv(phi.left) | fv(phi.right)
    if isinstance(phi, Diam):
        return fv(phi.body)
    if isinstance(phi, All):
        return fv(phi.body) - {phi.var}
    raise TypeError(f"Not a formula: {phi!r}")


def fv_sequent(seq: Sequent) -> frozenset[VarName]:
    return fv(seq.antecedent) | fv(seq.consequent)


def occurs_const(c: str, phi: Formula) -> bool:
    return c in constants_of(phi)


def sub_term(s: Term, x: VarName, t: Term) -> Term:
    if isinstance(s, Var) and s.id == x:
        return t
    return s


def sub(phi: Formula, x: VarName, t: Term) -> Formula:
    """
    Replace the free occurrences of x by t. Binders for x shield their scope,
    other binders are crossed as they are: no renaming happens, so a variable
    of t can be captured. Guard with freefor where that matters.
    """
    if isinstance(phi, Top):
        return phi
    if isinstance(phi, Pred):
        return Pred(phi.name, tuple(sub_term(s, x, t) for s in phi.args))
    if isinstance(phi, And):
        return And(sub(phi.left, x, t), sub(phi.right, x, t))
    if isinstance(phi, Diam):
        return Diam(sub(phi.body, x, t))
    if isinstance(phi, All):
        if phi.var == x:
            return phi
        return All(phi.var, sub(phi.body, x, t))
    raise TypeError(f"Not a formula: {phi!r}")


def freefor(phi: Formula, x: VarName, t: Term) -> bool:
    """True iff no free occurrence of x in phi sits under a binder for a variable of t."""
    if isinstance(phi, (Top, Pred)):
        return True
    if isinstance(phi, And):
        return freefor(phi.left, x, t) and freefor(phi.right, x, t)
    if isinstance(phi, Diam):
        return freefor(phi.body, x, t)
    if isinstance(phi, All):
        if phi.var == x or x not in fv(phi.body):
            return True
        return phi.var not in fv_term(t) and freefor(phi.body, x, t)
    raise TypeError(f"Not a formula: {phi!r}")


def terms_of(phi: Formula) -> Iterator[Term]:
    """Every term occurrence of phi, left to right."""
    if isinstance(phi, Pred):
        yield from phi.args
    elif isinstance(phi, And):
        yield from terms_of(phi.left)
        yield from terms_of(phi.right)
    elif isinstance(phi, Diam):
        yield from terms_of(phi.body)
    elif isinstance(phi, All):
        yield from terms_of(phi.body)


def constants_of(phi: Formula) -> frozenset[str]:
    return frozenset(t.name for t in terms_of(phi) if isinstance(t, Const))


def predicates_of(phi: Formula) -> dict[str, int]:
    found: dict[str, int] = {}
    _collect_predicates(phi, found)
    return found


def _collect_predicates(phi: Formula, found: dict[str, int]):
    if isinstance(phi, Pred):
        found.setdefault(phi.name, len(phi.args))
    elif isinstance(phi, And):
        _collect_predicates(phi.left, found)
        _collect_predicates(phi.right, found)
    elif isinstance(phi, (Diam, All)):
        _collect_predicates(phi.body, found)


def vars_of(phi: Formula) -> frozenset[VarName]:
    """Variables occurring anywhere in phi, binders included."""
    occurring = {t.id for t in terms_of(phi) if isinstance(t, Var)}
    occurring.update(_binders(phi))
    return frozenset(occurring)


def _binders(phi: Formula) -> Iterator[VarName]:
    if isinstance(phi, And):
        yield from _binders(phi.left)
        yield from _binders(phi.right)
    elif isinstance(phi, Diam):
        yield from _binders(phi.body)
    elif isinstance(phi, All):
        yield phi.var
        yield from _binders(phi.body)


def depth(phi: Formula) -> int:
    if isinstance(phi, (Top, Pred)):
        return 0
    if isinstance(phi, And):
        return 1 + max(depth(phi.left), depth(phi.right))
    return 1 + depth(phi.body)


def well_formed_term(t: Term, sig: Signature) -> bool:
    if isinstance(t, Var):
        return isinstance(t.id, int) and t.id >= 0
    return t.name in sig.constants


def well_formed(phi: Formula, sig: Signature) -> bool:
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Pred):
        return sig.arity(phi.name) == len(phi.args) and all(well_formed_term(t, sig) for t in phi.args)
    if isinstance(phi, And):
        return well_formed(phi.left, sig) and well_formed(phi.right, sig)
    if isinstance(phi, Diam):
        return well_formed(phi.body, sig)
    if isinstance(phi, All):
        return isinstance(phi.var, int) and phi.var >= 0 and well_formed(phi.body, sig)
    return False


def well_formed_sequent(seq: Sequent, sig: Signature) -> bool:
    return well_formed(seq.antecedent, sig) and well_formed(seq.consequent, sig)


class SymbolTable:
    """Maps the identifiers a user writes to variable naturals and back."""

    def __init__(self, names: Mapping[str, VarName] | None = None):
        self._ids: dict[str, VarName] = {}
        self._names: dict[VarName, str] = {}
        for name, var in (names or {}).items():
            self.bind(name, var)

    def bind(self, name: str, var: VarName):
        if self._ids.get(name, var) != var or self._names.get(var, name) != name:
            raise ValueError(f"Identifier {name} is already bound to another variable")
        self._ids[name] = var
        self._names[var] = name

    def var(self, name: str) -> VarName:
        if name not in self._ids:
            fresh = 0
            while fresh in self._names:
                fresh += 1
            self.bind(name, fresh)
        return self._ids[name]

    def lookup(self, name: str) -> VarName | None:
        return self._ids.get(name)

    def name(self, var: VarName) -> str:
        if var not in self._names:
            candidate = f"v{var}"
            while candidate in self._ids:
                candidate += "_"
            self.bind(candidate, var)
        return self._names[var]

    def items(self):
        return self._ids.items()


def print_term(t: Term, table: SymbolTable) -> str:
    if isinstance(t, Var):
        return table.name(t.id)
    return t.name


def print_formula(phi: Formula, table: SymbolTable | None = None) -> str:
    if table is None:
        table = SymbolTable()
    return _print_conj(phi, table)


def _print_conj(phi: Formula, table: SymbolTable) -> str:
    if isinstance(phi, And):
        return f"{_print_conj(phi.left, table)} & {_print_unary(phi.right, table)}"
    return _print_unary(phi, table)


def _print_unary(phi: Formula, table: SymbolTable) -> str:
    if isinstance(phi, Top):
        return "T"
    if isinstance(phi, Pred):
        if not phi.args:
            return phi.name
        return f"{phi.name}({', '.join(print_term(t, table) for t in phi.args)})"
    if isinstance(phi, Diam):
        return f"<> {_print_unary(phi.body, table)}"
    if isinstance(phi, All):
        return f"A {table.name(phi.var)} . {_print_unary(phi.body, table)}"
    return f"({_print_conj(phi, table)})"


def print_sequent(seq: Sequent, table: SymbolTable | None = None) -> str:
    if table is None:
        table = SymbolTable()
    return f"{print_formula(seq.antecedent, table)} ~> {print_formula(seq.consequent, table)}"


def fresh_var(avoid: Iterable[VarName], start: VarName | None = None) -> VarName:
    taken = set(avoid)
    candidate = 0 if start is None else start
    while candidate in taken:
        candidate += 1
    return candidate
