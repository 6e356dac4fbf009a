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
from typing import Tuple

from qrc1.errors import PreconditionError, Qrc1Error
from qrc1.language import (
    TOP,
    All,
    And,
    Const,
    Diam,
    Formula,
    Sequent,
    Signature,
    Term,
    Var,
    VarName,
    freefor,
    fv,
    occurs_const,
    sub,
    well_formed,
    well_formed_term,
)
from qrc1.rules import PREMISE_COUNT, RULE_PARAMS, Rule

Path = Tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class Derivation:
    """A proof tree node: a rule tag, its parameters and its premises."""

    rule: Rule
    premises: tuple[Derivation, ...] = ()
    phi: Formula | None = None
    psi: Formula | None = None
    x: VarName | None = None
    t: Term | None = None
    c: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "rule", Rule(self.rule))
        object.__setattr__(self, "premises", tuple(self.premises))

    def params(self) -> dict:
        return {name: getattr(self, name) for name in ("phi", "psi", "x", "t", "c") if getattr(self, name) is not None}


class CheckError(Qrc1Error):
    def __init__(self, path: Path, rule: Rule, reason: str, message: str):
        self.path = path
        self.rule = rule
        self.reason = reason
        self.message = message
        super().__init__(f"{format_path(path)}: {rule}: {message} [{reason}]")


def format_path(path: Path) -> str:
    return "/" + "/".join(str(i) for i in path)


# primitive rules


def top(phi: Formula) -> Derivation:
    return Derivation(Rule.TOP, phi=phi)


def refl(phi: Formula) -> Derivation:
    return Derivation(Rule.REFL, phi=phi)


def and_el(phi: Formula, psi: Formula) -> Derivation:
    return Derivation(Rule.AND_EL, phi=phi, psi=psi)


def and_er(phi: Formula, psi: Formula) -> Derivation:
    return Derivation(Rule.AND_ER, phi=phi, psi=psi)


def and_i(left: Derivation, right: Derivation) -> Derivation:
    return Derivation(Rule.AND_I, (left, right))


def cut(left: Derivation, right: Derivation) -> Derivation:
    return Derivation(Rule.CUT, (left, right))


def nec(d: Derivation) -> Derivation:
    return Derivation(Rule.NEC, (d,))


def trans(phi: Formula) -> Derivation:
    return Derivation(Rule.TRANS, phi=phi)


def all_ir(x: VarName, d: Derivation) -> Derivation:
    return Derivation(Rule.ALL_IR, (d,), x=x)


def all_il(phi: Formula, x: VarName, t: Term, d: Derivation) -> Derivation:
    return Derivation(Rule.ALL_IL, (d,), phi=phi, x=x, t=t)


def term_i(x: VarName, t: Term, d: Derivation) -> Derivation:
    return Derivation(Rule.TERM_I, (d,), x=x, t=t)


def const_e(phi: Formula, psi: Formula, x: VarName, c: str, d: Derivation) -> Derivation:
    return Derivation(Rule.CONST_E, (d,), phi=phi, psi=psi, x=x, c=c)


# kernel


def check_derivation(d: Derivation, sig: Signature) -> Sequent:
    """
    Return the sequent d proves or raise the CheckError of the first violated
    condition. A node is checked in three steps: its own shape (premise count,
    parameters, well-formedness), then its premises left to right, then the
    side conditions and premise matching of its rule.
    """
    return _check(d, sig, ())


def audit_derivation(d: Derivation, sig: Signature) -> list[tuple[Path, Rule, Sequent]]:
    """Every node of an accepted derivation with the sequent it proves, in pre-order."""
    entries: list[tuple[Path, Rule, Sequent]] = []

    def visit(node: Derivation, path: Path):
        entries.append((path, node.rule, _check(node, sig, path)))
        for i, premise in enumerate(node.premises):
            visit(premise, (*path, i))

    visit(d, ())
    return entries


def derivation_depth(d: Derivation) -> int:
    return 1 + max((derivation_depth(p) for p in d.premises), default=0)


def derivation_size(d: Derivation) -> int:
    return 1 + sum(derivation_size(p) for p in d.premises)


def _check_shape(d: Derivation, sig: Signature, path: Path):
    expected = PREMISE_COUNT[d.rule]
    if len(d.premises) != expected:
        raise CheckError(path, d.rule, "premise/count", f"expects {expected} premises, got {len(d.premises)}")
    required = RULE_PARAMS[d.rule]
    for name in required:
        if getattr(d, name) is None:
            raise CheckError(path, d.rule, "param/missing", f"parameter {name} is missing")
    for name in d.params():
        if name not in required:
            raise CheckError(path, d.rule, "param/unexpected", f"parameter {name} is not used by this rule")
    for name in ("phi", "psi"):
        value = getattr(d, name)
        if value is not None and not well_formed(value, sig):
            raise CheckError(path, d.rule, "syntax/ill-formed", f"parameter {name} is not well-formed")
    if d.t is not None and not well_formed_term(d.t, sig):
        raise CheckError(path, d.rule, "syntax/ill-formed", "parameter t is not well-formed")
    if d.c is not None and d.c not in sig.constants:
        raise CheckError(path, d.rule, "syntax/ill-formed", f"constant {d.c} is not declared")
    if d.x is not None and (not isinstance(d.x, int) or d.x < 0):
        raise CheckError(path, d.rule, "syntax/ill-formed", "parameter x is not a variable")


def _mismatch(path: Path, d: Derivation, what: str) -> CheckError:
    return CheckError(path, d.rule, "premise/mismatch", what)


def _check(d: Derivation, sig: Signature, path: Path) -> Sequent:
    _check_shape(d, sig, path)
    premises = [_check(p, sig, (*path, i)) for i, p in enumerate(d.premises)]
    rule = d.rule

    if rule is Rule.TOP:
        return Sequent(d.phi, TOP)
    if rule is Rule.REFL:
        return Sequent(d.phi, d.phi)
    if rule is Rule.AND_EL:
        return Sequent(And(d.phi, d.psi), d.phi)
    if rule is Rule.AND_ER:
        return Sequent(And(d.phi, d.psi), d.psi)
    if rule is Rule.TRANS:
        return Sequent(Diam(Diam(d.phi)), Diam(d.phi))
    if rule is Rule.AND_I:
        left, right = premises
        if left.antecedent != right.antecedent:
            raise _mismatch(path, d, "premises have different antecedents")
        return Sequent(left.antecedent, And(left.consequent, right.consequent))
    if rule is Rule.CUT:
        left, right = premises
        if left.consequent != right.antecedent:
            raise _mismatch(path, d, "consequent of the first premise is not the antecedent of the second")
        return Sequent(left.antecedent, right.consequent)
    if rule is Rule.NEC:
        (premise,) = premises
        return Sequent(Diam(premise.antecedent), Diam(premise.consequent))
    if rule is Rule.ALL_IR:
        (premise,) = premises
        if d.x in fv(premise.antecedent):
            raise CheckError(path, rule, "side/fresh-variable", "x must not be free in the antecedent")
        return Sequent(premise.antecedent, All(d.x, premise.consequent))
    if rule is Rule.ALL_IL:
        (premise,) = premises
        if not freefor(d.phi, d.x, d.t):
            raise CheckError(path, rule, "side/freefor", "t is not free for x in phi")
        if premise.antecedent != sub(d.phi, d.x, d.t):
            raise _mismatch(path, d, "premise antecedent is not phi[x:=t]")
        return Sequent(All(d.x, d.phi), premise.consequent)
    if rule is Rule.TERM_I:
        (premise,) = premises
        if not (freefor(premise.antecedent, d.x, d.t) and freefor(premise.consequent, d.x, d.t)):
            raise CheckError(path, rule, "side/freefor", "t is not free for x in both sides of the premise")
        return Sequent(sub(premise.antecedent, d.x, d.t), sub(premise.consequent, d.x, d.t))
    if rule is Rule.CONST_E:
        (premise,) = premises
        if occurs_const(d.c, d.phi) or occurs_const(d.c, d.psi):
            raise CheckError(path, rule, "side/fresh-constant", f"constant {d.c} occurs in phi or psi")
        c = Const(d.c)
        if premise != Sequent(sub(d.phi, d.x, c), sub(d.psi, d.x, c)):
            raise _mismatch(path, d, "premise is not phi[x:=c] ~> psi[x:=c]")
        return Sequent(d.phi, d.psi)
    raise AssertionError(f"unhandled rule {rule}")


# derived rules, built from primitive ones


def all_c(phi: Formula, x: VarName, y: VarName) -> Derivation:
    """A x . A y . phi ~> A y . A x . phi"""
    drop_y = all_il(phi, y, Var(y), refl(phi))
    drop_both = all_il(All(y, phi), x, Var(x), drop_y)
    return all_ir(y, all_ir(x, drop_both))


def all_sub(phi: Formula, x: VarName, t: Term) -> Derivation:
    """A x . phi ~> phi[x:=t]"""
    if not freefor(phi, x, t):
        raise PreconditionError("t is not free for x in phi")
    return all_il(phi, x, t, refl(sub(phi, x, t)))


def diam_all(phi: Formula, x: VarName) -> Derivation:
    """<> A x . phi ~> A x . <> phi"""
    return all_ir(x, nec(all_il(phi, x, Var(x), refl(phi))))


def alpha_conversion(phi: Formula, x: VarName, y: VarName) -> Derivation:
    """A x . phi ~> A y . phi[x:=y]"""
    if not freefor(phi, x, Var(y)):
        raise PreconditionError("y is not free for x in phi")
    if y in fv(All(x, phi)):
        raise PreconditionError("y is free in A x . phi")
    renamed = sub(phi, x, Var(y))
    return all_ir(y, all_il(phi, x, Var(y), refl(renamed)))


def term_ir(d: Derivation, x: VarName, t: Term, sig: Signature) -> Derivation:
    """From phi ~> psi derive phi ~> psi[x:=t]."""
    premise = check_derivation(d, sig)
    if x in fv(premise.antecedent):
        raise PreconditionError("x is free in the antecedent")
    if not freefor(premise.consequent, x, t):
        raise PreconditionError("t is not free for x in the consequent")
    return term_i(x, t, d)


def const_all_ir(d: Derivation, psi: Formula, x: VarName, c: str, sig: Signature) -> Derivation:
    """From phi ~> psi[x:=c] derive phi ~> A x . psi."""
    premise = check_derivation(d, sig)
    phi = premise.antecedent
    if x in fv(phi):
        raise PreconditionError("x is free in the antecedent")
    if occurs_const(c, phi) or occurs_const(c, psi):
        raise PreconditionError(f"constant {c} occurs in phi or psi")
    if premise.consequent != sub(psi, x, Const(c)):
        raise PreconditionError("consequent of the premise is not psi[x:=c]")
    return all_ir(x, const_e(phi, psi, x, c, d))
