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
from typing import Iterator

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from qrc1.errors import ParseError
from qrc1.language import (
    TOP,
    All,
    And,
    Const,
    Diam,
    Formula,
    Pred,
    Sequent,
    Signature,
    SymbolTable,
    Term,
    Var,
    is_reserved_constant,
)

GRAMMAR = r"""
    source: decl* formula "~>" formula
    sequent: formula "~>" formula
    formula_only: formula
    term_only: term

    decl: "const" NAME ("," NAME)* "."              -> const_decl
        | "pred" arity ("," arity)* "."             -> pred_decl
    arity: NAME "/" INT

    ?formula: formula "&" unary                     -> conj
            | unary
    ?unary: "<>" unary                              -> diam
          | "A" NAME "." unary                      -> forall
          | atom
    ?atom: "T"                                      -> top
         | NAME "(" ")"                             -> pred
         | NAME "(" term ("," term)* ")"            -> pred
         | NAME                                     -> pred
         | "(" formula ")"
    term: NAME

    NAME: /[A-Za-z_][A-Za-z0-9_']*/
    COMMENT: /#[^\n]*/

    %import common.INT
    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_PARSER = Lark(GRAMMAR, parser="lalr", start=["source", "sequent", "formula_only", "term_only"])


@v_args(inline=True)
class _RawTree(Transformer):
    """Turns the parse tree into nested tuples that still carry the name tokens."""

    def source(self, *children):
        *decls, left, right = children
        return list(decls), left, right

    def sequent(self, left, right):
        return left, right

    def formula_only(self, phi):
        return phi

    def term_only(self, t):
        return t

    def const_decl(self, *names):
        return ("const", list(names))

    def arity(self, name, value):
        return name, int(value)

    def pred_decl(self, *arities):
        return ("pred", list(arities))

    def conj(self, left, right):
        return ("and", left, right)

    def diam(self, body):
        return ("diam", body)

    def forall(self, name, body):
        return ("all", name, body)

    def top(self):
        return ("top",)

    def pred(self, name, *args):
        return ("pred", name, list(args))

    def term(self, name):
        return name


def _error_at(message: str, token: Token | None = None) -> ParseError:
    if token is None or token.line is None:
        return ParseError(message)
    return ParseError(message, token.line, token.column)


def _raw(text: str, start: str):
    try:
        tree = _PARSER.parse(text, start=start)
        return _RawTree().transform(tree)
    except UnexpectedEOF as e:
        raise ParseError("unexpected end of input") from e
    except UnexpectedToken as e:
        if e.token.type == "$END":
            raise ParseError("unexpected end of input") from e
        raise ParseError(f"syntax error: unexpected {str(e.token)!r}", e.line, e.column) from e
    except UnexpectedInput as e:
        raise ParseError(f"syntax error: {str(e).splitlines()[0]}", e.line, e.column) from e
    except VisitError as e:
        raise ParseError(str(e.orig_exc)) from e


class _Resolver:
    def __init__(self, sig: Signature, table: SymbolTable):
        self.sig = sig
        self.table = table

    def term(self, name: Token) -> Term:
        if str(name) in self.sig.constants:
            return Const(str(name))
        if self.sig.arity(str(name)) is not None:
            raise _error_at(f"predicate {name} used as a term", name)
        return Var(self.table.var(str(name)))

    def formula(self, raw) -> Formula:
        kind = raw[0]
        if kind == "top":
            return TOP
        if kind == "and":
            return And(self.formula(raw[1]), self.formula(raw[2]))
        if kind == "diam":
            return Diam(self.formula(raw[1]))
        if kind == "all":
            name = raw[1]
            if str(name) in self.sig.constants:
                raise _error_at(f"constant {name} cannot be bound", name)
            return All(self.table.var(str(name)), self.formula(raw[2]))
        _, name, args = raw
        arity = self.sig.arity(str(name))
        if arity is None:
            raise _error_at(f"undeclared predicate {name}", name)
        if arity != len(args):
            raise _error_at(f"predicate {name} expects {arity} arguments, got {len(args)}", name)
        return Pred(str(name), tuple(self.term(t) for t in args))


def _infer_predicates(raw, found: dict):
    kind = raw[0]
    if kind == "and":
        _infer_predicates(raw[1], found)
        _infer_predicates(raw[2], found)
    elif kind == "diam":
        _infer_predicates(raw[1], found)
    elif kind == "all":
        _infer_predicates(raw[2], found)
    elif kind == "pred":
        _, name, args = raw
        if found.setdefault(str(name), len(args)) != len(args):
            raise _error_at(f"predicate {name} used with {len(args)} arguments, earlier with {found[str(name)]}", name)


def _names(raw) -> Iterator[Token]:
    kind = raw[0]
    if kind == "and":
        yield from _names(raw[1])
        yield from _names(raw[2])
    elif kind == "diam":
        yield from _names(raw[1])
    elif kind == "all":
        yield raw[1]
        yield from _names(raw[2])
    elif kind == "pred":
        yield raw[1]
        yield from raw[2]


def _reject_reserved(decls, left, right):
    declared = [name for kind, items in decls for name in (items if kind == "const" else (n for n, _ in items))]
    for name in itertools.chain(declared, _names(left), _names(right)):
        if is_reserved_constant(str(name)):
            raise _error_at(f"identifier {name} is reserved for generated constants", name)


def parse_formula(text: str, sig: Signature, table: SymbolTable | None = None) -> Formula:
    return _Resolver(sig, table if table is not None else SymbolTable()).formula(_raw(text, "formula_only"))


def parse_sequent(text: str, sig: Signature, table: SymbolTable | None = None) -> Sequent:
    resolver = _Resolver(sig, table if table is not None else SymbolTable())
    left, right = _raw(text, "sequent")
    return Sequent(resolver.formula(left), resolver.formula(right))


def parse_term(text: str, sig: Signature, table: SymbolTable | None = None) -> Term:
    return _Resolver(sig, table if table is not None else SymbolTable()).term(_raw(text, "term_only"))


def parse_source(
    text: str, sig: Signature | None = None, table: SymbolTable | None = None
) -> tuple[Signature, Sequent]:
    """
    Parse a sequent optionally preceded by `const c.` and `pred S/2.` declarations.
    Declarations extend sig; with no `pred` declaration at all the predicate
    arities are taken from their first use.
    """
    decls, left, right = _raw(text, "source")
    _reject_reserved(decls, left, right)
    constants = set(sig.constants) if sig is not None else set()
    predicates = sig.arities if sig is not None else {}
    declared_predicates = sig is not None and bool(sig.predicates)
    for kind, items in decls:
        if kind == "const":
            constants.update(str(name) for name in items)
        else:
            declared_predicates = True
            for name, arity in items:
                if predicates.setdefault(str(name), arity) != arity:
                    raise _error_at(f"predicate {name} declared twice with different arities", name)
    if not declared_predicates:
        _infer_predicates(left, predicates)
        _infer_predicates(right, predicates)
    try:
        full = Signature(constants, predicates)
    except ValueError as e:
        raise ParseError(str(e)) from e
    resolver = _Resolver(full, table if table is not None else SymbolTable())
    return full, Sequent(resolver.formula(left), resolver.formula(right))
