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

import json
from typing import Any, Mapping

from qrc1.calculus import Derivation
from qrc1.errors import FormatError
from qrc1.language import Signature, SymbolTable, VarName, print_formula, print_term
from qrc1.parser import parse_formula, parse_term
from qrc1.rules import PREMISE_COUNT, RULE_PARAMS, parse_rule
from qrc1.semantics import Assignment, RawFrame, RawModel

PROOF_SUFFIX = ".qpf"
MODEL_SUFFIX = ".qkm"


def _json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e


def load_signature(data: Any) -> Signature:
    if not isinstance(data, Mapping):
        raise FormatError("signature should be an object with constants and predicates")
    constants = data.get("constants", [])
    predicates = data.get("predicates", {})
    if not isinstance(constants, list) or not isinstance(predicates, Mapping):
        raise FormatError("signature constants should be a list and predicates an object")
    try:
        return Signature(constants, predicates)
    except ValueError as e:
        raise FormatError(str(e)) from e


def dump_signature(sig: Signature) -> dict[str, Any]:
    return {"constants": sorted(sig.constants), "predicates": dict(sig.predicates)}


# proofs


def _load_node(node: Any, sig: Signature, table: SymbolTable) -> Derivation:
    if not isinstance(node, Mapping) or "rule" not in node:
        raise FormatError(f"proof node should be an object with a rule: {node!r}")
    try:
        rule = parse_rule(node["rule"])
    except ValueError as e:
        raise FormatError(str(e)) from e
    params = node.get("params", {})
    premises = node.get("premises", [])
    if not isinstance(params, Mapping) or not isinstance(premises, list):
        raise FormatError(f"{rule} node should have a params object and a premises list")
    fields: dict[str, Any] = {}
    for name, value in params.items():
        if not isinstance(value, str):
            raise FormatError(f"parameter {name} of {rule} should be a string")
        if name in ("phi", "psi"):
            fields[name] = parse_formula(value, sig, table)
        elif name == "t":
            fields[name] = parse_term(value, sig, table)
        elif name == "x":
            if value in sig.constants:
                raise FormatError(f"parameter x of {rule} names the constant {value}")
            fields[name] = table.var(value)
        elif name == "c":
            fields[name] = value
        else:
            raise FormatError(f"unknown parameter {name} in {rule} node")
    children = tuple(_load_node(p, sig, table) for p in premises)
    return Derivation(rule, children, **fields)


def load_proof(text: str, table: SymbolTable | None = None) -> tuple[Signature, Derivation, SymbolTable]:
    data = _json(text)
    if not isinstance(data, Mapping) or "proof" not in data or "signature" not in data:
        raise FormatError("proof file should be an object with signature and proof")
    table = table if table is not None else SymbolTable()
    sig = load_signature(data["signature"])
    return sig, _load_node(data["proof"], sig, table), table


def _dump_node(d: Derivation, table: SymbolTable) -> dict[str, Any]:
    params: dict[str, str] = {}
    for name in RULE_PARAMS[d.rule]:
        value = getattr(d, name)
        if value is None:
            continue
        if name in ("phi", "psi"):
            params[name] = print_formula(value, table)
        elif name == "t":
            params[name] = print_term(value, table)
        elif name == "x":
            params[name] = table.name(value)
        else:
            params[name] = value
    node: dict[str, Any] = {"rule": d.rule.value, "params": params}
    if PREMISE_COUNT[d.rule]:
        node["premises"] = [_dump_node(p, table) for p in d.premises]
    return node


def dump_proof(d: Derivation, sig: Signature, table: SymbolTable | None = None) -> dict[str, Any]:
    table = table if table is not None else SymbolTable()
    return {"signature": dump_signature(sig), "proof": _dump_node(d, table)}


# models


def _pair_key(w: int, u: int) -> str:
    return f"{w},{u}"


def load_model(text: str) -> RawModel:
    data = _json(text)
    if not isinstance(data, Mapping):
        raise FormatError("model file should be a JSON object")
    try:
        sig = load_signature(data["signature"])
        worlds = int(data["worlds"])
        domains = tuple(int(size) for size in data["domains"])
        rel = frozenset((int(w), int(u)) for w, u in data.get("rel", []))
        eta_data = data.get("eta", {})
        eta = {}
        for w in range(worlds):
            for u in range(worlds):
                key = _pair_key(w, u)
                if key in eta_data:
                    eta[(w, u)] = tuple(int(d) for d in eta_data[key])
                elif w == u:
                    eta[(w, u)] = tuple(range(domains[w]))
                else:
                    eta[(w, u)] = (0,) * domains[w]
        unknown = set(eta_data) - {_pair_key(w, u) for w in range(worlds) for u in range(worlds)}
        if unknown:
            raise FormatError(f"eta mentions unknown world pairs: {sorted(unknown)}")
        const_interp = tuple(
            {str(c): int(d) for c, d in interp.items()} for interp in data.get("constInterp", [{}] * worlds)
        )
        pred_interp = tuple(
            {str(name): frozenset(tuple(int(d) for d in tup) for tup in tuples) for name, tuples in interp.items()}
            for interp in data.get("predInterp", [{}] * worlds)
        )
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as e:
        raise FormatError(f"malformed model file: {e}") from e
    frame = RawFrame(worlds=worlds, rel=rel, domains=domains, eta=eta)
    return RawModel(signature=sig, frame=frame, const_interp=const_interp, pred_interp=pred_interp).validate_shape()


def dump_model(raw: RawModel) -> dict[str, Any]:
    frame = raw.frame
    return {
        "signature": dump_signature(raw.signature),
        "worlds": frame.worlds,
        "rel": [list(pair) for pair in sorted(frame.rel)],
        "domains": list(frame.domains),
        "eta": {_pair_key(w, u): list(table) for (w, u), table in sorted(frame.eta.items())},
        "constInterp": [dict(sorted(interp.items())) for interp in raw.const_interp],
        "predInterp": [
            {name: [list(tup) for tup in sorted(tuples)] for name, tuples in sorted(interp.items())}
            for interp in raw.pred_interp
        ],
    }


# assignments


def parse_assignment(text: str, table: SymbolTable) -> dict[VarName, int]:
    """`x=2,y=0` to a map from variables to domain elements."""
    overrides = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip().isdigit():
            raise FormatError(f"assignment item should look like x=2, got {item!r}")
        overrides[table.var(name.strip())] = int(value)
    return overrides


def dump_assignment(g: Assignment, table: SymbolTable) -> dict[str, Any]:
    return {
        "world": g.world,
        "default": g.default,
        "overrides": {table.name(x): d for x, d in sorted(g.overrides.items())},
    }


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2)
