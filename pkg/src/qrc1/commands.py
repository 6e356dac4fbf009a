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
import logging
import os
from typing import Any, Final

from qrc1.calculus import CheckError, check_derivation, derivation_depth, derivation_size, format_path
from qrc1.error_code import ERROR_CODE_EXHAUSTED, ERROR_CODE_FOUND_ISSUE, EXIT_SUCCESS
from qrc1.errors import FormatError, ParseError
from qrc1.formats import (
    dump_assignment,
    dump_model,
    dump_proof,
    dumps,
    load_model,
    load_proof,
    parse_assignment,
)
from qrc1.generate import ModelBounds, generate_models
from qrc1.language import SymbolTable, print_sequent
from qrc1.parser import parse_formula, parse_source
from qrc1.rules import MALFORMED_FILE
from qrc1.search import Exhausted, Proved, Refuted, decide, enumerate_countermodels, soundness_check
from qrc1.semantics import Assignment, Model, RawModel, check_adequacy, sat
from qrc1.state import QRC1_STATE

LOGGER: Final = logging.getLogger(__name__)


def error(filename, location, category, message):
    QRC1_STATE.errors += 1
    print(f"{filename}:{location}: {message} [{category}]")


def emit(text: str, data: Any):
    print(dumps(data) if QRC1_STATE.json else text)


def read_text(filename: str) -> str:
    with open(filename, encoding="utf-8") as f:
        return f.read()


def read_sequent(argument: str):
    """A sequent given inline or as the path of a file holding one."""
    table = SymbolTable()
    text = read_text(argument) if os.path.isfile(argument) else argument
    sig, seq = parse_source(text, table=table)
    return sig, seq, table


def write_artifact(filename: str | None, data: Any):
    if filename is None:
        return
    with open(filename, "w", encoding="utf-8") as f:
        f.write(dumps(data) + "\n")


def _describe_assignment(g: Assignment, table: SymbolTable) -> str:
    items = "".join(f"{table.name(x)}={d}, " for x, d in sorted(g.overrides.items()))
    return f"world {g.world}, {items}others {g.default}"


def run_check(filenames) -> int:
    for filename in filenames:
        try:
            sig, d, table = load_proof(read_text(filename))
        except (FormatError, ParseError, UnicodeDecodeError) as e:
            error(filename, 0, MALFORMED_FILE, str(e))
            continue
        try:
            seq = check_derivation(d, sig)
        except CheckError as e:
            error(filename, format_path(e.path), e.reason, f"{e.rule}: {e.message}")
            continue
        LOGGER.info("%s: %d nodes, depth %d", filename, derivation_size(d), derivation_depth(d))
        text = print_sequent(seq, table)
        emit(text, {"file": filename, "sequent": text})
    return ERROR_CODE_FOUND_ISSUE if QRC1_STATE.errors else EXIT_SUCCESS


def run_sat(filename: str, world: int, formula: str, assign: str, default: int) -> int:
    raw = load_model(read_text(filename))
    table = SymbolTable()
    overrides = parse_assignment(assign, table)
    phi = parse_formula(formula, raw.signature, table)
    g = Assignment.at(raw, world, default, overrides)
    value = sat(raw, world, g, phi)
    emit("true" if value else "false", {"sat": value})
    return EXIT_SUCCESS


def run_adequate(filename: str) -> int:
    raw = load_model(read_text(filename))
    report = check_adequacy(raw)
    emit(
        "adequate" if report.adequate else report.summary(),
        {
            "adequate": report.adequate,
            "transitiveR": report.transitive_r,
            "etaFunctorial": report.eta_functorial,
            "etaIdentity": report.eta_identity,
            "concordant": report.concordant,
            "transitivityWitness": report.transitivity_witness,
            "functorialityWitness": report.functoriality_witness,
            "identityWitness": report.identity_witness,
            "concordanceWitness": report.concordance_witness,
        },
    )
    return EXIT_SUCCESS if report.adequate else ERROR_CODE_FOUND_ISSUE


def _refutation(model: RawModel | Model, g: Assignment, table: SymbolTable) -> dict:
    raw = model.raw if isinstance(model, Model) else model
    return {"assignment": dump_assignment(g, table), "model": dump_model(raw)}


def run_countermodel(sequent: str, output: str | None) -> int:
    sig, seq, table = read_sequent(sequent)
    witness = enumerate_countermodels(sig, seq, QRC1_STATE.search_bounds())
    if witness is None:
        emit("no countermodel within bounds", {"countermodel": None})
        return ERROR_CODE_EXHAUSTED
    data = _refutation(witness.model, witness.assignment, table)
    write_artifact(output, data["model"])
    emit(f"countermodel at {_describe_assignment(witness.assignment, table)}\n{dumps(data['model'])}", data)
    return EXIT_SUCCESS


def run_decide(sequent: str, output: str | None) -> int:
    sig, seq, table = read_sequent(sequent)
    outcome = decide(sig, seq, QRC1_STATE.search_bounds())
    if isinstance(outcome, Proved):
        proof = dump_proof(outcome.derivation, outcome.signature, table)
        write_artifact(output, proof)
        d = outcome.derivation
        summary = f"Proved: {print_sequent(seq, table)} (depth {derivation_depth(d)}, {derivation_size(d)} nodes)"
        text = f"{summary}\n{dumps(proof)}"
        emit(text, {"outcome": "Proved", **proof})
        return EXIT_SUCCESS
    if isinstance(outcome, Refuted):
        data = _refutation(outcome.model, outcome.assignment, table)
        write_artifact(output, data["model"])
        text = f"Refuted at {_describe_assignment(outcome.assignment, table)}\n{dumps(data['model'])}"
        emit(text, {"outcome": "Refuted", **data})
        return ERROR_CODE_FOUND_ISSUE
    assert isinstance(outcome, Exhausted)
    emit(f"Exhausted: {outcome.reason}", {"outcome": "Exhausted", "reason": outcome.reason})
    return ERROR_CODE_EXHAUSTED


def run_soundness(filename: str, models: int, samples: int) -> int:
    sig, d, table = load_proof(read_text(filename))
    try:
        check_derivation(d, sig)
    except CheckError as e:
        error(filename, format_path(e.path), e.reason, f"{e.rule}: {e.message}")
        return ERROR_CODE_FOUND_ISSUE
    stream = itertools.islice(generate_models(sig, ModelBounds(), QRC1_STATE.seed), models)
    witness = soundness_check(d, sig, stream, samples, QRC1_STATE.seed)
    if witness is None:
        emit(f"no violation on {models} models", {"violation": None, "models": models, "seed": QRC1_STATE.seed})
        return EXIT_SUCCESS
    data = _refutation(witness.model, witness.assignment, table)
    emit(f"violation at {_describe_assignment(witness.assignment, table)}\n{dumps(data['model'])}", {"violation": data})
    return ERROR_CODE_FOUND_ISSUE


def run(args) -> int:
    if args.command == "check":
        return run_check(args.files)
    if args.command == "sat":
        return run_sat(args.model, args.world, args.formula, args.assign, args.default)
    if args.command == "adequate":
        return run_adequate(args.model)
    if args.command == "countermodel":
        return run_countermodel(args.sequent, args.output)
    if args.command == "decide":
        return run_decide(args.sequent, args.output)
    return run_soundness(args.proof, args.models, args.samples)
