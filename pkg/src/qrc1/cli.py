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

import argparse
import logging
import os
import sys

from qrc1.__version__ import VERSION as QRC1_VERSION
from qrc1.error_code import ERROR_CODE_WRONG_USAGE
from qrc1.state import QRC1_STATE

COMMANDS = ("check", "sat", "adequate", "countermodel", "decide", "soundness")

_OPTION_SETTERS = {
    "max-worlds": QRC1_STATE.set_max_worlds,
    "max-domain": QRC1_STATE.set_max_domain,
    "max-depth": QRC1_STATE.set_max_depth,
    "max-terms": QRC1_STATE.set_max_terms,
    "timeout": QRC1_STATE.set_timeout,
    "seed": QRC1_STATE.set_seed,
    "workers": QRC1_STATE.set_workers,
}

_OPTION_FLAGS = {
    "json": QRC1_STATE.set_json,
    "quiet": QRC1_STATE.set_quiet,
    "single-thread": QRC1_STATE.set_single_thread,
}


def parse_option_file(contents):
    for line in contents:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in _OPTION_FLAGS:
            _OPTION_FLAGS[line](True)
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in _OPTION_SETTERS:
            raise ValueError(f"Unknown option in config file: {line}")
        _OPTION_SETTERS[key](value.strip())


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ERROR_CODE_WRONG_USAGE, f"{self.prog}: error: {message}\n")


def _add_bounds(parser):
    parser.add_argument("--max-worlds", type=int, default=None, help="Largest number of worlds tried (default 4)")
    parser.add_argument("--max-domain", type=int, default=None, help="Largest domain size tried (default 3)")
    parser.add_argument("--max-depth", type=int, default=None, help="Deepest proof tried (default 8)")
    parser.add_argument(
        "--max-terms", type=int, default=None, help="Fresh variables offered when instantiating a quantifier (default 1)"
    )
    parser.add_argument("--timeout", type=float, default=None, help="Give up after this many seconds")
    parser.add_argument("--workers", type=int, default=None, help="Processes used by countermodel enumeration")
    parser.add_argument("--output", default=None, help="Write the proof or countermodel to this file")


def build_parser():
    parser = ArgumentParser("qrc1", description="Proof checker, model checker and decision procedure for QRC1")
    parser.add_argument("-v", "--version", action="version", version=f"%(prog)s {QRC1_VERSION}")
    parser.add_argument(
        "--config",
        default=None,
        help="""
        Use the given file for configuration. By default the file
        $PWD/.qrc1rc, ~/.config/qrc1rc, $XDG_CONFIG_DIR/qrc1rc or
        ~/.qrc1rc is used if it exists. Use the value "None" to use no
        configuration file (./None for a file called literally None).
        """,
    )
    parser.add_argument("--json", action="store_true", default=None, help="Report results as JSON")
    parser.add_argument(
        "--quiet", action="store_true", default=None, help="Do not print the error total when there are no errors"
    )
    parser.add_argument("--verbose", action="store_true", help="Log search progress on stderr")
    parser.add_argument(
        "--single-thread", action="store_true", default=None, help="Never start worker processes (for reproducible runs)"
    )
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    check = commands.add_parser("check", help="Check proof files (.qpf) and print their conclusions")
    check.add_argument("files", nargs="+", help="proof files")

    sat = commands.add_parser("sat", help="Evaluate a formula at a world of a model file (.qkm)")
    sat.add_argument("model", help="model file")
    sat.add_argument("--world", type=int, required=True)
    sat.add_argument("--formula", required=True)
    sat.add_argument("--assign", default="", metavar="x=0,y=1", help="Values of named variables")
    sat.add_argument("--default", type=int, default=0, help="Value of every other variable")

    adequate = commands.add_parser("adequate", help="Report whether a model file is adequate")
    adequate.add_argument("model", help="model file")

    countermodel = commands.add_parser("countermodel", help="Search a finite countermodel of a sequent")
    countermodel.add_argument("sequent", help="sequent text or a file holding one")
    _add_bounds(countermodel)

    decide = commands.add_parser("decide", help="Prove or refute a sequent within bounds")
    decide.add_argument("sequent", help="sequent text or a file holding one")
    _add_bounds(decide)

    soundness = commands.add_parser("soundness", help="Test a proof file against generated models")
    soundness.add_argument("proof", help="proof file")
    soundness.add_argument("--models", type=int, default=100)
    soundness.add_argument("--samples", type=int, default=8, help="Assignments tried per world")
    soundness.add_argument("--seed", type=int, default=None)
    return parser


def _paths(args):
    if args.command == "check":
        return args.files
    if args.command in ("sat", "adequate"):
        return [args.model]
    if args.command == "soundness":
        return [args.proof]
    return []


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config is not None:
        if args.config == "None":
            QRC1_STATE.config = None
        else:
            QRC1_STATE.config = args.config
    if args.verbose:
        QRC1_STATE.set_verbose(True)
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        if QRC1_STATE.config and os.path.isfile(QRC1_STATE.config):
            with open(QRC1_STATE.config) as f:
                parse_option_file(f.readlines())
        QRC1_STATE.seed_from_env()
        for flag in ("json", "quiet", "single_thread"):
            if getattr(args, flag):
                getattr(QRC1_STATE, f"set_{flag}")(True)
        for flag in ("max_worlds", "max_domain", "max_depth", "max_terms", "timeout", "workers", "seed"):
            if getattr(args, flag, None) is not None:
                getattr(QRC1_STATE, f"set_{flag}")(getattr(args, flag))
        if args.command == "soundness" and (args.models < 1 or args.samples < 1):
            raise ValueError("--models and --samples should be positive")
    except ValueError as e:
        parser.error(str(e))

    for path in _paths(args):
        if not os.path.isfile(path):
            parser.error(f"No such file: {path}")
    return args
