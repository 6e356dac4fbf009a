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

import enum


class Rule(str, enum.Enum):
    """The twelve rule tags of the calculus (axiom (i) and (ii) contribute two tags each)."""

    TOP = "Top"
    REFL = "Refl"
    AND_EL = "AndEl"
    AND_ER = "AndEr"
    AND_I = "AndI"
    CUT = "Cut"
    NEC = "Nec"
    TRANS = "Trans"
    ALL_IR = "AllIr"
    ALL_IL = "AllIl"
    TERM_I = "TermI"
    CONST_E = "ConstE"

    def __str__(self):
        return self.value


PREMISE_COUNT = {
    Rule.TOP: 0,
    Rule.REFL: 0,
    Rule.AND_EL: 0,
    Rule.AND_ER: 0,
    Rule.AND_I: 2,
    Rule.CUT: 2,
    Rule.NEC: 1,
    Rule.TRANS: 0,
    Rule.ALL_IR: 1,
    Rule.ALL_IL: 1,
    Rule.TERM_I: 1,
    Rule.CONST_E: 1,
}

# parameter names each rule node must carry
RULE_PARAMS = {
    Rule.TOP: ("phi",),
    Rule.REFL: ("phi",),
    Rule.AND_EL: ("phi", "psi"),
    Rule.AND_ER: ("phi", "psi"),
    Rule.AND_I: (),
    Rule.CUT: (),
    Rule.NEC: (),
    Rule.TRANS: ("phi",),
    Rule.ALL_IR: ("x",),
    Rule.ALL_IL: ("phi", "x", "t"),
    Rule.TERM_I: ("x", "t"),
    Rule.CONST_E: ("phi", "psi", "x", "c"),
}

CHECK_REASONS = """\
        param/missing
        param/unexpected
        premise/count
        premise/mismatch
        side/freefor
        side/fresh-constant
        side/fresh-variable
        syntax/ill-formed
"""

# reported by check for a file that is not a readable proof
MALFORMED_FILE = "input/malformed"


def parse_rule(tag: str) -> Rule:
    try:
        return Rule(tag)
    except ValueError:
        raise ValueError(f"Unknown rule tag: {tag}") from None
