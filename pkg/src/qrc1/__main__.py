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

import sys

from qrc1.cli import parse_args
from qrc1.commands import run
from qrc1.error_code import ERROR_CODE_BAD_INPUT, ERROR_CODE_INTERNAL
from qrc1.errors import FormatError, InvariantViolation, ParseError, PreconditionError
from qrc1.state import QRC1_STATE


def main():
    args = parse_args(sys.argv[1:])

    try:
        status = run(args)
    except (ParseError, FormatError, PreconditionError, OSError, UnicodeDecodeError) as e:
        sys.stderr.write(f"qrc1: {e}\n")
        return ERROR_CODE_BAD_INPUT
    except InvariantViolation as e:
        sys.stderr.write(f"qrc1: internal error: {e}\n")
        return ERROR_CODE_INTERNAL
    if args.command == "check" and (QRC1_STATE.errors > 0 or not QRC1_STATE.quiet):
        sys.stderr.write(f"Total Errors: {QRC1_STATE.errors}\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
