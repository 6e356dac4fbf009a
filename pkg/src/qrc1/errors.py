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


class Qrc1Error(Exception):
    pass


class ParseError(Qrc1Error, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class FormatError(Qrc1Error, ValueError):
    pass


class PreconditionError(Qrc1Error, ValueError):
    pass


class InadequateModelError(Qrc1Error):
    def __init__(self, report):
        self.report = report
        super().__init__(f"model is not adequate: {report.summary()}")


class InvariantViolation(Qrc1Error):
    """Raised when a result the library guarantees fails its own re-verification."""
