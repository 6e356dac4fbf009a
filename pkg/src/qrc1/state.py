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

import os

from qrc1.search import SearchBounds

SEED_ENV = "QRC1_SEED"


def default_rc():
    """
    Check current working directory and XDG_CONFIG_DIR before ~/.qrc1rc
    """
    cwdfile = os.path.join(os.getcwd(), ".qrc1rc")
    if os.path.exists(cwdfile):
        return cwdfile
    xdg = os.path.join(os.path.expanduser("~"), ".config")
    if "XDG_CONFIG_DIR" in os.environ:
        xdg = os.environ["XDG_CONFIG_DIR"]
    xdgfile = os.path.join(xdg, "qrc1rc")
    if os.path.exists(xdgfile):
        return xdgfile
    return os.path.join(os.path.expanduser("~"), ".qrc1rc")


def _positive(name: str, value) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ValueError(f"{name} should be a positive integer, got {value!r}") from None
    if number < 1:
        raise ValueError(f"{name} should be a positive integer, got {value!r}")
    return number


_DEFAULT_QRC1RC = default_rc()


class _Qrc1State:
    def __init__(self):
        self.config: str | None = _DEFAULT_QRC1RC
        self.errors = 0
        self.max_worlds = 4
        self.max_domain = 3
        self.max_depth = 8
        self.max_terms = 1
        self.timeout: float | None = None
        self.seed = 0
        self.workers = 1
        self.single_thread = False
        self.json = False
        self.quiet = False
        self.verbose = False

    def set_max_worlds(self, value):
        self.max_worlds = _positive("max-worlds", value)

    def set_max_domain(self, value):
        self.max_domain = _positive("max-domain", value)

    def set_max_depth(self, value):
        self.max_depth = _positive("max-depth", value)

    def set_max_terms(self, value):
        self.max_terms = _positive("max-terms", value)

    def set_workers(self, value):
        self.workers = _positive("workers", value)

    def set_timeout(self, value):
        try:
            seconds = float(value)
        except (TypeError, ValueError):
            raise ValueError(f"timeout should be a number of seconds, got {value!r}") from None
        if seconds <= 0:
            raise ValueError(f"timeout should be positive, got {value!r}")
        self.timeout = seconds

    def set_seed(self, value):
        try:
            self.seed = int(value)
        except (TypeError, ValueError):
            raise ValueError(f"seed should be an integer, got {value!r}") from None

    def seed_from_env(self):
        if os.environ.get(SEED_ENV):
            self.set_seed(os.environ[SEED_ENV])

    def set_single_thread(self, single_thread: bool):
        self.single_thread = single_thread

    def set_json(self, json: bool):
        self.json = json

    def set_quiet(self, quiet: bool):
        self.quiet = quiet

    def set_verbose(self, verbose: bool):
        self.verbose = verbose

    def search_bounds(self) -> SearchBounds:
        return SearchBounds(
            max_worlds=self.max_worlds,
            max_domain=self.max_domain,
            max_proof_depth=self.max_depth,
            max_candidate_terms=self.max_terms,
            deadline=self.timeout,
            workers=1 if self.single_thread else self.workers,
        )

    def reset(self):
        self.__init__()


QRC1_STATE = _Qrc1State()
