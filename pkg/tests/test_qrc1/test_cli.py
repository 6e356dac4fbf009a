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

from pathlib import Path

import pytest

import qrc1
from qrc1.state import QRC1_STATE

from .utils import nostderr

SAMPLES = Path(__file__).parents[2] / "samples"
TRANS = str(SAMPLES / "trans.qpf")
CHAIN = str(SAMPLES / "chain.qkm")


@pytest.fixture(autouse=True)
def fresh_state(monkeypatch):
    monkeypatch.delenv("QRC1_SEED", raising=False)
    QRC1_STATE.reset()
    yield
    QRC1_STATE.reset()


def test_parse_args():
    with nostderr():
        pytest.raises(SystemExit, qrc1.cli.parse_args, [])
        pytest.raises(SystemExit, qrc1.cli.parse_args, ["--help"])
        pytest.raises(SystemExit, qrc1.cli.parse_args, ["--version"])
        pytest.raises(SystemExit, qrc1.cli.parse_args, ["--bogus-option", "check", TRANS])
        pytest.raises(SystemExit, qrc1.cli.parse_args, ["prove", "T ~> T"])
        pytest.raises(SystemExit, qrc1.cli.parse_args, ["check"])
        pytest.raises(SystemExit, qrc1.cli.parse_args, ["check", "missing.qpf"])
        pytest.raises(SystemExit, qrc1.cli.parse_args, ["sat", CHAIN, "--formula", "T"])
        pytest.raises(SystemExit, qrc1.cli.parse_args, ["decide", "T ~> T", "--max-worlds", "0"])
        pytest.raises(SystemExit, qrc1.cli.parse_args, ["decide", "T ~> T", "--timeout", "-1"])
        pytest.raises(SystemExit, qrc1.cli.parse_args, ["soundness", TRANS, "--models", "0"])

    args = qrc1.cli.parse_args(["--config=None", "check", TRANS, TRANS])
    assert args.command == "check"
    assert args.files == [TRANS, TRANS]
    assert QRC1_STATE.config is None

    args = qrc1.cli.parse_args(["--config=None", "sat", CHAIN, "--world", "1", "--formula", "P(c)", "--assign", "x=1"])
    assert (args.world, args.formula, args.assign, args.default) == (1, "P(c)", "x=1", 0)

    qrc1.cli.parse_args(
        ["--config=None", "--json", "--single-thread", "decide", "T ~> T", "--max-worlds=2", "--max-depth=3"]
    )
    assert QRC1_STATE.json
    assert QRC1_STATE.single_thread
    bounds = QRC1_STATE.search_bounds()
    assert (bounds.max_worlds, bounds.max_domain, bounds.max_proof_depth, bounds.workers) == (2, 3, 3, 1)

    qrc1.cli.parse_args(["--config=./foo/bar", "adequate", CHAIN])
    assert QRC1_STATE.config == "./foo/bar"
    QRC1_STATE.reset()

    qrc1.cli.parse_args(["adequate", CHAIN])
    assert QRC1_STATE.config == qrc1.state.default_rc()


def test_parse_options_file():
    qrc1.cli.parse_option_file(
        """
            # skip comment
            max-worlds = 2
            max-domain=1
            timeout=1.5
            workers=3
            single-thread
            """.split("\n")
    )
    assert QRC1_STATE.max_worlds == 2
    assert QRC1_STATE.max_domain == 1
    assert QRC1_STATE.timeout == 1.5
    assert QRC1_STATE.workers == 3
    assert QRC1_STATE.search_bounds().workers == 1

    qrc1.cli.parse_option_file(["quiet", "json", "seed=9"])
    assert QRC1_STATE.quiet
    assert QRC1_STATE.json
    assert QRC1_STATE.seed == 9

    with pytest.raises(ValueError):
        qrc1.cli.parse_option_file(["filter=-whitespace"])
    with pytest.raises(ValueError):
        qrc1.cli.parse_option_file(["max-depth=deep"])


def test_option_precedence(tmp_path, monkeypatch):
    rc = tmp_path / "qrc1rc"
    rc.write_text("seed=3\nmax-worlds=2\nmax-domain=2\n")
    qrc1.cli.parse_args([f"--config={rc}", "soundness", TRANS])
    assert (QRC1_STATE.seed, QRC1_STATE.max_worlds) == (3, 2)

    QRC1_STATE.reset()
    monkeypatch.setenv("QRC1_SEED", "5")
    qrc1.cli.parse_args([f"--config={rc}", "soundness", TRANS])
    assert QRC1_STATE.seed == 5

    QRC1_STATE.reset()
    qrc1.cli.parse_args([f"--config={rc}", "soundness", TRANS, "--seed=8"])
    assert QRC1_STATE.seed == 8

    QRC1_STATE.reset()
    qrc1.cli.parse_args([f"--config={rc}", "decide", "T ~> T", "--max-worlds=4"])
    assert (QRC1_STATE.max_worlds, QRC1_STATE.max_domain) == (4, 2)


def test_bad_option_file_is_a_usage_error(tmp_path):
    rc = tmp_path / "qrc1rc"
    rc.write_text("max-worlds=none\n")
    with nostderr():
        with pytest.raises(SystemExit) as info:
            qrc1.cli.parse_args([f"--config={rc}", "adequate", CHAIN])
    assert info.value.code == qrc1.error_code.ERROR_CODE_WRONG_USAGE


def test_default_rc(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("XDG_CONFIG_DIR", str(tmp_path / "xdg"))
    assert qrc1.state.default_rc() == str(Path("~").expanduser() / ".qrc1rc")
    (tmp_path / "xdg").mkdir()
    (tmp_path / "xdg" / "qrc1rc").touch()
    assert qrc1.state.default_rc() == str(tmp_path / "xdg" / "qrc1rc")
    (tmp_path / ".qrc1rc").touch()
    assert qrc1.state.default_rc() == str(tmp_path / ".qrc1rc")
