from __future__ import annotations

import io
import json

import pytest

from artifact.cli import golden_suite, load_golden, run
from artifact.errors import GoldenMismatch


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def test_plumb_json_and_dot():
    code, out = call("plumb", "--example", "poincare", "--format", "json")
    assert code == 0 and json.loads(out)
    code, dot = call("plumb", "--example", "poincare", "--format", "dot")
    assert code == 0
    assert dot.startswith("graph plumbing {") and dot.rstrip().endswith("}")
    assert dot.count("--") == 7


def test_delta_json_roundtrip():
    code, out = call("delta", "--example", "sigma-2-3-19", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["horizon"] == 13
    assert data["rows"] == load_golden("delta_sigma_2_3_19")["rows"]


def test_inline_json_input():
    spec = json.dumps({"seifert": {"e0": -1, "arms": [[2, 1], [3, 1], [19, 3]]}})
    assert call("delta", spec, "--format", "json") == call("delta", "--example", "sigma-2-3-19", "--format", "json")


def test_delta_laufer_cross_check():
    code, out = call("delta", "--example", "sigma-2-3-19", "--laufer", "--seed", "4")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ("labels", "--example", "sigma-3-5-19", "--p", "2"),
        ("root", "--example", "sigma-3-5-19"),
        ("chain", "--example", "sigma-3-5-19", "--p", "127"),
        ("chain", "--group", "pin2", "--format", "dot"),
        ("froyshov", "--example", "sigma-2-3-19", "--p", "17"),
        ("hfred", "--example", "sigma-3-5-19", "--format", "json"),
        ("localmap", "--copies", "1", "--level", "1"),
        ("barcheck", "--max-degree", "3", "--format", "json"),
        ("golden",),
    ],
)
def test_subcommands_succeed(argv):
    code, out = call(*argv)
    assert code == 0 and out.strip()


def test_localmap_json_fields():
    code, out = call("localmap", "--copies", "2", "--level", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["satisfiable"] is False and data["copies"] == 2


def test_input_errors_exit_3():
    assert call("froyshov", "--example", "sigma-2-3-19", "--p", "4")[0] == 3
    assert call("delta", "{not json")[0] == 3
    assert call("delta")[0] == 3
    assert call("nosuch")[0] == 3
    assert call("hfred", "--example", "poincare", "--format", "dot")[0] == 3


def test_invariant_violation_exits_2():
    assert call("chain", "--example", "sigma-2-3-19", "--group", "pin2", "--twist", "0")[0] == 2


def test_golden_replay_passes():
    assert len(golden_suite()) == 5


def test_corrupted_golden_is_reported():
    ref = load_golden("delta_sigma_2_3_19")
    ref["rows"][2]["delta"] = -ref["rows"][2]["delta"]
    with pytest.raises(GoldenMismatch):
        golden_suite({"delta_sigma_2_3_19": ref})


def test_config_file_supplies_defaults(tmp_path):
    conf = tmp_path / "c.json"
    conf.write_text(json.dumps({"format": "json", "p": 17}))
    code, out = call("froyshov", "--example", "sigma-2-3-19", "--config", str(conf))
    assert code == 0 and json.loads(out)["p"] == 17


def test_flat_seifert_object_rejected():
    assert call("delta", json.dumps({"e0": -1, "arms": [[2, 1]]}))[0] == 3
