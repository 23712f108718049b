import json
import subprocess
import sys

import pytest

from hecke.cli import SCHEMA_VERSION, run


def envelope(*argv):
    code, text = run(list(argv))
    assert code == 0, text
    doc = json.loads(text)
    assert set(doc) == {"schema_version", "command", "inputs", "result", "warnings"}
    assert doc["schema_version"] == SCHEMA_VERSION
    return doc


def test_root_document():
    res = envelope("root", "F4", "--json")["result"]
    assert res["type"] == "F4" and len(res["roots"]) == 48


def test_root_with_rank():
    assert envelope("root", "Cn-datum", "--rank", "3")["result"]["rank"] == 3


def test_elliptic_g2():
    doc = envelope("elliptic", "g2")
    assert doc["result"]["elliptic_class_count"] == 3
    per = envelope("elliptic", "g2", "--per-subsystem")["result"]
    assert per["ledger_total"] == 5


def test_residual_rows():
    res = envelope("residual", "g2", "--subsystem", "G2")["result"]
    assert res["orbit_count"] == 3
    assert {tuple(r["coweight_coords"]) for r in res["rows"]} == {
        ("k1", "k2"), ("k1", "-k1 + k2"), ("k1", "-k1/2 + k2/2")}
    assert all(r["defining_roots"] for r in res["rows"])


def test_mass_and_sign():
    res = envelope("mass", "g2", "--b", "b2", "--at", "k1=1,k2=1", "--v", "2")["result"]
    assert res["sign"] == -1 == res["sign_graded"] and res["vanishing_order"] == 0
    only = envelope("mass", "g2", "--b", "b2", "--sign-only")["result"]
    assert "value" not in only and only["sign_graded"] == -1
    assert envelope("sign", "f4", "--b", "b11")["result"]["sign_graded"] == 0


def test_reeder():
    res = envelope("reeder", "g2", "--b", "b1", "--q", "2,3,5")["result"]
    assert res["R_at_zero"] == "1"
    assert set(res["values"]) == {"2", "3", "5"}


def test_cn():
    res = envelope("cn", "--n", "2", "--params", "1000,2,2", "--ds", "--cc", "--restrict")["result"]
    assert len(res["modules"]) == 5
    assert all(m["discrete_series"] and m["relations"] for m in res["modules"])
    assert all(m["restriction"]["norm"] == "1" for m in res["modules"])
    one = envelope("cn", "--bp", "1|", "--params", "4,2,2", "--cc")["result"]["modules"][0]
    assert one["central_character"] == [{"sign": -1, "v_exponent": "2m-"}]


def test_table_reconcile():
    doc = envelope("table", "f4", "--reconcile")
    assert doc["result"]["reconcile"]["count_ledger"]["total"] == 19
    assert any("b10" in w for w in doc["warnings"])


def test_table_formats():
    code, text = run(["table", "g2", "--format", "csv"])
    assert code == 0 and text.splitlines()[0].startswith("label,s,coords,d_b")
    code, text = run(["table", "g2", "--md"])
    assert code == 0 and text.startswith("| b |")
    code, text = run(["elliptic", "g2", "--csv"])
    assert code == 0 and "elliptic_class_count" in text


@pytest.mark.parametrize("argv", [["root", "nosuch"], [], ["frobnicate"], ["mass", "g2"],
                                  ["mass", "g2", "--b", "b99"], ["cn", "--params", "1,2"],
                                  ["mass", "g2", "--b", "b1", "--at", "k1"]])
def test_usage_errors(argv):
    code, text = run(argv)
    assert code == 1 and "usage error" in text


@pytest.mark.parametrize("argv", [["mass", "g2", "--b", "b1", "--v", "1/2"],
                                  ["reeder", "f4", "--b", "b11"],
                                  ["cn", "--bp", "1|1", "--params", "1,1,1"],
                                  ["mass", "g2", "--b", "b1", "--at", "k1=1"]])
def test_precondition_errors(argv):
    code, text = run(argv)
    assert code == 2 and "precondition" in text


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "hecke", "mass", "g2", "--b", "b3", "--at", "k1=2,k2=3"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["command"] == "mass"
