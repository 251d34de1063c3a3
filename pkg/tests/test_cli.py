import json
import subprocess
import sys

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from mapgerms import cli, repro
from mapgerms.repro import Check


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_codim_envelope(capsys):
    code, env, _ = run(capsys, "codim", "rieger-x5a")
    assert code == 0
    assert env["schema"] == "mapgerms.envelope/1" and env["command"] == "codim"
    assert env["result"]["value"] == 3 and env["certified_degree"] <= 12
    assert set(env) == {"schema", "command", "inputs_hash", "result", "citations",
                        "certified_degree", "timings"}


def test_flags_after_subcommand(capsys):
    code, env, err = run(capsys, "classify", "5", "5", "--no-timings", "--pretty")
    assert code == 0 and "timings" not in env
    assert env["result"]["extra_nice"] == "no"
    assert err.startswith("command")


def test_classify_8_9(capsys):
    code, env, _ = run(capsys, "--no-timings", "classify", "8", "9")
    assert env["result"]["extra_nice"] == "yes"
    assert env["citations"]


@pytest.mark.parametrize("argv", [
    ["bogus"], ["codim", "no-such-germ"], ["classify", "0", "3"], ["classify", "x", "3"],
    ["atlas", "--range", "1:41"], ["atlas", "--range", "oops"], ["codim", "cusp", "--group", "Q"],
])
def test_usage_errors(capsys, argv):
    code, env, err = run(capsys, *argv)
    assert code == 1 and env is None and err


def test_budget_exit(capsys):
    code, _, err = run(capsys, "codim", "rieger-x5a", "--degree", "3")
    assert code == 2 and "budget" in err


def test_non_stable_lift_is_rejected(capsys):
    code, env, err = run(capsys, "lift", "rieger-x5a")
    assert code == 1 and env is None
    payload = json.loads(err)
    assert payload["stability_certificate"]["stable"] is False


def test_germ_file_input(tmp_path, capsys):
    f = tmp_path / "lips.germ"
    f.write_text("source: x y\ntarget: X Y\nmap: X = x^3 + x*y^2; Y = y\n")
    code, env, _ = run(capsys, "--no-timings", "codim", str(f))
    assert code == 0 and env["result"]["value"] == 1
    code, env, _ = run(capsys, "--no-timings", "augment", str(f), "--g", "z^3")
    assert code == 0
    f.write_text("map: X = x^3 +\n")
    code, _, _ = run(capsys, "codim", str(f))
    assert code == 1


def test_lift_and_verify(capsys):
    code, env, _ = run(capsys, "--no-timings", "lift", "F32")
    assert code == 0 and len(env["result"]["generators"]) == 5
    assert env["result"]["matches_bundled"] is True
    code, env, _ = run(capsys, "--no-timings", "verify-lift", "F32", "--eta", "1,0,0,0,0")
    assert code == 0
    code, _, _ = run(capsys, "verify-lift", "F32", "--eta", "1,0")
    assert code == 1


def test_section_scan(capsys):
    code, env, _ = run(capsys, "--no-timings", "section-scan", "F32", "--vke", "U3")
    assert code == 0
    r = env["result"]
    assert r["generic_rank"] == 5 and r["vke"] == {"L": "U3", "codim": 1}


def test_atlas_figure(tmp_path, capsys):
    out = tmp_path / "fig.svg"
    code, env, _ = run(capsys, "--no-timings", "atlas", "--figure", str(out))
    assert code == 0 and out.read_text().startswith("<svg")
    assert env["result"]["monotonicity_violations"] == []
    assert [5, 5] in env["result"]["boundary_pairs"]


def test_repro_mismatch_exit(monkeypatch, capsys):
    monkeypatch.setattr(repro, "FAST", [lambda: Check("stub", "mismatch")])
    code, env, _ = run(capsys, "--no-timings", "repro")
    assert code == 3 and env["result"]["all_ok"] is False
    monkeypatch.setattr(repro, "FAST", [lambda: Check("stub", "erratum")])
    code, env, _ = run(capsys, "--no-timings", "repro")
    assert code == 0


@settings(suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.integers(1, 40), st.integers(1, 40))
def test_envelopes_are_deterministic(capsys, n, p):
    a = run(capsys, "classify", str(n), str(p))[1]
    b = run(capsys, "classify", str(n), str(p))[1]
    a.pop("timings")
    b.pop("timings")
    assert cli.dumps(a) == cli.dumps(b)
    assert a["inputs_hash"] != run(capsys, "classify", str(n), str(p + 1))[1]["inputs_hash"]


def test_console_script_bytes_identical():
    argv = [sys.executable, "-m", "mapgerms.cli", "--no-timings", "codim", "cusp"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["result"]["value"] == 0


def test_run_configs(tmp_path, monkeypatch):
    from mapgerms.config import FigureConfig, ReproConfig
    with pytest.raises(ValueError):
        ReproConfig(tier="medium")
    with pytest.raises(ValueError):
        FigureConfig(hi=41)
    monkeypatch.delenv("MAPGERMS_CACHE_DIR", raising=False)
    ReproConfig(cache_dir=str(tmp_path)).apply()
    import os
    assert os.environ["MAPGERMS_CACHE_DIR"] == str(tmp_path)
