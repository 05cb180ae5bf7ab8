import io
import json
import subprocess
import sys

import pytest

from costlang.cli import main


def run(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_run_gcd():
    code, out, _ = run("run", "stdlib:gcd", "--args", "21", "13", "--phase", "intensional")
    assert code == 0
    assert out.startswith("value=1 cost=6 ")


def test_run_extensional():
    code, out, _ = run("run", "stdlib:id_hard", "--args", "4", "--phase", "extensional")
    assert code == 0 and out.startswith("value=4 cost=0 ")


def test_run_json_and_list_args():
    code, out, _ = run("run", "stdlib:msort", "--args", "[3,1,2]", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["value"] == [1, 2, 3] and doc["monoid"] == "par"


def test_run_queue_args():
    code, out, _ = run("run", "stdlib:deq", "--args", "[[],[1,2,3]]")
    assert code == 0
    assert out.startswith('value={"inr":[[[2,1],[]],3]} cost=4 ')


def test_type_error_exit_code(tmp_path):
    bad = tmp_path / "bad.calf"
    bad.write_text("(def main (F nat)\n  (ret true))\n")
    code, _, err = run("run", str(bad))
    assert code == 1
    assert "bad.calf:2:8:" in err and "mismatch" in err


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.calf"
    bad.write_text("(def main (F nat) (ret")
    code, _, err = run("run", str(bad))
    assert code == 1 and "parse error" in err


def test_eval_error_exit_code(tmp_path):
    code, _, err = run("run", "stdlib:id_hard", "--args", "50", "--fuel", "10")
    assert code == 2 and "fuel-exhausted" in err


def test_env_fuel(monkeypatch):
    monkeypatch.setenv("CALF_FUEL", "10")
    code, _, _ = run("run", "stdlib:id_hard", "--args", "50")
    assert code == 2
    code, _, _ = run("run", "stdlib:id_hard", "--args", "50", "--fuel", "1000")
    assert code == 0


def test_bad_args():
    assert run("run", "stdlib:gcd", "--args", "1")[0] == 1
    assert run("run", "stdlib:gcd", "--args", "1", "true")[0] == 1
    assert run("run", "stdlib:nope")[0] == 1
    assert run("run", "missing.calf")[0] == 1
    with pytest.raises(SystemExit) as info:
        run("run")
    assert info.value.code == 1


def test_file_monoid_inferred(tmp_path):
    src = tmp_path / "p.calf"
    src.write_text("(def main (F (prod nat nat)) (par (step (1 1) (ret 1)) (step (2 2) (ret 2))))\n")
    code, out, _ = run("run", str(src))
    assert code == 0 and out.startswith("value=[1,2] cost=[3,2] ")


def test_entry_option():
    code, out, _ = run("run", "stdlib:gcd", "--entry", "mod-inst", "--args", "7", "3")
    assert code == 0 and out.startswith("value=1 cost=1 ")


def test_profile_rows():
    code, out, _ = run("profile", "stdlib:id_hard", "--args", "3")
    rows = [l for l in out.splitlines()[1:] if l.split("\t")[-1].startswith("+")]
    assert code == 0 and len(rows) == 3 and all(r.endswith("\t+1") for r in rows)
    code, out, _ = run("profile", "stdlib:id_easy", "--args", "3")
    assert [l for l in out.splitlines()[1:] if "\t+" in l] == []


def test_profile_work_span():
    code, out, _ = run("profile", "stdlib:msort", "--args", "[5,3,8,1,9,2,7,4]")
    assert out.splitlines()[0] == "transition\twork\tspan"
    last = out.splitlines()[-1]
    w, s = (int(part.split("=")[1]) for part in last.split())
    assert last.startswith("work=") and s < w


def test_check_bound_gcd():
    code, out, _ = run("check-bound", "stdlib:gcd", "--rec", "fib-closed", "--range", "0..100")
    assert code == 0 and "10201 inputs" in out and out.rstrip().endswith("ok")


def test_check_bound_queue_seq():
    code, _, _ = run("check-bound", "stdlib:queue-seq", "--rec", "two-per-op", "--ops", "200", "--trials", "500", "--seed", "7")
    assert code == 0


def test_check_bound_msort():
    code, _, _ = run("check-bound", "stdlib:msort", "--rec", "msort-closed", "--maxlen", "64", "--seed", "7", "--trials", "20")
    assert code == 0


def test_check_bound_failure_exit():
    code, out, _ = run("check-bound", "stdlib:id_hard", "--rec", "zero", "--range", "0..5")
    assert code == 1 and "violation" in out


def test_check_bound_unknown_rec():
    assert run("check-bound", "stdlib:gcd", "--rec", "nope")[0] == 1
    assert run("check-bound", "stdlib:gcd", "--rec", "zero", "--range", "5..1")[0] == 1


def test_report_determinism():
    argv = ("check-bound", "stdlib:queue-seq", "--rec", "telescoping", "--trials", "40", "--seed", "3", "--format")
    a = run(*argv, "csv")[1]
    b = run(*argv, "csv")[1]
    assert a == b and a.startswith("program,monoid,inputs,measured,bound,ok,slack\n")
    assert run(*argv, "json")[1] == run(*argv, "json")[1]


def test_sweep_all_subset():
    code, out, _ = run("sweep-all", "id-easy", "id-hard", "gcd-fib")
    assert code == 0 and len(out.splitlines()) == 3
    assert run("sweep-all", "nope")[0] == 1
    code, out, _ = run("sweep-all", "--list")
    assert code == 0 and "msort-par" in out


def test_console_script_module():
    proc = subprocess.run(
        [sys.executable, "-m", "costlang.cli", "run", "stdlib:id_hard", "--args", "4"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("value=4 cost=4 ")
