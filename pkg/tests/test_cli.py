import csv
import io
import json
import subprocess
import sys

import pytest

from stacklab.cli import main
from stacklab.genfun import Variant, series


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_summit_weighted_stacks(capsys):
    assert run(capsys, "count", "ss", "4")[:2] == (0, "12\n")


def test_count_with_oracle(capsys):
    code, out, _ = run(capsys, "count", "dm", "5", "--oracle")
    assert code == 0
    assert out.split() == ["9", "oracle=9", "match"]


def test_count_trivial_and_summit_flag(capsys):
    assert run(capsys, "count", "s", "1")[1] == "1\n"
    assert run(capsys, "count", "g", "4", "--summits")[1] == "5\n"


@pytest.mark.parametrize("name", ["s", "ss", "g", "gs", "h", "hs", "d", "dm", "fphi", "f0", "p"])
def test_count_oracle_agrees_for_every_variant(capsys, name):
    code, out, _ = run(capsys, "count", name, "9", "--oracle")
    assert code == 0 and out.endswith("match\n")


def test_count_oracle_beyond_bound(capsys):
    code, _, err = run(capsys, "count", "s", "45", "--oracle")
    assert code == 3 and "bound" in err


def test_count_usage_errors(capsys):
    assert run(capsys, "count", "zz", "4")[0] == 2
    assert run(capsys, "count", "s", "0")[0] == 2
    assert run(capsys, "count", "d", "4", "--summits")[0] == 2
    assert run(capsys, "count")[0] == 2


def test_table_csv_last_row(capsys):
    code, out, _ = run(capsys, "table", "--variants", "g,gs", "--max", "4", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,g,gs"
    assert lines[-1] == "4,2,5"


def test_table_partitions_text(capsys):
    _, out, _ = run(capsys, "table", "--variants", "p", "--max", "5")
    assert [line.split()[-1] for line in out.splitlines()[1:]] == ["1", "1", "2", "3", "5", "7"]


def test_table_ss_ends_21(capsys):
    _, out, _ = run(capsys, "table", "--variants", "ss", "--max", "5")
    assert out.splitlines()[-1].split() == ["5", "21"]


def test_table_default_header(capsys):
    _, out, _ = run(capsys, "table", "--max", "2", "--format", "csv")
    assert out.splitlines()[0] == "n,s,ss,g,gs,h,hs,d,dm,fphi,f0,p"


def test_table_json_rows_are_strings(capsys):
    _, out, _ = run(capsys, "table", "--variants", "p", "--max", "3", "--format", "json")
    rows = json.loads(out)
    assert rows[-1] == {"n": "3", "p": "3"}


def test_csv_round_trip_is_exact(capsys):
    n = 600
    _, out, _ = run(capsys, "table", "--variants", "s,gs,d", "--max", str(n), "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == n + 1
    for name in ("s", "gs", "d"):
        assert [int(r[name]) for r in rows] == series(Variant.parse(name), n).coeffs
    assert int(rows[-1]["s"]) > 2**64


def test_table_unwritable_output(capsys, tmp_path):
    target = tmp_path / "missing" / "t.csv"
    code, _, err = run(capsys, "table", "--max", "3", "--out", str(target))
    assert code == 4 and "cannot write" in err


def test_table_writes_file(capsys, tmp_path):
    target = tmp_path / "t.csv"
    assert run(capsys, "table", "--variants", "p", "--max", "5", "--format", "csv",
               "--out", str(target))[0] == 0
    assert target.read_bytes().endswith(b"\n5,7\n")
    assert b"\r" not in target.read_bytes()


def test_verify_one(capsys):
    code, out, _ = run(capsys, "verify", "gs_eq_p", "--order", "100")
    assert code == 0 and "pass" in out


def test_verify_order_zero(capsys):
    assert run(capsys, "verify", "dm_eta", "-N", "0")[0] == 0


def test_verify_all_json(capsys):
    code, out, _ = run(capsys, "verify", "all", "--order", "120", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 14
    assert all(r["passed"] for r in rows)


def test_verify_unknown_tag(capsys):
    assert run(capsys, "verify", "nonsense")[0] == 2


def test_bijection_example(capsys):
    code, out, _ = run(capsys, "bijection", "18", "--partition", "4,4,3,3,1")
    assert code == 0
    assert "(3 2 0 / 4 2 1)" in out and "1123(3)221" in out


def test_bijection_all_small(capsys):
    code, out, _ = run(capsys, "bijection", "1", "--all")
    assert code == 0
    body = out.splitlines()[1:]
    assert len(body) == 1 and body[0].split()[0] == "1"


def test_bijection_check(capsys):
    code, out, _ = run(capsys, "bijection", "20", "--check", "--format", "json")
    row = json.loads(out)[0]
    assert code == 0 and row["status"] == "OK"
    assert row["zero_top_row"] == 293 == series(Variant.G, 20)[20]
    assert row["partitions"] == row["round_trips_ok"] == 627


def test_bijection_bound(capsys):
    assert run(capsys, "bijection", "41", "--all")[0] == 3
    assert run(capsys, "bijection", "4", "--partition", "3,3")[0] == 2


def test_asym_ratios_improve(capsys):
    code, out, _ = run(capsys, "asym", "gs", "--n", "500,5000", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    r500, r5000 = (float(r["ratio"]) for r in rows)
    assert abs(r5000 - 1) < abs(r500 - 1)
    assert rows[0]["main_term"].count("e+") == 1


def test_asym_without_main_term(capsys):
    assert run(capsys, "asym", "l")[0] == 2


def test_eval_saddle(capsys):
    code, out, _ = run(capsys, "eval", "saddle", "--eps", "0.05", "--format", "json")
    row = json.loads(out)[0]
    assert code == 0 and abs(float(row["contour_over_H"]) - 1) < 0.02


def test_eval_hsratio(capsys):
    _, out, _ = run(capsys, "eval", "hsratio", "--eps", "0.02", "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    assert abs(float(row["hs_over_h"]) - 1.618034) < 0.08


def test_eval_bad_input(capsys):
    assert run(capsys, "eval", "p", "--eps", "abc")[0] == 2
    assert run(capsys, "eval", "p", "--eps", "2")[0] == 2


def test_cache_warm_equals_cold(capsys, tmp_path):
    cache = tmp_path / "c"
    args = ["table", "--variants", "h,hs,dm", "--max", "150", "--format", "csv",
            "--cache-dir", str(cache)]
    cold = run(capsys, *args)[1]
    files = {p.name: p.read_bytes() for p in cache.iterdir()}
    assert set(files) == {"h.json", "hs.json", "dm.json"}
    warm = run(capsys, *args)[1]
    assert warm == cold
    forced = run(capsys, *args, "--force-recompute")[1]
    assert forced == cold
    assert {p.name: p.read_bytes() for p in cache.iterdir()} == files


def test_cache_longer_supersedes(capsys, tmp_path):
    cache = tmp_path / "c"
    run(capsys, "table", "--variants", "p", "--max", "40", "--cache-dir", str(cache))
    run(capsys, "table", "--variants", "p", "--max", "10", "--cache-dir", str(cache))
    assert json.loads((cache / "p.json").read_text())["order"] == 40
    run(capsys, "table", "--variants", "p", "--max", "60", "--cache-dir", str(cache))
    assert json.loads((cache / "p.json").read_text())["order"] == 60


def test_corrupt_cache_is_recomputed(capsys, tmp_path):
    cache = tmp_path / "c"
    cache.mkdir()
    (cache / "p.json").write_text("{not json")
    _, out, _ = run(capsys, "table", "--variants", "p", "--max", "5", "--cache-dir", str(cache))
    assert out.splitlines()[-1].split() == ["5", "7"]


def test_environment_variable_sets_cache(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("STACKLAB_CACHE", str(tmp_path / "envcache"))
    run(capsys, "count", "d", "7")
    assert (tmp_path / "envcache" / "d.json").exists()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stacklab", "count", "gs", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "5\n"
