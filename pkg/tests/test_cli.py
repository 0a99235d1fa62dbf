import json
import subprocess
import sys

import pytest

from sumfree import __version__
from sumfree.cache import CacheRecord, append_record, load_records, lookup, make_record
from sumfree.cli import main


@pytest.fixture
def cache_path(tmp_path, monkeypatch):
    path = tmp_path / "cache.jsonl"
    monkeypatch.setenv("SUMFREE_CACHE", str(path))
    return path


RECORD_SET = "(8/177,4/59);(28/177,14/59);(2/3,1)"


def test_verify_record_set(cache_path, capsys):
    code = main(["verify", "--k", "3", "--set", RECORD_SET])
    out = capsys.readouterr().out
    assert code == 0
    assert "measure 77/177" in out
    assert "3-sum-free: yes" in out


def test_verify_failure_exits_1_with_witness(cache_path, capsys):
    code = main(["verify", "--k", "3", "--set", "(1/2,1)"])
    out = capsys.readouterr().out
    assert code == 1
    assert "3-sum-free: no" in out
    assert "witness x=" in out


def test_verify_json_format(cache_path, capsys):
    code = main(["--format", "json", "verify", "--k", "3", "--set", RECORD_SET])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["measure"] == "77/177"
    assert payload["sum_free"] is True
    assert payload["witness"] is None


def test_global_flags_accepted_after_subcommand(cache_path, capsys):
    code = main(["verify", "--k", "3", "--set", RECORD_SET, "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0 and payload["measure"] == "77/177"
    code = main(["certify", "--trials", "20", "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0 and payload["delta_star"] == "1/114"


def test_malformed_set_exits_2_with_position(cache_path, capsys):
    code = main(["verify", "--k", "3", "--set", "(1/0,1)"])
    err = capsys.readouterr().err
    assert code == 2
    assert "position 3" in err


def test_bad_usage_exits_2(cache_path):
    with pytest.raises(SystemExit) as exc:
        main(["continuous", "--k", "3"])  # missing --m
    assert exc.value.code == 2


def test_continuous_json_and_cache(cache_path, capsys):
    code = main(["continuous", "--k", "3", "--m", "3"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["optimum"] == "77/177"
    assert payload["witnesses"] == [RECORD_SET]
    assert payload["status"] == "proven"

    # second run is served from the cache: identical payload
    code = main(["continuous", "--k", "3", "--m", "3"])
    repeat = json.loads(capsys.readouterr().out)
    assert code == 0 and repeat == payload
    records = load_records(str(cache_path))
    assert len(records) == 1

    # --force recomputes and appends; read still deduplicates to the latest
    code = main(["--force", "continuous", "--k", "3", "--m", "3"])
    assert code == 0
    assert len(load_records(str(cache_path))) == 1
    raw_lines = cache_path.read_text().strip().splitlines()
    assert len(raw_lines) == 2


def test_continuous_parallel_flag(cache_path, capsys):
    code = main(["continuous", "--k", "3", "--m", "2", "--parallel", "2",
                 "--all-optima"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["optimum"] == "3/7"


def test_verbose_lp_trace(cache_path, capsys):
    code = main(["-vv", "--force", "continuous", "--k", "3", "--m", "1"])
    captured = capsys.readouterr()
    assert code == 0
    assert "pivot #" in captured.err  # tableau trace behind the verbosity flag


def test_discrete_cli(cache_path, capsys):
    code = main(["discrete", "--n", "23", "--k", "3", "--enumerate"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["f"] == 12
    assert payload["witnesses"] == [list(range(1, 24, 2))]


def test_certify_cli(cache_path, capsys):
    code = main(["certify", "--trials", "50"])
    out = capsys.readouterr().out
    assert code == 0
    assert "delta* = 1/114" in out
    assert "1/66" in out and "1/54" in out


def test_report_is_deterministic(cache_path, capsys):
    main(["discrete", "--n", "10", "--k", "1"])
    main(["certify", "--trials", "20"])
    capsys.readouterr()
    main(["report"])
    first = capsys.readouterr().out
    main(["report"])
    second = capsys.readouterr().out
    assert first == second
    assert first.startswith("| kind |")
    assert "delta* = 1/114" in first


def test_cache_round_trip(tmp_path):
    path = str(tmp_path / "c.jsonl")
    rec = make_record("discrete", {"n": 5, "k": 1}, {"f": 3}, __version__)
    append_record(path, rec)
    loaded = lookup(path, "discrete", {"n": 5, "k": 1})
    assert loaded == rec


def test_cache_duplicate_last_wins(tmp_path):
    path = str(tmp_path / "c.jsonl")
    append_record(path, CacheRecord("discrete", {"n": 5}, {"f": 1}, "0", "t1"))
    append_record(path, CacheRecord("discrete", {"n": 5}, {"f": 2}, "0", "t2"))
    assert lookup(path, "discrete", {"n": 5}).result == {"f": 2}


def test_cache_survives_corrupt_middle_line(tmp_path, capsys):
    path = tmp_path / "c.jsonl"
    append_record(str(path), CacheRecord("discrete", {"n": 5}, {"f": 1}, "0", "t1"))
    with open(path, "a") as fh:
        fh.write("{not json ]\n")
    append_record(str(path), CacheRecord("discrete", {"n": 6}, {"f": 2}, "0", "t2"))
    records = load_records(str(path))
    assert len(records) == 2
    assert "skipping bad cache line" in capsys.readouterr().err


def test_cache_tolerates_unknown_fields(tmp_path):
    path = tmp_path / "c.jsonl"
    line = {"kind": "discrete", "parameters": {"n": 2}, "result": {"f": 1},
            "version": "9.9", "timestamp": "", "future_field": [1, 2, 3]}
    path.write_text(json.dumps(line) + "\n")
    assert lookup(str(path), "discrete", {"n": 2}).result == {"f": 1}


def test_console_entry_point(tmp_path):
    env_path = tmp_path / "cli-cache.jsonl"
    proc = subprocess.run(
        [sys.executable, "-m", "sumfree.cli", "verify", "--k", "1",
         "--set", "(1/2,1)"],
        capture_output=True, text=True,
        env={"SUMFREE_CACHE": str(env_path), "PATH": "/usr/bin:/bin"},
    )
    assert proc.returncode == 0
    assert "1-sum-free: yes" in proc.stdout
