import csv

from main import EXIT_LOST, EXIT_OK, EXIT_USAGE, main


def test_play_naive(tmp_path):
    out = tmp_path / "play"
    assert main(["play", "--grid", "4x4", "--strategy", "naive", "--seed", "1", "--render", "ascii", "--out", str(out)]) == EXIT_OK
    assert len(list(out.glob("frame_*.txt"))) == 15
    assert (out / "iterations.jsonl").read_text().count("\n") == 15


def test_play_rejects_odd_board():
    assert main(["play", "--grid", "3x3", "--strategy", "naive"]) == EXIT_USAGE


def test_play_nogood_without_warm_start():
    assert main(["play", "--grid", "4x4", "--strategy", "nogood", "--no-warmstart"]) == EXIT_LOST


def test_oracle_reads_a_hand_written_state(tmp_path):
    state = tmp_path / "state.json"
    state.write_text("{'grid': [4, 2], 'snake': [[1, 2], [1, 1]], 'apple': [2, 2],}")
    assert main(["oracle", "--state", str(state)]) == EXIT_OK
    assert main(["oracle", "--grid", "6x4", "--state", str(state)]) == EXIT_LOST


def test_bench(tmp_path):
    out = tmp_path / "bench"
    code = main(["bench", "--grids", "4", "--games", "2", "--strategies", "naive", "--out", str(out), "--no-progress"])
    assert code == EXIT_OK
    with (out / "report.csv").open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [(r["grid"], r["strategy"], r["games"]) for r in rows] == [("4x4", "naive", "2")]


def test_explicit_zero_is_rejected(tmp_path):
    assert main(["play", "--grid", "4x4", "--strategy", "naive", "--timeout-ms", "0"]) == EXIT_USAGE
    for flag in ("--games", "--jobs", "--timeout-ms"):
        argv = ["bench", "--grids", "4", "--strategies", "naive", "--out", str(tmp_path), "--no-progress", flag, "0"]
        assert main(argv) == EXIT_USAGE
