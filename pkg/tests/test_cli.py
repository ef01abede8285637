import csv
import io

import pytest

from fxtmine import load_fxt
from fxtmine.cli import main
from fxtmine.ingest import dump_transactions, parse_transactions

from conftest import GOLDEN, SAMPLE_LOG, SPLIT_PATH


@pytest.fixture
def sample_file(tmp_path):
    path = tmp_path / "log.xml"
    path.write_bytes(SAMPLE_LOG)
    return path


@pytest.fixture
def fxt_file(tmp_path, sample_file):
    out = tmp_path / "tree.xml"
    assert main(["build", "--input", str(sample_file), "--output", str(out)]) == 0
    return out


def test_build(fxt_file, capsys):
    assert load_fxt(fxt_file.read_bytes()).to_dict() == GOLDEN
    assert fxt_file.read_bytes().startswith(b'<?xml version="1.0" encoding="UTF-8"?>\n<root counter="6">')


def test_build_reports_counts(tmp_path, sample_file, capsys):
    main(["build", "--input", str(sample_file), "--output", str(tmp_path / "t.xml")])
    assert "transactions: 6, nodes: 15" in capsys.readouterr().out


def test_build_empty(tmp_path):
    src = tmp_path / "empty.xml"
    src.write_bytes(b"")
    out = tmp_path / "t.xml"
    assert main(["build", "--input", str(src), "--output", str(out)]) == 0
    assert load_fxt(out.read_bytes()).root_counter == 0


def test_build_malformed(tmp_path, capsys):
    src = tmp_path / "bad.xml"
    src.write_bytes(b'<transaction id="1"><item>A</itm></transaction>')
    assert main(["build", "--input", str(src), "--output", str(tmp_path / "t.xml")]) == 1
    assert "byte offset" in capsys.readouterr().err


def test_build_missing_input(tmp_path, capsys):
    assert main(["build", "--input", str(tmp_path / "nope.xml")]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_build_text_input_and_canonical(tmp_path):
    src = tmp_path / "log.txt"
    src.write_text("1,2011-04-10 09:16:00,9lives cat\n2,,cat dog\n")
    out = tmp_path / "t.xml"
    assert main(["build", "--input", str(src), "--output", str(out)]) == 0
    assert b'format="canonical"' in out.read_bytes()
    assert main(["build", "--input", str(src), "--output", str(out), "--doc-format", "paper"]) == 1


def test_insert_equivalent_to_build(tmp_path, sample_file, fxt_file):
    log = parse_transactions(SAMPLE_LOG)
    first, second = tmp_path / "a.xml", tmp_path / "b.xml"
    first.write_bytes(dump_transactions(log[:3]))
    second.write_bytes(dump_transactions(log[3:]))
    inc = tmp_path / "inc.xml"
    assert main(["build", "--input", str(first), "--output", str(inc)]) == 0
    assert main(["insert", "--fxt", str(inc), "--input", str(second)]) == 0
    assert inc.read_bytes() == fxt_file.read_bytes()


def test_insert_empty(tmp_path, fxt_file):
    before = fxt_file.read_bytes()
    empty = tmp_path / "empty.xml"
    empty.write_bytes(b"")
    assert main(["insert", "--fxt", str(fxt_file), "--input", str(empty)]) == 0
    assert fxt_file.read_bytes() == before


def test_insert_missing_fxt(tmp_path, sample_file):
    assert main(["insert", "--fxt", str(tmp_path / "nope.xml"), "--input", str(sample_file)]) == 1


def test_frequent(fxt_file, capsys):
    assert main(["frequent", "--fxt", str(fxt_file), "--min-support", "0.25"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 10
    assert lines[0] == '<frequent path="/A" count="2" support="0.333333"/>'
    assert main(["frequent", "--fxt", str(fxt_file), "--min-support", "1.0", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [(r["path"], r["count"]) for r in rows] == [("/C", "6")]


def test_frequent_bad_threshold(fxt_file, capsys):
    assert_usage_error(["frequent", "--fxt", str(fxt_file), "--min-support", "1.1"])


def assert_usage_error(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 1


@pytest.mark.parametrize("sup, conf, n", [("0.25", "0.5", 5), ("0.25", "1.0", 2), ("0", "0", 10)])
def test_rules(fxt_file, capsys, sup, conf, n):
    argv = ["rules", "--fxt", str(fxt_file), "--min-support", sup, "--min-confidence", conf, "--format", "csv"]
    assert main(argv) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == n


def test_rules_bad_threshold(fxt_file):
    assert_usage_error(["rules", "--fxt", str(fxt_file), "--min-confidence", "-0.5"])


def test_verify_exact(fxt_file, sample_file, capsys):
    assert main(["verify", "--fxt", str(fxt_file), "--log", str(sample_file)]) == 0
    assert "exact: 15/15" in capsys.readouterr().err


def test_verify_undercount(tmp_path, capsys):
    src = tmp_path / "split.txt"
    src.write_text("".join(" ".join(t) + "\n" for t in SPLIT_PATH))
    tree = tmp_path / "t.xml"
    main(["build", "--input", str(src), "--output", str(tree)])
    capsys.readouterr()
    assert main(["verify", "--fxt", str(tree), "--log", str(src)]) == 2
    assert "/A/X,2,3" in capsys.readouterr().out.splitlines()


def test_verify_overcount(tmp_path, fxt_file, sample_file, capsys):
    fxt_file.write_bytes(fxt_file.read_bytes().replace(b'<D counter="2"/>', b'<D counter="5"/>'))
    assert main(["verify", "--fxt", str(fxt_file), "--log", str(sample_file)]) == 1
    assert "overcount" in capsys.readouterr().err


def test_gen_and_stats(tmp_path, capsys):
    log = tmp_path / "gen.xml"
    assert main(["gen", "--seed", "3", "--transactions", "50", "--alphabet", "20", "--avg-len", "4", "--output", str(log)]) == 0
    assert len(parse_transactions(log.read_bytes())) == 50
    tree = tmp_path / "t.xml"
    main(["build", "--input", str(log), "--output", str(tree)])
    capsys.readouterr()
    assert main(["stats", "--fxt", str(tree)]) == 0
    out = capsys.readouterr().out
    assert "transactions: 50" in out and "breadth nodes: " in out


def test_gen_text(tmp_path):
    out = tmp_path / "gen.txt"
    assert main(["gen", "--transactions", "5", "--alphabet", "10", "--avg-len", "3", "--format", "text", "--output", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 5


def test_bench_small(tmp_path):
    out, plot = tmp_path / "bench.csv", tmp_path / "bench.dat"
    argv = ["bench", "--transactions", "300", "--alphabet", "30", "--avg-len", "5", "--seed", "1",
            "--supports", "0.2,0.4,0.6", "--output", str(out), "--plot-data", str(plot)]
    assert main(argv) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert sum(r["metric"] == "fxt_mine_time_s" for r in rows) == 3
    assert sum(r["metric"] == "apriori_time_s" for r in rows) == 3
    assert plot.read_text().startswith("# tree_size median_s p95_s\n10 ")


def test_bench_zero(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--transactions", "0", "--output", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert not any(r["metric"].startswith("insert_latency") for r in rows)


def test_unknown_command():
    assert_usage_error(["frobnicate"])
