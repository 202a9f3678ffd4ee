import csv
import json
import math

import pytest

from latgen.cbc import construct_korobov_cbc
from latgen.cli import (
    CSV_HEADER,
    VECTOR_MAGIC,
    main,
    parse_weight_spec,
    read_vector,
    sweep_row,
    write_vector,
)
from latgen.error import wce_product
from latgen.numtheory import GeneratingVector
from latgen.weights import GeneralWeights, ProductWeights, power_weights

W10 = ProductWeights(tuple(1.0 / j**2 for j in range(1, 11)))


def test_vector_file_round_trip(tmp_path):
    path = str(tmp_path / "v.txt")
    v = GeneratingVector(64, (1, 27, 13))
    write_vector(path, v)
    lines = open(path).read().splitlines()
    assert lines[0] == VECTOR_MAGIC
    assert lines[1] == "N=64"
    assert lines[2] == "s=3"
    assert read_vector(path) == v


def test_read_vector_rejects_malformed(tmp_path):
    path = str(tmp_path / "bad.txt")
    open(path, "w").write("N=8\ns=1\n1 1\n")
    with pytest.raises(ValueError):
        read_vector(path)
    open(path, "w").write(VECTOR_MAGIC + "\nN=8\ns=2\n1 1\n")
    with pytest.raises(ValueError):
        read_vector(path)


def test_parse_weight_spec_formulas():
    w = parse_weight_spec("product:1/j^2").resolve(3)
    assert w.gammas == (1.0, 0.25, pytest.approx(1.0 / 9.0))
    w = parse_weight_spec("product:c^j:0.95").resolve(2)
    assert w.gammas == (0.95, pytest.approx(0.9025))
    with pytest.raises(ValueError):
        parse_weight_spec("uniform:1")


def test_parse_weight_spec_files(tmp_path):
    lpath = tmp_path / "g.txt"
    lpath.write_text("0.5\n0.25\n\n0.125\n")
    w = parse_weight_spec("product:list:%s" % lpath).resolve(3)
    assert w.gammas == (0.5, 0.25, 0.125)
    gpath = tmp_path / "t.txt"
    gpath.write_text("1 0.9\n2 0.5\n1,2 0.7\n")
    g = parse_weight_spec("general:%s" % gpath).resolve(2)
    assert isinstance(g, GeneralWeights)
    assert g.gamma({1, 2}) == 0.7


def test_construct_and_error_json(tmp_path, capsys):
    vec = str(tmp_path / "v.txt")
    assert main(["construct", "--algo", "korobov-cbc", "--N", "31", "--s", "4",
                 "--weights", "product:1/j^2", "--out", vec]) == 0
    stored = read_vector(vec)
    assert stored == construct_korobov_cbc(31, 4, W10)
    assert main(["error", "--vector", vec, "--alpha", "2", "--weights",
                 "product:1/j^2", "--apply-power", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["N"] == 31 and report["s"] == 4
    expect = wce_product(stored, 2.0, power_weights(W10, 2.0))
    assert report["wce"] == pytest.approx(expect, rel=1e-12)


def test_error_with_T_and_bounds(tmp_path, capsys):
    vec = str(tmp_path / "v.txt")
    main(["construct", "--algo", "cbc-dbd", "--n", "5", "--s", "3",
          "--weights", "product:1/j^2", "--out", vec])
    assert main(["error", "--vector", vec, "--alpha", "2", "--weights",
                 "product:1/j^2", "--with-T", "--with-bounds",
                 "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report) == {"N", "s", "alpha", "wce", "T", "bound_cbcdbd"}
    assert report["T"] <= report["bound_cbcdbd"]


def test_error_csv_format(tmp_path, capsys):
    vec = str(tmp_path / "v.txt")
    main(["construct", "--algo", "std-cbc", "--N", "16", "--s", "2",
          "--alpha", "2", "--weights", "product:1/j^2", "--out", vec])
    assert main(["error", "--vector", vec, "--alpha", "2",
                 "--weights", "product:1/j^2", "--format", "csv"]) == 0
    out = capsys.readouterr().out.splitlines()
    header = out[0].split(",")
    row = out[1].split(",")
    assert header[:3] == ["N", "s", "alpha"]
    assert row[0] == "16" and row[1] == "2"


def test_usage_errors_exit_2(tmp_path, capsys):
    vec = str(tmp_path / "v.txt")
    # both --n and --N
    assert main(["construct", "--algo", "cbc-dbd", "--n", "4", "--N", "16",
                 "--s", "2", "--weights", "product:1/j^2", "--out", vec]) == 2
    # korobov needs a prime
    assert main(["construct", "--algo", "korobov-cbc", "--N", "16", "--s", "2",
                 "--weights", "product:1/j^2", "--out", vec]) == 2
    # std-cbc needs --alpha
    assert main(["construct", "--algo", "std-cbc", "--N", "16", "--s", "2",
                 "--weights", "product:1/j^2", "--out", vec]) == 2
    capsys.readouterr()


def test_missing_file_exits_1(capsys):
    assert main(["error", "--vector", "/nonexistent/v.txt", "--alpha", "2",
                 "--weights", "product:1/j^2"]) == 1
    capsys.readouterr()


def test_sweep_csv_schema(tmp_path):
    out = str(tmp_path / "sweep.csv")
    assert main(["sweep", "--algo", "std-cbc", "--weights", "product:1/j^2",
                 "--alpha-list", "2,3", "--s", "3", "--n-range", "4..6",
                 "--out", out]) == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == CSV_HEADER
    assert len(rows) == 1 + 2 * 3
    Ns = [int(r[0]) for r in rows[1:]]
    alphas = [float(r[2]) for r in rows[1:]]
    assert alphas == sorted(alphas)
    assert Ns[:3] == [16, 32, 64]  # sorted by N within each alpha
    for r in rows[1:]:
        assert float(r[5]) > 0.0  # wce
        assert float(r[6]) >= 0.0 and float(r[7]) >= 0.0


def test_sweep_prime_schedule(tmp_path):
    out = str(tmp_path / "sweep.csv")
    assert main(["sweep", "--algo", "korobov-cbc", "--weights",
                 "product:1/j^2", "--alpha-list", "2", "--s", "2",
                 "--prime-near-pow2", "4..5", "--out", out]) == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert [int(r[0]) for r in rows[1:]] == [13, 31]


def test_sweep_row_powers_weights_consistently():
    row = sweep_row("korobov-cbc", 31, 3, "product:1/j^2", 2.0)
    v = construct_korobov_cbc(31, 3, W10)
    expect = wce_product(v, 2.0, power_weights(W10, 2.0))
    assert row["wce"] == pytest.approx(expect, rel=1e-12)
    assert row["algorithm"] == "korobov-cbc"


def test_points_output(tmp_path):
    vec = str(tmp_path / "v.txt")
    write_vector(vec, GeneratingVector(4, (1, 3)))
    out = str(tmp_path / "pts.txt")
    assert main(["points", "--vector", vec, "--out", out]) == 0
    lines = open(out).read().splitlines()
    assert len(lines) == 4
    assert [float(x) for x in lines[0].split("\t")] == [0.0, 0.0]
    assert [float(x) for x in lines[3].split("\t")] == [0.75, 0.25]


def test_points_limit(tmp_path, capsys):
    vec = str(tmp_path / "v.txt")
    write_vector(vec, GeneratingVector(8, (1, 5)))
    assert main(["points", "--vector", vec, "--limit", "3"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 3
