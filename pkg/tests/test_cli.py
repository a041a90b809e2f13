import json

import numpy as np
import pytest

from chordmean.cli import main, parse_cap, parse_domain, parse_poly


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def parse_csv(out):
    lines = [l for l in out.strip().splitlines()]
    meta = [l for l in lines if l.startswith("#")]
    body = [l for l in lines if not l.startswith("#")]
    header = body[0].split(",")
    import csv as _csv
    rows = list(_csv.reader(body[1:]))
    return meta, header, rows


def test_solve_harmonic_example(capsys):
    code, out = run_cli(["solve", "--operator", "harmonic", "--dim", "2",
                         "--data", "harm:2,re", "--point", "0.3,0.2",
                         "--n", "4096"], capsys)
    assert code == 0
    meta, header, rows = parse_csv(out)
    assert meta[0].startswith("# tool: chordmean")
    row = dict(zip(header, rows[0]))
    assert abs(float(row["value"]) - 0.05) <= 1e-8
    assert float(row["residual"]) <= 1e-8
    assert row["flag"] == ""
    # 17 significant digits round-trip
    assert float(row["value"]) == float(f"{float(row['value']):.17g}")


def test_solve_biharmonic_example(capsys):
    code, out = run_cli(["solve", "--operator", "biharmonic", "--dim", "2",
                         "--data", "almansi:0;x", "--point", "0.3,0"], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    row = dict(zip(header, rows[0]))
    assert abs(float(row["value"]) + 0.273) <= 1e-6


def test_solve_ellipse_flags_nonball(capsys):
    code, out = run_cli(["solve", "--operator", "harmonic",
                         "--domain", "ellipse:1.5,1", "--data", "harm:2,re",
                         "--point", "0.5,0"], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    row = dict(zip(header, rows[0]))
    assert row["flag"] == "NONBALL"
    assert float(row["residual"]) > 1e-3


def test_solve_cross_section(capsys):
    code, out = run_cli(["solve", "--operator", "cross-section", "--dim", "3",
                         "--data", "harm:2,2", "--point", "0.3,0.2,0.1",
                         "--normal-n", "8", "--inner", "128"], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    row = dict(zip(header, rows[0]))
    assert abs(float(row["value"]) - float(row["oracle"])) <= 1e-6


def test_measure_cone_example(capsys):
    code, out = run_cli(["measure", "--check", "cone", "--dim", "2",
                         "--point", "0.5,0",
                         "--half-angle", "0.7853981633974483"], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    row = dict(zip(header, rows[0]))
    assert abs(float(row["lhs"]) - 0.5) <= 2e-3
    assert float(row["rhs"]) == 0.5


def test_measure_prop81_example(capsys):
    code, out = run_cli(["measure", "--check", "prop81", "--a", "0.4",
                         "--arc", "0,1.5707963267948966"], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    assert float(rows[0][4]) <= 1e-8


def test_measure_moment_example(capsys):
    code, out = run_cli(["measure", "--check", "moment", "--w", "0.4",
                         "--degree", "2"], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    lhs = complex(rows[0][2])
    assert abs(lhs - 0.08) <= 1e-8


def test_hermite_examples(capsys):
    code, out = run_cli(["hermite", "--m", "4,5", "--a", "-0.5", "--b", "1.5"],
                        capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    table = {int(r[0]): (float(r[3]), float(r[4])) for r in rows}
    assert table[4] == (-0.5625, -1.0)
    assert table[5] == (-1.125, -2.0)
    code, out = run_cli(["hermite", "--m", "4", "--a", "-1", "--b", "1"], capsys)
    _, _, rows = parse_csv(out)
    assert float(rows[0][3]) == -1.0


def test_brownian_determinism(tmp_path, capsys):
    args = ["brownian", "--dim", "2", "--point", "0.5,0",
            "--arc", "-1.5707963267948966,1.5707963267948966",
            "--n", "2000", "--seed", "7"]
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert main(args + ["--output", str(out1)]) == 0
    assert main(args + ["--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    meta, header, rows = parse_csv(out1.read_text())
    assert {r[0] for r in rows} == {"full", "line"}
    for r in rows:
        assert abs(float(r[2]) - 0.795167) <= 0.05


def test_brownian_3d_symmetry(capsys):
    code, out = run_cli(["brownian", "--dim", "3", "--point", "0,0,0",
                         "--cap", "axis=0,0,1,half=1.5707963267948966,nappe=plus",
                         "--n", "2000", "--seed", "7"], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    assert {r[0] for r in rows} == {"full", "plane", "line"}
    for r in rows:
        assert abs(float(r[2]) - 0.5) <= 0.05


def test_brownian_rim_switches_sampler_2d(capsys):
    code = main(["brownian", "--dim", "2", "--point", "0.9,0",
                 "--arc", "0,1.0", "--n", "2000", "--seed", "3"])
    captured = capsys.readouterr()
    assert code == 0
    assert "exact disk sampler" in captured.err


def test_brownian_rim_refused_3d(capsys):
    code = main(["brownian", "--dim", "3", "--point", "0.9,0,0",
                 "--cap", "axis=1,0,0,half=0.5,nappe=plus",
                 "--n", "2000", "--seed", "3"])
    assert code == 2


def test_json_output(tmp_path):
    out = tmp_path / "r.json"
    code = main(["solve", "--data", "harm:1,re", "--point", "0.4,0.1",
                 "--format", "json", "--output", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["tool"] == "chordmean"
    assert "config" in payload
    row = dict(zip(payload["columns"], payload["rows"][0]))
    assert abs(row["value"] - 0.4) <= 1e-10


def test_config_file_merge(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"data": "harm:2,re", "point": "0.3,0.2",
                               "n": 512}))
    code, out = run_cli(["solve", "--config", str(cfg)], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    row = dict(zip(header, rows[0]))
    assert row["nodes"] == "512"
    # flags override the file
    code, out = run_cli(["solve", "--config", str(cfg), "--n", "256"], capsys)
    _, header, rows = parse_csv(out)
    assert dict(zip(header, rows[0]))["nodes"] == "256"


def test_config_data_dict(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "data": {"dim": 2, "terms": [[2, "re", 1.0], [1, "im", 0.5]]},
        "point": "0.3,0.2"}))
    code, out = run_cli(["solve", "--config", str(cfg)], capsys)
    assert code == 0
    _, header, rows = parse_csv(out)
    row = dict(zip(header, rows[0]))
    assert abs(float(row["value"]) - (0.05 + 0.5 * 0.2)) <= 1e-8


def test_exit_codes(capsys):
    # config error: unknown domain
    assert main(["solve", "--domain", "square:1", "--data", "harm:1,re",
                 "--point", "0,0"]) == 2
    # numerical-domain error: biharmonic needs gradient data
    assert main(["solve", "--operator", "biharmonic", "--data", "cap:axis=1,0,half=0.5",
                 "--point", "0,0", "--n", "64"]) == 3
    # selftest failure propagates as 4 is covered in test_selftest_subset


def test_selftest_subset(tmp_path, capsys):
    report = tmp_path / "report.json"
    code = main(["selftest", "--criteria", "4,7", "--json", str(report)])
    captured = capsys.readouterr()
    assert code == 0
    assert "[PASS] criterion  4" in captured.out
    payload = json.loads(report.read_text())
    assert [c["criterion"] for c in payload["checks"]] == [4, 7]
    assert all(c["passed"] for c in payload["checks"])


def test_parse_helpers():
    poly = parse_poly(2, "2,re+1,im,0.5")
    assert abs(float(poly.value(np.array([0.3, 0.2]))) - (0.05 + 0.1)) <= 1e-14
    cap = parse_cap(3, "axis=0,0,2,half=0.7,nappe=minus", vertex=(0.0, 0.0, 0.0))
    assert cap.nappe == "minus"
    assert abs(np.linalg.norm(cap.axis) - 1.0) <= 1e-12
    dom = parse_domain(2, "conformal:0.4")
    assert dom.kind == "conformal"
    with pytest.raises(Exception):
        parse_poly(2, "nonsense")
