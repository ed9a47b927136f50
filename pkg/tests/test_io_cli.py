import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from medradius import io
from medradius.cli import main
from medradius.compare import reproduce_table
from medradius.depth import GridField
from medradius.errors import InputError
from medradius.radial import profile


def _write(path, text):
    path.write_text(text)
    return path


# --- reading --------------------------------------------------------------------------

def test_read_plain(tmp_path):
    x = io.read_dataset(_write(tmp_path / "a.csv", "0,0\n1,0\n0,1"))
    assert x.shape == (3, 2)


def test_read_header(tmp_path):
    p = _write(tmp_path / "h.csv", "x1,x2\n1,2\n3,4\n")
    assert io.read_dataset(p, has_header=True).shape == (2, 2)
    assert io.read_dataset(p).shape == (2, 2)
    with pytest.raises(InputError, match="line 1, column 1"):
        io.read_dataset(p, has_header=False)


def test_read_ragged_names_line(tmp_path):
    p = _write(tmp_path / "r.csv", "1,2\n3,4\n5\n")
    with pytest.raises(InputError, match="line 3"):
        io.read_dataset(p)


def test_read_non_numeric_cell(tmp_path):
    p = _write(tmp_path / "n.csv", "1,2\n3,abc\n")
    with pytest.raises(InputError, match="line 2, column 2"):
        io.read_dataset(p)


def test_read_empty(tmp_path):
    with pytest.raises(InputError):
        io.read_dataset(_write(tmp_path / "e.csv", ""))
    with pytest.raises(InputError):
        io.read_dataset(_write(tmp_path / "e2.csv", "x,y\n"))
    with pytest.raises(InputError):
        io.read_dataset(tmp_path / "missing.csv")


finite = st.floats(allow_nan=False, allow_infinity=False)


@given(st.lists(st.tuples(finite, finite, finite), min_size=1, max_size=20))
@settings(max_examples=50)
def test_round_trip_is_exact(tmp_path_factory, rows):
    path = tmp_path_factory.mktemp("rt") / "d.csv"
    x = np.array(rows)
    io.write_report(x, path)
    y = io.read_dataset(path, has_header=True)
    assert np.array_equal(x, y)


# --- writing ---------------------------------------------------------------------------

def test_format_real():
    assert io.format_real(float("nan")) == "NA"
    assert io.format_real(float("inf")) == "inf"
    assert io.format_real(-float("inf")) == "-inf"
    assert io.format_real(0.1) == "0.10000000000000001"


def test_csv_is_rfc4180(tmp_path):
    p = tmp_path / "x.csv"
    io.write_csv(p, ["a", "b"], [[1.5, 'say "hi", ok']])
    assert p.read_bytes() == b'a,b\r\n1.5,"say ""hi"", ok"\r\n'


def test_nan_field_written_as_na(tmp_path):
    f = GridField(xs=np.array([0.0, 1.0]), ys=np.array([0.0]),
                  layers={"mahalanobis": np.full((2, 1), np.nan)},
                  errors={"mahalanobis": "singular-covariance"})
    written = io.write_report(f, tmp_path / "field.csv")
    assert [p.name for p in written] == ["field_mahalanobis.csv"]
    assert written[0].read_text().splitlines() == ["x,y,value", "0,0,NA", "1,0,NA"]
    doc = json.loads(io.json_text(io.report_dict(f)))
    assert doc["layers"]["mahalanobis"] == [["NA"], ["NA"]]


def test_same_report_gives_identical_bytes(tmp_path):
    prof = profile([0, 1, 2, 3, 4], np.linspace(-1, 5, 13), 2.0)
    io.write_report(prof, tmp_path / "a.csv")
    io.write_report(prof, tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    io.write_report(prof, tmp_path / "a.json", "json")
    io.write_report(prof, tmp_path / "b.json", "json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_matrix_report_layout(tmp_path):
    rep = reproduce_table(1, n=120, seed=3, n_dirs=30)
    header, rows = io.correlation_table(rep)
    assert header == ["block", "method"] + rep.methods
    assert [r[1] for r in rows[:6]] == rep.methods
    assert [r[0] for r in rows] == ["corr"] * 6 + ["centre_dist"] * 6
    assert all(rows[i][2 + i] == 1.0 for i in range(6))
    doc = json.loads(io.json_text(rep.as_dict()))
    assert np.allclose(doc["corr"], rep.corr, rtol=0, atol=0)


# --- command line -----------------------------------------------------------------------

@pytest.fixture
def square_csv(tmp_path):
    return _write(tmp_path / "square.csv", "0,0\n2,0\n0,2\n2,2\n")


def test_cli_depth(square_csv, capsys):
    assert main(["depth", "--input", str(square_csv), "--method", "mrd",
                 "--points", str(square_csv)]) == 0
    doc = json.loads(capsys.readouterr().out)
    d = doc["depths"]["mrd"]
    assert len(d) == 4
    pts = np.array(doc["points"])
    nearest = np.argmin(np.linalg.norm(pts - doc["center"]["location"], axis=1))
    assert max(d) == d[nearest]
    assert doc["run"]["verb"] == "depth" and doc["run"]["flags"]["method"] == ["mrd"]


def test_cli_reproduce_stdout(capsys):
    assert main(["reproduce", "--table", "1", "--n", "150", "--seed", "42",
                 "--n-dirs", "50"]) == 0
    lines = capsys.readouterr().out.split("\r\n")
    assert lines[0] == "block,method,mrd,mahalanobis,tukey2d,spatial,simplicial2d,projection"
    corr = [l.split(",") for l in lines[1:7]]
    assert all(row[2 + i] == "1" for i, row in enumerate(corr))


def test_cli_reproduce_files(tmp_path):
    out = tmp_path / "tab"
    assert main(["reproduce", "--table", "3", "--n", "120", "--seed", "1",
                 "--n-dirs", "20", "--output", str(out)]) == 0
    doc = json.loads((out / "table3.json").read_text())
    assert doc["run"]["seed"] == 1 and doc["scenario"] == "bimodal"
    assert (out / "table3.csv").exists()


def test_cli_figure6(capsys):
    assert main(["figure", "--id", "6", "--n", "20", "--d", "50", "--seed", "0"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["covariance_singular"] is True
    assert doc["g_finite"] is True and doc["h_finite"] is True


def test_cli_stochastic_verbs_need_seed(square_csv, capsys):
    assert main(["figure", "--id", "6", "--n", "20", "--d", "50"]) == 1
    assert main(["reproduce", "--table", "1"]) == 1
    assert main(["depth", "--input", str(square_csv), "--method", "projection"]) == 1
    assert "seed" in capsys.readouterr().err


def test_cli_exit_codes(tmp_path, square_csv, capsys):
    assert main(["depth", "--bogus"]) == 1
    assert main(["depth", "--input", str(tmp_path / "nope.csv")]) == 1
    assert main(["depth", "--input", str(_write(tmp_path / "r.csv", "1,2\n3\n"))]) == 1
    line = _write(tmp_path / "line.csv", "0,0\n1,1\n2,2\n")
    assert main(["depth", "--input", str(line), "--method", "mahalanobis"]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err and "singular-covariance" in err


def test_cli_profile_and_sidecar(tmp_path):
    data = _write(tmp_path / "u.csv", "v\n0\n1\n2\n3\n4\n")
    out = tmp_path / "prof.csv"
    assert main(["profile", "--input", str(data), "--grid-n", "11", "--center", "gmedian",
                 "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "v,g,h,d_minus,d_plus,a,slope" and len(lines) == 12
    meta = json.loads((tmp_path / "prof.meta.json").read_text())
    assert meta["verb"] == "profile" and meta["flags"]["grid_n"] == 11


def test_cli_gmedian(square_csv, capsys):
    assert main(["gmedian", "--input", str(square_csv)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert np.allclose(doc["geometric_median"]["location"], [1, 1])
    assert doc["radial_center"]["g_at_center"] == 1


def test_cli_contour(square_csv, tmp_path):
    out = tmp_path / "ct"
    assert main(["contour", "--input", str(square_csv), "--grid-n", "4",
                 "--method", "tukey2d", "--method", "mahalanobis", "--output", str(out)]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == ["g.csv", "h.csv", "mahalanobis.csv", "meta.json", "tukey2d.csv"]
    assert len((out / "g.csv").read_text().splitlines()) == 17


def test_cli_figure_field_needs_output(capsys):
    assert main(["figure", "--id", "4", "--seed", "1", "--n", "100", "--grid-n", "5"]) == 1


def test_cli_figure_field_files(tmp_path):
    out = tmp_path / "f5"
    assert main(["figure", "--id", "5", "--seed", "1", "--n", "100", "--grid-n", "5",
                 "--output", str(out)]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert "fig5_robust-mahalanobis.csv" in names and "fig5_meta.json" in names
