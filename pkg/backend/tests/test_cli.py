import io

import pytest

import app.cli
from app.cli import run
from app.extremal.spiral import spiral
from app.tools.polygon_io import read_polygon

from conftest import L_HEXAGON_TEXT, SQUARE_TEXT


@pytest.fixture
def square_file(tmp_path):
    path = tmp_path / "square.poly"
    path.write_text(SQUARE_TEXT)
    return str(path)


@pytest.fixture
def hexagon_file(tmp_path):
    path = tmp_path / "hexagon.poly"
    path.write_text(L_HEXAGON_TEXT)
    return str(path)


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_validate(square_file):
    assert invoke("validate", square_file) == (0, "simple n=4\n", "")


def test_validate_reports_domain_errors(tmp_path):
    bowtie = tmp_path / "bowtie.poly"
    bowtie.write_text("4\n0 0\n1 1\n1 0\n0 1\n")
    code, out, err = invoke("validate", str(bowtie))
    assert code == 1
    assert out == ""
    assert "edges 1 and 3 intersect" in err


def test_parse_errors_exit_one(tmp_path):
    broken = tmp_path / "broken.poly"
    broken.write_text("3\n0 0\n1 q\n0 1\n")
    code, _, err = invoke("validate", str(broken))
    assert code == 1
    assert "line 3" in err


@pytest.mark.parametrize("x, y, expected", [
    ("1/2", "1/2", "interior"),
    ("2", "0.5", "exterior"),
    ("-1", "1/2", "exterior"),
    ("0", "0", "boundary vertex 0"),
    ("1/2", "0", "boundary edge 1"),
])
def test_classify(square_file, x, y, expected):
    assert invoke("classify", square_file, x, y) == (0, f"{expected}\n", "")


def test_usage_errors_exit_two(square_file):
    assert invoke("frobnicate")[0] == 2
    assert invoke("classify", square_file, "abc", "1")[0] == 2
    assert invoke("classify", square_file, "1")[0] == 2
    assert invoke("gen", "spiral", "2")[0] == 2
    assert invoke("validate", "/nonexistent/file.poly")[0] == 2


def test_visible(hexagon_file):
    code, out, _ = invoke("visible", hexagon_file, "1/2", "7/4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "vertices 0 3 4 5"
    assert lines[1].startswith("pair ")
    assert lines[2].startswith("nonadjacent ")


def test_path_with_svg(hexagon_file, tmp_path):
    svg = tmp_path / "path.svg"
    code, out, _ = invoke("path", hexagon_file, "1/2", "7/4", "7/4", "1/2", "--svg", str(svg))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "links 2 bound 3 case CommonVertex interior"
    assert lines[1].startswith("path 1/2 7/4 ")
    assert lines[1].endswith(" 7/4 1/2")
    assert "<polyline" in svg.read_text()


def test_naive_path(hexagon_file):
    code, out, _ = invoke("path", hexagon_file, "1/2", "3/2", "3/2", "1/2", "--naive")
    assert code == 0
    assert " case Naive interior" in out.splitlines()[0]


def test_path_component_mismatch(square_file):
    code, out, err = invoke("path", square_file, "1/2", "1/2", "3", "3")
    assert code == 1 and out == "" and "different components" in err


def test_linkdist(hexagon_file):
    code, out, _ = invoke("linkdist", hexagon_file, "--domain", "int", "1/2", "7/4", "7/4", "1/2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "2"
    assert lines[1].startswith("witness 1/2 7/4 ")


def test_linkdist_respects_max_n(hexagon_file):
    code, _, err = invoke("linkdist", hexagon_file, "1/2", "7/4", "7/4", "1/2", "--max-n", "5")
    assert code == 1
    assert "n=6" in err


def test_poldiam(square_file):
    code, out, _ = invoke("poldiam", square_file, "--domain", "int", "--budget", "6", "--seed", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "1"
    assert lines[-1].startswith("samples ")


def test_gen_to_stdout():
    code, out, _ = invoke("gen", "spiral", "4")
    assert code == 0
    assert out.startswith("# spiral n=4 int=2 ext=2\n# int-witness 1/2 0 -5/4 21/4\n")


def test_gen_to_file_round_trips(tmp_path):
    target = tmp_path / "spiral6.poly"
    code, out, _ = invoke("gen", "spiral", "6", "--out", str(target))
    assert code == 0
    assert out == f"wrote {target}\n"
    doc = read_polygon(str(target))
    assert doc.polygon == spiral(6).polygon
    assert doc.witnesses["ext-witness"] == spiral(6).exterior_witness


def test_gen_verify_small():
    code, out, _ = invoke("gen", "spiral", "4", "--verify", "--budget", "0")
    assert code == 0
    assert out.splitlines()[-3:] == ["# int 2/2", "# ext 2/2", "# pass"]


def test_gen_verify_checks_sampled_bounds_by_default():
    code, out, _ = invoke("gen", "spiral", "4", "--verify")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "# pass"
    assert "# int 2/2" in lines and "# ext 2/2" in lines
    assert any(line.startswith("# int-bound ") for line in lines)
    assert any(line.startswith("# ext-bound ") for line in lines)


def test_unexpected_value_errors_exit_one(monkeypatch, square_file):
    def broken(text):
        raise ValueError("vertex list went sideways")

    monkeypatch.setitem(app.cli.COMMANDS, "validate", broken)
    code, out, err = invoke("validate", square_file)
    assert code == 1
    assert out == ""
    assert err == "error: vertex list went sideways\n"


def test_runs_are_deterministic(tmp_path):
    outputs = []
    for k in range(2):
        svg = tmp_path / f"run{k}.svg"
        _, out, _ = invoke("gen", "spiral", "9", "--svg", str(svg))
        outputs.append((out, svg.read_bytes()))
    assert outputs[0] == outputs[1]


@pytest.mark.slow
def test_linkdist_on_generated_spiral(tmp_path):
    target = tmp_path / "spiral6.poly"
    invoke("gen", "spiral", "6", "--out", str(target))
    code, out, _ = invoke("linkdist", str(target), "--domain", "int", "1/2", "0", "-2", "-1")
    assert code == 0
    assert out.splitlines()[0] == "3"
