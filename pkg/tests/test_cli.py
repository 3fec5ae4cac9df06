import io
import json
import math
import subprocess
import sys

import pytest

from sigmau import cli
from sigmau.geometry import GeometryError

PI = math.pi
LATTICE = {"atoms": [{"angle": 0, "mass": 1}, {"angle": PI, "mass": 1}]}
ONE = {"atoms": [{"angle": 0, "mass": 1}]}
EQUI = {"atoms": [{"angle": a, "mass": 1} for a in (0, 2 * PI / 3, 4 * PI / 3)]}


def run(monkeypatch, capsys, argv, payload):
    text = payload if isinstance(payload, str) else json.dumps(payload)
    monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_single_atom(monkeypatch, capsys):
    code, out, err = run(monkeypatch, capsys, ["analyze"], ONE)
    assert code == 0 and err == ""
    rep = json.loads(out)
    assert rep["sigma_u"] == pytest.approx(PI, abs=1e-9)
    assert rep["case"] == "1"
    assert rep["options"] == {"grid": 720}


def test_analyze_degrees_flag(monkeypatch, capsys):
    deg = {"atoms": [{"angle": 0, "mass": 1}, {"angle": 90, "mass": 1}]}
    code, out, _ = run(monkeypatch, capsys, ["analyze", "--degrees"], deg)
    assert code == 0
    assert json.loads(out)["sigma_u"] == pytest.approx(PI * math.sqrt(2), abs=1e-9)


@pytest.mark.parametrize("payload", ["{not json", "[1, 2]", {"foo": 1}, {"atoms": [{"angle": 0, "mass": -1}]}])
def test_bad_input_exit_2(monkeypatch, capsys, payload):
    code, out, err = run(monkeypatch, capsys, ["analyze"], payload)
    assert code == cli.EXIT_INPUT and out == ""
    assert err.count("\n") == 1


def test_irrelevant_option_warns(monkeypatch, capsys):
    code, out, err = run(monkeypatch, capsys, ["analyze"], {"measure": ONE, "options": {"rmax": 100}})
    assert code == 0
    assert "rmax" in err and "ignored" in err
    assert "rmax" not in json.loads(out)["options"]


def test_geometry_failure_exit_3(monkeypatch, capsys):
    def broken(*_a, **_k):
        raise GeometryError("indicator polygon does not close")

    monkeypatch.setattr(cli, "critical_type", broken)
    code, out, err = run(monkeypatch, capsys, ["analyze"], ONE)
    assert code == cli.EXIT_COMPUTE and out == "" and "close" in err


@pytest.mark.parametrize(
    "sigma, certified, margin",
    [(3.0, True, 1 - 3 / PI), (PI, False, 0.0), (4.0, False, 1 - 4 / PI)],
)
def test_certify_examples(monkeypatch, capsys, sigma, certified, margin):
    code, out, _ = run(monkeypatch, capsys, ["certify", "--sigma", str(sigma)], LATTICE)
    assert code == 0
    rep = json.loads(out)
    assert rep["certified"] is certified
    assert rep["margin"] == pytest.approx(margin, abs=1e-12)


def test_certify_needs_sigma(monkeypatch, capsys):
    assert run(monkeypatch, capsys, ["certify"], LATTICE)[0] == cli.EXIT_INPUT
    assert run(monkeypatch, capsys, ["certify", "--sigma", "-1"], LATTICE)[0] == cli.EXIT_INPUT


def test_generate_augment_gives_integer_like(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["generate", "--rmax", "20", "--augment-ray"], ONE)
    assert code == 0
    pts = json.loads(out)["points"]
    assert all(abs(p[1]) <= 1e-12 * abs(p[0]) for p in pts)
    neg = sorted(p[0] for p in pts if p[0] < 0)
    pos = sorted(p[0] for p in pts if p[0] > 0)
    assert neg == [float(k) for k in range(-20, 0)]
    # the sampled ray is a calibrated unit-spaced stream, not the integers themselves
    assert abs(len(pos) - 20) <= 1
    assert max(abs(b - a - 1) for a, b in zip(pos[1:], pos[2:])) < 1e-9


def test_generate_empty_measure(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["generate", "--rmax", "50"], {"atoms": []})
    assert code == 0 and json.loads(out)["points"] == []


def test_generate_composes_left_to_right(monkeypatch, capsys):
    half = {"atoms": [{"angle": 0, "mass": 1}, {"angle": 2.0, "mass": 0.5}]}
    a = run(monkeypatch, capsys, ["generate", "--rmax", "30", "--augment-ray", "--symmetrize"], half)[1]
    b = run(monkeypatch, capsys, ["generate", "--rmax", "30", "--symmetrize", "--augment-ray"], half)[1]
    na, nb = len(json.loads(a)["points"]), len(json.loads(b)["points"])
    assert na != nb
    # symmetrize-then-augment: the symmetrized measure already closes, but the ray is
    # driven by the input measure, so the ray points are added once after doubling
    base = len(json.loads(run(monkeypatch, capsys, ["generate", "--rmax", "30"], half)[1])["points"])
    ray = len(json.loads(run(monkeypatch, capsys, ["generate", "--rmax", "30", "--augment-ray"], half)[1])["points"]) - base
    assert na == 2 * (base + ray) and nb == 2 * base + ray


def test_generate_needs_rmax(monkeypatch, capsys):
    assert run(monkeypatch, capsys, ["generate"], ONE)[0] == cli.EXIT_INPUT


def test_verify_examples(monkeypatch, capsys):
    assert run(monkeypatch, capsys, ["verify"], LATTICE)[0] == cli.EXIT_INPUT
    assert run(monkeypatch, capsys, ["verify", "--rmax", "500", "--angles", "7"], LATTICE)[0] == cli.EXIT_INPUT
    code, out, _ = run(monkeypatch, capsys, ["verify", "--rmax", "500", "--angles", "8"], LATTICE)
    assert code == 0
    rep = json.loads(out)
    assert len(rep["angles"]) == 8
    assert set(rep["angles"][0]) == {"t", "h", "spread"}
    assert rep["sigma_u_predicted"] == pytest.approx(PI)
    assert abs(rep["type_estimate"] / PI - 1) <= 0.10


def _analyze(monkeypatch, capsys, measure):
    return run(monkeypatch, capsys, ["analyze"], measure)[1]


def test_plot_case1_has_no_triangles(monkeypatch, capsys):
    report = _analyze(monkeypatch, capsys, ONE)
    code, svg, _ = run(monkeypatch, capsys, ["plot"], report)
    assert code == 0 and svg.startswith("<?xml")
    assert 'id="T_N"' not in svg and 'id="T_M"' not in svg
    assert "M1" in svg and "M2" in svg and "σ_U" in svg


def test_plot_case2_has_both_triangles(monkeypatch, capsys):
    report = _analyze(monkeypatch, capsys, EQUI)
    code, svg, _ = run(monkeypatch, capsys, ["plot"], report)
    assert code == 0
    assert 'id="T_N"' in svg and 'id="T_M"' in svg
    assert all(f">N{j}<" in svg for j in (1, 2, 3))


def test_plot_empty_body_exit_2(monkeypatch, capsys):
    report = _analyze(monkeypatch, capsys, {"atoms": []})
    assert run(monkeypatch, capsys, ["plot"], report)[0] == cli.EXIT_INPUT
    assert run(monkeypatch, capsys, ["plot"], {"radius": 1})[0] == cli.EXIT_INPUT


def test_outputs_are_byte_deterministic(monkeypatch, capsys):
    for argv, payload in [
        (["analyze"], EQUI),
        (["generate", "--rmax", "40", "--seed", "3", "--lunc", "0.5"], ONE),
    ]:
        first = run(monkeypatch, capsys, argv, payload)[1]
        assert run(monkeypatch, capsys, argv, payload)[1] == first
    report = _analyze(monkeypatch, capsys, EQUI)
    assert run(monkeypatch, capsys, ["plot"], report)[1] == run(monkeypatch, capsys, ["plot"], report)[1]


def test_output_file(monkeypatch, capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(monkeypatch, capsys, ["analyze", "--output", str(target)], ONE)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["case"] == "1"


def _pipe(*stages, payload):
    data = json.dumps(payload).encode()
    for argv in stages:
        proc = subprocess.run([sys.executable, "-m", "sigmau", *argv], input=data, capture_output=True, check=True)
        data = proc.stdout
    return data.decode()


def test_analyze_pipes_into_certify_and_plot():
    cert = json.loads(_pipe(["analyze"], ["certify", "--sigma", "3"], payload=LATTICE))
    assert cert["certified"] and cert["sigma_u"] == pytest.approx(PI)
    svg = _pipe(["analyze"], ["plot"], payload=EQUI)
    assert 'id="T_N"' in svg
