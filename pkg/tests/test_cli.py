"""The shared text format and the command-line front end."""

import json
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from siegel import cli, exact, serialize, torus
from siegel.errors import ValidationError
from siegel.halfspace import siegel_point

TAU_I = siegel_point([[mpc(0, 1)]])


def test_scalar_round_trips():
    assert serialize.parse_int(serialize.dump_int(-42)) == -42
    assert serialize.parse_rational("3/4") == Fraction(3, 4)
    assert serialize.dump_rational(Fraction(-6, 4)) == "-3/2"
    assert serialize.dump_rational(Fraction(5)) == "5"
    with mp.workprec(128):
        x = mpf(1) / 3
        back = serialize.parse_real(serialize.dump_real(x, 128), 128)
        assert abs(back - x) < mpf("1e-36")
        z = mpc(x, -x)
        zback = serialize.parse_complex(serialize.dump_complex(z, 128), 128)
        assert abs(zback - z) < mpf("1e-36")


def test_parse_errors():
    with pytest.raises(ValidationError):
        serialize.parse_int("3/4")
    with pytest.raises(ValidationError):
        serialize.parse_rational("abc")
    with pytest.raises(ValidationError):
        serialize.parse_complex({"re": "1", "imag": "2"})
    with pytest.raises(ValidationError):
        serialize.parse_int_matrix([])


def test_matrix_round_trips():
    m = ((1, -2), (3, 4))
    assert serialize.parse_int_matrix(serialize.dump_int_matrix(m)) == m
    point = siegel_point([[mpc("0.25", "1.5")]])
    data = serialize.dump_complex_matrix(point.tau, 128)
    back = serialize.parse_complex_matrix(data, 128)
    assert abs(back[0, 0] - point.tau[0, 0]) < mpf("1e-36")


def test_witness_file_round_trip(tmp_path):
    isos = torus.enumerate_isogenies_g1(TAU_I, 2)
    witness = torus.make_witness(
        TAU_I, isos[0], subgroup_coeffs=(1,),
        generator_lifts=((Fraction(1, 3), Fraction(1, 5)),),
        denominator=2, lattice_seed=(1, 0))
    payload = serialize.dump_witness(witness, TAU_I)
    path = tmp_path / "witness.json"
    serialize.save_json(str(path), payload)
    loaded, tau0 = serialize.parse_witness(serialize.load_json(str(path)))
    report = torus.check_orbit_witness(loaded, tau0)
    assert report.ok


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def _tau_payload(re, im):
    return {"tau": [[{"re": re, "im": im}]]}


def test_cli_reduce(tmp_path, capsys):
    path = _write(tmp_path, "tau.json", _tau_payload("0.7", "2.0"))
    code = cli.main(["reduce", "--in", path, "--format", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["status"] == "pass"
    assert out["result"]["transform"] == [["1", "-1"], ["0", "1"]]
    value = out["result"]["tau_reduced"][0][0]
    assert abs(float(value["re"]) + 0.3) < 1e-12
    assert out["result"]["certified"] is True


def test_cli_reduce_coset(tmp_path, capsys):
    tau = _tau_payload("1.1", "1.5")  # T[0.1 + 1.5i]
    path = _write(tmp_path, "tau.json", tau)
    reps = _write(tmp_path, "reps.json",
                  {"reps": [[["1", "0"], ["0", "1"]], [["1", "1"], ["0", "1"]]]})
    code = cli.main(["reduce", "--in", path, "--group", "g_l2l", "--l", "16",
                     "--reps", reps, "--format", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert abs(float(out["result"]["tau_reduced"][0][0]["re"]) - 1.1) < 1e-12


def test_cli_reduce_byte_identical_reports(tmp_path, capsys):
    path = _write(tmp_path, "tau.json", _tau_payload("0.37", "1.41"))
    cli.main(["reduce", "--in", path, "--format", "json"])
    first = json.loads(capsys.readouterr().out)
    cli.main(["reduce", "--in", path, "--format", "json"])
    second = json.loads(capsys.readouterr().out)
    first.pop("timing")
    second.pop("timing")
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_cli_decompose(tmp_path, capsys):
    payload = {"matrix": [["2", "1", "0", "3"], ["0", "1", "4", "1"],
                          ["5", "0", "1", "0"], ["2", "2", "0", "1"]]}
    path = _write(tmp_path, "m.json", payload)
    code = cli.main(["decompose", "--in", path, "--format", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    s = serialize.parse_int_matrix(out["result"]["s"])
    p = serialize.parse_int_matrix(out["result"]["p"])
    m = serialize.parse_int_matrix(payload["matrix"])
    assert exact.mul(s, p) == m


def test_cli_theta_eval(tmp_path, capsys):
    payload = dict(_tau_payload("0", "1"), a=["0"], b=["0"],
                   z=[{"re": "0", "im": "0"}])
    path = _write(tmp_path, "t.json", payload)
    code = cli.main(["theta-eval", "--in", path, "--format", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert abs(float(out["result"]["value"]["re"]) - 1.0864348112133) < 1e-10


def test_cli_embed(tmp_path, capsys):
    path = _write(tmp_path, "t.json", _tau_payload("0", "1"))
    code = cli.main(["embed", "--in", path, "--l", "16", "--format", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["result"]["dimension"] == 15
    assert len(out["result"]["coordinates"]) == 16


def test_cli_isogeny(tmp_path, capsys):
    payload = {"tau0": [[{"re": "0", "im": "1"}]],
               "beta": [["1", "0"], ["0", "2"]]}
    path = _write(tmp_path, "iso.json", payload)
    code = cli.main(["isogeny", "--in", path, "--format", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["result"]["degree"] == "2"
    assert abs(float(out["result"]["tau"][0][0]["im"]) - 2.0) < 1e-12
    assert out["result"]["imaginary_form"] == [["0", "2"], ["-2", "0"]]
    assert out["result"]["ampleness_n"] >= 1


def test_cli_enumerate(tmp_path, capsys):
    payload = {"tau0": [[{"re": "0", "im": "1"}]]}
    path = _write(tmp_path, "e.json", payload)
    code = cli.main(["enumerate", "--in", path, "--D", "2", "--format", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["result"]["count"] == 3


def test_cli_witness_check(tmp_path, capsys):
    witness = torus.identity_witness(TAU_I)
    payload = serialize.dump_witness(witness, TAU_I)
    path = _write(tmp_path, "w.json", payload)
    code = cli.main(["witness-check", "--in", path, "--format", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["status"] == "pass"
    assert all(float(v) == 0 for v in out["result"]["residuals"].values())

    # corrupt one lattice entry: the check must fail with exit code 2
    payload["r"] = ["1", "0"]
    path2 = _write(tmp_path, "w2.json", payload)
    code = cli.main(["witness-check", "--in", path2, "--format", "json"])
    out = json.loads(capsys.readouterr().out)
    assert code == cli.EXIT_NUMERIC
    assert out["status"] == "fail"


def test_cli_exit_codes(tmp_path, capsys):
    # unreadable input file
    assert cli.main(["reduce", "--in", str(tmp_path / "missing.json")]) == \
        cli.EXIT_VALIDATION
    capsys.readouterr()
    # invalid payload
    path = _write(tmp_path, "bad.json", {"tau": [[{"re": "0", "im": "-1"}]]})
    assert cli.main(["reduce", "--in", path]) == cli.EXIT_VALIDATION
    capsys.readouterr()
    # uncertified result under --require-certified: a g = 3 reduction
    tau3 = {"tau": [[{"re": "0", "im": "2"}, {"re": "0", "im": "0"},
                     {"re": "0", "im": "0"}],
                    [{"re": "0", "im": "0"}, {"re": "0", "im": "2"},
                     {"re": "0", "im": "0"}],
                    [{"re": "0", "im": "0"}, {"re": "0", "im": "0"},
                     {"re": "0", "im": "2"}]]}
    path = _write(tmp_path, "tau3.json", tau3)
    assert cli.main(["reduce", "--in", path, "--require-certified"]) == \
        cli.EXIT_UNCERTIFIED
    capsys.readouterr()


def test_cli_numeric_error_exit(tmp_path, capsys):
    # Im tau below the evaluation floor: theta refuses numerically
    path = _write(tmp_path, "tiny.json", _tau_payload("0", "1e-7"))
    assert cli.main(["theta-eval", "--in", path]) == cli.EXIT_NUMERIC
    capsys.readouterr()


def test_cli_text_format(tmp_path, capsys):
    path = _write(tmp_path, "tau.json", _tau_payload("0.7", "2.0"))
    code = cli.main(["reduce", "--in", path])
    out = capsys.readouterr().out
    assert code == 0
    assert "status: pass" in out
    assert "tau_reduced" in out


def test_cli_out_file(tmp_path, capsys):
    path = _write(tmp_path, "tau.json", _tau_payload("0.7", "2.0"))
    report_path = tmp_path / "report.json"
    code = cli.main(["reduce", "--in", path, "--out", str(report_path)])
    capsys.readouterr()
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["status"] == "pass"
