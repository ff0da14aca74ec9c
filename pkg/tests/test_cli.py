import json

import pytest

from circuit_energy.cli import main

OR2 = "INPUT x0\nINPUT x1\ng = OR x0 x1\nOUTPUT g\n"


@pytest.fixture
def or2_path(tmp_path):
    p = tmp_path / "or2.cir"
    p.write_text(OR2)
    return str(p)


def test_eval(or2_path, capsys):
    assert main(["eval", or2_path, "--input", "10"]) == 0
    assert capsys.readouterr().out.strip() == "value=1 energy=1"


def test_energy_output_format(or2_path, capsys):
    assert main(["energy", or2_path]) == 0
    assert capsys.readouterr().out.strip() == "EC=1 argmax=10"


def test_energy_on_fixture(capsys):
    assert main(["energy", "fixture:and_tree(4)"]) == 0
    assert capsys.readouterr().out.strip() == "EC=3 argmax=1111"


def test_patterns(or2_path, capsys):
    assert main(["patterns", or2_path]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t=2"
    assert sorted(lines[1:]) == ["0", "1"]


def test_bad_input_is_a_usage_error(or2_path, capsys):
    assert main(["eval", or2_path, "--input", "2x"]) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_is_a_usage_error(capsys):
    assert main(["energy", "/nonexistent/file.cir"]) == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_fixture_is_a_usage_error(capsys):
    assert main(["energy", "fixture:bogus"]) == 2


def test_compile_tt_roundtrip(tmp_path, capsys, monkeypatch):
    table = tmp_path / "xor2.tt"
    table.write_text("n=2\n0110\n")
    assert main(["compile-tt", str(table)]) == 0
    netlist = capsys.readouterr().out
    assert "EC=4" in netlist
    # feed the emitted netlist back through stdin
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(netlist))
    assert main(["energy", "-"]) == 0
    assert capsys.readouterr().out.strip().startswith("EC=4 ")


def test_dt2circuit_and_fanin2(tmp_path, capsys):
    tree = tmp_path / "t.dt"
    tree.write_text("(x0 (x1 0 1) (x1 1 0))\n")
    assert main(["dt2circuit", str(tree)]) == 0
    out = capsys.readouterr().out
    assert "depth=2" in out and "bound 8" in out
    assert main(["fanin2", str(tree)]) == 0
    out = capsys.readouterr().out
    assert "bound 24" in out


def test_psens_check(capsys):
    assert main(["psens-check", "fixture:and_tree(4)"]) == 0
    out = capsys.readouterr().out
    assert "psens=4" in out and "holds=yes" in out


def test_extract_dt(or2_path, capsys):
    assert main(["extract-dt", or2_path]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("size=1 EC=1 patterns=2")
    assert out[1] == "(x0 (x1 0 1) (x1 1 1))"


def test_kw_run(or2_path, capsys):
    assert main(["kw-run", or2_path, "--alice", "11", "--bob", "00"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == (
        "result=x0 aliceBits=1 bobBits=1 syncBits=0 repairs=0 "
        "minimized=10 bound=1"
    )


def test_kw_run_rejects_nonmonotone(tmp_path, capsys):
    p = tmp_path / "not.cir"
    p.write_text("INPUT x0\ng = NOT x0\nOUTPUT g\n")
    assert main(["kw-run", str(p), "--alice", "0", "--bob", "1"]) == 2


def test_fml_verbs(tmp_path, capsys):
    p = tmp_path / "f.cir"
    p.write_text(
        "INPUT x0\nINPUT x1\nn = NOT x0\ng = OR n x1\nOUTPUT g\n"
    )
    assert main(["fml-decompose", str(p)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("T=3 budget=3 L=2 L'=3 skeleton=3")
    assert "block g0..g2" in out

    assert main(["fml-stats", str(p)]) == 0
    assert capsys.readouterr().out.startswith("L=2 size=2 depth=2 negs=1 EC=2")


def test_fml_stats_readonce(tmp_path, capsys):
    p = tmp_path / "ro.cir"
    p.write_text("INPUT x0\nINPUT x1\nn = NOT x1\ng = AND x0 n\nOUTPUT g\n")
    assert main(["fml-stats", str(p), "--readonce"]) == 0
    assert "readonce EC=1 equal=yes" in capsys.readouterr().out


def test_fml_nonskew(tmp_path, capsys):
    p = tmp_path / "ns.cir"
    p.write_text(
        "INPUT x0\nINPUT x1\nINPUT x2\nINPUT x3\n"
        "a = OR x0 x1\nb = OR x2 x3\ng = AND a b\nOUTPUT g\n"
    )
    assert main(["fml-nonskew", str(p), "--samples", "200", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "t=2" in out and "floor=0.5" in out and "exactMean=2.0625" in out


def test_gen_pipes_back_into_energy(capsys, monkeypatch):
    assert main(
        ["gen", "--seed", "11", "--num-vars", "4", "--size", "8",
         "--neg-density", "0.25", "--shape", "CIRCUIT"]
    ) == 0
    netlist = capsys.readouterr().out
    assert "# gen seed=11" in netlist

    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(netlist))
    assert main(["energy", "-"]) == 0
    assert capsys.readouterr().out.startswith("EC=")


def test_gen_dtree_emits_a_tree(capsys):
    assert main(
        ["gen", "--seed", "2", "--num-vars", "4", "--size", "3", "--shape", "DTREE"]
    ) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("# gen seed=2")
    assert out[1].startswith("(") or out[1] in ("0", "1")


def test_gen_nonskew_shape(capsys):
    assert main(
        ["gen", "--seed", "4", "--num-vars", "3", "--size", "6", "--shape", "NONSKEW"]
    ) == 0
    assert "shape=NONSKEW" in capsys.readouterr().out


def test_verify_all_single_check_smoke(capsys):
    rc = main(["verify-all", "--level", "smoke", "--only", "cascade-taps"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "[PASS] cascade-taps:" in out
    assert "all checks passed" in out


def test_verify_all_rejects_unknown_check_id(capsys):
    rc = main(["verify-all", "--level", "smoke", "--only", "cascade-tapz"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "unknown check id" in err
    assert "cascade-tapz" in err


def test_verify_all_json(capsys):
    rc = main(
        ["verify-all", "--level", "smoke", "--only", "readonce-exact", "--json"]
    )
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["suite"] == "smoke"
    assert data["checks"][0]["check_id"] == "readonce-exact"
    assert data["checks"][0]["violations"] == 0
