import json
import random

from ftrees.cli import (
    format_element,
    format_projection,
    main,
    parse_element,
    parse_projection,
)
from ftrees.generators import generator_ball
from ftrees.omega import ONE, orbit


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_element_round_trip_text_and_json():
    rng = random.Random(0)
    ball = generator_ball(4)
    for _ in range(1000):
        f = rng.choice(ball)
        assert parse_element(format_element(f)).terms == f.terms
        assert parse_element(format_element(f, as_json=True), as_json=True).terms == f.terms


def test_projection_round_trip():
    rng = random.Random(1)
    pool = sorted(orbit(ONE, 6), key=lambda p: p.support)
    for _ in range(1000):
        p = rng.choice(pool)
        assert parse_projection(format_projection(p)) == p
        assert parse_projection(format_projection(p, as_json=True), as_json=True) == p
    assert parse_projection("0").is_zero()
    assert parse_projection("1").is_one()


def test_mul_worked_product(capsys):
    code, out, _ = run_cli(
        capsys,
        "mul",
        "11:1 + 12:21 + 2:22",
        "111:11 + 112:121 + 12:122 + 211:21 + 212:221 + 22:222",
    )
    assert code == 0
    assert out.strip() == "1111:11 + 1112:121 + 112:122 + 121:21 + 122:221 + 2:222"


def test_act_and_trace(capsys):
    code, out, _ = run_cli(capsys, "act", "11:1 + 12:21 + 2:22", "1")
    assert (code, out.strip()) == (0, "P[12]")
    code, out, _ = run_cli(capsys, "trace", "P[111]+P[2]")
    assert (code, out.strip()) == (0, "5/8")


def test_nf_unnf_round_trip(capsys):
    code, out, _ = run_cli(capsys, "unnf", "x1 x0")
    assert code == 0
    code, out2, _ = run_cli(capsys, "nf", out.strip())
    assert (code, out2.strip()) == (0, "x0 x2")


def test_member_exit_codes(capsys):
    t_gen = "22:1 + 1:21 + 21:22"
    assert run_cli(capsys, "member", "--set", "f", t_gen)[0] == 1
    assert run_cli(capsys, "member", "--set", "t", t_gen)[0] == 0
    assert run_cli(capsys, "member", "--set", "v", t_gen)[0] == 0
    assert run_cli(capsys, "member", "--set", "h2", "e:e")[0] == 0
    assert run_cli(capsys, "member", "--set", "f", "not an element")[0] == 2


def test_omega2_exit_codes(capsys):
    assert run_cli(capsys, "omega2", "1")[:2] == (0, "k=2 m=0\n")
    assert run_cli(capsys, "omega2", "P[1]")[0] == 1
    assert run_cli(capsys, "omega2", "P[13]")[0] == 2


def test_coset_and_realize(capsys):
    code, out, _ = run_cli(capsys, "coset", "11:1 + 12:21 + 2:22")
    assert (code, out.strip()) == (0, "P[12]")
    code, out, _ = run_cli(capsys, "realize", "P[12]")
    assert code == 0
    code2, out2, _ = run_cli(capsys, "act", out.strip(), "1")
    assert (code2, out2.strip()) == (0, "P[12]")


def test_orbit_file_determinism(tmp_path, capsys):
    f1, f2 = tmp_path / "a.ldjson", tmp_path / "b.ldjson"
    assert run_cli(capsys, "orbit", "1", "--depth", "4", "--out", str(f1))[0] == 0
    assert run_cli(capsys, "orbit", "1", "--depth", "4", "--threads", "4", "--out", str(f2))[0] == 0
    assert f1.read_bytes() == f2.read_bytes()
    lines = f1.read_text().splitlines()
    header = json.loads(lines[0])
    assert header["generators"] == ["x0", "x0^-1", "x1", "x1^-1"]
    records = [json.loads(line) for line in lines[1:]]
    assert header["count"] == len(records)
    assert records == sorted(records, key=lambda r: (r["depth"], r["p"]))
    assert all(r["depth"] <= 4 for r in records)


def test_orbit_depth_cap(capsys, monkeypatch):
    monkeypatch.setenv("FTREES_MAX_DEPTH", "3")
    assert run_cli(capsys, "orbit", "1", "--depth", "4")[0] == 2
    assert run_cli(capsys, "orbit", "1", "--depth", "3")[0] == 0
    monkeypatch.setenv("FTREES_MAX_DEPTH", "not-a-number")
    assert run_cli(capsys, "orbit", "1", "--depth", "2")[0] == 2


def test_boundary_subcommands(capsys):
    pair = json.dumps(
        {
            "depth": 2,
            "left": ["e", "1", "2", "11", "12", "21", "22"],
            "right": ["e", "1", "2", "11", "12", "21", "22"],
        }
    )
    code, out, _ = run_cli(capsys, "realizable", pair)
    assert (code, out.strip()) == (0, "yes")
    code, out, _ = run_cli(capsys, "witness", pair)
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"q", "q'"}
    bad = json.dumps({"depth": 1, "left": ["e", "1"], "right": ["e", "2"]})
    assert run_cli(capsys, "realizable", bad)[0] == 1
    code, out, _ = run_cli(
        capsys, "boundary-act", "11:1 + 12:21 + 2:22", json.dumps(
            {"depth": 3, "left": ["e", "1", "2", "11", "12", "21", "22",
                                  "111", "112", "121", "122", "211", "212", "221", "222"],
             "right": []}
        )
    )
    assert code == 0
    assert json.loads(out) == {
        "depth": 2,
        "left": ["e", "1", "12"],
        "right": ["e", "1", "2", "11", "21", "22"],
    }


def test_separate_certificate(capsys):
    code, out, _ = run_cli(capsys, "separate", "e:e", "11:1 + 12:21 + 2:22")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"p", "images", "elements"}
    assert len(data["images"]) == 2


def test_dot_outputs(capsys):
    crossing = "21:1 + 22:21 + 1:22"
    code, out, _ = run_cli(capsys, "dot", "--kind", "bipartite", crossing)
    assert code == 0
    assert out.startswith("digraph bipartite")
    # crossing arrows: b0 (beta=1) points at the alpha ranked above others
    assert "b0 -> a1;" in out and "b2 -> a0;" in out
    x0 = "11:1 + 12:21 + 2:22"
    code, out0, _ = run_cli(capsys, "dot", "--kind", "bipartite", x0)
    assert "b0 -> a0;" in out0 and "b1 -> a1;" in out0 and "b2 -> a2;" in out0
    code, tree, _ = run_cli(capsys, "dot", "--kind", "treepair", "e:e")
    assert code == 0
    assert tree.count("cluster_") == 2
    # stability across input orderings and across the two syntaxes
    code, again, _ = run_cli(capsys, "dot", "--kind", "bipartite", "1:22 + 22:21 + 21:1")
    assert again == out
    as_json = json.dumps({"terms": [["21", "1"], ["22", "21"], ["1", "22"]]})
    code, from_json, _ = run_cli(capsys, "--json", "dot", "--kind", "bipartite", as_json)
    assert from_json == out


def test_error_diagnostics(capsys):
    code, out, err = run_cli(capsys, "mul", "11:1", "e:e")
    assert code == 2
    assert err.startswith("error:")
    assert run_cli(capsys, "nf", "22:1 + 1:21 + 21:22")[0] == 2
    assert run_cli(capsys, "witness", json.dumps(
        {"depth": 1, "left": ["e", "1", "2"], "right": []}
    ))[0] == 2
