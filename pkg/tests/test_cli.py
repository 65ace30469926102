import json
import random
from fractions import Fraction

from hypothesis import given, strategies as st
from xml.etree import ElementTree

from tropnet import serialize as ser
from tropnet.canonical import alpha
from tropnet.cli import main
from tropnet.fixtures import intro_concatenation, intro_net, intro_weights
from tropnet.multipath import Tableau, max_kpath_weight
from tropnet.network import build_network, gamma0, simplify
from tropnet.randnet import random_network, random_weighting, subdivide
from tropnet.render import render_dot, render_svg
from tropnet.tropical import NEG_INF


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


@given(st.integers(0, 2**32 - 1))
def test_network_and_weighting_round_trip(seed):
    rng = random.Random(seed)
    net = random_network(rng, rank=rng.randint(1, 4))
    w = random_weighting(net, rng, neg_inf=0.2)
    net, w = subdivide(net, w, rng)
    net, w = simplify(net, w)
    back = ser.network_from_json(json.loads(json.dumps(ser.network_to_json(net))))
    assert back == net
    assert ser.weighting_from_json(json.loads(json.dumps(ser.weighting_to_json(w)))) == w


@given(st.integers(0, 2**32 - 1))
def test_tableau_round_trip(seed):
    rng = random.Random(seed)
    n = rng.randint(0, 5)
    t = Tableau.from_function(n, lambda k, i: rng.choice(
        [NEG_INF, Fraction(rng.randint(-99, 99), rng.randint(1, 9))]))
    assert ser.tableau_from_json(json.loads(json.dumps(ser.tableau_to_json(t)))) == t


def test_concatenated_round_trip():
    gd = intro_concatenation()
    back = ser.network_from_json(ser.network_to_json(gd))
    assert back == gd and back.middle == gd.middle


def test_multipath_round_trip():
    net = intro_net()
    _, mp = max_kpath_weight(net, intro_weights(), 2)
    assert ser.multipath_from_json(net, ser.multipath_to_json(mp)) == mp


def test_network_file_format(tmp_path):
    path = tmp_path / "n.json"
    path.write_text(json.dumps({
        "strip": {"a": "0", "b": "9"},
        "vertices": [{"id": 0, "x": "0", "y": "1"}, {"id": 5, "x": "9", "y": "1"}],
        "edges": [{"id": 0, "tail": 0, "head": 5}],
    }))
    net = ser.network_from_json(ser.load(path))
    assert net.rank == 1 and net.b == 9


def test_pipeline(tmp_path, capsys):
    g, w, t = tmp_path / "g.json", tmp_path / "w.json", tmp_path / "t.json"
    assert run(capsys, "gen", "gamma0", "--n", 4, "-o", g)[0] == 0
    assert run(capsys, "weights", "random", "--net", g, "--seed", 7, "-o", w)[0] == 0
    code, rep = run_json(capsys, "eval", "tableau", "--net", g, "--weights", w)
    assert code == 0 and rep["cone"] == {"name": "C2", "member": True, "violations": []}
    assert run(capsys, "eval", "tableau", "--net", g, "--weights", w, "-o", t)[0] == 0
    assert run(capsys, "check", "c2", "--tableau", t)[0] == 0
    assert run(capsys, "check", "gz", "--tableau", t)[0] == 0
    wi = tmp_path / "wi.json"
    assert run(capsys, "invert", "gz", "--tableau", t, "-o", wi)[0] == 0
    code, rep = run_json(capsys, "eval", "tableau", "--net", g, "--weights", wi)
    assert ser.tableau_from_json(rep["tableau"]) == ser.tableau_from_json(ser.load(t))


def test_eval_l_on_intro(tmp_path, capsys):
    net, w = tmp_path / "n.json", tmp_path / "w.json"
    ser.dump(ser.network_to_json(intro_net()), net)
    ser.dump(ser.weighting_to_json(intro_weights()), w)
    code, rep = run_json(capsys, "eval", "l", "--net", net, "--weights", w)
    assert code == 0 and [r["l"] for r in rep["l"]] == ["0", "4", "5", "3"]
    assert rep["l"][1]["witness"] == [[2, 3, 8, 6]]
    code, rep2 = run_json(capsys, "eval", "l", "--net", net, "--weights", w, "--method", "enumerate")
    assert rep2["l"] == rep["l"]


def test_exit_code_matrix(tmp_path, capsys):
    good = tmp_path / "good.json"
    bad = tmp_path / "bad.json"
    ser.dump({"n": 2, "rows": [["0"], ["0", "1"], ["0", "2", "3"]]}, good)
    ser.dump({"n": 2, "rows": [["0"], ["0", "5"], ["0", "1", "1"]]}, bad)
    assert run(capsys, "check", "c2", "--tableau", good)[0] == 0
    assert run(capsys, "check", "c3", "--tableau", good)[0] in (0, 1)
    assert run(capsys, "check", "c2", "--tableau", bad)[0] == 1
    assert run(capsys, "check", "gz", "--tableau", bad)[0] == 1
    assert run(capsys, "check", "horn", "--lambda", "1,0", "--mu", "1,0", "--nu", "3,-1")[0] == 1
    assert run(capsys, "check", "horn", "--lambda", "1,0", "--mu", "1,0", "--nu", "2,0")[0] == 0
    assert run(capsys, "check", "horn", "--lambda", "1,0", "--mu", "1,0", "--nu", "2,1")[0] == 1
    assert run(capsys, "check", "c2", "--tableau", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "check", "c2")[0] == 2


def test_bad_network_file_exits_2(tmp_path, capsys):
    path = tmp_path / "x.json"
    ser.dump({"strip": {"a": "0", "b": "1"},
              "vertices": [{"id": 0, "x": "0", "y": "1"}, {"id": 1, "x": "0", "y": "2"}],
              "edges": [{"id": 0, "tail": 0, "head": 1}]}, path)
    assert run(capsys, "eval", "l", "--net", path)[0] == 2


def test_render_deterministic(tmp_path, capsys):
    g, svg1, svg2 = tmp_path / "g.json", tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "gen", "gamma0", "--n", 4, "-o", g)
    assert run(capsys, "render", "--net", g, "-o", svg1)[0] == 0
    assert run(capsys, "render", "--net", g, "-o", svg2)[0] == 0
    assert svg1.read_bytes() == svg2.read_bytes()
    ElementTree.fromstring(svg1.read_bytes())
    dot = tmp_path / "g.dot"
    assert run(capsys, "render", "--net", g, "-o", dot)[0] == 0
    assert dot.read_text().startswith("digraph")


def test_render_highlight_and_empty():
    net, w = intro_net(), intro_weights()
    _, mp = max_kpath_weight(net, w, 1)
    svg = render_svg(net, w, mp)
    root = ElementTree.fromstring(svg)
    red = [el.get("id") for el in root.iter() if el.get("stroke") == "#d00"]
    assert sorted(red) == sorted(f"e{e}" for e in mp.edges)
    ElementTree.fromstring(render_svg(build_network(0, 1, [], [])))
    assert "color=\"red\"" in render_dot(gamma0(6), None, alpha(6, 4, 2))


def test_spectra_and_decompose(tmp_path, capsys):
    code, rep = run_json(capsys, "spectra", "sample", "--n", 3, "--seed", 5)
    assert code == 0 and rep["verdict"] == "feasible"
    m = tmp_path / "m.json"
    ser.dump(rep["matrices"]["A"], m)
    assert run(capsys, "spectra", "tableau", "--matrix", m)[0] == 0


def test_gen_kinds(capsys):
    for kind in ("gamma0", "delta0", "horn", "intro", "intro-concat", "random"):
        code, rep = run_json(capsys, "gen", kind, "--n", 3, "--seed", 1)
        assert code == 0
        ser.network_from_json(rep["result"])
