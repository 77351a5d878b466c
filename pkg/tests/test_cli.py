import numpy as np
import pytest

from coremaint import Graph, load_edge_list, peel, save_edge_list, write_core_file
from coremaint.cli import main


@pytest.fixture
def small_graph(tmp_path):
    rng = np.random.default_rng(5)
    mask = np.triu(rng.random((60, 60)) < 0.12, 1)
    g = Graph.from_edges(np.argwhere(mask), num_vertices=60,
                         dense_labels=True)
    path = tmp_path / "g.txt"
    save_edge_list(g, path)
    return g, path


def test_insert_writes_cores_and_log(small_graph, tmp_path, capsys):
    g, path = small_graph
    out = tmp_path / "cores.txt"
    logf = tmp_path / "rounds.txt"
    rc = main(["insert", "--graph", str(path), "--batch-size", "30",
               "--seed", "3", "--threads", "2",
               "--out-cores", str(out), "--log", str(logf)])
    assert rc == 0
    assert "rounds=" in capsys.readouterr().out
    assert out.exists()
    text = logf.read_text()
    assert text.startswith("round 1 levels ")
    assert "applied" in text


def test_insert_then_verify_round_trip(small_graph, tmp_path):
    g, path = small_graph
    batch = tmp_path / "batch.txt"
    rng = np.random.default_rng(8)
    lines = []
    while len(lines) < 20:
        u, v = int(rng.integers(60)), int(rng.integers(60))
        if u != v and not g.has_edge(u, v):
            lines.append(f"{u} {v}")
    batch.write_text("\n".join(dict.fromkeys(lines)) + "\n")
    cores_out = tmp_path / "cores.txt"
    graph_out = tmp_path / "g_after.txt"
    rc = main(["insert", "--graph", str(path), "--batch", str(batch),
               "--out-cores", str(cores_out)])
    assert rc == 0
    # rebuild the post-insertion graph and verify the cores file against it
    g2 = load_edge_list(path)
    for line in batch.read_text().splitlines():
        u, v = map(int, line.split())
        g2.add_edge(u, v)
    save_edge_list(g2, graph_out)
    assert main(["verify", "--graph", str(graph_out),
                 "--cores", str(cores_out)]) == 0


def test_verify_detects_mismatch(small_graph, tmp_path, capsys):
    g, path = small_graph
    cores = peel(g)
    cores.values[7] += 1
    bad = tmp_path / "bad.txt"
    write_core_file(bad, g, cores)
    rc = main(["verify", "--graph", str(path), "--cores", str(bad)])
    assert rc == 3
    assert "mismatch at vertex 7" in capsys.readouterr().out


def test_delete_baseline_matches_engine(small_graph, tmp_path):
    g, path = small_graph
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["delete", "--graph", str(path), "--batch-size", "25",
                 "--seed", "4", "--out-cores", str(a)]) == 0
    assert main(["delete", "--graph", str(path), "--batch-size", "25",
                 "--seed", "4", "--baseline", "--out-cores", str(b)]) == 0
    assert a.read_text() == b.read_text()


def test_gen_writes_edge_list(tmp_path):
    out = tmp_path / "gen.txt"
    rc = main(["gen", "--gen", "ba", "--n", "50", "--deg", "3",
               "--seed", "2", "--out", str(out)])
    assert rc == 0
    g = load_edge_list(out)
    assert g.vertex_count == 50
    assert (peel(g).values == 3).all()


def test_bench_emits_rows(small_graph, capsys):
    _, path = small_graph
    rc = main(["bench", "--graph", str(path), "--batch-size", "20",
               "--mode", "insert", "--threads", "1,2", "--seed", "6",
               "--baseline", "--per-round"])
    assert rc == 0
    out = capsys.readouterr().out
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    assert lines[0].startswith("dataset\tmode\tbackend")
    rows = [ln.split("\t") for ln in lines[1:]]
    assert len(rows) == 3  # baseline + two thread counts
    header = lines[0].split("\t")
    per_edge = header.index("per_edge_ms")
    total = header.index("total_s")
    batch = header.index("batch")
    for row in rows:  # fields are printed rounded to 4 decimals
        recomputed = float(row[total]) / int(row[batch]) * 1000
        assert abs(float(row[per_edge]) - recomputed) < 0.01
    assert "# round 1:" in out


def test_missing_input_is_runtime_error(tmp_path, capsys):
    rc = main(["insert", "--graph", str(tmp_path / "nope.txt"),
               "--batch-size", "5"])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_bad_flags_exit_usage():
    with pytest.raises(SystemExit) as err:
        main(["insert", "--frobnicate"])
    assert err.value.code == 2


def test_unknown_backend_rejected(small_graph, capsys):
    _, path = small_graph
    rc = main(["insert", "--graph", str(path), "--batch-size", "5",
               "--backend", "fortran"])
    assert rc == 1
    assert "unknown kernel backend" in capsys.readouterr().err
