import threading

import pytest

import cgraph


def test_point_operations():
    g = cgraph.Graph(1)
    t = g.register_thread()
    assert g.add_vertex(1, t) == "VERTEX_ADDED"
    assert g.add_vertex(1, t) == "VERTEX_ALREADY_PRESENT"
    assert g.add_vertex(2, t) == "VERTEX_ADDED"
    assert g.add_edge(1, 2, t) == "EDGE_ADDED"
    assert g.contains_edge(1, 2, t) in ("EDGE_PRESENT", "EDGE_FOUND")
    assert g.remove_vertex(2, t) == "VERTEX_REMOVED"
    assert g.contains_edge(1, 2, t) == "VERTEX_NOT_PRESENT"
    assert g.snapshot(t) == {1: []}


def test_reserved_key_rejected():
    g = cgraph.Graph(1)
    t = g.register_thread()
    with pytest.raises(ValueError):
        g.add_vertex(-(2**63), t)


def test_concurrent_snapshots_match_final_state():
    g = cgraph.Graph(5, cgraph.SnapshotEngine.COOPERATIVE)
    loader = g.register_thread()
    for k in range(20):
        g.add_vertex(k, loader)
    for k in range(20):
        g.add_edge(k, (k + 1) % 20, loader)
    results = []

    def worker():
        t = g.register_thread()
        results.append(g.snapshot(t))

    threads = [threading.Thread(target=worker) for _ in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    expected = {k: [(k + 1) % 20] for k in range(20)}
    assert results == [expected] * 4


def test_analytics_on_a_path():
    path = {0: [1], 1: [2], 2: []}
    assert cgraph.diameter(path) == 2
    scores, argmax = cgraph.betweenness(path)
    assert scores == {0: 0.0, 1: 1.0, 2: 0.0}
    assert argmax == 1
    assert cgraph.betweenness({}) == ({}, None)


def test_edge_list_and_history(tmp_path):
    data = tmp_path / "g.txt"
    data.write_text("# c\n0\t1\n0\t1\n1\t2\n")
    vertices, edges = cgraph.load_edge_list(data)
    assert vertices == [0, 1, 2]
    assert edges == [(0, 1), (1, 2)]
    (tmp_path / "bad.txt").write_text("0 x\n")
    with pytest.raises(cgraph.DatasetError):
        cgraph.load_edge_list(tmp_path / "bad.txt")

    history = tmp_path / "h.txt"
    history.write_text(
        "0 0 invoke addVertex 5\n1 1 invoke addVertex 5\n"
        "2 0 resp addVertex VERTEX_ADDED\n3 1 resp addVertex VERTEX_ADDED\n"
    )
    result = cgraph.check_history(history)
    assert result["verdict"] != "linearizable"
    assert "addVertex" in result["counterexample"]


def test_short_benchmark():
    out = cgraph.run_benchmark(threads=2, duration=0.1, vertices=50, edges=100,
                               profile="update-heavy", analytics="diameter")
    assert out["analytics"] == "diameter"
    assert out["total_ops"] == sum(c["count"] for c in out["classes"].values())
    with pytest.raises(ValueError):
        cgraph.run_benchmark(profile="nope")
