import math

import networkx as nx
import pytest

import coarse_minor as cm


def constants_oracle(t, k):
    n = math.ceil((t - 1) ** 3 * (t - 2) / 2)
    ell = math.ceil(3 * k / 2) + 3 * k * n
    lp = n * (4 * ell + 5 * k) + 2 * ell + 3 * k
    r0 = 15 * t**12 * k + 18 * t**9 * k
    return {"N": n, "L": ell, "L_prime": lp, "R0": r0, "R": r0 + 2 * lp}


def as_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges())
    return h


@pytest.mark.parametrize("t", [3, 4, 5])
@pytest.mark.parametrize("k", [1, 2, 7])
def test_constants_match_oracle(t, k):
    got = cm.compute_constants(t, k)
    want = constants_oracle(t, k)
    assert {key: got[key] for key in want} == want
    assert got["mode"] == "paper" and got["t"] == t and got["K"] == k


def test_constants_literal():
    c = cm.compute_constants(3, 1)
    assert (c["N"], c["L"], c["L_prime"], c["R0"], c["R"]) == (4, 14, 275, 8325909, 8326459)
    s = cm.compute_constants(3, 1, profile="scaled")
    assert (s["N"], s["L"], s["L_prime"]) == (2, 8, 93)
    with pytest.raises(ValueError):
        cm.compute_constants(3, 1, profile="bogus")


def test_graph_and_distances_against_networkx():
    g = cm.generate("grid:6x5")
    h = as_nx(g)
    assert g.vertex_count == h.number_of_nodes()
    assert g.edge_count == h.number_of_edges()
    lengths = dict(nx.all_pairs_shortest_path_length(h))
    for u in range(0, g.vertex_count, 3):
        for v in range(g.vertex_count):
            assert cm.distance(g, u, v) == lengths[u][v]
    assert cm.set_distance(g, [0, 1], [29]) == min(lengths[0][29], lengths[1][29])


def test_disconnected_and_bad_graphs():
    g = cm.Graph(4, [(0, 1), (2, 3)])
    assert not cm.is_connected(g)
    assert cm.distance(g, 0, 3) is None
    with pytest.raises(ValueError):
        cm.Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        cm.Graph(3, [(0, 5)])


def test_minor_certificate_verifies():
    host = cm.generate("theta:3,4")
    yes = cm.has_minor(host, "k2t", 3)
    assert yes["answer"] == "yes"
    assert cm.verify_fat_model(host, yes["certificate"], 0)["valid"]
    assert cm.has_minor(cm.generate("cycle:12"), "k2t", 3)["answer"] == "no"


def test_dispersion_witness_is_fat():
    host = cm.generate("cycle:100")
    out = cm.theta_from_dispersion(host, list(range(0, 30)), list(range(39, 91)), 2, 10)
    assert out["kind"] == "witness" and out["rule"] == "dispersion"
    report = cm.verify_fat_model(host, out["witness"], 10)
    assert report["valid"], report["violations"][:3]
    with pytest.raises(cm.AuditError):
        cm.theta_from_dispersion(host, list(range(0, 30)), list(range(35, 91)), 2, 10)


def test_partition_round_trip():
    g = cm.generate("path:400")
    built = cm.build_partition(g, t=3, k=1)
    assert built["kind"] == "partition"
    part = built["partition"]
    report = cm.verify_partition(g, part)
    assert report["valid"], report["violations"][:3]
    qi = cm.quasi_isometry(g, part)
    assert qi["valid"]
    covered = sorted(v for bag in part["bags"].values() for v in bag["vertices"])
    assert covered == list(range(400))


def test_partition_rejects_foreign_document():
    g = cm.generate("path:10")
    with pytest.raises(ValueError):
        cm.verify_partition(g, {"schema": "something-else"})


def test_distortion_on_a_tree():
    g = cm.generate("path:60")
    report = cm.approximate_distortion(g, t=3, paranoid=True)
    assert report["K_min"] == 1
    assert report["attempts"][0]["outcome"] == "success"
