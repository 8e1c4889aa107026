import itertools
import logging
import math

import pytest

from spectral_lab import families as F
from spectral_lab.errors import BadParams, NoConnectedDeletion, NotRegular
from spectral_lab.families import FamilySpec, build, parse_family_spec, parse_family_specs
from spectral_lab.graph import bfs_distances, build_graph, degree_profile, distance_summary, is_connected
from spectral_lab.spectral import principal_pair

log = logging.getLogger(__name__)


def _girth(g):
    best = math.inf
    for s in range(g.n):
        dist, parent, frontier = {s: 0}, {s: -1}, [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.adjacency[u]:
                    if w not in dist:
                        dist[w], parent[w] = dist[u] + 1, u
                        nxt.append(w)
                    elif parent[u] != w:
                        best = min(best, dist[u] + dist[w] + 1)
            frontier = nxt
    return best


def test_small_standard_families():
    c5 = F.cycle(5)
    assert degree_profile(c5).is_regular and distance_summary(c5).diameter == 2
    k33 = F.complete_bipartite(3, 3)
    assert degree_profile(k33).degrees == (3,) * 6
    assert principal_pair(k33).lambda1_lo == pytest.approx(3.0, abs=1e-12)
    assert F.star(5).adjacency[0] == (1, 2, 3, 4)
    assert F.complete(5).m == 10


def test_petersen_structure():
    g = F.petersen()
    assert (g.n, g.m) == (10, 15)
    assert degree_profile(g).degrees == (3,) * 10
    assert _girth(g) == 5
    assert _girth(F.cycle(7)) == 7 and _girth(F.complete(4)) == 3


def test_circulant():
    assert F.circulant(9, (1,)) == F.cycle(9)
    g = F.circulant(10, (1, 5))
    assert degree_profile(g).degrees == (3,) * 10
    for bad in ((), (0,), (6,)):
        with pytest.raises(BadParams):
            F.circulant(10, bad)


def test_bad_params():
    for fn, args in ((F.cycle, (2,)), (F.cycle_plus_chord, (4,)), (F.section4_family, (1,))):
        with pytest.raises(BadParams):
            fn(*args)


def test_cycle_plus_chord_five():
    g = F.cycle_plus_chord(5)
    assert degree_profile(g).degrees == (3, 2, 3, 2, 2)
    assert g.m == 6


def test_cycle_plus_chord_differences_shrink():
    lams = [principal_pair(F.cycle_plus_chord(n)).lambda1_lo for n in range(20, 41)]
    diffs = [abs(b - a) for a, b in zip(lams, lams[1:])]
    # once the differences hit the enclosure width they stop carrying information
    informative = [d for d in diffs if d > 1e-10]
    assert len(informative) >= 5
    assert all(b < a for a, b in zip(informative, informative[1:]))


def test_section4_labels_k2():
    assert F.section4_edges_labeled(2) == [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (2, 4), (3, 5)]
    g = F.section4_family(2)
    assert degree_profile(g).degrees == (2, 3, 3, 3, 3)


def test_section4_labels_k3():
    edges = F.section4_edges_labeled(3)
    assert {(3, 5), (4, 6), (2, 7)} <= set(edges)
    g = F.section4_family(3)
    assert (g.n, g.m) == (7, 10)
    dist = bfs_distances(g, F.index(1))
    assert dist[F.index(4)] == dist[F.index(5)] == 3 == distance_summary(g).diameter


@pytest.mark.parametrize("k", [2, 3, 4, 5, 8, 13])
def test_section4_structure(k):
    g = F.section4_family(k)
    degrees = degree_profile(g).degrees
    assert degrees[F.index(1)] == 2 and sorted(degrees)[1:] == [3] * (2 * k)
    assert distance_summary(g).diameter == k
    x = principal_pair(g).eigvec
    assert x[F.index(1)] == pytest.approx(x.min(), abs=1e-12)
    assert abs(x[F.index(k + 1)] - x.max()) < 1e-9 and abs(x[F.index(k + 2)] - x.max()) < 1e-9


def test_section4_entries_above_inverse_sqrt7():
    g = F.section4_family(3)
    x = principal_pair(g).eigvec
    dist = bfs_distances(g, F.index(1))
    big = [v for v in range(g.n) if x[v] >= 1 / math.sqrt(7)]
    assert any(dist[v] < 3 for v in big)


def test_label_index_roundtrip():
    assert F.index(1) == 0 and F.label(0) == 1
    with pytest.raises(ValueError):
        F.index(0)


# --- random families -------------------------------------------------------------


@pytest.mark.parametrize("seed", range(10))
def test_random_regular_is_simple_and_regular(seed):
    g = F.random_regular(10, 3, seed)
    assert degree_profile(g).degrees == (3,) * 10
    assert g.m == 15


def test_random_regular_deterministic():
    assert F.random_regular(50, 4, 99) == F.random_regular(50, 4, 99)
    assert F.random_regular(50, 4, 99) != F.random_regular(50, 4, 100)


def test_random_regular_dense_uses_repair():
    # at k close to n rejection almost never succeeds; switches keep the degrees exact
    g = F.random_regular(30, 20, 5, retries=3)
    assert degree_profile(g).degrees == (20,) * 30


def test_random_regular_rejects():
    with pytest.raises(BadParams):
        F.random_regular(5, 3, 1)
    with pytest.raises(BadParams):
        F.random_regular(4, 4, 1)


def test_random_regular_connectivity_rate():
    connected = sum(is_connected(F.random_regular(100, 3, s)) for s in range(200))
    log.info("random_regular(100,3): %d/200 connected", connected)
    assert connected >= 180


def test_random_connected():
    g = F.random_connected(40, 25, 7)
    assert is_connected(g) and g.m == 39 + 25
    assert g == F.random_connected(40, 25, 7)
    with pytest.raises(BadParams):
        F.random_connected(4, 10, 1)


# --- regular_minus_edge --------------------------------------------------------


def test_regular_minus_edge_cycle():
    h = F.regular_minus_edge(F.cycle(6), 0)
    # edge 0 in lexicographic order is {0,1}; the remainder is a path from 1 round to 0
    assert h.m == 5 and distance_summary(h).diameter == 5
    assert sorted(degree_profile(h).degrees) == [1, 1, 2, 2, 2, 2]


def test_regular_minus_edge_petersen_all_connected():
    g = F.petersen()
    for i in range(15):
        h = F.regular_minus_edge(g, i, require_connected=False)
        assert is_connected(h) and h.m == 14


def test_regular_minus_edge_rejects():
    with pytest.raises(NotRegular):
        F.regular_minus_edge(F.star(4))
    with pytest.raises(NoConnectedDeletion):
        F.regular_minus_edge(build_graph(4, [(0, 1), (2, 3)]))


# --- spec strings ---------------------------------------------------------------


def test_parse_simple_specs():
    assert parse_family_spec("section4(3)") == FamilySpec("section4", (3,))
    spec = parse_family_spec("random_regular(100,3):42")
    assert spec == FamilySpec("random_regular", (100, 3), 42)
    assert str(spec) == "random_regular(100,3):42"
    assert parse_family_spec("petersen()") == FamilySpec("petersen")


def test_parse_ranges():
    specs = parse_family_specs("circulant(6..8,1,2)")
    assert [s.params for s in specs] == [(6, 1, 2), (7, 1, 2), (8, 1, 2)]
    assert len(parse_family_specs("section4(2..40)")) == 39
    seeds = parse_family_specs("random_regular(10,3):1..4")
    assert [s.seed for s in seeds] == [1, 2, 3, 4]


def test_parse_nested():
    spec = parse_family_spec("regular_minus_edge(petersen(),3)")
    assert spec.params == (FamilySpec("petersen"), 3)
    assert build(spec).m == 14
    assert build("regular_minus_edge(cycle(6))").m == 5


@pytest.mark.parametrize(
    "text",
    ["", "cycle", "cycle(5", "cycle(5))", "nope(3)", "cycle(5..3)", "cycle(a)", "cycle(5):", "cycle(3..5)x"],
)
def test_parse_rejects(text):
    with pytest.raises(BadParams):
        parse_family_specs(text)


def test_build_validates_arity_and_seed():
    for text in ("cycle(5,6)", "cycle(5):3", "random_regular(10,3)", "circulant(8)", "petersen(3)"):
        with pytest.raises(BadParams):
            build(text)


def test_every_name_builds():
    samples = {
        "cycle": "cycle(5)", "path": "path(4)", "star": "star(4)", "complete": "complete(4)",
        "complete_bipartite": "complete_bipartite(2,3)", "circulant": "circulant(8,1,3)",
        "petersen": "petersen()", "cycle_plus_chord": "cycle_plus_chord(6)", "section4": "section4(2)",
        "random_regular": "random_regular(8,3):1", "random_connected": "random_connected(8,2):1",
        "regular_minus_edge": "regular_minus_edge(complete(5),2)",
    }
    assert set(samples) == set(F.FAMILY_NAMES)
    for text in samples.values():
        assert build(text).n > 0


def test_ranges_expand_row_major():
    specs = parse_family_specs("complete_bipartite(1..2,3..4)")
    assert [s.params for s in specs] == list(itertools.product((1, 2), (3, 4)))
