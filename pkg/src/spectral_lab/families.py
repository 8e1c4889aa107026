"""Graph families used throughout the verification suite.

Constructions that come with 1-based vertex labels (the cycle-plus-chord graph
and the extremal-eigenvector family) are stored with label ``i`` at index
``i - 1``; :func:`label` and :func:`index` convert.

Families are also addressable by a canonical string, ``name(p1,p2,...)`` with
an optional ``:seed`` suffix for random families, e.g. ``section4(3)`` or
``random_regular(100,3):42``. Parameters may be ranges ``a..b`` (inclusive),
which :func:`parse_family_specs` expands, and ``regular_minus_edge`` takes a
nested spec as its first parameter: ``regular_minus_edge(petersen(),0)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Union

from .errors import BadParams, GenerationFailed, NoConnectedDeletion, NotRegular
from .graph import Graph, build_graph, degree_profile, delete_edge, is_connected
from .rng import SplitMix64

RANDOM_FAMILIES = frozenset({"random_regular", "random_connected"})


def label(index: int) -> int:
    return index + 1


def index(label_: int) -> int:
    """1-based construction label to 0-based vertex index."""
    if label_ < 1:
        raise ValueError(f"labels start at 1, got {label_}")
    return label_ - 1


# --- deterministic families --------------------------------------------------


def cycle(n: int) -> Graph:
    if n < 3:
        raise BadParams("cycle needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise BadParams("path needs n >= 1")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    """Star on ``n`` vertices: centre 0 joined to ``1..n-1``."""
    if n < 2:
        raise BadParams("star needs n >= 2")
    return build_graph(n, [(0, i) for i in range(1, n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise BadParams("complete needs n >= 1")
    return build_graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """Parts ``0..a-1`` and ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise BadParams("complete_bipartite needs a, b >= 1")
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def circulant(n: int, offsets) -> Graph:
    offsets = sorted(set(offsets))
    if n < 3 or not offsets or any(not 1 <= s <= n // 2 for s in offsets):
        raise BadParams("circulant needs n >= 3 and offsets in [1, n/2]")
    edges = set()
    for i in range(n):
        for s in offsets:
            j = (i + s) % n
            edges.add((min(i, j), max(i, j)))
    return build_graph(n, sorted(edges))


def petersen() -> Graph:
    """Outer 5-cycle ``0..4``, spokes ``i -- i+5``, inner pentagram on ``5..9``."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def cycle_plus_chord(n: int) -> Graph:
    """Cycle ``C_n`` plus the chord ``{0, 2}`` joining two vertices at distance 2."""
    if n < 5:
        raise BadParams("cycle_plus_chord needs n >= 5")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)] + [(0, 2)])


def section4_edges_labeled(k: int) -> list[tuple[int, int]]:
    """Edge list of the extremal-eigenvector family in 1-based labels."""
    if k < 2:
        raise BadParams("section4 family needs k >= 2")
    n = 2 * k + 1
    edges = [(i, i + 1) for i in range(1, n)] + [(n, 1)]
    edges += [(k, k + 2), (k + 1, k + 3)]
    edges += [(i, 2 * k + 3 - i) for i in range(2, k)]
    return edges


def section4_family(k: int) -> Graph:
    """Irregular graph on ``2k+1`` vertices with max degree 3.

    The cycle ``1..2k+1`` plus chords ``{k,k+2}``, ``{k+1,k+3}`` and
    ``{i, 2k+3-i}`` for ``2 <= i <= k-1``. Label 1 (index 0) is the only
    degree-2 vertex; the principal eigenvector is smallest there and largest
    at labels ``k+1`` and ``k+2``, both at distance ``k`` (the diameter).
    """
    edges = section4_edges_labeled(k)
    return build_graph(2 * k + 1, [(index(u), index(v)) for u, v in edges])


# --- random families -------------------------------------------------------


def _is_simple(pairs) -> bool:
    seen = set()
    for u, v in pairs:
        if u == v:
            return False
        key = (u, v) if u < v else (v, u)
        if key in seen:
            return False
        seen.add(key)
    return True


def _repair_by_switches(pairs: list[list[int]], rng: SplitMix64, budget: int) -> bool:
    """Double-edge switches until the pairing is simple; degrees never change."""

    def key(p):
        return (p[0], p[1]) if p[0] < p[1] else (p[1], p[0])

    counts: dict[tuple[int, int], int] = {}
    for p in pairs:
        counts[key(p)] = counts.get(key(p), 0) + 1

    def bad(p):
        return p[0] == p[1] or counts[key(p)] > 1

    for _ in range(budget):
        bad_idx = [i for i, p in enumerate(pairs) if bad(p)]
        if not bad_idx:
            return True
        i = bad_idx[rng.below(len(bad_idx))]
        j = rng.below(len(pairs))
        if i == j:
            continue
        (a, b), (c, d) = pairs[i], pairs[j]
        if rng.below(2):
            c, d = d, c
        new1, new2 = [a, c], [b, d]
        if a == c or b == d:
            continue
        k1, k2 = key(new1), key(new2)
        if k1 == k2 or counts.get(k1, 0) or counts.get(k2, 0):
            continue
        for old in (pairs[i], pairs[j]):
            counts[key(old)] -= 1
            if not counts[key(old)]:
                del counts[key(old)]
        counts[k1] = 1
        counts[k2] = 1
        pairs[i], pairs[j] = new1, new2
    return not any(bad(p) for p in pairs)


def random_regular(n: int, k: int, seed: int, retries: int = 1000) -> Graph:
    """Simple ``k``-regular graph from the configuration model.

    Stub pairings with loops or repeated edges are rejected up to ``retries``
    times; the last pairing is then repaired with degree-preserving edge
    switches. Connectivity is not guaranteed.
    """
    if n < 1 or not 1 <= k < n or (n * k) % 2:
        raise BadParams("random_regular needs 1 <= k < n and n*k even")
    rng = SplitMix64(seed)
    stubs = [v for v in range(n) for _ in range(k)]
    pairs: list[list[int]] = []
    for _ in range(retries):
        rng.shuffle(stubs)
        pairs = [[stubs[i], stubs[i + 1]] for i in range(0, len(stubs), 2)]
        if _is_simple(pairs):
            return build_graph(n, pairs)
    if _repair_by_switches(pairs, rng, budget=100 * n * k):
        return build_graph(n, pairs)
    raise GenerationFailed(f"could not build a simple {k}-regular graph on {n} vertices")


def random_connected(n: int, extra: int, seed: int) -> Graph:
    """Random spanning tree (random attachment) plus ``extra`` random new edges."""
    if n < 2 or extra < 0 or extra > n * (n - 1) // 2 - (n - 1):
        raise BadParams("random_connected needs n >= 2 and room for the extra edges")
    rng = SplitMix64(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.below(i)]
        edges.add((min(u, v), max(u, v)))
    while len(edges) < n - 1 + extra:
        u, v = rng.below(n), rng.below(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return build_graph(n, sorted(edges))


def regular_minus_edge(base: Union["FamilySpec", Graph], edge_index: int = 0, require_connected: bool = True) -> Graph:
    """Delete the ``edge_index``-th edge (lexicographic order) of a regular graph.

    With ``require_connected`` the following edges are tried in cyclic order
    until the deletion leaves a connected graph.
    """
    g = base if isinstance(base, Graph) else build(base)
    if not degree_profile(g).is_regular:
        raise NotRegular("regular_minus_edge needs a regular base graph")
    edges = list(g.edges())
    if not edges:
        raise NoConnectedDeletion("base graph has no edges")
    for step in range(len(edges)):
        u, v = edges[(edge_index + step) % len(edges)]
        h = delete_edge(g, u, v)
        if not require_connected or is_connected(h):
            return h
    raise NoConnectedDeletion("every single-edge deletion disconnects the graph")


# --- specs -----------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple = ()
    seed: int | None = None

    def __str__(self):
        text = f"{self.name}({','.join(str(p) for p in self.params)})"
        return text if self.seed is None else f"{text}:{self.seed}"


_BUILDERS = {
    "cycle": (cycle, 1),
    "path": (path, 1),
    "star": (star, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "petersen": (petersen, 0),
    "cycle_plus_chord": (cycle_plus_chord, 1),
    "section4": (section4_family, 1),
}

FAMILY_NAMES = tuple(sorted(set(_BUILDERS) | {"circulant", "regular_minus_edge"} | RANDOM_FAMILIES))


def build(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_family_spec(spec)
    name, params = spec.name, spec.params
    if name in _BUILDERS:
        fn, arity = _BUILDERS[name]
        if len(params) != arity or spec.seed is not None:
            raise BadParams(f"{name} takes {arity} integer parameter(s) and no seed")
        return fn(*params)
    if name == "circulant":
        if len(params) < 2:
            raise BadParams("circulant(n, s1, s2, ...) needs at least one offset")
        return circulant(params[0], params[1:])
    if name in RANDOM_FAMILIES:
        if spec.seed is None:
            raise BadParams(f"{name} needs a seed, e.g. {name}(...):42")
        if len(params) != 2:
            raise BadParams(f"{name} takes two integer parameters")
        fn = random_regular if name == "random_regular" else random_connected
        return fn(params[0], params[1], spec.seed)
    if name == "regular_minus_edge":
        if not params or not isinstance(params[0], FamilySpec) or len(params) > 2:
            raise BadParams("regular_minus_edge(<spec>[,edge_index])")
        return regular_minus_edge(params[0], params[1] if len(params) == 2 else 0)
    raise BadParams(f"unknown family {name!r}")


_INT = re.compile(r"\d+")
_RANGE = re.compile(r"(\d+)\.\.(\d+)")
_NAME = re.compile(r"[a-z_][a-z0-9_]*")


class _Parser:
    def __init__(self, text: str):
        self.text = text.replace(" ", "")
        self.pos = 0

    def fail(self, msg):
        raise BadParams(f"bad family spec {self.text!r} at {self.pos}: {msg}")

    def expect(self, ch):
        if not self.text.startswith(ch, self.pos):
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def spec(self) -> list[FamilySpec]:
        m = _NAME.match(self.text, self.pos)
        if not m:
            self.fail("expected family name")
        name = m.group()
        self.pos = m.end()
        self.expect("(")
        choices: list[list] = []
        while not self.text.startswith(")", self.pos):
            choices.append(self.param())
            if self.text.startswith(",", self.pos):
                self.pos += 1
            elif not self.text.startswith(")", self.pos):
                self.fail("expected ',' or ')'")
        self.expect(")")
        seeds: list = [None]
        if self.text.startswith(":", self.pos):
            self.pos += 1
            seeds = self.param()
        return [FamilySpec(name, tuple(p), s) for p in itertools.product(*choices) for s in seeds]

    def param(self) -> list:
        m = _RANGE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            lo, hi = int(m.group(1)), int(m.group(2))
            if hi < lo:
                self.fail("empty range")
            return list(range(lo, hi + 1))
        m = _INT.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return [int(m.group())]
        return self.spec()


def parse_family_specs(text: str) -> list[FamilySpec]:
    """Parse one spec string, expanding every ``a..b`` range (row-major)."""
    p = _Parser(text)
    specs = p.spec()
    if p.pos != len(p.text):
        p.fail("trailing characters")
    for s in specs:
        if s.name not in FAMILY_NAMES:
            raise BadParams(f"unknown family {s.name!r}")
    return specs


def parse_family_spec(text: str) -> FamilySpec:
    specs = parse_family_specs(text)
    if len(specs) != 1:
        raise BadParams(f"{text!r} expands to {len(specs)} specs; expected one")
    return specs[0]
