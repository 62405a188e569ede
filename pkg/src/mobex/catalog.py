"""Enumeration of Moebius graphs up to isomorphism.

Isomorphism means: relabelling of same-valence vertices, cyclic rotation at
each vertex, and vertex flips (rotation reversal with the induced twist
toggles).  Ribbon isomorphism drops the flips.

Canonical form and automorphism order both come from one primitive: a
breadth-first traversal started at a flag (half-edge, local direction).
The traversal relabels half-edges and emits an integer stream that
reconstructs the graph; twists are recorded relative to the traversal's
spanning tree, so flip-equivalent twist data collapses automatically.  The
minimum stream over all starting flags is the canonical code, and the
number of flags attaining it is the automorphism order, because a
structure map is fixed by the image of a single flag on a connected graph.
Restricting the competition to positive-direction flags on an untwisted
graph yields the ribbon (orientation-preserving) variants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import BudgetError, UsageError
from .graphs import MoebiusGraph, TopologyProfile, topology
from .npoly import NPoly

HALF_EDGE_BUDGET = 16

ProfileKey = Tuple[int, ...]  # valence multiset, sorted descending


# -- degree profiles ----------------------------------------------------------

def profile_key(profile) -> ProfileKey:
    """Normalize {valence: count} dicts or valence sequences to a sorted tuple."""
    if isinstance(profile, dict):
        valences: List[int] = []
        for j, count in profile.items():
            if j < 1 or count < 0:
                raise UsageError("valences must be >= 1 with non-negative counts")
            valences.extend([j] * count)
    else:
        valences = list(profile)
    if not valences:
        raise UsageError("a degree profile needs at least one vertex")
    if any(j < 1 for j in valences):
        raise UsageError("valences must be >= 1")
    if sum(valences) % 2:
        raise UsageError("total valence must be even (half-edges pair up)")
    return tuple(sorted(valences, reverse=True))


def profile_dict(key: ProfileKey) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for j in key:
        out[j] = out.get(j, 0) + 1
    return out


@dataclass(frozen=True)
class GraphCatalogEntry:
    graph: MoebiusGraph
    code: bytes
    aut_moebius: int
    aut_ribbon: Optional[int]  # None for non-orientable classes
    topology: TopologyProfile


# -- canonical traversal -------------------------------------------------------

def _graph_arrays(graph: MoebiusGraph):
    return (tuple(len(r) for r in graph.rotations), graph._succ, graph._pred,
            graph._vertex_of, graph._partner, graph._edge_of, graph.twists)


def _traverse(h0, d0, valences, succ, pred, vertex_of, partner, edge_of, twists, best):
    """Emit the label stream for the flag (h0, d0).

    Returns (stream, tied) where tied means equal to ``best``; returns
    (None, False) as soon as the stream exceeds ``best``.
    """
    n = len(partner)
    label = [-1] * n
    order = [0] * n
    dirv = [0] * len(valences)
    out = []
    better = best is None

    def push(tok, k):
        nonlocal better
        if not better:
            ref = best[k]
            if tok > ref:
                return False
            if tok < ref:
                better = True
        out.append(tok)
        return True

    def discover(h, d, base):
        v = vertex_of[h]
        dirv[v] = d
        cur = h
        step = succ if d == 0 else pred
        for i in range(valences[v]):
            label[cur] = base + i
            order[base + i] = cur
            cur = step[cur]

    v0 = vertex_of[h0]
    if not push(-valences[v0], 0):
        return None, False
    discover(h0, d0, 0)
    next_free = valences[v0]

    for i in range(n):
        h = order[i]
        p = partner[h]
        if label[p] == -1:
            d2 = dirv[vertex_of[h]] ^ twists[edge_of[h]]
            if not push(-valences[vertex_of[p]], i + 1):
                return None, False
            discover(p, d2, next_free)
            next_free += valences[vertex_of[p]]
        else:
            eff = twists[edge_of[h]] ^ dirv[vertex_of[h]] ^ dirv[vertex_of[p]]
            if not push((label[p] << 1) | eff, i + 1):
                return None, False
    return out, not better


def _canon(valences, succ, pred, vertex_of, partner, edge_of, twists):
    """Canonical stream plus flag counts (all flags / positive flags)."""
    n = len(partner)
    maxval = max(valences)
    best = None
    count_all = 0
    count_plus = 0
    for h0 in range(n):
        if valences[vertex_of[h0]] != maxval:
            continue
        for d0 in (0, 1):
            stream, tied = _traverse(h0, d0, valences, succ, pred, vertex_of,
                                     partner, edge_of, twists, best)
            if stream is None:
                continue
            if tied:
                count_all += 1
                count_plus += (d0 == 0)
            else:
                best = stream
                count_all = 1
                count_plus = 1 if d0 == 0 else 0
    return tuple(best), count_all, count_plus


def _graph_from_stream(stream: Tuple[int, ...]) -> MoebiusGraph:
    """Rebuild the canonical representative graph encoded by a stream."""
    root_val = -stream[0]
    blocks = [root_val]
    n = root_val
    # first pass: vertex blocks in discovery order
    for tok in stream[1:]:
        if tok < 0:
            blocks.append(-tok)
            n += -tok
    rotations = []
    base = 0
    for size in blocks:
        rotations.append(tuple(range(base, base + size)))
        base += size

    edges: List[Tuple[int, int]] = []
    twists: List[bool] = []
    seen = set()
    next_free = blocks[0]
    block_iter = iter(blocks[1:])
    i = 0
    for tok in stream[1:]:
        if tok < 0:
            size = next(block_iter)
            edges.append((i, next_free))
            twists.append(False)
            seen.add((i, next_free))
            next_free += size
        else:
            j, eff = tok >> 1, tok & 1
            lo, hi = min(i, j), max(i, j)
            if (lo, hi) not in seen:
                seen.add((lo, hi))
                edges.append((lo, hi))
                twists.append(bool(eff))
        i += 1
    return MoebiusGraph(rotations, edges, twists)


def _stream_to_bytes(stream: Tuple[int, ...]) -> bytes:
    return ",".join(str(t) for t in stream).encode()


def _component_split(graph: MoebiusGraph) -> List[MoebiusGraph]:
    if graph.is_connected():
        return [graph]
    comp = [-1] * graph.n_vertices
    n_comp = 0
    for root in range(graph.n_vertices):
        if comp[root] != -1:
            continue
        comp[root] = n_comp
        stack = [root]
        while stack:
            v = stack.pop()
            for h in graph.rotations[v]:
                w = graph.vertex_of(graph.partner(h))
                if comp[w] == -1:
                    comp[w] = n_comp
                    stack.append(w)
        n_comp += 1
    parts = []
    for c in range(n_comp):
        verts = [v for v in range(graph.n_vertices) if comp[v] == c]
        relabel = {}
        for v in verts:
            for h in graph.rotations[v]:
                relabel[h] = len(relabel)
        rotations = [tuple(relabel[h] for h in graph.rotations[v]) for v in verts]
        edges = []
        twists = []
        for idx, (a, b) in enumerate(graph.edges):
            if a in relabel:
                edges.append((relabel[a], relabel[b]))
                twists.append(graph.twists[idx])
        parts.append(MoebiusGraph(rotations, edges, twists))
    return parts


def canonical_code(graph: MoebiusGraph) -> bytes:
    """Equal codes iff isomorphic over relabelling, rotations and flips."""
    parts = _component_split(graph)
    codes = []
    for part in parts:
        if part.n_half_edges == 0:
            codes.append(b"v0")
            continue
        stream, _, _ = _canon(*_graph_arrays(part))
        codes.append(_stream_to_bytes(stream))
    return b"|".join(sorted(codes))


def normalize_twists(graph: MoebiusGraph) -> MoebiusGraph:
    """Flip vertices to zero out twists along a spanning forest.

    Orientable graphs come back twist-free; non-orientable ones keep the
    odd cycle parities on non-forest edges.
    """
    n_v = graph.n_vertices
    par = [-1] * n_v
    for root in range(n_v):
        if par[root] != -1:
            continue
        par[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for h in graph.rotations[v]:
                e = graph.edge_of(h)
                w = graph.vertex_of(graph.partner(h))
                if par[w] == -1:
                    par[w] = par[v] ^ graph.twists[e]
                    stack.append(w)
    rotations = [tuple(reversed(r)) if par[v] else tuple(r)
                 for v, r in enumerate(graph.rotations)]
    twists = []
    for idx, (a, b) in enumerate(graph.edges):
        u, w = graph.vertex_of(a), graph.vertex_of(b)
        twists.append(graph.twists[idx] ^ bool(par[u]) ^ bool(par[w]))
    return MoebiusGraph(rotations, graph.edges, twists)


def automorphism_count(graph: MoebiusGraph, mode: str = "moebius") -> int:
    """Order of the automorphism group; ribbon mode excludes flips."""
    if not graph.is_connected():
        raise UsageError("automorphism_count requires a connected graph")
    if graph.n_half_edges == 0:
        return 1
    if mode == "moebius":
        _, count, _ = _canon(*_graph_arrays(graph))
        return count
    if mode == "ribbon":
        from .graphs import orientability
        if orientability(graph) != 1:
            raise UsageError("ribbon automorphisms need an orientable graph")
        norm = normalize_twists(graph)
        assert not any(norm.twists)
        _, count_all, count_plus = _canon(*_graph_arrays(norm))
        return _ribbon_order(count_all, count_plus)
    raise UsageError("mode must be 'moebius' or 'ribbon'")


def _ribbon_order(count_all: int, count_plus: int) -> int:
    """Orientation-preserving order from the two flag counts.

    For an achiral class both flag signs hit the minimum (half each); for a
    chiral class only one sign does, and the full count already equals the
    ribbon order of either mirror image.
    """
    if 0 < count_plus < count_all:
        return count_plus
    return count_all


# -- exhaustive generation -----------------------------------------------------

def _layout(key: ProfileKey):
    """Fixed half-edge layout for a profile: consecutive blocks, one per vertex."""
    rotations = []
    base = 0
    for j in key:
        rotations.append(tuple(range(base, base + j)))
        base += j
    n = base
    succ = [0] * n
    pred = [0] * n
    vertex_of = [0] * n
    for v, rot in enumerate(rotations):
        for i, h in enumerate(rot):
            vertex_of[h] = v
            succ[h] = rot[(i + 1) % len(rot)]
            pred[h] = rot[i - 1]
    return rotations, tuple(succ), tuple(pred), tuple(vertex_of)


def _matchings(items: List[int]) -> Iterator[List[Tuple[int, int]]]:
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        b = items[i]
        rest = items[1:i] + items[i + 1:]
        for tail in _matchings(rest):
            yield [(a, b)] + tail


def _check_budget(key: ProfileKey, budget: int) -> None:
    if sum(key) > budget:
        raise BudgetError("profile %s needs %d half-edges, budget is %d"
                          % (profile_dict(key), sum(key), budget))


@lru_cache(maxsize=None)
def _connected_catalog(key: ProfileKey) -> Tuple[GraphCatalogEntry, ...]:
    valences = key
    n_vert = len(valences)
    rotations, succ, pred, vertex_of = _layout(key)
    n = sum(valences)

    classes: Dict[Tuple[int, ...], GraphCatalogEntry] = {}
    for pairs in _matchings(list(range(n))):
        partner = [0] * n
        edge_of = [0] * n
        for idx, (a, b) in enumerate(pairs):
            partner[a], partner[b] = b, a
            edge_of[a] = edge_of[b] = idx

        # connectivity over vertices, collecting a spanning tree of edges
        seen = [False] * n_vert
        seen[0] = True
        stack = [0]
        tree = [False] * len(pairs)
        reached = 1
        while stack:
            v = stack.pop()
            for h in rotations[v]:
                w = vertex_of[partner[h]]
                if not seen[w]:
                    seen[w] = True
                    tree[edge_of[h]] = True
                    reached += 1
                    stack.append(w)
        if reached != n_vert:
            continue
        cotree = [idx for idx in range(len(pairs)) if not tree[idx]]

        # Twists run over the cotree only: a tree-supported toggle pattern
        # is realized by flips, whose rotation reversals land (after
        # relabelling) on another matching of the same sweep.  The class
        # union over all matchings is what matters; it is checked against
        # the full 2**e twist sweep and against the labelled pairing-sum
        # identity in the tests.
        twists = [False] * len(pairs)
        for bits in range(1 << len(cotree)):
            for pos, idx in enumerate(cotree):
                twists[idx] = bool((bits >> pos) & 1)
            stream, count_all, count_plus = _canon(
                valences, succ, pred, vertex_of, partner, edge_of, twists)
            if stream in classes:
                continue
            rep = _graph_from_stream(stream)
            classes[stream] = GraphCatalogEntry(
                graph=rep,
                code=_stream_to_bytes(stream),
                aut_moebius=count_all,
                aut_ribbon=_ribbon_order(count_all, count_plus) if bits == 0 else None,
                topology=topology(rep))
        for idx in cotree:
            twists[idx] = False

    return tuple(sorted(classes.values(), key=lambda entry: entry.code))


def _subprofiles(key: ProfileKey) -> Iterator[Tuple[ProfileKey, ProfileKey]]:
    """Split a valence multiset into (part containing the first element, rest)."""
    rest = key[1:]
    m = len(rest)
    for mask in range(1 << m):
        part = [key[0]]
        other = []
        for i in range(m):
            (part if (mask >> i) & 1 else other).append(rest[i])
        if sum(part) % 2 == 0:
            yield tuple(part), tuple(other)


@lru_cache(maxsize=None)
def _full_catalog(key: ProfileKey) -> Tuple[GraphCatalogEntry, ...]:
    """Connected and disconnected classes, composed from connected catalogs."""
    out: Dict[bytes, GraphCatalogEntry] = {}

    def unions(remaining: ProfileKey) -> Iterator[List[GraphCatalogEntry]]:
        if not remaining:
            yield []
            return
        for part, rest in _subprofiles(remaining):
            for entry in _connected_catalog(part):
                for tail in unions(rest):
                    yield [entry] + tail

    seen_multisets = set()
    for combo in unions(key):
        fingerprint = tuple(sorted(c.code for c in combo))
        if fingerprint in seen_multisets:
            continue
        seen_multisets.add(fingerprint)
        if len(combo) == 1:
            entry = combo[0]
            out[entry.code] = entry
            continue
        aut = 1
        mult: Dict[bytes, int] = {}
        for entry in combo:
            aut *= entry.aut_moebius
            mult[entry.code] = mult.get(entry.code, 0) + 1
        for m in mult.values():
            for i in range(2, m + 1):
                aut *= i
        ribbon = None
        if all(c.aut_ribbon is not None for c in combo):
            # convention: value of the all-equal-orientation representative
            ribbon = 1
            for entry in combo:
                ribbon *= entry.aut_ribbon
            for m in mult.values():
                for i in range(2, m + 1):
                    ribbon *= i
        graph = _disjoint_union([c.graph for c in combo])
        code = canonical_code(graph)
        out[code] = GraphCatalogEntry(
            graph=graph, code=code, aut_moebius=aut,
            aut_ribbon=ribbon, topology=topology(graph))
    return tuple(out[c] for c in sorted(out))


def _disjoint_union(parts: Sequence[MoebiusGraph]) -> MoebiusGraph:
    rotations = []
    edges = []
    twists = []
    base = 0
    for g in parts:
        rotations.extend(tuple(h + base for h in rot) for rot in g.rotations)
        edges.extend((a + base, b + base) for a, b in g.edges)
        twists.extend(g.twists)
        base += g.n_half_edges
    return MoebiusGraph(rotations, edges, twists)


def enumerate_graphs(profile, connected_only: bool = True,
                     half_edge_budget: int = HALF_EDGE_BUDGET
                     ) -> List[GraphCatalogEntry]:
    """One catalog entry per isomorphism class with the given valence profile."""
    key = profile_key(profile)
    _check_budget(key, half_edge_budget)
    if connected_only:
        return list(_connected_catalog(key))
    return list(_full_catalog(key))


# -- ribbon-only enumeration (independent of the Moebius catalog) --------------

@lru_cache(maxsize=None)
def _ribbon_catalog(key: ProfileKey) -> Tuple[Tuple[bytes, int, TopologyProfile], ...]:
    """Connected ribbon classes: untwisted matchings modulo rotations only."""
    valences = key
    n_vert = len(valences)
    rotations, succ, pred, vertex_of = _layout(key)
    n = sum(valences)

    classes: Dict[Tuple[int, ...], Tuple[bytes, int, TopologyProfile]] = {}
    for pairs in _matchings(list(range(n))):
        partner = [0] * n
        edge_of = [0] * n
        for idx, (a, b) in enumerate(pairs):
            partner[a], partner[b] = b, a
            edge_of[a] = edge_of[b] = idx
        seen = [False] * n_vert
        seen[0] = True
        stack = [0]
        reached = 1
        while stack:
            v = stack.pop()
            for h in rotations[v]:
                w = vertex_of[partner[h]]
                if not seen[w]:
                    seen[w] = True
                    reached += 1
                    stack.append(w)
        if reached != n_vert:
            continue
        twists = [False] * len(pairs)
        stream, aut = _ribbon_canon(valences, succ, pred, vertex_of,
                                    partner, edge_of, twists)
        if stream not in classes:
            rep = _graph_from_stream(stream)
            classes[stream] = (_stream_to_bytes(stream), aut, topology(rep))
    return tuple(classes[s] for s in sorted(classes))


def _ribbon_canon(valences, succ, pred, vertex_of, partner, edge_of, twists):
    n = len(partner)
    maxval = max(valences)
    best = None
    count = 0
    for h0 in range(n):
        if valences[vertex_of[h0]] != maxval:
            continue
        stream, tied = _traverse(h0, 0, valences, succ, pred, vertex_of,
                                 partner, edge_of, twists, best)
        if stream is None:
            continue
        if tied:
            count += 1
        else:
            best = stream
            count = 1
    return tuple(best), count


def ribbon_classes(profile, half_edge_budget: int = HALF_EDGE_BUDGET):
    """Connected ribbon classes as (code, aut_ribbon, topology) triples."""
    key = profile_key(profile)
    _check_budget(key, half_edge_budget)
    return list(_ribbon_catalog(key))


# -- labelled pairing sums ------------------------------------------------------

def weight_nf(graph: MoebiusGraph) -> NPoly:
    from .graphs import trace_faces
    return NPoly.N(len(trace_faces(graph)))


def labeled_pairing_sum(profile, weight_rule=weight_nf, mode: str = "moebius",
                        half_edge_budget: int = HALF_EDGE_BUDGET) -> NPoly:
    """Sum over all labelled gluings, divided by the layout symmetry order.

    Moebius mode runs over matchings times twist assignments with symmetry
    order prod_j v_j! (2j)**v_j; ribbon mode keeps only untwisted matchings
    with the flip-free order prod_j v_j! j**v_j.  With the weight N**f both
    reproduce sum(N**f / |Aut|) over their class sets exactly
    (orbit-stabilizer), which is the self-check the catalog leans on.
    """
    if mode not in ("moebius", "ribbon"):
        raise UsageError("mode must be 'moebius' or 'ribbon'")
    key = profile_key(profile)
    _check_budget(key, half_edge_budget)
    rotations, _, _, _ = _layout(key)
    n = sum(key)

    denom = Fraction(1)
    for j, count in profile_dict(key).items():
        for i in range(2, count + 1):
            denom *= i
        denom *= (Fraction(2 * j) if mode == "moebius" else Fraction(j)) ** count

    total = NPoly.zero()
    for pairs in _matchings(list(range(n))):
        e = len(pairs)
        twist_range = range(1 << e) if mode == "moebius" else range(1)
        for bits in twist_range:
            twists = [bool((bits >> i) & 1) for i in range(e)]
            graph = MoebiusGraph(rotations, pairs, twists, check=False)
            w = weight_rule(graph)
            if not isinstance(w, NPoly):
                w = NPoly.const(w)
            total = total + w
    return total * (Fraction(1) / denom)
