"""Moebius graphs: rotation systems with a twist bit per edge.

A graph on half-edges 0..2e-1 is given by a cyclic rotation at each vertex,
a fixed-point-free pairing of half-edges into edges, and one boolean per
edge marking it as twisted.  Every such graph is the 1-skeleton of a cell
decomposition of a unique compact surface, orientable or not; this module
computes that surface's topology.

Face-tracing convention: a walk exits a half-edge, crosses the edge
(toggling a local-orientation flag iff the edge is twisted) and continues
to the rotation successor of the arrival half-edge when the flag is
positive, to the predecessor otherwise.  Any consistent convention is
equivalent; this one is pinned by the calibration examples in the tests
(planar loop -> 2 faces, twisted loop -> 1 face).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .errors import StructuralError

HalfEdge = int
State = Tuple[int, int]  # (half-edge about to be exited, orientation flag 0/1)


class MoebiusGraph:
    __slots__ = ("rotations", "edges", "twists",
                 "_partner", "_succ", "_pred", "_vertex_of", "_edge_of")

    def __init__(self,
                 rotations: Sequence[Sequence[int]],
                 edges: Sequence[Sequence[int]],
                 twists: Sequence[bool],
                 check: bool = True):
        self.rotations: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in rotations)
        self.edges: Tuple[Tuple[int, int], ...] = tuple(
            (min(a, b), max(a, b)) for a, b in edges)
        self.twists: Tuple[bool, ...] = tuple(bool(t) for t in twists)

        n = sum(len(r) for r in self.rotations)
        partner = [-1] * n
        edge_of = [-1] * n
        for idx, (a, b) in enumerate(self.edges):
            for h in (a, b):
                if not 0 <= h < n or partner[h] != -1:
                    raise StructuralError("edge pairing is not a fixed-point-free involution")
            if a == b:
                raise StructuralError("edge pairing has a fixed point")
            partner[a], partner[b] = b, a
            edge_of[a] = edge_of[b] = idx

        succ = [-1] * n
        pred = [-1] * n
        vertex_of = [-1] * n
        for v, rot in enumerate(self.rotations):
            for i, h in enumerate(rot):
                if not 0 <= h < n or vertex_of[h] != -1:
                    raise StructuralError("half-edge %d not in exactly one rotation" % h)
                vertex_of[h] = v
                succ[h] = rot[(i + 1) % len(rot)]
                pred[h] = rot[i - 1]

        if check:
            if len(self.twists) != len(self.edges):
                raise StructuralError("one twist bit per edge required")
            if any(p < 0 for p in partner):
                raise StructuralError("edge pairing does not cover all half-edges")
            if any(v < 0 for v in vertex_of):
                raise StructuralError("rotations do not cover all half-edges")

        self._partner = tuple(partner)
        self._succ = tuple(succ)
        self._pred = tuple(pred)
        self._vertex_of = tuple(vertex_of)
        self._edge_of = tuple(edge_of)

    # -- basic accessors -----------------------------------------------------

    @property
    def n_half_edges(self) -> int:
        return len(self._partner)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_vertices(self) -> int:
        return len(self.rotations)

    def partner(self, h: int) -> int:
        return self._partner[h]

    def vertex_of(self, h: int) -> int:
        return self._vertex_of[h]

    def edge_of(self, h: int) -> int:
        return self._edge_of[h]

    def valences(self) -> Tuple[int, ...]:
        return tuple(len(r) for r in self.rotations)

    def degree_profile(self) -> Dict[int, int]:
        prof: Dict[int, int] = {}
        for r in self.rotations:
            prof[len(r)] = prof.get(len(r), 0) + 1
        return prof

    def is_loop(self, edge_index: int) -> bool:
        a, b = self.edges[edge_index]
        return self._vertex_of[a] == self._vertex_of[b]

    def is_connected(self) -> bool:
        if self.n_vertices <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for h in self.rotations[v]:
                w = self._vertex_of[self._partner[h]]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices

    def __eq__(self, other) -> bool:
        if not isinstance(other, MoebiusGraph):
            return NotImplemented
        return (self.rotations == other.rotations
                and self.edges == other.edges
                and self.twists == other.twists)

    def __hash__(self):
        return hash((self.rotations, self.edges, self.twists))

    def __repr__(self) -> str:
        return "MoebiusGraph(%r, %r, %r)" % (self.rotations, self.edges, self.twists)


@dataclass(frozen=True)
class TopologyProfile:
    v: int
    e: int
    f: int
    v_profile: Tuple[Tuple[int, int], ...]  # sorted (valence, count) pairs
    f_profile: Tuple[Tuple[int, int], ...]  # sorted (face degree, count) pairs
    chi: int
    natural: int      # +1 orientable, -1 not
    sharp: int        # (-1)**chi
    sigma: int        # 0 / 1 / 2
    genus: int

    def check(self) -> None:
        assert self.chi == self.v - self.e + self.f
        assert self.f == sum(c for _, c in self.f_profile)
        assert 2 * self.e == sum(j * c for j, c in self.f_profile)
        assert self.sharp == (-1 if self.chi % 2 else 1)
        assert self.sigma % 2 == self.chi % 2
        if self.natural == 1:
            assert self.sigma == 0 and self.chi % 2 == 0
            assert self.genus == 1 - self.chi // 2
        else:
            assert self.sigma == (1 if self.chi % 2 else 2)
            assert self.genus == 1 - self.chi


def _face_orbits(graph: MoebiusGraph) -> List[List[State]]:
    """Orbits of the face-walk map on (half-edge, flag) states.

    Orbits come in mirror pairs; a geometric face is one such pair.
    """
    succ, pred = graph._succ, graph._pred
    partner, edge_of = graph._partner, graph._edge_of
    twists = graph.twists
    n = graph.n_half_edges

    seen = set()
    orbits: List[List[State]] = []
    for h0 in range(n):
        for d0 in (0, 1):
            if (h0, d0) in seen:
                continue
            orbit: List[State] = []
            h, d = h0, d0
            while (h, d) not in seen:
                seen.add((h, d))
                orbit.append((h, d))
                h2 = partner[h]
                d2 = d ^ twists[edge_of[h]]
                h = succ[h2] if d2 == 0 else pred[h2]
                d = d2
            orbits.append(orbit)
    return orbits


def _mirror_state(graph: MoebiusGraph, state: State) -> State:
    h, d = state
    return graph._partner[h], 1 - (d ^ graph.twists[graph._edge_of[h]])


def trace_faces(graph: MoebiusGraph) -> List[List[State]]:
    """Boundary walks of the cell decomposition, one walk per face.

    Each walk is the cyclic list of (half-edge, flag) edge-side states it
    traverses; its length is the number of edge-sides on the face, so the
    face is a len(walk)-gon.
    """
    orbits = _face_orbits(graph)
    index_of: Dict[State, int] = {}
    for i, orb in enumerate(orbits):
        for s in orb:
            index_of[s] = i

    faces: List[List[State]] = []
    used = set()
    for i, orb in enumerate(orbits):
        if i in used:
            continue
        j = index_of[_mirror_state(graph, orb[0])]
        if j == i:
            raise StructuralError("face walk is its own mirror; invalid twist data")
        used.add(i)
        used.add(j)
        faces.append(orb)
    # an isolated valence-0 vertex caps off a sphere: one 0-gon face
    faces.extend([] for rot in graph.rotations if not rot)
    return faces


def orientability(graph: MoebiusGraph) -> int:
    """+1 iff the twist bits form a coboundary over the vertex graph.

    Breadth-first parity labelling: crossing a twisted edge flips the local
    orientation sign; a contradiction (in particular any twisted loop)
    certifies non-orientability.
    """
    n_v = graph.n_vertices
    sign = [-1] * n_v  # -1 = unassigned; store 0/1 parity
    for root in range(n_v):
        if sign[root] != -1:
            continue
        sign[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for h in graph.rotations[v]:
                e = graph._edge_of[h]
                w = graph._vertex_of[graph._partner[h]]
                want = sign[v] ^ graph.twists[e]
                if sign[w] == -1:
                    sign[w] = want
                    stack.append(w)
                elif sign[w] != want:
                    return -1
    return 1


def topology(graph: MoebiusGraph) -> TopologyProfile:
    faces = trace_faces(graph)
    f_prof: Dict[int, int] = {}
    for walk in faces:
        f_prof[len(walk)] = f_prof.get(len(walk), 0) + 1

    v = graph.n_vertices
    e = graph.n_edges
    f = len(faces)
    chi = v - e + f
    natural = orientability(graph)
    sharp = -1 if chi % 2 else 1
    sigma = (1 + sharp) // 2 - natural
    genus = 1 - chi // 2 if natural == 1 else 1 - chi

    prof = TopologyProfile(
        v=v, e=e, f=f,
        v_profile=tuple(sorted(graph.degree_profile().items())),
        f_profile=tuple(sorted(f_prof.items())),
        chi=chi, natural=natural, sharp=sharp, sigma=sigma, genus=genus)
    prof.check()
    return prof


def flip_vertex(graph: MoebiusGraph, vertex: int) -> MoebiusGraph:
    """Reverse one rotation, toggling each incident edge end's twist.

    A loop at the vertex is toggled twice, hence unchanged.  Flips are
    isomorphisms: the surface is the same.
    """
    if not 0 <= vertex < graph.n_vertices:
        raise StructuralError("no such vertex")
    rotations = list(graph.rotations)
    rotations[vertex] = tuple(reversed(rotations[vertex]))
    toggles = [0] * graph.n_edges
    for h in graph.rotations[vertex]:
        toggles[graph._edge_of[h]] ^= 1
    twists = tuple(t ^ bool(x) for t, x in zip(graph.twists, toggles))
    return MoebiusGraph(rotations, graph.edges, twists)


def contract_edge(graph: MoebiusGraph, edge_index: int) -> MoebiusGraph:
    """Contract an untwisted non-loop edge, merging its endpoints.

    The two rotations are spliced at the removed half-edges; v and e drop
    by one while faces and orientability (hence chi) are preserved.
    """
    if not 0 <= edge_index < graph.n_edges:
        raise StructuralError("no such edge")
    if graph.twists[edge_index]:
        raise StructuralError("cannot contract a twisted edge (flip a vertex first)")
    a, b = graph.edges[edge_index]
    va, vb = graph._vertex_of[a], graph._vertex_of[b]
    if va == vb:
        raise StructuralError("cannot contract a loop")

    rot_a = list(graph.rotations[va])
    rot_b = list(graph.rotations[vb])
    ia, ib = rot_a.index(a), rot_b.index(b)
    merged = rot_a[ia + 1:] + rot_a[:ia] + rot_b[ib + 1:] + rot_b[:ib]

    rotations = [merged if v == va else list(r)
                 for v, r in enumerate(graph.rotations) if v != vb]

    # drop the two contracted half-edges and compact indices
    relabel = {}
    for h in range(graph.n_half_edges):
        if h != a and h != b:
            relabel[h] = len(relabel)
    rotations = [tuple(relabel[h] for h in rot) for rot in rotations]
    edges = []
    twists = []
    for idx, (x, y) in enumerate(graph.edges):
        if idx == edge_index:
            continue
        edges.append((relabel[x], relabel[y]))
        twists.append(graph.twists[idx])
    return MoebiusGraph(rotations, edges, twists)


# -- JSON wire format --------------------------------------------------------

def graph_to_json(graph: MoebiusGraph) -> str:
    return json.dumps({
        "rotations": [list(r) for r in graph.rotations],
        "edges": [list(e) for e in graph.edges],
        "twists": [bool(t) for t in graph.twists],
    }, sort_keys=True)


def graph_from_json(text: str) -> MoebiusGraph:
    try:
        data = json.loads(text)
        return MoebiusGraph(data["rotations"], data["edges"], data["twists"])
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise StructuralError("invalid graph JSON: %s" % exc) from exc
