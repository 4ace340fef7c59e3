"""Walls of square complexes.

A wall is a connected hypergraph dual to the complex: its vertices are edges
of the complex and its edges ("segments" below) pair two edges through a
common face. The standard pairing joins opposite edges of every face; the
red (blue) pairing turns inside red (blue) distinguished faces, joining each
shared edge with the adjacent non-shared edge that is not opposite to it.

This module paints strongly adjacent pairs, traces hypergraphs of all three
kinds, tests embeddededness (tree-ness), extracts collared diagrams from
non-tree witnesses, computes complement side maps and the wall pseudometric,
checks the distance lower bound and geodesic windows, and searches for house
diagrams and two-collared configurations.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .complexes import SquareComplex, _idkey, shared_edge_pairs

KINDS = ("standard", "red", "blue")


class PaintingConflict(ValueError):
    pass


class TracingError(ValueError):
    pass


class ExtractionFailed(RuntimeError):
    pass


# -- strongly adjacent pairs and painting ---------------------------------------


def find_strongly_adjacent(X: SquareComplex):
    """(pairs sharing exactly two edges, pairs sharing three or more)."""
    return shared_edge_pairs(X)


def find_pair_neighbors(X: SquareComplex, pairs):
    """Third faces gluing to at least two edges of a pair's union boundary."""
    out = []
    for f1, f2, shared in pairs:
        rim = set()
        for fid in (f1, f2):
            rim.update(st.edge for st in X.faces[fid].walk)
        rim -= set(shared)
        for fid in sorted(X.faces, key=_idkey):
            if fid in (f1, f2):
                continue
            touching = {st.edge for st in X.faces[fid].walk} & rim
            if len(touching) >= 2:
                out.append(((f1, f2), fid, tuple(sorted(touching, key=_idkey))))
    return out


@dataclass(frozen=True)
class PaintedComplex:
    base: SquareComplex
    pairs: tuple  # (face, face, shared edge ids), face order as discovered
    colors: dict  # face id -> "red" | "blue" | "regular"

    def color(self, fid) -> str:
        return self.colors[fid]

    def partner(self, fid):
        for f1, f2, _shared in self.pairs:
            if fid == f1:
                return f2
            if fid == f2:
                return f1
        return None

    def shared_edges(self, fid):
        for f1, f2, shared in self.pairs:
            if fid in (f1, f2):
                return shared
        return ()


def paint(X: SquareComplex, pairs=None) -> PaintedComplex:
    """Color each strongly adjacent pair: the face with the smaller
    (label, start, orient) key red, its partner blue; faces of equal label
    inherit the color. Deterministic in face content, independent of ids.

    Without explicit pairs, a canonical maximal matching of the strongly
    adjacent pairs is used: candidates in face-key order, greedily, so a
    face adjacent to several others is paired with the first and the rest
    stay regular. Caller-supplied pairs must already form a matching.
    """
    if pairs is None:
        cand, _violations = find_strongly_adjacent(X)
        matched: set = set()
        chosen = []
        for f1, f2, shared in sorted(
                cand, key=lambda p: (_idkey(p[0]), _idkey(p[1]))):
            if f1 in matched or f2 in matched:
                continue
            matched.update((f1, f2))
            chosen.append((f1, f2, shared))
        pairs = chosen
    seen: Counter = Counter()
    for f1, f2, _shared in pairs:
        seen[f1] += 1
        seen[f2] += 1
    doubled = [f for f, c in seen.items() if c > 1]
    if doubled:
        raise PaintingConflict(f"face {doubled[0]!r} is in two pairs")
    label_color: dict = {}
    for f1, f2, _shared in sorted(pairs, key=lambda p: (_idkey(p[0]), _idkey(p[1]))):
        keys = []
        for fid in (f1, f2):
            face = X.faces[fid]
            if face.label is None:
                raise PaintingConflict(f"distinguished face {fid!r} has no label")
            keys.append((face.label, face.start, face.orient))
        if keys[0] == keys[1]:
            raise PaintingConflict(f"pair {f1!r},{f2!r} has equal painting keys")
        red, blue = (f1, f2) if keys[0] < keys[1] else (f2, f1)
        for fid, color in ((red, "red"), (blue, "blue")):
            lab = X.faces[fid].label
            if label_color.setdefault(lab, color) != color:
                raise PaintingConflict(
                    f"label {lab!r} forced both {label_color[lab]} and {color}")
    colors = {}
    for fid, face in X.faces.items():
        colors[fid] = label_color.get(face.label, "regular")
    return PaintedComplex(X, tuple(pairs), colors)


# -- hypergraph tracing -----------------------------------------------------------


@dataclass(frozen=True)
class Hypergraph:
    kind: str
    edges: tuple  # segments (edge, edge, face), each canonically sorted
    vertices: frozenset  # complex-edge ids the wall is dual to
    carrier: frozenset  # face ids the wall passes through


def _face_segments(painted: PaintedComplex, fid, kind):
    """The two segments a face contributes under the given tracing kind."""
    face = painted.base.faces[fid]
    walk_edges = [st.edge for st in face.walk]
    # The turn rule needs the pair's shared edges, so a face that only
    # inherited its color from a label has no turn: it traces standard and is
    # reported by classify_carrier as isolated.
    if (kind != "standard" and painted.colors.get(fid) == kind
            and painted.partner(fid) is not None):
        shared = set(painted.shared_edges(fid))
        dist_slots = [j for j, e in enumerate(walk_edges) if e in shared]
        if len(dist_slots) != 2:
            raise TracingError(
                f"face {fid!r}: expected 2 distinguished slots, got {dist_slots}")
        a, b = dist_slots
        if (a - b) % 4 == 2:
            raise TracingError(
                f"face {fid!r} shares opposite edges; turn pairing undefined")
        segs = []
        other = [j for j in range(4) if j not in dist_slots]
        for j in dist_slots:
            partners = [k for k in other if k != (j + 2) % 4]
            segs.append((walk_edges[j], walk_edges[partners[0]]))
        return segs
    return [(walk_edges[0], walk_edges[2]), (walk_edges[1], walk_edges[3])]


def trace_hypergraphs(painted: PaintedComplex, kind: str) -> list[Hypergraph]:
    """Connected dual hypergraphs of the given kind, deterministically
    ordered. Every face contributes exactly two segments."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    segments = []
    for fid in sorted(painted.base.faces, key=_idkey):
        for e1, e2 in _face_segments(painted, fid, kind):
            a, b = sorted((e1, e2), key=_idkey)
            segments.append((a, b, fid))
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _f in segments:
        parent[find(a)] = find(b)
    groups: dict = {}
    for seg in segments:
        groups.setdefault(find(seg[0]), []).append(seg)
    out = []
    for root in sorted(groups, key=_idkey):
        segs = sorted(groups[root], key=lambda s: (_idkey(s[0]), _idkey(s[1]), _idkey(s[2])))
        verts = frozenset(x for s in segs for x in s[:2])
        out.append(Hypergraph(kind, tuple(segs), verts,
                              frozenset(s[2] for s in segs)))
    return out


# -- embedded-tree check ------------------------------------------------------------


@dataclass(frozen=True)
class TreeWitness:
    kind: str  # "repeated-face" | "cycle"
    face: object
    segments: tuple


@dataclass(frozen=True)
class TreeReport:
    tree: bool
    witness: TreeWitness | None


def is_embedded_tree(H: Hypergraph) -> TreeReport:
    """Tree iff no face carries two segments and the segment graph is
    acyclic; the repeated-face condition is checked first."""
    by_face = Counter(s[2] for s in H.edges)
    repeated = sorted((f for f, c in by_face.items() if c > 1), key=_idkey)
    if repeated:
        f = repeated[0]
        segs = tuple(s for s in H.edges if s[2] == f)
        return TreeReport(False, TreeWitness("repeated-face", f, segs))
    adj: dict = {v: [] for v in H.vertices}
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for seg in H.edges:
        a, b, _f = seg
        if a == b:
            return TreeReport(False, TreeWitness("cycle", None, (seg,)))
        if find(a) == find(b):
            cycle = _segment_path(adj, a, b) + [seg]
            return TreeReport(False, TreeWitness("cycle", None, tuple(cycle)))
        parent[find(a)] = find(b)
        adj[a].append((b, seg))
        adj[b].append((a, seg))
    return TreeReport(True, None)


def _segment_path(adj, src, dst):
    """BFS path of segments between two wall vertices in the partial graph."""
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for y, seg in adj[x]:
            if y not in prev:
                prev[y] = (x, seg)
                queue.append(y)
    path = []
    x = dst
    while prev[x] is not None:
        x, seg = prev[x]
        path.append(seg)
    path.reverse()
    return path


# -- collared diagrams ----------------------------------------------------------------


@dataclass(frozen=True)
class CollaredDiagram:
    complex: SquareComplex  # carrier subcomplex, horn partners included
    lam: tuple  # the collaring wall segments in order
    corner: object  # repeated face, None when cornerless
    cornerless: bool
    horns: tuple  # (partner face added, carrier face it collars)
    k: int  # number of wall segments in lam
    k_prime: int  # number of horns
    l: int  # number of distinct complex edges lam crosses


def _subcomplex(X: SquareComplex, face_ids) -> SquareComplex:
    edges = {}
    verts = set()
    for fid in face_ids:
        for st in X.faces[fid].walk:
            edges[st.edge] = X.edges[st.edge]
    for u, v in edges.values():
        verts.update((u, v))
    return SquareComplex(verts, edges, {f: X.faces[f] for f in face_ids})


def extract_collared_diagram(H: Hypergraph, painted: PaintedComplex,
                             witness: TreeWitness | None = None) -> CollaredDiagram:
    """Build the diagram collared by the witness's wall segment: carrier
    faces along the segment, plus horn partners for distinguished carrier
    faces whose partner the segment leaves out."""
    if witness is None:
        rep = is_embedded_tree(H)
        if rep.tree:
            raise ValueError("hypergraph is an embedded tree; nothing to extract")
        witness = rep.witness
    X = painted.base
    if witness.kind == "cycle":
        lam = list(witness.segments)
        corner = None
        cornerless = True
        for i, seg in enumerate(lam):
            nxt = lam[(i + 1) % len(lam)]
            if not set(seg[:2]) & set(nxt[:2]):
                raise ExtractionFailed("cycle witness segments do not chain")
    else:
        first, last = witness.segments[0], witness.segments[-1]
        lam = _collaring_path(H, first, last, witness.face)
        if lam is None:
            raise ExtractionFailed("carrier does not close around the corner")
        corner = witness.face
        cornerless = False
    faces = []
    for seg in lam:
        if seg[2] not in faces:
            faces.append(seg[2])
    by_face = Counter(s[2] for s in lam)
    for f, c in by_face.items():
        if f != corner and c > 1:
            raise ExtractionFailed(f"segment passes non-corner face {f!r} twice")
    if len(lam) < 2:
        raise ExtractionFailed("collaring segment shorter than 2")
    carrier = set(faces)
    sub0 = _subcomplex(X, faces)
    deg0 = sub0.degrees()
    if corner is not None:
        if not any(deg0[st.edge] == 1 for st in X.faces[corner].walk):
            raise ExtractionFailed("corner face is not external in the carrier")
    for fid in carrier:
        if not any(deg0[st.edge] == 1 for st in sub0.faces[fid].walk):
            raise ExtractionFailed(f"carrier face {fid!r} is internal")
    horns = []
    for fid in sorted(carrier, key=_idkey):
        partner = painted.partner(fid)
        if partner is not None and partner not in carrier:
            horns.append((partner, fid))
    sub = _subcomplex(X, faces + [p for p, _b in horns])
    return CollaredDiagram(
        complex=sub,
        lam=tuple(lam),
        corner=corner,
        cornerless=cornerless,
        horns=tuple(horns),
        k=len(lam),
        k_prime=len(horns),
        l=len({x for s in lam for x in s[:2]}),
    )


def _collaring_path(H: Hypergraph, first, last, corner):
    """Depth-first search for a segment path from `first` to `last` passing
    no face twice (the corner appears only at the two ends)."""
    by_vertex: dict = {}
    for seg in H.edges:
        by_vertex.setdefault(seg[0], []).append(seg)
        by_vertex.setdefault(seg[1], []).append(seg)

    def extend(path, used_faces, frontier):
        if path[-1] == last:
            return path
        for seg in by_vertex.get(frontier, ()):
            if seg in path:
                continue
            f = seg[2]
            if f == corner and seg != last:
                continue
            if f != corner and f in used_faces:
                continue
            nxt = seg[1] if seg[0] == frontier else seg[0]
            got = extend(path + [seg], used_faces | {f}, nxt)
            if got is not None:
                return got
        return None

    for start_vertex in first[:2]:
        got = extend([first], set(), start_vertex)
        if got is not None:
            return got
    return None


# -- complements and the wall pseudometric ----------------------------------------------


@dataclass(frozen=True)
class ComplementReport:
    count: int
    sides: dict  # vertex -> component index
    boundary_open: bool


def complement_components(X: SquareComplex, H: Hypergraph) -> ComplementReport:
    """Components of the vertex graph with the wall's dual edges removed.
    boundary_open records whether the wall meets the complex boundary (a dual
    edge lying on fewer than two faces)."""
    deg = X.degrees()
    adj: dict = {v: [] for v in X.vertices}
    for eid, (u, v) in X.edges.items():
        if eid in H.vertices:
            continue
        adj[u].append(v)
        adj[v].append(u)
    sides: dict = {}
    count = 0
    for v0 in sorted(X.vertices, key=_idkey):
        if v0 in sides:
            continue
        queue = deque([v0])
        sides[v0] = count
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in sides:
                    sides[y] = count
                    queue.append(y)
        count += 1
    boundary_open = any(deg[e] < 2 for e in H.vertices)
    return ComplementReport(count, sides, boundary_open)


@dataclass(frozen=True)
class WallDecomposition:
    walls: tuple  # Hypergraphs
    reports: tuple  # aligned ComplementReports


def wall_decomposition(painted: PaintedComplex,
                       kinds=KINDS) -> WallDecomposition:
    """All walls of the requested kinds, deduplicated by (dual edge set,
    complement partition): a wall identical under several tracing rules is
    counted once."""
    walls, reports, seen = [], [], set()
    for kind in kinds:
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        for H in trace_hypergraphs(painted, kind):
            rep = complement_components(painted.base, H)
            blocks: dict = {}
            for v, c in rep.sides.items():
                blocks.setdefault(c, set()).add(v)
            sig = (H.vertices, frozenset(frozenset(b) for b in blocks.values()))
            if sig in seen:
                continue
            seen.add(sig)
            walls.append(H)
            reports.append(rep)
    return WallDecomposition(tuple(walls), tuple(reports))


def wall_distance(W: WallDecomposition, x, y) -> int:
    """Number of walls whose complement side map separates x from y."""
    return sum(1 for rep in W.reports if rep.sides[x] != rep.sides[y])


def bfs_distances(X: SquareComplex, source) -> dict:
    adj: dict = {v: [] for v in X.vertices}
    for eid, (u, v) in sorted(X.edges.items(), key=lambda kv: _idkey(kv[0])):
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y, _e in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def bfs_geodesic(X: SquareComplex, x, y):
    """(distance, edge ids of one deterministic shortest path)."""
    adj: dict = {v: [] for v in X.vertices}
    for eid, (u, v) in sorted(X.edges.items(), key=lambda kv: _idkey(kv[0])):
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    prev = {x: None}
    queue = deque([x])
    while queue:
        cur = queue.popleft()
        if cur == y:
            break
        for nxt, eid in adj[cur]:
            if nxt not in prev:
                prev[nxt] = (cur, eid)
                queue.append(nxt)
    if y not in prev:
        raise ValueError("vertices are not connected")
    path = []
    cur = y
    while prev[cur] is not None:
        cur, eid = prev[cur]
        path.append(eid)
    path.reverse()
    return len(path), path


@dataclass(frozen=True)
class PairBoundReport:
    x: object
    y: object
    d_edge: int
    d_wall: int
    bound: int
    status: str  # "pass" | "violation" | "indeterminate"


def check_wall_lower_bound(W: WallDecomposition, X: SquareComplex,
                           pairs) -> list[PairBoundReport]:
    """d_wall >= floor(d_edge / 15) per pair. A failing pair is only
    indeterminate when a wall crossing its geodesic has a complement count
    other than two (the separation argument needs two sides)."""
    out = []
    for x, y in pairs:
        d_edge, geodesic = bfs_geodesic(X, x, y)
        d_wall = wall_distance(W, x, y)
        bound = d_edge // 15
        if d_wall >= bound:
            status = "pass"
        else:
            gset = set(geodesic)
            bad = any(
                rep.count != 2
                for H, rep in zip(W.walls, W.reports)
                if H.vertices & gset)
            status = "indeterminate" if bad else "violation"
        out.append(PairBoundReport(x, y, d_edge, d_wall, bound, status))
    return out


# -- carrier classification, houses ----------------------------------------------------


def classify_carrier(H: Hypergraph, painted: PaintedComplex) -> dict:
    """Per carrier face: "regular tile", "divided tile member" (the wall
    passes both members of its pair), or "isolated distinguished"."""
    out = {}
    for fid in sorted(H.carrier, key=_idkey):
        partner = painted.partner(fid)
        if painted.colors.get(fid, "regular") == "regular":
            out[fid] = "regular tile"
        elif partner is not None and partner in H.carrier:
            out[fid] = "divided tile member"
        else:
            out[fid] = "isolated distinguished"
    return out


def _edge_ids(gamma) -> list:
    """Accept a path given as Steps or as raw edge ids."""
    return [st.edge if hasattr(st, "edge") else st for st in gamma]


def _chain_vertices(X: SquareComplex, edge_path):
    """Vertex sequence of an edge path, resolving direction from chaining."""
    if not edge_path:
        raise ValueError("empty path")
    if len(edge_path) == 1:
        return list(X.edges[edge_path[0]])
    first = X.edges[edge_path[0]]
    second = set(X.edges[edge_path[1]])
    if first[1] in second:
        verts = [first[0], first[1]]
    elif first[0] in second:
        verts = [first[1], first[0]]
    else:
        raise ValueError("path edges do not chain")
    for eid in edge_path[1:]:
        u, v = X.edges[eid]
        if verts[-1] == u:
            verts.append(v)
        elif verts[-1] == v:
            verts.append(u)
        else:
            raise ValueError("path edges do not chain")
    return verts


@dataclass(frozen=True)
class HouseExcursion:
    edges: tuple  # consecutive off-carrier geodesic edges
    start: object  # carrier vertex where the excursion leaves
    end: object  # carrier vertex where it returns
    conforming: bool  # matches the 3-face house shape with a length-2 roof
    roof: object  # the roof face when conforming


def find_house_diagrams(X: SquareComplex, gamma, H: Hypergraph) -> list[HouseExcursion]:
    """Match every maximal excursion of the geodesic off the wall's carrier
    against the house shape: a two-edge roof walk carried by one face that
    shares an edge with a carrier face at each end."""
    gamma = _edge_ids(gamma)
    carrier_edges = set()
    carrier_vertices = set()
    for fid in H.carrier:
        for st in X.faces[fid].walk:
            carrier_edges.add(st.edge)
            u, v = X.edges[st.edge]
            carrier_vertices.update((u, v))
    verts = _chain_vertices(X, gamma)
    out = []
    i = 0
    while i < len(gamma):
        if gamma[i] in carrier_edges:
            i += 1
            continue
        j = i
        while j < len(gamma) and gamma[j] not in carrier_edges:
            j += 1
        start_v, end_v = verts[i], verts[j]
        if start_v in carrier_vertices and end_v in carrier_vertices:
            run = tuple(gamma[i:j])
            out.append(HouseExcursion(
                run, start_v, end_v,
                *_match_house(X, H, run, start_v, end_v)))
        i = j
    return out


def _match_house(X, H, run, start_v, end_v):
    if len(run) != 2:
        return False, None
    bases_start = [f for f in H.carrier
                   if start_v in _face_vertices(X, f)]
    bases_end = [f for f in H.carrier
                 if end_v in _face_vertices(X, f)]
    for fid in sorted(X.faces, key=_idkey):
        if fid in H.carrier:
            continue
        walk_edges = {st.edge for st in X.faces[fid].walk}
        if not set(run) <= walk_edges:
            continue
        share = lambda g: walk_edges & {st.edge for st in X.faces[g].walk}
        if any(share(g) for g in bases_start) and any(share(g) for g in bases_end):
            return True, fid
    return False, None


def _face_vertices(X, fid):
    vs = set()
    for st in X.faces[fid].walk:
        u, v = X.edges[st.edge]
        vs.update((u, v))
    return vs


# -- two-collared configurations ---------------------------------------------------------


@dataclass(frozen=True)
class TwoCollaredWitness:
    faces: tuple  # the two cells both walls pass through
    complex: SquareComplex
    lambda1: tuple  # segments of the first wall in those cells
    lambda2: tuple
    strongly_adjacent: bool  # the cells share exactly two edges


def find_two_collared(X: SquareComplex, H1: Hypergraph,
                      H2: Hypergraph) -> list[TwoCollaredWitness]:
    """Face pairs through which both walls pass with disjoint segments —
    the two cells a diagram collared by both walls must have as corners.
    Witnesses not shaped like a strongly adjacent pair are flagged."""
    if H1.vertices == H2.vertices and H1.edges == H2.edges:
        raise ValueError("the two walls must be distinct")
    common = sorted(H1.carrier & H2.carrier, key=_idkey)
    clean = []
    for f in common:
        s1 = {s for s in H1.edges if s[2] == f}
        s2 = {s for s in H2.edges if s[2] == f}
        if s1 & s2:
            continue  # the walls overlap in this cell instead of crossing it
        clean.append(f)
    out = []
    for i in range(len(clean)):
        for j in range(i + 1, len(clean)):
            f, g = clean[i], clean[j]
            shared = {st.edge for st in X.faces[f].walk} & \
                     {st.edge for st in X.faces[g].walk}
            out.append(TwoCollaredWitness(
                faces=(f, g),
                complex=_subcomplex(X, [f, g]),
                lambda1=tuple(s for s in H1.edges if s[2] in (f, g)),
                lambda2=tuple(s for s in H2.edges if s[2] in (f, g)),
                strongly_adjacent=len(shared) == 2,
            ))
    return out


# -- geodesic windows ----------------------------------------------------------------------


WINDOW = 15
MIN_GEODESIC = 21


@dataclass(frozen=True)
class WindowReport:
    geodesic_length: int
    statuses: tuple  # per window: "pass" | "fail" | "indeterminate"

    @property
    def all_pass(self) -> bool:
        return all(s == "pass" for s in self.statuses)


def check_window_crossing(X: SquareComplex, W: WallDecomposition,
                          gamma) -> WindowReport:
    """For every window of 15 consecutive geodesic edges: does some wall
    cross the geodesic exactly once, at an edge of that window? Failures
    become indeterminate when a wall crossing the window lacks a two-sided
    complement."""
    gamma = _edge_ids(gamma)
    if len(gamma) < MIN_GEODESIC:
        raise ValueError(f"geodesic must have at least {MIN_GEODESIC} edges")
    verts = _chain_vertices(X, gamma)
    d, _path = bfs_geodesic(X, verts[0], verts[-1])
    if d != len(gamma):
        raise ValueError("path is not a geodesic")
    gset = set(gamma)
    single = []  # (crossing edge, wall index) for walls crossing exactly once
    for idx, H in enumerate(W.walls):
        crossings = H.vertices & gset
        if len(crossings) == 1:
            single.append((next(iter(crossings)), idx))
    statuses = []
    for i in range(len(gamma) - WINDOW + 1):
        window = set(gamma[i:i + WINDOW])
        if any(e in window for e, _idx in single):
            statuses.append("pass")
            continue
        bad = any(
            rep.count != 2
            for H, rep in zip(W.walls, W.reports)
            if H.vertices & window)
        statuses.append("indeterminate" if bad else "fail")
    return WindowReport(len(gamma), tuple(statuses))
