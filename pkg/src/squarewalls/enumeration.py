"""Canonical enumeration of small labeled square complexes and pattern
searches for forbidden local configurations in relator sets.

Complexes are generated as quotients of K disjoint squares by signed
edge-slot identifications, read in the fixed frame (start 0, orientation +1);
every choice of reading decoration is captured by some slot partition, so the
frame costs no generality. Isomorphism classes are deduplicated by a
canonical key minimized over face permutations, with edge orientations
normalized to the first occurrence and labels renamed in first-use order.
Bare vertex pinches (vertex identifications not induced by edge gluings) are
not generated: they change no edge letter constraint and no cancellation
statistic.

Enumeration is complete for K <= 2. For K in 3..5 complexes are grown from
the complete 2-face classes by attaching one face at a time with one or two
identifications, keeping the highest-cancellation candidates at each level;
this reaches every configuration the scans target (chains, corner contacts,
doubled pairs plus a neighbor) but is not exhaustive, and the per-level caps
make the trade-off explicit.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations, permutations

from .complexes import (
    IsoParams,
    SquareComplex,
    _SignedUnion,
    build_quotient,
    cancellation,
    check_generalized_iso,
)
from .fulfill import AbstractComplex, FulfillAssignment, check_assignment, fulfill_search
from .presentation import Word, letter_token

MAX_FACES = 5


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i, block in enumerate(part):
            yield part[:i] + [[first] + block] + part[i + 1:]
        yield [[first]] + part


def _spec_idents(blocks_with_signs):
    """Chain each signed block into identification tuples for build_quotient."""
    idents = []
    for block, signs in blocks_with_signs:
        root = block[0]
        for slot, sign in zip(block[1:], signs):
            idents.append((divmod(root, 4), divmod(slot, 4), sign))
    return idents


def canonical_key(n_faces: int, idents, labels) -> tuple:
    """Isomorphism-class key: minimum over face permutations of the slot
    partition encoding, with per-class signs relative to the first occurrence
    and labels renamed in first-use order. Returns None on a folded gluing."""
    uf = _SignedUnion(4 * n_faces)
    for (f, j), (g, k), sign in idents:
        if not uf.union(4 * f + j, 4 * g + k, sign):
            return None
    best = None
    for perm in permutations(range(n_faces)):
        class_ids: dict = {}
        codes = []
        for new_f in range(n_faces):
            old_f = perm[new_f]
            for j in range(4):
                root, sign = uf.find(4 * old_f + j)
                if root not in class_ids:
                    class_ids[root] = (len(class_ids), sign)
                cid, base_sign = class_ids[root]
                codes.append((cid, sign * base_sign))
        lab_map: dict = {}
        labs = []
        for new_f in range(n_faces):
            lab = labels[perm[new_f]]
            labs.append(lab_map.setdefault(lab, len(lab_map) + 1))
        key = (n_faces, tuple(codes), tuple(labs))
        if best is None or key < best:
            best = key
    return best


def _label_strings(n: int):
    """Restricted-growth label tuples: first face 1, each next at most max+1."""
    out = [(1,)]
    for _ in range(n - 1):
        out = [t + (lab,) for t in out for lab in range(1, max(t) + 2)]
    return out


def _complete_specs(n_faces: int):
    """All connected fold-free signed slot partitions on n_faces squares,
    deduplicated; yields (key, idents, labels)."""
    seen = set()
    for part in _set_partitions(list(range(4 * n_faces))):
        if n_faces > 1 and not any(
                len({s // 4 for s in block}) > 1 for block in part):
            continue  # no cross-face class: quotient is disconnected
        blocks = [sorted(b) for b in part]
        sign_choices = [[]]
        for b in blocks:
            sign_choices = [c + [signs] for c in sign_choices
                            for signs in _sign_tuples(len(b) - 1)]
        for choice in sign_choices:
            idents = _spec_idents(list(zip(blocks, choice)))
            for labels in _label_strings(n_faces):
                key = canonical_key(n_faces, idents, labels)
                if key is None or key in seen:
                    continue
                seen.add(key)
                yield key, idents, labels


def _sign_tuples(k: int):
    out = [()]
    for _ in range(k):
        out = [t + (s,) for t in out for s in (1, -1)]
    return out


class EnumerationCursor:
    """Single-owner iterator over isomorphism classes of connected labeled
    complexes with at most max_faces faces, each class exactly once."""

    def __init__(self, max_faces: int, parent_cap: int = 400,
                 level_cap: int = 2500):
        if not 1 <= max_faces <= MAX_FACES:
            raise ValueError(f"max_faces must be in 1..{MAX_FACES}")
        self.max_faces = max_faces
        self.parent_cap = parent_cap
        self.level_cap = level_cap
        self.truncated = False  # set when a growth cap actually trimmed
        self._seen: set = set()

    def __iter__(self):
        levels: dict[int, list] = {}
        for n in (1, 2):
            if n > self.max_faces:
                break
            levels[n] = []
            for key, idents, labels in sorted(_complete_specs(n)):
                cx = build_quotient(n, idents, labels=list(labels))
                if cx is None:
                    continue
                self._seen.add(key)
                levels[n].append((idents, labels, cancellation(cx)))
                yield AbstractComplex.wrap(cx)
        for n in range(3, self.max_faces + 1):
            pool = sorted(levels.get(n - 1, []), key=lambda t: (-t[2], t[0], t[1]))
            parents = pool[:self.parent_cap]
            if len(pool) > len(parents):
                self.truncated = True
            grown = []
            for idents, labels, _c in parents:
                grown.extend(self._attachments(n, idents, labels))
            grown.sort(key=lambda t: (-t[3], t[0]))
            if len(grown) > self.level_cap:
                self.truncated = True
            levels[n] = []
            for key, idents, labels, can in grown[:self.level_cap]:
                cx = build_quotient(n, idents, labels=list(labels))
                levels[n].append((idents, labels, can))
                yield AbstractComplex.wrap(cx)

    def _attachments(self, n: int, idents, labels):
        """Attach face n-1 to an (n-1)-face complex by one or two signed
        identifications; returns deduplicated (key, idents, labels, cancel)."""
        new = n - 1
        base_slots = [(f, j) for f in range(new) for j in range(4)]
        out = []
        firsts = [(bs, (new, j), s)
                  for bs in base_slots for j in range(4) for s in (1, -1)]
        for first in firsts:
            options = [None]
            for bs in base_slots + [(new, j) for j in range(4)]:
                for j2 in range(4):
                    if (new, j2) == first[1] or bs == (new, j2):
                        continue
                    for s2 in (1, -1):
                        options.append((bs, (new, j2), s2))
            for second in options:
                cand = list(idents) + [first] + ([second] if second else [])
                for lab in range(1, max(labels) + 2):
                    labs = tuple(labels) + (lab,)
                    key = canonical_key(n, cand, labs)
                    if key is None or key in self._seen:
                        continue
                    cx = build_quotient(n, cand, labels=list(labs))
                    if cx is None:
                        continue
                    self._seen.add(key)
                    out.append((key, cand, labs, cancellation(cx)))
        return out


def enumerate_abstract_complexes(K: int, **caps):
    """Stream the enumeration at max_faces K (complete for K <= 2)."""
    yield from EnumerationCursor(K, **caps)


def random_labeled_complex(seed: int, max_faces: int = 4) -> AbstractComplex | None:
    """Seeded random quotient with contiguous labels; None when the draw
    folds or disconnects."""
    rng = random.Random(seed)
    n = rng.randint(1, max_faces)
    slots = [(f, j) for f in range(n) for j in range(4)]
    idents = []
    for _ in range(rng.randint(max(0, n - 1), 2 * n)):
        a, b = rng.sample(slots, 2)
        idents.append((a, b, rng.choice((1, -1))))
    labels = [rng.randint(1, min(n, 3)) for _ in range(n)]
    used = sorted(set(labels))
    labels = [used.index(lab) + 1 for lab in labels]
    cx = build_quotient(n, idents, labels=labels)
    return None if cx is None else AbstractComplex.wrap(cx)


# -- local generalized-isoperimetry scan ---------------------------------------


@dataclass(frozen=True)
class IsoViolation:
    complex: AbstractComplex
    assignment: FulfillAssignment
    cancel: int
    size: int
    threshold: float

    def to_json_line(self) -> str:
        words = {str(lab): [letter_token(lt) for lt in w]
                 for lab, w in sorted(self.assignment.words.items())}
        return json.dumps({
            "complex": json.loads(self.complex.to_json()),
            "assignment": words,
            "cancel": self.cancel,
            "size": self.size,
            "threshold": self.threshold,
        }, sort_keys=True)


def scan_local_iso(R: list[Word], K: int, p: IsoParams, classes=None,
                   **caps) -> list[IsoViolation]:
    """Every enumerated complex fulfillable by R whose cancellation exceeds
    4(d+eps)|Y|, with its word assignment witness. A pre-enumerated class
    list can be supplied to amortize the enumeration across scans."""
    out = []
    for Y in (classes if classes is not None
              else enumerate_abstract_complexes(K, **caps)):
        size = len(Y.base.faces)
        threshold = 4 * (p.d + p.eps) * size
        can = cancellation(Y.base)
        if can <= threshold:
            continue
        asg = fulfill_search(Y, R)
        if asg is None:
            continue
        assert check_assignment(Y, asg)
        assert check_generalized_iso(Y.base, p).violation
        out.append(IsoViolation(Y, asg, can, size, threshold))
    return out


# -- special-cell pattern search -------------------------------------------------


def _slot_matches(u: Word, v: Word, same: bool):
    """Consistent single-edge gluings (k, l, sign) between a u-face and a
    v-face. For a relator against its own translates (same=True), gluings
    that pin equal positions in the same direction are excluded: they force
    the two cells to coincide."""
    out = []
    for k in range(4):
        for l in range(4):
            if same and k == l:
                continue
            if u[k] == v[l]:
                out.append((k, l, 1))
            if u[k] == -v[l]:
                out.append((k, l, -1))
    return out


def _compatible(ms):
    ks = [m[0] for m in ms]
    ls = [m[1] for m in ms]
    return len(set(ks)) == len(ks) and len(set(ls)) == len(ls)


def _pair_quotient(u_idx, v_idx, ms, labels):
    idents = [((0, k), (1, l), s) for k, l, s in ms]
    return build_quotient(2, idents, labels=labels)


@dataclass(frozen=True)
class PairOverlap:
    i: int
    j: int
    gluings: tuple  # (position in relator i, position in relator j, sign)
    same_relator: bool


@dataclass(frozen=True)
class ThirdFaceWitness:
    pair: PairOverlap
    third: int
    edge_matches: tuple  # ((side, boundary position, word slot, sign), ...)
    same_relator: bool


@dataclass(frozen=True)
class SpecialCellsReport:
    three_shares: tuple
    same_relator_three_shares: tuple
    strong_pairs: tuple
    same_relator_strong_pairs: tuple
    third_face_witnesses: tuple
    same_relator_third_face: tuple

    @property
    def cross_witness_count(self) -> int:
        return len(self.three_shares) + len(self.third_face_witnesses)

    def to_json_dict(self) -> dict:
        def enc(items):
            return [
                {"i": w.i, "j": w.j, "gluings": list(map(list, w.gluings))}
                for w in items
            ]

        return {
            "three_shares": enc(self.three_shares),
            "same_relator_three_shares": enc(self.same_relator_three_shares),
            "strong_pairs": enc(self.strong_pairs),
            "same_relator_strong_pairs": enc(self.same_relator_strong_pairs),
            "third_face_witnesses": [
                {"i": w.pair.i, "j": w.pair.j, "third": w.third,
                 "edge_matches": list(map(list, w.edge_matches))}
                for w in self.third_face_witnesses
            ],
            "same_relator_third_face": [
                {"i": w.pair.i, "j": w.pair.j, "third": w.third,
                 "edge_matches": list(map(list, w.edge_matches))}
                for w in self.same_relator_third_face
            ],
            "cross_witness_count": self.cross_witness_count,
        }


def check_special_cells(R: list[Word]) -> SpecialCellsReport:
    """Search all relator pairs for faces sharing three edges, and around
    every two-shared-edge (strongly adjacent) pair, for a third relator face
    gluing to at least two edges of the pair's outer boundary.

    Patterns between a relator and its own translates are collected in the
    same_relator categories; cross_witness_count counts only the distinct-
    relator findings.
    """
    three, three_same = [], []
    strong, strong_same = [], []
    third_hits, third_same = [], []
    for i in range(len(R)):
        for j in range(i, len(R)):
            same = i == j
            ms = _slot_matches(R[i], R[j], same)
            pair_seen = set()
            for size, sink, sink_same in ((3, three, three_same),
                                          (2, strong, strong_same)):
                for combo in combinations(ms, size):
                    if not _compatible(combo):
                        continue
                    key = tuple(sorted(combo))
                    if same:
                        swapped = tuple(sorted((l, k, s) for k, l, s in combo))
                        key = min(key, swapped)
                    if (size, key) in pair_seen:
                        continue
                    pair_seen.add((size, key))
                    if _pair_quotient(i, j, key, [1, 2] if not same else [1, 1]) is None:
                        continue
                    overlap = PairOverlap(i, j, key, same)
                    (sink_same if same else sink).append(overlap)
                    if size == 2:
                        for w in _third_face_witnesses(R, overlap):
                            (third_same if w.same_relator else third_hits).append(w)
    return SpecialCellsReport(
        tuple(three), tuple(three_same),
        tuple(strong), tuple(strong_same),
        tuple(third_hits), tuple(third_same),
    )


def _third_face_witnesses(R, overlap: PairOverlap):
    """Third faces gluing to >= 2 distinct free boundary edges of a strongly
    adjacent pair. Boundary edges keep (side, position, letter); a match of
    relator f onto edges all on one side at identical positions with sign +1
    is that side's own cell and is skipped."""
    u, v = R[overlap.i], R[overlap.j]
    used_u = {k for k, _l, _s in overlap.gluings}
    used_v = {l for _k, l, _s in overlap.gluings}
    boundary = [(0, k, u[k]) for k in range(4) if k not in used_u]
    boundary += [(1, l, v[l]) for l in range(4) if l not in used_v]
    out = []
    side_idx = {0: overlap.i, 1: overlap.j}
    for f, w in enumerate(R):
        for (e1, e2) in combinations(range(len(boundary)), 2):
            s1, p1, c1 = boundary[e1]
            s2, p2, c2 = boundary[e2]
            for q1 in range(4):
                for sg1 in (1, -1):
                    if w[q1] != (c1 if sg1 == 1 else -c1):
                        continue
                    for q2 in range(4):
                        if q2 == q1:
                            continue
                        for sg2 in (1, -1):
                            if w[q2] != (c2 if sg2 == 1 else -c2):
                                continue
                            matches = ((s1, p1, q1, sg1), (s2, p2, q2, sg2))
                            if (s1 == s2 and f == side_idx[s1]
                                    and q1 == p1 and q2 == p2
                                    and sg1 == sg2 == 1):
                                continue  # the side's own cell
                            out.append(ThirdFaceWitness(
                                overlap, f, matches,
                                f in (overlap.i, overlap.j)))
    return out
