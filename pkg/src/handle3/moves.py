"""Type-0 and type-1 stabilizations, destabilization, and stable reduction.

A type-0 stabilization slides a boundary-parallel arc of H_i over to H_j:
genera (g_i, g_j, g_k) become (g_i+1, g_j+1, g_k), the branch count is
unchanged, and F_ij either gains a tube or merges two components (chi drops
by 2 either way).

A type-1 stabilization thickens an arc on F_jk joining two branched-locus
points and hands the neighborhood to H_i: genera become (g_i+1, g_j, g_k),
F_jk is cut along the arc, F_ij and F_ik each gain a band at the endpoint
loci, and the branch count changes by 1 (up when both endpoints lie on one
locus, down when they lie on two, which then merge).

The inverse, a type-1 destabilization, exists whenever a genus-one
handlebody has a meridian disk crossing the branched loci at exactly two
points; the per-handlebody meridian tags carried by the loci encode exactly
those crossings, so a handlebody is destabilizable iff its crossing counts
total 2.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from . import fixtures
from .decomp import (
    BranchedLocus,
    CurveClass,
    Decomposition,
    PatchPiece,
    admits_decomposition,
    canonical_key,
    canonical_transform,
    case_of,
    pair_index,
    third_handlebody,
    validate,
)
from .surfaces import ArcDescriptor, ArcOutcome, IllegalArc, SurfacePiece

__all__ = [
    "MoveError",
    "UnknownComponent",
    "LocusMismatch",
    "StaleWitness",
    "Type0Record",
    "Type1Record",
    "DestabRecord",
    "MoveScript",
    "DestabWitness",
    "CandidateScan",
    "stabilize_type0",
    "stabilize_type1",
    "destabilization_candidates",
    "destabilize_type1",
    "stable_reduce",
    "apply_script",
    "script_to_json",
    "script_from_json",
]


class MoveError(ValueError):
    """Base class for illegal moves."""


class UnknownComponent(MoveError):
    """A type-0 move names a patch component that does not exist."""


class LocusMismatch(MoveError):
    """The arc's endpoint circles do not lie on the named branched loci."""


class StaleWitness(MoveError):
    """The witness was computed for a different decomposition."""


# --------------------------------------------------------------------------
# Shared rewrite helpers
# --------------------------------------------------------------------------


def _fingerprint(d: Decomposition) -> str:
    key = canonical_key(d, relabel_handlebodies=False, with_classes=True)
    raw = repr((d.manifold, key)).encode()
    return hashlib.sha256(raw).hexdigest()[:16]


def _fresh_locus_id(d: Decomposition) -> int:
    return max(d.locus_ids()) + 1


def _clear_handlebody_tags(
    loci: Sequence[BranchedLocus], handlebodies: Sequence[int], genera
) -> Tuple[BranchedLocus, ...]:
    """Unset tags on boundaries whose surface a move just changed; genus-0
    boundaries keep the forced inessential tag."""
    out = []
    for loc in loci:
        classes = list(loc.classes)
        for h in handlebodies:
            if genera[h - 1] == 0:
                classes[h - 1] = CurveClass(False, 0)
            else:
                classes[h - 1] = None
        out.append(BranchedLocus(loc.id, tuple(classes)))
    return tuple(out)


def retag_from_catalog(d: Decomposition) -> Decomposition:
    """Adopt the canonical fixture's curve classes when the decomposition is
    one of the classified models up to relabeling; otherwise leave the
    unknown tags in place."""
    genera_sorted = tuple(sorted(d.genera))
    profile_multiset = tuple(sorted(d.profile()))
    for fixture in fixtures.catalog(d.manifold):
        if tuple(sorted(fixture.genera)) != genera_sorted:
            continue
        if fixture.branch_count != d.branch_count:
            continue
        if tuple(sorted(fixture.profile())) != profile_multiset:
            continue
        key_d, perm_d, map_d = canonical_transform(
            d, relabel_handlebodies=True, with_classes=False
        )
        key_f, perm_f, map_f = canonical_transform(
            fixture, relabel_handlebodies=True, with_classes=False
        )
        if key_d != key_f:
            continue
        inv_f = {new: old for old, new in map_f.items()}
        # Handle slot s of the canonical form holds d's handle perm_d[s] and
        # the fixture's handle perm_f[s]; same for loci via the maps.
        new_loci = []
        for loc in d.loci:
            fixture_locus = fixture.locus(inv_f[map_d[loc.id]])
            classes: List[Optional[CurveClass]] = [None, None, None]
            for slot in range(3):
                hd = perm_d[slot]
                hf = perm_f[slot]
                classes[hd - 1] = fixture_locus.classes[hf - 1]
            new_loci.append(BranchedLocus(loc.id, tuple(classes)))
        return Decomposition(d.manifold, d.genera, d.patches, tuple(new_loci))
    return d


def _check_clean(d: Decomposition, what: str) -> Decomposition:
    report = validate(d)
    if not report.ok:
        raise MoveError(
            "%s produced an invalid decomposition: %s"
            % (what, "; ".join(v.message for v in report.violations))
        )
    return d


# --------------------------------------------------------------------------
# Type-0 stabilization
# --------------------------------------------------------------------------


def stabilize_type0(
    d: Decomposition, pair: Tuple[int, int], arc_components: Sequence[int]
) -> Decomposition:
    """Stabilize along a boundary-parallel arc of H_i with endpoints on F_ij.

    One component id adds a tube to that component of F_ij (genus + 1), two
    ids merge the two components.  Genera of both named handlebodies go up
    by one; the loci and the other two patches are untouched.
    """
    i, j = sorted(pair)
    idx = pair_index(i, j)
    patch = list(d.patches[idx])
    comps = tuple(arc_components)
    if len(comps) not in (1, 2) or len(set(comps)) != len(comps):
        raise UnknownComponent("one or two distinct component ids, got %r" % (comps,))
    for c in comps:
        if not (0 <= c < len(patch)):
            raise UnknownComponent("F%d%d has no component %d" % (i, j, c))

    if len(comps) == 1:
        p = patch[comps[0]]
        patch[comps[0]] = PatchPiece(
            SurfacePiece(p.surface.genus + 1, p.surface.boundary_count), p.loci
        )
    else:
        a, b = sorted(comps)
        pa, pb = patch[a], patch[b]
        merged = PatchPiece(
            SurfacePiece(
                pa.surface.genus + pb.surface.genus,
                pa.surface.boundary_count + pb.surface.boundary_count,
            ),
            pa.loci + pb.loci,
        )
        patch = [p for n, p in enumerate(patch) if n not in (a, b)] + [merged]

    genera = tuple(
        g + 1 if h in (i, j) else g for h, g in zip((1, 2, 3), d.genera)
    )
    patches = tuple(
        tuple(patch) if n == idx else d.patches[n] for n in range(3)
    )
    loci = _clear_handlebody_tags(d.loci, (i, j), genera)
    out = retag_from_catalog(Decomposition(d.manifold, genera, patches, loci))
    return _check_clean(out, "type-0 stabilization")


# --------------------------------------------------------------------------
# Type-1 stabilization
# --------------------------------------------------------------------------


def _banded_piece(
    patch: Sequence[PatchPiece],
    l1: int,
    l2: int,
    new_loci: Tuple[int, ...],
) -> List[PatchPiece]:
    """Attach the band a type-1 move adds to one of the two gaining patches.

    The feet sit on the circles at loci l1, l2 (equal for the split case);
    those circles are replaced by circles at ``new_loci``.
    """
    holders = {
        n for n, p in enumerate(patch) if l1 in p.loci or l2 in p.loci
    }
    if l1 == l2:
        (n,) = holders
        p = patch[n]
        rebuilt = PatchPiece(
            SurfacePiece(p.surface.genus, p.surface.boundary_count + 1),
            tuple(l for l in p.loci if l != l1) + new_loci,
        )
        return [rebuilt if m == n else q for m, q in enumerate(patch)]
    if len(holders) == 1:
        (n,) = holders
        p = patch[n]
        rebuilt = PatchPiece(
            SurfacePiece(p.surface.genus + 1, p.surface.boundary_count - 1),
            tuple(l for l in p.loci if l not in (l1, l2)) + new_loci,
        )
        return [rebuilt if m == n else q for m, q in enumerate(patch)]
    na, nb = sorted(holders)
    pa, pb = patch[na], patch[nb]
    merged = PatchPiece(
        SurfacePiece(
            pa.surface.genus + pb.surface.genus,
            pa.surface.boundary_count + pb.surface.boundary_count - 1,
        ),
        tuple(l for l in pa.loci + pb.loci if l not in (l1, l2)) + new_loci,
    )
    return [q for m, q in enumerate(patch) if m not in (na, nb)] + [merged]


def _split_distribution(
    piece: PatchPiece,
    split: Tuple[Tuple[int, int], Tuple[int, int]],
    la: int,
    lb: int,
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Distribute the remaining circles of a separating same-circle cut.

    The declared (g, c) pair fixes how many old circles each part takes;
    when both parts take some, the distribution is ambiguous and the move is
    refused rather than guessed.
    """
    (g1, c1), (g2, c2) = split
    # the cut circle disappears; each part gains one new circle
    rest = [l for l in piece.loci if l != la]
    need1, need2 = c1 - 1, c2 - 1
    if need1 + need2 != len(rest):
        raise IllegalArc("split %r does not fit piece %r" % (split, piece))
    if need1 and need2:
        raise IllegalArc(
            "ambiguous circle distribution for split %r; only splits where "
            "one part takes all remaining circles are supported" % (split,)
        )
    if need1:
        return tuple(rest) + (la,), (lb,)
    return (la,), tuple(rest) + (lb,)


def stabilize_type1(
    d: Decomposition,
    i: int,
    arc: ArcDescriptor,
    locus_endpoints: Tuple[int, int],
) -> Decomposition:
    """Stabilize H_i along an arc on F_jk with endpoints on the named loci.

    F_jk is cut along the arc; F_ij and F_ik each gain a band at the
    corresponding circles.  Both endpoints on one locus split it in two
    (branch count + 1); endpoints on distinct loci merge them (branch
    count - 1).
    """
    if i not in (1, 2, 3):
        raise MoveError("handlebody index must be 1, 2 or 3")
    j, k = sorted(h for h in (1, 2, 3) if h != i)
    jk = pair_index(j, k)
    patch = d.patches[jk]
    if not (0 <= arc.piece_id < len(patch)):
        raise IllegalArc("F%d%d has no component %d" % (j, k, arc.piece_id))
    piece = patch[arc.piece_id]
    ca, cb = arc.endpoint_circles
    if not (0 <= ca < len(piece.loci) and 0 <= cb < len(piece.loci)):
        raise IllegalArc("endpoint circles %r not on the piece" % (arc.endpoint_circles,))
    la, lb = piece.loci[ca], piece.loci[cb]
    if tuple(sorted((la, lb))) != tuple(sorted(locus_endpoints)):
        raise LocusMismatch(
            "arc endpoints lie on loci %s, not %s"
            % (tuple(sorted((la, lb))), tuple(sorted(locus_endpoints)))
        )

    if la == lb:
        # Split the locus: the cut piece and both bands see two new circles.
        keep, fresh = la, _fresh_locus_id(d)
        new_ids = (keep, fresh)
        outcome = arc.same_circle_outcome
        if outcome is None:
            raise IllegalArc("a same-locus arc needs an outcome selector")
        if outcome in (ArcOutcome.SPLIT_BOUNDARY, ArcOutcome.REDUCE_GENUS):
            if piece.surface.genus < 1:
                raise IllegalArc("genus-reducing cut needs genus >= 1")
            cut_pieces = [
                PatchPiece(
                    SurfacePiece(
                        piece.surface.genus - 1, piece.surface.boundary_count + 1
                    ),
                    tuple(l for l in piece.loci if l != la) + new_ids,
                )
            ]
        elif outcome is ArcOutcome.SEPARATE_PIECE:
            if arc.split is None:
                raise IllegalArc("separate_piece needs the (g, c) split")
            (g1, c1), (g2, c2) = arc.split
            if g1 + g2 != piece.surface.genus or c1 + c2 != piece.surface.boundary_count + 1:
                raise IllegalArc("split %r violates Euler bookkeeping" % (arc.split,))
            loci1, loci2 = _split_distribution(piece, arc.split, keep, fresh)
            cut_pieces = [
                PatchPiece(SurfacePiece(g1, c1), loci1),
                PatchPiece(SurfacePiece(g2, c2), loci2),
            ]
        else:  # pragma: no cover - exhaustive enum
            raise IllegalArc("unknown outcome %r" % outcome)
        new_jk = [
            p for n, p in enumerate(patch) if n != arc.piece_id
        ] + cut_pieces
        new_loci: List[BranchedLocus] = []
        for loc in d.loci:
            if loc.id == keep:
                new_loci.append(BranchedLocus(keep, (None, None, None)))
            else:
                new_loci.append(loc)
        new_loci.append(BranchedLocus(fresh, (None, None, None)))
    else:
        if arc.same_circle_outcome is not None:
            raise IllegalArc("distinct-loci arcs take no outcome selector")
        merged_id = min(la, lb)
        new_ids = (merged_id,)
        cut_pieces = [
            PatchPiece(
                SurfacePiece(piece.surface.genus, piece.surface.boundary_count - 1),
                tuple(l for l in piece.loci if l not in (la, lb)) + new_ids,
            )
        ]
        new_jk = [
            p for n, p in enumerate(patch) if n != arc.piece_id
        ] + cut_pieces
        new_loci = []
        for loc in d.loci:
            if loc.id == max(la, lb):
                continue
            if loc.id == merged_id:
                new_loci.append(BranchedLocus(merged_id, (None, None, None)))
            else:
                new_loci.append(loc)

    patches = list(d.patches)
    patches[jk] = tuple(new_jk)
    for other in (j, k):
        pidx = pair_index(i, other)
        patches[pidx] = tuple(
            _banded_piece(d.patches[pidx], la, lb, new_ids)
        )
    genera = tuple(
        g + 1 if h == i else g for h, g in zip((1, 2, 3), d.genera)
    )
    loci = _clear_handlebody_tags(tuple(new_loci), (i,), genera)
    out = retag_from_catalog(Decomposition(d.manifold, genera, tuple(patches), loci))
    return _check_clean(out, "type-1 stabilization")


# --------------------------------------------------------------------------
# Type-1 destabilization
# --------------------------------------------------------------------------

CutResolution = Optional[Tuple]  # None, ("reduce_genus",), ("separate", parts)


@dataclass(frozen=True)
class DestabWitness:
    """A meridian disk of a genus-one handlebody crossing the loci twice.

    ``loci`` holds one id (crossed twice; the destabilization splits it) or
    two (crossed once each; they merge).  ``resolutions`` records, for the
    two patches the disk's boundary crosses (in patch order), how the cut
    resolves the combinatorial type; distinct-loci cuts are forced and store
    None.
    """

    handlebody: int
    loci: Tuple[int, ...]
    resolutions: Tuple[CutResolution, CutResolution]
    fingerprint: str


@dataclass(frozen=True)
class CandidateScan:
    """Destabilization witnesses plus the handlebodies that could not be
    certified because curve-class tags are unknown."""

    witnesses: Tuple[DestabWitness, ...]
    indeterminate: Tuple[int, ...] = ()


def _crossing_profile(d: Decomposition, hb: int):
    """(total crossings, crossing loci, unknown?) for one handlebody."""
    total = 0
    crossed = []
    for loc in d.loci:
        cls = d.curve_class(loc.id, hb)
        if cls is None:
            return None, None, True
        if cls.meridian:
            total += cls.meridian
            crossed.append((loc.id, cls.meridian))
    return total, crossed, False


def _cut_resolutions(piece: PatchPiece, locus: int, fresh: int):
    """All combinatorial resolutions of cutting a piece along an arc with
    both endpoints on its circle at ``locus``."""
    rest = tuple(l for l in piece.loci if l != locus)
    out = []
    if piece.surface.genus >= 1:
        out.append(("reduce_genus",))
    for g1 in range(piece.surface.genus + 1):
        g2 = piece.surface.genus - g1
        for r in range(len(rest) + 1):
            for subset in itertools.combinations(rest, r):
                out.append(
                    (
                        "separate",
                        (g1, tuple(subset) + (locus,)),
                        (g2, tuple(l for l in rest if l not in subset) + (fresh,)),
                    )
                )
    return out


def _apply_resolution(
    piece: PatchPiece, locus: int, fresh: int, resolution
) -> List[PatchPiece]:
    if resolution[0] == "reduce_genus":
        return [
            PatchPiece(
                SurfacePiece(piece.surface.genus - 1, piece.surface.boundary_count + 1),
                tuple(l for l in piece.loci if l != locus) + (locus, fresh),
            )
        ]
    _, (g1, loci1), (g2, loci2) = resolution
    return [
        PatchPiece(SurfacePiece(g1, len(loci1)), tuple(loci1)),
        PatchPiece(SurfacePiece(g2, len(loci2)), tuple(loci2)),
    ]


def _destab_build(
    d: Decomposition,
    hb: int,
    loci: Tuple[int, ...],
    resolutions: Tuple[CutResolution, CutResolution],
) -> Optional[Decomposition]:
    """Assemble the decomposition a destabilization witness produces, or None
    when the required arcs do not exist."""
    j, k = sorted(h for h in (1, 2, 3) if h != hb)
    cut_pairs = (tuple(sorted((hb, j))), tuple(sorted((hb, k))))
    band_pair = (j, k)
    genera = tuple(
        g - 1 if h == hb else g for h, g in zip((1, 2, 3), d.genera)
    )

    patches: List[Tuple[PatchPiece, ...]] = list(d.patches)
    if len(loci) == 2:
        l1, l2 = loci
        merged = min(l1, l2)
        for pair in cut_pairs:
            idx = pair_index(*pair)
            patch = patches[idx]
            holders = {n for n, p in enumerate(patch) if l1 in p.loci or l2 in p.loci}
            if len(holders) != 1:
                return None  # the disk boundary cannot run through two components
            (n,) = holders
            p = patch[n]
            rebuilt = PatchPiece(
                SurfacePiece(p.surface.genus, p.surface.boundary_count - 1),
                tuple(l for l in p.loci if l not in (l1, l2)) + (merged,),
            )
            patches[idx] = tuple(
                rebuilt if m == n else q for m, q in enumerate(patch)
            )
        bidx = pair_index(*band_pair)
        patches[bidx] = tuple(
            _banded_piece(d.patches[bidx], l1, l2, (merged,))
        )
        new_loci = []
        for loc in d.loci:
            if loc.id == max(l1, l2):
                continue
            if loc.id == merged:
                new_loci.append(BranchedLocus(merged, (None, None, None)))
            else:
                new_loci.append(loc)
    else:
        (locus,) = loci
        fresh = _fresh_locus_id(d)
        for pair, resolution in zip(cut_pairs, resolutions):
            if resolution is None:
                return None
            idx = pair_index(*pair)
            patch = patches[idx]
            n = next(m for m, p in enumerate(patch) if locus in p.loci)
            rebuilt = _apply_resolution(patch[n], locus, fresh, resolution)
            patches[idx] = tuple(
                [q for m, q in enumerate(patch) if m != n] + rebuilt
            )
        bidx = pair_index(*band_pair)
        patches[bidx] = tuple(
            _banded_piece(d.patches[bidx], locus, locus, (locus, fresh))
        )
        new_loci = []
        for loc in d.loci:
            if loc.id == locus:
                new_loci.append(BranchedLocus(locus, (None, None, None)))
            else:
                new_loci.append(loc)
        new_loci.append(BranchedLocus(fresh, (None, None, None)))

    loci_cleared = _clear_handlebody_tags(tuple(new_loci), (hb,), genera)
    return Decomposition(d.manifold, genera, tuple(patches), loci_cleared)


def _witness_for(d: Decomposition, hb: int) -> Optional[DestabWitness]:
    """The destabilization witness on one genus-one handlebody, if any.

    Requires the crossing counts on dH_hb to total exactly 2.  Candidate cut
    resolutions are filtered by requiring the result to be a valid,
    admissible decomposition realizing one of the classified cases; the
    classification theorems make that resolution unique on every fixture.
    """
    total, crossed, unknown = _crossing_profile(d, hb)
    if unknown or total != 2:
        return None
    if len(crossed) == 2:
        loci = tuple(sorted(lid for lid, _ in crossed))
        resolution_sets: List[Tuple[CutResolution, CutResolution]] = [(None, None)]
    else:
        (lid, _) = crossed[0]
        loci = (lid,)
        j, k = sorted(h for h in (1, 2, 3) if h != hb)
        fresh = _fresh_locus_id(d)
        sets = []
        for pair in (tuple(sorted((hb, j))), tuple(sorted((hb, k)))):
            patch = d.patch(*pair)
            n = next(m for m, p in enumerate(patch) if lid in p.loci)
            sets.append(_cut_resolutions(patch[n], lid, fresh))
        resolution_sets = list(itertools.product(sets[0], sets[1]))

    good = []
    seen = set()
    for resolutions in resolution_sets:
        result = _destab_build(d, hb, loci, resolutions)
        if result is None:
            continue
        if not validate(result).ok:
            continue
        if case_of(result) is None:
            continue
        if not admits_decomposition(result.manifold, result.genera):
            continue
        key = canonical_key(result, relabel_handlebodies=False, with_classes=False)
        if key in seen:
            continue
        seen.add(key)
        good.append(resolutions)
    if len(good) != 1:
        return None
    return DestabWitness(hb, loci, good[0], _fingerprint(d))


def destabilization_candidates(d: Decomposition) -> CandidateScan:
    """All type-1 destabilization witnesses, lowest handlebody index first.

    Genus-zero handlebodies have no non-separating disk and never yield a
    witness.  A genus-one handlebody with unknown curve classes cannot be
    certified either way and is reported as indeterminate instead of being
    silently declared stuck.
    """
    witnesses = []
    indeterminate = []
    for hb in (1, 2, 3):
        if d.genera[hb - 1] != 1:
            continue
        total, crossed, unknown = _crossing_profile(d, hb)
        if unknown:
            indeterminate.append(hb)
            continue
        w = _witness_for(d, hb)
        if w is not None:
            witnesses.append(w)
    return CandidateScan(tuple(witnesses), tuple(indeterminate))


def destabilize_type1(d: Decomposition, witness: DestabWitness) -> Decomposition:
    """Cancel the 1-handle the witness certifies.

    The witness handlebody drops to genus g-1; its two patches are cut along
    the halves of the disk's boundary and the opposite patch gains the band.
    Raises StaleWitness when the decomposition changed since the witness was
    computed.
    """
    if witness.fingerprint != _fingerprint(d):
        raise StaleWitness("the decomposition changed since this witness was computed")
    result = _destab_build(d, witness.handlebody, witness.loci, witness.resolutions)
    if result is None:
        raise StaleWitness("witness data no longer applies")
    out = retag_from_catalog(result)
    return _check_clean(out, "type-1 destabilization")


# --------------------------------------------------------------------------
# Move scripts
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Type0Record:
    pair: Tuple[int, int]
    components: Tuple[int, ...]


@dataclass(frozen=True)
class Type1Record:
    handlebody: int
    piece: int
    circles: Tuple[int, int]
    loci: Tuple[int, int]
    outcome: Optional[str] = None
    split: Optional[Tuple[Tuple[int, int], Tuple[int, int]]] = None


@dataclass(frozen=True)
class DestabRecord:
    witness: DestabWitness


MoveRecord = Union[Type0Record, Type1Record, DestabRecord]


@dataclass(frozen=True)
class MoveScript:
    moves: Tuple[MoveRecord, ...]

    def __len__(self) -> int:
        return len(self.moves)


def apply_move(d: Decomposition, record: MoveRecord) -> Decomposition:
    if isinstance(record, Type0Record):
        return stabilize_type0(d, record.pair, record.components)
    if isinstance(record, Type1Record):
        arc = ArcDescriptor(
            record.piece,
            record.circles,
            ArcOutcome(record.outcome) if record.outcome else None,
            record.split,
        )
        return stabilize_type1(d, record.handlebody, arc, record.loci)
    if isinstance(record, DestabRecord):
        return destabilize_type1(d, record.witness)
    raise MoveError("unknown move record %r" % (record,))


def apply_script(d: Decomposition, script: MoveScript) -> Decomposition:
    for record in script.moves:
        d = apply_move(d, record)
    return d


def stable_reduce(d: Decomposition) -> Tuple[Decomposition, MoveScript]:
    """Greedily destabilize until no witness remains.

    Witnesses are taken lowest handlebody index first, then lowest locus
    ids, so scripts are deterministic.  The total genus drops at every step,
    so at most g1+g2+g3 moves are applied.
    """
    records: List[MoveRecord] = []
    current = d
    while True:
        scan = destabilization_candidates(current)
        if not scan.witnesses:
            return current, MoveScript(tuple(records))
        witness = scan.witnesses[0]
        current = destabilize_type1(current, witness)
        records.append(DestabRecord(witness))


# --------------------------------------------------------------------------
# Script JSON
# --------------------------------------------------------------------------


def _resolution_to_json(res: CutResolution):
    if res is None:
        return None
    if res[0] == "reduce_genus":
        return {"kind": "reduce_genus"}
    _, (g1, loci1), (g2, loci2) = res
    return {
        "kind": "separate",
        "parts": [[g1, list(loci1)], [g2, list(loci2)]],
    }


def _resolution_from_json(obj) -> CutResolution:
    if obj is None:
        return None
    if obj["kind"] == "reduce_genus":
        return ("reduce_genus",)
    (g1, loci1), (g2, loci2) = obj["parts"]
    return ("separate", (g1, tuple(loci1)), (g2, tuple(loci2)))


def script_to_json(script: MoveScript) -> dict:
    moves = []
    for record in script.moves:
        if isinstance(record, Type0Record):
            moves.append(
                {
                    "kind": "type0",
                    "pair": list(record.pair),
                    "components": list(record.components),
                }
            )
        elif isinstance(record, Type1Record):
            moves.append(
                {
                    "kind": "type1",
                    "handlebody": record.handlebody,
                    "piece": record.piece,
                    "circles": list(record.circles),
                    "loci": list(record.loci),
                    "outcome": record.outcome,
                    "split": [list(p) for p in record.split] if record.split else None,
                }
            )
        else:
            w = record.witness
            moves.append(
                {
                    "kind": "type1_destab",
                    "witness": {
                        "handlebody": w.handlebody,
                        "loci": list(w.loci),
                        "resolutions": [
                            _resolution_to_json(r) for r in w.resolutions
                        ],
                        "fingerprint": w.fingerprint,
                    },
                }
            )
    return {"schema": "handle3/1", "moves": moves}


def script_from_json(obj: dict) -> MoveScript:
    records: List[MoveRecord] = []
    for rec in obj["moves"]:
        kind = rec["kind"]
        if kind == "type0":
            records.append(
                Type0Record(tuple(rec["pair"]), tuple(rec["components"]))
            )
        elif kind == "type1":
            split = rec.get("split")
            records.append(
                Type1Record(
                    rec["handlebody"],
                    rec["piece"],
                    tuple(rec["circles"]),
                    tuple(rec["loci"]),
                    rec.get("outcome"),
                    tuple(tuple(p) for p in split) if split else None,
                )
            )
        elif kind == "type1_destab":
            w = rec["witness"]
            records.append(
                DestabRecord(
                    DestabWitness(
                        w["handlebody"],
                        tuple(w["loci"]),
                        tuple(
                            _resolution_from_json(r) for r in w["resolutions"]
                        ),
                        w["fingerprint"],
                    )
                )
            )
        else:
            raise MoveError("unknown move kind %r" % kind)
    return MoveScript(tuple(records))
