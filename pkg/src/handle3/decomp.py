"""Three-handlebody decomposition model, validation, and the profile
enumerator.

A decomposition records the three genera, the three patch surfaces F12, F13,
F23 (each a multiset of pieces whose boundary circles are wired to branched
loci), and per-handlebody curve-class tags on every locus.  Validation checks
the Euler identities and the incidence structure; the enumerator re-derives
the complete case lists for genera at most one by sieving all Euler-consistent
profiles through named pruning rules.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .lens import ManifoldForm, SPHERE3, admits_seifert_over_rp2
from .lens import lens_space as lens_form
from .surfaces import (
    ANNULUS,
    DISK,
    PANTS,
    PUNCTURED_TORUS,
    SurfacePiece,
    canonical_name,
    euler_char,
)

SCHEMA = "handle3/1"

# Patch order is fixed: F12, F13, F23.
PAIRS = ((1, 2), (1, 3), (2, 3))
PAIR_KEYS = ("f12", "f13", "f23")


def pair_index(i: int, j: int) -> int:
    return PAIRS.index(tuple(sorted((i, j))))


def third_handlebody(i: int, j: int) -> int:
    return ({1, 2, 3} - {i, j}).pop()


class DecompError(ValueError):
    """Base class for decomposition-level errors."""


class OutOfRange(DecompError):
    """Genera outside the classified range (components must be 0 or 1)."""


class NotADisk(DecompError):
    """The named patch component is missing or is not a disk."""


class NotEssential(DecompError):
    """The disk's boundary locus is not essential-and-non-meridional on the
    genus-one handlebody, so no 2-handle reduction is available."""


class WrongGenus(DecompError):
    """Disk reduction needs the third handlebody to be a solid torus."""


@dataclass(frozen=True)
class CurveClass:
    """How a branched locus sits on one handlebody boundary.

    ``essential`` is False exactly when the locus bounds a disk in that
    boundary surface; then ``meridian`` must be 0.  On genus-one boundaries
    ``meridian`` records the locus's crossings with the distinguished
    meridian disk (the datum the destabilization calculus consumes).
    """

    essential: bool
    meridian: int

    def __post_init__(self) -> None:
        if self.meridian < 0:
            raise ValueError("meridian crossing count must be >= 0")
        if not self.essential and self.meridian != 0:
            raise ValueError("an inessential locus has meridian count 0")


@dataclass(frozen=True)
class BranchedLocus:
    """A branched locus with its three per-handlebody curve classes.

    A class entry of None means the tag is unknown (moves that cannot
    determine the new tags leave them unknown rather than guessing).
    """

    id: int
    classes: Tuple[Optional[CurveClass], Optional[CurveClass], Optional[CurveClass]]

    def __post_init__(self) -> None:
        if len(self.classes) != 3:
            raise ValueError("exactly three class entries, one per handlebody")


@dataclass(frozen=True)
class PatchPiece:
    """A connected patch component together with its circle-to-locus wiring."""

    surface: SurfacePiece
    loci: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.loci) != self.surface.boundary_count:
            raise ValueError(
                "piece %s needs %d locus ids, got %d"
                % (
                    canonical_name(self.surface),
                    self.surface.boundary_count,
                    len(self.loci),
                )
            )


Patch = Tuple[PatchPiece, ...]


@dataclass(frozen=True)
class Decomposition:
    """A type-(g1, g2, g3; b) decomposition of the 3-sphere or a lens space."""

    manifold: ManifoldForm
    genera: Tuple[int, int, int]
    patches: Tuple[Patch, Patch, Patch]
    loci: Tuple[BranchedLocus, ...]

    @property
    def branch_count(self) -> int:
        return len(self.loci)

    def patch(self, i: int, j: int) -> Patch:
        return self.patches[pair_index(i, j)]

    def locus(self, locus_id: int) -> BranchedLocus:
        for loc in self.loci:
            if loc.id == locus_id:
                return loc
        raise KeyError("no branched locus with id %d" % locus_id)

    def locus_ids(self) -> Tuple[int, ...]:
        return tuple(loc.id for loc in self.loci)

    def curve_class(self, locus_id: int, handlebody: int) -> Optional[CurveClass]:
        """The tag of a locus on one handlebody boundary.

        Genus-zero boundaries need no stored tag: every circle on a 2-sphere
        bounds, so the class is forced to (inessential, 0).
        """
        if self.genera[handlebody - 1] == 0:
            return CurveClass(False, 0)
        return self.locus(locus_id).classes[handlebody - 1]

    def profile(self) -> Tuple[Tuple[SurfacePiece, ...], ...]:
        """The three patch multisets, each in canonical piece order."""
        return tuple(
            tuple(sorted(p.surface for p in patch)) for patch in self.patches
        )

    def holder(self, i: int, j: int, locus_id: int) -> int:
        """Index of the patch component of F_ij carrying the locus."""
        for idx, piece in enumerate(self.patch(i, j)):
            if locus_id in piece.loci:
                return idx
        raise KeyError(
            "locus %d not on any component of F%d%d" % (locus_id, i, j)
        )


# --------------------------------------------------------------------------
# JSON form
# --------------------------------------------------------------------------


def manifold_to_json(m: ManifoldForm) -> dict:
    if m.is_sphere:
        return {"kind": "sphere3"}
    return {"kind": "lens", "p": m.p, "q": m.q}


def manifold_from_json(obj: dict) -> ManifoldForm:
    if obj["kind"] == "sphere3":
        return SPHERE3
    if obj["kind"] == "lens":
        return lens_form(obj["p"], obj["q"])
    raise ValueError("unknown manifold kind %r" % obj.get("kind"))


def _class_to_json(cls: Optional[CurveClass]) -> Optional[dict]:
    if cls is None:
        return None
    return {"essential": cls.essential, "meridian": cls.meridian}


def _class_from_json(obj: Optional[dict]) -> Optional[CurveClass]:
    if obj is None:
        return None
    return CurveClass(bool(obj["essential"]), int(obj["meridian"]))


def to_json_dict(d: Decomposition) -> dict:
    return {
        "schema": SCHEMA,
        "manifold": manifold_to_json(d.manifold),
        "genera": list(d.genera),
        "patches": {
            key: [
                {"genus": p.surface.genus, "boundary": p.surface.boundary_count}
                for p in patch
            ]
            for key, patch in zip(PAIR_KEYS, d.patches)
        },
        "loci": [
            {"id": loc.id, "classes": [_class_to_json(c) for c in loc.classes]}
            for loc in d.loci
        ],
        "incidence": {
            key: [list(p.loci) for p in patch]
            for key, patch in zip(PAIR_KEYS, d.patches)
        },
    }


def from_json_dict(obj: dict) -> Decomposition:
    patches = []
    for key in PAIR_KEYS:
        pieces = []
        for rec, loci in zip(obj["patches"][key], obj["incidence"][key]):
            pieces.append(
                PatchPiece(
                    SurfacePiece(int(rec["genus"]), int(rec["boundary"])),
                    tuple(int(l) for l in loci),
                )
            )
        patches.append(tuple(pieces))
    loci = tuple(
        BranchedLocus(
            int(rec["id"]),
            tuple(_class_from_json(c) for c in rec["classes"]),
        )
        for rec in obj["loci"]
    )
    genera = tuple(int(g) for g in obj["genera"])
    return Decomposition(
        manifold_from_json(obj["manifold"]),
        genera,
        tuple(patches),
        loci,
    )


def dumps(d: Decomposition) -> str:
    return json.dumps(to_json_dict(d), indent=2, sort_keys=True)


def loads(text: str) -> Decomposition:
    return from_json_dict(json.loads(text))


# --------------------------------------------------------------------------
# Euler identities and admissibility
# --------------------------------------------------------------------------


def euler_lemma_expected(genera: Sequence[int]) -> Tuple[int, int, int]:
    """Expected (chi(F12), chi(F13), chi(F23)) from the boundary genera.

    chi(F_ij) = (chi(dH_i) + chi(dH_j) - chi(dH_k)) / 2 with
    chi(dH_i) = 2 - 2 g_i.
    """
    chi = [2 - 2 * g for g in genera]
    out = []
    for i, j in PAIRS:
        k = third_handlebody(i, j)
        out.append((chi[i - 1] + chi[j - 1] - chi[k - 1]) // 2)
    return tuple(out)


def admits_decomposition(m: ManifoldForm, genera: Sequence[int]) -> bool:
    """Which genera triples (components <= 1) the target manifold admits.

    The 3-sphere admits all of (0,0,0), (0,0,1), (0,1,1), (1,1,1); a lens
    space admits all but (0,0,0).
    """
    genera = tuple(genera)
    if any(g not in (0, 1) for g in genera):
        raise OutOfRange("classified genera have components 0 or 1: %s" % (genera,))
    if m.is_sphere:
        return True
    return tuple(sorted(genera)) != (0, 0, 0)


# --------------------------------------------------------------------------
# Boundary surfaces as glued piece graphs
# --------------------------------------------------------------------------


def _boundary_pieces(
    d_or_patches, i: int
) -> Tuple[List[Tuple[SurfacePiece, Tuple[int, ...]]], List[int]]:
    """The pieces of dH_i (from its two patches) and the locus ids gluing
    them."""
    if isinstance(d_or_patches, Decomposition):
        others = [j for j in (1, 2, 3) if j != i]
        pa = d_or_patches.patch(i, others[0])
        pb = d_or_patches.patch(i, others[1])
        pieces = [(p.surface, p.loci) for p in pa] + [(p.surface, p.loci) for p in pb]
        locus_ids = list(d_or_patches.locus_ids())
    else:
        pa, pb, locus_ids = d_or_patches
        pieces = list(pa) + list(pb)
        locus_ids = list(locus_ids)
    return pieces, locus_ids


def _components(
    pieces: List[Tuple[SurfacePiece, Tuple[int, ...]]],
    glue_loci: Sequence[int],
) -> List[set]:
    """Connected components of pieces glued along the given loci.

    Each locus must appear on exactly two of the listed pieces (once on each
    side of the boundary surface).
    """
    parent = list(range(len(pieces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for locus in glue_loci:
        holders = [idx for idx, (_, loci) in enumerate(pieces) if locus in loci]
        if len(holders) != 2:
            raise ValueError("locus %d does not glue exactly two pieces" % locus)
        a, b = (find(h) for h in holders)
        if a != b:
            parent[a] = b
    comps: Dict[int, set] = {}
    for idx in range(len(pieces)):
        comps.setdefault(find(idx), set()).add(idx)
    return list(comps.values())


def boundary_connected(d: Decomposition, i: int) -> bool:
    pieces, locus_ids = _boundary_pieces(d, i)
    if not pieces:
        return False
    try:
        return len(_components(pieces, locus_ids)) == 1
    except ValueError:
        return False


def locus_essential_on_boundary(
    pieces: List[Tuple[SurfacePiece, Tuple[int, ...]]],
    locus_ids: Sequence[int],
    locus: int,
) -> bool:
    """Combinatorial essentiality of a locus in a glued closed surface.

    Cut the surface along the locus: a non-separating circle is essential;
    a separating one is essential iff neither side is a disk (Euler
    characteristic 1).
    """
    others = [l for l in locus_ids if l != locus]
    comps = _components(pieces, others)
    holders = [idx for idx, (_, loci) in enumerate(pieces) if locus in loci]
    if len(holders) != 2:
        raise ValueError("locus %d does not glue exactly two pieces" % locus)
    side_a = next(c for c in comps if holders[0] in c)
    if holders[1] in side_a:
        return True
    side_b = next(c for c in comps if holders[1] in c)
    for side in (side_a, side_b):
        if sum(euler_char(pieces[idx][0]) for idx in side) == 1:
            return False
    return True


def locus_essential(d: Decomposition, i: int, locus: int) -> bool:
    pieces, locus_ids = _boundary_pieces(d, i)
    return locus_essential_on_boundary(pieces, locus_ids, locus)


# --------------------------------------------------------------------------
# Validation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...]
    warnings: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> Tuple[str, ...]:
        return tuple(v.code for v in self.violations)


def validate(d: Decomposition) -> ValidationReport:
    """Report every violated decomposition invariant (empty report = valid).

    Besides the structural invariants (branch counts, the Euler identity for
    each patch, the gluing identity for each boundary, one circle per locus
    per patch, connected boundaries), this flags the paper-level prune: a
    disk component of a multi-component patch whose boundary locus is tagged
    inessential on the third handlebody certifies an S^2 x S^1 summand, which
    no sphere or lens target has.
    """
    bad: List[Violation] = []
    warnings: List[str] = []

    ids = d.locus_ids()
    if len(set(ids)) != len(ids):
        bad.append(Violation("duplicate_locus", "branched locus ids repeat"))
    if d.branch_count < 1:
        bad.append(Violation("no_loci", "a decomposition has at least one locus"))
    if any(g < 0 for g in d.genera):
        bad.append(Violation("bad_genera", "negative genus"))

    # Curve-class sanity.
    for loc in d.loci:
        for h in (1, 2, 3):
            cls = loc.classes[h - 1]
            if cls is None:
                continue
            if d.genera[h - 1] == 0 and (cls.essential or cls.meridian != 0):
                bad.append(
                    Violation(
                        "class_on_sphere",
                        "locus %d is tagged essential on the genus-0 "
                        "boundary of H%d (every circle on S^2 bounds)"
                        % (loc.id, h),
                    )
                )

    # Incidence: each patch carries each locus on exactly one circle.
    incidence_ok = True
    b = d.branch_count
    for key, (i, j), patch in zip(PAIR_KEYS, PAIRS, d.patches):
        count = sum(p.surface.boundary_count for p in patch)
        if count != b:
            incidence_ok = False
            bad.append(
                Violation(
                    "boundary_count",
                    "%s has %d boundary circles but there are %d loci"
                    % (key, count, b),
                )
            )
        seen: Dict[int, int] = {}
        for p in patch:
            for l in p.loci:
                seen[l] = seen.get(l, 0) + 1
        if set(seen) != set(ids) or any(v != 1 for v in seen.values()):
            incidence_ok = False
            bad.append(
                Violation(
                    "locus_incidence",
                    "%s does not meet every locus exactly once" % key,
                )
            )
        for p in patch:
            if p.surface.genus > min(d.genera[i - 1], d.genera[j - 1]):
                bad.append(
                    Violation(
                        "piece_genus",
                        "a genus-%d piece of %s cannot embed in a genus-%d "
                        "boundary"
                        % (
                            p.surface.genus,
                            key,
                            min(d.genera[i - 1], d.genera[j - 1]),
                        ),
                    )
                )

    # Euler identities.
    expected = euler_lemma_expected(d.genera)
    for key, patch, want in zip(PAIR_KEYS, d.patches, expected):
        have = sum(euler_char(p.surface) for p in patch)
        if have != want:
            bad.append(
                Violation(
                    "euler_lemma",
                    "chi(%s) = %d, expected %d from the genera"
                    % (key, have, want),
                )
            )
    for i in (1, 2, 3):
        others = [j for j in (1, 2, 3) if j != i]
        have = sum(
            euler_char(p.surface)
            for j in others
            for p in d.patch(i, j)
        )
        if have != 2 - 2 * d.genera[i - 1]:
            bad.append(
                Violation(
                    "handlebody_gluing",
                    "chi of the two patches on dH%d is %d, expected %d"
                    % (i, have, 2 - 2 * d.genera[i - 1]),
                )
            )

    if incidence_ok:
        for i in (1, 2, 3):
            if not boundary_connected(d, i):
                bad.append(
                    Violation(
                        "boundary_disconnected",
                        "the patches on dH%d do not glue to a connected "
                        "surface" % i,
                    )
                )

        # Paper-level prune: disk in a multi-component patch, inessential on
        # the third side.
        for (i, j), patch in zip(PAIRS, d.patches):
            if len(patch) < 2:
                continue
            k = third_handlebody(i, j)
            for p in patch:
                if p.surface != DISK:
                    continue
                cls = d.curve_class(p.loci[0], k)
                if cls is None:
                    warnings.append(
                        "cannot evaluate the disk prune for locus %d on dH%d "
                        "(tag unknown)" % (p.loci[0], k)
                    )
                elif not cls.essential:
                    bad.append(
                        Violation(
                            "lemma2_disk_prune",
                            "disk of F%d%d with locus %d inessential on dH%d "
                            "certifies an S^2 x S^1 summand" % (i, j, p.loci[0], k),
                        )
                    )

    return ValidationReport(tuple(bad), tuple(warnings))


# --------------------------------------------------------------------------
# Canonical form (equality up to relabeling loci / handlebodies)
# --------------------------------------------------------------------------


def _permute_genera(genera, perm):
    return tuple(genera[perm[k] - 1] for k in range(3))


def _permuted_pair_sources(perm):
    """For each new patch slot, the old pair it comes from."""
    return [tuple(sorted((perm[i - 1], perm[j - 1]))) for i, j in PAIRS]


def _encode(d: Decomposition, perm, locus_map, with_classes: bool):
    genera = _permute_genera(d.genera, perm)
    patch_codes = []
    for src in _permuted_pair_sources(perm):
        patch = d.patch(*src)
        codes = tuple(
            sorted(
                (
                    p.surface.genus,
                    p.surface.boundary_count,
                    tuple(sorted(locus_map[l] for l in p.loci)),
                )
                for p in patch
            )
        )
        patch_codes.append(codes)
    class_codes = None
    if with_classes:
        rows = []
        inverse = {new: old for old, new in locus_map.items()}
        for new_id in range(d.branch_count):
            loc = d.locus(inverse[new_id])
            row = tuple(
                (
                    None
                    if loc.classes[perm[h] - 1] is None
                    else (
                        loc.classes[perm[h] - 1].essential,
                        loc.classes[perm[h] - 1].meridian,
                    )
                )
                for h in range(3)
            )
            rows.append(row)
        class_codes = tuple(rows)
    return (genera, tuple(patch_codes), class_codes)


def canonical_transform(
    d: Decomposition,
    relabel_handlebodies: bool = False,
    with_classes: bool = True,
):
    """The minimal encoding of d over relabelings, with the maps achieving it.

    Returns (key, perm, locus_map) where perm sends new handlebody slots to
    old ones and locus_map sends old locus ids to 0..b-1.  Feasible for small
    branch counts (all classified cases have b <= 4).
    """
    if d.branch_count > 8:
        raise ValueError("canonical form is only computed for b <= 8")
    perms = list(itertools.permutations((1, 2, 3))) if relabel_handlebodies else [(1, 2, 3)]
    best = None
    ids = d.locus_ids()
    for perm in perms:
        for assignment in itertools.permutations(range(len(ids))):
            locus_map = dict(zip(ids, assignment))
            key = _encode(d, perm, locus_map, with_classes)
            if best is None or key < best[0]:
                best = (key, perm, locus_map)
    return best


def canonical_key(
    d: Decomposition,
    relabel_handlebodies: bool = False,
    with_classes: bool = True,
):
    return canonical_transform(d, relabel_handlebodies, with_classes)[0]


def isomorphic(
    a: Decomposition, b: Decomposition, relabel_handlebodies: bool = False
) -> bool:
    """Structural equality up to locus (and optionally handlebody) relabeling,
    ignoring curve-class tags."""
    if a.manifold != b.manifold:
        return False
    return canonical_key(a, relabel_handlebodies, with_classes=False) == canonical_key(
        b, relabel_handlebodies, with_classes=False
    )


# --------------------------------------------------------------------------
# The theorem case table
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TheoremCase:
    """One case of the classification, in the paper's normalized labeling."""

    genera: Tuple[int, int, int]
    number: int
    b: int
    profile: Tuple[Tuple[SurfacePiece, ...], ...]
    rp2_only: bool = False  # the extra L(4,1) Seifert case

    @property
    def key(self) -> Tuple[Tuple[int, int, int], int]:
        return (self.genera, self.number)


def _prof(*patches):
    return tuple(tuple(sorted(p)) for p in patches)


CASE_TABLE: Dict[Tuple[int, int, int], Tuple[TheoremCase, ...]] = {
    (0, 0, 0): (
        TheoremCase((0, 0, 0), 1, 1, _prof([DISK], [DISK], [DISK])),
    ),
    (0, 0, 1): (
        TheoremCase((0, 0, 1), 1, 2, _prof([DISK, DISK], [ANNULUS], [ANNULUS])),
    ),
    (0, 1, 1): (
        TheoremCase((0, 1, 1), 1, 1, _prof([DISK], [DISK], [PUNCTURED_TORUS])),
        TheoremCase(
            (0, 1, 1), 2, 3, _prof([DISK, ANNULUS], [DISK, ANNULUS], [PANTS])
        ),
    ),
    (1, 1, 1): (
        TheoremCase((1, 1, 1), 1, 2, _prof([ANNULUS], [ANNULUS], [ANNULUS])),
        TheoremCase(
            (1, 1, 1), 2, 2, _prof([DISK, PUNCTURED_TORUS], [ANNULUS], [ANNULUS])
        ),
        TheoremCase(
            (1, 1, 1),
            3,
            4,
            _prof([DISK, PANTS], [ANNULUS, ANNULUS], [ANNULUS, ANNULUS]),
        ),
        TheoremCase(
            (1, 1, 1),
            4,
            4,
            _prof([ANNULUS, ANNULUS], [DISK, PANTS], [DISK, PANTS]),
        ),
        TheoremCase(
            (1, 1, 1), 5, 4, _prof([DISK, PANTS], [DISK, PANTS], [DISK, PANTS])
        ),
        TheoremCase(
            (1, 1, 1),
            6,
            4,
            _prof(
                [ANNULUS, ANNULUS], [ANNULUS, ANNULUS], [ANNULUS, ANNULUS]
            ),
            rp2_only=True,
        ),
    ),
}


def _permute_profile(profile, perm):
    out = []
    for src in _permuted_pair_sources(perm):
        out.append(profile[pair_index(*src)])
    return tuple(out)


def match_case(
    genera: Sequence[int],
    profile: Tuple[Tuple[SurfacePiece, ...], ...],
    b: int,
) -> Optional[Tuple[TheoremCase, Tuple[int, int, int]]]:
    """Match a labeled profile against the theorem table, up to relabeling.

    Returns (case, perm) where perm carries the input labeling to the
    paper's normalized one, or None if unmatched.
    """
    genera = tuple(genera)
    table = CASE_TABLE.get(tuple(sorted(genera)), ())
    for case in table:
        if case.b != b:
            continue
        for perm in itertools.permutations((1, 2, 3)):
            if _permute_genera(genera, perm) != case.genera:
                continue
            if _permute_profile(profile, perm) == case.profile:
                return case, perm
    return None


def case_of(d: Decomposition) -> Optional[TheoremCase]:
    """The theorem case a decomposition realizes, or None."""
    hit = match_case(d.genera, d.profile(), d.branch_count)
    return hit[0] if hit else None


# --------------------------------------------------------------------------
# Profile enumeration with named pruning rules
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EnumeratedProfile:
    """A surviving profile.

    ``profile`` is kept in the input genera's labeling; ``normalized``
    carries the same profile permuted into the matched case's labeling (and
    equals ``profile`` for unmatched survivors).
    """

    b: int
    profile: Tuple[Tuple[SurfacePiece, ...], ...]
    case: Optional[TheoremCase]
    normalized: Tuple[Tuple[SurfacePiece, ...], ...] = ()
    rp2_only: bool = False


@dataclass(frozen=True)
class PrunedProfile:
    b: int
    profile: Tuple[Tuple[SurfacePiece, ...], ...]
    rule: str


@dataclass(frozen=True)
class EnumerationResult:
    survivors: Tuple[EnumeratedProfile, ...]
    pruned: Tuple[PrunedProfile, ...] = ()


@lru_cache(maxsize=None)
def _pieces_upto(bmax: int) -> Tuple[SurfacePiece, ...]:
    out = []
    for g in (0, 1):
        for c in range(1, bmax + 1):
            out.append(SurfacePiece(g, c))
    return tuple(out)


@lru_cache(maxsize=None)
def _patch_multisets(chi: int, b: int) -> Tuple[Tuple[SurfacePiece, ...], ...]:
    """All multisets of pieces (genus <= 1) with the given total Euler
    characteristic and total boundary count."""
    pieces = _pieces_upto(b)

    out = []

    def rec(start: int, chi_left: int, b_left: int, acc: List[SurfacePiece]):
        if b_left == 0:
            if chi_left == 0 and acc:
                out.append(tuple(acc))
            return
        for idx in range(start, len(pieces)):
            p = pieces[idx]
            if p.boundary_count > b_left:
                continue
            rec(idx, chi_left - euler_char(p), b_left - p.boundary_count, acc + [p])

    rec(0, chi, b, [])
    return tuple(sorted(out))


def _profile_level_rule(genera, profile) -> Optional[str]:
    """The cheap per-patch prunes; returns the violated rule name or None."""
    for (i, j), patch in zip(PAIRS, profile):
        k = third_handlebody(i, j)
        disks = sum(1 for p in patch if p == DISK)
        annuli = sum(1 for p in patch if p == ANNULUS)
        if (
            tuple(sorted(genera)) == (0, 1, 1)
            and genera[i - 1] == 1
            and genera[j - 1] == 1
            and disks
        ):
            return "no_disk_in_F23_for_011"
        if len(patch) >= 2 and disks and genera[k - 1] == 0:
            return "lemma2_disk_prune"
        if disks >= 2 and len(patch) >= 3:
            return "at_most_one_disk"
        if annuli >= 3:
            return "at_most_two_annuli"
    return None


def _patch_assignments(patch, loci) -> List[Tuple[Tuple[int, ...], ...]]:
    """All ways to wire the patch's boundary circles to the loci, one circle
    per locus, up to reordering circles within a piece."""
    sizes = [p.boundary_count for p in patch]
    seen = set()
    out = []
    for perm in itertools.permutations(loci):
        blocks = []
        pos = 0
        for size in sizes:
            blocks.append(tuple(sorted(perm[pos : pos + size])))
            pos += size
        key = tuple(sorted(zip(patch, blocks)))
        if key in seen:
            continue
        seen.add(key)
        out.append(tuple(blocks))
    return out


def _canonical_first_assignment(patch, loci):
    """One fixed wiring for the first patch: loci in order, block by block."""
    blocks = []
    pos = 0
    for p in patch:
        blocks.append(tuple(loci[pos : pos + p.boundary_count]))
        pos += p.boundary_count
    return (tuple(blocks),)


def _boundary_data(patch_a, asg_a, patch_b, asg_b):
    return [
        (piece, block) for piece, block in zip(patch_a, asg_a)
    ] + [(piece, block) for piece, block in zip(patch_b, asg_b)]


def _connected(pieces_with_loci, loci) -> bool:
    try:
        return len(_components(pieces_with_loci, loci)) == 1
    except ValueError:
        return False


def _profile_key(genera, profile, b):
    """Canonical form of a labeled profile under genera-preserving
    relabelings."""
    best = None
    for perm in itertools.permutations((1, 2, 3)):
        if _permute_genera(genera, perm) != tuple(genera):
            continue
        key = _permute_profile(profile, perm)
        if best is None or key < best:
            best = key
    return (b, best)


@lru_cache(maxsize=None)
def _surviving_set(genera: Tuple[int, int, int], bmax: int) -> FrozenSet:
    """Canonical (b, profile) keys of all survivors, manifold gates aside."""
    result = _enumerate_core(genera, bmax)
    keys = set()
    for surv in result.survivors:
        keys.add(_profile_key(genera, surv.profile, surv.b))
    return frozenset(keys)


def _disk_rules_pass(genera, profile, b, asgs) -> Optional[str]:
    """Incidence-level disk rules for one full wiring.

    For every disk component, combinatorial essentiality of its locus on the
    third boundary is determined by the wiring.  Inessential loci on disks of
    multi-component patches certify S^2 x S^1 summands; essential ones must
    be non-meridional, and then capping off the 2-handle must land on a
    surviving profile one locus down.
    """
    for pidx, ((i, j), patch) in enumerate(zip(PAIRS, profile)):
        k = third_handlebody(i, j)
        others = [x for x in (1, 2, 3) if x != k]
        ka = pair_index(k, others[0])
        kb = pair_index(k, others[1])
        boundary = _boundary_data(profile[ka], asgs[ka], profile[kb], asgs[kb])
        for piece, block in zip(patch, asgs[pidx]):
            if piece != DISK:
                continue
            locus = block[0]
            try:
                ess = locus_essential_on_boundary(boundary, range(b), locus)
            except ValueError:
                return "boundary_disconnected"
            if not ess:
                if len(patch) >= 2:
                    return "lemma2_disk_prune"
                continue
            # Essential: the 2-handle reduction must be available and must
            # land on a profile that itself survives.
            if b - 1 < 1:
                return "meridional_disk_bound"
            reduced_genera = tuple(
                0 if h == k else genera[h - 1] for h in (1, 2, 3)
            )
            reduced = []
            ok = True
            for qidx, (qpair, qpatch) in enumerate(zip(PAIRS, profile)):
                new_patch = []
                for qpiece, qblock in zip(qpatch, asgs[qidx]):
                    if qidx == pidx and qblock == block and qpiece == DISK:
                        continue  # the reduced disk disappears
                    if locus in qblock:
                        if qpiece.boundary_count == 1:
                            ok = False  # capping would close the piece
                            break
                        new_patch.append(
                            SurfacePiece(qpiece.genus, qpiece.boundary_count - 1)
                        )
                    else:
                        new_patch.append(qpiece)
                if not ok:
                    break
                reduced.append(tuple(sorted(new_patch)))
            if not ok:
                return "meridional_disk_bound"
            key = _profile_key(reduced_genera, tuple(reduced), b - 1)
            if key not in _surviving_set(reduced_genera, max(b - 1, 4)):
                return "meridional_disk_bound"
    return None


def _incidence_rule(genera, profile, b) -> Optional[str]:
    """Search for a wiring of circles to loci realizing the profile.

    Some wiring must make all three boundary surfaces connected and satisfy
    the disk rules; otherwise the profile is pruned with the name of the
    obstruction seen on the most-connected attempts.
    """
    loci = tuple(range(b))
    first = _canonical_first_assignment(profile[0], loci)
    nested = [_patch_assignments(profile[1], loci), _patch_assignments(profile[2], loci)]
    last_verdict = None
    for asg12 in first:
        for asg13 in nested[0]:
            bd1 = _boundary_data(profile[0], asg12, profile[1], asg13)
            if not _connected(bd1, loci):
                continue
            for asg23 in nested[1]:
                bd2 = _boundary_data(profile[0], asg12, profile[2], asg23)
                if not _connected(bd2, loci):
                    continue
                bd3 = _boundary_data(profile[1], asg13, profile[2], asg23)
                if not _connected(bd3, loci):
                    continue
                verdict = _disk_rules_pass(genera, profile, b, (asg12, asg13, asg23))
                if verdict is None:
                    return None
                last_verdict = verdict
    return last_verdict or "boundary_disconnected"


def _enumerate_core(genera: Tuple[int, int, int], bmax: int) -> EnumerationResult:
    """Manifold-independent sieve; RP^2 Seifert profiles are only marked."""
    chi = euler_lemma_expected(genera)
    survivors: List[EnumeratedProfile] = []
    pruned: List[PrunedProfile] = []
    seen_keys = set()
    for b in range(1, bmax + 1):
        options = [_patch_multisets(c, b) for c in chi]
        for profile in itertools.product(*options):
            rule = _profile_level_rule(genera, profile)
            all_annuli = all(
                p == ANNULUS for patch in profile for p in patch
            )
            rp2_only = False
            if rule is None and all_annuli and b == 4:
                rp2_only = True
            if rule is None and all_annuli and b >= 6:
                rule = "at_most_two_annuli"
            if rule is None:
                rule = _incidence_rule(genera, profile, b)
            if rule is not None:
                pruned.append(PrunedProfile(b, profile, rule))
                continue
            key = _profile_key(genera, profile, b)
            if key in seen_keys:
                continue  # a relabeling of an already-listed survivor
            seen_keys.add(key)
            hit = match_case(genera, profile, b)
            if hit is not None:
                case, perm = hit
                survivors.append(
                    EnumeratedProfile(
                        b, profile, case, _permute_profile(profile, perm), rp2_only
                    )
                )
            else:
                survivors.append(EnumeratedProfile(b, profile, None, profile, rp2_only))
    survivors.sort(key=lambda s: (s.b, s.normalized))
    return EnumerationResult(tuple(survivors), tuple(pruned))


def enumerate_profiles(
    m: ManifoldForm,
    genera: Sequence[int],
    max_loci: int,
    explain: bool = False,
) -> EnumerationResult:
    """All profiles a type-(g1,g2,g3) decomposition of m can realize.

    Enumerates every triple of patch multisets consistent with the Euler
    identities at each branch count up to max_loci, prunes with the named
    rules, and annotates each survivor with the theorem case it matches.
    The all-annuli four-locus profile survives only for L(4,1), the one
    lens space fibering over RP^2.
    """
    genera = tuple(genera)
    if any(g not in (0, 1) for g in genera):
        raise OutOfRange("enumeration covers genera with components 0 or 1")
    if max_loci < 1:
        raise ValueError("max_loci must be >= 1")
    if not admits_decomposition(m, genera):
        pruned = ()
        if explain:
            core = _enumerate_core(genera, max_loci)
            pruned = tuple(
                PrunedProfile(s.b, s.profile, "gth_admissibility")
                for s in core.survivors
            ) + core.pruned
        return EnumerationResult((), pruned)

    core = _enumerate_core(genera, max_loci)
    survivors = []
    pruned = list(core.pruned) if explain else []
    for surv in core.survivors:
        if surv.rp2_only and not admits_seifert_over_rp2(m):
            if explain:
                pruned.append(
                    PrunedProfile(surv.b, surv.profile, "seifert_rp2_gate")
                )
            continue
        survivors.append(surv)
    return EnumerationResult(tuple(survivors), tuple(pruned) if explain else ())


# --------------------------------------------------------------------------
# Disk reduction (2-handle transfer)
# --------------------------------------------------------------------------


def reduce_along_disk(
    d: Decomposition, pair: Tuple[int, int], disk_id: int
) -> Tuple[Decomposition, ManifoldForm]:
    """Transfer the 2-handle over a disk component of F_ij to the genus-one
    handlebody H_k and cap off.

    The disk's boundary locus must be tagged essential and non-meridional on
    dH_k.  Returns the type-(g_i, g_j, 0; b-1) decomposition together with
    the capped-off summand: the whole manifold when the locus runs p times
    around (the complement is then a 3-sphere), or a trivial S^3 summand
    when it runs once.
    """
    i, j = sorted(pair)
    k = third_handlebody(i, j)
    patch = d.patch(i, j)
    if not (0 <= disk_id < len(patch)):
        raise NotADisk("F%d%d has no component %d" % (i, j, disk_id))
    piece = patch[disk_id]
    if piece.surface != DISK:
        raise NotADisk(
            "component %d of F%d%d is %s, not a disk"
            % (disk_id, i, j, canonical_name(piece.surface))
        )
    if d.genera[k - 1] != 1:
        raise WrongGenus("dH%d has genus %d, reduction needs a solid torus" % (k, d.genera[k - 1]))
    locus = piece.loci[0]
    cls = d.curve_class(locus, k)
    if cls is None:
        raise NotEssential("curve class of locus %d on dH%d is unknown" % (locus, k))
    if not cls.essential:
        raise NotEssential("locus %d bounds a disk in dH%d" % (locus, k))
    if cls.meridian == 0:
        raise NotEssential(
            "locus %d is meridional on dH%d (the capped summand would be "
            "S^2 x S^1)" % (locus, k)
        )

    if cls.meridian == 1:
        summand = SPHERE3
        remaining = d.manifold
    elif not d.manifold.is_sphere and cls.meridian == d.manifold.p:
        summand = d.manifold
        remaining = SPHERE3
    else:
        raise DecompError(
            "meridian count %d matches neither a trivial summand nor the "
            "whole of %s" % (cls.meridian, d.manifold)
        )

    new_patches: List[Patch] = []
    for (a, c), old in zip(PAIRS, d.patches):
        pieces: List[PatchPiece] = []
        for idx, p in enumerate(old):
            if (a, c) == (i, j) and idx == disk_id:
                continue
            if locus in p.loci:
                if p.surface.boundary_count == 1:
                    raise DecompError(
                        "capping locus %d would close a component of F%d%d"
                        % (locus, a, c)
                    )
                pieces.append(
                    PatchPiece(
                        SurfacePiece(p.surface.genus, p.surface.boundary_count - 1),
                        tuple(l for l in p.loci if l != locus),
                    )
                )
            else:
                pieces.append(p)
        new_patches.append(tuple(pieces))

    new_loci = []
    for loc in d.loci:
        if loc.id == locus:
            continue
        classes = list(loc.classes)
        classes[k - 1] = CurveClass(False, 0)
        new_loci.append(BranchedLocus(loc.id, tuple(classes)))

    genera = tuple(0 if h == k else d.genera[h - 1] for h in (1, 2, 3))
    reduced = Decomposition(remaining, genera, tuple(new_patches), tuple(new_loci))
    return reduced, summand
