"""Isotopy-class counts for the classified decompositions.

Two backends compute the number of ambient isotopy classes of the branched
surface for each classified (manifold, genera, case):

* the theorem backend transcribes the classification tables directly;
* the derived backend recomputes each count from the embedding-class lemmas:
  a sum over Heegaard-role subcases of base embedding counts, halved when the
  two base classes are swapped by a hyperelliptic involution the manifold
  realizes, and doubled when the two sides of the splitting cannot be swapped
  (the core-isotopy criterion fails).

The two backends agree everywhere except one known internal discrepancy of
the source tables: genera (1,1,1) case 2 on L(p,q) with p != 2 and
q not in {1, p-1}, where the table says 4 and the lemma chain gives 3.
The audit reports that disagreement rather than adjudicating it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .decomp import CASE_TABLE, Decomposition, TheoremCase, case_of
from .lens import (
    ManifoldForm,
    admits_seifert_over_rp2,
    canonical,
    core_isotopy_criterion,
    hyperelliptic_realizable,
)
from .surfaces import (
    ANNULUS,
    DISK,
    PANTS,
    PUNCTURED_TORUS,
    SurfacePiece,
    canonical_name,
)


class UnknownPattern(ValueError):
    """The embedding data matches none of the tabulated patterns."""


class UnclassifiedCase(ValueError):
    """No isotopy-class count is on record for this case."""


# --------------------------------------------------------------------------
# Embedding patterns and their class counts
# --------------------------------------------------------------------------

ANN_IN_BALL = "ANN_IN_BALL"
DISK_ANN = "DISK_ANN"
TWO_ANN_DP2 = "TWO_ANN_DP2"
TWO_ANN_DPAA = "TWO_ANN_DPAA"
PANTS_IN_BALL = "PANTS_IN_BALL"
T_IN_BALL = "T_IN_BALL"
DP_DPAA = "DP_DPAA"
DP_4A = "DP_4A"
DP_CROSS = "DP_CROSS"

# Tag -> (isotopy classes of the embedding, swapped by the hyperelliptic
# involution of the container).
EMBEDDING_CLASSES: Dict[str, Tuple[int, bool]] = {
    ANN_IN_BALL: (1, False),
    DISK_ANN: (2, True),
    TWO_ANN_DP2: (2, True),
    TWO_ANN_DPAA: (2, True),
    PANTS_IN_BALL: (1, False),
    T_IN_BALL: (1, False),
    DP_DPAA: (2, True),
    DP_4A: (1, False),
    DP_CROSS: (1, False),
}

# (container, embedded pieces, complement regions on the boundary) is a
# complete signature for the nine tabulated patterns.
_SIGNATURES: Dict[Tuple[str, Tuple[SurfacePiece, ...], Tuple[SurfacePiece, ...]], str] = {
    ("ball", (ANNULUS,), tuple(sorted((DISK, DISK, ANNULUS)))): ANN_IN_BALL,
    (
        "solid_torus",
        tuple(sorted((DISK, ANNULUS))),
        tuple(sorted((DISK, ANNULUS, PANTS))),
    ): DISK_ANN,
    (
        "solid_torus",
        (ANNULUS, ANNULUS),
        tuple(sorted((DISK, DISK, PANTS, PANTS))),
    ): TWO_ANN_DP2,
    (
        "solid_torus",
        (ANNULUS, ANNULUS),
        tuple(sorted((DISK, PANTS, ANNULUS, ANNULUS))),
    ): TWO_ANN_DPAA,
    ("ball", (PANTS,), tuple(sorted((DISK, DISK, ANNULUS, ANNULUS)))): PANTS_IN_BALL,
    ("ball", (PUNCTURED_TORUS,), (DISK, DISK)): T_IN_BALL,
    (
        "solid_torus",
        tuple(sorted((DISK, PANTS))),
        tuple(sorted((DISK, PANTS, ANNULUS, ANNULUS))),
    ): DP_DPAA,
    (
        "solid_torus",
        tuple(sorted((DISK, PANTS))),
        (ANNULUS, ANNULUS, ANNULUS, ANNULUS),
    ): DP_4A,
    (
        "solid_torus",
        tuple(sorted((DISK, PANTS))),
        tuple(sorted((DISK, DISK, PANTS, PANTS))),
    ): DP_CROSS,
}


@dataclass(frozen=True)
class EmbeddingPattern:
    """A surface properly embedded in a ball or solid torus, cutting it into
    two handlebodies, keyed by the pattern its boundary cuts on the container
    boundary."""

    container: str  # "ball" or "solid_torus"
    pieces: Tuple[SurfacePiece, ...]
    regions: Tuple[SurfacePiece, ...]

    def boundary_pattern(self) -> str:
        key = (self.container, tuple(sorted(self.pieces)), tuple(sorted(self.regions)))
        try:
            return _SIGNATURES[key]
        except KeyError:
            raise UnknownPattern(
                "no tabulated pattern for %s in a %s with regions %s"
                % (
                    "+".join(canonical_name(p) for p in self.pieces),
                    self.container,
                    "+".join(canonical_name(p) for p in self.regions),
                )
            )


def embedding_class_count(pattern) -> Tuple[int, bool]:
    """(class count, hyperelliptic swap flag) for a pattern or its tag."""
    if isinstance(pattern, EmbeddingPattern):
        tag = pattern.boundary_pattern()
    else:
        tag = pattern
    try:
        return EMBEDDING_CLASSES[tag]
    except KeyError:
        raise UnknownPattern("unknown pattern tag %r" % (tag,))


def pattern_to_json(p: EmbeddingPattern) -> dict:
    return {
        "schema": "handle3/1",
        "container": p.container,
        "pieces": [
            {"genus": s.genus, "boundary": s.boundary_count} for s in p.pieces
        ],
        "regions": [
            {"genus": s.genus, "boundary": s.boundary_count} for s in p.regions
        ],
    }


def pattern_from_json(obj: dict) -> EmbeddingPattern:
    return EmbeddingPattern(
        obj["container"],
        tuple(
            SurfacePiece(r["genus"], r["boundary"]) for r in obj["pieces"]
        ),
        tuple(
            SurfacePiece(r["genus"], r["boundary"]) for r in obj["regions"]
        ),
    )


# --------------------------------------------------------------------------
# Case identifiers
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CaseId:
    """A case of the classification, in normalized (sorted-genera) labeling."""

    genera: Tuple[int, int, int]
    case_number: int

    def __post_init__(self) -> None:
        genera = tuple(sorted(self.genera))
        object.__setattr__(self, "genera", genera)
        table = CASE_TABLE.get(genera)
        if table is None or not any(c.number == self.case_number for c in table):
            raise ValueError(
                "no case %d for genera %s" % (self.case_number, (genera,))
            )


def case_id_of(d: Decomposition) -> Optional[CaseId]:
    case = case_of(d)
    if case is None:
        return None
    return CaseId(case.genera, case.number)


# Cases with an isotopy-class count on record.
CLASSIFIED: Tuple[CaseId, ...] = (
    CaseId((0, 0, 1), 1),
    CaseId((0, 1, 1), 1),
    CaseId((0, 1, 1), 2),
    CaseId((1, 1, 1), 2),
    CaseId((1, 1, 1), 3),
    CaseId((1, 1, 1), 4),
    CaseId((1, 1, 1), 5),
)


def classified_cases(m: ManifoldForm) -> Tuple[CaseId, ...]:
    return CLASSIFIED


# --------------------------------------------------------------------------
# Heegaard roles
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HeegaardRoleReport:
    """Which handlebody boundaries are genus-one Heegaard surfaces.

    ``quantifier`` is one of "all", "both", "exactly_one", "at_most_two";
    ``candidates`` names the handlebodies it ranges over.
    """

    quantifier: str
    candidates: Tuple[int, ...]


def heegaard_roles(m: ManifoldForm, c: CaseId) -> HeegaardRoleReport:
    """Heegaard-surface roles for the cases of the two splitting lemmas.

    Genera (0,1,1): case 1 makes both torus boundaries Heegaard surfaces for
    every target; case 2 makes both Heegaard for the sphere but exactly one
    for a lens space.  Genera (1,1,1): every boundary is Heegaard for the
    sphere; for a lens space cases 3-5 have exactly one Heegaard boundary
    and case 2 at most two.  Cases 1 and 6 carry no classification.
    """
    m = canonical(m)
    if c.genera == (0, 1, 1):
        if c.case_number == 1:
            return HeegaardRoleReport("both", (2, 3))
        if m.is_sphere:
            return HeegaardRoleReport("both", (2, 3))
        return HeegaardRoleReport("exactly_one", (2, 3))
    if c.genera == (1, 1, 1):
        if c.case_number in (1, 6):
            raise UnclassifiedCase(
                "no Heegaard-role statement for (1,1,1) case %d" % c.case_number
            )
        if m.is_sphere:
            return HeegaardRoleReport("all", (1, 2, 3))
        if c.case_number == 2:
            return HeegaardRoleReport("at_most_two", (1, 2, 3))
        return HeegaardRoleReport("exactly_one", (1, 2, 3))
    raise UnclassifiedCase("no Heegaard-role statement for genera %s" % (c.genera,))


# --------------------------------------------------------------------------
# Isotopy-class counts
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassCount:
    count: int
    backend: str
    discrepancy_flag: bool


def _theorem_count(m: ManifoldForm, c: CaseId) -> int:
    crit = core_isotopy_criterion(m)
    easy = m.is_sphere or m.p == 2
    genera, n = c.genera, c.case_number
    if genera == (0, 0, 1):
        return 1 if crit else 2
    if genera == (0, 1, 1):
        if n == 1:
            return 1
        return 1 if easy else (2 if crit else 4)
    if genera == (1, 1, 1):
        if n in (1, 6):
            raise UnclassifiedCase("no class count for (1,1,1) case %d" % n)
        if m.is_sphere:
            return 1
        if m.p == 2:
            return {2: 2, 3: 2, 4: 2, 5: 1}[n]
        doubled = {2: (2, 4), 3: (3, 6), 4: (4, 8), 5: (1, 2)}[n]
        return doubled[0] if crit else doubled[1]
    raise UnclassifiedCase("no class count for genera %s" % (genera,))


# Derived-backend subcase table, transcribed from the classification
# propositions.  Each subcase is (pattern tag or None for a unique base
# embedding, whether exchanging the two splitting solid tori multiplies the
# count when the cores are not isotopic).
_Subcase = Tuple[Optional[str], bool]

_DERIVED_SUBCASES: Dict[Tuple[str, Tuple[int, int, int], int], Tuple[_Subcase, ...]] = {
    ("sphere3", (0, 0, 1), 1): ((None, True),),
    ("lens", (0, 0, 1), 1): ((None, True),),
    ("sphere3", (0, 1, 1), 1): ((None, False),),
    ("lens", (0, 1, 1), 1): ((None, False),),
    ("sphere3", (0, 1, 1), 2): ((DISK_ANN, True),),
    ("lens", (0, 1, 1), 2): ((DISK_ANN, True),),
    ("sphere3", (1, 1, 1), 2): ((None, False),),
    ("lens", (1, 1, 1), 2): ((None, False), (DP_4A, True)),
    ("sphere3", (1, 1, 1), 3): ((DP_4A, True),),
    ("lens", (1, 1, 1), 3): ((TWO_ANN_DPAA, True), (DP_4A, True)),
    ("sphere3", (1, 1, 1), 4): ((DP_DPAA, True),),
    ("lens", (1, 1, 1), 4): ((DP_DPAA, True), (TWO_ANN_DP2, True)),
    ("sphere3", (1, 1, 1), 5): ((DP_CROSS, True),),
    ("lens", (1, 1, 1), 5): ((DP_CROSS, True),),
}


def _derived_count(m: ManifoldForm, c: CaseId) -> int:
    """Recompute a class count from the embedding lemmas.

    Per Heegaard-role subcase: the base embedding count (1 when the lemma
    chain shows uniqueness outright), halved when its two classes are
    hyperelliptic partners and the manifold realizes the involution, then
    doubled when the subcase distinguishes the two sides of the splitting
    and the cores are not isotopic.
    """
    key = (m.kind, c.genera, c.case_number)
    try:
        subcases = _DERIVED_SUBCASES[key]
    except KeyError:
        raise UnclassifiedCase(
            "no derived subcases for %s genera %s case %d"
            % (m, c.genera, c.case_number)
        )
    crit = core_isotopy_criterion(m)
    total = 0
    for tag, side_swap in subcases:
        if tag is None:
            base = 1
        else:
            base, swap = embedding_class_count(tag)
            if swap and hyperelliptic_realizable(m):
                base //= 2
        if side_swap and not crit:
            base *= 2
        total += base
    return total


def isotopy_class_count(
    m: ManifoldForm, c: CaseId, backend: str = "theorem"
) -> ClassCount:
    """Isotopy classes of the branched surface for a classified case.

    The theorem backend is canonical; the derived backend exercises the
    embedding-lemma machinery.  The discrepancy flag is set whenever the two
    disagree (which happens only at the known (1,1,1)-case-2 spot).
    """
    m = canonical(m)
    if backend not in ("theorem", "derived"):
        raise ValueError("backend is 'theorem' or 'derived', not %r" % backend)
    theorem = _theorem_count(m, c)
    derived = _derived_count(m, c)
    count = theorem if backend == "theorem" else derived
    return ClassCount(count, backend, theorem != derived)


def consistency_report(
    m: ManifoldForm,
) -> List[Tuple[CaseId, int, int]]:
    """(case, theorem count, derived count) wherever the backends disagree."""
    m = canonical(m)
    out = []
    for c in classified_cases(m):
        theorem = _theorem_count(m, c)
        derived = _derived_count(m, c)
        if theorem != derived:
            out.append((c, theorem, derived))
    return out


# --------------------------------------------------------------------------
# Seifert facts
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SeifertFacts:
    """Seifert-fibration options for the target manifold."""

    s2_base: bool
    s2_singular_fiber_bound: int
    rp2_base: bool
    rp2_singular_fiber_bound: Optional[int]
    case6_exists: bool


def seifert_case_facts(m: ManifoldForm) -> SeifertFacts:
    """Base-space options and the existence of the extra (1,1,1) case.

    Every target fibers over S^2 with at most two singular fibers; only
    L(4,1) also fibers over RP^2 (then with none), which is exactly when the
    all-annuli four-locus decomposition exists.
    """
    rp2 = admits_seifert_over_rp2(m)
    return SeifertFacts(
        s2_base=True,
        s2_singular_fiber_bound=2,
        rp2_base=rp2,
        rp2_singular_fiber_bound=0 if rp2 else None,
        case6_exists=rp2,
    )
