"""Compact orientable surface pieces and the arc-cut / band-attach calculus.

A piece is recorded purely by its homeomorphism type (genus, boundary-circle
count); both surgery operations act on that combinatorial type.  Cutting along
a properly embedded arc raises the Euler characteristic by exactly 1, attaching
an untwisted band lowers it by exactly 1, and the two operations are mutually
inverse case by case.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple


class SurgeryError(ValueError):
    """Base class for illegal surface surgeries."""


class IllegalArc(SurgeryError):
    """Arc endpoints do not lie on boundary circles of the named piece."""


class IllegalBand(SurgeryError):
    """Band feet reference missing pieces/circles, or the band is twisted."""


class InconsistentOutcome(SurgeryError):
    """The selected cut outcome violates Euler or genus bookkeeping."""


@dataclass(frozen=True, order=True)
class SurfacePiece:
    """A compact connected orientable surface with nonempty boundary."""

    genus: int
    boundary_count: int

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError("genus must be nonnegative, not %d" % self.genus)
        if self.boundary_count < 1:
            raise ValueError(
                "pieces are bounded: boundary_count must be >= 1, not %d"
                % self.boundary_count
            )


# The four pieces that carry one-letter names in low-genus decompositions.
DISK = SurfacePiece(0, 1)
ANNULUS = SurfacePiece(0, 2)
PANTS = SurfacePiece(0, 3)
PUNCTURED_TORUS = SurfacePiece(1, 1)


def euler_char(piece: SurfacePiece) -> int:
    """Euler characteristic 2 - 2g - c of a piece."""
    return 2 - 2 * piece.genus - piece.boundary_count


def total_euler(pieces: Sequence[SurfacePiece]) -> int:
    return sum(euler_char(p) for p in pieces)


def canonical_name(piece: SurfacePiece) -> str:
    """Short name: D, A, P, T* for the four standard pieces, else S(g,c)."""
    names = {
        DISK: "D",
        ANNULUS: "A",
        PANTS: "P",
        PUNCTURED_TORUS: "T*",
    }
    if piece in names:
        return names[piece]
    return "S(%d,%d)" % (piece.genus, piece.boundary_count)


class ArcOutcome(Enum):
    """Selector for an arc whose endpoints lie on one boundary circle.

    The combinatorial type of a piece cannot tell which surgery an abstract
    arc realizes, so the descriptor selects the case and the engine validates
    the Euler bookkeeping.  SPLIT_BOUNDARY and REDUCE_GENUS both name the
    connected outcome: the circle splits in two and, since chi goes up by 1,
    the genus must drop by 1 (hence both require genus >= 1).
    """

    SPLIT_BOUNDARY = "split_boundary"
    REDUCE_GENUS = "reduce_genus"
    SEPARATE_PIECE = "separate_piece"


@dataclass(frozen=True)
class ArcDescriptor:
    """A properly embedded arc in a piece, combinatorially described.

    ``endpoint_circles`` are boundary-circle indices local to the piece
    (0 .. boundary_count-1, possibly equal).  ``same_circle_outcome`` is
    consulted only when they coincide; for SEPARATE_PIECE the resulting
    (genus, boundary_count) pair of each part must be supplied in ``split``.
    """

    piece_id: int
    endpoint_circles: Tuple[int, int]
    same_circle_outcome: Optional[ArcOutcome] = None
    split: Optional[Tuple[Tuple[int, int], Tuple[int, int]]] = None


def _sorted(pieces: Sequence[SurfacePiece]) -> Tuple[SurfacePiece, ...]:
    return tuple(sorted(pieces))


def cut_along_arc(
    piece: SurfacePiece, arc: ArcDescriptor
) -> Tuple[SurfacePiece, ...]:
    """Cut a piece along a properly embedded arc.

    Exactly three cases, all with chi(new) = chi(old) + 1:

    * endpoints on distinct circles: one piece (g, c-1);
    * endpoints on one circle, non-separating arc: one piece (g-1, c+1),
      legal only for genus >= 1;
    * endpoints on one circle, separating arc: two pieces whose genera sum
      to g and whose boundary counts sum to c+1, as named by ``arc.split``.

    Returns the resulting multiset in canonical (genus, boundary) order.
    """
    a, b = arc.endpoint_circles
    c = piece.boundary_count
    if not (0 <= a < c and 0 <= b < c):
        raise IllegalArc(
            "endpoints %s not on the %d boundary circles of %s"
            % ((a, b), c, canonical_name(piece))
        )

    if a != b:
        if arc.same_circle_outcome is not None:
            raise InconsistentOutcome(
                "outcome selector is only meaningful when both endpoints "
                "lie on one circle"
            )
        return _sorted([SurfacePiece(piece.genus, c - 1)])

    outcome = arc.same_circle_outcome
    if outcome is None:
        raise InconsistentOutcome(
            "an arc with both endpoints on one circle needs an outcome "
            "selector"
        )
    if outcome in (ArcOutcome.SPLIT_BOUNDARY, ArcOutcome.REDUCE_GENUS):
        if piece.genus < 1:
            raise InconsistentOutcome(
                "the connected same-circle cut drops genus by 1; %s has "
                "genus 0" % canonical_name(piece)
            )
        return _sorted([SurfacePiece(piece.genus - 1, c + 1)])

    # SEPARATE_PIECE: the descriptor names the two parts.
    if arc.split is None:
        raise InconsistentOutcome("separate_piece requires the (g,c) split")
    (g1, c1), (g2, c2) = arc.split
    if min(g1, g2) < 0 or min(c1, c2) < 1:
        raise InconsistentOutcome("split parts %s are not surface types" % (arc.split,))
    if g1 + g2 != piece.genus or c1 + c2 != c + 1:
        raise InconsistentOutcome(
            "split %s violates Euler bookkeeping for %s"
            % (arc.split, canonical_name(piece))
        )
    return _sorted([SurfacePiece(g1, c1), SurfacePiece(g2, c2)])


@dataclass(frozen=True)
class BandDescriptor:
    """An untwisted band attached along one or two boundary feet.

    ``attach_targets`` holds one or two (piece_id, boundary_circle) pairs:
    a single pair puts both feet on that circle, two pairs put one foot on
    each.  Twisted bands are rejected outright; every manifold in scope is
    orientable and all patch surfaces are two-sided.
    """

    attach_targets: Tuple[Tuple[int, int], ...]
    twisted: bool = False


def attach_band(
    pieces: Sequence[SurfacePiece], band: BandDescriptor
) -> Tuple[SurfacePiece, ...]:
    """Attach an untwisted band to a multiset of pieces.

    Total Euler characteristic drops by exactly 1.  Both feet on one circle
    of one piece gives (g, c+1); feet on two circles of one piece gives
    (g+1, c-1); feet on circles of two pieces merges them into
    (g1+g2, c1+c2-1).  Returns the multiset in canonical order.
    """
    if band.twisted:
        raise IllegalBand("twisted bands are rejected: surfaces are orientable")
    targets = band.attach_targets
    if len(targets) not in (1, 2):
        raise IllegalBand("a band has one or two feet targets, got %d" % len(targets))

    pieces = list(pieces)
    for idx, circle in targets:
        if not (0 <= idx < len(pieces)):
            raise IllegalBand("no piece with index %d" % idx)
        if not (0 <= circle < pieces[idx].boundary_count):
            raise IllegalBand(
                "piece %d has no boundary circle %d" % (idx, circle)
            )

    if len(targets) == 1:
        idx, _ = targets[0]
        rest = [p for i, p in enumerate(pieces) if i != idx]
        hit = pieces[idx]
        return _sorted(rest + [SurfacePiece(hit.genus, hit.boundary_count + 1)])

    (i1, c1), (i2, c2) = targets
    if i1 == i2:
        if c1 == c2:
            raise IllegalBand(
                "both feet on one circle must be given as a single target"
            )
        rest = [p for i, p in enumerate(pieces) if i != i1]
        hit = pieces[i1]
        if hit.boundary_count < 2:
            raise IllegalBand("piece %d has a single boundary circle" % i1)
        return _sorted(
            rest + [SurfacePiece(hit.genus + 1, hit.boundary_count - 1)]
        )

    rest = [p for i, p in enumerate(pieces) if i not in (i1, i2)]
    p1, p2 = pieces[i1], pieces[i2]
    merged = SurfacePiece(
        p1.genus + p2.genus, p1.boundary_count + p2.boundary_count - 1
    )
    return _sorted(rest + [merged])
