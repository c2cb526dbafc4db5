"""Surface piece algebra and the cut/band surgery calculus."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from handle3.surfaces import (
    ANNULUS,
    DISK,
    PANTS,
    PUNCTURED_TORUS,
    ArcDescriptor,
    ArcOutcome,
    BandDescriptor,
    IllegalArc,
    IllegalBand,
    InconsistentOutcome,
    SurfacePiece,
    attach_band,
    canonical_name,
    cut_along_arc,
    euler_char,
    total_euler,
)


def all_pieces(max_genus=2, max_boundary=5):
    return [
        SurfacePiece(g, c)
        for g in range(max_genus + 1)
        for c in range(1, max_boundary + 1)
    ]


def legal_arcs(piece):
    """Every arc descriptor the engine accepts on one piece."""
    arcs = []
    c = piece.boundary_count
    for a, b in itertools.combinations(range(c), 2):
        arcs.append(ArcDescriptor(0, (a, b)))
    if piece.genus >= 1:
        arcs.append(ArcDescriptor(0, (0, 0), ArcOutcome.REDUCE_GENUS))
    for g1 in range(piece.genus + 1):
        for c1 in range(1, c + 1):
            g2, c2 = piece.genus - g1, c + 1 - c1
            if c2 < 1:
                continue
            arcs.append(
                ArcDescriptor(
                    0, (0, 0), ArcOutcome.SEPARATE_PIECE, ((g1, c1), (g2, c2))
                )
            )
    return arcs


def test_euler_char_values():
    assert euler_char(DISK) == 1
    assert euler_char(PANTS) == -1
    assert euler_char(PUNCTURED_TORUS) == -1
    assert euler_char(ANNULUS) == 0


def test_canonical_names():
    assert canonical_name(DISK) == "D"
    assert canonical_name(ANNULUS) == "A"
    assert canonical_name(PANTS) == "P"
    assert canonical_name(PUNCTURED_TORUS) == "T*"
    assert canonical_name(SurfacePiece(2, 5)) == "S(2,5)"


def test_piece_invariants():
    with pytest.raises(ValueError):
        SurfacePiece(-1, 1)
    with pytest.raises(ValueError):
        SurfacePiece(0, 0)


def test_cut_disk_separates_into_two_disks():
    arc = ArcDescriptor(0, (0, 0), ArcOutcome.SEPARATE_PIECE, ((0, 1), (0, 1)))
    assert cut_along_arc(DISK, arc) == (DISK, DISK)


def test_cut_annulus_spanning_arc_gives_disk():
    assert cut_along_arc(ANNULUS, ArcDescriptor(0, (0, 1))) == (DISK,)


def test_cut_punctured_torus_reduces_to_annulus():
    arc = ArcDescriptor(0, (0, 0), ArcOutcome.REDUCE_GENUS)
    assert cut_along_arc(PUNCTURED_TORUS, arc) == (ANNULUS,)
    # chi goes from -1 to 0
    assert euler_char(PUNCTURED_TORUS) + 1 == euler_char(ANNULUS)


def test_cut_errors():
    with pytest.raises(IllegalArc):
        cut_along_arc(DISK, ArcDescriptor(0, (0, 1)))
    with pytest.raises(InconsistentOutcome):
        cut_along_arc(DISK, ArcDescriptor(0, (0, 0), ArcOutcome.REDUCE_GENUS))
    with pytest.raises(InconsistentOutcome):
        cut_along_arc(DISK, ArcDescriptor(0, (0, 0)))
    with pytest.raises(InconsistentOutcome):
        cut_along_arc(
            DISK, ArcDescriptor(0, (0, 0), ArcOutcome.SEPARATE_PIECE, ((0, 1), (1, 1)))
        )
    with pytest.raises(InconsistentOutcome):
        cut_along_arc(ANNULUS, ArcDescriptor(0, (0, 1), ArcOutcome.REDUCE_GENUS))


def test_band_on_disk_gives_annulus():
    assert attach_band([DISK], BandDescriptor(((0, 0),))) == (ANNULUS,)


def test_band_across_annulus_gives_punctured_torus():
    assert attach_band([ANNULUS], BandDescriptor(((0, 0), (0, 1)))) == (
        PUNCTURED_TORUS,
    )


def test_band_merging_two_disks_gives_disk():
    assert attach_band([DISK, DISK], BandDescriptor(((0, 0), (1, 0)))) == (DISK,)
    # and cutting the disk along a separating arc returns the two disks
    arc = ArcDescriptor(0, (0, 0), ArcOutcome.SEPARATE_PIECE, ((0, 1), (0, 1)))
    assert cut_along_arc(DISK, arc) == (DISK, DISK)


def test_band_errors():
    with pytest.raises(IllegalBand):
        attach_band([DISK], BandDescriptor(((0, 0),), twisted=True))
    with pytest.raises(IllegalBand):
        attach_band([DISK], BandDescriptor(((1, 0),)))
    with pytest.raises(IllegalBand):
        attach_band([DISK], BandDescriptor(((0, 0), (0, 0))))


def test_cut_raises_euler_by_one_exhaustive():
    for piece in all_pieces():
        for arc in legal_arcs(piece):
            result = cut_along_arc(piece, arc)
            assert total_euler(result) == euler_char(piece) + 1, (piece, arc)


def test_band_lowers_euler_by_one_exhaustive():
    pieces = all_pieces()
    for piece in pieces:
        before = euler_char(piece)
        assert total_euler(attach_band([piece], BandDescriptor(((0, 0),)))) == before - 1
        if piece.boundary_count >= 2:
            band = BandDescriptor(((0, 0), (0, 1)))
            assert total_euler(attach_band([piece], band)) == before - 1
    for pa, pb in itertools.combinations_with_replacement(pieces, 2):
        band = BandDescriptor(((0, 0), (1, 0)))
        assert total_euler(attach_band([pa, pb], band)) == (
            euler_char(pa) + euler_char(pb) - 1
        )


def test_cut_then_band_round_trip_exhaustive():
    """Every legal cut is undone by the corresponding band, and conversely."""
    for piece in all_pieces():
        start = (piece,)
        for arc in legal_arcs(piece):
            cut = cut_along_arc(piece, arc)
            a, b = arc.endpoint_circles
            if a != b:
                # distinct circles merged one circle away: band both feet on it
                band = BandDescriptor(((0, 0),))
            elif arc.same_circle_outcome is ArcOutcome.REDUCE_GENUS:
                band = BandDescriptor(((0, 0), (0, 1)))
            else:
                band = BandDescriptor(((0, 0), (1, 0)))
            assert attach_band(cut, band) == start, (piece, arc)


def test_band_then_cut_round_trip_exhaustive():
    for piece in all_pieces():
        start = (piece,)
        # both feet on one circle <-> distinct-circles cut
        grown = attach_band(start, BandDescriptor(((0, 0),)))
        assert cut_along_arc(grown[0], ArcDescriptor(0, (0, 1))) == start
        # feet on two circles <-> genus-reducing cut
        if piece.boundary_count >= 2:
            grown = attach_band(start, BandDescriptor(((0, 0), (0, 1))))
            arc = ArcDescriptor(0, (0, 0), ArcOutcome.REDUCE_GENUS)
            assert cut_along_arc(grown[0], arc) == start
    # merging two pieces <-> separating cut
    for pa, pb in itertools.combinations_with_replacement(all_pieces(), 2):
        merged = attach_band([pa, pb], BandDescriptor(((0, 0), (1, 0))))
        arc = ArcDescriptor(
            0,
            (0, 0),
            ArcOutcome.SEPARATE_PIECE,
            (
                (pa.genus, pa.boundary_count),
                (pb.genus, pb.boundary_count),
            ),
        )
        assert cut_along_arc(merged[0], arc) == tuple(sorted((pa, pb)))


@given(st.integers(0, 6), st.integers(1, 9))
def test_euler_formula_property(g, c):
    assert euler_char(SurfacePiece(g, c)) == 2 - 2 * g - c


@given(st.integers(0, 6), st.integers(1, 9))
def test_orientable_bookkeeping_closed_under_band(g, c):
    """No operation can produce a piece violating g >= 0, c >= 1."""
    piece = SurfacePiece(g, c)
    (grown,) = attach_band([piece], BandDescriptor(((0, 0),)))
    assert grown.genus >= 0 and grown.boundary_count >= 1
    if c >= 2:
        (grown,) = attach_band([piece], BandDescriptor(((0, 0), (0, 1))))
        assert grown.genus >= 0 and grown.boundary_count >= 1
