"""Canonical decompositions for each classified case.

Each builder returns the standard model of one case for a given target
manifold, with explicit circle-to-locus wiring and per-handlebody curve
classes.  The meridian counts record how each locus crosses the distinguished
meridian disk of a genus-one handlebody; the destabilization engine looks for
handlebodies where those crossings total exactly 2.  On the designated
witness handlebody the crossing data is the same for every target; elsewhere
an essential locus crosses once in the 3-sphere and p times in L(p, q).
"""

from __future__ import annotations

from typing import Optional, Tuple

from .decomp import BranchedLocus, CurveClass, Decomposition, PatchPiece
from .lens import SPHERE3, ManifoldForm, canonical
from .lens import lens_space as lens_form
from .surfaces import ANNULUS, DISK, PANTS, PUNCTURED_TORUS, SurfacePiece

_INESS = CurveClass(False, 0)


def _ess(m: int) -> CurveClass:
    return CurveClass(True, m)


def _wrap(m: ManifoldForm) -> int:
    """Meridian crossings of a Heegaard-glued locus: 1 for S^3, p for L(p,q)."""
    return 1 if m.is_sphere else m.p


def _piece(surface: SurfacePiece, *loci: int) -> PatchPiece:
    return PatchPiece(surface, tuple(loci))


def _locus(lid: int, c1, c2, c3) -> BranchedLocus:
    return BranchedLocus(lid, (c1, c2, c3))


def type000() -> Decomposition:
    """The type-(0,0,0;1) decomposition of the 3-sphere: three disks."""
    return Decomposition(
        SPHERE3,
        (0, 0, 0),
        (
            (_piece(DISK, 0),),
            (_piece(DISK, 0),),
            (_piece(DISK, 0),),
        ),
        (_locus(0, _INESS, _INESS, _INESS),),
    )


def type001(m: ManifoldForm) -> Decomposition:
    """Type-(0,0,1;2): two meridian disks of the outer solid torus, two
    annuli.  Each locus runs p times around dH3, once for the 3-sphere."""
    w = _wrap(m)
    return Decomposition(
        m,
        (0, 0, 1),
        (
            (_piece(DISK, 0), _piece(DISK, 1)),
            (_piece(ANNULUS, 0, 1),),
            (_piece(ANNULUS, 0, 1),),
        ),
        (
            _locus(0, _INESS, _INESS, _ess(w)),
            _locus(1, _INESS, _INESS, _ess(w)),
        ),
    )


def type011_case1(m: ManifoldForm) -> Decomposition:
    """Type-(0,1,1;1): a ball around a point of the Heegaard torus.

    The single locus bounds the small disks, but a meridian disk of H2 (or
    H3) can be pushed across the ball to cross it exactly twice; the tags
    record those two crossings.
    """
    return Decomposition(
        m,
        (0, 1, 1),
        (
            (_piece(DISK, 0),),
            (_piece(DISK, 0),),
            (_piece(PUNCTURED_TORUS, 0),),
        ),
        (_locus(0, _INESS, _ess(2), _ess(2)),),
    )


def type011_case2(m: ManifoldForm) -> Decomposition:
    """Type-(0,1,1;3): meridian disk plus annulus cutting a solid torus into
    a ball and a solid torus; the third patch is a pair of pants."""
    w = _wrap(m)
    return Decomposition(
        m,
        (0, 1, 1),
        (
            (_piece(DISK, 0), _piece(ANNULUS, 1, 2)),
            (_piece(ANNULUS, 0, 1), _piece(DISK, 2)),
            (_piece(PANTS, 0, 1, 2),),
        ),
        (
            _locus(0, _INESS, _INESS, _ess(w)),
            _locus(1, _INESS, _ess(1), _ess(w)),
            _locus(2, _INESS, _ess(1), _INESS),
        ),
    )


def type111_case1(m: ManifoldForm) -> Decomposition:
    """Type-(1,1,1;2): three fibered solid tori of a Seifert fibration over
    the 2-sphere; H1 is a regular-fiber neighborhood."""
    w = _wrap(m)
    return Decomposition(
        m,
        (1, 1, 1),
        (
            (_piece(ANNULUS, 0, 1),),
            (_piece(ANNULUS, 0, 1),),
            (_piece(ANNULUS, 0, 1),),
        ),
        (
            _locus(0, _ess(1), _ess(w), _ess(w)),
            _locus(1, _ess(1), _ess(w), _ess(w)),
        ),
    )


def type111_case2(m: ManifoldForm) -> Decomposition:
    """Type-(1,1,1;2): punctured torus in a ball cutting it into two solid
    tori, plus the complementary solid torus."""
    w = _wrap(m)
    return Decomposition(
        m,
        (1, 1, 1),
        (
            (_piece(DISK, 0), _piece(PUNCTURED_TORUS, 1)),
            (_piece(ANNULUS, 0, 1),),
            (_piece(ANNULUS, 0, 1),),
        ),
        (
            _locus(0, _INESS, _INESS, _ess(w)),
            _locus(1, _ess(2), _ess(2), _ess(w)),
        ),
    )


def type111_case3(m: ManifoldForm) -> Decomposition:
    """Type-(1,1,1;4): disk-plus-pants in a solid torus, boundary pattern
    four annuli."""
    w = _wrap(m)
    return Decomposition(
        m,
        (1, 1, 1),
        (
            (_piece(DISK, 0), _piece(PANTS, 1, 2, 3)),
            (_piece(ANNULUS, 0, 1), _piece(ANNULUS, 2, 3)),
            (_piece(ANNULUS, 1, 2), _piece(ANNULUS, 3, 0)),
        ),
        (
            _locus(0, _INESS, _INESS, _ess(w)),
            _locus(1, _INESS, _ess(w), _ess(w)),
            _locus(2, _ess(1), _ess(w), _ess(w)),
            _locus(3, _ess(1), _INESS, _ess(w)),
        ),
    )


def type111_case4(m: ManifoldForm) -> Decomposition:
    """Type-(1,1,1;4): two annuli separating a solid torus, with disk-plus-
    pants on the two other patches (crossed incidence on dH3)."""
    w = _wrap(m)
    return Decomposition(
        m,
        (1, 1, 1),
        (
            (_piece(ANNULUS, 0, 1), _piece(ANNULUS, 2, 3)),
            (_piece(DISK, 2), _piece(PANTS, 0, 1, 3)),
            (_piece(DISK, 1), _piece(PANTS, 0, 2, 3)),
        ),
        (
            _locus(0, _ess(1), _INESS, _ess(w)),
            _locus(1, _ess(1), _INESS, _INESS),
            _locus(2, _INESS, _ess(w), _INESS),
            _locus(3, _INESS, _ess(w), _ess(w)),
        ),
    )


def type111_case5(m: ManifoldForm) -> Decomposition:
    """Type-(1,1,1;4): disk-plus-pants on all three patches."""
    w = _wrap(m)
    return Decomposition(
        m,
        (1, 1, 1),
        (
            (_piece(DISK, 0), _piece(PANTS, 1, 2, 3)),
            (_piece(DISK, 2), _piece(PANTS, 0, 1, 3)),
            (_piece(DISK, 3), _piece(PANTS, 0, 1, 2)),
        ),
        (
            _locus(0, _INESS, _INESS, _ess(w)),
            _locus(1, _ess(1), _ess(w), _ess(w)),
            _locus(2, _INESS, _ess(w), _INESS),
            _locus(3, _ess(1), _INESS, _INESS),
        ),
    )


def type111_case6() -> Decomposition:
    """The L(4,1) Seifert decomposition over RP^2: all patches two annuli,
    four branched loci, every locus a regular fiber crossing each meridian
    once.  No meridian disk meets the loci exactly twice, so this one never
    destabilizes."""
    f = _ess(1)
    return Decomposition(
        lens_form(4, 1),
        (1, 1, 1),
        (
            (_piece(ANNULUS, 0, 1), _piece(ANNULUS, 2, 3)),
            (_piece(ANNULUS, 1, 2), _piece(ANNULUS, 0, 3)),
            (_piece(ANNULUS, 1, 3), _piece(ANNULUS, 0, 2)),
        ),
        (
            _locus(0, f, f, f),
            _locus(1, f, f, f),
            _locus(2, f, f, f),
            _locus(3, f, f, f),
        ),
    )


def catalog(m: ManifoldForm) -> Tuple[Decomposition, ...]:
    """All canonical fixtures for the given target, genera at most one."""
    m = canonical(m)
    out = []
    if m.is_sphere:
        out.append(type000())
    out.extend(
        [
            type001(m),
            type011_case1(m),
            type011_case2(m),
            type111_case1(m),
            type111_case2(m),
            type111_case3(m),
            type111_case4(m),
            type111_case5(m),
        ]
    )
    if not m.is_sphere and (m.p, m.q) == (4, 1):
        out.append(type111_case6())
    return tuple(out)


def fixture_for_case(
    m: ManifoldForm, genera: Tuple[int, int, int], number: int
) -> Optional[Decomposition]:
    """The canonical fixture realizing one theorem case, if m admits it."""
    from .decomp import case_of

    for d in catalog(m):
        case = case_of(d)
        if case and case.genera == tuple(sorted(genera)) and case.number == number:
            return d
    return None
