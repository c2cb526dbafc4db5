"""Exact arithmetic of the 3-sphere and lens spaces.

Everything here is integer arithmetic mod p: normalization of L(p,q) to a
canonical representative, the homeomorphism test (p = p' and q = +-q' or
q q' = +-1 mod p), the core-isotopy criterion (p-1)q = +-1 mod p, the
diffeotopy group clauses, and the two Seifert facts the classification needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple


class LensError(ValueError):
    """Base class for lens-space arithmetic errors."""


class NotCoprime(LensError):
    """gcd(p, q) != 1: the gluing data does not define a lens space."""


class ZeroP(LensError):
    """p = 0 describes S^2 x S^1, which is out of scope."""


class SphereNotCovered(LensError):
    """The diffeotopy-group table covers lens spaces only."""


@dataclass(frozen=True, order=True)
class ManifoldForm:
    """The 3-sphere, or a lens space L(p, q) with 0 < q < p and gcd = 1."""

    kind: str  # "sphere3" or "lens"
    p: int = 0
    q: int = 0

    def __post_init__(self) -> None:
        if self.kind == "sphere3":
            if (self.p, self.q) != (0, 0):
                raise ValueError("sphere3 carries no (p, q) data")
        elif self.kind == "lens":
            if self.p < 2:
                raise ValueError("lens spaces need p >= 2 (p = 1 is S^3)")
            if not (0 < self.q < self.p):
                raise ValueError("lens spaces need 0 < q < p")
            if math.gcd(self.p, self.q) != 1:
                raise NotCoprime("gcd(%d, %d) != 1" % (self.p, self.q))
        else:
            raise ValueError("unknown manifold kind %r" % self.kind)

    @property
    def is_sphere(self) -> bool:
        return self.kind == "sphere3"

    def __str__(self) -> str:
        if self.is_sphere:
            return "S3"
        return "L(%d,%d)" % (self.p, self.q)


SPHERE3 = ManifoldForm("sphere3")


def lens_space(p: int, q: int) -> ManifoldForm:
    """A lens form with the stated (p, q), without orbit normalization."""
    return ManifoldForm("lens", p, q)


def _orbit(p: int, q: int) -> Tuple[int, ...]:
    """The coefficients homeomorphic to q: {+-q, +-q^-1} brought into (0,p)."""
    qinv = pow(q, -1, p)
    return tuple(sorted({q % p, (-q) % p, qinv, (-qinv) % p}))


def normalize(p: int, q: int) -> ManifoldForm:
    """Canonical form of the gluing data (p, q).

    |p| = 1 gives the 3-sphere.  Otherwise the representative is the minimum
    of {q, -q, q^-1, -q^-1} mod |p|, so homeomorphic data normalize to equal
    forms.  Raises ZeroP for p = 0 and NotCoprime when gcd(p, q) != 1.
    """
    if p == 0:
        raise ZeroP("p = 0 is S^2 x S^1, out of scope")
    ap = abs(p)
    if ap == 1:
        return SPHERE3
    qm = q % ap
    if math.gcd(ap, qm) != 1:
        raise NotCoprime("gcd(%d, %d) != 1" % (ap, qm))
    return ManifoldForm("lens", ap, min(_orbit(ap, qm)))


def canonical(m: ManifoldForm) -> ManifoldForm:
    """Normalize an already-valid form."""
    if m.is_sphere:
        return m
    return normalize(m.p, m.q)


def is_homeomorphic(a: ManifoldForm, b: ManifoldForm) -> bool:
    """Orientation-preserving-or-reversing homeomorphism test.

    For lens spaces this is p = p' together with q = +-q' or qq' = +-1
    mod p, i.e. equality of normalized forms.
    """
    return canonical(a) == canonical(b)


def torus_knot_is_core(p: int, q: int) -> bool:
    """Is the torus knot T(p, q) on the boundary of a solid torus isotopic
    in the solid torus to its core?

    Happens exactly when p = +-1: only then does the knot cross a meridian
    disk once, leaving an annulus between the knot and the core.
    """
    if math.gcd(p, q) != 1:
        raise NotCoprime("T(%d, %d) is a link, not a knot" % (p, q))
    return p in (1, -1)


def core_isotopy_criterion(m: ManifoldForm) -> bool:
    """Are the two cores of a genus-one splitting of m isotopic in m?

    True for the 3-sphere, and for L(p, q) exactly when
    (p-1) q = +-1 mod p, equivalently q in {1, p-1}.
    """
    if m.is_sphere:
        return True
    return ((m.p - 1) * m.q) % m.p in (1, m.p - 1)


@dataclass(frozen=True)
class DiffeotopyGroup:
    """Diffeomorphisms of a lens space modulo isotopy, named by generators."""

    group: str  # "Z2", "Z2xZ2", "Z4"
    generator_tag: str


def diffeotopy_group(m: ManifoldForm) -> DiffeotopyGroup:
    """Diffeotopy group of a lens space, by the five-clause table.

    Clauses are tested in order: p = 2; q = +-1; q^2 = +1 with q != +-1;
    q^2 = -1; the generic case.  The sphere is rejected: only the lens-space
    table is available here.
    """
    if m.is_sphere:
        raise SphereNotCovered("diffeotopy table covers lens spaces only")
    p, q = m.p, m.q
    if p == 2:
        return DiffeotopyGroup("Z2", "sigma_minus")
    if q % p in (1, p - 1):
        return DiffeotopyGroup("Z2", "tau")
    if (q * q) % p == 1:
        return DiffeotopyGroup("Z2xZ2", "tau_and_sigma_plus")
    if (q * q) % p == p - 1:
        return DiffeotopyGroup("Z4", "sigma_minus_order4")
    return DiffeotopyGroup("Z2", "tau")


def hyperelliptic_realizable(m: ManifoldForm) -> bool:
    """Can an ambient isotopy of m fix a genus-one splitting setwise and
    restrict to the hyperelliptic involution of the splitting torus?

    True exactly for the 3-sphere and L(2, 1): elsewhere the involution tau
    is a nontrivial diffeotopy class.
    """
    if m.is_sphere:
        return True
    return (m.p, m.q) == (2, 1)


def admits_seifert_over_rp2(m: ManifoldForm) -> bool:
    """Does m fiber over RP^2?  Only L(4, 1) (up to homeomorphism) does."""
    if m.is_sphere:
        return False
    return is_homeomorphic(m, lens_space(4, 1))
