"""Combinatorial invariants of integral polytopes.

All sums run over the full face lattice (nonempty faces, the polytope
included). With nvol the integer normalized volume and r = dim(P):

    c_t(P) = sum over faces F of (-1)^(r - dim F) (dim F + t)! Vol(F)
           = sum over faces F of (-1)^(r - dim F) rising(dim F, t) nvol(F)

where rising(d, t) = (d + t)! / d! keeps the arithmetic in integers.
c(P) = c_1(P). For the associated projective toric variety, c(P) equals
the top Chern number of the first jet bundle of the embedding line
bundle in the smooth case, hence the degree of the dual variety when
that variety is a hypersurface.

c_star(P) divides each face term by the multiplicity of the normal cone
of the face and is defined for simple polytopes; it coincides with c(P)
when the polytope is Delzant. It is returned as an exact rational; it is
not integral for every simple polytope (the smooth-case argument that
would force integrality needs the jet sheaf to be locally free).

f_polynomial(P) evaluates

    f(P, n) = sum_k (-n)^(r-k) (k+1)! sum_{F in P(k)} |Z^F cap nF|

at n = 1..r+1 and interpolates exactly; the coefficients are asserted
integral and the leading one equals c(P).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence, Union

from . import volumes as vol
from .errors import DomainError, InternalConsistencyError, NotSimpleError
from .polytope import Face, Polytope
from .linalg import lattice_index


def _rising(d: int, t: int) -> int:
    out = 1
    for i in range(d + 1, d + t + 1):
        out *= i
    return out


def c_t(P: Polytope, t: int) -> int:
    """The alternating face-volume sum with weight (dim F + t)!."""
    if t < 0:
        raise DomainError("t must be a nonnegative integer")
    r = P.dim
    total = 0
    for f in P.face_lattice():
        sign = -1 if (r - f.dim) % 2 else 1
        total += sign * _rising(f.dim, t) * vol.normalized_volume(f)
    return total


def c(P: Polytope) -> int:
    """c(P) = c_1(P), the degree invariant of the polytope."""
    return c_t(P, 1)


def c_grade_terms(P: Polytope, t: int = 1) -> list[int]:
    """Per-dimension signed contributions to c_t, index k = 0..dim."""
    r = P.dim
    terms = [0] * (r + 1)
    for f in P.face_lattice():
        sign = -1 if (r - f.dim) % 2 else 1
        terms[f.dim] += sign * _rising(f.dim, t) * vol.normalized_volume(f)
    return terms


def mult(P: Polytope, face: Union[Face, Polytope]) -> int:
    """Multiplicity of the normal cone of a face of a simple polytope.

    The number of lattice points in the half-open parallelotope spanned
    by the primitive inward normals of the facets containing the face;
    1 for the polytope itself, and 1 for every face iff P is Delzant.
    """
    if not P.is_simple():
        raise NotSimpleError("multiplicity defined only for simple polytopes")
    if isinstance(face, Polytope):
        face = face.top_face()
    if face.owner is not P:
        raise DomainError("face does not belong to this polytope")
    if not face.facet_ids:
        return 1
    gens = [list(P._nfacets[j][0]) for j in face.facet_ids]
    return lattice_index(gens)


def c_star(P: Polytope) -> Fraction:
    """Multiplicity-corrected invariant for simple polytopes.

    Exact rational; equals c(P) when P is Delzant.
    """
    if not P.is_simple():
        raise NotSimpleError("c_star defined only for simple polytopes")
    r = P.dim
    total = Fraction(0)
    for f in P.face_lattice():
        sign = -1 if (r - f.dim) % 2 else 1
        term = Fraction(
            sign * (f.dim + 1) * vol.normalized_volume(f), mult(P, f)
        )
        total += term
    if P.is_delzant() and total != c(P):
        raise InternalConsistencyError("c_star differs from c on a Delzant input")
    return total


def f_polynomial(P: Polytope) -> list[int]:
    """Coefficients d_0 .. d_r of f(P, n), exact integers, d_r = c(P)."""
    r = P.dim
    values = []
    for n in range(1, r + 2):
        acc = 0
        for f in P.face_lattice():
            k = f.dim
            acc += (-n) ** (r - k) * factorial(k + 1) * vol.lattice_points(f, n)
        values.append((n, acc))
    coeffs = vol.interpolate(values)
    out = []
    for cf in coeffs:
        if cf.denominator != 1:
            raise InternalConsistencyError(
                "f-polynomial interpolation produced a non-integer coefficient"
            )
        out.append(int(cf))
    while len(out) < r + 1:
        out.append(0)
    if out[r] != c(P):
        raise InternalConsistencyError("leading f-coefficient differs from c(P)")
    return out


def f_value(P: Polytope, n: int) -> int:
    """Direct evaluation of f(P, n) without interpolation."""
    r = P.dim
    acc = 0
    for f in P.face_lattice():
        k = f.dim
        acc += (-n) ** (r - k) * factorial(k + 1) * vol.lattice_points(f, n)
    return acc


def dual_degree(P: Polytope) -> Optional[int]:
    """Degree of the dual variety when defined by c(P).

    Returns c(P) for a Delzant polytope with c(P) > 0; None when the
    polytope is Delzant with c(P) = 0 (positive dual defect, see the
    classifier) and None for non-Delzant input, where the degree formula
    does not apply.
    """
    if not P.is_delzant():
        return None
    value = c(P)
    if value > 0:
        return value
    return None


@dataclass(frozen=True)
class InvariantReport:
    """Bundle of the invariants of one polytope."""

    c: int
    c_t_values: dict[int, int]
    f_coefficients: tuple[int, ...]
    c_star: Optional[Fraction] = None
    dual_degree: Optional[int] = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.f_coefficients[-1] != self.c:
            raise InternalConsistencyError("report has d_r != c")

    def to_dict(self) -> dict:
        doc = {
            "c": self.c,
            "c_t": {str(t): v for t, v in sorted(self.c_t_values.items())},
            "f_coefficients": list(self.f_coefficients),
        }
        doc["c_star"] = None if self.c_star is None else str(self.c_star)
        doc["dual_degree"] = self.dual_degree
        doc["notes"] = list(self.notes)
        return doc


def report(P: Polytope, t_range: Sequence[int] = (0, 1, 2, 3, 4)) -> InvariantReport:
    """Aggregate c, the c_t family, c_star, f-coefficients and dual degree."""
    for t in t_range:
        if t < 0:
            raise DomainError("t range entries must be nonnegative")
    notes = []
    cval = c(P)
    ct = {t: c_t(P, t) for t in t_range}
    fcoef = tuple(f_polynomial(P))
    cstar = None
    if P.is_simple():
        cstar = c_star(P)
        if P.is_delzant() and cstar != cval:
            raise InternalConsistencyError("c_star != c on Delzant input")
        if cstar.denominator != 1:
            notes.append(
                "c_star is non-integral on this simple but non-Delzant input"
            )
    else:
        notes.append("c_star omitted: polytope is not simple")
    dd = dual_degree(P)
    if P.is_delzant():
        if cval == 0:
            notes.append("dual defect positive; see classifier")
    else:
        notes.append("dual degree defined here only for Delzant polytopes")
    return InvariantReport(
        c=cval,
        c_t_values=ct,
        f_coefficients=fcoef,
        c_star=cstar,
        dual_degree=dd,
        notes=tuple(notes),
    )
