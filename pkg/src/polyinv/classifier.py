"""Defect polytopes: detection, certified join decompositions, verdicts.

A Delzant polytope is a defect polytope when its invariant c vanishes;
equivalently the dual variety of the associated embedded toric manifold
drops dimension. Every defect polytope of dimension r >= 2 is either a
unimodular r-simplex (dual defect r) or a projective join of k+1
strongly isomorphic Delzant fibers of dimension r - k, with
max(2, ceil((r+1)/2)) <= k <= r - 1 and dual defect d = 2k - r.

`decompose_join` searches for that structure directly: subsets of k+1
primitive facet normals summing to zero and spanning a saturated rank-k
lattice are exactly the candidates for pulled-back simplex facet
normals; each candidate projection is accepted only if the image is the
standard unimodular k-simplex, the vertex fibers are (r-k)-dimensional
Delzant and strongly isomorphic, and rebuilding the projective join of
the fibers gives a polytope unimodularly equivalent to the input. The
reconstruction check, not the search heuristic, is the correctness
anchor. Ties are broken deterministically: maximal k first, then the
lexicographically smallest facet subset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg as la
from .constructions import JoinSpec, projective_join, simplex
from .equivalence import unimodular_equivalent
from .errors import DomainError, InternalConsistencyError
from .invariants import c as c_invariant, c_star, dual_degree
from .polytope import Polytope


def is_defect_polytope(P: Polytope) -> bool:
    """True iff P is Delzant and c(P) = 0."""
    return P.is_delzant() and c_invariant(P) == 0


def _k_min(r: int) -> int:
    return max(2, (r + 2) // 2)  # ceil((r+1)/2)


@dataclass(frozen=True)
class JoinDecomposition:
    """A certified projective-join structure of a defect polytope.

    `projection` is the integer linear map plus shift (acting on the
    polytope's normalized model Z^r) that carries the polytope onto the
    standard unimodular k-simplex; `fibers` are the preimages of the
    simplex vertices (fiber 0 over the origin, fiber i over e_i), given
    as full-dimensional polytopes in one shared normalization so that
    `projective_join(fibers)` rebuilds the input up to unimodular
    equivalence. `defect` is r for the simplex case and 2k - r otherwise.
    """

    k: int
    defect: int
    projection_matrix: tuple[tuple[int, ...], ...]
    projection_shift: tuple[int, ...]
    simplex_image: Polytope
    fibers: tuple[Polytope, ...]

    def __post_init__(self):
        r = self.fibers[0].dim + self.k
        if not _k_min(r) <= self.k <= r:
            raise InternalConsistencyError("join parameter outside classified range")
        expected = r if self.k == r else 2 * self.k - r
        if self.defect != expected:
            raise InternalConsistencyError("defect value inconsistent with k")
        if self.k < r and (self.defect - r) % 2 != 0:
            raise InternalConsistencyError("defect parity violated")

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "defect": self.defect,
            "projection": {
                "matrix": [list(r) for r in self.projection_matrix],
                "shift": list(self.projection_shift),
            },
            "simplex_image": self.simplex_image.to_dict(),
            "fibers": [f.to_dict() for f in self.fibers],
        }


def decompose_join(P: Polytope) -> Optional[JoinDecomposition]:
    """Certified join decomposition of a Delzant polytope with c = 0.

    Returns None when c(P) != 0. Raises DomainError for non-Delzant or
    dim < 2 input, and InternalConsistencyError if c(P) = 0 but no
    decomposition passes certification (impossible for Delzant input
    unless the implementation is wrong).
    """
    if not P.is_delzant():
        raise DomainError("join decomposition requires a Delzant polytope")
    if P.dim < 2:
        raise DomainError("join decomposition requires dimension >= 2")
    if c_invariant(P) != 0:
        return None
    r = P.dim

    if len(P.vertices) == r + 1:
        dec = _simplex_decomposition(P)
        if dec is not None:
            return dec
        raise InternalConsistencyError("classification violated")

    face_by_vset = {frozenset(f.vertex_ids): f for f in P.face_lattice()}
    nfacets = P._nfacets
    for k in range(r - 1, _k_min(r) - 1, -1):
        for J in itertools.combinations(range(len(nfacets)), k + 1):
            dec = _try_subset(P, J, k, face_by_vset)
            if dec is not None:
                return dec
    raise InternalConsistencyError("classification violated")


def _simplex_decomposition(P: Polytope) -> Optional[JoinDecomposition]:
    r = P.dim
    v0 = P._nverts[0]
    dirs = [
        list(la.primitive(la.vec_sub(P._nverts[i], v0)))
        for i in range(1, r + 1)
    ]
    cols = la.transpose(dirs)
    if abs(la.det(cols)) != 1:
        return None
    M = la.unimodular_inverse(cols)
    shift = tuple(-x for x in la.mat_vec(M, v0))
    images = {la.vec_add(la.mat_vec(M, v), shift) for v in P._nverts}
    if images != _standard_simplex_vertices(r):
        return None
    point = simplex(0)
    fibers = tuple(Polytope.from_vertices([()]) for _ in range(r + 1))
    rebuilt = projective_join(JoinSpec.build(fibers))
    if not unimodular_equivalent(rebuilt, P):
        return None
    return JoinDecomposition(
        k=r,
        defect=r,
        projection_matrix=tuple(tuple(row) for row in M),
        projection_shift=shift,
        simplex_image=simplex(r),
        fibers=fibers,
    )


def _standard_simplex_vertices(k: int) -> set:
    out = {tuple(0 for _ in range(k))}
    for i in range(k):
        out.add(tuple(1 if j == i else 0 for j in range(k)))
    return out


def _try_subset(P, J, k, face_by_vset) -> Optional[JoinDecomposition]:
    r = P.dim
    normals = [P._nfacets[j][0] for j in J]
    if any(sum(a[i] for a in normals) != 0 for i in range(r)):
        return None
    rows = [list(a) for a in normals]
    if la.rank(rows) != k:
        return None
    if la.span_lattice_index(rows) != 1:
        return None

    proj_rows = [P._nfacets[j][0] for j in J[1:]]
    shift = tuple(-P._nfacets[j][1] for j in J[1:])
    images = [
        tuple(la.dot(a, v) + s for a, s in zip(proj_rows, shift))
        for v in P._nverts
    ]
    if set(images) != _standard_simplex_vertices(k):
        return None

    groups: dict[tuple, list[int]] = {}
    for vid, img in enumerate(images):
        groups.setdefault(img, []).append(vid)
    order = [tuple(0 for _ in range(k))] + [
        tuple(1 if j == i else 0 for j in range(k)) for i in range(k)
    ]
    fiber_vids = [groups[img] for img in order]

    # each fiber must be a face of P of dimension r - k
    for vids in fiber_vids:
        face = face_by_vset.get(frozenset(vids))
        if face is None or face.dim != r - k:
            return None

    # shared normalization of the (parallel) fiber spans
    base_pts = [P._nverts[i] for i in fiber_vids[0]]
    norm0 = la.affine_normalize(base_pts)
    basis0 = [list(w) for w in norm0.basis]
    fibers = []
    for vids in fiber_vids:
        pts = [P._nverts[i] for i in sorted(vids)]
        b = min(pts)
        for p in pts:
            diff = list(la.vec_sub(p, b))
            if any(diff) and la.rank(basis0 + [diff]) != r - k:
                return None
        coords = [
            tuple(la.dot(row, la.vec_sub(p, b)) for row in norm0.matrix)
            for p in pts
        ]
        F = Polytope.from_vertices(coords)
        if F.dim != r - k or not F.is_delzant():
            return None
        fibers.append(F)

    try:
        spec = JoinSpec.build(fibers)
    except DomainError:
        return None
    rebuilt = projective_join(spec)
    if not unimodular_equivalent(rebuilt, P):
        return None
    return JoinDecomposition(
        k=k,
        defect=2 * k - r,
        projection_matrix=tuple(tuple(a) for a in proj_rows),
        projection_shift=shift,
        simplex_image=simplex(k),
        fibers=tuple(fibers),
    )


@dataclass(frozen=True)
class ClassificationReport:
    """Verdict on one polytope: defect structure or the reason there is none."""

    dim: int
    is_simple: bool
    is_delzant: bool
    c: int
    verdict: str  # defect | non-defect | non-Delzant | dim-1-degenerate
    c_star: Optional[Fraction] = None
    defect: Optional[int] = None
    dual_degree: Optional[int] = None
    decomposition: Optional[JoinDecomposition] = None
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "is_simple": self.is_simple,
            "is_delzant": self.is_delzant,
            "c": self.c,
            "c_star": None if self.c_star is None else str(self.c_star),
            "verdict": self.verdict,
            "defect": self.defect,
            "dual_degree": self.dual_degree,
            "decomposition": (
                None if self.decomposition is None else self.decomposition.to_dict()
            ),
            "notes": list(self.notes),
        }


def classify(P: Polytope) -> ClassificationReport:
    """Full defect classification of an arbitrary integral polytope."""
    simple = P.is_simple()
    delzant = P.is_delzant()
    cval = c_invariant(P)
    cstar = c_star(P) if simple else None
    notes = []

    if P.dim == 1:
        return ClassificationReport(
            dim=1,
            is_simple=simple,
            is_delzant=delzant,
            c=cval,
            c_star=cstar,
            verdict="dim-1-degenerate",
            notes=("dimension-1 polytopes sit outside the defect classification",),
        )
    if not delzant:
        if cval == 0:
            notes.append(
                "c = 0 on a non-Delzant polytope: candidate join structure "
                "outside the certified classification"
            )
        return ClassificationReport(
            dim=P.dim,
            is_simple=simple,
            is_delzant=False,
            c=cval,
            c_star=cstar,
            verdict="non-Delzant",
            notes=tuple(notes),
        )
    if cval == 0 and P.dim >= 2:
        dec = decompose_join(P)
        return ClassificationReport(
            dim=P.dim,
            is_simple=simple,
            is_delzant=True,
            c=0,
            c_star=cstar,
            verdict="defect",
            defect=dec.defect,
            decomposition=dec,
        )
    if cval < 0:
        notes.append("negative c on a Delzant polytope; this should be impossible")
    return ClassificationReport(
        dim=P.dim,
        is_simple=simple,
        is_delzant=True,
        c=cval,
        c_star=cstar,
        verdict="non-defect",
        dual_degree=dual_degree(P),
        notes=tuple(notes),
    )
