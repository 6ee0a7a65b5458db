"""Generators for the polytope families used throughout the package.

Standard simplices, cubes with prescribed edge length, hypersimplices,
cartesian products, projective joins of strongly isomorphic summands,
and Eulerian numbers (descent convention).

The projective join of m-dimensional polytopes P_0 .. P_k places summand
i at the vertex e_i of a unimodular k-simplex in k extra coordinates
(e_0 = 0) and takes the convex hull; the result has dimension m + k.
Summands must be strongly isomorphic: equal normal fans under a shared
normalization of their (parallel) affine spans. That is stronger than
sharing a combinatorial type, and it is what makes the vertex matching
canonical and the join's facet description predictable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product as iproduct
from typing import Optional, Sequence

from . import linalg as la
from .errors import DomainError, InternalConsistencyError
from .polytope import Polytope


# ---------------------------------------------------------------------------
# basic families


def simplex(r: int) -> Polytope:
    """The standard r-simplex conv{0, e_1, ..., e_r}; a point for r = 0."""
    if r < 0:
        raise DomainError("simplex dimension must be nonnegative")
    if r == 0:
        return Polytope.from_vertices([()], name="simplex(0)")
    verts = [tuple(0 for _ in range(r))]
    verts += [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    halfspaces = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    halfspaces.append(tuple(-1 for _ in range(r)))
    return Polytope._from_ambient_halfspaces(verts, halfspaces, name=f"simplex({r})")


def cube(m: int, n: int) -> Polytope:
    """The cube [0, n]^m."""
    if m < 1 or n < 1:
        raise DomainError("cube needs dimension >= 1 and edge length >= 1")
    verts = [tuple(n * c for c in corner) for corner in iproduct((0, 1), repeat=m)]
    halfspaces = []
    for i in range(m):
        e = tuple(1 if j == i else 0 for j in range(m))
        halfspaces.append(e)
        halfspaces.append(tuple(-x for x in e))
    return Polytope._from_ambient_halfspaces(verts, halfspaces, name=f"cube({m},{n})")


def hypersimplex(k: int, n: int) -> Polytope:
    """Convex hull of all 0/1 vectors in Z^n with coordinate sum k."""
    if not 1 <= k <= n - 1:
        raise DomainError("hypersimplex needs 1 <= k <= n-1")
    verts = [
        tuple(1 if i in chosen else 0 for i in range(n))
        for chosen in combinations(range(n), k)
    ]
    halfspaces = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        halfspaces.append(e)
        halfspaces.append(tuple(-x for x in e))
    return Polytope._from_ambient_halfspaces(
        verts, halfspaces, name=f"hypersimplex({k},{n})"
    )


def product(P: Polytope, Q: Polytope, name: Optional[str] = None) -> Polytope:
    """Cartesian product in the concatenated ambient space."""
    nP, nQ = P.ambient_dim, Q.ambient_dim
    verts = [v + w for v in P.vertices for w in Q.vertices]
    zeroP = (0,) * P.dim
    zeroQ = (0,) * Q.dim
    normals = [a + zeroQ for a, _ in P._nfacets]
    normals += [zeroP + a for a, _ in Q._nfacets]
    norm = la.AffineNormalization(
        matrix=tuple(
            [tuple(row) + (0,) * nQ for row in P._norm.matrix]
            + [(0,) * nP + tuple(row) for row in Q._norm.matrix]
        ),
        base=P._norm.base + Q._norm.base,
        basis=tuple(
            [tuple(w) + (0,) * nQ for w in P._norm.basis]
            + [(0,) * nP + tuple(w) for w in Q._norm.basis]
        ),
        dim=P.dim + Q.dim,
    )
    return Polytope._from_model(verts, norm, normals, name=name)


# ---------------------------------------------------------------------------
# Eulerian numbers


@lru_cache(maxsize=None)
def eulerian(n: int, j: int) -> int:
    """Number of permutations of {1..n} with exactly j descents."""
    if n < 1:
        raise DomainError("eulerian numbers need n >= 1")
    if j < 0 or j > n - 1:
        return 0
    if n == 1:
        return 1
    return (j + 1) * eulerian(n - 1, j) + (n - j) * eulerian(n - 1, j - 1)


# ---------------------------------------------------------------------------
# projective joins


@dataclass(frozen=True)
class JoinSpec:
    """Validated summand data for a projective join.

    `summands` are polytopes of one common ambient space, equal dimension
    and parallel affine spans, with identical normal fans under the shared
    span normalization. `vertex_matching` lists, for each summand, its
    vertices ordered so that position j corresponds to the same maximal
    normal cone across all summands.
    """

    summands: tuple[Polytope, ...]
    vertex_matching: tuple[tuple[tuple[int, ...], ...], ...]
    # shared-normalization data used by the join construction
    _common_matrix: tuple[tuple[int, ...], ...]
    _bases: tuple[tuple[int, ...], ...]
    _normals: tuple[tuple[int, ...], ...]
    _offsets: tuple[tuple[int, ...], ...]  # offsets[i][a_index]

    @classmethod
    def build(cls, summands: Sequence[Polytope]) -> "JoinSpec":
        summands = tuple(summands)
        if not summands:
            raise DomainError("a join needs at least one summand")
        P0 = summands[0]
        m = P0.dim
        ambient = P0.ambient_dim
        for P in summands:
            if P.ambient_dim != ambient or P.dim != m:
                raise DomainError(
                    "summands not strongly isomorphic: "
                    "ambient or intrinsic dimensions differ"
                )
        W0 = [list(w) for w in P0._norm.basis]
        A = P0._norm.matrix
        bases = tuple(min(P.vertices) for P in summands)

        cones_per_summand = []
        normal_sets = []
        offsets_per_summand = []
        common_normals: Optional[list] = None
        for P, b in zip(summands, bases):
            # the span directions must agree with summand 0's
            for w in P._norm.basis:
                if m == 0:
                    break
                if la.rank(W0 + [list(w)]) != m:
                    raise DomainError(
                        "summands not strongly isomorphic: affine spans differ"
                    )
            if m == 0:
                cones_per_summand.append({frozenset(): P.vertices[0]})
                normal_sets.append(frozenset())
                offsets_per_summand.append(())
                continue
            # transport P's own facet data into the shared coordinates
            T = la.mat_mul([list(r) for r in A], la.transpose([list(w) for w in P._norm.basis]))
            if not la.is_unimodular(T):
                raise DomainError(
                    "summands not strongly isomorphic: affine spans differ"
                )
            Tinv = la.unimodular_inverse(T)
            TinvT = la.transpose(Tinv)
            shift = tuple(
                la.dot(row, la.vec_sub(P._norm.base, b)) for row in A
            )
            facets = []
            for a, boff in P._nfacets:
                a2 = tuple(la.mat_vec(TinvT, a))
                facets.append((a2, boff + la.dot(a2, shift)))
            normal_sets.append(frozenset(a for a, _ in facets))
            if common_normals is None:
                common_normals = sorted(a for a, _ in facets)
            # vertex -> maximal cone key
            cone_map = {}
            for vid, v in enumerate(P.vertices):
                key = frozenset(
                    P._nfacets[j][0] for j in range(len(P._nfacets))
                    if vid in P._incidence[j]
                )
                key = frozenset(tuple(la.mat_vec(TinvT, a)) for a in key)
                if key in cone_map:
                    raise DomainError(
                        "summands not strongly isomorphic: repeated normal cone"
                    )
                cone_map[key] = v
            cones_per_summand.append(cone_map)
            off = dict(facets)
            if len(off) != len(facets):
                raise DomainError(
                    "summands not strongly isomorphic: repeated facet normal"
                )
            offsets_per_summand.append(off)

        if m > 0:
            ref = normal_sets[0]
            for s in normal_sets[1:]:
                if s != ref:
                    raise DomainError(
                        "summands not strongly isomorphic: facet normals differ"
                    )
            ref_cones = set(cones_per_summand[0])
            for cm in cones_per_summand[1:]:
                if set(cm) != ref_cones:
                    raise DomainError(
                        "summands not strongly isomorphic: normal fans differ"
                    )
            normals = tuple(common_normals)
            offsets = tuple(
                tuple(offsets_per_summand[i][a] for a in normals)
                for i in range(len(summands))
            )
        else:
            normals = ()
            offsets = tuple(() for _ in summands)

        cone_order = sorted(cones_per_summand[0].keys(), key=sorted)
        matching = tuple(
            tuple(cm[key] for key in cone_order) for cm in cones_per_summand
        )
        return cls(
            summands=summands,
            vertex_matching=matching,
            _common_matrix=tuple(tuple(r) for r in A),
            _bases=bases,
            _normals=normals,
            _offsets=offsets,
        )


def projective_join(
    spec: JoinSpec | Sequence[Polytope], name: Optional[str] = None
) -> Polytope:
    """The projective join of the summands: each P_i embedded at height
    e_i of a unimodular simplex in k extra coordinates, then the hull."""
    if not isinstance(spec, JoinSpec):
        spec = JoinSpec.build(spec)
    summands = spec.summands
    k = len(summands) - 1
    n = summands[0].ambient_dim
    m = summands[0].dim
    if k == 0:
        return Polytope.from_vertices(summands[0].vertices, name=name)

    def height(i: int) -> tuple[int, ...]:
        return tuple(1 if t == i - 1 else 0 for t in range(k))

    verts = []
    for i, P in enumerate(summands):
        h = height(i)
        for v in P.vertices:
            verts.append(v + h)

    A = [list(r) for r in spec._common_matrix]
    b0 = spec._bases[0]
    S_cols = [
        la.mat_vec(A, la.vec_sub(spec._bases[i], b0)) for i in range(1, k + 1)
    ]
    forward = []
    for r_i in range(m):
        forward.append(tuple(A[r_i]) + tuple(-S_cols[t][r_i] for t in range(k)))
    for t in range(k):
        forward.append((0,) * n + tuple(1 if s == t else 0 for s in range(k)))
    basis = [tuple(w) + (0,) * k for w in summands[0]._norm.basis]
    for i in range(1, k + 1):
        basis.append(tuple(la.vec_sub(spec._bases[i], b0)) + height(i))
    norm = la.AffineNormalization(
        matrix=tuple(forward), base=b0 + (0,) * k, basis=tuple(basis), dim=m + k
    )

    model_normals = []
    for a_idx, a in enumerate(spec._normals):
        beta0 = spec._offsets[0][a_idx]
        deltas = tuple(beta0 - spec._offsets[i][a_idx] for i in range(1, k + 1))
        model_normals.append(tuple(a) + deltas)
    for t in range(k):
        model_normals.append((0,) * m + tuple(1 if s == t else 0 for s in range(k)))
    model_normals.append((0,) * m + (-1,) * k)

    out = Polytope._from_model(verts, norm, model_normals, name=name)
    if out.dim != m + k:
        raise InternalConsistencyError("projective join has wrong dimension")
    return out
