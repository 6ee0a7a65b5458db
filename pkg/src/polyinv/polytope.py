"""Integral convex polytopes with exact combinatorics.

A `Polytope` is built from an integer V-representation. Internally every
polytope carries a normalized model: an affine change of coordinates that
maps the lattice of its affine span onto Z^dim (see
`linalg.affine_normalize`). All geometric computations (facets, face
lattice, volumes, multiplicities, lattice counts) run on that full
dimensional model, so lower dimensional inputs such as hypersimplices
inside a hyperplane of Z^n behave exactly like full dimensional ones.
Reported vertices keep the caller's ambient coordinates.

Facet enumeration is deliberately the desk-scale exact algorithm:
candidate hyperplanes through affinely independent vertex subsets,
validated by sidedness against every point. Correctness over asymptotics;
the intended instances have at most a few dozen vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg as la
from .errors import DomainError, InternalConsistencyError

Point = tuple[int, ...]
Halfspace = tuple[tuple[int, ...], int]  # (inward normal, offset): <a, x> >= b


@dataclass(frozen=True)
class Face:
    """A nonempty face of a polytope.

    Identified by the sorted ids of the owner's vertices it contains and
    the sorted ids of the facets containing it. The improper face (the
    polytope itself) has an empty facet id list. Dimension is the affine
    dimension of the vertex set.
    """

    owner: "Polytope" = field(compare=False, repr=False)
    vertex_ids: tuple[int, ...]
    facet_ids: tuple[int, ...] = field(compare=False)
    dim: int = field(compare=False)

    @property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(self.owner.vertices[i] for i in self.vertex_ids)

    def as_polytope(self) -> "Polytope":
        return self.owner._face_subpolytope(self)

    def __repr__(self):
        return f"Face(dim={self.dim}, vertices={len(self.vertex_ids)})"


class Polytope:
    """Convex hull of finitely many points of Z^n.

    Immutable after construction. Use `Polytope.from_vertices` to build
    one; duplicate and non-extreme input points are dropped. Derived
    data (face lattice, triangulations, volumes, counts) is cached
    lazily with idempotent values, so concurrent reads are safe.
    """

    def __init__(self, *, _internal=False):
        if not _internal:
            raise DomainError("use Polytope.from_vertices to construct polytopes")
        self.name: Optional[str] = None
        self.ambient_dim: int = 0
        self.dim: int = 0
        self.vertices: tuple[Point, ...] = ()
        self._norm: la.AffineNormalization | None = None
        self._nverts: tuple[Point, ...] = ()
        self._nfacets: tuple[Halfspace, ...] = ()
        self._incidence: tuple[frozenset, ...] = ()
        self._cache: dict = {}

    # -- construction -------------------------------------------------

    @classmethod
    def from_vertices(
        cls, points: Iterable[Sequence[int]], name: Optional[str] = None
    ) -> "Polytope":
        pts = _clean_points(points)
        norm = la.affine_normalize(pts)
        d = norm.dim
        if d == 0:
            return cls._assemble(pts, norm, [], name=name, require_all_extreme=False)
        model = [norm.forward(p) for p in pts]
        normals = _hull_candidate_normals(model, d)
        return cls._assemble(
            pts, norm, normals, name=name, require_all_extreme=False
        )

    @classmethod
    def _from_ambient_halfspaces(
        cls,
        points: Iterable[Sequence[int]],
        halfspaces: Iterable[Sequence[int]],
        name: Optional[str] = None,
    ) -> "Polytope":
        """Fast path for families whose supporting normals are known.

        `halfspaces` is a list of ambient inward normal directions; the
        offsets are recomputed from the vertex set, and candidates whose
        tight set is not facet sized are dropped. Every input point must
        turn out extreme.
        """
        pts = _clean_points(points)
        norm = la.affine_normalize(pts)
        if norm.dim == 0:
            return cls._assemble(pts, norm, [], name=name, require_all_extreme=True)
        normals = []
        for a in halfspaces:
            restricted = tuple(la.dot(w, a) for w in norm.basis)
            if any(restricted):
                normals.append(la.primitive(restricted))
        return cls._assemble(pts, norm, normals, name=name, require_all_extreme=True)

    @classmethod
    def _from_model(
        cls,
        ambient_vertices: Sequence[Point],
        norm: la.AffineNormalization,
        model_normals: Sequence[Point],
        name: Optional[str] = None,
    ) -> "Polytope":
        return cls._assemble(
            _clean_points(ambient_vertices),
            norm,
            [la.primitive(a) for a in model_normals],
            name=name,
            require_all_extreme=True,
        )

    @classmethod
    def _assemble(
        cls,
        pts: list[Point],
        norm: la.AffineNormalization,
        candidate_normals: Sequence[Point],
        name: Optional[str],
        require_all_extreme: bool,
    ) -> "Polytope":
        d = norm.dim
        ambient = len(pts[0])
        model = [norm.forward(p) for p in pts]

        facets: dict[Halfspace, frozenset] = {}
        if d > 0:
            seen = set()
            for a0 in candidate_normals:
                for a in (a0, tuple(-x for x in a0)):
                    if a in seen:
                        continue
                    seen.add(a)
                    vals = [la.dot(a, y) for y in model]
                    b = min(vals)
                    tight = [i for i, v in enumerate(vals) if v == b]
                    if len(tight) < d:
                        continue
                    if la.affine_rank([model[i] for i in tight]) == d - 1:
                        facets[(a, b)] = frozenset(tight)

        # extreme points: the active facet normals span the full model space
        keep = []
        for i in range(len(pts)):
            active = [f[0] for f, tight in facets.items() if i in tight]
            r = la.rank([list(a) for a in active]) if active else 0
            if r == d:
                keep.append(i)
        if d == 0:
            keep = [0]
        if require_all_extreme and len(keep) != len(pts):
            raise InternalConsistencyError(
                "fast-path construction dropped a point expected to be a vertex"
            )

        order = sorted(keep, key=lambda i: pts[i])
        vertices = tuple(pts[i] for i in order)
        nverts = tuple(model[i] for i in order)
        old_to_new = {old: new for new, old in enumerate(order)}

        facet_list = sorted(facets.items())
        nfacets = tuple(f for f, _ in facet_list)
        incidence = tuple(
            frozenset(old_to_new[i] for i in tight if i in old_to_new)
            for _, tight in facet_list
        )

        self = cls(_internal=True)
        self.name = name
        self.ambient_dim = ambient
        self.dim = d
        self.vertices = vertices
        self._norm = norm
        self._nverts = nverts
        self._nfacets = nfacets
        self._incidence = incidence
        self._cache = {}
        return self

    # -- basic data ----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self._nfacets)

    @property
    def facets(self) -> tuple[Halfspace, ...]:
        """Facet inequalities in ambient coordinates.

        Inward primitive normals with integer offsets. Together with
        `span_equations` they cut out the polytope; for a full dimensional
        polytope the span equation list is empty and this is the exact
        irredundant H-representation.
        """
        if "facets" not in self._cache:
            out = []
            A = self._norm.matrix
            for (a, _b), tight in zip(self._nfacets, self._incidence):
                raw = tuple(
                    sum(A[i][j] * a[i] for i in range(self.dim))
                    for j in range(self.ambient_dim)
                )
                amb = la.primitive(raw)
                v = self.vertices[min(tight)]
                off = la.dot(amb, v)
                out.append((amb, off))
            self._cache["facets"] = tuple(out)
        return self._cache["facets"]

    @property
    def span_equations(self) -> tuple[Halfspace, ...]:
        """Equations <c, x> = value describing the affine span."""
        if "span_eq" not in self._cache:
            basis = [list(w) for w in self._norm.basis]
            if not basis:
                kers = la.kernel_basis([[0] * self.ambient_dim])
            else:
                kers = la.kernel_basis(basis)
            out = []
            for c in kers:
                c = la.primitive(c)
                out.append((c, la.dot(c, self._norm.base)))
            self._cache["span_eq"] = tuple(sorted(out))
        return self._cache["span_eq"]

    @property
    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for f in self.face_lattice():
            counts[f.dim] += 1
        return tuple(counts)

    def __eq__(self, other):
        return (
            isinstance(other, Polytope)
            and self.ambient_dim == other.ambient_dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return (
            f"Polytope(dim={self.dim}, ambient={self.ambient_dim}, "
            f"vertices={len(self.vertices)}{label})"
        )

    # -- face lattice ----------------------------------------------------

    def face_lattice(self) -> tuple[Face, ...]:
        """All nonempty faces, graded by dimension, including P itself."""
        if "faces" not in self._cache:
            self._cache["faces"] = self._build_face_lattice()
        return self._cache["faces"]

    def _build_face_lattice(self) -> tuple[Face, ...]:
        nv = len(self.vertices)
        top = frozenset(range(nv))
        found: dict[frozenset, frozenset] = {}
        top_facets = frozenset(
            j for j, t in enumerate(self._incidence) if t == top
        )
        found[top] = top_facets
        queue = [top]
        while queue:
            s = queue.pop()
            j_in = found[s]
            for j, t in enumerate(self._incidence):
                if j in j_in:
                    continue
                s2 = s & t
                if not s2 or s2 in found:
                    continue
                found[s2] = frozenset(
                    jj for jj, tt in enumerate(self._incidence) if s2 <= tt
                )
                queue.append(s2)

        faces = []
        for vset, jset in found.items():
            pts = [list(self._nverts[i]) for i in sorted(vset)]
            fdim = la.affine_rank(pts)
            faces.append(
                Face(
                    owner=self,
                    vertex_ids=tuple(sorted(vset)),
                    facet_ids=tuple(sorted(jset)),
                    dim=fdim,
                )
            )
        faces.sort(key=lambda f: (f.dim, f.vertex_ids))

        # guardrails: these hold for every polytope and catch a wrong or
        # incomplete facet description at first use
        for i in range(nv):
            if Face(self, (i,), (), 0) not in faces:
                raise InternalConsistencyError("vertex missing from face lattice")
        euler = sum((-1) ** f.dim for f in faces)
        if euler != 1:
            raise InternalConsistencyError("Euler relation failed")
        for f in faces:
            if len(f.facet_ids) == 0 and f.dim != self.dim:
                raise InternalConsistencyError("improper face has wrong dimension")
        return tuple(faces)

    def faces(self, k: int) -> tuple[Face, ...]:
        """The k-dimensional faces; empty outside 0..dim."""
        if k < 0 or k > self.dim:
            return ()
        return tuple(f for f in self.face_lattice() if f.dim == k)

    def top_face(self) -> Face:
        return self.faces(self.dim)[0]

    def face_children(self, face: Face) -> tuple[Face, ...]:
        """Faces of dimension face.dim - 1 contained in `face`."""
        if "children" not in self._cache:
            by_dim: dict[int, list[Face]] = {}
            for f in self.face_lattice():
                by_dim.setdefault(f.dim, []).append(f)
            children: dict[tuple, tuple] = {}
            for f in self.face_lattice():
                if f.dim == 0:
                    children[f.vertex_ids] = ()
                    continue
                fset = set(f.vertex_ids)
                kids = tuple(
                    g
                    for g in by_dim.get(f.dim - 1, [])
                    if fset.issuperset(g.vertex_ids)
                )
                children[f.vertex_ids] = kids
            self._cache["children"] = children
        return self._cache["children"][face.vertex_ids]

    def edge_graph(self) -> dict[int, tuple[int, ...]]:
        """Vertex id -> sorted ids of neighbors along edges."""
        if "edges" not in self._cache:
            adj: dict[int, set] = {i: set() for i in range(len(self.vertices))}
            for e in self.faces(1):
                u, v = e.vertex_ids
                adj[u].add(v)
                adj[v].add(u)
            self._cache["edges"] = {
                i: tuple(sorted(s)) for i, s in adj.items()
            }
        return self._cache["edges"]

    # -- predicates ------------------------------------------------------

    def is_simple(self) -> bool:
        """True iff every vertex lies on exactly dim(P) edges."""
        if "simple" not in self._cache:
            g = self.edge_graph()
            self._cache["simple"] = all(
                len(nbrs) == self.dim for nbrs in g.values()
            )
        return self._cache["simple"]

    def is_delzant(self) -> bool:
        """Simple, and the primitive edge directions at every vertex form a
        basis of the span lattice (determinant +-1 in the normalized model).
        """
        if "delzant" not in self._cache:
            self._cache["delzant"] = self._compute_delzant()
        return self._cache["delzant"]

    def _compute_delzant(self) -> bool:
        if not self.is_simple():
            return False
        if self.dim == 0:
            return True
        g = self.edge_graph()
        for v, nbrs in g.items():
            dirs = [
                list(la.primitive(la.vec_sub(self._nverts[w], self._nverts[v])))
                for w in nbrs
            ]
            if abs(la.det(dirs)) != 1:
                return False
        return True

    # -- transformations ---------------------------------------------------

    def dilate(self, n: int) -> "Polytope":
        """The dilate nP, n >= 1: vertices scaled, facet offsets scaled."""
        if n < 1:
            raise DomainError("dilation factor must be a positive integer")
        if n == 1:
            return self
        norm = la.AffineNormalization(
            matrix=self._norm.matrix,
            base=tuple(n * x for x in self._norm.base),
            basis=self._norm.basis,
            dim=self.dim,
        )
        scaled = [tuple(n * x for x in v) for v in self.vertices]
        out = Polytope(_internal=True)
        out.name = None
        out.ambient_dim = self.ambient_dim
        out.dim = self.dim
        out.vertices = tuple(scaled)
        out._norm = norm
        out._nverts = tuple(tuple(n * y for y in w) for w in self._nverts)
        out._nfacets = tuple((a, n * b) for a, b in self._nfacets)
        out._incidence = self._incidence
        out._cache = {}
        return out

    def unimodular_image(
        self, matrix: Sequence[Sequence[int]], shift: Sequence[int] | None = None
    ) -> "Polytope":
        """Image under an affine unimodular map x -> M x + t."""
        M = [list(r) for r in matrix]
        if len(M) != self.ambient_dim or not la.is_unimodular(M):
            raise DomainError("transform is not an affine unimodular map")
        t = tuple(shift) if shift is not None else (0,) * self.ambient_dim
        mapped = [la.vec_add(la.mat_vec(M, v), t) for v in self.vertices]
        return Polytope.from_vertices(mapped, name=self.name)

    def normalized_copy(self) -> "Polytope":
        """This polytope re-embedded full dimensionally via its model."""
        return Polytope.from_vertices(self._nverts, name=self.name)

    # -- membership ------------------------------------------------------

    def contains(self, point: Sequence) -> bool:
        """Exact membership for a rational point of the ambient space."""
        if len(point) != self.ambient_dim:
            raise DomainError("point dimension does not match ambient dimension")
        x = [Fraction(c) for c in point]
        for c, val in self.span_equations:
            if sum(Fraction(ci) * xi for ci, xi in zip(c, x)) != val:
                return False
        for a, b in self.facets:
            if sum(Fraction(ai) * xi for ai, xi in zip(a, x)) < b:
                return False
        return True

    # -- per-face model data (used by volume and counting) ----------------

    def _face_model(self, face: Face):
        """(normalization, vertex coords, inequalities) of a face.

        Coordinates are a lattice normalization of the face's own span
        inside the polytope's model; inequalities are the restrictions of
        the model facets not containing the face, and cut the face out of
        its span exactly.
        """
        key = ("fmodel", face.vertex_ids)
        if key not in self._cache:
            pts = [self._nverts[i] for i in face.vertex_ids]
            norm = la.affine_normalize(pts)
            coords = {i: norm.forward(self._nverts[i]) for i in face.vertex_ids}
            ineqs = []
            fset = set(face.facet_ids)
            for j, (a, b) in enumerate(self._nfacets):
                if j in fset:
                    continue
                ra = tuple(la.dot(w, a) for w in norm.basis)
                rb = b - la.dot(a, norm.base)
                ineqs.append((ra, rb))
            self._cache[key] = (norm, coords, tuple(ineqs))
        return self._cache[key]

    def _face_subpolytope(self, face: Face) -> "Polytope":
        key = ("fpoly", face.vertex_ids)
        if key not in self._cache:
            self._cache[key] = Polytope.from_vertices(
                [self.vertices[i] for i in face.vertex_ids]
            )
        return self._cache[key]

    def _triangulation(self, face: Face) -> tuple[tuple[int, ...], ...]:
        """Pulling triangulation of a face, as tuples of vertex ids.

        Cones from the lexicographically smallest vertex over the
        triangulations of the facets of the face that avoid it.
        """
        key = ("tri", face.vertex_ids)
        if key not in self._cache:
            if face.dim == 0:
                simplices = (face.vertex_ids,)
            else:
                apex = face.vertex_ids[0]  # vertices are lex sorted
                simplices = []
                for child in self.face_children(face):
                    if apex in child.vertex_ids:
                        continue
                    for s in self._triangulation(child):
                        simplices.append(s + (apex,))
                simplices = tuple(simplices)
            self._cache[key] = simplices
        return self._cache[key]

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        doc = {}
        if self.name is not None:
            doc["name"] = self.name
        doc["ambient_dim"] = self.ambient_dim
        doc["vertices"] = [list(v) for v in self.vertices]
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "Polytope":
        if not isinstance(doc, dict):
            raise DomainError("polytope document must be a JSON object")
        if "vertices" not in doc:
            raise DomainError("missing field 'vertices'")
        if "ambient_dim" not in doc:
            raise DomainError("missing field 'ambient_dim'")
        n = doc["ambient_dim"]
        verts = doc["vertices"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise DomainError("field 'ambient_dim' must be a nonnegative integer")
        if not isinstance(verts, list) or not verts:
            raise DomainError("field 'vertices' must be a nonempty array")
        for v in verts:
            if (
                not isinstance(v, list)
                or len(v) != n
                or any(not isinstance(c, int) or isinstance(c, bool) for c in v)
            ):
                raise DomainError(
                    "field 'vertices' must contain integer points of the stated"
                    " ambient dimension"
                )
        name = doc.get("name")
        if name is not None and not isinstance(name, str):
            raise DomainError("field 'name' must be a string")
        return cls.from_vertices([tuple(v) for v in verts], name=name)


# ---------------------------------------------------------------------------
# helpers


def _clean_points(points: Iterable[Sequence[int]]) -> list[Point]:
    pts = []
    seen = set()
    n = None
    for p in points:
        t = tuple(p)
        if any(not isinstance(c, int) or isinstance(c, bool) for c in t):
            raise DomainError("vertices must have integer coordinates")
        if n is None:
            n = len(t)
        elif len(t) != n:
            raise DomainError("vertices must share one ambient dimension")
        if t not in seen:
            seen.add(t)
            pts.append(t)
    if not pts:
        raise DomainError("a polytope needs at least one vertex")
    return pts


def _hull_candidate_normals(model: list[Point], d: int) -> list[Point]:
    """Primitive normals of hyperplanes through d affinely independent
    model points. Every facet normal of the hull appears among them."""
    out = []
    seen = set()
    for subset in itertools.combinations(range(len(model)), d):
        base = model[subset[0]]
        diffs = [list(la.vec_sub(model[i], base)) for i in subset[1:]]
        kern = la.kernel_basis(diffs) if diffs else la.kernel_basis([[0] * d])
        if len(kern) != 1:
            continue
        a = la.primitive(kern[0])
        # canonical sign for dedup only; both signs are tried downstream
        for x in a:
            if x != 0:
                if x < 0:
                    a = tuple(-y for y in a)
                break
        if a not in seen:
            seen.add(a)
            out.append(a)
    return out
