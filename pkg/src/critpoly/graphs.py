"""Undirected multigraphs without self-loops, and the named graph families.

Vertex orderings of the built-in families are frozen so that reported
diagonals and kernel vectors are reproducible:

* ``A(n)``          path 0-1-...-(n-1)
* ``Amult(e1,..)``  path with edge multiplicities e_i between i-1 and i
* ``D(n)``          path 0..n-2, extra leaf n-1 attached to vertex 1
* ``E(n)``          path 0..n-2, extra leaf n-1 attached to vertex 2
* ``~D(n)``         path 0..n-2, leaf n-1 on vertex 1, leaf n on vertex n-3
* ``~E(6|7|8)``     see ``build_family``
* ``C(n)``          cycle 0-1-...-(n-1)-0  (C(2) is the double edge)
* ``C+(n)``         cycle 0..n-1, pendant vertex n attached to vertex 0
* ``K(n)``          complete graph
* ``K+(n)``         complete graph 0..n-1, pendant vertex n on vertex 0
* ``Kpq(p,q)``      parts {0..p-1} and {p..p+q-1}
* ``S(n)``          hub 0, leaves 1..n-1
* ``S+(n)``         star plus pendant vertex n attached to leaf 1
* ``W(n)``          hub 0, rim cycle 1..n
* ``cone(spec)``    new hub 0, inner graph shifted up by one
* ``banana(e)``     two vertices joined by e parallel edges
* ``C3mult(e1,e2,e3)``  triangle with edge (1,2) of multiplicity e1,
                        (0,2) of multiplicity e2, (0,1) of multiplicity e3
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph parameters or operation."""


@dataclass(frozen=True)
class Multigraph:
    """Immutable multigraph stored as a symmetric multiplicity matrix.

    ``mult[i][j]`` counts the edges between vertices i and j; the diagonal
    is zero (no self-loops).
    """

    mult: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        n = len(self.mult)
        if n == 0:
            raise GraphError("graph needs at least one vertex")
        for i, row in enumerate(self.mult):
            if len(row) != n:
                raise GraphError("multiplicity matrix must be square")
            if row[i] != 0:
                raise GraphError("self-loops are not allowed")
            for j, m in enumerate(row):
                if m < 0:
                    raise GraphError("edge multiplicities must be non-negative")
                if m != self.mult[j][i]:
                    raise GraphError("multiplicity matrix must be symmetric")
        if self.labels is not None and len(self.labels) != n:
            raise GraphError("label count must match vertex count")

    @property
    def n(self) -> int:
        return len(self.mult)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        labels: Sequence[str] | None = None,
    ) -> "Multigraph":
        """Build from ``(i, j)`` or ``(i, j, multiplicity)`` entries (0-based)."""
        m = [[0] * n for _ in range(n)]
        for edge in edges:
            if len(edge) == 2:
                i, j, e = edge[0], edge[1], 1
            elif len(edge) == 3:
                i, j, e = edge
            else:
                raise GraphError(f"bad edge entry {edge!r}")
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge {edge!r} out of range for n={n}")
            if i == j:
                raise GraphError("self-loops are not allowed")
            if e < 0:
                raise GraphError("edge multiplicity must be non-negative")
            m[i][j] += e
            m[j][i] += e
        return cls(tuple(tuple(row) for row in m),
                   tuple(labels) if labels is not None else None)

    def degree(self, i: int) -> int:
        return sum(self.mult[i])

    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.mult)

    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(j for j, m in enumerate(self.mult[i]) if m > 0)

    def is_simple(self) -> bool:
        return all(m <= 1 for row in self.mult for m in row)

    def edge_list(self) -> list[tuple[int, int, int]]:
        """Edges as ``(i, j, multiplicity)`` with i < j."""
        return [(i, j, self.mult[i][j])
                for i, j in combinations(range(self.n), 2)
                if self.mult[i][j] > 0]

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        """Apply a permutation: old vertex i becomes new vertex perm[i]."""
        n = self.n
        if sorted(perm) != list(range(n)):
            raise GraphError("relabel needs a permutation of the vertices")
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m[perm[i]][perm[j]] = self.mult[i][j]
        return Multigraph(tuple(tuple(row) for row in m))


@dataclass(frozen=True)
class FamilySpec:
    """A named family member: a tag plus its integer (or nested) parameters."""

    tag: str
    params: tuple = ()

    def __str__(self) -> str:
        from .dsl import render_spec

        return render_spec(self)


def _path_mult(mults: Sequence[int]) -> Multigraph:
    n = len(mults) + 1
    return Multigraph.from_edges(n, [(i, i + 1, e) for i, e in enumerate(mults)])


def build_family(spec: FamilySpec) -> Multigraph:
    """Construct the canonical representative of a family member.

    Raises GraphError for out-of-range parameters (for example E(5)).
    """
    tag, p = spec.tag, spec.params

    def need(cond: bool) -> None:
        if not cond:
            raise GraphError(f"invalid parameters for family {tag}: {p}")

    if tag == "A":
        need(len(p) == 1 and p[0] >= 1)
        return _path_mult([1] * (p[0] - 1)) if p[0] > 1 else Multigraph(((0,),))
    if tag == "Amult":
        need(len(p) >= 1 and all(e >= 1 for e in p))
        return _path_mult(p)
    if tag == "D":
        need(len(p) == 1 and p[0] >= 4)
        n = p[0]
        edges = [(i, i + 1) for i in range(n - 2)] + [(1, n - 1)]
        return Multigraph.from_edges(n, edges)
    if tag == "E":
        need(len(p) == 1 and p[0] in (6, 7, 8))
        n = p[0]
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
        return Multigraph.from_edges(n, edges)
    if tag == "~D":
        need(len(p) == 1 and p[0] >= 4)
        n = p[0]
        edges = [(i, i + 1) for i in range(n - 2)] + [(1, n - 1), (n - 3, n)]
        return Multigraph.from_edges(n + 1, edges)
    if tag == "~E":
        need(len(p) == 1 and p[0] in (6, 7, 8))
        n = p[0]
        if n == 6:
            edges = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]
        elif n == 7:
            edges = [(i, i + 1) for i in range(6)] + [(3, 7)]
        else:
            edges = [(i, i + 1) for i in range(7)] + [(5, 8)]
        return Multigraph.from_edges(n + 1, edges)
    if tag == "C":
        need(len(p) == 1 and p[0] >= 2)
        n = p[0]
        if n == 2:
            return Multigraph.from_edges(2, [(0, 1, 2)])
        return Multigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if tag == "C+":
        need(len(p) == 1 and p[0] >= 2)
        return attach_pendant(build_family(FamilySpec("C", p)), 0, 1)
    if tag == "K":
        need(len(p) == 1 and p[0] >= 1)
        n = p[0]
        return Multigraph.from_edges(n, combinations(range(n), 2))
    if tag == "K+":
        need(len(p) == 1 and p[0] >= 2)
        return attach_pendant(build_family(FamilySpec("K", p)), 0, 1)
    if tag == "Kpq":
        need(len(p) == 2 and p[0] >= 1 and p[1] >= 1)
        q0, q1 = p
        return Multigraph.from_edges(
            q0 + q1, [(i, q0 + j) for i in range(q0) for j in range(q1)])
    if tag == "S":
        need(len(p) == 1 and p[0] >= 4)
        n = p[0]
        return Multigraph.from_edges(n, [(0, i) for i in range(1, n)])
    if tag == "S+":
        need(len(p) == 1 and p[0] >= 4)
        return attach_pendant(build_family(FamilySpec("S", p)), 1, 1)
    if tag == "W":
        need(len(p) == 1 and p[0] >= 3)
        return cone(build_family(FamilySpec("C", p)))
    if tag == "cone":
        need(len(p) == 1 and isinstance(p[0], FamilySpec))
        return cone(build_family(p[0]))
    if tag == "banana":
        need(len(p) == 1 and p[0] >= 1)
        return Multigraph.from_edges(2, [(0, 1, p[0])])
    if tag == "C3mult":
        need(len(p) == 3 and all(e >= 1 for e in p))
        e1, e2, e3 = p
        return Multigraph.from_edges(3, [(1, 2, e1), (0, 2, e2), (0, 1, e3)])
    if tag == "custom":
        need(len(p) == 1 and isinstance(p[0], Multigraph))
        return p[0]
    raise GraphError(f"unknown family tag {tag!r}")


def induced_subgraph(g: Multigraph, keep: Iterable[int]) -> tuple[Multigraph, tuple[int, ...]]:
    """Restrict to a vertex subset.

    Returns the restricted graph together with the index map: new vertex i
    corresponds to old vertex ``index_map[i]`` (old indices in sorted order).
    """
    idx = sorted(set(keep))
    if not idx:
        raise GraphError("induced subgraph needs a non-empty vertex set")
    if idx[0] < 0 or idx[-1] >= g.n:
        raise GraphError("vertex out of range")
    rows = tuple(tuple(g.mult[i][j] for j in idx) for i in idx)
    return Multigraph(rows), tuple(idx)


def is_connected(g: Multigraph) -> bool:
    """Reachability over edges of positive multiplicity."""
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in g.neighbors(i):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == g.n


def cone(g: Multigraph) -> Multigraph:
    """Join a new vertex 0 to every vertex of g by a single edge."""
    n = g.n
    rows = [[0] + [1] * n]
    for i in range(n):
        rows.append([1] + list(g.mult[i]))
    return Multigraph(tuple(tuple(r) for r in rows))


def attach_pendant(g: Multigraph, v: int, e: int = 1) -> Multigraph:
    """Add one vertex linked to v with multiplicity e >= 1."""
    if not 0 <= v < g.n:
        raise GraphError("vertex out of range")
    if e < 1:
        raise GraphError("pendant multiplicity must be >= 1")
    n = g.n
    rows = [list(g.mult[i]) + [e if i == v else 0] for i in range(n)]
    rows.append([e if i == v else 0 for i in range(n)] + [0])
    return Multigraph(tuple(tuple(r) for r in rows))


def spanning_tree_count(g: Multigraph) -> int:
    """Number of spanning trees, as a first minor of the Laplacian."""
    from .linalg import IntMatrix, determinant

    if not is_connected(g):
        raise GraphError("spanning tree count requires a connected graph")
    if g.n == 1:
        return 1
    deg = g.degrees()
    rows = tuple(
        tuple((deg[i] if i == j else 0) - g.mult[i][j] for j in range(1, g.n))
        for i in range(1, g.n))
    return determinant(IntMatrix(rows))
