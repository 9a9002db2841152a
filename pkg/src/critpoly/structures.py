"""Arithmetical structures (diagonal, positive kernel vector, discriminant
group): verification, bounded enumeration, and the closed-form families on
wheels, extended cycles, and extended-Dynkin enlargements."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .critical import matrix_at
from .graphs import FamilySpec, GraphError, Multigraph, build_family, is_connected
from .linalg import (InvariantFactors, adjugate, adjugate_row, determinant,
                     is_cyclic, is_positive_definite, positive_kernel_vector,
                     smith_normal_form)


class StructureError(ValueError):
    """A claimed arithmetical structure failed verification."""


# full n^2-cofactor adjugate comparison up to this size; above it one row of
# cofactors pins the adjugate together with symmetry and the rank-(n-1) kernel
FULL_ADJUGATE_LIMIT = 9


@dataclass(frozen=True)
class ArithmeticalStructure:
    """Pair (M, R): M = Diag(diag) - A positive semi-definite of rank n-1,
    R strictly positive with coprime entries, M R = 0."""

    graph: Multigraph
    diag: tuple[int, ...]
    r_vec: tuple[int, ...]
    phi: InvariantFactors

    @property
    def group_order(self) -> int:
        return self.phi.order

    def matrix(self):
        return matrix_at(self.graph, self.diag)

    def is_cyclic(self) -> bool:
        return is_cyclic(self.phi)


def verify_structure(g: Multigraph, diag: Sequence[int], r_vec: Sequence[int]) -> ArithmeticalStructure:
    """Check every invariant and return the verified structure.

    Raises StructureError on: length mismatch, non-positive entries,
    gcd(R) != 1, M R != 0, failure of semi-definiteness of rank n-1, or the
    adjugate identity M* = |Phi| R R^t.
    """
    n = g.n
    diag = tuple(int(x) for x in diag)
    r_vec = tuple(int(x) for x in r_vec)
    if len(diag) != n or len(r_vec) != n:
        raise StructureError("diagonal and kernel vector must match the vertex count")
    if any(a < 1 for a in diag):
        raise StructureError("diagonal entries must be positive")
    if any(r < 1 for r in r_vec):
        raise StructureError("kernel vector entries must be positive")
    g0 = 0
    for r in r_vec:
        g0 = gcd(g0, r)
    if g0 != 1:
        raise StructureError("kernel vector entries must be coprime")
    if not is_connected(g):
        raise StructureError("arithmetical structures live on connected graphs")
    m = matrix_at(g, diag)
    if any(v != 0 for v in m.mul_vec(r_vec)):
        raise StructureError("M R != 0")
    if determinant(m) != 0 or positive_kernel_vector(m) != r_vec:
        raise StructureError("matrix is not singular with the claimed kernel line")
    snf = smith_normal_form(m)
    if snf.rank != n - 1:
        raise StructureError("matrix rank is not n-1")
    order = snf.order
    if n <= FULL_ADJUGATE_LIMIT:
        expected = tuple(tuple(order * r_vec[i] * r_vec[j] for j in range(n))
                         for i in range(n))
        if adjugate(m).rows != expected:
            raise StructureError("adjugate identity M* = |Phi| R R^t failed")
    else:
        # rank n-1 makes every column of M* proportional to R; with symmetry
        # one row of cofactors pins the whole adjugate
        row0 = adjugate_row(m, 0)
        if row0 != tuple(order * r_vec[0] * r for r in r_vec):
            raise StructureError("adjugate identity M* = |Phi| R R^t failed")
    return ArithmeticalStructure(g, diag, r_vec, snf)


def laplacian_structure(g: Multigraph) -> ArithmeticalStructure:
    """The Laplacian structure: diagonal of degrees, all-ones kernel vector."""
    if not is_connected(g):
        raise GraphError("Laplacian structure requires a connected graph")
    if g.n == 1:
        raise StructureError("no arithmetical structures on a single vertex")
    return verify_structure(g, g.degrees(), (1,) * g.n)


def enumerate_structures(g: Multigraph, r: int, diag_bound: int) -> list[ArithmeticalStructure]:
    """All structures with r <= a_i <= diag_bound, in diagonal-lex order.

    Complete within the box only.  Subtrees whose minimal completion is
    already positive definite are pruned: raising any entry keeps the matrix
    positive definite with a strictly larger (hence non-zero) determinant.
    """
    if r < 1 or diag_bound < r:
        raise GraphError("need 1 <= r <= diag_bound")
    if not is_connected(g) or g.n == 1:
        return []
    n = g.n
    out: list[ArithmeticalStructure] = []
    diag = [r] * n

    def rec(k: int) -> None:
        if k == n:
            m = matrix_at(g, diag)
            if determinant(m) == 0:
                rv = positive_kernel_vector(m)
                if rv is not None:
                    out.append(verify_structure(g, tuple(diag), rv))
            return
        for v in range(r, diag_bound + 1):
            diag[k] = v
            floor_diag = diag[:k + 1] + [r] * (n - k - 1)
            if is_positive_definite(matrix_at(g, floor_diag)):
                break
            rec(k + 1)
        diag[k] = r

    rec(0)
    return out


def _cumsums_desc(k: int, base: int) -> list[int]:
    """s_i = base + k + (k-1) + ... + i for i = 1..k."""
    out = []
    for i in range(1, k + 1):
        out.append(base + sum(range(i, k + 1)))
    return out


def wheel_structure_even(k: int) -> ArithmeticalStructure:
    """Structure on the even wheel W_{2k} with cyclic group of order 6k-1.

    Hub first; rim in cycle order v_1..v_k, w_k..w_1 with kernel entries
    s_i = i + ... + k on both halves, hub entry 1, hub diagonal
    2*sum(s) = k(k+1)(2k+1)/3, and diagonal 3 on the two middle rim spots.
    """
    if k < 2:
        raise GraphError("even wheel structure needs k >= 2")
    g = build_family(FamilySpec("W", (2 * k,)))
    s = _cumsums_desc(k, 0)                      # s[0] = s_1, ..., s[k-1] = s_k
    a = 2 * sum(s)
    assert a == k * (k + 1) * (2 * k + 1) // 3
    diag = (a,) + (2,) * (k - 1) + (3, 3) + (2,) * (k - 1)
    r_vec = (1,) + tuple(s) + tuple(reversed(s))
    st = verify_structure(g, diag, r_vec)
    if st.group_order != 6 * k - 1 or not st.is_cyclic():
        raise StructureError("even wheel group is not cyclic of order 6k-1")
    m = st.matrix()
    hub_minor = m.minor_matrix(0, 0)
    if determinant(hub_minor) != 6 * k - 1:
        raise StructureError("hub cofactor does not equal 6k-1")
    if determinant(hub_minor.minor_matrix(k - 1, k - 1)) != 4 * k - 1:
        raise StructureError("rim-deleted submatrix determinant is not 4k-1")
    return st


def wheel_structure_odd(k: int) -> ArithmeticalStructure:
    """Structure on the odd wheel W_{2k+1} with group (Z/(2k+1))^2.

    Same layout as the even wheel plus one extra rim vertex u' between the
    two halves carrying kernel entry 1 and diagonal 2k+3.
    """
    if k < 2:
        raise GraphError("odd wheel structure needs k >= 2")
    g = build_family(FamilySpec("W", (2 * k + 1,)))
    s = _cumsums_desc(k, 1)
    a = 1 + 2 * k + k * (k + 1) * (2 * k + 1) // 3
    assert a == 1 + 2 * sum(s)
    diag = (a,) + (2,) * k + (2 * k + 3,) + (2,) * k
    r_vec = (1,) + tuple(s) + (1,) + tuple(reversed(s))
    st = verify_structure(g, diag, r_vec)
    target = (2 * k + 1) ** 2
    if st.group_order != target or st.is_cyclic():
        raise StructureError("odd wheel group is not (Z/(2k+1))^2")
    if st.phi.nontrivial() != (2 * k + 1, 2 * k + 1):
        raise StructureError("odd wheel invariant factors are not (2k+1, 2k+1)")
    return st


def tadpole_structure(k: int) -> ArithmeticalStructure:
    """Structure on the extended cycle C_{k+7}^+ with cyclic group of order 2k+5.

    Cycle order starting at the attachment vertex: diagonal
    (2,2,2,3, 2 x k, 3, 2, 2) and pendant 2; kernel vector
    (4,3,2,1, 1 x k, 1,2,3) and pendant 2.
    """
    if k < 0:
        raise GraphError("tadpole structure needs k >= 0")
    n = k + 7
    g = build_family(FamilySpec("C+", (n,)))
    diag = (2, 2, 2, 3) + (2,) * k + (3, 2, 2) + (2,)
    r_vec = (4, 3, 2, 1) + (1,) * k + (1, 2, 3) + (2,)
    st = verify_structure(g, diag, r_vec)
    if st.group_order != 2 * k + 5 or not st.is_cyclic():
        raise StructureError("tadpole group is not cyclic of order 2k+5")
    m = st.matrix()
    attach_minor = m.minor_matrix(0, 0)
    if determinant(attach_minor) != 16 * (2 * k + 5):
        raise StructureError("attachment cofactor is not 16(2k+5)")
    # remove also the first cycle neighbour of the attachment vertex
    if determinant(attach_minor.minor_matrix(0, 0)) != 2 * (12 * k + 29):
        raise StructureError("second minor is not 2(12k+29)")
    return st


def all_two_structure(h: Multigraph) -> ArithmeticalStructure:
    """The canonical all-2 structure on a cycle or extended Dynkin tree."""
    return verify_structure(
        h, (2,) * h.n,
        _require_kernel(matrix_at(h, (2,) * h.n),
                        "the all-2 matrix has no positive kernel vector"))


def _require_kernel(m, msg: str) -> tuple[int, ...]:
    rv = positive_kernel_vector(m)
    if rv is None:
        raise StructureError(msg)
    return rv


def semidefinite_extension(h: Multigraph, v: int, variant: str) -> ArithmeticalStructure:
    """Grow a determinant-zero point at (2,2,3,2,...,2) out of an all-2
    structure.

    ``two-leaves``: attach two new vertices to v (kernel entry 1 or 2
    required there); the new graph carries diagonal 3 at v and kernel
    (1,1,R) or (1,1,2R).

    ``leaf-extension``: h must be an extended D tree; v one of a pair of
    leaves hanging on the same vertex.  A single new vertex is attached to
    v, the paired leaf gets diagonal 3, and the kernel is 3R except at the
    corner (new: 2, v: 4, paired leaf: 2).
    """
    if variant == "two-leaves":
        base = all_two_structure(h)
        rv = base.r_vec[v]
        if rv not in (1, 2):
            raise StructureError(f"kernel entry at v must be 1 or 2, got {rv}")
        g = _front_two(h, v)
        diag = (2, 2) + tuple(3 if u == v else 2 for u in range(h.n))
        scale = 1 if rv == 2 else 2
        r_vec = (1, 1) + tuple(scale * r for r in base.r_vec)
        return verify_structure(g, diag, r_vec)
    if variant == "leaf-extension":
        from .classify import recognize_family

        fam = recognize_family(h)
        if not fam.matches(FamilySpec("~D", (h.n - 1,))):
            raise StructureError("leaf extension starts from an extended D tree")
        if h.degree(v) != 1:
            raise StructureError("v must be a leaf")
        base = all_two_structure(h)
        anchor = h.neighbors(v)[0]
        partners = [u for u in h.neighbors(anchor) if u != v and h.degree(u) == 1]
        if not partners:
            raise StructureError("v has no paired leaf on the same vertex")
        partner = partners[0]
        g = _front_one(h, v)
        diag = (2,) + tuple(3 if u == partner else 2 for u in range(h.n))
        rv_new = [3 * r for r in base.r_vec]
        rv_new[v] = 4
        rv_new[partner] = 2
        return verify_structure(g, diag, (2,) + tuple(rv_new))
    raise StructureError(f"unknown variant {variant!r}")


def _front_two(h: Multigraph, v: int) -> Multigraph:
    """h plus two pendant vertices on v, new vertices first (indices 0, 1)."""
    n = h.n
    rows = [[0, 0] + [1 if u == v else 0 for u in range(n)],
            [0, 0] + [1 if u == v else 0 for u in range(n)]]
    for i in range(n):
        lead = 1 if i == v else 0
        rows.append([lead, lead] + list(h.mult[i]))
    return Multigraph(tuple(tuple(r) for r in rows))


def _front_one(h: Multigraph, v: int) -> Multigraph:
    """h plus one pendant vertex on v, the new vertex first (index 0)."""
    n = h.n
    rows = [[0] + [1 if u == v else 0 for u in range(n)]]
    for i in range(n):
        rows.append([1 if i == v else 0] + list(h.mult[i]))
    return Multigraph(tuple(tuple(r) for r in rows))
