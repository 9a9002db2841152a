"""Constructive witnesses: determinant-1 positive definite diagonals grown
along chains of induced subgraphs, trivial-group structures, and the
unit-fraction machinery for complete graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .critical import evaluate, linear_in_t, matrix_at
from .graphs import FamilySpec, GraphError, Multigraph, build_family, induced_subgraph, is_connected
from .linalg import adjugate, determinant, is_positive_definite
from .structures import ArithmeticalStructure, StructureError, verify_structure


class WitnessError(ValueError):
    """A witness construction step could not be carried out."""


@dataclass(frozen=True)
class UnitWitness:
    """A diagonal with determinant 1 and positive definite matrix, together
    with how it was grown (seed name, then (vertex, entry) extension steps)."""

    graph: Multigraph
    diag: tuple[int, ...]
    seed: str
    steps: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        m = matrix_at(self.graph, self.diag)
        if determinant(m) != 1 or not is_positive_definite(m):
            raise WitnessError("unit witness must have determinant 1 and be positive definite")

    @property
    def min_entry(self) -> int:
        return min(self.diag)


def _mapped_seed(g: Multigraph, spec: FamilySpec, pattern_diag: Sequence[int],
                 name: str) -> tuple[tuple[int, ...], UnitWitness] | None:
    from .classify import find_induced

    emb = find_induced(g, spec)
    if emb is None:
        return None
    verts = tuple(sorted(emb))
    pos = {u: i for i, u in enumerate(verts)}
    diag = [0] * len(verts)
    for p, u in enumerate(emb):
        diag[pos[u]] = pattern_diag[p]
    sub, _ = induced_subgraph(g, verts)
    return verts, UnitWitness(sub, tuple(diag), name)


def _seed_catalogue(max_size: int, egyptian13: Sequence[int] | None):
    """(size, spec, pattern diagonal, name), smallest first; at equal size
    extended cycles come before the diamond, then the E8 tree."""
    entries: list[tuple[int, FamilySpec, tuple[int, ...], str]] = [
        (3, FamilySpec("Amult", (1, 2)), (2, 2, 3), "A3(2,1)")]
    for m in range(3, max_size):
        entries.append((m + 1, FamilySpec("C+", (m,)),
                        (2, 3) + (2,) * (m - 1), f"C{m}+"))
    entries.append((4, FamilySpec("cone", (FamilySpec("A", (3,)),)),
                    (2, 2, 3, 5), "cone(A3)"))
    entries.append((8, FamilySpec("E", (8,)), (2,) * 8, "E8"))
    if egyptian13 is not None:
        ys = [int(y) for y in egyptian13]
        entries.append((13, FamilySpec("K", (13,)),
                        tuple(y - 1 for y in ys), "K13(unit-fraction)"))
    order = {"C+": 0, "cone": 1, "E": 2, "K": 3, "Amult": 4}
    entries.sort(key=lambda e: (e[0], order[e[1].tag]))
    return [e for e in entries if e[0] <= max_size]


def find_seed(g: Multigraph, r: int, egyptian13: Sequence[int] | None = None
              ) -> tuple[tuple[int, ...], UnitWitness] | None:
    """An induced subgraph with a known determinant-1 positive definite
    diagonal whose entries are all >= r.

    r=1: any edge {i, j} of multiplicity a carries (a^2+1, 1); a single
    vertex carries (1).  r=2: search the catalogue of unit seeds, smallest
    first.  Returns (vertex set in g, witness on the induced subgraph).
    """
    if not is_connected(g):
        raise GraphError("seed search expects a connected graph")
    if r == 1:
        if g.n == 1:
            return (0,), UnitWitness(g, (1,), "vertex")
        i, j, a = g.edge_list()[0]
        sub, _ = induced_subgraph(g, (i, j))
        return (i, j), UnitWitness(sub, (a * a + 1, 1), f"edge({i},{j})")
    if r != 2:
        raise WitnessError("seeds are catalogued for r = 1 and r = 2 only")
    for _, spec, pattern_diag, name in _seed_catalogue(g.n, egyptian13):
        hit = _mapped_seed(g, spec, pattern_diag, name)
        if hit is not None:
            return hit
    return None


def connected_extension_chain(g: Multigraph, h_vertices: Sequence[int]) -> list[int]:
    """Order the remaining vertices so every prefix extension stays connected
    (greedy frontier, lowest index first)."""
    if not is_connected(g):
        raise GraphError("chain construction expects a connected graph")
    current = set(h_vertices)
    sub, _ = induced_subgraph(g, current)
    if not is_connected(sub):
        raise GraphError("the starting vertex set must induce a connected subgraph")
    chain: list[int] = []
    while len(current) < g.n:
        frontier = [w for w in range(g.n)
                    if w not in current and any(g.mult[w][u] > 0 for u in current)]
        if not frontier:
            raise GraphError("graph is disconnected")
        w = min(frontier)
        chain.append(w)
        current.add(w)
    return chain


def _step_data(g: Multigraph, v: int, witness: UnitWitness):
    """Shared setup: complement block N (det 1, positive definite), the
    connection column S, and a = S^t N* S, cross-checked against the direct
    one-variable fit."""
    keep = [u for u in range(g.n) if u != v]
    sub, idx = induced_subgraph(g, keep)
    if sub.mult != witness.graph.mult:
        raise WitnessError("witness graph does not match g minus v")
    nm = matrix_at(sub, witness.diag)
    s = [g.mult[v][u] for u in idx]
    if all(x == 0 for x in s):
        raise GraphError("v is not connected to the rest of the graph")
    nstar = adjugate(nm)
    a = sum(s[i] * nstar.rows[i][j] * s[j]
            for i in range(len(s)) for j in range(len(s)))
    form = linear_in_t(g, v, witness.diag)
    if (form.alpha, form.beta) != (1, a):
        raise AssertionError("induction step disagrees with the one-variable fit")
    r0 = nstar.mul_vec(s)
    return a, r0


def induction_step(g: Multigraph, v: int, witness: UnitWitness, m: int) -> tuple[int, ...]:
    """Diagonal on g with determinant m >= 1, from a unit witness on g - v.

    det M_G(t, rest) = t - a with a = S^t N* S > 0, so entry a + m at v
    hits m exactly; the matrix stays positive definite and its group is
    cyclic because the complement block has determinant 1.
    """
    if m < 1:
        raise WitnessError("target determinant must be >= 1")
    a, _ = _step_data(g, v, witness)
    diag = list(witness.diag)
    diag.insert(v, a + m)
    out = tuple(diag)
    got = evaluate(g, out)
    if got != m:
        raise AssertionError(f"induction step produced determinant {got}, wanted {m}")
    return out


def induction_step_zero(g: Multigraph, v: int, witness: UnitWitness,
                        min_entry: int | None = None) -> ArithmeticalStructure:
    """Trivial-group structure on g from a unit witness on g - v.

    Entry a = S^t N* S at v gives determinant 0 with kernel (1, N* S);
    the group is trivial because the complement block has determinant 1.
    When deg(v) >= 2 the entry a is automatically >= 2; with deg(v) = 1 it
    can drop below ``min_entry``, which is reported as an expected failure.
    """
    a, r0 = _step_data(g, v, witness)
    if min_entry is not None and a < min_entry:
        raise StructureError(
            f"pivot entry {a} falls below {min_entry}; this happens only when "
            f"the new vertex has degree 1")
    diag = list(witness.diag)
    diag.insert(v, a)
    r_vec = list(r0)
    r_vec.insert(v, 1)
    st = verify_structure(g, tuple(diag), tuple(r_vec))
    if st.group_order != 1:
        raise AssertionError("zero step must produce a trivial group")
    return st


def unit_witness(g: Multigraph, r: int, egyptian13: Sequence[int] | None = None
                 ) -> UnitWitness | None:
    """Grow a determinant-1 positive definite diagonal with entries >= r.

    Starts from a seed, orders the remaining vertices into a connected
    chain, and applies the one-vertex induction step with target 1 at every
    extension.  Returns None when no seed exists (r = 2 on the exceptional
    families)."""
    if not is_connected(g):
        raise GraphError("unit witnesses require a connected graph")
    found = find_seed(g, r, egyptian13)
    if found is None:
        return None
    verts, witness = found
    chain = connected_extension_chain(g, verts)
    current = list(verts)
    for w in chain:
        current = sorted(current + [w])
        sub, idx = induced_subgraph(g, current)
        v_pos = idx.index(w)
        diag = induction_step(sub, v_pos, witness, 1)
        witness = UnitWitness(sub, diag, witness.seed,
                              witness.steps + ((w, diag[v_pos]),))
    return witness


def trivial_group_structure(g: Multigraph) -> ArithmeticalStructure:
    """An arithmetical structure with trivial group, on any connected graph
    with at least two vertices: unit witness on g minus a non-cut vertex,
    then the zero induction step."""
    if g.n < 2:
        raise StructureError("no arithmetical structures on a single vertex")
    if not is_connected(g):
        raise GraphError("trivial-group construction expects a connected graph")
    for v in range(g.n):
        rest = [u for u in range(g.n) if u != v]
        sub, _ = induced_subgraph(g, rest)
        if is_connected(sub):
            witness = unit_witness(sub, 1)
            assert witness is not None
            return induction_step_zero(g, v, witness)
    raise GraphError("no removable vertex keeps the graph connected")


# ---------------------------------------------------------------------------
# unit fractions and complete graphs


def egyptian_check(ys: Sequence[int]) -> bool:
    """Exact check of sum(1/y_i) + 1/prod(y_i) == 1."""
    if any(y < 1 for y in ys):
        raise ValueError("terms must be positive")
    prod = 1
    total = Fraction(0)
    for y in ys:
        prod *= y
        total += Fraction(1, y)
    return total + Fraction(1, prod) == 1


def egyptian_search(n: int, min_y: int = 3) -> tuple[int, ...] | None:
    """Exhaustive ordered search for sum(1/y_i) + 1/prod = 1 with
    min_y <= y_1 < ... < y_n.

    Terms in a solution are pairwise coprime, so candidates sharing a factor
    with the running product are pruned; the final term is forced by the
    closing identity.  Returns the first solution in lexicographic order, or
    None (which, the search being exhaustive, proves there is none).
    """
    if n < 1:
        raise ValueError("need n >= 1")

    def rec(k: int, rem: Fraction, prod: int, prev: int, acc: list[int]):
        slots = n - k
        num, den = rem.numerator, rem.denominator
        if slots == 1:
            # 1/y + 1/(prod*y) = rem  =>  y = den*(prod+1) / (num*prod)
            y_num = den * (prod + 1)
            y_den = num * prod
            if y_num % y_den:
                return None
            y = y_num // y_den
            if y > prev and y >= min_y and gcd(y, prod) == 1:
                return acc + [y]
            return None
        lo = max(prev + 1, min_y, den // num + 1)
        hi = ((slots + 1) * den) // num
        for y in range(lo, hi + 1):
            if gcd(y, prod) != 1:
                continue
            rem2 = rem - Fraction(1, y)
            if rem2 <= 0:
                break
            res = rec(k + 1, rem2, prod * y, y, acc + [y])
            if res is not None:
                return res
        return None

    res = rec(0, Fraction(1), 1, min_y - 1, [])
    return tuple(res) if res is not None else None


def kn_witness_from_solution(ys: Sequence[int]) -> UnitWitness:
    """Determinant-1 positive definite diagonal (y_1-1, ..., y_n-1) on the
    complete graph, from a unit-fraction solution with all terms >= 3."""
    from .critical import complete_graph_det

    ys = [int(y) for y in ys]
    if any(y < 3 for y in ys):
        raise WitnessError("all terms must be >= 3")
    if not egyptian_check(ys):
        raise WitnessError("the unit-fraction identity does not hold")
    diag = tuple(y - 1 for y in ys)
    if complete_graph_det(diag) != 1:
        raise AssertionError("closed form disagrees with the unit-fraction identity")
    g = build_family(FamilySpec("K", (len(ys),)))
    return UnitWitness(g, diag, f"unit-fraction(n={len(ys)})")
