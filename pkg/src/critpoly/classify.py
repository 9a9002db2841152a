"""Family recognition, induced-subgraph search, and structure dichotomies.

Recognition is degree- and structure-based; isomorphism and canonical forms
use degree-pruned backtracking, which is plenty at the sizes this package
targets (n up to about 12).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .critical import matrix_at
from .graphs import FamilySpec, GraphError, Multigraph, build_family, induced_subgraph, is_connected
from .linalg import determinant, is_positive_definite, is_psd_rank_nminus1

# Precedence used to pick the primary name when several families match.
CATALOGUE_ORDER = ("A", "D", "E", "~D", "~E", "C", "C+", "K", "K+", "Kpq",
                   "S", "S+", "W", "cone", "banana", "Amult", "C3mult")


# ---------------------------------------------------------------------------
# isomorphism machinery


def find_isomorphism(g: Multigraph, h: Multigraph,
                     fixed: dict[int, int] | None = None) -> tuple[int, ...] | None:
    """A multiplicity-preserving bijection g -> h, or None.

    ``fixed`` pins chosen g-vertices to h-vertices before the search.
    """
    n = g.n
    if h.n != n:
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    gdeg, hdeg = g.degrees(), h.degrees()
    mapping: dict[int, int] = dict(fixed or {})
    if any(gdeg[u] != hdeg[v] for u, v in mapping.items()):
        return None
    used = set(mapping.values())
    order = sorted((u for u in range(n) if u not in mapping),
                   key=lambda u: (-gdeg[u], u))

    def rec(k: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        for v in range(n):
            if v in used or hdeg[v] != gdeg[u]:
                continue
            if any(g.mult[u][w] != h.mult[v][mapping[w]] for w in mapping):
                continue
            mapping[u] = v
            used.add(v)
            if rec(k + 1):
                return True
            del mapping[u]
            used.remove(v)
        return False

    if not rec(0):
        return None
    return tuple(mapping[u] for u in range(n))


def are_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    return find_isomorphism(g, h) is not None


def canonical_form(g: Multigraph) -> tuple[tuple[int, ...], ...]:
    """Lexicographically minimal multiplicity matrix over all relabelings."""
    n = g.n
    mult = g.mult
    best_key: list[int] | None = None
    best_perm: list[int] | None = None
    degs = g.degrees()

    def rec(perm: list[int], key: list[int]) -> None:
        nonlocal best_key, best_perm
        p = len(perm)
        if p == n:
            if best_key is None or key < best_key:
                best_key = list(key)
                best_perm = list(perm)
            return
        in_perm = set(perm)
        for v in sorted(range(n), key=lambda v: (degs[v], v)):
            if v in in_perm:
                continue
            nk = key + [mult[u][v] for u in perm]
            if best_key is not None and nk > best_key[:len(nk)]:
                continue
            rec(perm + [v], nk)

    rec([], [])
    assert best_perm is not None
    return tuple(tuple(mult[best_perm[i]][best_perm[j]] for j in range(n))
                 for i in range(n))


def vertex_classes(g: Multigraph) -> list[list[int]]:
    """Vertex orbits under the automorphism group (pairwise iso tests)."""
    classes: list[list[int]] = []
    for v in range(g.n):
        for cl in classes:
            if find_isomorphism(g, g, fixed={v: cl[0]}) is not None:
                cl.append(v)
                break
        else:
            classes.append([v])
    return classes


def find_induced(g: Multigraph, pattern: Multigraph | FamilySpec) -> tuple[int, ...] | None:
    """An induced embedding of the pattern in g.

    Returns a tuple ``emb`` with ``emb[p]`` the g-vertex carrying pattern
    vertex p, or None.  Induced means multiplicities match exactly on every
    pattern pair, including non-edges.
    """
    if isinstance(pattern, FamilySpec):
        pattern = build_family(pattern)
    if pattern.n > g.n:
        return None
    pdeg = pattern.degrees()
    gdeg = g.degrees()
    order: list[int] = []
    placed: set[int] = set()
    for _ in range(pattern.n):
        cands = [p for p in range(pattern.n) if p not in placed]
        cands.sort(key=lambda p: (-sum(1 for q in placed if pattern.mult[p][q] > 0),
                                  -pdeg[p], p))
        order.append(cands[0])
        placed.add(cands[0])
    emb: dict[int, int] = {}
    used: set[int] = set()

    def rec(k: int) -> bool:
        if k == pattern.n:
            return True
        p = order[k]
        for u in range(g.n):
            if u in used or gdeg[u] < pdeg[p]:
                continue
            if any(g.mult[u][emb[q]] != pattern.mult[p][q] for q in emb):
                continue
            emb[p] = u
            used.add(u)
            if rec(k + 1):
                return True
            del emb[p]
            used.remove(u)
        return False

    if not rec(0):
        return None
    return tuple(emb[p] for p in range(pattern.n))


def connected_simple_graphs(max_n: int) -> dict[int, list[Multigraph]]:
    """All connected simple graphs up to isomorphism, by vertex count.

    Built by augmentation: every connected graph arises by deleting a
    non-cut vertex, so adding one vertex with all non-empty neighbourhoods
    to the previous level covers the next.
    """
    levels: dict[int, list[Multigraph]] = {1: [Multigraph(((0,),))]}
    for n in range(2, max_n + 1):
        seen: set[tuple[tuple[int, ...], ...]] = set()
        out: list[Multigraph] = []
        for g in levels[n - 1]:
            for mask in range(1, 1 << (n - 1)):
                rows = [list(r) + [(mask >> i) & 1] for i, r in enumerate(g.mult)]
                rows.append([(mask >> i) & 1 for i in range(n - 1)] + [0])
                cand = Multigraph(tuple(tuple(r) for r in rows))
                cf = canonical_form(cand)
                if cf not in seen:
                    seen.add(cf)
                    out.append(Multigraph(cf))
        levels[n] = out
    return levels


# ---------------------------------------------------------------------------
# family recognition


@dataclass(frozen=True)
class FamilyMatch:
    """Primary family name plus any aliases (for example K(4) with alias W(3))."""

    primary: FamilySpec | None
    aliases: tuple[FamilySpec, ...] = ()

    @property
    def tag(self) -> str | None:
        return self.primary.tag if self.primary else None

    def matches(self, spec: FamilySpec) -> bool:
        return spec == self.primary or spec in self.aliases


def _is_tree(g: Multigraph) -> bool:
    return is_connected(g) and sum(m for _, _, m in g.edge_list()) == g.n - 1


def _branch_lengths(g: Multigraph, center: int) -> list[int] | None:
    """Chain lengths hanging off a single branch vertex of a tree."""
    lengths = []
    for start in g.neighbors(center):
        length = 1
        prev, cur = center, start
        while g.degree(cur) == 2:
            nxt = next(w for w in g.neighbors(cur) if w != prev)
            prev, cur = cur, nxt
            length += 1
        if g.degree(cur) != 1:
            return None
        lengths.append(length)
    return sorted(lengths)


def _match_one(g: Multigraph, tag: str) -> FamilySpec | None:
    n = g.n
    degs = g.degrees()
    simple = g.is_simple()

    if tag == "A":
        if n == 1:
            return FamilySpec("A", (1,))
        if simple and _is_tree(g) and sorted(degs) == [1, 1] + [2] * (n - 2):
            return FamilySpec("A", (n,))
        return None

    if tag in ("D", "E", "~E"):
        if not (simple and _is_tree(g)):
            return None
        branch = [v for v in range(n) if degs[v] >= 3]
        if len(branch) != 1 or degs[branch[0]] != 3:
            return None
        lens = _branch_lengths(g, branch[0])
        if lens is None:
            return None
        if tag == "D" and lens[:2] == [1, 1]:
            return FamilySpec("D", (n,)) if n >= 4 else None
        if tag == "E" and n in (6, 7, 8) and lens == sorted([1, 2, n - 4]):
            return FamilySpec("E", (n,))
        if tag == "~E":
            for m in (6, 7, 8):
                if n == m + 1 and lens == sorted({6: [2, 2, 2], 7: [1, 3, 3], 8: [1, 2, 5]}[m]):
                    return FamilySpec("~E", (m,))
        return None

    if tag == "~D":
        if not (simple and _is_tree(g)):
            return None
        if n == 5 and sorted(degs) == [1, 1, 1, 1, 4]:
            return FamilySpec("~D", (4,))
        deg3 = [v for v in range(n) if degs[v] == 3]
        if (len(deg3) == 2 and sorted(degs) == [1, 1, 1, 1] + [2] * (n - 6) + [3, 3]
                and all(sum(1 for w in g.neighbors(v) if degs[w] == 1) == 2 for v in deg3)):
            return FamilySpec("~D", (n - 1,))
        return None

    if tag == "C":
        if n == 2 and g.mult[0][1] == 2:
            return FamilySpec("C", (2,))
        if n >= 3 and simple and is_connected(g) and all(d == 2 for d in degs):
            return FamilySpec("C", (n,))
        return None

    if tag == "C+":
        tails = [v for v in range(n) if degs[v] == 1]
        if len(tails) != 1 or not is_connected(g):
            return None
        v = tails[0]
        sub, _ = induced_subgraph(g, [u for u in range(n) if u != v])
        inner = _match_one(sub, "C")
        return FamilySpec("C+", inner.params) if inner else None

    if tag == "K":
        if simple and all(g.mult[i][j] == 1 for i, j in combinations(range(n), 2)):
            return FamilySpec("K", (n,)) if n >= 2 else None
        return None

    if tag == "K+":
        tails = [v for v in range(n) if degs[v] == 1]
        if len(tails) != 1 or n < 3 or not is_connected(g):
            return None
        v = tails[0]
        sub, _ = induced_subgraph(g, [u for u in range(n) if u != v])
        inner = _match_one(sub, "K")
        return FamilySpec("K+", inner.params) if inner else None

    if tag == "Kpq":
        if not (simple and n >= 2 and is_connected(g)):
            return None
        color = {0: 0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
        part = [v for v in range(n) if color[v] == 0]
        other = [v for v in range(n) if color[v] == 1]
        if all(g.mult[i][j] == 1 for i in part for j in other):
            p, q = sorted((len(part), len(other)))
            return FamilySpec("Kpq", (p, q))
        return None

    if tag == "S":
        if simple and n >= 4 and sorted(degs) == [1] * (n - 1) + [n - 1]:
            return FamilySpec("S", (n,))
        return None

    if tag == "S+":
        if not (simple and _is_tree(g) and n >= 6):
            return None
        hubs = [v for v in range(n) if degs[v] == n - 2]
        if len(hubs) != 1:
            return None
        hub = hubs[0]
        mid = [v for v in g.neighbors(hub) if degs[v] == 2]
        if len(mid) == 1 and all(degs[v] == 1 for v in range(n) if v != hub and v not in mid):
            return FamilySpec("S+", (n - 1,))
        return None

    if tag == "W":
        if not simple:
            return None
        hubs = [v for v in range(n) if degs[v] == n - 1]
        for v in hubs:
            sub, _ = induced_subgraph(g, [u for u in range(n) if u != v])
            if _match_one(sub, "C"):
                return FamilySpec("W", (n - 1,))
        return None

    if tag == "cone":
        hubs = [v for v in range(n)
                if all(g.mult[v][u] == 1 for u in range(n) if u != v)]
        for v in hubs:
            sub, _ = induced_subgraph(g, [u for u in range(n) if u != v])
            inner = recognize_family(sub)
            if inner.primary is not None:
                return FamilySpec("cone", (inner.primary,))
        return None

    if tag == "banana":
        if n == 2 and g.mult[0][1] >= 1:
            return FamilySpec("banana", (g.mult[0][1],))
        return None

    if tag == "Amult":
        if n < 2 or not is_connected(g):
            return None
        support = [(i, j) for i, j, _ in g.edge_list()]
        deg_support = [sum(1 for e in support if v in e) for v in range(n)]
        if len(support) != n - 1 or sorted(deg_support) != [1, 1] + [2] * (n - 2):
            return None
        start = deg_support.index(1)
        seq = [start]
        while len(seq) < n:
            nxt = next(w for w in g.neighbors(seq[-1]) if w not in seq)
            seq.append(nxt)
        mults = tuple(g.mult[seq[i]][seq[i + 1]] for i in range(n - 1))
        return FamilySpec("Amult", min(mults, mults[::-1]))

    if tag == "C3mult":
        if n == 3 and all(g.mult[i][j] >= 1 for i, j in combinations(range(3), 2)):
            best = None
            for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
                h = g.relabel(perm)
                trip = (h.mult[1][2], h.mult[0][2], h.mult[0][1])
                if best is None or trip < best:
                    best = trip
            return FamilySpec("C3mult", best)
        return None

    raise GraphError(f"unknown tag {tag!r}")


def recognize_family(g: Multigraph) -> FamilyMatch:
    """All catalogue families isomorphic to g, primary name first."""
    matches = [m for tag in CATALOGUE_ORDER if (m := _match_one(g, tag))]
    if not matches:
        return FamilyMatch(None, ())
    return FamilyMatch(matches[0], tuple(matches[1:]))


# ---------------------------------------------------------------------------
# numeric characterisation and the structure theorem


def dynkin_numeric_check(g: Multigraph) -> str:
    """Classify the all-2 matrix: 'PD-at-2', 'PSD0-at-2', or 'neither'.

    Cross-checked against recognition: positive definite at 2 exactly for
    paths, D- and E-trees; semi-definite of determinant zero exactly for
    cycles and the extended D/E trees.
    """
    if not is_connected(g):
        raise GraphError("numeric check expects a connected graph")
    m = matrix_at(g, (2,) * g.n)
    if is_positive_definite(m):
        verdict = "PD-at-2"
    elif determinant(m) == 0 and is_psd_rank_nminus1(m, connected_mg_form=True):
        verdict = "PSD0-at-2"
    else:
        verdict = "neither"
    fam = recognize_family(g)
    pd_tags = {"A", "D", "E"}
    psd_tags = {"C", "~D", "~E"}
    if (verdict == "PD-at-2") != (fam.tag in pd_tags):
        raise AssertionError(f"numeric/recognition mismatch for {fam}: {verdict}")
    if (verdict == "PSD0-at-2") != (fam.tag in psd_tags):
        raise AssertionError(f"numeric/recognition mismatch for {fam}: {verdict}")
    return verdict


@dataclass(frozen=True)
class TypesVerdict:
    """Outcome of the tree/cycle/complete/bipartite vs seed dichotomy."""

    kind: str                          # tree | cycle | complete | complete-bipartite | has-seed
    spec: FamilySpec | None = None     # the named family, when kind is named
    seed_spec: FamilySpec | None = None
    embedding: tuple[int, ...] | None = None


def seed_patterns(max_vertices: int) -> list[FamilySpec]:
    """Extended cycles and the diamond, smallest first (ties: cycles first)."""
    out: list[FamilySpec] = []
    for size in range(4, max_vertices + 1):
        if size >= 4:
            out.append(FamilySpec("C+", (size - 1,)))
        if size == 4:
            out.append(FamilySpec("cone", (FamilySpec("A", (3,)),)))
    return out


def types_decompose(g: Multigraph) -> TypesVerdict:
    """Place a connected simple graph in the four named types or exhibit an
    induced extended cycle / diamond (identity embedding when g itself is one)."""
    if not g.is_simple():
        raise GraphError("the type decomposition applies to simple graphs")
    if not is_connected(g):
        raise GraphError("the type decomposition applies to connected graphs")
    n = g.n
    if _is_tree(g):
        fam = recognize_family(g)
        return TypesVerdict("tree", fam.primary)
    c = _match_one(g, "C")
    if c:
        return TypesVerdict("cycle", c)
    k = _match_one(g, "K")
    if k:
        return TypesVerdict("complete", k)
    kpq = _match_one(g, "Kpq")
    if kpq and kpq.params[0] >= 2:
        return TypesVerdict("complete-bipartite", kpq)
    for spec in seed_patterns(n):
        emb = find_induced(g, spec)
        if emb is not None:
            return TypesVerdict("has-seed", None, spec, emb)
    raise AssertionError("type dichotomy failed; this contradicts the structure theorem")


@dataclass(frozen=True)
class PositivityVerdict:
    """Whether every positive integer is certified attainable with the
    definiteness and cyclicity side conditions."""

    kind: str                          # contains-all-positives | exceptional
    family: str | None = None
    witness: object | None = None      # UnitWitness when kind is positive
    note: str | None = None


def positivity_verdict(g: Multigraph, egyptian13: Sequence[int] | None = None) -> PositivityVerdict:
    """Constructive version of the exception-list theorem for simple graphs.

    When a unit seed exists the returned witness chain certifies every
    positive value; otherwise the graph is reported with its exceptional
    family.  A 13-term unit-fraction solution unlocks complete graphs on 14
    or more vertices.
    """
    from .constructive import unit_witness

    verdict = types_decompose(g)
    witness = unit_witness(g, 2, egyptian13=egyptian13)
    if witness is not None:
        return PositivityVerdict("contains-all-positives", witness=witness)
    if verdict.kind != "has-seed":
        note = None
        if verdict.kind == "complete" and verdict.spec and verdict.spec.params[0] >= 14:
            note = ("attainable in principle; supply a 13-term unit-fraction "
                    "solution to build the witness chain")
        return PositivityVerdict("exceptional", family=verdict.kind, note=note)
    fam = recognize_family(g)
    name = str(fam.primary) if fam.primary else "other"
    return PositivityVerdict("exceptional", family=name)
