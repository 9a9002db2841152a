"""Value-set sieves: which integers in [0, N] are determinants of
Diag(a) - A with all a_i >= r, optionally with positive definiteness and a
cyclic discriminant group.

Modes
-----
``any``             every diagonal in the box counts; for two-vertex graphs
                    and three-vertex paths a proven coordinate bound makes
                    the report complete, box-free.
``pd``              positive definite witnesses only; the search is pruned
                    by monotonicity (raising an entry of a positive definite
                    matrix keeps it positive definite and strictly raises
                    the determinant), so the report is complete whenever no
                    live branch ran into the box.
``pd-cyclic``       as ``pd``, keeping only witnesses whose discriminant
                    group is cyclic (gcd of the co-rank-1 minors is 1).
``structure-zero``  determinant-zero semi-definite points, i.e. value 0
                    realised by an arithmetical structure with cyclic group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .critical import evaluate, matrix_at
from .graphs import GraphError, Multigraph, is_connected
from .linalg import determinant, is_positive_definite
from .structures import ArithmeticalStructure

MODES = ("any", "pd", "pd-cyclic", "structure-zero")

# graphs with a registered proven bound for mode "any": a single edge of any
# multiplicity (x*y - e^2) and the three-vertex path (x*y*z - B*x - A*z)
_PROVEN_NOTE = "proven coordinate bound for this family"


@dataclass
class SieveReport:
    graph: Multigraph
    mode: str
    r: int
    max_value: int
    box: tuple[int, ...]
    hits: dict[int, tuple[int, ...]]
    complete: bool
    note: str = ""

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.max_value + 1) if v not in self.hits)

    def check_witnesses(self) -> None:
        for value, diag in self.hits.items():
            if evaluate(self.graph, diag) != value:
                raise AssertionError(f"witness {diag} does not evaluate to {value}")
            if any(x < self.r for x in diag):
                raise AssertionError(f"witness {diag} violates the lower bound {self.r}")


def _record(hits: dict[int, tuple[int, ...]], value: int, witness: tuple[int, ...]) -> None:
    old = hits.get(value)
    if old is None or witness < old:
        hits[value] = witness


def _path3_coefficients(g: Multigraph) -> tuple[tuple[int, int, int], int, int] | None:
    """(vertex order, A, B) with det = x*y*z - B*x - A*z for a 3-vertex path."""
    if g.n != 3:
        return None
    ends = [v for v in range(3) if len(g.neighbors(v)) == 1]
    if len(ends) != 2:
        return None
    p0, p2 = ends
    p1 = 3 - p0 - p2
    if g.mult[p0][p2] != 0:
        return None
    e1, e2 = g.mult[p0][p1], g.mult[p1][p2]
    return (p0, p1, p2), e1 * e1, e2 * e2


def _proven_any(g: Multigraph, r: int, n_max: int) -> tuple[dict[int, tuple[int, ...]], tuple[int, ...]] | None:
    """Complete mode-any hits for the registered families, or None."""
    if g.n == 1:
        hits = {v: (v,) for v in range(max(r, 0), n_max + 1)}
        return hits, (n_max,)
    if g.n == 2 and g.mult[0][1] >= 1:
        e2 = g.mult[0][1] ** 2
        hits: dict[int, tuple[int, ...]] = {}
        x_hi = (n_max + e2) // r
        for x in range(r, x_hi + 1):
            y = max(r, -((-e2) // x))          # ceil(e2 / x)
            while x * y - e2 <= n_max:
                if x * y - e2 >= 0:
                    _record(hits, x * y - e2, (x, y))
                y += 1
        return hits, (x_hi, x_hi)
    path = _path3_coefficients(g)
    if path is not None:
        (p0, p1, p2), a_coef, b_coef = path
        hits = {}
        y_hi = n_max // (r * r) + (a_coef + b_coef) // r + 2
        x_hi = n_max + a_coef * (b_coef + 1) + a_coef
        for y in range(r, y_hi + 1):
            for x in range(r, x_hi + 1):
                slope = x * y - a_coef
                if slope < 1:
                    continue
                # exists z >= r with 0 <= slope*z - b_coef*x <= n_max
                z = max(r, -((-b_coef * x) // slope))
                val = slope * z - b_coef * x
                if val > n_max:
                    continue
                while val <= n_max:
                    witness = [0, 0, 0]
                    witness[p0], witness[p1], witness[p2] = x, y, z
                    _record(hits, val, tuple(witness))
                    z += 1
                    val += slope
        return hits, (x_hi, y_hi, x_hi)
    return None


def _scan_coordinates(box: tuple[int, ...]) -> tuple[int, int]:
    """The two coordinates handled analytically: the tallest box entry and
    the tallest among the rest (last index wins ties)."""
    n = len(box)
    v = max(range(n), key=lambda i: (box[i], i))
    if n == 1:
        return v, v
    s = max((i for i in range(n) if i != v), key=lambda i: (box[i], i))
    return v, s


def _any_box(g: Multigraph, r: int, n_max: int, box: tuple[int, ...],
             hits: dict[int, tuple[int, ...]], pin: tuple[int, int] | None = None) -> None:
    """Exhaustive mode-any enumeration of the box.

    All but two coordinates are iterated; the determinant is bilinear in the
    remaining two, so a 4-point fit turns each assignment into window scans.
    ``pin`` fixes one iterated coordinate to a single value (worker chunks).
    """
    n = g.n
    if n == 1:
        for t in range(r, box[0] + 1):
            if 0 <= t <= n_max:
                _record(hits, t, (t,))
        return
    v, s = _scan_coordinates(box)
    rest_idx = [i for i in range(n) if i not in (v, s)]
    diag = [0] * n
    if pin is not None:
        diag[pin[0]] = pin[1]

    def rec(k: int) -> None:
        if k == len(rest_idx):
            _bilinear_scan(g, r, n_max, box, v, s, diag, hits)
            return
        i = rest_idx[k]
        if pin is not None and i == pin[0]:
            rec(k + 1)
            return
        for x in range(r, box[i] + 1):
            diag[i] = x
            rec(k + 1)

    rec(0)


def _pd_det(m) -> int | None:
    """Determinant when positive definite, else None (single Bareiss pass)."""
    n = m.dim
    a = [list(row) for row in m.rows]
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        if pivot <= 0:
            return None
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return a[n - 1][n - 1]


def corank_one_minor_gcd(m) -> int:
    """gcd of all (n-1)x(n-1) minors; 1 exactly when the group is cyclic."""
    n = m.dim
    if n == 1:
        return 1
    g0 = 0
    for i in range(n):
        for j in range(n):
            g0 = gcd(g0, determinant(m.minor_matrix(i, j)))
            if g0 == 1:
                return 1
    return g0


def _pd_dfs(g: Multigraph, r: int, n_max: int, box: tuple[int, ...],
            want_cyclic: bool, hits: dict[int, tuple[int, ...]]) -> bool:
    """Enumerate positive definite points with det <= n_max; returns the
    completeness flag (False when a live branch hit the box)."""
    n = g.n
    diag = [r] * n
    complete = True

    def pruned(k: int, value: int) -> bool:
        floor_diag = diag[:k] + [value] + [r] * (n - k - 1)
        d = _pd_det(matrix_at(g, floor_diag))
        return d is not None and d > n_max

    def rec(k: int) -> None:
        nonlocal complete
        if k == n:
            m = matrix_at(g, diag)
            d = _pd_det(m)
            if d is not None and d <= n_max:
                if not want_cyclic or corank_one_minor_gcd(m) == 1:
                    _record(hits, d, tuple(diag))
            return
        for v in range(r, box[k] + 1):
            if pruned(k, v):
                diag[k] = r
                return
            diag[k] = v
            rec(k + 1)
        if not pruned(k, box[k] + 1):
            complete = False
        diag[k] = r

    rec(0)
    return complete


def _structure_zero(g: Multigraph, r: int, box: tuple[int, ...],
                    hits: dict[int, tuple[int, ...]]) -> None:
    from .linalg import positive_kernel_vector, smith_normal_form
    from .linalg import is_cyclic as factors_cyclic

    n = g.n
    diag = [r] * n

    def rec(k: int) -> None:
        if k == n:
            m = matrix_at(g, diag)
            if determinant(m) == 0 and positive_kernel_vector(m) is not None:
                if factors_cyclic(smith_normal_form(m)):
                    _record(hits, 0, tuple(diag))
            return
        for v in range(r, box[k] + 1):
            diag[k] = v
            floor_diag = diag[:k + 1] + [r] * (n - k - 1)
            if is_positive_definite(matrix_at(g, floor_diag)):
                break
            rec(k + 1)
        diag[k] = r

    rec(0)


def _normalise_box(g: Multigraph, box, default: int | None) -> tuple[int, ...]:
    if box is None:
        if default is None:
            raise GraphError("this sieve mode needs an explicit box")
        return (default,) * g.n
    if isinstance(box, int):
        return (box,) * g.n
    box = tuple(int(b) for b in box)
    if len(box) != g.n:
        raise GraphError("per-coordinate box must match the vertex count")
    return box


def sieve(g: Multigraph, mode: str = "any", r: int = 2, max_value: int = 100,
          box=None, jobs: int = 1) -> SieveReport:
    """Sieve the value set of g up to ``max_value``.  See the module notes
    for the mode semantics and completeness rules."""
    if mode not in MODES:
        raise GraphError(f"unknown sieve mode {mode!r}")
    if r < 1 or max_value < 0:
        raise GraphError("need r >= 1 and max_value >= 0")
    hits: dict[int, tuple[int, ...]] = {}

    if mode == "any":
        if box is None:
            proven = _proven_any(g, r, max_value)
            if proven is not None:
                hits, eff_box = proven
                report = SieveReport(g, mode, r, max_value, eff_box, hits,
                                     complete=True, note=_PROVEN_NOTE)
                report.check_witnesses()
                return report
            raise GraphError("mode 'any' needs a box for this graph "
                             "(no proven bound registered)")
        boxes = _normalise_box(g, box, None)
        if jobs > 1:
            hits = _parallel_any(g, r, max_value, boxes, jobs)
        else:
            _any_box(g, r, max_value, boxes, hits)
        report = SieveReport(g, mode, r, max_value, boxes, hits, complete=False)
        report.check_witnesses()
        return report

    if mode in ("pd", "pd-cyclic"):
        boxes = _normalise_box(g, box, max_value + 5)
        complete = _pd_dfs(g, r, max_value, boxes, mode == "pd-cyclic", hits)
        report = SieveReport(g, mode, r, max_value, boxes, hits, complete=complete)
        report.check_witnesses()
        return report

    # structure-zero
    boxes = _normalise_box(g, box, None)
    _structure_zero(g, r, boxes, hits)
    return SieveReport(g, mode, r, 0, boxes, hits, complete=False)


def _any_chunk(args) -> dict[int, tuple[int, ...]]:
    g, r, n_max, boxes, coord, lo, hi = args
    hits: dict[int, tuple[int, ...]] = {}
    for x in range(lo, hi + 1):
        _any_box(g, r, n_max, boxes, hits, pin=(coord, x))
    return hits


def _bilinear_scan(g, r, n_max, box, v, s, diag, hits) -> None:
    diag[v], diag[s] = 0, 0
    d00 = evaluate(g, diag)
    diag[s] = 1
    d01 = evaluate(g, diag)
    diag[v], diag[s] = 1, 0
    d10 = evaluate(g, diag)
    diag[s] = 1
    d11 = evaluate(g, diag)
    big_a = d11 - d10 - d01 + d00
    big_b = d10 - d00
    big_c = d01 - d00
    for u in range(r, box[s] + 1):
        alpha = big_a * u + big_b
        beta = -(big_c * u + d00)
        if alpha > 0:
            t_lo = max(r, -((-beta) // alpha))
            t_hi = min(box[v], (n_max + beta) // alpha)
        elif alpha == 0:
            if 0 <= -beta <= n_max:
                t_lo = t_hi = r
            else:
                continue
        else:
            t_lo = max(r, -((n_max + beta) // -alpha))
            t_hi = min(box[v], beta // alpha)
        for t in range(t_lo, t_hi + 1):
            diag[v], diag[s] = t, u
            _record(hits, alpha * t - beta, tuple(diag))


def _parallel_any(g, r, n_max, boxes, jobs) -> dict[int, tuple[int, ...]]:
    import multiprocessing as mp

    v, s = _scan_coordinates(boxes)
    coord = next((i for i in range(g.n) if i not in (v, s)), None)
    if coord is None:
        hits: dict[int, tuple[int, ...]] = {}
        _any_box(g, r, n_max, boxes, hits)
        return hits
    lo, hi = r, boxes[coord]
    values = list(range(lo, hi + 1))
    step = max(1, len(values) // jobs + (len(values) % jobs > 0))
    tasks = [(g, r, n_max, boxes, coord, values[i], values[min(i + step, len(values)) - 1])
             for i in range(0, len(values), step)]
    hits = {}
    with mp.Pool(jobs) as pool:
        for part in pool.map(_any_chunk, tasks):
            for value, w in part.items():
                _record(hits, value, w)
    return hits


# ---------------------------------------------------------------------------
# floors, multiples, and the explicit three-vertex representability results


def floor_value(g: Multigraph, r: int) -> int | None:
    """The proven minimum of the value set when the all-r matrix is positive
    (semi-)definite: raising entries only raises the determinant."""
    from .linalg import is_psd_rank_nminus1

    m = matrix_at(g, (r,) * g.n)
    if is_positive_definite(m):
        return determinant(m)
    if is_connected(g) and is_psd_rank_nminus1(m, connected_mg_form=True):
        return 0
    return None


def multiples_family(s: ArithmeticalStructure, i: int, ell: int) -> tuple[tuple[int, ...], int]:
    """Raise entry i of a structure diagonal by ell: the determinant becomes
    ell * |group| * r_i^2 (positive definite for ell >= 1)."""
    if ell < 1:
        raise GraphError("need ell >= 1")
    if not 0 <= i < s.graph.n:
        raise GraphError("vertex out of range")
    diag = list(s.diag)
    diag[i] += ell
    value = ell * s.group_order * s.r_vec[i] ** 2
    got = evaluate(s.graph, diag)
    if got != value:
        raise AssertionError(f"expected determinant {value}, got {got}")
    return tuple(diag), value


def _odd_part(m: int) -> int:
    while m % 2 == 0:
        m //= 2
    return m


def _a3_constructive(w: int) -> tuple[int, int, int] | None:
    """The direct constructions: z=2 and z=4 factorisations and the
    power-of-two family x=4, z=6."""
    m = w + 2
    odd = _odd_part(m)
    if odd >= 3:
        # x * (2y-1) = w + 2 with x >= 2: use the odd part or its cofactor
        if m // odd >= 2:
            return (m // odd, (odd + 1) // 2, 2)
        d = _smallest_factor(odd)
        if d < odd:
            return (m // d, (d + 1) // 2, 2)
    m4 = w + 4
    for cand in _divisors(m4):
        if cand % 4 == 3 and cand >= 7 and m4 // cand >= 2:
            return (m4 // cand, (cand + 1) // 4, 4)
    if w >= 2 and (w + 2) & (w + 1) == 0:
        # w = 2^m - 2; solvable for even m > 4 via x=4, z=6
        mexp = (w + 2).bit_length() - 1
        if mexp > 4 and mexp % 2 == 0:
            return (4, (2 ** (mexp - 3) + 1) // 3, 6)
    return None


def a3_certificate(w: int) -> tuple[int, int, int] | None:
    """A witness x*y*z - x - z = w with x, y, z >= 2, or None.

    Tries the closed-form constructions first and falls back to a complete
    divisor-bounded search, so None means w is genuinely not representable.
    """
    if w < 0:
        raise GraphError("need w >= 0")
    got = _a3_constructive(w)
    if got is None:
        for x in range(2, max(2, w) + 1):
            y_hi = (w + x + 2) // (2 * x)
            for y in range(2, y_hi + 1):
                num = w + x
                den = x * y - 1
                if num % den == 0 and num // den >= 2:
                    got = (x, y, num // den)
                    break
            if got:
                break
    if got is not None:
        x, y, z = got
        assert x >= 2 and y >= 2 and z >= 2 and x * y * z - x - z == w
    return got


def _smallest_factor(m: int) -> int:
    if m % 2 == 0:
        return 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return d
        d += 2
    return m


def _divisors(m: int) -> list[int]:
    out = []
    d = 1
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            if d != m // d:
                out.append(m // d)
        d += 1
    return sorted(out)


def _composite_split(m: int) -> tuple[int, int] | None:
    """m = u*v with u, v >= 2, or None when m is prime or < 4."""
    if m < 4:
        return None
    p = _smallest_factor(m)
    if p == m:
        return None
    return p, m // p


def generalized_path_witness(a: int, b: int, w: int) -> tuple[int, int, int] | None:
    """A witness x*y*z - a*x - b*z = w with x, y, z >= 2, from the
    constructive cases; None when no case applies (not a proof of absence).
    """
    if not a >= b >= 1:
        raise GraphError("need a >= b >= 1")
    if w < 0:
        raise GraphError("need w >= 0")

    def done(x: int, y: int, z: int) -> tuple[int, int, int]:
        assert x >= 2 and y >= 2 and z >= 2 and x * y * z - a * x - b * z == w
        return (x, y, z)

    if w == 0:
        if b >= 2:
            return done(b, 2, a)
        if a in (1, 2, 4):
            return None
        for c in _divisors(a):
            split = _composite_split(1 + a // c)
            if split is not None:
                x, y = split
                return done(x, y, c * x)
        return None
    split = _composite_split(b + 1)
    if split is not None:
        x, y = split
        return done(x, y, w + a * x)
    split = _composite_split(a + 1)
    if split is not None:
        z, y = split
        return done(w + b * z, y, z)
    if b == 1 and a % 4 == 0:
        if w % 2 == 0:
            return done(w // 2 + 1, a // 2 + 1, 2)
        z = a // 2 + 1
        return done((w + z) // 2, 2, z)
    for p in _prime_factors(a):
        if w % p == 0 and w // p + b >= 2:
            return done(w // p + b, a // p + 1, p)
    return None


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out
