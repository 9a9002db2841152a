"""Evaluation of the critical polynomial det(Diag(x) - A) and its
closed-form specialisations on complete and complete-bipartite graphs."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .graphs import GraphError, Multigraph, induced_subgraph, spanning_tree_count
from .linalg import IntMatrix, adjugate, determinant


@dataclass(frozen=True)
class LinearForm:
    """The univariate specialisation alpha*t - beta, with alpha > 0."""

    alpha: int
    beta: int

    def __post_init__(self) -> None:
        if self.alpha <= 0:
            raise ValueError("a LinearForm needs a positive leading coefficient")

    def value_at(self, t: int) -> int:
        return self.alpha * t - self.beta

    def content(self) -> int:
        return gcd(self.alpha, self.beta)

    def is_coprime(self) -> bool:
        return self.content() == 1


class NonPositiveLeadError(ValueError):
    """A one-variable specialisation came out with a non-positive leading
    coefficient; carries the raw (alpha, beta) pair."""

    def __init__(self, alpha: int, beta: int):
        super().__init__(f"leading coefficient {alpha} is not positive")
        self.alpha = alpha
        self.beta = beta


def matrix_at(g: Multigraph, diag: Sequence[int]) -> IntMatrix:
    """Diag(diag) - A_G as an exact integer matrix."""
    if len(diag) != g.n:
        raise GraphError(f"diagonal has length {len(diag)}, graph has {g.n} vertices")
    return IntMatrix(tuple(
        tuple((diag[i] if i == j else 0) - g.mult[i][j] for j in range(g.n))
        for i in range(g.n)))


def evaluate(g: Multigraph, diag: Sequence[int]) -> int:
    """The critical polynomial of g evaluated at the given diagonal."""
    return determinant(matrix_at(g, diag))


def _insert(diag: Sequence[int], v: int, value: int) -> tuple[int, ...]:
    out = list(diag)
    out.insert(v, value)
    return tuple(out)


def linear_fit(g: Multigraph, v: int, rest: Sequence[int]) -> tuple[int, int]:
    """Raw (alpha, beta) of t -> det at vertex v, by two evaluations."""
    d0 = evaluate(g, _insert(rest, v, 0))
    d1 = evaluate(g, _insert(rest, v, 1))
    return d1 - d0, -d0


def linear_in_t(g: Multigraph, v: int, rest: Sequence[int]) -> LinearForm:
    """Specialise all diagonal entries except vertex v.

    alpha is the determinant of the complementary block and beta the
    quadratic form of the connecting column against its adjugate; the pair
    is cross-checked against direct determinant evaluation at two points.
    Raises NonPositiveLeadError when alpha <= 0.
    """
    if not 0 <= v < g.n:
        raise GraphError("vertex out of range")
    if len(rest) != g.n - 1:
        raise GraphError("rest diagonal must cover the other n-1 vertices")
    keep = [u for u in range(g.n) if u != v]
    sub, idx = induced_subgraph(g, keep)
    nm = matrix_at(sub, rest)
    alpha = determinant(nm)
    s = [g.mult[v][u] for u in idx]
    nstar = adjugate(nm)
    beta = sum(s[i] * nstar.rows[i][j] * s[j]
               for i in range(len(s)) for j in range(len(s)))
    fit = linear_fit(g, v, rest)
    if fit != (alpha, beta):
        raise AssertionError(
            f"block formula {(alpha, beta)} disagrees with direct fit {fit}")
    if alpha <= 0:
        raise NonPositiveLeadError(alpha, beta)
    return LinearForm(alpha, beta)


def laplacian_line(g: Multigraph, i: int) -> LinearForm:
    """Form in t at vertex i with every other entry at its degree.

    The determinant is kappa*(t - d_i) where kappa counts spanning trees.
    """
    if not 0 <= i < g.n:
        raise GraphError("vertex out of range")
    kappa = spanning_tree_count(g)
    return LinearForm(kappa, kappa * g.degree(i))


def complete_graph_det(values: Sequence[int]) -> int:
    """Determinant on the complete graph: prod(x_j+1) - sum_i prod_{j!=i}(x_j+1)."""
    shifted = [x + 1 for x in values]
    total = 1
    for y in shifted:
        total *= y
    return total - sum(total // y for y in shifted)


def bipartite_k2q_det(t: int, x: int, ys: Sequence[int]) -> int:
    """Determinant on K(2,q): vertex order (t, x, y_1, ..., y_q)."""
    if not ys:
        raise ValueError("K(2,q) needs q >= 1")
    prod = 1
    for y in ys:
        prod *= y
    s = sum(prod // y for y in ys)
    return (x * prod - s) * t - x * s


def extend_pendant_form(q: int, e: int, form: LinearForm) -> LinearForm:
    """Form after attaching a new vertex with e edges and diagonal entry q.

    (alpha, beta) becomes (q*alpha, q*beta + e^2*alpha); the content of the
    result is available through LinearForm.content().
    """
    if q < 1 or e < 1:
        raise ValueError("need q >= 1 and e >= 1")
    return LinearForm(q * form.alpha, q * form.beta + e * e * form.alpha)
