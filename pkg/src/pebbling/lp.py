"""Covering LP over a strategy corpus, solved by a dense revised simplex.

    minimise    sum_i alpha_i |w_i|
    subject to  sum_i alpha_i w_i(v) >= 1   for every v != root
                alpha >= 0

Any feasible ``alpha`` gives ``pi(G, root) <= 1 + sum_i alpha_i |w_i|``. The
float solution is turned into exact rationals and re-checked before a bound
is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NumericalFailure, RationalizationFailed, UncoverableVertex, Verdict
from .graph import Graph
from .strategy import Strategy, StrategyCorpus, canonical_weights, validate_strategy

FEAS_TOL = 1e-9
DENOMINATOR_LIMIT = 10**6
INFLATION_TOL = 1e-4
PRICING_CHUNK = 1 << 19


@dataclass
class CoveringLP:
    root: int
    rows: tuple[int, ...]
    matrix: np.ndarray  # (len(rows), k) float32; weights are small powers of two, exact
    costs: np.ndarray  # (k,) int64
    corpus: StrategyCorpus

    @property
    def num_columns(self) -> int:
        return self.matrix.shape[1]

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> np.ndarray:
        return self.corpus.weights[j]


@dataclass
class LPSolution:
    optimum: float
    multipliers: np.ndarray
    basis: list[int]
    iterations: int
    bland_used: bool

    def __iter__(self):
        # allows ``optimum, alpha = solve_lp(lp)``
        yield self.optimum
        yield self.multipliers


@dataclass(frozen=True)
class CoveringCertificate:
    root: int
    entries: tuple[tuple[Strategy, Fraction], ...]
    claimed_real_bound: Fraction
    claimed_int_bound: int
    graph_id: str = ""

    def coverage(self, v: int) -> Fraction:
        return sum((alpha * s.weights[v] for s, alpha in self.entries), Fraction(0))

    def objective(self) -> Fraction:
        return sum((alpha * s.weight_total for s, alpha in self.entries), Fraction(0))


def build_covering_lp(corpus: StrategyCorpus) -> CoveringLP:
    n = corpus.graph.n
    rows = tuple(v for v in range(n) if v != corpus.root)
    if len(corpus) == 0:
        raise UncoverableVertex("empty corpus")
    W = corpus.weights
    covered = W.any(axis=0)
    missing = [v for v in rows if not covered[v]]
    if missing:
        raise UncoverableVertex(f"vertices {missing} have zero weight in every strategy")
    matrix = np.ascontiguousarray(W[:, list(rows)].T, dtype=np.float32)
    return CoveringLP(root=corpus.root, rows=rows, matrix=matrix, costs=corpus.weight_totals.copy(), corpus=corpus)


def _price(lp: CoveringLP, y: np.ndarray) -> np.ndarray:
    """Reduced costs of all structural columns for dual vector ``y``."""
    k = lp.num_columns
    out = np.empty(k)
    for start in range(0, k, PRICING_CHUNK):
        stop = min(start + PRICING_CHUNK, k)
        block = lp.matrix[:, start:stop].astype(np.float64)
        out[start:stop] = lp.costs[start:stop] - y @ block
    return out


def _inner_simplex(
    A: np.ndarray,
    c: np.ndarray,
    basis: list[int],
    big_m: float,
    max_iterations: int,
) -> tuple[list[int], int, bool]:
    """Revised simplex on a dense column block, warm-started from ``basis``.

    Local column layout: block ``0..p-1``, surplus ``p..p+m-1`` (column
    ``-e_i``), artificial ``p+m..p+2m-1`` (column ``e_i``). Dantzig pricing,
    lowest index on ties; Bland's rule after ``10 * m`` consecutive
    degenerate pivots.
    """
    m, p = A.shape
    surplus0, art0 = p, p + m

    def column(j: int) -> np.ndarray:
        if j < p:
            return A[:, j]
        col = np.zeros(m)
        if j < art0:
            col[j - surplus0] = -1.0
        else:
            col[j - art0] = 1.0
        return col

    def cost(j: int) -> float:
        if j < p:
            return c[j]
        return 0.0 if j < art0 else big_m

    ones = np.ones(m)
    tol = -FEAS_TOL * np.maximum(1.0, c)
    degenerate_run = 0
    bland = False
    for iteration in range(max_iterations):
        B = np.column_stack([column(j) for j in basis])
        try:
            x_b = np.linalg.solve(B, ones)
            y = np.linalg.solve(B.T, np.array([cost(j) for j in basis]))
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(f"singular basis at iteration {iteration}") from exc
        d = c - y @ A
        d_slack = y  # surplus columns: 0 - y . (-e_i)
        entering = -1
        if bland:
            cand = np.flatnonzero(d < tol)
            if len(cand):
                entering = int(cand[0])
            else:
                neg = np.flatnonzero(d_slack < -FEAS_TOL)
                if len(neg):
                    entering = surplus0 + int(neg[0])
        else:
            best = 0.0
            if p:
                j = int(np.argmin(d))
                if d[j] < tol[j]:
                    entering, best = j, d[j]
            i = int(np.argmin(d_slack))
            if d_slack[i] < -FEAS_TOL and d_slack[i] < best:
                entering = surplus0 + i
        if entering < 0:
            return basis, iteration, bland

        u = np.linalg.solve(B, column(entering))
        ratios = [(x_b[i] / u[i], i) for i in range(m) if u[i] > 1e-12]
        if not ratios:
            raise NumericalFailure("unbounded direction in a covering LP")
        theta = min(r[0] for r in ratios)
        ties = [i for t, i in ratios if t <= theta + 1e-12 * max(1.0, abs(theta))]
        leave = min(ties, key=lambda i: basis[i])
        basis = basis[:leave] + [entering] + basis[leave + 1:]
        if theta <= 1e-12:
            degenerate_run += 1
            if degenerate_run > 10 * m:
                bland = True
        else:
            degenerate_run = 0
    raise NumericalFailure(f"simplex did not converge in {max_iterations} iterations")


def _basis_solution(lp: CoveringLP, basis: list[int], big_m: float) -> tuple[np.ndarray, np.ndarray]:
    m, k = lp.matrix.shape
    cols, cb = [], []
    for j in basis:
        if j < k:
            cols.append(lp.matrix[:, j].astype(np.float64))
            cb.append(float(lp.costs[j]))
        else:
            col = np.zeros(m)
            if j < k + m:
                col[j - k] = -1.0
                cb.append(0.0)
            else:
                col[j - k - m] = 1.0
                cb.append(big_m)
            cols.append(col)
    B = np.column_stack(cols)
    return np.linalg.solve(B, np.ones(m)), np.linalg.solve(B.T, np.array(cb))


def solve_lp(lp: CoveringLP, *, max_iterations: int = 50_000, batch: int = 2048) -> LPSolution:
    """Revised simplex with partial pricing over a growing working set.

    Starts from an all-artificial basis with big-M cost above every column
    cost, so artificials leave any optimal basis. Each round prices every
    column of the corpus, admits the ``batch`` most negative ones (lowest
    index on ties) into the working set and re-optimises there; it stops
    when a full pass finds no column with negative reduced cost.
    """
    m, k = lp.matrix.shape
    costs = lp.costs.astype(np.float64)
    big_m = float(costs.max()) + 1.0
    basis = [k + m + i for i in range(m)]  # global ids: structural, surplus, artificial
    working: list[int] = []
    iterations = 0
    bland_used = False
    while True:
        x_b, y = _basis_solution(lp, basis, big_m)
        d = _price(lp, y)
        tol = -FEAS_TOL * np.maximum(1.0, costs)
        neg = np.flatnonzero(d < tol)
        if not len(neg) and not np.any(y < -FEAS_TOL):
            break
        in_working = set(working)
        fresh = [int(j) for j in neg[np.argsort(d[neg], kind="stable")] if int(j) not in in_working][:batch]
        if not fresh and not np.any(y < -FEAS_TOL):
            raise NumericalFailure("pricing found negative columns already in the working set")
        working = sorted(in_working | set(fresh) | {j for j in basis if j < k})
        pos = {j: i for i, j in enumerate(working)}
        p = len(working)
        local = [pos[j] if j < k else p + (j - k) for j in basis]
        A = lp.matrix[:, working].astype(np.float64)
        local, used, bland = _inner_simplex(A, costs[working], local, big_m, max_iterations - iterations)
        iterations += used
        bland_used |= bland
        basis = [working[j] if j < p else k + (j - p) for j in local]
        if iterations >= max_iterations:
            raise NumericalFailure(f"simplex did not converge in {max_iterations} iterations")

    alpha = np.zeros(k)
    for pos_, j in enumerate(basis):
        if j < k:
            alpha[j] = max(x_b[pos_], 0.0)
        elif j >= k + m and x_b[pos_] > FEAS_TOL:
            raise NumericalFailure("artificial variable left at positive level")
    return LPSolution(
        optimum=float(costs @ alpha),
        multipliers=alpha,
        basis=list(basis),
        iterations=iterations,
        bland_used=bland_used,
    )


def _exact_coverage(lp: CoveringLP, alphas: dict[int, Fraction]) -> dict[int, Fraction]:
    cov = {v: Fraction(0) for v in lp.rows}
    for j, a in alphas.items():
        w = lp.column(j)
        for v in lp.rows:
            if w[v]:
                cov[v] += a * int(w[v])
    return cov


def _certificate(lp: CoveringLP, alphas: dict[int, Fraction], graph_id: str) -> CoveringCertificate:
    entries = tuple((lp.corpus[j], a) for j, a in sorted(alphas.items()) if a > 0)
    real = 1 + sum((a * s.weight_total for s, a in entries), Fraction(0))
    return CoveringCertificate(
        root=lp.root,
        entries=entries,
        claimed_real_bound=real,
        claimed_int_bound=math.floor(real),
        graph_id=graph_id,
    )


def rationalize(
    lp: CoveringLP,
    multipliers: Sequence[float] | np.ndarray,
    *,
    optimum: float | None = None,
    graph_id: str = "",
) -> CoveringCertificate:
    """Snap float multipliers to small-denominator rationals and repair coverage exactly.

    Each multiplier is rounded with a continued-fraction bound of 10**6. Rows
    still short of 1 are then topped up by raising one supporting column just
    enough. If that costs more than 1e-4 (relative) over ``optimum`` the
    result is refused.
    """
    mult = np.asarray(multipliers, dtype=np.float64)
    alphas: dict[int, Fraction] = {}
    for j in np.flatnonzero(mult > 1e-12):
        a = Fraction(float(mult[j])).limit_denominator(DENOMINATOR_LIMIT)
        if a > 0:
            alphas[int(j)] = a
    cov = _exact_coverage(lp, alphas)
    for v in lp.rows:
        deficit = 1 - cov[v]
        if deficit <= 0:
            continue
        support = [j for j in sorted(alphas) if lp.column(j)[v] > 0]
        if support:
            j = max(support, key=lambda j: (int(lp.column(j)[v]), -j))
        else:
            col = lp.corpus.weights[:, v].astype(np.float64)
            ratio = np.where(col > 0, lp.costs / np.where(col > 0, col, 1), np.inf)
            j = int(np.argmin(ratio))
        step = deficit / int(lp.column(j)[v])
        alphas[j] = alphas.get(j, Fraction(0)) + step
        w = lp.column(j)
        for u in lp.rows:
            if w[u]:
                cov[u] += step * int(w[u])
    cert = _certificate(lp, alphas, graph_id)
    if optimum is not None:
        inflation = float(cert.claimed_real_bound - 1) - optimum
        if inflation > INFLATION_TOL * max(1.0, abs(optimum)):
            raise RationalizationFailed(
                f"exact repair inflates the objective by {inflation:.3g} over {optimum:.6f}"
            )
    return cert


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals."""
    size = len(rhs)
    aug = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            raise NumericalFailure("singular basis in exact solve")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


def _basis_matrix(lp: CoveringLP, basis: Sequence[int]) -> list[list[Fraction]]:
    m, k = lp.num_rows, lp.num_columns
    cols = []
    for j in basis:
        if j < k:
            w = lp.column(j)
            cols.append([Fraction(int(w[v])) for v in lp.rows])
        else:
            i = (j - k) % m
            sign = -1 if j < k + m else 1
            cols.append([Fraction(sign if r == i else 0) for r in range(m)])
    return [[cols[c][r] for c in range(m)] for r in range(m)]


def certificate_from_basis(lp: CoveringLP, basis: Sequence[int], *, graph_id: str = "") -> CoveringCertificate:
    """Exact vertex solution of the given basis; the fallback when rounding fails."""
    m, k = lp.num_rows, lp.num_columns
    x = _solve_exact(_basis_matrix(lp, basis), [Fraction(1)] * m)
    alphas = {}
    for j, val in zip(basis, x):
        if val < 0:
            raise RationalizationFailed(f"basis is not primal feasible (value {val} on column {j})")
        if j >= k + m and val != 0:
            raise RationalizationFailed("artificial column basic at a positive level")
        if j < k and val > 0:
            alphas[j] = val
    return _certificate(lp, alphas, graph_id)


def exact_dual_bound(lp: CoveringLP, basis: Sequence[int]) -> Fraction | None:
    """Exact dual value of ``basis`` if that dual is feasible, else ``None``.

    A feasible dual ``y >= 0`` with ``y . w_j <= |w_j|`` for every column is a
    lower bound ``sum(y)`` on the LP optimum, so equality with a certificate's
    objective proves that certificate optimal over the whole corpus.
    """
    m, k = lp.num_rows, lp.num_columns
    Bt = [list(row) for row in zip(*_basis_matrix(lp, basis))]
    cb = [Fraction(int(lp.costs[j])) if j < k else Fraction(0) for j in basis]
    if any(j >= k + m for j in basis):
        return None
    y = _solve_exact(Bt, cb)
    if any(v < 0 for v in y):
        return None
    denom = math.lcm(*(v.denominator for v in y))
    scaled = [int(v * denom) for v in y]
    wmax = int(lp.costs.max())
    fits = max(scaled + [1]) * wmax * m < 2**62 and wmax * denom < 2**62
    lhs = np.zeros(k, dtype=np.int64 if fits else object)
    for i, v in enumerate(lp.rows):
        if scaled[i]:
            col = lp.corpus.weights[:, v].astype(lhs.dtype)
            lhs = lhs + col * scaled[i]
    rhs = lp.costs.astype(lhs.dtype) * denom
    if np.any(lhs > rhs):
        return None
    return Fraction(sum(scaled), denom)


def verify_certificate(cert: CoveringCertificate, g: Graph) -> Verdict:
    """Recheck a certificate in exact arithmetic without any solver.

    Strategies are rebuilt from their tree edges, so the canonical weights are
    recomputed rather than trusted.
    """
    verdict = Verdict()
    r = cert.root
    if not 0 <= r < g.n:
        verdict.fail("root", "certificate", f"root {r} outside graph")
        return verdict
    total = Fraction(0)
    cover = [Fraction(0)] * g.n
    for idx, (s, alpha) in enumerate(cert.entries):
        where = f"entry {idx}"
        if not isinstance(alpha, Fraction) or alpha < 0:
            verdict.fail("multiplier", where, f"multiplier {alpha!r} is not a non-negative rational")
            continue
        if s.root != r:
            verdict.fail("root", where, f"strategy rooted at {s.root}, certificate at {r}")
            continue
        check = validate_strategy(s, g)
        if not check:
            verdict.extend(check, prefix=f"{where}/")
            continue
        rebuilt = canonical_weights(g, r, s.tree_edges)
        if rebuilt.weights != tuple(s.weights):
            verdict.fail("weights", where, "weights differ from the canonical weights of the tree")
            continue
        total += alpha * rebuilt.weight_total
        for v, w in enumerate(rebuilt.weights):
            if w:
                cover[v] += alpha * w
    for v in range(g.n):
        if v != r and cover[v] < 1:
            verdict.fail("coverage", f"row {v}", f"covered to {cover[v]} < 1")
    if cert.claimed_real_bound != 1 + total:
        verdict.fail("arithmetic", "claimed_real_bound", f"{cert.claimed_real_bound} != 1 + {total}")
    if cert.claimed_int_bound != math.floor(cert.claimed_real_bound):
        verdict.fail(
            "arithmetic",
            "claimed_int_bound",
            f"{cert.claimed_int_bound} != floor({cert.claimed_real_bound})",
        )
    return verdict


def certify(lp: CoveringLP, solution: LPSolution, *, graph_id: str = "") -> CoveringCertificate:
    """Exact certificate for a solved LP.

    Rounding plus repair is tried first. The exact vertex of the final basis
    is also computed, and whichever has the smaller objective wins: repair
    can leave a valid but slightly inflated bound with huge denominators.
    """
    candidates = []
    try:
        candidates.append(rationalize(lp, solution.multipliers, optimum=solution.optimum, graph_id=graph_id))
    except RationalizationFailed:
        pass
    try:
        candidates.append(certificate_from_basis(lp, solution.basis, graph_id=graph_id))
    except (RationalizationFailed, NumericalFailure):
        pass
    if not candidates:
        raise RationalizationFailed("neither rounding nor the exact basis gave a feasible certificate")
    return min(candidates, key=lambda c: c.claimed_real_bound)
