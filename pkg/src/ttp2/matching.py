"""Minimum-weight perfect matching on dense complete graphs.

Primal-dual blossom algorithm in the classical O(n^3) dense formulation:
vertices 1..n, contracted blossoms n+1..2n, a slack pointer per tree node,
and representative edges between blossoms and outside vertices so that all
slack bookkeeping stays O(n) per scanned vertex.  The per-vertex scan is
batched with numpy on int64 arrays, which keeps the arithmetic exact.

Distances are mapped to even integers (minimum weight becomes maximum weight
under w -> C - w with C large enough that perfect matchings dominate), so
dual arithmetic is exact and the result is deterministic.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

_INF = float("inf")


class _Blossom:
    """One run of the algorithm; all arrays use 1-based node ids."""

    def __init__(self, weights: list[list[int]]):
        self.n = n = len(weights)
        nn = self.nn = 2 * n
        # Representative edge (eu, ev, ew) for every ordered node pair; ew == 0
        # marks absence.  For original vertices the edge is just (u, v, w).
        self.eu = [[0] * (nn + 1) for _ in range(nn + 1)]
        self.ev = [[0] * (nn + 1) for _ in range(nn + 1)]
        self.ew = [[0] * (nn + 1) for _ in range(nn + 1)]
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                if u != v:
                    self.eu[u][v] = u
                    self.ev[u][v] = v
                    self.ew[u][v] = weights[u - 1][v - 1]
        # Doubled weights between original vertices for the vectorized scan.
        self.w2 = np.zeros((n + 1, n + 1), dtype=np.int64)
        for u in range(1, n + 1):
            self.w2[u, 1:] = np.asarray(weights[u - 1], dtype=np.int64) * 2
            self.w2[u, u] = 0
        self.n_x = n
        self.lab = [0] * (nn + 1)
        self.lab_vec = np.zeros(n + 1, dtype=np.int64)  # vertex labels mirror
        self.match = [0] * (nn + 1)
        self.slack = np.zeros(nn + 1, dtype=np.int32)
        self.st = np.arange(nn + 1, dtype=np.int32)
        self.pa = [0] * (nn + 1)
        self.S = [-1] * (nn + 1)
        self.vis = [0] * (nn + 1)
        self.vis_t = 0
        self.flower: list[list[int]] = [[] for _ in range(nn + 1)]
        self.flower_from = [[0] * (n + 1) for _ in range(nn + 1)]
        for u in range(1, n + 1):
            self.flower_from[u][u] = u
        self.q: list[int] = []
        self.q_head = 0
        self._idx = np.arange(n + 1, dtype=np.int32)

    def _sync_labels(self) -> None:
        self.lab_vec[1:] = self.lab[1 : self.n + 1]
        self.lab_vec[0] = 1 << 62  # sentinel: index 0 is never tight

    # -- slack machinery ---------------------------------------------------

    def e_delta(self, u: int, v: int) -> int:
        # Slack of the representative edge between nodes u and v.
        return self.lab[self.eu[u][v]] + self.lab[self.ev[u][v]] - 2 * self.ew[u][v]

    def update_slack(self, u: int, x: int) -> None:
        s0 = self.slack[x]
        if not s0 or self.e_delta(u, x) < self.e_delta(s0, x):
            self.slack[x] = u

    def set_slack(self, x: int) -> None:
        self.slack[x] = 0
        ew = self.ew
        st = self.st
        S = self.S
        for u in range(1, self.n + 1):
            if ew[u][x] > 0 and st[u] != x and S[st[u]] == 0:
                self.update_slack(u, x)

    def q_push(self, x: int) -> None:
        if x <= self.n:
            self.q.append(x)
        else:
            for y in self.flower[x]:
                self.q_push(y)

    def set_st(self, x: int, b: int) -> None:
        self.st[x] = b
        if x > self.n:
            for y in self.flower[x]:
                self.set_st(y, b)

    # -- structural operations ----------------------------------------------

    def get_pr(self, b: int, xr: int) -> int:
        pr = self.flower[b].index(xr)
        if pr % 2 == 1:
            self.flower[b][1:] = self.flower[b][:0:-1]
            return len(self.flower[b]) - pr
        return pr

    def set_match(self, u: int, v: int) -> None:
        self.match[u] = self.ev[u][v]
        if u <= self.n:
            return
        xr = self.flower_from[u][self.eu[u][v]]
        pr = self.get_pr(u, xr)
        flo = self.flower[u]
        for i in range(pr):
            self.set_match(flo[i], flo[i ^ 1])
        self.set_match(xr, v)
        self.flower[u] = flo[pr:] + flo[:pr]

    def augment(self, u: int, v: int) -> None:
        while True:
            xnv = self.st[self.match[u]]
            self.set_match(u, v)
            if not xnv:
                return
            self.set_match(xnv, self.st[self.pa[xnv]])
            u, v = self.st[self.pa[xnv]], xnv

    def get_lca(self, u: int, v: int) -> int:
        self.vis_t += 1
        t = self.vis_t
        while u or v:
            if u:
                if self.vis[u] == t:
                    return u
                self.vis[u] = t
                u = self.st[self.match[u]]
                if u:
                    u = self.st[self.pa[u]]
            u, v = v, u
        return 0

    def add_blossom(self, u: int, lca: int, v: int) -> None:
        b = self.n + 1
        while b <= self.n_x and self.st[b]:
            b += 1
        if b > self.n_x:
            self.n_x += 1
        self.lab[b] = 0
        self.S[b] = 0
        self.match[b] = self.match[lca]
        flo = [lca]
        x = u
        while x != lca:
            flo.append(x)
            y = self.st[self.match[x]]
            flo.append(y)
            self.q_push(y)
            x = self.st[self.pa[y]]
        flo[1:] = flo[:0:-1]
        x = v
        while x != lca:
            flo.append(x)
            y = self.st[self.match[x]]
            flo.append(y)
            self.q_push(y)
            x = self.st[self.pa[y]]
        self.flower[b] = flo
        self.set_st(b, b)
        for x in range(1, self.n_x + 1):
            self.ew[b][x] = 0
            self.ew[x][b] = 0
        ffb = self.flower_from[b]
        for x in range(1, self.n + 1):
            ffb[x] = 0
        for xs in flo:
            eu_xs, ev_xs, ew_xs = self.eu[xs], self.ev[xs], self.ew[xs]
            eu_b, ev_b, ew_b = self.eu[b], self.ev[b], self.ew[b]
            for x in range(1, self.n_x + 1):
                if ew_xs[x] > 0 and (
                    ew_b[x] == 0 or self.e_delta(xs, x) < self.e_delta(b, x)
                ):
                    eu_b[x] = eu_xs[x]
                    ev_b[x] = ev_xs[x]
                    ew_b[x] = ew_xs[x]
                    self.eu[x][b] = self.eu[x][xs]
                    self.ev[x][b] = self.ev[x][xs]
                    self.ew[x][b] = self.ew[x][xs]
            ffxs = self.flower_from[xs]
            for x in range(1, self.n + 1):
                if ffxs[x]:
                    ffb[x] = xs
        self.set_slack(b)

    def expand_blossom(self, b: int) -> None:
        for xs in self.flower[b]:
            self.set_st(xs, xs)
        xr = self.flower_from[b][self.eu[b][self.pa[b]]]
        pr = self.get_pr(b, xr)
        flo = self.flower[b]
        for i in range(0, pr, 2):
            xs = flo[i]
            xns = flo[i + 1]
            self.pa[xs] = self.eu[xns][xs]
            self.S[xs] = 1
            self.S[xns] = 0
            self.slack[xs] = 0
            self.set_slack(xns)
            self.q_push(xns)
        self.S[xr] = 1
        self.pa[xr] = self.pa[b]
        for i in range(pr + 1, len(flo)):
            xs = flo[i]
            self.S[xs] = -1
            self.set_slack(xs)
        self.st[b] = 0

    def on_found_edge(self, eu: int, ev: int) -> bool:
        u = self.st[eu]
        v = self.st[ev]
        if self.S[v] == -1:
            self.pa[v] = eu
            self.S[v] = 1
            nu = self.st[self.match[v]]
            self.slack[v] = 0
            self.slack[nu] = 0
            self.S[nu] = 0
            self.q_push(nu)
        elif self.S[v] == 0:
            lca = self.get_lca(u, v)
            if not lca:
                self.augment(u, v)
                self.augment(v, u)
                return True
            self.add_blossom(u, lca, v)
        return False

    # -- one augmentation stage ----------------------------------------------

    def _scan(self, u: int) -> bool:
        """Process vertex u's edges: tight ones structurally, the rest as
        slack candidates.  Returns True when an augmenting path completed."""
        n = self.n
        lab = self.lab
        st = self.st
        deltas = lab[u] + self.lab_vec - self.w2[u]
        tight = np.nonzero(deltas[1:] == 0)[0]
        for v in tight + 1:
            v = int(v)
            if v != u and st[u] != st[v]:
                if self.on_found_edge(u, v):
                    return True
        # Batched slack candidates toward singleton targets.
        idx = self._idx
        stv = st[: n + 1]
        cand = deltas
        valid = (stv == idx) & (cand > 0) & (idx != u)
        valid[0] = False
        stu = st[u]
        if stu <= n:
            valid &= idx != stu
        targets = idx[valid]
        if targets.size:
            s0 = self.slack[targets]
            vals = cand[targets]
            cur = self.lab_vec[s0] + self.lab_vec[targets] - self.w2[s0, targets]
            better = (s0 == 0) | (vals < cur)
            self.slack[targets[better]] = u
        # Blossom targets: few of them, handled one by one.
        if self.n_x > n:
            blos = np.unique(stv[1:][(stv[1:] > n) & (deltas[1:] > 0)])
            for x in blos:
                x = int(x)
                if x != stu:
                    self.update_slack(u, x)
        return False

    def matching_stage(self) -> bool:
        n = self.n
        for x in range(1, self.n_x + 1):
            self.S[x] = -1
            self.slack[x] = 0
        self.q = []
        self.q_head = 0
        for x in range(1, self.n_x + 1):
            if self.st[x] == x and not self.match[x]:
                self.pa[x] = 0
                self.S[x] = 0
                self.q_push(x)
        if not self.q:
            return False
        self._sync_labels()
        while True:
            while self.q_head < len(self.q):
                u = self.q[self.q_head]
                self.q_head += 1
                if self.S[self.st[u]] == 1:
                    continue
                if self._scan(u):
                    return True
            d = None
            for b in range(n + 1, self.n_x + 1):
                if self.st[b] == b and self.S[b] == 1:
                    cand = self.lab[b] // 2
                    if d is None or cand < d:
                        d = cand
            for x in range(1, self.n_x + 1):
                s0 = self.slack[x]
                if self.st[x] == x and s0:
                    delta = self.e_delta(s0, x)
                    if self.S[x] == -1:
                        cand = delta
                    elif self.S[x] == 0:
                        cand = delta // 2
                    else:
                        continue
                    if d is None or cand < d:
                        d = cand
            if d is None or d < 0:
                raise AssertionError("dual adjustment failed; matching is infeasible")
            for u in range(1, n + 1):
                s = self.S[self.st[u]]
                if s == 0:
                    self.lab[u] -= d
                elif s == 1:
                    self.lab[u] += d
            for b in range(n + 1, self.n_x + 1):
                if self.st[b] == b:
                    if self.S[b] == 0:
                        self.lab[b] += 2 * d
                    elif self.S[b] == 1:
                        self.lab[b] -= 2 * d
            self._sync_labels()
            self.q = []
            self.q_head = 0
            for x in range(1, self.n_x + 1):
                s0 = self.slack[x]
                if (
                    self.st[x] == x
                    and s0
                    and self.st[s0] != x
                    and self.e_delta(s0, x) == 0
                ):
                    if self.on_found_edge(self.eu[s0][x], self.ev[s0][x]):
                        return True
            for b in range(n + 1, self.n_x + 1):
                if self.st[b] == b and self.S[b] == 1 and self.lab[b] == 0:
                    self.expand_blossom(b)

    def solve(self) -> list[int]:
        w_max = 0
        for u in range(1, self.n + 1):
            for v in range(1, self.n + 1):
                if u != v and self.ew[u][v] > w_max:
                    w_max = self.ew[u][v]
        for u in range(1, self.nn + 1):
            self.lab[u] = w_max
        while self.matching_stage():
            pass
        mate = [0] * (self.n + 1)
        for u in range(1, self.n + 1):
            mate[u] = int(self.match[u])
        return mate


def max_weight_perfect_pairs(weights: list[list[int]]) -> list[tuple[int, int]]:
    """Maximum-weight perfect matching for an even complete graph.

    ``weights`` must be positive even integers.  Returns 0-based vertex pairs.
    """
    n = len(weights)
    if n % 2 != 0:
        raise DomainError(f"perfect matching needs an even vertex count, got {n}")
    if n == 0:
        return []
    solver = _Blossom(weights)
    mate = solver.solve()
    pairs = []
    for u in range(1, n + 1):
        v = mate[u]
        if v == 0:
            raise AssertionError("matching is not perfect")
        if u < v:
            pairs.append((u - 1, v - 1))
    return pairs


def integerize(values, scale_bits: int = 31):
    """Map nonnegative floats to even integers preserving relative order
    to ~2**-scale_bits, suitable for exact blossom arithmetic."""
    top = max((v for row in values for v in row), default=0.0)
    scale = (1 << scale_bits) / top if top > 0 else 1.0
    return [[2 * int(round(v * scale)) for v in row] for row in values], scale


def min_weight_perfect_matching_dense(d, vertices: list[int]) -> list[tuple[int, int]]:
    """Minimum-weight perfect matching of ``vertices`` under distance matrix ``d``.

    Vertices are indices into ``d``; the returned pairs use the same indices,
    each pair sorted, the pair list sorted.
    """
    k = len(vertices)
    if k % 2 != 0:
        raise DomainError(f"subset size must be even, got {k}")
    if k == 0:
        return []
    if k == 2:
        a, b = sorted(vertices)
        return [(a, b)]
    sub = [[float(d[u][v]) for v in vertices] for u in vertices]
    ints, _ = integerize(sub)
    # Minimize by maximizing C - w with C large enough that every perfect
    # matching beats every smaller matching.
    c = max(max(row) for row in ints) * k + 2
    maxed = [[(c - ints[i][j]) if i != j else 0 for j in range(k)] for i in range(k)]
    pairs = max_weight_perfect_pairs(maxed)
    out = [tuple(sorted((vertices[i], vertices[j]))) for i, j in pairs]
    return sorted(out)


def brute_force_perfect_matching(d, vertices: list[int]) -> tuple[list[tuple[int, int]], float]:
    """Exhaustive minimum-weight perfect matching (double-factorial oracle)."""
    k = len(vertices)
    if k % 2 != 0:
        raise DomainError(f"subset size must be even, got {k}")
    best_pairs: list[tuple[int, int]] | None = None
    best_w = _INF

    def rec(rem: list[int], acc: list[tuple[int, int]], w: float):
        nonlocal best_pairs, best_w
        if not rem:
            if w < best_w:
                best_w = w
                best_pairs = list(acc)
            return
        a = rem[0]
        for idx in range(1, len(rem)):
            b = rem[idx]
            acc.append((a, b))
            rec(rem[1:idx] + rem[idx + 1 :], acc, w + d[a][b])
            acc.pop()

    rec(sorted(vertices), [], 0.0)
    if best_pairs is None:
        return [], 0.0
    return sorted(tuple(sorted(p)) for p in best_pairs), best_w
