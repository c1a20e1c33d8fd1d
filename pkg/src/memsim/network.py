"""Interacting memristor networks under Kirchhoff constraints.

Graph construction, the cycle-space projector, the network state equation

    dw/dt = alpha w - (1/beta) (I + chi Omega W)^{-1} Omega S,   chi = (r_off-r_on)/r_on,

its linearization and spectral/relaxation analysis, and the maze-solving demo.

Voltage sources come in two forms: a series EMF on a memristive edge (the
``value`` field), or a pure source edge.  Pure source edges are eliminated
losslessly before analysis by source shifting: the constraint phi_head =
phi_tail + V is propagated through a potential-weighted union-find and the
EMF reappears on the remaining memristive edges (sigma' = sigma + delta_tail
- delta_head).  The projector and the source vector S = sigma'/r_on then live
purely on memristive edges, which reproduces the single-loop reduction to the
one-device equation exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import IntegratorSpec, SimulationError, Trace, loglog_slope, power_spectrum_exponent
from .devices import HpParams

__all__ = [
    "Edge",
    "CircuitGraph",
    "MazeSpec",
    "DisconnectedGraphError",
    "SingularNetworkError",
    "AmbiguousPathError",
    "reduce_sources",
    "cycle_projector",
    "source_vector",
    "memnet_rhs",
    "edge_currents",
    "NetworkRun",
    "simulate_network",
    "linearize",
    "mean_relaxation",
    "SocResult",
    "random_network",
    "soc_experiment",
    "maze_to_circuit",
    "MazeResult",
    "solve_maze",
    "bfs_shortest_path",
]


class DisconnectedGraphError(ValueError):
    pass


class SingularNetworkError(SimulationError):
    pass


class AmbiguousPathError(SimulationError):
    def __init__(self, message, currents=None):
        super().__init__(message)
        self.currents = currents


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    kind: str = "memristor"  # "memristor" | "source"
    value: float = 0.0       # series EMF (memristor) or source EMF (source), volts

    def __post_init__(self):
        if self.kind not in ("memristor", "source"):
            raise ValueError("edge kind must be 'memristor' or 'source'")


@dataclass(frozen=True)
class CircuitGraph:
    """Directed graph with device-bearing edges.

    Orientation fixes the sign of edge currents and of dw/dt; EMF convention:
    traversing an edge tail -> head through its source raises the potential
    by ``value``.
    """

    n_nodes: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            if not (0 <= e.tail < self.n_nodes and 0 <= e.head < self.n_nodes):
                raise ValueError(f"edge {e} references a node outside 0..{self.n_nodes - 1}")

    @property
    def memristive_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.kind == "memristor")

    def to_edge_list(self) -> str:
        """Serialize as ``tail head role value`` lines."""
        return "\n".join(f"{e.tail} {e.head} {e.kind} {e.value:.17g}" for e in self.edges) + "\n"

    @classmethod
    def from_edge_list(cls, text: str, n_nodes: int | None = None) -> "CircuitGraph":
        edges = []
        hi = -1
        for line in text.strip().splitlines():
            tail_s, head_s, kind, value_s = line.split()
            e = Edge(int(tail_s), int(head_s), kind, float(value_s))
            hi = max(hi, e.tail, e.head)
            edges.append(e)
        return cls(n_nodes=hi + 1 if n_nodes is None else n_nodes, edges=tuple(edges))


class _PotentialUnionFind:
    """Union-find carrying delta[v] = phi(v) - phi(root(v))."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.delta = [0.0] * n

    def find(self, v: int) -> int:
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        offset = 0.0
        for u in reversed(path):
            offset += self.delta[u]
            self.parent[u] = v
            self.delta[u] = offset
        return v

    def potential(self, v: int) -> float:
        """phi(v) - phi(root(v))."""
        root = self.find(v)
        return 0.0 if v == root else self.delta[v]

    def union(self, a: int, b: int, diff: float) -> None:
        """Impose phi(b) - phi(a) = diff."""
        ra = self.find(a)
        rb = self.find(b)
        pa = self.potential(a)
        pb = self.potential(b)
        if ra == rb:
            if abs((pb - pa) - diff) > 1e-9 * (1.0 + abs(diff)):
                raise ValueError("inconsistent source loop (conflicting EMF constraints)")
            return
        # attach rb under ra: phi(rb) - phi(ra) = pa + diff - pb
        self.parent[rb] = ra
        self.delta[rb] = pa + diff - pb


def reduce_sources(g: CircuitGraph) -> tuple[int, list[tuple[int, int]], np.ndarray]:
    """Contract pure source edges;  return (n_nodes, memristive edge list, EMF vector).

    Node ids are re-labelled densely.  Each memristive edge's effective series
    EMF is sigma + delta_tail - delta_head where delta are the node potential
    offsets imposed by the source edges.
    """
    uf = _PotentialUnionFind(g.n_nodes)
    for e in g.edges:
        if e.kind == "source":
            uf.union(e.tail, e.head, e.value)
    roots = {}
    for v in range(g.n_nodes):
        roots.setdefault(uf.find(v), len(roots))
    mem = g.memristive_edges
    edges = []
    emf = np.empty(len(mem))
    for k, e in enumerate(mem):
        rt = uf.find(e.tail)
        rh = uf.find(e.head)
        edges.append((roots[rt], roots[rh]))
        emf[k] = e.value + uf.potential(e.tail) - uf.potential(e.head)
    return len(roots), edges, emf


def _fundamental_cycles(n_nodes: int, edges: Sequence[tuple[int, int]]) -> np.ndarray:
    """Signed fundamental-cycle matrix (rows = cycles) from a BFS spanning tree.

    Self-loops are their own cycles.  Raises DisconnectedGraphError if the
    graph does not span all nodes.
    """
    adj: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(n_nodes)}
    self_loops = []
    for k, (a, b) in enumerate(edges):
        if a == b:
            self_loops.append(k)
            continue
        adj[a].append((b, k, +1))
        adj[b].append((a, k, -1))
    parent: dict[int, tuple[int | None, int | None, int]] = {0: (None, None, 0)}
    order = deque([0])
    while order:
        v = order.popleft()
        for (u, k, s) in adj[v]:
            if u not in parent:
                parent[u] = (v, k, s)
                order.append(u)
    if len(parent) != n_nodes:
        raise DisconnectedGraphError(
            f"graph is disconnected: reached {len(parent)} of {n_nodes} nodes"
        )
    tree = {parent[v][1] for v in parent if parent[v][1] is not None}

    def path_to_root(v: int) -> list[tuple[int, int]]:
        seq = []
        while parent[v][0] is not None:
            pv, k, s = parent[v]
            seq.append((k, s))
            v = pv
        return seq

    rows = []
    for k, (a, b) in enumerate(edges):
        if k in tree:
            continue
        row = np.zeros(len(edges))
        row[k] = 1.0
        if a != b:
            pa = path_to_root(a)
            pb = path_to_root(b)
            while pa and pb and pa[-1][0] == pb[-1][0]:
                pa.pop()
                pb.pop()
            # close the cycle through the tree: the stored sign s is the
            # parent->child direction, so the b->root walk contributes -s and
            # the root->a walk contributes +s
            for (ke, s) in pb:
                row[ke] -= s
            for (ke, s) in pa:
                row[ke] += s
        rows.append(row)
    return np.array(rows) if rows else np.zeros((0, len(edges)))


def cycle_projector(g: CircuitGraph) -> np.ndarray:
    """Orthogonal projector onto the cycle space of the memristive edge space.

    Built from a fundamental-cycle basis B of the source-contracted graph:
    Omega = B^T (B B^T)^+ B.  Symmetric, idempotent, eigenvalues in {0, 1},
    rank E - N + 1 for a connected graph.
    """
    n_nodes, edges, _ = reduce_sources(g)
    b = _fundamental_cycles(n_nodes, edges)
    n_edges = len(edges)
    if b.shape[0] == 0:
        return np.zeros((n_edges, n_edges))
    return b.T @ np.linalg.pinv(b @ b.T) @ b


def source_vector(g: CircuitGraph, hp: HpParams) -> np.ndarray:
    """Per-memristive-edge source vector S = sigma / r_on (units of current)."""
    _, _, emf = reduce_sources(g)
    return emf / hp.r_on


def edge_currents(w: np.ndarray, s: np.ndarray, omega: np.ndarray, hp: HpParams) -> np.ndarray:
    """Edge currents i = (I + chi Omega W)^{-1} Omega S (amperes)."""
    chi = hp.xi
    m = np.eye(len(w)) + chi * omega * np.asarray(w, dtype=float)[None, :]
    try:
        return np.linalg.solve(m, omega @ np.asarray(s, dtype=float))
    except np.linalg.LinAlgError as exc:
        raise SingularNetworkError(f"(I + chi Omega W) is singular: {exc}") from exc


def memnet_rhs(w, s, omega: np.ndarray, hp: HpParams) -> np.ndarray:
    """dw/dt = alpha w - polarity * (I + chi Omega W)^{-1} Omega S / beta."""
    w = np.asarray(w, dtype=float)
    return hp.alpha * w - hp.polarity * edge_currents(w, s, omega, hp) / hp.beta


@dataclass(frozen=True)
class NetworkRun:
    trace: Trace
    steady: bool
    stop_reason: str  # "steady" | "t_end"


def _clamped_residual(w: np.ndarray, dw: np.ndarray) -> np.ndarray:
    """Zero out rates that only push against the [0,1] clamp."""
    blocked = ((w >= 1.0) & (dw > 0)) | ((w <= 0.0) & (dw < 0))
    return np.where(blocked, 0.0, dw)


def simulate_network(
    g: CircuitGraph,
    s,
    hp: HpParams,
    spec: IntegratorSpec,
    w0=0.5,
    steady_tol: float = 1e-6,
) -> NetworkRun:
    """Integrate the network equation with per-edge clamping to [0, 1].

    ``s`` is the source vector over memristive edges (units V/r_on), or a
    callable t -> vector, or None to derive it from the graph's EMFs.  Stops
    early once the clamp-aware rate norm falls below ``steady_tol``.  The
    trace carries w0..w{E-1} plus the instantaneous mean channel.
    """
    omega = cycle_projector(g)
    n_e = omega.shape[0]
    if s is None:
        s = source_vector(g, hp)
    s_of_t: Callable[[float], np.ndarray]
    if callable(s):
        s_of_t = s
    else:
        s_arr = np.asarray(s, dtype=float)
        if s_arr.shape != (n_e,):
            raise ValueError(f"source vector must have shape ({n_e},), got {s_arr.shape}")
        s_of_t = lambda t: s_arr
    w = np.full(n_e, w0, dtype=float) if np.isscalar(w0) else np.asarray(w0, dtype=float).copy()
    if w.shape != (n_e,):
        raise ValueError(f"w0 must have shape ({n_e},)")

    n = spec.n_steps
    dt = spec.dt
    rows = [w.copy()]
    steady = False
    t = 0.0
    for k in range(n):
        dw = memnet_rhs(w, s_of_t(t), omega, hp)
        if spec.method == "euler":
            w = w + dt * dw
        else:
            k1 = dw
            k2 = memnet_rhs(w + 0.5 * dt * k1, s_of_t(t + 0.5 * dt), omega, hp)
            k3 = memnet_rhs(w + 0.5 * dt * k2, s_of_t(t + 0.5 * dt), omega, hp)
            k4 = memnet_rhs(w + dt * k3, s_of_t(t + dt), omega, hp)
            w = w + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        w = np.clip(w, 0.0, 1.0)
        if not np.all(np.isfinite(w)):
            raise SimulationError(f"network state diverged at t={t + dt:.6g}")
        rows.append(w.copy())
        t = (k + 1) * dt
        resid = _clamped_residual(w, memnet_rhs(w, s_of_t(t), omega, hp))
        if np.max(np.abs(resid)) < steady_tol:
            steady = True
            break
    data = np.array(rows)
    channels = {f"w{i}": data[:, i] for i in range(n_e)}
    channels["mean_w"] = data.mean(axis=1)
    trace = Trace(t0=0.0, dt=dt, channels=channels)
    return NetworkRun(trace=trace, steady=steady, stop_reason="steady" if steady else "t_end")


def linearize(s, omega: np.ndarray, hp: HpParams, w_star, step: float = 1e-6) -> np.ndarray:
    """Numerical Jacobian of memnet_rhs at w_star (central differences)."""
    w_star = np.asarray(w_star, dtype=float)
    s = np.asarray(s, dtype=float)
    n = w_star.size
    a = np.empty((n, n))
    for j in range(n):
        wp = w_star.copy()
        wm = w_star.copy()
        wp[j] += step
        wm[j] -= step
        col = (memnet_rhs(wp, s, omega, hp) - memnet_rhs(wm, s, omega, hp)) / (2.0 * step)
        if not np.all(np.isfinite(col)):
            raise SimulationError(f"non-finite Jacobian entries in column {j}")
        a[:, j] = col
    return a


def _expm_taylor(a: np.ndarray) -> np.ndarray:
    """Scaling-and-squaring Taylor matrix exponential (series fallback)."""
    norm = np.linalg.norm(a, 1)
    squarings = max(0, int(np.ceil(np.log2(max(norm, 1e-300)))) + 1) if norm > 0.5 else 0
    m = a / (2.0 ** squarings)
    out = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for k in range(1, 30):
        term = term @ m / k
        out = out + term
        if np.linalg.norm(term, 1) < 1e-18 * max(np.linalg.norm(out, 1), 1.0):
            break
    for _ in range(squarings):
        out = out @ out
    return out


def mean_relaxation(a: np.ndarray, w0, ts, branch: str | None = None) -> np.ndarray:
    """Average relaxation <w(t)> = (1/N) tr(e^{At} W0), W0 = diag(w0).

    Evaluated through the eigendecomposition of A; ``branch`` restricts the
    modal sum to the "negative" or "positive" part of the spectrum (the
    branch decomposition used in the relaxation analysis).  Falls back to a
    scaling-and-squaring series exponential if the eigendecomposition fails
    (full spectrum only).
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    w0 = np.asarray(w0, dtype=float)
    ts = np.asarray(ts, dtype=float)
    try:
        lam, q = np.linalg.eig(a)
        d = np.diagonal(np.linalg.solve(q, np.diag(w0) @ q))
    except np.linalg.LinAlgError:
        if branch is not None:
            raise
        return np.array([np.trace(_expm_taylor(a * t) @ np.diag(w0)) / n for t in ts])
    if branch == "negative":
        keep = lam.real < -1e-12
    elif branch == "positive":
        keep = lam.real > 1e-12
    elif branch is None:
        keep = np.ones_like(lam, dtype=bool)
    else:
        raise ValueError("branch must be None, 'negative' or 'positive'")
    lam = lam[keep]
    d = d[keep]
    out = np.array([np.sum(np.exp(lam * t) * d) for t in ts])
    return out.real / n


@dataclass(frozen=True)
class SocResult:
    gamma: float
    spectrum_slope: float
    power_law: bool
    fit_r2: float
    rates: np.ndarray
    relaxation: Trace


def random_network(
    rng: np.random.Generator,
    n_nodes: int = 100,
    edge_prob: float = 0.045,
    n_sources: int = 5,
    source_volts: float = 1.0,
    max_tries: int = 200,
) -> CircuitGraph:
    """Connected Erdos-Renyi memristive network with random series sources."""
    for _ in range(max_tries):
        mask = rng.random((n_nodes, n_nodes)) < edge_prob
        pairs = [(i, j) for i in range(n_nodes) for j in range(i + 1, n_nodes) if mask[i, j]]
        if len(pairs) < n_nodes:
            continue
        emf = np.zeros(len(pairs))
        idx = rng.choice(len(pairs), size=min(n_sources, len(pairs)), replace=False)
        emf[idx] = source_volts * rng.choice([-1.0, 1.0], size=len(idx))
        g = CircuitGraph(
            n_nodes=n_nodes,
            edges=tuple(Edge(a, b, "memristor", v) for (a, b), v in zip(pairs, emf)),
        )
        try:
            reduce_and_check = _fundamental_cycles(*reduce_sources(g)[:2])
            _ = reduce_and_check
            return g
        except DisconnectedGraphError:
            continue
    raise RuntimeError("failed to sample a connected graph")


def _log_resampled_r2(t: np.ndarray, x: np.ndarray, t_lo: float, t_hi: float, n: int = 128) -> float:
    """R^2 of the log-log fit on log-uniform resampled points (power-law gate)."""
    tg = np.geomspace(max(t_lo, t[1]), min(t_hi, t[-1]), n)
    xg = np.interp(tg, t, x)
    keep = xg > 0
    _, r2 = loglog_slope(tg[keep], xg[keep])
    return r2


def soc_experiment(
    g: CircuitGraph,
    hp: HpParams,
    spec: IntegratorSpec | None = None,
    rate_decades: float = 2.5,
    n_samples: int = 32768,
    gamma_window: tuple[float, float] = (2.0, 0.5),
    fit_band: tuple[float, float] = (10.0, 30.0),
) -> SocResult:
    """Relaxation-exponent and spectrum-slope analysis of a driven network.

    Procedure: relax the network to its DC configuration, linearize there,
    take the negative branch of the spectrum (rates within ``rate_decades``
    of the fastest), build <w(t)> = tr(e^{At} W0)/N with W0 = I/2 on a
    uniform grid spanning 6/lambda_min, then fit

    - gamma: log-log slope of <w(t)> on the scaling window
      (gamma_window[0]/lambda_max, gamma_window[1]/lambda_min),
    - spectrum slope: periodogram log-log slope on the band
      (lambda_max/fit_band[0], fit_band[1]*lambda_max)/(2 pi), clipped at
      the Nyquist frequency of the relaxation grid.

    The power-law gate is the R^2 of the log-resampled time-domain fit
    (falling back to the corner window when the rate spread leaves no
    scaling regime, e.g. a single device): fits with R^2 < 0.9 report
    ``power_law=False``.
    """
    if spec is None:
        spec = IntegratorSpec(method="euler", dt=0.05, t_end=200.0)
    omega = cycle_projector(g)
    s = source_vector(g, hp)
    run = simulate_network(g, s, hp, spec, w0=0.5)
    w_star = np.array([run.trace[f"w{i}"][-1] for i in range(omega.shape[0])])
    a = linearize(s, omega, hp, w_star)
    lam = np.real(np.linalg.eigvals(a))
    neg = -lam[lam < -1e-10]
    if neg.size == 0:
        raise SimulationError("linearization has no negative branch to relax on")
    lam_max = neg.max()
    rates = neg[neg >= lam_max * 10.0 ** (-rate_decades)]
    lam_min = rates.min()

    t_end = 6.0 / lam_min
    t = np.linspace(0.0, t_end, n_samples)
    x = 0.5 * np.exp(-np.outer(t, rates)).mean(axis=1)
    relax = Trace(t0=0.0, dt=t[1] - t[0], channels={"mean_w": x})

    t_lo, t_hi = gamma_window[0] / lam_max, gamma_window[1] / lam_min
    msk = (t > t_lo) & (t <= t_hi) & (x > 0)
    if np.count_nonzero(msk) >= 8:
        gamma, _ = loglog_slope(t[msk], x[msk])
        fit_r2 = _log_resampled_r2(t, x, t_lo, t_hi)
    else:
        # no scaling regime (single relaxation scale): fit around the corner
        gamma, _ = loglog_slope(*_corner_window(t, x, lam_max, lam_min))
        fit_r2 = _log_resampled_r2(t, x, 0.3 / lam_max, 5.0 / lam_min)
    nyquist = 0.5 / relax.dt
    f_hi = min(lam_max * fit_band[1] / (2.0 * np.pi), 0.999 * nyquist)
    slope = power_spectrum_exponent(relax, "mean_w", (lam_max / (2.0 * np.pi) / fit_band[0], f_hi))
    return SocResult(
        gamma=float(gamma),
        spectrum_slope=float(slope),
        power_law=bool(fit_r2 >= 0.9),
        fit_r2=float(fit_r2),
        rates=rates,
        relaxation=relax,
    )


def _corner_window(t, x, lam_max, lam_min):
    msk = (t > 0.3 / lam_max) & (t <= 5.0 / lam_min) & (x > 0)
    return t[msk], x[msk]


@dataclass(frozen=True)
class MazeSpec:
    """Rectangular grid maze: '#' wall, '.' open, 'S' entrance, 'E' exit."""

    rows: tuple[str, ...]
    entrance: tuple[int, int]
    exit: tuple[int, int]

    @classmethod
    def from_text(cls, text: str) -> "MazeSpec":
        rows = tuple(line for line in text.strip("\n").splitlines())
        if not rows or len(set(map(len, rows))) != 1:
            raise ValueError("maze rows must be non-empty and of equal width")
        entrance = exit_ = None
        for r, row in enumerate(rows):
            for c, ch in enumerate(row):
                if ch == "S":
                    entrance = (r, c)
                elif ch == "E":
                    exit_ = (r, c)
                elif ch not in ".#":
                    raise ValueError(f"invalid maze character {ch!r} at {(r, c)}")
        if entrance is None or exit_ is None:
            raise ValueError("maze needs exactly one 'S' and one 'E'")
        spec = cls(rows=rows, entrance=entrance, exit=exit_)
        if spec.entrance == spec.exit:
            raise ValueError("entrance and exit must differ")
        if bfs_shortest_path(spec) is None:
            raise ValueError("no path between entrance and exit")
        return spec

    def open_cells(self) -> list[tuple[int, int]]:
        return [
            (r, c)
            for r, row in enumerate(self.rows)
            for c, ch in enumerate(row)
            if ch in ".SE"
        ]

    def neighbors(self, cell: tuple[int, int]):
        r, c = cell
        for dr, dc in ((0, 1), (1, 0), (0, -1), (-1, 0)):
            rr, cc = r + dr, c + dc
            if 0 <= rr < len(self.rows) and 0 <= cc < len(self.rows[0]) and self.rows[rr][cc] in ".SE":
                yield (rr, cc)


def _bfs_distances(m: MazeSpec, src: tuple[int, int]) -> dict[tuple[int, int], int]:
    dist = {src: 0}
    q = deque([src])
    while q:
        v = q.popleft()
        for u in m.neighbors(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


def bfs_shortest_path(m: MazeSpec) -> list[tuple[int, int]] | None:
    """One shortest entrance->exit path (the oracle side of the maze check)."""
    dist = _bfs_distances(m, m.entrance)
    if m.exit not in dist:
        return None
    path = [m.exit]
    v = m.exit
    while v != m.entrance:
        v = next(u for u in m.neighbors(v) if dist.get(u, -2) == dist[v] - 1)
        path.append(v)
    return list(reversed(path))


def maze_to_circuit(
    m: MazeSpec, hp: HpParams, v_dc: float
) -> tuple[CircuitGraph, dict[tuple[int, int], int]]:
    """Memristive grid circuit for a maze, plus the cell -> node map.

    Each open cell reachable from the entrance is a node (walled-off pockets
    are dropped); each adjacency is a memristive edge oriented along
    increasing entrance-distance (matching the device polarity to the drive
    gradient); one pure DC source edge runs exit -> entrance.
    """
    dist = _bfs_distances(m, m.entrance)
    cells = sorted(dist.keys())
    index = {cell: k for k, cell in enumerate(cells)}
    if m.exit not in index:
        raise ValueError("no path between entrance and exit")
    edges = []
    seen = set()
    for cell in cells:
        for nb in m.neighbors(cell):
            if nb not in index:
                continue
            key = tuple(sorted((cell, nb)))
            if key in seen:
                continue
            seen.add(key)
            a, b = (cell, nb) if dist[cell] <= dist[nb] else (nb, cell)
            edges.append(Edge(index[a], index[b], "memristor", 0.0))
    edges.append(Edge(index[m.exit], index[m.entrance], "source", v_dc))
    return CircuitGraph(n_nodes=len(cells), edges=tuple(edges)), index


@dataclass(frozen=True)
class MazeResult:
    path: tuple[tuple[tuple[int, int], tuple[int, int]], ...]  # cell adjacencies
    contrast: float
    currents: np.ndarray
    run: NetworkRun


def solve_maze(
    m: MazeSpec,
    hp: HpParams,
    v_dc: float,
    spec: IntegratorSpec | None = None,
    threshold: float = 0.5,
) -> MazeResult:
    """Self-organize the maze circuit under DC and extract the conducting path.

    Path edges are those whose steady |current| is at least ``threshold``
    times the maximum edge current; they must form a connected entrance->exit
    route or AmbiguousPathError is raised.  Contrast is min(on-path current)
    / max(off-path current) (infinite when nothing flows off the path).
    """
    if spec is None:
        spec = IntegratorSpec(method="euler", dt=0.005, t_end=100.0)
    g, index = maze_to_circuit(m, hp, v_dc)
    omega = cycle_projector(g)
    s = source_vector(g, hp)
    run = simulate_network(g, s, hp, spec, w0=0.5)
    n_e = omega.shape[0]
    w_final = np.array([run.trace[f"w{i}"][-1] for i in range(n_e)])
    cur = edge_currents(w_final, s, omega, hp)
    mags = np.abs(cur)
    cut = threshold * mags.max()
    mem_edges = g.memristive_edges
    inv = {v: k for k, v in index.items()}
    on = [k for k in range(n_e) if mags[k] >= cut]
    off = [k for k in range(n_e) if mags[k] < cut]
    # path edges must form a connected entrance->exit route
    adj: dict[int, list[int]] = {}
    for k in on:
        adj.setdefault(mem_edges[k].tail, []).append(mem_edges[k].head)
        adj.setdefault(mem_edges[k].head, []).append(mem_edges[k].tail)
    start, goal = index[m.entrance], index[m.exit]
    seen = {start}
    q = deque([start])
    while q:
        v = q.popleft()
        for u in adj.get(v, []):
            if u not in seen:
                seen.add(u)
                q.append(u)
    if goal not in seen:
        raise AmbiguousPathError(
            f"threshold {threshold} yields a disconnected path "
            f"(max current {mags.max():.3g}, {len(on)} edges above cut)",
            currents=cur,
        )
    off_max = max((mags[k] for k in off), default=0.0)
    contrast = float(min(mags[k] for k in on) / off_max) if off_max > 0 else float("inf")
    path = tuple((inv[mem_edges[k].tail], inv[mem_edges[k].head]) for k in on)
    return MazeResult(path=path, contrast=contrast, currents=cur, run=run)
