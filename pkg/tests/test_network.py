import numpy as np
import pytest
from scipy.linalg import expm
from scipy.special import exp1

from memsim.core import IntegratorSpec
from memsim.devices import HpParams, hp_resistance, hp_rhs
from memsim.network import (
    AmbiguousPathError,
    CircuitGraph,
    DisconnectedGraphError,
    Edge,
    MazeSpec,
    bfs_shortest_path,
    cycle_projector,
    edge_currents,
    linearize,
    maze_to_circuit,
    mean_relaxation,
    memnet_rhs,
    random_network,
    reduce_sources,
    simulate_network,
    soc_experiment,
    solve_maze,
    source_vector,
)

HP = HpParams(alpha=0.0, beta=1.0, r_on=1.0, r_off=100.0)


def ring(n, emf_on_first=0.0):
    edges = [Edge(k, (k + 1) % n, "memristor", emf_on_first if k == 0 else 0.0)
             for k in range(n)]
    return CircuitGraph(n_nodes=n, edges=tuple(edges))


def random_connected(rng, n_nodes, p=0.15):
    while True:
        mask = rng.random((n_nodes, n_nodes)) < p
        edges = [Edge(i, j) for i in range(n_nodes) for j in range(i + 1, n_nodes) if mask[i, j]]
        g = CircuitGraph(n_nodes=n_nodes, edges=tuple(edges))
        try:
            cycle_projector(g)
            return g
        except DisconnectedGraphError:
            continue


class TestCycleProjector:
    def test_spanning_tree_is_zero(self):
        g = CircuitGraph(n_nodes=4, edges=(Edge(0, 1), Edge(1, 2), Edge(1, 3)))
        assert np.allclose(cycle_projector(g), 0.0)

    def test_single_loop_uniform(self):
        for n in (3, 5, 8):
            omega = cycle_projector(ring(n))
            assert np.allclose(omega, np.full((n, n), 1.0 / n), atol=1e-12)

    def test_two_disjoint_loops_block_diagonal(self):
        # two triangles sharing no edge, joined by a bridge edge
        edges = (
            Edge(0, 1), Edge(1, 2), Edge(2, 0),      # loop 1
            Edge(3, 4), Edge(4, 5), Edge(5, 3),      # loop 2
            Edge(2, 3),                              # bridge (no cycle through it)
        )
        g = CircuitGraph(n_nodes=6, edges=edges)
        omega = cycle_projector(g)
        want = np.zeros((7, 7))
        # orientation: consistent loops -> |entries| = 1/3 within each block
        assert np.allclose(np.abs(omega[:3, :3]), 1.0 / 3.0, atol=1e-12)
        assert np.allclose(np.abs(omega[3:6, 3:6]), 1.0 / 3.0, atol=1e-12)
        assert np.allclose(omega[:3, 3:], 0.0, atol=1e-12)
        assert np.allclose(omega[6, :], 0.0, atol=1e-12)
        del want

    def test_invariants_on_random_graphs(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            n_nodes = int(rng.integers(4, 31))
            g = random_connected(rng, n_nodes)
            omega = cycle_projector(g)
            assert np.max(np.abs(omega - omega.T)) < 1e-10
            assert np.max(np.abs(omega @ omega - omega)) < 1e-10
            eig = np.linalg.eigvalsh(omega)
            assert np.all((np.abs(eig) < 1e-8) | (np.abs(eig - 1.0) < 1e-8))
            rank = int(round(np.trace(omega)))
            assert rank == len(g.edges) - n_nodes + 1

    def test_disconnected_raises(self):
        g = CircuitGraph(n_nodes=4, edges=(Edge(0, 1), Edge(2, 3)))
        with pytest.raises(DisconnectedGraphError):
            cycle_projector(g)

    def test_self_loop_is_unit_projector(self):
        g = CircuitGraph(n_nodes=1, edges=(Edge(0, 0),))
        assert np.allclose(cycle_projector(g), [[1.0]])


class TestSourceReduction:
    def test_memristor_source_loop(self):
        # one memristor 0->1 plus a source edge 1->0 with EMF V:
        # contraction leaves a self-loop with series EMF +V
        g = CircuitGraph(n_nodes=2, edges=(Edge(0, 1), Edge(1, 0, "source", 2.5)))
        n_nodes, edges, emf = reduce_sources(g)
        assert n_nodes == 1
        assert edges[0][0] == edges[0][1]
        assert emf[0] == pytest.approx(2.5)
        assert np.allclose(cycle_projector(g), [[1.0]])

    def test_source_chain(self):
        # two sources in series around a loop add up
        g = CircuitGraph(
            n_nodes=3,
            edges=(Edge(0, 1), Edge(1, 2, "source", 1.0), Edge(2, 0, "source", 0.5)),
        )
        _, _, emf = reduce_sources(g)
        assert emf[0] == pytest.approx(1.5)

    def test_inconsistent_source_loop_raises(self):
        g = CircuitGraph(
            n_nodes=2,
            edges=(Edge(0, 1, "source", 1.0), Edge(0, 1, "source", 2.0)),
        )
        with pytest.raises(ValueError, match="inconsistent"):
            reduce_sources(g)

    def test_series_emf_passthrough(self):
        g = ring(3, emf_on_first=4.0)
        _, _, emf = reduce_sources(g)
        assert emf[0] == pytest.approx(4.0)
        assert emf[1] == emf[2] == 0.0

    def test_edge_list_round_trip(self):
        g = CircuitGraph(n_nodes=3, edges=(Edge(0, 1, "memristor", 0.5),
                                           Edge(1, 2, "source", -1.0)))
        back = CircuitGraph.from_edge_list(g.to_edge_list())
        assert back.edges == g.edges


class TestMemnetReduction:
    def test_single_edge_reduces_to_device_equation(self):
        v = 3.0
        g = CircuitGraph(n_nodes=2, edges=(Edge(0, 1), Edge(1, 0, "source", v)))
        omega = cycle_projector(g)
        s = source_vector(g, HP)
        assert s[0] == pytest.approx(v / HP.r_on)
        chi = HP.xi
        for w in (0.0, 0.21, 0.5, 0.99):
            got = memnet_rhs(np.array([w]), s, omega, HP)[0]
            want = HP.alpha * w - s[0] / (HP.beta * (1.0 + chi * w))
            assert abs(got - want) < 1e-12
            # and against the device law with I = V/R(w)
            i_dev = v / hp_resistance(w, HP)
            assert abs(got - hp_rhs(w, i_dev, HP)) < 1e-12

    def test_zero_source_zero_motion(self):
        g = ring(4)
        omega = cycle_projector(g)
        s = np.zeros(4)
        dw = memnet_rhs(np.full(4, 0.3), s, omega, HP)
        assert np.all(dw == 0.0)

    def test_chi_zero_is_linear(self):
        hp = HpParams(alpha=0.0, beta=2.0, r_on=5.0, r_off=5.0)
        g = ring(3, emf_on_first=1.0)
        omega = cycle_projector(g)
        s = source_vector(g, hp)
        for w0 in (0.1, 0.9):
            dw = memnet_rhs(np.full(3, w0), s, omega, hp)
            assert np.allclose(dw, -(omega @ s) / hp.beta, atol=1e-14)


class TestSimulateNetwork:
    def test_clamp_invariant(self):
        rng = np.random.default_rng(5)
        g = random_connected(rng, 12, p=0.3)
        edges = list(g.edges)
        edges[0] = Edge(edges[0].tail, edges[0].head, "memristor", 5.0)
        g = CircuitGraph(n_nodes=g.n_nodes, edges=tuple(edges))
        hp = HpParams(alpha=0.3, beta=0.1, r_on=1.0, r_off=50.0)
        run = simulate_network(g, None, hp, IntegratorSpec(method="euler", dt=0.01, t_end=20.0))
        for name in run.trace.names:
            assert run.trace[name].min() >= 0.0
            assert run.trace[name].max() <= 1.0

    def test_dc_drive_reaches_steady_state(self):
        rng = np.random.default_rng(1)
        g = random_connected(rng, 15, p=0.25)
        edges = list(g.edges)
        edges[0] = Edge(edges[0].tail, edges[0].head, "memristor", 20.0)
        g = CircuitGraph(n_nodes=g.n_nodes, edges=tuple(edges))
        hp = HpParams(alpha=0.0, beta=1.0, r_on=1.0, r_off=10.0)
        run = simulate_network(g, None, hp, IntegratorSpec(method="euler", dt=0.02, t_end=400.0))
        assert run.steady
        assert run.stop_reason == "steady"

    def test_zero_drive_volatility_growth(self):
        hp = HpParams(alpha=0.5, beta=1.0, r_on=1.0, r_off=100.0)
        g = ring(3)
        spec = IntegratorSpec(method="rk4", dt=1e-3, t_end=6.0)
        run = simulate_network(g, np.zeros(3), hp, spec, w0=0.1)
        t = run.trace.times
        grow = 0.1 * np.exp(hp.alpha * t)
        pre_clamp = grow < 1.0
        assert np.allclose(run.trace["w0"][pre_clamp], grow[pre_clamp], rtol=1e-8)
        assert run.trace["w0"][-1] == 1.0

    def test_symmetric_graph_symmetric_orbits(self):
        # two parallel memristive branches across the same source edge
        g = CircuitGraph(
            n_nodes=2,
            edges=(Edge(0, 1), Edge(0, 1), Edge(1, 0, "source", 1.5)),
        )
        run = simulate_network(g, None, HP, IntegratorSpec(method="rk4", dt=1e-3, t_end=1.0))
        assert np.max(np.abs(run.trace["w0"] - run.trace["w1"])) < 1e-12


class TestLinearize:
    def test_chi_zero_alpha_zero_is_zero(self):
        hp = HpParams(alpha=0.0, beta=1.0, r_on=2.0, r_off=2.0)
        g = ring(3, emf_on_first=1.0)
        omega = cycle_projector(g)
        s = source_vector(g, hp)
        a = linearize(s, omega, hp, np.full(3, 0.4))
        assert np.max(np.abs(a)) < 1e-9

    def test_single_loop_hand_derivative(self):
        v = 2.0
        g = CircuitGraph(n_nodes=2, edges=(Edge(0, 1), Edge(1, 0, "source", v)))
        omega = cycle_projector(g)
        hp = HpParams(alpha=0.2, beta=1.5, r_on=1.0, r_off=30.0)
        s = source_vector(g, hp)
        chi = hp.xi
        w = 0.37
        a = linearize(s, omega, hp, np.array([w]))
        want = hp.alpha + chi * s[0] / (hp.beta * (1.0 + chi * w) ** 2)
        assert a[0, 0] == pytest.approx(want, rel=1e-7)

    def test_richardson_consistency(self):
        rng = np.random.default_rng(2)
        g = random_connected(rng, 10, p=0.3)
        omega = cycle_projector(g)
        n_e = omega.shape[0]
        s = rng.normal(size=n_e)
        w = rng.uniform(0.2, 0.8, n_e)
        a1 = linearize(s, omega, HP, w, step=1e-5)
        a2 = linearize(s, omega, HP, w, step=5e-6)
        # both are second-order accurate: they agree far better than either
        # differs from a crude forward difference
        assert np.max(np.abs(a1 - a2)) < 1e-6 * max(1.0, np.max(np.abs(a1)))


class TestMeanRelaxation:
    def test_zero_matrix_constant(self):
        w0 = np.array([0.2, 0.4, 0.9])
        ts = np.linspace(0, 5, 7)
        out = mean_relaxation(np.zeros((3, 3)), w0, ts)
        assert np.allclose(out, w0.mean(), atol=1e-12)

    def test_diagonal_closed_form(self):
        lam = np.array([-1.0, -0.5, -2.0])
        w0 = np.array([0.3, 0.6, 0.9])
        ts = np.linspace(0, 3, 11)
        out = mean_relaxation(np.diag(lam), w0, ts)
        want = np.array([(np.exp(lam * t) * w0).mean() for t in ts])
        assert np.allclose(out, want, atol=1e-12)

    def test_against_expm_oracle(self):
        rng = np.random.default_rng(3)
        for n in (4, 12, 20):
            m = rng.normal(size=(n, n))
            a = -(m @ m.T) / n - 0.5 * np.eye(n)  # symmetric stable
            w0 = rng.uniform(0, 1, n)
            ts = np.linspace(0, 4, 9)
            ours = mean_relaxation(a, w0, ts)
            ref = np.array([np.trace(expm(a * t) @ np.diag(w0)) / n for t in ts])
            assert np.max(np.abs(ours - ref)) < 1e-8

    def test_series_fallback_matches_eig(self):
        rng = np.random.default_rng(4)
        a = -np.eye(5) + 0.1 * rng.normal(size=(5, 5))
        w0 = rng.uniform(0, 1, 5)
        ts = np.linspace(0, 2, 5)
        from memsim.network import _expm_taylor

        ref = np.array([np.trace(_expm_taylor(a * t) @ np.diag(w0)) / 5 for t in ts])
        assert np.allclose(mean_relaxation(a, w0, ts), ref, atol=1e-10)

    def test_negative_branch_filter(self):
        lam = np.array([-2.0, 3.0])
        w0 = np.array([1.0, 1.0])
        ts = np.array([0.0, 1.0])
        out = mean_relaxation(np.diag(lam), w0, ts, branch="negative")
        assert out[1] == pytest.approx(np.exp(-2.0) / 2)

    def test_log_uniform_spectrum_power_law(self):
        # Lorentzian-mixture oracle: log-uniform rates over 4 decades give a
        # logarithmic relaxation; compare the fitted exponent with the same
        # fit applied to the exp1 closed form.
        rng = np.random.default_rng(6)
        rates = np.exp(rng.uniform(np.log(1.0), np.log(1e4), 600))
        a = np.diag(-rates)
        w0 = np.full(rates.size, 0.5)
        ts = np.geomspace(1e-3, 1.0, 200)
        ours = mean_relaxation(a, w0, ts)
        lo, hi = 1.0, 1e4
        oracle = 0.5 * (exp1(lo * ts) - exp1(hi * ts)) / np.log(hi / lo)
        window = (ts > 3.0 / hi) & (ts < 0.3 / lo)
        fit = np.polyfit(np.log(ts[window]), np.log(ours[window]), 1)[0]
        fit_oracle = np.polyfit(np.log(ts[window]), np.log(oracle[window]), 1)[0]
        assert abs(fit - fit_oracle) < 0.2


class TestSocExperiment:
    def test_n100_network_exponents(self):
        rng = np.random.default_rng(1)
        g = random_network(rng, n_nodes=100, edge_prob=0.045, n_sources=5, source_volts=1.0)
        res = soc_experiment(g, HP)
        assert res.power_law
        assert abs(res.gamma + 1.0) <= 0.3
        assert abs(res.spectrum_slope + (1.0 - res.gamma)) <= 0.3

    def test_single_memristor_rejected(self):
        # one device driven so its linearization is a single negative rate:
        # no scaling regime, the R^2 gate rejects the power-law fit
        g = CircuitGraph(n_node_s := 2, edges=(Edge(0, 1), Edge(1, 0, "source", -2.0)))
        del n_node_s
        res = soc_experiment(g, HP)
        assert res.rates.size == 1
        assert not res.power_law
        assert res.fit_r2 < 0.9


class TestMaze:
    def test_corridor_shape(self):
        m = MazeSpec.from_text("S.E")
        g, _ = maze_to_circuit(m, HP, 1.0)
        kinds = [e.kind for e in g.edges]
        assert kinds.count("memristor") == 2
        assert kinds.count("source") == 1

    def test_open_room_edge_count(self):
        m = MazeSpec.from_text("S..\n...\n..E")
        g, _ = maze_to_circuit(m, HP, 1.0)
        assert len(g.memristive_edges) == 12  # 2 * 3 * 2 grid adjacencies

    def test_walls_remove_adjacencies(self):
        m = MazeSpec.from_text("S..\n.#.\n..E")
        g, _ = maze_to_circuit(m, HP, 1.0)
        assert len(g.memristive_edges) == 8  # the hole removes 4 adjacencies

    def test_unreachable_pockets_dropped(self):
        m = MazeSpec.from_text("S.#..\n..###\n....E")
        # the (0,3)/(0,4) pocket is walled off from the entrance side
        g, index = maze_to_circuit(m, HP, 1.0)
        assert (0, 3) not in index
        assert (0, 4) not in index
        assert (2, 0) in index

    def test_maze_validation(self):
        with pytest.raises(ValueError, match="no path"):
            MazeSpec.from_text("S#E")
        with pytest.raises(ValueError, match="one 'S'"):
            MazeSpec.from_text("..E")
        with pytest.raises(ValueError, match="invalid maze character"):
            MazeSpec.from_text("SxE")

    def test_corridor_solution(self):
        m = MazeSpec.from_text("S....E")
        result = solve_maze(m, HpParams(alpha=0.1, beta=1.0, r_on=1.0, r_off=100.0), 100.0)
        oracle = bfs_shortest_path(m)
        assert {tuple(sorted(p)) for p in result.path} == {
            tuple(sorted(p)) for p in zip(oracle, oracle[1:])}
        assert result.contrast == np.inf

    def test_hand_maze_with_unique_path(self):
        text = "S....\n####.\n....E"
        m = MazeSpec.from_text(text)
        result = solve_maze(m, HpParams(alpha=0.1, beta=1.0, r_on=1.0, r_off=100.0), 100.0)
        oracle = bfs_shortest_path(m)
        assert {tuple(sorted(p)) for p in result.path} == {
            tuple(sorted(p)) for p in zip(oracle, oracle[1:])}

    def test_two_routes_prefer_short(self):
        # ring with a 2-edge route and a 6-edge route between source terminals
        edges = [Edge(0, 1), Edge(1, 2)]                      # short route 0-1-2
        edges += [Edge(0, 3), Edge(3, 4), Edge(4, 5), Edge(5, 6), Edge(6, 7), Edge(7, 2)]
        edges.append(Edge(2, 0, "source", 50.0))
        g = CircuitGraph(n_nodes=8, edges=tuple(edges))
        hp = HpParams(alpha=0.1, beta=1.0, r_on=1.0, r_off=100.0)
        omega = cycle_projector(g)
        s = source_vector(g, hp)
        run = simulate_network(g, s, hp, IntegratorSpec(method="euler", dt=0.005, t_end=100.0))
        w_final = np.array([run.trace[f"w{i}"][-1] for i in range(8)])
        cur = np.abs(edge_currents(w_final, s, omega, hp))
        short = cur[:2].min()
        long = cur[2:].max()
        assert short > long
        assert short / max(long, 1e-300) > 1.0

    def test_random_mazes_match_bfs(self):
        rng = np.random.default_rng(42)
        hp = HpParams(alpha=0.1, beta=1.0, r_on=1.0, r_off=100.0)
        n_ok = 0
        trials = 0
        while n_ok < 8 and trials < 200:
            trials += 1
            h, w = int(rng.integers(4, 9)), int(rng.integers(4, 9))
            maze = _random_unique_maze(rng, h, w)
            if maze is None:
                continue
            result = solve_maze(maze, hp, 100.0)
            oracle = bfs_shortest_path(maze)
            oracle_adj = {tuple(sorted(p)) for p in zip(oracle, oracle[1:])}
            found_adj = {tuple(sorted(p)) for p in result.path}
            assert found_adj == oracle_adj
            assert result.contrast > 1.0
            n_ok += 1
        assert n_ok == 8


def _count_shortest_paths(m: MazeSpec):
    from collections import deque

    dist = {m.entrance: 0}
    q = deque([m.entrance])
    while q:
        v = q.popleft()
        for u in m.neighbors(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                q.append(u)
    if m.exit not in dist:
        return 0
    count = {m.entrance: 1}
    for v in sorted(dist, key=dist.get):
        if v == m.entrance:
            continue
        count[v] = sum(count.get(u, 0) for u in m.neighbors(v) if dist.get(u) == dist[v] - 1)
    return count[m.exit]


def _random_unique_maze(rng, h, w):
    grid = (rng.random((h, w)) < 0.72)
    grid[0, 0] = grid[h - 1, w - 1] = True
    rows = []
    for r in range(h):
        rows.append("".join(
            ("S" if (r, c) == (0, 0) else "E" if (r, c) == (h - 1, w - 1)
             else "." if grid[r, c] else "#")
            for c in range(w)))
    try:
        m = MazeSpec.from_text("\n".join(rows))
    except ValueError:
        return None
    if _count_shortest_paths(m) != 1:
        return None
    if len(bfs_shortest_path(m)) < max(h, w):
        return None
    return m
