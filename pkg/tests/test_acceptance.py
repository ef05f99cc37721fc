"""Exit criteria for the package, one test per criterion.

Each test appends a PASS/FAIL line that is echoed in the pytest terminal
summary.  Run alone with ``pytest tests/test_acceptance.py`` or
``python tests/test_acceptance.py``.
"""
import contextlib
import itertools
import json
import sys

import numpy as np
import pytest

from degroot_cycles import (
    analyze,
    cycle_from_pi,
    cycle_from_tree_weights,
    cycle_to_matrix,
    digraph_from_matrix,
    kirchhoff,
    limit_powers,
    matrix_rank,
    max_out_forest_matrix,
    stationary_vector,
    tree_weight_vector,
    tree_weights_via_minors,
    validate_stochastic,
    verify_equivalence,
    WeightedDigraph,
)
from degroot_cycles.cli import main

from instances import (
    EXAMPLE_BETA,
    EXAMPLE_LOOPS,
    EXAMPLE_P,
    EXAMPLE_PI,
    EXAMPLE_X,
    REORDERED,
    crafted_periodic,
    random_arcs,
    random_block_cyclic,
    random_stochastic,
)

SEED = 20110520


def inf_norm(m):
    return float(np.abs(m).sum(axis=1).max())


@contextlib.contextmanager
def criterion(log, number, title):
    detail = {}
    try:
        yield detail
    except BaseException:
        log.append(f"[FAIL] {number}. {title} {detail.get('msg', '')}".rstrip())
        raise
    log.append(f"[PASS] {number}. {title} {detail.get('msg', '')}".rstrip())


@pytest.fixture(scope="module")
def random_suite():
    """100 random stochastic matrices with n <= 8, shared by criteria 6, 7 and 9."""
    rng = np.random.default_rng(SEED)
    return [
        validate_stochastic(random_stochastic(rng, int(rng.integers(1, 9))))
        for _ in range(100)
    ]


def test_c1_example_stationary(acceptance_log, tmp_path, capsys):
    with criterion(acceptance_log, 1, "Example-1 stationary vector, 3 methods, tol 1e-10") as d:
        path = tmp_path / "p.csv"
        path.write_text("".join(",".join(repr(float(x)) for x in r) + "\n" for r in EXAMPLE_P))
        errors = {}
        for method in ("linear", "trees", "power"):
            assert main(["stationary", str(path), "--method", method, "--json"]) == 0
            pi = np.array(json.loads(capsys.readouterr().out)["pi"])
            errors[method] = float(np.abs(pi - EXAMPLE_PI).max())
        d["msg"] = "max err " + ", ".join(f"{m}={e:.1e}" for m, e in errors.items())
        assert max(errors.values()) <= 1e-10


def test_c2_example_synthesis(acceptance_log):
    with criterion(acceptance_log, 2, "Example-1 synthesis with beta=10/101, tol 1e-12") as d:
        spec = cycle_from_pi(EXAMPLE_PI, EXAMPLE_BETA)
        ex = float(np.abs(spec.entering_weight - EXAMPLE_X).max())
        el = float(np.abs(spec.loop_weight - EXAMPLE_LOOPS).max())
        d["msg"] = f"entering err {ex:.1e}, loop err {el:.1e}"
        assert ex <= 1e-12 and el <= 1e-12


def test_c3_equivalence(acceptance_log):
    with criterion(acceptance_log, 3, "P_H limit equals P limit; both cycle orders equivalent") as d:
        P = validate_stochastic(EXAMPLE_P)
        PH = cycle_to_matrix(cycle_from_pi(EXAMPLE_PI, EXAMPLE_BETA))
        PH2 = cycle_to_matrix(cycle_from_pi(EXAMPLE_PI, EXAMPLE_BETA, REORDERED))
        la, lh = limit_powers(P), limit_powers(PH)
        assert la.converged and lh.converged
        gap = inf_norm(lh.limit_candidate - la.limit_candidate)
        verdicts = [verify_equivalence(P, PH).verdict, verify_equivalence(P, PH2).verdict]
        # every visiting order, not only the two drawn ones
        every = all(
            verify_equivalence(P, cycle_to_matrix(cycle_from_pi(EXAMPLE_PI, EXAMPLE_BETA, o))).equivalent
            for o in itertools.permutations(range(4))
        )
        d["msg"] = f"||P_H^inf - P^inf|| = {gap:.1e}, verdicts {verdicts}, all 24 orders {every}"
        assert gap <= 1e-8
        assert verdicts == ["equivalent", "equivalent"] and every


def test_c4_tree_weight_round_trip(acceptance_log):
    with criterion(acceptance_log, 4, "Tree-weight cycle round trip, 200 random q, n in 2..7, rel 1e-9") as d:
        rng = np.random.default_rng(SEED + 4)
        worst = 0.0
        for _ in range(200):
            n = int(rng.integers(2, 8))
            q = 10 ** rng.uniform(-3, 3, size=n)
            spec = cycle_from_tree_weights(q, tuple(rng.permutation(n)))
            t = tree_weight_vector(spec.digraph()).per_root
            worst = max(worst, float(np.max(np.abs(t - q) / q)))
        d["msg"] = f"worst rel err {worst:.1e}"
        assert worst <= 1e-9


def test_c5_matrix_tree(acceptance_log):
    with criterion(acceptance_log, 5, "Minors vs enumeration, 100 random digraphs n<=6, rel 1e-9") as d:
        rng = np.random.default_rng(SEED + 5)
        worst, with_trees = 0.0, 0
        for _ in range(100):
            n = int(rng.integers(1, 7))
            G = WeightedDigraph(n, tuple(random_arcs(rng, n, density=rng.uniform(0.2, 0.8))))
            enum = tree_weight_vector(G).per_root
            minor = tree_weights_via_minors(G).per_root
            # relative to the largest t_j of the digraph; unit scale when no tree exists
            scale = enum.max() if enum.max() > 0 else 1.0
            with_trees += enum.max() > 0
            worst = max(worst, float(np.abs(minor - enum).max() / scale))
        d["msg"] = f"worst rel err {worst:.1e} ({with_trees}/100 with spanning trees)"
        assert worst <= 1e-9


def test_c6_rank_identities(acceptance_log, random_suite):
    with criterion(acceptance_log, 6, "rank L = n - nu, rank L = rank L^2, rank P^inf = nu") as d:
        failures, converged, nus = [], 0, set()
        for P in random_suite:
            n = P.n
            nu = analyze(digraph_from_matrix(P)).nu
            nus.add(nu)
            L = np.eye(n) - P.entries
            rL = matrix_rank(L)
            if rL != n - nu or matrix_rank(L @ L) != rL:
                failures.append(P)
            res = limit_powers(P)
            if res.converged:
                converged += 1
                if matrix_rank(res.limit_candidate, 1e-8) != nu:
                    failures.append(P)
        d["msg"] = f"{len(failures)} failures; {converged} converged; nu values {sorted(nus)}"
        assert not failures


def test_c7_convergence_criterion(acceptance_log, random_suite):
    with criterion(acceptance_log, 7, "graph criterion agrees with power limit, 100%") as d:
        rng = np.random.default_rng(SEED + 7)
        extra = crafted_periodic() + [
            random_block_cyclic(rng, int(rng.integers(2, 5)), int(rng.integers(0, 3)))
            for _ in range(20)
        ]
        suite = list(random_suite) + [validate_stochastic(m) for m in extra]
        exist_bad = regular_bad = periodic = 0
        for P in suite:
            rep = analyze(digraph_from_matrix(P))
            res = limit_powers(P)
            periodic += not rep.limit_exists
            exist_bad += rep.limit_exists != res.converged
            rank_one = res.converged and bool(
                np.abs(res.limit_candidate - res.limit_candidate[0]).max() <= 1e-8
            )
            regular_bad += rep.regular != rank_one
        d["msg"] = (
            f"{len(suite)} cases ({periodic} without limit): "
            f"{exist_bad} limit mismatches, {regular_bad} regularity mismatches"
        )
        assert exist_bad == 0 and regular_bad == 0


def test_c8_beta_order_invariance(acceptance_log):
    with criterion(acceptance_log, 8, "beta/order invariance, 50 pi x 5 beta x 3 orders") as d:
        rng = np.random.default_rng(SEED + 8)
        worst_pi = worst_prod = 0.0
        runs = 0
        for _ in range(50):
            n = int(rng.integers(2, 9))
            pi = rng.dirichlet(np.ones(n)) * 0.98 + 0.02 / n
            for beta in pi.min() * rng.uniform(0.01, 1.0, size=5):
                for _ in range(3):
                    spec = cycle_from_pi(pi, beta, tuple(rng.permutation(n)))
                    got = stationary_vector(cycle_to_matrix(spec))
                    prod = spec.entering_weight * pi
                    worst_pi = max(worst_pi, float(np.abs(got - pi).max()))
                    worst_prod = max(worst_prod, float(np.ptp(prod)))
                    runs += 1
        d["msg"] = f"{runs} cycles: stationary err {worst_pi:.1e}, x*pi spread {worst_prod:.1e}"
        assert worst_pi <= 1e-10 and worst_prod <= 1e-12


def test_c9_eigenprojection(acceptance_log, random_suite):
    with criterion(acceptance_log, 9, "forest matrix is the 0-eigenprojection of L, tol 1e-9") as d:
        worst, cases = 0.0, 0
        for P in random_suite:
            if not limit_powers(P).converged:
                continue
            cases += 1
            G = digraph_from_matrix(P)
            J, L = max_out_forest_matrix(G).entries, kirchhoff(G)
            worst = max(worst, inf_norm(J @ J - J), inf_norm(J @ L), inf_norm(L @ J))
        d["msg"] = f"{cases} converged cases, worst norm {worst:.1e}"
        assert cases > 0 and worst <= 1e-9


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
