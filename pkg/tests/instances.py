"""Shared fixtures data: the worked example and random instance generators."""
from fractions import Fraction

import numpy as np

EXAMPLE_P = np.array(
    [
        [0.9, 0.1, 0.0, 0.0],
        [0.0, 0.75, 0.25, 0.0],
        [0.25, 0.3, 0.1, 0.35],
        [0.2, 0.15, 0.0, 0.65],
    ]
)
EXAMPLE_PI = np.array([45, 36, 10, 10]) / 101
EXAMPLE_BETA = 10 / 101
EXAMPLE_X = np.array([2 / 9, 5 / 18, 1.0, 1.0])
EXAMPLE_LOOPS = np.array([7 / 9, 13 / 18, 0.0, 0.0])
EXAMPLE_PH = np.array(
    [
        [7 / 9, 2 / 9, 0, 0],
        [0, 13 / 18, 5 / 18, 0],
        [0, 0, 0, 1],
        [1, 0, 0, 0],
    ],
    dtype=float,
)
# any visiting order other than 4 -> 3 -> 2 -> 1; the second drawing's exact
# order is not recoverable from the text, so a different permutation stands in
REORDERED = (0, 2, 1, 3)


def exact_cycle_tree_weights(x):
    """t_k = product of entering weights except x_k, in exact arithmetic."""
    xs = [Fraction(v) for v in x]
    out = []
    for k in range(len(xs)):
        t = Fraction(1)
        for j, v in enumerate(xs):
            if j != k:
                t *= v
        out.append(t)
    return out


def random_stochastic(rng, n, max_in=3, loop_prob=0.5):
    """Sparse random influence matrix: each agent listens to at most ``max_in`` others."""
    m = np.zeros((n, n))
    for i in range(n):
        others = [j for j in range(n) if j != i]
        k = int(rng.integers(0, min(max_in, n - 1) + 1))
        for j in rng.choice(others, size=k, replace=False) if k else []:
            m[i, j] = rng.uniform(0.1, 1.0)
        if k == 0 or rng.random() < loop_prob:
            m[i, i] = rng.uniform(0.1, 1.0)
    return m / m.sum(axis=1, keepdims=True)


def random_arcs(rng, n, density=0.5, loops=True):
    """Arbitrary (not necessarily stochastic) weighted digraph, weights in (0, 1]."""
    arcs = []
    for t in range(n):
        for h in range(n):
            if t == h and not loops:
                continue
            if rng.random() < density:
                arcs.append((t, h, 1.0 - rng.random()))
    return arcs


def permutation_cycle(n, shift=1):
    m = np.zeros((n, n))
    for i in range(n):
        m[i, (i + shift) % n] = 1.0
    return m


def crafted_periodic():
    """Hand-built matrices with periodic or multiple basic classes."""
    cases = [permutation_cycle(n) for n in range(2, 7)]
    # bipartite closed class {0,1,2,3}: even <-> odd
    bip = np.zeros((4, 4))
    bip[0, [1, 3]] = 0.5
    bip[2, [1, 3]] = [0.3, 0.7]
    bip[1, [0, 2]] = [0.6, 0.4]
    bip[3, [0, 2]] = 0.5
    cases.append(bip)
    # period-3 class with a transient agent listening to it
    m = np.zeros((4, 4))
    m[:3, :3] = permutation_cycle(3)
    m[3] = [0.2, 0.3, 0.0, 0.5]
    cases.append(m)
    # two closed classes: aperiodic pair and a 2-cycle
    m = np.zeros((5, 5))
    m[0, [0, 1]] = 0.5
    m[1, [0, 1]] = [0.2, 0.8]
    m[2, 3] = m[3, 2] = 1.0
    m[4] = [0.1, 0.0, 0.4, 0.0, 0.5]
    cases.append(m)
    # period 4 (a power of two: squaring alone settles)
    cases.append(permutation_cycle(4))
    return cases


def random_block_cyclic(rng, period, transient=1):
    """Closed class cycling through ``period`` blocks, plus transient listeners."""
    sizes = rng.integers(1, 3, size=period)
    starts = np.concatenate([[0], np.cumsum(sizes)])
    core = int(starts[-1])
    n = core + transient
    m = np.zeros((n, n))
    for b in range(period):
        nxt = (b + 1) % period
        targets = range(starts[nxt], starts[nxt + 1])
        for i in range(starts[b], starts[b + 1]):
            for j in targets:
                m[i, j] = rng.uniform(0.1, 1.0)
    for i in range(core, n):
        m[i, rng.integers(0, n)] = rng.uniform(0.1, 1.0)
        m[i, i] += rng.uniform(0.1, 1.0)
    return m / m.sum(axis=1, keepdims=True)
