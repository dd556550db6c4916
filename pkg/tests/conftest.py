import random
from math import gcd

import pytest

from clusterkit.seed import Seed, initial_seed


def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        outcome = "PASS" if report.passed else "FAIL"
        print(f"\nACCEPTANCE {outcome}: {name}", flush=True)


@pytest.fixture
def a2c() -> Seed:
    """A2 with two coefficient rows: the running example seed."""
    return initial_seed(
        ["x1", "x2"], ["x3", "x4"], [[0, 1], [-1, 0], [0, -1], [0, 0]]
    )


@pytest.fixture
def a3() -> Seed:
    return initial_seed(
        ["x1", "x2", "x3"], [], [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
    )


@pytest.fixture
def freezing_example() -> Seed:
    """Rank-3 seed with symmetrizer (1,2,3)."""
    return initial_seed(
        ["x1", "x2", "x3"], [], [[0, -2, 6], [1, 0, -3], [-2, 2, 0]]
    )


@pytest.fixture
def seven_vertex() -> Seed:
    """Seven-vertex ice quiver with frozen x3, x4 and three indecomposable
    components on {x1,x2}, {x5}, {x6,x7}."""
    return seven_vertex_seed()


def seven_vertex_seed() -> Seed:
    return initial_seed(
        ["x1", "x2", "x5", "x6", "x7"],
        ["x3", "x4"],
        [
            [0, 1, 0, 0, 0],
            [-2, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, -1],
            [0, 0, 0, 1, 0],
            [3, -2, -1, 1, 0],
            [1, 0, 1, 0, 0],
        ],
    )


def random_symmetrizable_seed(
    rng: random.Random,
    max_ex: int = 4,
    max_total: int = 6,
    connected: bool = False,
) -> Seed:
    """Random seed with a skew-symmetrizable principal part by construction.

    Entries stay in [-3, 3].  Principal 2x2 pairs are sampled with
    |b_ij * b_ji| <= 4, keeping depth-bounded mutation walks affordable
    while still mixing skew-symmetric and genuinely valued pairs.  With
    connected=True the principal part is a single component and every
    frozen variable is attached somewhere.
    """
    n = rng.randint(1, max_ex)
    extra = rng.randint(0, max_total - n)
    d = [rng.choice([1, 1, 1, 2, 2, 3]) for _ in range(n)]

    def pair_entries(i, j):
        g = gcd(d[i], d[j])
        qi, qj = d[i] // g, d[j] // g
        if qi * qj > 4:
            return None  # a (2,3)-valued pair mutates wildly; skip the edge
        u = 2 if qi == qj == 1 and rng.random() < 0.2 else 1
        if rng.random() < 0.5:
            u = -u
        return u * qj, -u * qi

    entries = [[0] * n for _ in range(n + extra)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.45:
                continue
            pair = pair_entries(i, j)
            if pair:
                entries[i][j], entries[j][i] = pair
    if connected:
        order = list(range(n))
        rng.shuffle(order)
        for a, b in zip(order, order[1:]):
            if entries[a][b] == 0:
                pair = pair_entries(a, b) or (
                    d[b] // gcd(d[a], d[b]),
                    -(d[a] // gcd(d[a], d[b])),
                )
                entries[a][b], entries[b][a] = pair
    frozen_weights = [0] * 8 + [1, 1, -1, -1] + [2, -2, 3, -3]
    for r in range(n, n + extra):
        while True:
            row = [rng.choice(frozen_weights) for _ in range(n)]
            if not connected or any(row):
                entries[r] = row
                break
    names = [f"x{i + 1}" for i in range(n + extra)]
    return initial_seed(names[:n], names[n:], entries)


# finite or affine mutation types up to rank 4, realized as valued edge
# lists (i, j, v1, v2); matrix entries never leave [-3, 3] and bounded
# mutation walks stay affordable
_TAME_SHAPES = {
    1: [[]],
    2: [
        [(0, 1, 1, 1)],  # A2
        [(0, 1, 2, 1)],  # B2
        [(0, 1, 3, 1)],  # G2
        [(0, 1, 2, 2)],  # affine Kronecker
    ],
    3: [
        [(0, 1, 1, 1), (1, 2, 1, 1)],  # A3
        [(0, 1, 1, 1), (1, 2, 2, 1)],  # B3
        [(0, 1, 1, 1), (1, 2, 1, 2)],  # C3
        [(0, 1, 1, 1), (1, 2, 1, 1), (2, 0, 1, 1)],  # oriented 3-cycle (A3)
    ],
    4: [
        [(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 1)],  # A4
        [(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 2, 1)],  # B4
        [(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 2)],  # C4
        [(0, 1, 1, 1), (1, 2, 2, 1), (2, 3, 1, 1)],  # F4
        [(0, 1, 1, 1), (0, 2, 1, 1), (0, 3, 1, 1)],  # D4
    ],
}


def random_tame_seed(
    rng: random.Random,
    max_ex: int = 4,
    max_total: int = 6,
) -> Seed:
    """Random seed of a bounded mutation type, for exhaustive walk suites.

    Draws a finite-type (or rank-2 affine) valued shape, randomizes edge
    orientations and vertex labels, sometimes takes a disjoint union of
    two shapes, and adds random frozen rows with entries in [-3, 3].
    """
    n = rng.randint(1, max_ex)
    if n >= 2 and rng.random() < 0.3:
        n1 = rng.randint(1, n - 1)
        blocks = [(n1, rng.choice(_TAME_SHAPES[n1])), (n - n1, rng.choice(_TAME_SHAPES[n - n1]))]
    else:
        blocks = [(n, rng.choice(_TAME_SHAPES[n]))]
    entries = [[0] * n for _ in range(n)]
    offset = 0
    for size, shape in blocks:
        for i, j, v1, v2 in shape:
            if rng.random() < 0.5:
                i, j, v1, v2 = j, i, v2, v1
            entries[offset + i][offset + j] = v1
            entries[offset + j][offset + i] = -v2
        offset += size
    perm = list(range(n))
    rng.shuffle(perm)
    entries = [[entries[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    extra = rng.randint(0, max_total - n)
    frozen_weights = [0] * 6 + [1, 1, -1, -1] + [2, -2, 3, -3]
    for _ in range(extra):
        entries.append([rng.choice(frozen_weights) for _ in range(n)])
    names = [f"x{i + 1}" for i in range(n + extra)]
    return initial_seed(names[:n], names[n:], entries)
