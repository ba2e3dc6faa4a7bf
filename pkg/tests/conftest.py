"""Shared fixtures and corpus builders."""

from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from localconj import (
    IntMatrix,
    NumberField,
    build_operator,
    charpoly,
    generate_pair,
    parse_poly,
    random_unimodular,
)
from localconj.gen import conjugate_exact

QUADRATIC_FIELDS = ("t^2-t-1", "t^2+3", "t^2-2", "t^2+2")
BRIDGE_FIELDS = ("t^2-t-1", "t^2+3", "t^3-t-1", "t^3-4t-1")


def M(*rows) -> IntMatrix:
    return IntMatrix(rows)


def P(text: str):
    return parse_poly(text)


@pytest.fixture(scope="session")
def field_t2p3() -> NumberField:
    return NumberField(parse_poly("t^2+3"))


# the classic pair: companion of t^2+3 versus multiplication by beta on the
# non-invertible lattice 2Z + (1+beta)Z; conjugate at every odd prime, not
# conjugate at 2
CLASSIC_A = IntMatrix([[0, 1], [-3, 0]])
CLASSIC_B = IntMatrix([[-1, 2], [-2, 1]])


def scalar_shifted(lam: int, p: int, k: int, g_text: str) -> IntMatrix:
    """lam * I + p^k * companion(g): congruent to a scalar mod p^k, which
    forces mu >= k for pairs of such matrices."""
    g = parse_poly(g_text)
    c = g.companion()
    n = c.rows
    return lam * IntMatrix.identity(n) + (p**k) * c


def pair_with_conjugate(a: IntMatrix, seed: int, singular: int | None = None):
    """a together with an integral conjugate; singular=p conjugates by a
    matrix of determinant +-p or +-p^2 when one exists."""
    rng = random.Random(seed)
    n = a.rows
    if singular is None:
        m = random_unimodular(n, rng)
        b = conjugate_exact(a, m)
        assert b is not None
        return a, b, m
    targets = {singular, singular * singular}
    for _ in range(20000):
        m = IntMatrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        if abs(m.det()) not in targets:
            continue
        b = conjugate_exact(a, m)
        if b is not None:
            return a, b, m
    m = singular * random_unimodular(n, rng)
    b = conjugate_exact(a, m)
    assert b is not None
    return a, b, m


def quadratic_corpus(max_mu_budget: int = 600_000) -> list[tuple[IntMatrix, IntMatrix]]:
    """Fixed 40-pair corpus of 2x2 same-characteristic-polynomial pairs whose
    brute-force budget p^(4(mu+1)) stays affordable for p in {2, 3}."""
    pairs: list[tuple[IntMatrix, IntMatrix]] = []

    def admit(a, b) -> bool:
        if charpoly(a) != charpoly(b):
            return False
        op = build_operator(a, b)
        for p in (2, 3):
            if p ** (4 * (op.mu(p) + 1)) > max_mu_budget:
                return False
        return True

    for f_text in QUADRATIC_FIELDS:
        f = parse_poly(f_text)
        for strategy in ("unimodular", "singular:2", "singular:3"):
            for seed in range(2):
                pair = generate_pair(f, strategy, seed)
                if admit(pair.a, pair.b):
                    pairs.append((pair.a, pair.b))
    # scalar-congruent matrices exercise mu > 0 at both primes
    shifted_shapes = [
        (1, 2, 1, "t^2-t-1"),
        (2, 3, 1, "t^2-t-1"),
        (1, 2, 2, "t^2-t-1"),
        (1, 3, 1, "t^2+1"),
        (0, 2, 1, "t^2+1"),
        (1, 2, 1, "t^2+3"),
    ]
    for shape in shifted_shapes:
        a = scalar_shifted(*shape)
        for seed in (11, 12):
            for singular in (None, shape[1]):
                _, b, _ = pair_with_conjugate(a, seed, singular)
                if admit(a, b):
                    pairs.append((a, b))
    pairs = pairs[:40]
    assert len(pairs) == 40
    return pairs


def bridge_corpus() -> list[tuple[IntMatrix, IntMatrix, str, str]]:
    """Fixed 60-pair corpus across the four bridge fields and the
    unimodular/singular generation strategies."""
    entries = []
    for f_text in BRIDGE_FIELDS:
        f = parse_poly(f_text)
        strategies = [
            ("unimodular", range(7)),
            ("singular:2", range(4)),
            ("singular:3", range(4)),
        ]
        for strategy, seeds in strategies:
            for seed in seeds:
                pair = generate_pair(f, strategy, seed)
                entries.append((pair.a, pair.b, f_text, strategy))
    entries = entries[:60]
    assert len(entries) == 60
    return entries


@pytest.fixture(scope="session")
def corpus40():
    return quadratic_corpus()


@pytest.fixture(scope="session")
def corpus60():
    return bridge_corpus()
