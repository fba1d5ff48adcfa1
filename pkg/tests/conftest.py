import random

import pytest

from fineselmer.lambda_core import DistinguishedPoly, cyclotomic_phi
from fineselmer.modules import ElementaryModule, TorsionPart

P3_POOL = [
    DistinguishedPoly(3, (0, 1)),
    DistinguishedPoly(3, (3, 1)),
    cyclotomic_phi(1, 3),
    DistinguishedPoly(3, (3, 0, 1)),
    DistinguishedPoly(3, (3, 0, 0, 1)),
]


def random_torsion_module(rng: random.Random, pool=P3_POOL, p=3, max_exp=3, max_mu=2, max_parts=3):
    mus = tuple(rng.randint(1, max_exp) for _ in range(rng.randint(0, max_mu)))
    parts = tuple(TorsionPart(rng.choice(pool), rng.randint(1, max_exp)) for _ in range(rng.randint(0, max_parts)))
    return ElementaryModule(p, 1, 0, mus, parts)


def perturb(rng: random.Random, M: ElementaryModule, pool=P3_POOL, max_exp=3) -> ElementaryModule:
    """A module sharing most summands with M, so that equal parts occur often."""
    mus = list(M.mu_exponents)
    parts = list(M.torsion_parts)
    move = rng.randrange(5)
    if move == 0 and mus:
        mus[rng.randrange(len(mus))] = rng.randint(1, max_exp)
    elif move == 1 and parts:
        i = rng.randrange(len(parts))
        parts[i] = TorsionPart(parts[i].poly, rng.randint(1, max_exp))
    elif move == 2:
        parts.append(TorsionPart(rng.choice(pool), rng.randint(1, max_exp)))
    elif move == 3:
        mus.append(rng.randint(1, max_exp))
    return ElementaryModule(M.p, M.f, 0, tuple(mus), tuple(parts))


def random_pair(rng: random.Random):
    U = random_torsion_module(rng)
    V = U if rng.random() < 0.15 else (perturb(rng, U) if rng.random() < 0.6 else random_torsion_module(rng))
    return U, V


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
