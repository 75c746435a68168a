import random

from equilot.model import Instance


def random_composition(rng: random.Random, total: int, parts: int) -> tuple:
    """Uniform composition of `total` into `parts` nonnegative integers."""
    if parts == 0:
        assert total == 0
        return ()
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    cuts = [0] + cuts + [total]
    return tuple(cuts[i + 1] - cuts[i] for i in range(parts))


def random_instance(rng: random.Random, n_max=3, m_max=6, v_max=6) -> Instance:
    n = rng.randint(1, n_max)
    m = rng.randint(1, m_max)
    return Instance(
        tuple(tuple(rng.randint(0, v_max) for _ in range(m)) for _ in range(n))
    )


def random_normalised_instance(rng: random.Random, n, m, v_max=6) -> Instance:
    row0 = tuple(rng.randint(0, v_max) for _ in range(m))
    total = sum(row0)
    rows = [row0] + [random_composition(rng, total, m) for _ in range(n - 1)]
    return Instance(tuple(rows))
