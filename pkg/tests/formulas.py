"""Random Boolean combinations of linear constraints for property tests."""
from tropvol.gammageo.formula import RELS, Constraint, atom, neg


def random_constraint(rng, n, lo=-3, hi=3):
    while True:
        c = [rng.randint(lo, hi) for _ in range(n)]
        if any(c):
            return Constraint(tuple(c), rng.choice(RELS), rng.randint(lo, hi))


def random_formula(rng, n, k):
    """A random and/or/not tree over ``k`` atoms in dimension ``n``."""
    items = [atom(random_constraint(rng, n)) for _ in range(k)]
    while len(items) > 1:
        a = items.pop(rng.randrange(len(items)))
        b = items.pop(rng.randrange(len(items)))
        if rng.random() < 0.2:
            a = neg(a)
        items.append(a & b if rng.random() < 0.5 else a | b)
    f = items[0]
    return neg(f) if rng.random() < 0.2 else f
