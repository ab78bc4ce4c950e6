import random
from fractions import Fraction

from regionbound import archspec, engine, oracle


def random_mlp_spec(rng: random.Random, max_n0=16, max_width=32, max_depth=6):
    n0 = rng.randint(1, max_n0)
    depth = rng.randint(1, max_depth)
    widths = [rng.randint(1, max_width) for _ in range(depth)]
    blocks = tuple(archspec.Dense(w, True) for w in widths)
    return archspec.NetworkSpec(n0, blocks + (archspec.Dense(1, False),))


def mlp_bound(n0, widths, variant="ours"):
    blocks = tuple(archspec.Dense(w, True) for w in widths)
    spec = archspec.NetworkSpec(n0, blocks + (archspec.Dense(1, False),))
    return engine.evaluate(archspec.resolve(spec), variant, n0).bound


def random_concrete_net(rng: random.Random, n0=1, max_width=8, max_depth=3):
    depth = rng.randint(1, max_depth)
    widths = [rng.randint(1, max_width) for _ in range(depth)]
    layers = []
    d = n0
    for w in widths:
        weights = tuple(
            tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 5))
                  for _ in range(d))
            for _ in range(w))
        bias = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 5))
                     for _ in range(w))
        layers.append(oracle.Layer(weights, bias, True))
        d = w
    # linear readout
    weights = tuple((tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 5))
                           for _ in range(d)),))
    layers.append(oracle.Layer(weights, (Fraction(0),), False))
    return oracle.ConcreteNet(n0, tuple(layers))
