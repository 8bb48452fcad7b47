"""Instance generators: the exhaustive functional grid and seeded random samples."""

import random
from collections.abc import Iterator
from fractions import Fraction
from itertools import product

from cplanes.core_seq import (
    ConvergentSeq,
    L1Functional,
    L1Vector,
    normalize,
    pair,
    sup_norm,
)
from cplanes.ordinal_quotient import COmegaNFunc


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Non-negative integer vectors of length ``parts`` summing to ``total``, last > 0."""
    if parts == 1:
        if total > 0:
            yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def exhaustive_functionals(max_den: int, max_support: int) -> list[L1Functional]:
    """Every norm-one f with support <= max_support and denominators <= max_den.

    Coefficients are k/d for a common d <= max_den. The first nonzero
    coefficient is positive because f and -f have the same kernel.
    Duplicates across denominators are dropped; order is deterministic.
    """
    seen: set[tuple[Fraction, ...]] = set()
    functionals = []
    for den in range(1, max_den + 1):
        for length in range(1, max_support + 1):
            for numerators in _compositions(den, length):
                nonzero = [i for i, k in enumerate(numerators) if k]
                for signs in product((1, -1), repeat=len(nonzero) - 1):
                    values = [Fraction(k, den) for k in numerators]
                    for idx, s in zip(nonzero[1:], signs, strict=True):
                        values[idx] *= s
                    key = tuple(values)
                    if key in seen:
                        continue
                    seen.add(key)
                    functionals.append(L1Functional(L1Vector(key)))
    return functionals


def random_rational(rng: random.Random, max_den: int, bound: int = 1) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def random_l1_vector(rng: random.Random, max_support: int, max_den: int) -> L1Vector:
    length = rng.randint(0, max_support)
    return L1Vector(tuple(random_rational(rng, max_den) for _ in range(length)))


def random_functional(
    rng: random.Random, max_support: int, max_den: int
) -> L1Functional:
    """Random norm-one functional with support at most max_support."""
    while True:
        length = rng.randint(1, max_support)
        vector = L1Vector(
            tuple(Fraction(rng.randint(-max_den, max_den)) for _ in range(length))
        )
        if not vector.is_zero():
            return normalize(vector)


def random_sequence(
    rng: random.Random, max_prefix: int, max_den: int, bound: int = 2
) -> ConvergentSeq:
    length = rng.randint(0, max_prefix)
    return ConvergentSeq(
        tuple(random_rational(rng, max_den, bound) for _ in range(length)),
        random_rational(rng, max_den, bound),
    )


def random_feasible_z(
    rng: random.Random, f: L1Functional, max_prefix: int, max_den: int
) -> ConvergentSeq:
    """Random z with f(z) = 1."""
    while True:
        z = random_sequence(rng, max_prefix, max_den)
        value = pair(f, z)
        if value != 0:
            return z.scaled(1 / value)


def pivot_sequence(f: L1Functional) -> ConvergentSeq:
    """A sequence w with f(w) = 1 supported where |f_j| is largest."""
    j = max(range(1, f.support + 1), key=lambda k: abs(f.coeff(k)))
    if j == 1:
        return ConvergentSeq((Fraction(0),) * (f.support - 1), 1 / f.coeff(1))
    return ConvergentSeq((Fraction(0),) * (j - 2) + (1 / f.coeff(j),), Fraction(0))


def random_ball_member(
    rng: random.Random, f: L1Functional, max_prefix: int, max_den: int
) -> ConvergentSeq:
    """Random element of W_f with sup norm at most 1."""
    y = random_sequence(rng, max_prefix, max_den)
    x = y - pivot_sequence(f).scaled(pair(f, y))
    norm = sup_norm(x)
    return x.scaled(1 / norm) if norm > 1 else x


def random_comega_func(
    rng: random.Random, n: int, max_prefix: int, max_den: int
) -> COmegaNFunc:
    blocks = [random_sequence(rng, max_prefix, max_den) for _ in range(n)]
    return COmegaNFunc.from_blocks(blocks, random_rational(rng, max_den, 2))


def sample_sequences(count: int, max_prefix: int, seed: int = 0) -> list[ConvergentSeq]:
    """Deterministic sample of eventually constant sequences."""
    rng = random.Random(seed)
    return [random_sequence(rng, max_prefix, 6) for _ in range(count)]
