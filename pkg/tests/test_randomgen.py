"""Seeded generators: random surjections are genuine coalgebra maps, random
subquotients satisfy the axioms, sequences validate."""

import random

from contramod.coalgebra import (
    check_coalgebra, check_morphism, divided_power_dual, grouplike, matrix_coalgebra,
)
from contramod.comodule import check_comodule
from contramod.contramodule import check_contramodule
from contramod.fields import GF2, GF3, QQ
from contramod.randomgen import (
    random_comodule, random_comodule_ses, random_contra_ses, random_contramodule,
    random_surjection, socle_filtration_sequences,
)

FIELDS = [QQ, GF2, GF3]


def source_coalgebras(field):
    return [
        grouplike(field, 3),
        divided_power_dual(field, 3),
        divided_power_dual(field, 4),
        matrix_coalgebra(field, 2),
    ]


def test_random_surjections_are_valid():
    rng = random.Random(101)
    for field in FIELDS:
        for c in source_coalgebras(field):
            for _ in range(5):
                rho = random_surjection(rng, c)
                assert check_coalgebra(rho.target).ok
                assert check_morphism(rho).ok
                assert 1 <= rho.target.dim <= c.dim


def test_random_modules_pass_axioms():
    rng = random.Random(55)
    for field in FIELDS:
        c = divided_power_dual(field, 3)
        for _ in range(6):
            assert check_comodule(random_comodule(rng, c)).ok
            assert check_contramodule(random_contramodule(rng, c)).ok


def test_random_ses_validates():
    rng = random.Random(31)
    for field in FIELDS:
        c = divided_power_dual(field, 2)
        ses = random_contra_ses(rng, c)
        assert ses is not None
        assert ses.validate().ok
        quad = random_comodule_ses(rng, c)
        assert quad is not None
        s, mid, q, incl, proj = quad
        assert s.dim + q.dim == mid.dim


def test_socle_filtration_sequences():
    c = divided_power_dual(GF2, 3)
    seqs = socle_filtration_sequences(c)
    assert seqs
    for s, mid, q, incl, proj in seqs:
        assert s.dim + q.dim == mid.dim
        assert check_comodule(s).ok and check_comodule(q).ok
