"""Shared fixtures: small alphabets and atom sets reused across the suite."""

import pytest

from krull_arith import Alphabet, GroupSpec, enumerate_atoms
from krull_arith.presets import build_preset


def cyclic_alphabet(n):
    spec = GroupSpec(0, (n,))
    return Alphabet(spec, [spec.element(torsion=(i,)) for i in range(n)])


def int_alphabet(*values):
    """Alphabet over Z from plain integers."""
    spec = GroupSpec(1)
    return Alphabet(spec, [spec.element(free=(v,)) for v in values])


@pytest.fixture(scope="session")
def cyclic3_atoms():
    return enumerate_atoms(cyclic_alphabet(3))


@pytest.fixture(scope="session")
def cyclic4_atoms():
    return enumerate_atoms(cyclic_alphabet(4))


@pytest.fixture(scope="session")
def cyclic5_atoms():
    return enumerate_atoms(cyclic_alphabet(5))


@pytest.fixture(scope="session")
def five_point_atoms():
    return enumerate_atoms(build_preset("five_point").alphabet)


@pytest.fixture(scope="session")
def thm74_21():
    preset = build_preset("thm74", 2, 1)
    return preset, enumerate_atoms(preset.alphabet)
