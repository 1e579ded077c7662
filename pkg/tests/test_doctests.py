"""Every docstring example in the package must run as written."""

import doctest

import pytest

import coxforge
from coxforge import (
    blowup_divisors,
    budget,
    cli,
    errors,
    jsonutil,
    linalg,
    multipoly,
    nagata_invariants,
    picard_lattice,
    root_system,
    section_spaces,
    verify,
)

MODULES = [
    coxforge, blowup_divisors, budget, cli, errors, jsonutil, linalg,
    multipoly, nagata_invariants, picard_lattice, root_system,
    section_spaces, verify,
]


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_doctests(module):
    failed, _ = doctest.testmod(module)
    assert failed == 0
