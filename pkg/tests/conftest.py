"""Shared fixtures: stock partial functions, the two smallest function
algebras, and deterministically collected instance batteries."""

from __future__ import annotations

import pytest

from mengerkit import (
    CapacityError,
    GeneratorConfig,
    PartialFunction,
    abstract_from_concrete,
    close_under_operations,
    generate_concrete,
)


@pytest.fixture(scope="session")
def proj1():
    return PartialFunction.projection(2, 2, 0)  # table [0, 0, 1, 1]


@pytest.fixture(scope="session")
def proj2():
    return PartialFunction.projection(2, 2, 1)  # table [0, 1, 0, 1]


@pytest.fixture(scope="session")
def const0():
    return PartialFunction.constant(2, 2, 0)


@pytest.fixture(scope="session")
def empty2():
    return PartialFunction.empty(2, 2)


@pytest.fixture(scope="session")
def corner():
    # defined only at (0, 0), with value 1
    return PartialFunction(2, 2, (1, -1, -1, -1))


@pytest.fixture(scope="session")
def one_elem(proj1):
    """One-element menger algebra: the closure of the first projection."""
    return abstract_from_concrete(close_under_operations([proj1], "menger"))


@pytest.fixture(scope="session")
def zero_proj_concrete(empty2, proj1):
    """Two-member function algebra: the empty function plus a projection."""
    return close_under_operations([empty2, proj1], "menger")


@pytest.fixture(scope="session")
def zero_proj(zero_proj_concrete):
    """Its abstraction: carrier {0: empty, 1: projection}, 0 is the zero."""
    return abstract_from_concrete(zero_proj_concrete)


@pytest.fixture(scope="session")
def zero_proj_plain_concrete(empty2, proj1):
    return close_under_operations([empty2, proj1], "plain")


@pytest.fixture(scope="session")
def zero_proj_plain(zero_proj_plain_concrete):
    return abstract_from_concrete(zero_proj_plain_concrete)


def collect_instances(flavor: str, want: int, closure_cap: int = 12,
                      start_seed: int = 0):
    """First ``want`` generated concrete algebras within the closure cap,
    scanning seeds in order.  Fully deterministic."""
    out = []
    seed = start_seed
    while len(out) < want:
        base = 2 + (seed % 2)
        gens = 1 + (seed % 2 if flavor == "menger" else seed % 3)
        cfg = GeneratorConfig(arity=2, base_size=base, generator_count=gens,
                              seed=seed, flavor=flavor, closure_cap=closure_cap)
        seed += 1
        try:
            out.append(generate_concrete(cfg))
        except CapacityError:
            continue
    return out


@pytest.fixture(scope="session")
def menger_battery():
    return collect_instances("menger", 200)


@pytest.fixture(scope="session")
def plain_battery():
    return collect_instances("plain", 100)


@pytest.fixture(scope="session")
def small_battery():
    """50 instances with at most 4 elements, mixed flavors."""
    menger = [c for c in collect_instances("menger", 120) if len(c) <= 4][:25]
    plain = [c for c in collect_instances("plain", 80) if len(c) <= 4][:25]
    assert len(menger) == 25 and len(plain) == 25
    return menger + plain
