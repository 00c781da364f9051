import random

import pytest

from specmom.hecke import HeckeSystem
from specmom.maass_data import Dataset, MaassForm

PRIMES_64 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61]


def make_form(tj: float, ap: dict[int, float], nu1sq: float | None = 1.0) -> MaassForm:
    return MaassForm(tj=tj, nu1sq=nu1sq, hecke=HeckeSystem(prime_values=dict(ap)))


def make_dataset(forms, window=None) -> Dataset:
    forms = sorted(forms, key=lambda f: f.tj)
    return Dataset(forms=list(forms), completeness_window=window, provenance="test")


def random_system(seed: int, bound: float = 2.0, prime_limit: int = 10**4) -> HeckeSystem:
    from specmom.arith import primes_up_to

    rng = random.Random(seed)
    return HeckeSystem(
        prime_values={p: rng.uniform(-bound, bound) for p in primes_up_to(prime_limit)}
    )


@pytest.fixture
def small_dataset():
    rng = random.Random(11)
    forms = []
    for k in range(40):
        tj = 3.0 + 0.35 * k + 0.01 * rng.random()
        ap = {p: rng.uniform(-1.5, 1.5) for p in PRIMES_64}
        forms.append(make_form(tj, ap, nu1sq=rng.uniform(0.5, 1.5)))
    return make_dataset(forms, window=(1.0, 18.0))
