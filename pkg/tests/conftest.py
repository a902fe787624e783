from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "qnr",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("qnr")


def random_complex(rng: np.random.Generator, *shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(random_complex(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_block(rng: np.random.Generator, n1: int, n2: int):
    from qnr.linalg import BlockMatrix

    return BlockMatrix(
        random_complex(rng, n1, n1),
        random_complex(rng, n1, n2),
        random_complex(rng, n2, n1),
        random_complex(rng, n2, n2),
    )


def assert_multisets_close(got, expected, tol: float) -> None:
    """Match complex multisets greedily; robust to ties under lexicographic sort."""
    got = list(np.asarray(got, complex).reshape(-1))
    expected = list(np.asarray(expected, complex).reshape(-1))
    assert len(got) == len(expected)
    for e in expected:
        i = min(range(len(got)), key=lambda j: abs(got[j] - e))
        assert abs(got[i] - e) <= tol, f"no counterpart for {e} within {tol}"
        got.pop(i)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240810)
