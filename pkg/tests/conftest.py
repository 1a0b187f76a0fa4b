import numpy as np
import pytest

from seqfam.families import SequenceFamily
from seqfam.measures._backend import numba_available

BACKENDS = ["numpy"] + (["numba"] if numba_available() else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def euler_symbol(a: int, p: int) -> int:
    """Euler's criterion, independent of the reciprocity implementation."""
    if a % p == 0:
        return 0
    return 1 if pow(a % p, (p - 1) // 2, p) == 1 else -1


def random_family(rng: np.random.Generator, max_f: int, max_n: int, min_f: int = 1, dup_rate: float = 0.2) -> SequenceFamily:
    """Random family; some members are copies so equal-value rules get exercised."""
    F = int(rng.integers(min_f, max_f + 1))
    N = int(rng.integers(1, max_n + 1))
    rows = rng.choice([-1, 1], size=(F, N))
    for k in range(1, F):
        if rng.random() < dup_rate:
            rows[k] = rows[int(rng.integers(0, k))]
    return SequenceFamily.from_matrix(rows, f"random F={F} N={N}")


def seeded_corpus(seed: int, count: int, max_f: int, max_n: int, min_f: int = 1) -> list[SequenceFamily]:
    rng = np.random.default_rng(seed)
    return [random_family(rng, max_f, max_n, min_f) for _ in range(count)]


ACCEPTANCE_RESULTS: list[tuple[int, str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {title}  {detail}")
