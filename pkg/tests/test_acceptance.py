"""Exit criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import itertools
import json
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS, seeded_corpus
from seqfam.experiment import gms_certificate, gms_family, squarefree_shift_family
from seqfam.families import (
    Orientation,
    QuadraticFamilyParams,
    build_polynomial_family,
    build_quadratic_family,
    dual_family,
)
from seqfam.measures import (
    SearchBudget,
    SpecificationPattern,
    complete_weil_sum,
    count_matching_sequences,
    cross_correlation,
    family_complexity,
    largest_guaranteed,
    specification_guaranteed,
    theorem_lower_bound,
    theorem_orders,
    weil_limit,
    weil_ratio_report,
)
from seqfam.measures.reference import naive_cross_correlation, window_sum
from seqfam.ntcore import find_quadratic_nonresidue, is_prime

PRIMES_11_43 = [q for q in range(11, 44) if is_prime(q)]


@contextmanager
def criterion(num: int, title: str):
    info = {"detail": ""}
    t0 = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        ACCEPTANCE_RESULTS.append((num, title, False, f"{type(exc).__name__}: {exc}"[:200]))
        raise
    ACCEPTANCE_RESULTS.append((num, title, True, f"{info['detail']} ({time.perf_counter() - t0:.2f}s)".strip()))


def quad(p, orientation=Orientation.BY_OUTER_N):
    return build_quadratic_family(QuadraticFamilyParams(p, find_quadratic_nonresidue(p).value, orientation))


def test_1_distinctness():
    with criterion(1, "quadratic family has (p-1)/2 distinct members, 11 <= p <= 43") as info:
        t0 = time.perf_counter()
        for p in PRIMES_11_43:
            assert len(set(quad(p).members)) == (p - 1) // 2
        elapsed = time.perf_counter() - t0
        assert elapsed < 1.0
        info["detail"] = f"{len(PRIMES_11_43)} primes"


def test_2_weil():
    with criterion(2, "complete Weil sums: |sum| <= floor(3 sqrt p) off-diagonal, = p on diagonal") as info:
        t0 = time.perf_counter()
        worst = 0.0
        for p in PRIMES_11_43:
            b = find_quadratic_nonresidue(p).value
            h = (p - 1) // 2
            for n1 in range(1, h + 1):
                for n2 in range(1, h + 1):
                    s = complete_weil_sum(p, b, n1, n2)
                    if n1 == n2:
                        assert s == p
                    else:
                        assert abs(s) <= weil_limit(p)
                        worst = max(worst, abs(s) / weil_limit(p))
        assert time.perf_counter() - t0 < 1.0
        info["detail"] = f"max |sum|/limit = {worst:.3f}"


def test_3_theorem_quadratic():
    with criterion(3, "C(F) >= theorem bound from dual measures, both orientations") as info:
        t0 = time.perf_counter()
        budget = SearchBudget()
        rows = []
        for p in (11, 13, 19, 23, 31, 43):
            for orientation in Orientation:
                fam = quad(p, orientation)
                dual = dual_family(fam)
                phis = [cross_correlation(dual, i, budget).value for i in range(1, theorem_orders(fam.size) + 1)]
                c = family_complexity(fam, budget).value
                bound = theorem_lower_bound(fam.size, phis)
                assert c >= bound, (p, orientation, c, bound, phis)
                rows.append(f"p={p}/{orientation.value}:C={c}>={bound}")
        assert time.perf_counter() - t0 < 300
        info["detail"] = " ".join(rows[-2:])


def test_4_theorem_random():
    with criterion(4, "theorem inequality on 120 seeded random families, F, N <= 12") as info:
        violations = 0
        corpus = seeded_corpus(4, 120, 12, 12, min_f=2)
        for fam in corpus:
            dual = dual_family(fam)
            phis = [cross_correlation(dual, i).value for i in range(1, theorem_orders(fam.size) + 1)]
            violations += family_complexity(fam).value < theorem_lower_bound(fam.size, phis)
        assert len(corpus) >= 100
        assert violations == 0
        info["detail"] = f"{len(corpus)} families, 0 violations"


def expansion_count(signs, pattern):
    """A via 2^-j [F + sum over nonempty index subsets of eps-products times column sums]."""
    F = signs.shape[0]
    j = pattern.size
    total = F
    for ell in range(1, j + 1):
        for sub in itertools.combinations(range(j), ell):
            eps = np.prod([pattern.signs[a] for a in sub])
            col = np.prod(signs[:, [pattern.positions[a] - 1 for a in sub]].astype(np.int64), axis=1).sum()
            total += int(eps * col)
    assert total % 2**j == 0
    return total // 2**j


def product_count(signs, pattern):
    F = signs.shape[0]
    acc = 0
    for k in range(F):
        acc += int(np.prod([1 + e * int(signs[k, q - 1]) for q, e in zip(pattern.positions, pattern.signs)]))
    return acc // 2**pattern.size


def test_5_proof_identities():
    with criterion(5, "counting identity on >= 500 cases; sufficient condition implies C >= j") as info:
        rng = np.random.default_rng(5)
        corpus = seeded_corpus(55, 200, 12, 12, min_f=2)
        cases = 0
        for fam in corpus:
            for _ in range(3):
                j = int(rng.integers(1, min(3, fam.length) + 1))
                pos = sorted(rng.choice(fam.length, size=j, replace=False) + 1)
                pat = SpecificationPattern(pos, rng.choice([-1, 1], size=j))
                direct = count_matching_sequences(fam, pat)
                assert direct == product_count(fam.signs, pat) == expansion_count(fam.signs, pat)
                cases += 1
        guaranteed = 0
        for fam in corpus:
            dual = dual_family(fam)
            j_max = min(fam.length, theorem_orders(fam.size))
            phis = [cross_correlation(dual, ell).value for ell in range(1, j_max + 1)]
            c = family_complexity(fam).value
            for j in range(1, j_max + 1):
                if specification_guaranteed(fam.size, j, phis[:j]):
                    assert c >= j
                    guaranteed += 1
            assert c >= largest_guaranteed(fam.size, phis)
        assert cases >= 500
        info["detail"] = f"{cases} counting cases, {guaranteed} guaranteed (family, j) pairs"


def test_6_gms_remark():
    with criterion(6, "GMS d=2 family: C <= 1 with blocking pattern at positions (1, p-1)") as info:
        for p in (11, 13, 17, 19):
            fam = gms_family(p)
            assert family_complexity(fam).value <= 1
            cert = gms_certificate(p)
            assert cert.positions == (1, p - 1)
            assert count_matching_sequences(fam, cert) == 0
        info["detail"] = "p in {11, 13, 17, 19}"


def test_7_shift_remark():
    with criterion(7, "square-free family with f and f(X+1), p=13, k=2: phi_2 >= 8") as info:
        p, k, d = 13, 2, 1
        fam, f, g = squarefree_shift_family(p, k, d, limit=64)
        rows = [tuple(r) for r in fam.signs.tolist()]
        ig = rows.index(tuple(build_row(p, g))) + 1
        if_ = rows.index(tuple(build_row(p, f))) + 1
        witness = abs(window_sum(fam.signs, (ig, if_), (0, d), p - d))
        assert witness >= p - d - 2 * k == 8
        phi2 = cross_correlation(fam, 2).value
        assert phi2 >= witness
        info["detail"] = f"f={f}, witness |sum|={witness}, phi_2={phi2}"


def build_row(p, poly):
    return build_polynomial_family(p, [poly]).signs[0].tolist()


def test_8_oracle_equivalence():
    with criterion(8, "optimised phi equals naive reference, 200 families F, N <= 8, ell <= 3") as info:
        t0 = time.perf_counter()
        corpus = seeded_corpus(8, 200, 8, 8)
        for fam in corpus:
            for ell in (1, 2, 3):
                res = cross_correlation(fam, ell)
                w = res.witness
                got = (res.value, None if w is None else (w.I, w.D, w.M))
                assert got == naive_cross_correlation(fam.signs, ell)
        assert time.perf_counter() - t0 < 120
        info["detail"] = f"{len(corpus) * 3} (family, ell) pairs"


def test_9_determinism(tmp_path):
    with criterion(9, "verify --threads 1 and --threads 8 give byte-identical JSON") as info:
        outs = []
        for threads in (1, 8):
            path = tmp_path / f"v{threads}.json"
            cmd = [sys.executable, "-m", "seqfam.cli", "verify", "--p-min", "11", "--p-max", "23", "--ell", "2",
                   "--threads", str(threads), "--json", str(path)]
            proc = subprocess.run(cmd, capture_output=True, text=True)
            assert proc.returncode == 0, proc.stderr
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]
        assert all(r["status"] == "PASS" for r in json.loads(outs[0])["primes"])
        info["detail"] = f"{len(outs[0])} bytes"


def test_10_ratio_table():
    with criterion(10, "ratio table phi_l / (l sqrt(p) ln p) for l <= 3, 11 <= p <= 43; phi_l <= N") as info:
        table = {}
        for p in PRIMES_11_43:
            fam = quad(p)
            rows = weil_ratio_report(fam, p, 3)
            assert [r.ell for r in rows] == [1, 2, 3]
            assert all(r.phi <= fam.length and np.isfinite(r.ratio) for r in rows)
            table[p] = [round(r.ratio, 3) for r in rows]
        info["detail"] = "max ratio %.3f" % max(max(v) for v in table.values())
