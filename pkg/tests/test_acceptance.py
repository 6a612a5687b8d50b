"""The eight acceptance criteria; each records one PASS/FAIL line for the terminal summary."""
import time
from contextlib import contextmanager

import mpmath
import pytest

from conftest import ACCEPTANCE_LINES
from ohno_fmzv.classical import mzv_value, verify_ohno_classical
from ohno_fmzv.fmzv import EvalContext, zeta_A, zeta_A_naive
from ohno_fmzv.indices import indices_of_weight
from ohno_fmzv.modmath import primes_above
from ohno_fmzv.series import O_series, main_rhs_series, odd_square_series
from ohno_fmzv.verify import run_identity

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(name):
    state = {"detail": ""}
    start = time.perf_counter()
    ok = False
    try:
        yield state
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append((name, ok, f"{state['detail']} [{elapsed:.1f}s]".strip()))


def _run(names, primes, N, params=None):
    entries, failures = 0, []
    for name in names:
        r = run_identity(name, params=params, primes=primes, N=N)
        assert all(e.guaranteed for e in r), name
        entries += len(r)
        failures += r.failures()
    return entries, failures


def test_1_kaneko_instance():
    with criterion("1 Kaneko instance O(2,1,2)") as st:
        primes = primes_above(40, 5)
        assert primes == [41, 43, 47, 53, 59]
        start = time.perf_counter()
        for p in primes:
            ctx = EvalContext(p)
            O = O_series((2, 1, 2), ctx, 12)
            assert O == odd_square_series(ctx, 12), p
            assert O == main_rhs_series(2, 1, 2, ctx, 12), p
            assert O[8] == 2 * 3 * 5 * ctx.frak_z(3) * ctx.frak_z(5) % p
            assert all(O[w] == 0 for w in range(13) if w % 2 or w < 6)
        elapsed = time.perf_counter() - start
        assert elapsed < 60
        st["detail"] = f"primes {primes}, N=12, 13 coefficients each"


def test_2_main_theorem():
    with criterion("2 main theorem, k1+k2+k3<=7") as st:
        primes = primes_above(24, 5)
        start = time.perf_counter()
        n, failures = _run(["main"], primes, 12)
        assert not failures, failures[:3]
        assert time.perf_counter() - start < 600
        st["detail"] = f"{n} coefficient cells, primes {primes}, N=12"


def test_3_vanishing_theorems():
    with criterion("3 vanishing theorems") as st:
        primes = primes_above(24, 5)
        n, failures = _run(["O_depth1", "O_depth2", "main_k2eq2"], primes, 12)
        assert not failures, failures[:3]
        st["detail"] = f"{n} coefficient cells, primes {primes}, N=12"


def test_4_word_algebra():
    with criterion("4 P/Q word-algebra exactness") as st:
        start = time.perf_counter()
        r = run_identity("PQ_exact")
        assert r.all_passed, r.failures()[:3]
        assert len(r) == 270
        assert time.perf_counter() - start < 10
        st["detail"] = f"{len(r)} exact cells (135 grid points x 2 forms)"


CATALOG_IDS = [
    "hoffman_duality",
    "reversal",
    "symsum",
    "antipode",
    "eval_112",
    "parity_112",
    "sum_formula",
    "oyama",
    "ohno_fs",
    "shF",
    "shF2",
    "PQ2_modp",
    "lemma_A",
    "lemma_B",
    "U_telescope",
    "dep1_vanish",
    "dep2_eval",
]


def test_5_catalog():
    with criterion("5 catalog identities") as st:
        n, failures = _run(CATALOG_IDS, [29, 31, 37], 10)
        assert not failures, failures[:3]
        st["detail"] = f"{len(CATALOG_IDS)} identities, {n} cells, primes [29, 31, 37], N=10"


def test_6_oracle_equivalence():
    with criterion("6 DP vs naive evaluator") as st:
        count = 0
        for p in (7, 11, 13, 31):
            ctx = EvalContext(p)
            for k in indices_of_weight(1, 6):
                for star in (False, True):
                    assert zeta_A(k, ctx, star) == zeta_A_naive(k, p, star), (k, p, star)
                    count += 1
        st["detail"] = f"{count} evaluations, weight <= 6, p in (7, 11, 13, 31)"


def test_7_bernoulli_cross_check():
    with criterion("7 depth-2 brute force vs Bernoulli formula") as st:
        count = 0
        for p in (101, 103):
            ctx = EvalContext(p)
            for n in range(2, 11):
                for k1 in range(1, n):
                    k2 = n - k1
                    formula = (-1) ** (k1 + 1) * ctx.binom(n, k1) * ctx.frak_z(n) % p
                    assert zeta_A_naive((k1, k2), p) == formula, (k1, k2, p)
                    count += 1
        st["detail"] = f"{count} pairs, p in (101, 103)"


def test_8_classical_desk_check():
    with criterion("8 classical Ohno relation") as st:
        mpmath.mp.dps = 40
        anchor = mzv_value((2, 2)) + mzv_value((1, 3))
        assert abs(mpmath.mpf(anchor.value.numerator) / anchor.value.denominator - mpmath.pi**4 / 90) < 1e-35
        worst = 0.0
        for k in [(2,), (1, 2), (2, 2), (1, 1, 2)]:
            for m in range(3):
                e = verify_ohno_classical(k, m, terms=10**5, tol=1e-6)
                assert e.passed, e
                worst = max(worst, abs(float(e.lhs) - float(e.rhs)))
        st["detail"] = f"12 cells, max diff of 15-digit sides = {worst:.1e}, anchor ok"
