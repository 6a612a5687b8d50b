import pytest

from ohno_fmzv.verify import (
    CATALOG,
    IDENTITY_IDS,
    apply_filters,
    default_grid,
    format_params,
    run_all,
    run_identity,
)

EXPECTED_IDS = (
    "dep1_vanish", "symsum", "dep2_eval", "antipode", "hoffman_duality", "reversal", "eval_112",
    "parity_112", "sum_formula", "oyama", "ohno_fs", "shF", "shF2", "PQ_exact", "PQ2_modp", "lemma_A",
    "lemma_B", "U_telescope", "O_depth1", "O_depth2", "main", "main_k2eq2", "kaneko_conjecture",
    "ohno_classical",
)


def test_catalog_ids():
    assert IDENTITY_IDS == EXPECTED_IDS
    assert {CATALOG[i].kind for i in IDENTITY_IDS} == {"modp", "exact", "real"}


@pytest.mark.parametrize("name", IDENTITY_IDS)
def test_grids_nonempty(name):
    assert default_grid(name, 10)


def test_grid_sizes():
    assert len(default_grid("PQ_exact")) == 270
    assert len(default_grid("main")) == 35
    assert len(default_grid("ohno_classical")) == 21


def test_filters():
    grid = default_grid("main")
    small = apply_filters(grid, "k_sum<=5")
    assert small and all(sum(p["k"]) <= 5 for p in small)
    assert apply_filters(grid, "k2=1, k1>=2") == [p for p in grid if p["k"][1] == 1 and p["k"][0] >= 2]
    assert apply_filters(grid, None) == grid
    with pytest.raises(ValueError):
        apply_filters(grid, "m<=2")
    with pytest.raises(ValueError):
        apply_filters(grid, "k_sum ~ 3")


def test_format_params():
    assert format_params({"k": (2, 1, 2), "m": 1}) == "k=(2,1,2),m=1"
    assert format_params({"w": "y", "w2": ""}) == "w=y,w2=1"


@pytest.mark.parametrize("name", [n for n in IDENTITY_IDS if CATALOG[n].kind == "modp"])
def test_each_modp_identity_small(name):
    r = run_identity(name, primes=[23, 29], N=10)
    assert len(r) > 0
    assert r.all_passed, r.failures()[:3]


def test_below_floor_is_flagged():
    r = run_identity("main", params="k_sum<=5", primes=[13], N=10)
    assert all(not e.guaranteed for e in r)
    assert r.counts() == (0, 0)


def test_undefined_cell_is_reported():
    r = run_identity("U_telescope", params=[{"k": 1, "s": 40}], primes=[29], N=10)
    (e,) = r.entries
    assert not e.passed and e.lhs.startswith("undefined")


def test_wrong_identity_fails():
    # a checker fed a deliberately wrong sign must be caught
    from ohno_fmzv.fmzv import EvalContext, zeta_A
    from ohno_fmzv.indices import hoffman_dual

    ctx = EvalContext(31)
    bad = [k for k in [(2, 1), (1, 3), (2, 2, 1), (3, 1, 1)] if zeta_A(k, ctx, True) != zeta_A(hoffman_dual(k), ctx, True)]
    assert bad


def test_nontrivial_content():
    r = run_identity("kaneko_conjecture", primes=[29], N=12)
    assert any(e.lhs != "0" for e in r)
    r = run_identity("main", primes=[29], N=12)
    assert sum(e.lhs != "0" for e in r) > 20


def test_run_all_parallel_matches_serial():
    names = ["dep2_eval", "lemma_A", "PQ_exact"]
    a = run_all([29, 31], N=8, names=names)
    b = run_all([29, 31], N=8, names=names, parallel=2)
    assert a.entries == b.entries
    assert a.all_passed


def test_run_identity_validates():
    with pytest.raises(ValueError):
        run_identity("nope", primes=[29])
    with pytest.raises(ValueError):
        run_identity("main", primes=[27])
