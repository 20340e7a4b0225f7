"""Grid verification, recurrence consistency, evaluation contracts, reports."""

import json

import pytest

from fibkit import (
    EvalError, GridError, GridSpec, InternalFault, ParamPoint, Seed,
    case_split_value, check_recurrence, eval_side, fib, lucas, parse_expr,
    parse_identity, verify_grid,
)

F_SEED = Seed(0, 1)


def small_spec(*params, lo=-3, hi=3, seeds=(Seed(0, 1), Seed(3, 7))):
    return GridSpec({p: (lo, hi) for p in params}, tuple(seeds))


# --- eval_side ---------------------------------------------------------------

def test_eval_side_spec_points(catalog):
    eq1 = catalog.get("Eq1")
    pt = ParamPoint({"n": 1, "m": 2, "p": 5, "q": 3}, F_SEED)
    assert eval_side(eq1.lhs, pt) == 4  # F5*F5 - F2*F8 = 25 - 21
    assert eval_side(eq1.rhs, pt) == 4

    eq3 = catalog.get("Eq3")
    pt = ParamPoint({"n": 2, "m": 2, "p": 0, "q": 1}, F_SEED)
    assert eval_side(eq3.lhs, pt) == 3  # 0 + 4 - 1
    assert eval_side(eq3.rhs, pt) == 3


def test_eval_side_binom_convention():
    assert eval_side(parse_expr("binom(n, k)"), ParamPoint({"n": 5, "k": 7})) == 0
    assert eval_side(parse_expr("binom(n, k)"), ParamPoint({"n": 5, "k": -1})) == 0
    assert eval_side(parse_expr("binom(n, k)"), ParamPoint({"n": -2, "k": 1})) == 0
    assert eval_side(parse_expr("binom(n, k)"), ParamPoint({"n": 6, "k": 2})) == 15


def test_eval_side_empty_sum_is_zero():
    ast = parse_expr("sum(k, 0, n, F(k))")
    assert eval_side(ast, ParamPoint({"n": -1})) == 0


def test_eval_side_inverted_sum_bounds_error():
    ast = parse_expr("sum(k, 0, n, F(k))")
    with pytest.raises(EvalError, match="sum bounds"):
        eval_side(ast, ParamPoint({"n": -2}))


def test_eval_side_negative_exponent_error():
    ast = parse_expr("F(m)^n")
    with pytest.raises(EvalError, match="negative exponent"):
        eval_side(ast, ParamPoint({"m": 3, "n": -1}))


def test_eval_side_pow5floor():
    ast = parse_expr("pow5floor(n)")
    assert [eval_side(ast, ParamPoint({"n": n})) for n in range(6)] == [1, 1, 5, 5, 25, 25]
    with pytest.raises(EvalError):
        eval_side(ast, ParamPoint({"n": -1}))


def test_eval_side_sign_parity():
    ast = parse_expr("sign(n)")
    assert eval_side(ast, ParamPoint({"n": -3})) == -1
    assert eval_side(ast, ParamPoint({"n": -4})) == 1


# --- verify_grid -------------------------------------------------------------

def test_trivial_identity_counts_points():
    trivial = parse_identity("G(p) == G(p)", name="trivial", params=("p",))
    spec = GridSpec({"p": (-10, 10)}, (Seed(0, 1),))
    report = verify_grid(trivial, spec)
    assert report.passed
    assert report.total == 21


def test_flagship_small_grid_passes(catalog):
    spec = GridSpec({"n": (0, 4), "m": (-6, 6), "p": (-6, 6), "q": (-6, 6)},
                    (Seed(0, 1), Seed(2, 1), Seed(3, 7)))
    report = verify_grid(catalog.get("Eq1"), spec)
    assert report.passed
    assert report.total == 5 * 13 ** 3 * 3


def test_corrupted_identity_fails_with_counterexample(catalog):
    bad = parse_identity(
        "sum(k, 0, n, binom(n, k)*sign(k)*F(m)^k*F(m + q)^(n - k)*G(p + q*k))"
        " == sign(n*m + 1)*F(q)^n*G(p - n*m)",
        name="Eq1-flipped", params=("n", "m", "p", "q"))
    report = verify_grid(bad, GridSpec({"n": (0, 2), "m": (-2, 2), "p": (-2, 2),
                                        "q": (-2, 2)}, (F_SEED,)))
    assert not report.passed
    assert len(report.failures) >= 1
    first = report.failures[0]
    assert first.lhs != first.rhs
    assert first.diff == first.lhs - first.rhs


def test_grid_must_cover_params(catalog):
    with pytest.raises(GridError, match="does not cover"):
        verify_grid(catalog.get("Eq1"), small_spec("n", "m", "p"))


def test_rank_param_must_be_nonnegative(catalog):
    spec = GridSpec({"n": (-1, 3), "m": (0, 1), "p": (0, 1), "q": (0, 1)})
    with pytest.raises(GridError, match="rank parameter"):
        verify_grid(catalog.get("Eq1"), spec)


def test_empty_range_rejected():
    with pytest.raises(GridError, match="empty range"):
        GridSpec({"m": (3, 2)})


def test_no_seeds_rejected():
    with pytest.raises(GridError, match="seed"):
        GridSpec({"m": (0, 1)}, ())


def test_eval_errors_annotated_with_point():
    bad = parse_identity("F(m)^p == F(m)^p", name="neg-pow", params=("m", "p"))
    spec = GridSpec({"m": (0, 1), "p": (-1, 1)}, (F_SEED,))
    with pytest.raises(EvalError, match=r"at point \(m=0, p=-1\)"):
        verify_grid(bad, spec)


def test_workers_match_sequential(catalog):
    spec = GridSpec({"n": (0, 2), "m": (-2, 2), "p": (-2, 2), "q": (-2, 2)},
                    (Seed(0, 1), Seed(-4, 5)))
    seq_report = verify_grid(catalog.get("Eq2"), spec, workers=1)
    par_report = verify_grid(catalog.get("Eq2"), spec, workers=3)
    assert seq_report.to_json() == par_report.to_json()


def test_workers_match_on_failing_identity():
    bad = parse_identity("F(m + 1) == F(m)", name="off-by-one", params=("m",))
    spec = GridSpec({"m": (-6, 6)}, (F_SEED,))
    a = verify_grid(bad, spec, workers=1)
    b = verify_grid(bad, spec, workers=4)
    assert a.to_json() == b.to_json()
    assert not a.passed


def test_use_oracle_cross_checks(catalog):
    spec = GridSpec({"m": (-3, 3), "n": (-3, 3)}, (F_SEED,))
    report = verify_grid(catalog.get("Eq8"), spec, use_oracle=True)
    assert report.passed


# --- report serialization ----------------------------------------------------

def test_report_json_schema(catalog):
    spec = GridSpec({"m": (-2, 2), "n": (-2, 2)}, (Seed(0, 1), Seed(2, 1)))
    report = verify_grid(catalog.get("Eq8"), spec)
    doc = json.loads(report.to_json())
    assert doc["version"] == 1
    assert doc["identity"] == "Eq8"
    assert doc["paper_tag"] == "Eq(8)"
    assert doc["mode"] == "grid"
    assert doc["total"] == 50
    assert doc["failures"] == []
    assert doc["elapsed_ms"] == 0
    assert doc["grid"]["ranges"] == {"m": [-2, 2], "n": [-2, 2]}
    assert doc["grid"]["seeds"] == [[0, 1], [2, 1]]


def test_report_serializes_bigints_as_strings():
    wide = parse_identity("F(m)*F(m) == F(m)", name="big", params=("m",))
    report = verify_grid(wide, GridSpec({"m": (120, 120)}, (F_SEED,)))
    doc = json.loads(report.to_json())
    assert doc["failures"][0]["lhs"] == str(fib(120) ** 2)
    assert isinstance(doc["failures"][0]["lhs"], str)


def test_failures_sorted_lexicographically():
    bad = parse_identity("F(m) + F(n) == 0", name="never", params=("m", "n"))
    report = verify_grid(bad, GridSpec({"m": (1, 2), "n": (1, 2)},
                                       (Seed(0, 1), Seed(2, 1))))
    points = [dict(f.point) for f in report.failures]
    keys = [(p["m"], p["n"]) for p in points]
    assert keys == sorted(keys)


# --- recurrence consistency --------------------------------------------------

@pytest.mark.parametrize("family,side,coeff", [
    ("Eq1", "lhs", "F"),
    ("Eq1", "rhs", "F"),
    ("Eq2", "lhs", "L"),
    ("Eq2", "rhs", "L"),
])
def test_recurrence_consistency(catalog, family, side, coeff):
    spec = GridSpec({"n": (1, 3), "m": (-4, 4), "p": (-4, 4), "q": (-4, 4)},
                    (Seed(0, 1), Seed(3, 7)))
    report = check_recurrence(catalog.get(family), side, spec, coeff=coeff)
    assert report.passed
    assert report.mode == "recurrence"
    assert report.identity == f"{family}.{side}"


def test_recurrence_detects_wrong_coefficient(catalog):
    spec = GridSpec({"n": (1, 2), "m": (-2, 2), "p": (-2, 2), "q": (-2, 2)},
                    (F_SEED,))
    report = check_recurrence(catalog.get("Eq1"), "lhs", spec, coeff="L")
    assert not report.passed


def test_recurrence_requires_n_at_least_one(catalog):
    spec = GridSpec({"n": (0, 2), "m": (0, 1), "p": (0, 1), "q": (0, 1)})
    with pytest.raises(GridError, match="n >= 1"):
        check_recurrence(catalog.get("Eq1"), "lhs", spec)


def test_recurrence_rejects_other_identities(catalog):
    spec = GridSpec({"n": (1, 2), "m": (0, 1), "p": (0, 1), "q": (0, 1)})
    with pytest.raises(GridError, match=r"\(n, m, p, q\)"):
        check_recurrence(catalog.get("Eq8"), "lhs", spec)


# --- case split --------------------------------------------------------------

@pytest.mark.parametrize("p,n,m,expected", [
    (5, 2, 1, 2),   # even n: F(3)
    (5, 1, 1, 7),   # odd n: L(4)
    (0, 0, 0, 0),   # F(1) - F(-1)
])
def test_case_split_value(p, n, m, expected):
    assert case_split_value(p, n, m) == expected


def test_case_split_matches_closed_forms_on_window():
    for p in range(-12, 13):
        for n in range(0, 5):
            for m in range(-3, 4):
                value = case_split_value(p, n, m)
                i = p - n * m
                assert value == (fib(i) if n % 2 == 0 else lucas(i))
