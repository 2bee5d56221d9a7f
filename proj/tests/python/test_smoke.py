import cmath
import math

import pytest

import ffhalasz as fh


def naive_sigma(chi, N):
    # sigma from exp(sum chi(j) z^j / j) by repeated series multiplication
    a = [0j] + [c / j for j, c in enumerate(chi[:N], start=1)] + [0j] * max(0, N - len(chi))
    out, term = [0j] * (N + 1), [1 + 0j] + [0j] * N
    for k in range(N + 1):
        out = [o + t for o, t in zip(out, term)]
        term = [sum(term[i] * a[r - i] for i in range(r + 1)) / (k + 1) for r in range(N + 1)]
    return out


def test_counts_and_factoring():
    assert fh.irreducible_count(2, 3) == 2
    assert fh.irreducible_count(7, 24) == 7982551306946640200
    assert fh.irreducibles(2, 2) == ["t", "t+1", "t^2+t+1"]
    assert fh.factor(2, [1, 0]) == [("t+1", 2)]


def test_sigma_matches_generating_function():
    chi = [cmath.rect(0.9, 0.3 * j) for j in range(1, 13)]
    got = fh.sigma_from_chi(chi, 12)
    want = naive_sigma(chi, 12)
    assert max(abs(g - w) for g, w in zip(got, want)) < 1e-12
    back = fh.chi_from_sigma(got, 1.0)
    assert max(abs(b - c) for b, c in zip(back, chi)) < 1e-12


def test_oracle_agrees_with_recurrence():
    chi = fh.chi_from_spec("random", 3, 6, kappa=2.0, seed=5)
    rec = fh.sigma_from_chi(chi, 6)[6]
    assert abs(fh.oracle_sigma("random", 3, 6, kappa=2.0, seed=5) - rec) < 1e-12
    assert abs(fh.oracle_sigma("mobius", 2, 2)) < 1e-15
    with pytest.raises(fh.CensusLimitExceeded):
        fh.oracle_sigma("one", 2, 40)


def test_M_and_bounds():
    lo, hi = fh.compute_M([1.0] * 5, 5, 1.0)
    exact = math.log(10) - 25 / 12
    assert lo <= exact + 1e-15 and exact <= hi + 1e-15
    assert hi - lo <= 1e-9
    assert fh.halasz_bound(0.0, 17, 1.0) == pytest.approx(4.0)
    rep = fh.halasz_report([0.5j] * 40, 40, 1.0, m=10)
    assert rep["verdict_main"] == "pass"
    assert rep["verdict_prop"] == "pass"
    with pytest.raises(fh.KappaViolation):
        fh.halasz_report([2.0] * 10, 10, 1.0)


def test_contour_and_sharp_example():
    chi = [cmath.rect(1.0, 0.7 * j * j) for j in range(1, 11)]
    sigma = fh.sigma_from_chi(chi, 10)
    sum_form = sum(chi[j - 1] * sigma[10 - j] for j in range(1, 5)) / 10
    assert abs(fh.sigma_m_contour(chi, 10, 4) - sum_form) < 1e-6
    inst = fh.sharp_example(100, 0.3)
    assert inst["first_end"] == 30
    assert abs(inst["sigma"][2] - fh.complex_binomial(2)) < 1e-15
    rep = fh.sharp_example_report(300, 0.3)
    assert rep["tail_ratio"] > 0.01
    assert rep["phase_alignment_residual"] < 1e-12


def test_cli_entry():
    code, out, _ = fh.run_cli(["irreducibles", "--q", "2", "--d", "3"])
    assert code == 0
    assert out.splitlines()[-1] == "2,3,2"
    code, _, err = fh.run_cli(["sharp-example"])
    assert code == 1 and err
