"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line with its runtime; the lines are
printed in the terminal summary (see conftest.py) and by running this file
directly with ``python tests/test_acceptance.py``.
"""
import random
import time
from fractions import Fraction

import pytest

from branchcov import cech, equivariant as eq, quadrature as qd, terms
from branchcov.cli import main
from branchcov.config import validate
from branchcov.covering import (
    check_sequence_additivity,
    covering_on_p1,
    euler_char_W,
    riemann_hurwitz_genus,
)
from branchcov.cyclotomic import Cyclotomic
from branchcov.linalg import det, identity
from branchcov.report import parse_jsonl
from branchcov.suite import compute_theorem
from branchcov.zeta import r_coefficient, r_genus_series, zeta_prime_direct, zeta_prime_negative

RESULTS = []

GRID = [(d, k, xi) for d in (2, 3, 4) for k in (1, 2, 3) for xi in (0, 1)]


def _run(number, title, limit, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    timely = limit is None or dt < limit
    passed = ok and timely
    budget = f" (limit {limit:g} s)" if limit is not None else ""
    RESULTS.append(f"{'PASS' if passed else 'FAIL'} criterion {number:2d}: {title}: {detail}; {dt:.2f} s{budget}")
    assert ok, detail
    assert timely, f"took {dt:.2f} s{budget}"


# 1 -------------------------------------------------------------------------------


def _direct_image_euler():
    bad = []
    for d, k, xi in GRID:
        spec = covering_on_p1(k, d, xi=(xi,))
        # chi(P^1, O(m)) = m + 1
        rhs = sum((-j * k + xi) + 1 for j in range(d))
        chi = euler_char_W(spec)
        if chi != rhs or (xi == 0 and chi != d - Fraction(k * d * (d - 1), 2)):
            bad.append((d, k, xi, chi, rhs))
    return not bad, f"{len(GRID)} specs, mismatches {bad}"


def test_criterion_01_direct_image_euler():
    _run(1, "direct-image Euler equality", 1.0, _direct_image_euler)


# 2 -------------------------------------------------------------------------------


def _riemann_hurwitz():
    bad = []
    for d, k, _ in GRID:
        spec = covering_on_p1(k, d)
        if 1 - euler_char_W(spec) != riemann_hurwitz_genus(spec):
            bad.append((d, k))
    return not bad, f"{len(GRID) // 2} cyclic specs, mismatches {bad}"


def test_criterion_02_riemann_hurwitz():
    _run(2, "Riemann-Hurwitz cross-check", 1.0, _riemann_hurwitz)


# 3 -------------------------------------------------------------------------------


def _additivity():
    nonzero = []
    count = 0
    for d, k, xi in GRID:
        rep = check_sequence_additivity(covering_on_p1(k, d, xi=(xi,)))
        count += len(rep.residuals)
        nonzero += [(d, k, xi, name) for name in rep.failed()]
    return not nonzero, f"{count} residuals, nonzero {nonzero}"


def test_criterion_03_additivity_and_leray():
    _run(3, "exact-sequence additivity and Leray degeneration", 1.0, _additivity)


# 4 -------------------------------------------------------------------------------


def _delta_structure():
    rng = random.Random(20240604)
    bad = 0
    for trial in range(20):
        d = 3 if trial % 2 == 0 else 4
        k = rng.choice([1, 2])
        alpha = [tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(i * k + 1)) for i in range(1, d + 1)]
        alpha[-1] = alpha[-1][:-1] + (Fraction(1),)
        spec = covering_on_p1(k, d, alpha)
        got = cech.delta1_matrix(spec)
        if got != cech.expected_delta_entries(spec):
            bad += 1
            continue
        points = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(50)]
        if any(det(got.evaluate(z)) != 1 for z in points):
            bad += 1
    return bad == 0, f"20 random alpha (d = 3, 4), 50 points each, failures {bad}"


def test_criterion_04_delta_matrix():
    _run(4, "delta-matrix structure", 5.0, _delta_structure)


# 5 -------------------------------------------------------------------------------


def _serre():
    bad = [k for k in range(0, 7) if cech.serre_pairing_matrix(k) != identity(k + 1)]
    return not bad, f"k = 0..6, non-identity {bad}"


def test_criterion_05_serre_pairing():
    _run(5, "Serre pairing", None, _serre)


# 6 -------------------------------------------------------------------------------


def _torsion():
    failed = []
    for d in (2, 3):
        for k in (1, 2):
            spec = covering_on_p1(k, d, [()] * (d - 1) + [(-1,) + (0,) * (d * k - 1) + (1,)])
            rep = cech.verify_section_identities(spec, 0)
            v = rep.values
            ok = (
                rep.ok
                and v["nu_3"] == 1
                and v["sigma"] == v["tau_d"] / v["sigma_1"]
                and v["tau_d"] == v["rho_d"]
            )
            if not ok:
                failed.append((d, k, [c for c, good in rep.checks.items() if not good]))
    return not failed, f"d in {{2,3}}, k in {{1,2}}, failures {failed}"


def test_criterion_06_torsion_identities():
    _run(6, "torsion identities", 30.0, _torsion)


# 7 -------------------------------------------------------------------------------


def _lefschetz():
    bad = []
    for d in (2, 3, 4):
        for k in (1, 2):
            spec = covering_on_p1(k, d)
            for g in range(1, d):
                if eq.equivariant_euler_direct(g, spec) != eq.atiyah_bott_fixed_point(g, spec):
                    bad.append((d, k, g))
    worked = (
        eq.equivariant_euler_direct(1, covering_on_p1(1, 2)) == Cyclotomic.rational(2, 1)
        and eq.equivariant_euler_direct(1, covering_on_p1(2, 2)) == Cyclotomic.rational(2, 2)
    )
    return not bad and worked, f"mismatches {bad}, worked values {'ok' if worked else 'wrong'}"


def test_criterion_07_lefschetz():
    _run(7, "holomorphic Lefschetz consistency", 5.0, _lefschetz)


# 8 -------------------------------------------------------------------------------


def _rgenus():
    rel = max(
        float(abs(zeta_prime_negative(n).value - zeta_prime_direct(n).value) / abs(zeta_prime_negative(n).value))
        for n in (1, 3, 5)
    )
    s = r_genus_series(10)
    even = all(s[n] == 0 for n in range(0, 11, 2))
    bound = max(float(r_coefficient(n).bound) for n in range(1, 11, 2))
    return rel < 1e-10 and even and bound < 1e-10, f"max relative difference {rel:.1e}, even zero {even}, max bound {bound:.1e}"


def test_criterion_08_rgenus():
    _run(8, "R-genus numerics", 10.0, _rgenus)


# 9 -------------------------------------------------------------------------------


def _quadrature():
    worst = 0.0
    monotone = True
    for m in range(1, 9):
        r = qd.fs_log_norm_integral(qd.FSSection.monomial(m))
        worst = max(worst, abs(r.value + m))
        monotone = monotone and qd.monotone_tail(r, 3)
    s, t = qd.FSSection(2, (-1, 0, 1)), qd.FSSection(3, (2, 1j, 0, 1))
    rs, rt, rst = (qd.fs_log_norm_integral(x) for x in (s, t, s.times(t)))
    gap = abs(rst.value - rs.value - rt.value)
    allowed = rs.error_estimate + rt.error_estimate + rst.error_estimate
    ok = worst <= 1e-6 and monotone and gap <= allowed
    return ok, f"max |I(z^m) + m| {worst:.1e}, product gap {gap:.1e} <= {allowed:.1e}, monotone {monotone}"


def test_criterion_09_quadrature():
    _run(9, "quadrature oracle", 60.0, _quadrature)


# 10 ------------------------------------------------------------------------------


def _lemma34():
    spec = covering_on_p1(1, 2, [(), (-1, 0, 1)])
    probes = qd.lemma34_consistency_probe(spec, scales=(2.0, 0.25))
    ok = len(probes) == 2 and all(p.ok for p in probes)
    desc = ", ".join(f"c={p.scale:g}: residual {p.residual:.1e} <= {p.bound:.1e}" for p in probes)
    return ok, desc


def test_criterion_10_rescaling_probe():
    _run(10, "constant-rescaling probe", 60.0, _lemma34)


# 11 ------------------------------------------------------------------------------


def _t41_ledger(tmp_path):
    cfg = validate({"base": "cp1", "k": 1, "d": 2, "g": 1})
    rep = compute_theorem(cfg, "t41")
    status = {r.id: r.status for r in rep.records}
    declared_pending = {"R_fixed_point"}
    pending = {rid for rid, s in status.items() if s == "pending"}
    complete = all(s in ("exact", "numeric", "pending") for s in status.values())
    bounded = all("value" in r.bounds for r in rep.records if r.status == "numeric")
    no_pending_values = all("value" not in r.values for r in rep.records if r.status == "pending")
    split = status.get("tangent_bott_chern") == "exact" and rep.get("tangent_bott_chern").values["value"] == 0
    out = tmp_path / "t41.jsonl"
    runs = []
    for _ in range(2):
        assert main(["theorem", "--which", "t41", "--out", str(out)]) == 0
        runs.append(out.read_bytes())
    same = runs[0] == runs[1]
    parsed = parse_jsonl(runs[0].decode())
    ok = complete and bounded and no_pending_values and split and same and pending == declared_pending
    ok = ok and [r.id for r in parsed.records] == list(status)
    return ok, f"terms {status}, byte-identical reruns {same}"


def test_criterion_11_theorem_ledger(tmp_path):
    _run(11, "theorem evaluator ledger", None, lambda: _t41_ledger(tmp_path))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
