"""Acceptance criteria, one pass/fail line each, at the stated tolerances.

Run with pytest; the lines are collected into a terminal summary section.
``python tests/test_acceptance.py`` prints them directly.
"""

import functools
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest
from scipy import constants

sys.path.insert(0, str(Path(__file__).parent))

from casimir_neq import (MATERIALS, SystemConfig, blackbody_offset, delta_eq_rel, delta_pneq,
                         find_zero_thickness, matsubara_terms, pressure_eq, pressure_eq_tilde,
                         pressure_ideal, run_point)
from casimir_neq.errors import NoZeroCrossing
from casimir_neq.model import K_B
from casimir_neq.noneq import X_MIN_PER_TOL, thermal_cutoff
from casimir_neq.quadrature import integrate_adaptive, integrate_semiinfinite
from casimir_neq.scan import format_length

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:
    ACCEPTANCE_LINES = []

TOL = 1e-6
UM, NM = 1e-6, 1e-9
SEPARATIONS = (0.5 * UM, 1 * UM, 2 * UM)
THICKNESSES = (20 * NM, 1 * UM)
GRID7 = tuple(np.linspace(0.5 * UM, 2 * UM, 7))


@functools.lru_cache(maxsize=None)
def point(material, model, d, a):
    return run_point(SystemConfig.similar(material, model, d, a), TOL)


def report(name, ok, detail, t0):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail} ({time.time() - t0:.0f} s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def pct(x):
    return f"{100 * x:.3g}%"


def test_c1_blackbody_offset():
    t0 = time.time()
    v = blackbody_offset(300.0, 500.0)
    ok = abs(v / 6.86e-6 - 1) < 1e-3
    report("C1 blackbody offset", ok, f"{v * 1e6:.4f} uPa vs 6.86 uPa +-0.1%", t0)


def test_c2_plasma_degeneracies():
    t0 = time.time()
    worst = 0.0
    for material in ("Au", "Ti"):
        for d in THICKNESSES:
            for a in SEPARATIONS:
                b = point(material, "plasma", d, a)
                worst = max(worst, abs(b.delta_p_neq) / abs(b.p_neq),
                            abs(b.delta_eq_rel * b.p_eq_mean) / abs(b.p_neq))
    report("C2 plasma degeneracies", worst < 1e-12,
           f"max(|dP_neq|, |dP_eq|)/|P_neq| = {worst:.2e} (< 1e-12)", t0)


def drude_plasma_difference(material, d, a):
    pl, dr = point(material, "plasma", d, a).p_neq, point(material, "drude", d, a).p_neq
    return (pl - dr) / pl


def test_c3_drude_vs_plasma():
    t0 = time.time()
    targets = {20 * NM: (0.12, 0.22, 0.39), 1 * UM: (0.11, 0.21, 0.38)}
    parts, ok = [], True
    for d, want in targets.items():
        got = [drude_plasma_difference("Au", d, a) for a in SEPARATIONS]
        ok &= all(abs(g - w) <= 0.02 for g, w in zip(got, want))
        parts.append(f"d={format_length(d)} " + "/".join(pct(g) for g in got)
                     + " vs " + "/".join(f"{100 * w:.0f}%" for w in want))
    report("C3 Drude vs plasma (Au, +-2 pp)", ok, "; ".join(parts), t0)


def test_c4_titanium_values():
    t0 = time.time()
    v05 = point("Ti", "drude", 20 * NM, 0.5 * UM).delta_p_neq
    v1 = point("Ti", "drude", 20 * NM, 1 * UM).delta_p_neq
    ok05 = abs(v05 / -3.04e-6 - 1) <= 0.08
    ok1 = abs(v1 / -0.17e-6 - 1) <= 0.20
    report("C4 Ti d=20nm proper nonequilibrium term", ok05 and ok1,
           f"a=0.5um {v05 * 1e6:.3f} uPa vs -3.04 +-8% [{'ok' if ok05 else 'off'}]; "
           f"a=1um {v1 * 1e6:.3f} uPa vs -0.17 +-20% [{'ok' if ok1 else 'off'}]", t0)


def test_c5_ratio():
    t0 = time.time()
    au = point("Au", "drude", 20 * NM, 2 * UM)
    ti = point("Ti", "drude", 1 * UM, 2 * UM)
    ok_au = 0.03 <= au.ratio_delta_over_total <= 0.05 and au.delta_p_neq > 0
    ok_ti = 0.02 <= ti.ratio_delta_over_total <= 0.04
    report("C5 ratio dP_neq/|P_neq| at a=2um", ok_au and ok_ti,
           f"Au 20nm {pct(au.ratio_delta_over_total)} (dP_neq {'>' if au.delta_p_neq > 0 else '<='} 0) "
           f"in [3,5]%; Ti 1um {pct(ti.ratio_delta_over_total)} in [2,4]%", t0)


def zero_crossing(material, a, lo, hi):
    cfg = SystemConfig.similar(material, "drude", lo, a)
    try:
        return find_zero_thickness(cfg, lo, hi, 0.05 * NM, TOL)
    except NoZeroCrossing:
        return None


def test_c6_zero_crossings():
    t0 = time.time()
    parts, ok = [], True
    # bracket wide enough to locate the crossing even if it misses the target window
    for a, want in ((0.5 * UM, 22.1 * NM), (1 * UM, 21.1 * NM)):
        d = zero_crossing("Ti", a, 20 * NM, 40 * NM)
        good = d is not None and abs(d - want) <= 0.5 * NM
        ok &= good
        got = "none in [20,40] nm" if d is None else f"{d / NM:.2f} nm"
        parts.append(f"Ti a={a / UM:g}um {got} vs {want / NM:.1f}+-0.5 nm [{'ok' if good else 'off'}]")
    for a in (0.5 * UM, 1 * UM):
        d = zero_crossing("Au", a, 20 * NM, 1 * UM)
        ok &= d is None
        parts.append(f"Au a={a / UM:g}um {'no crossing' if d is None else f'{d / NM:.2f} nm'}")
    report("C6 zero-crossing thickness", ok, "; ".join(parts), t0)


def test_c7_equilibrium_modification():
    t0 = time.time()
    parts, ok = [], True
    for material, d, bound in (("Au", 20 * NM, 1e-3), ("Au", 1 * UM, 1e-3), ("Ti", 20 * NM, 7e-3)):
        vals = [delta_eq_rel(SystemConfig.similar(material, "drude", d, a), TOL) for a in GRID7]
        worst = max(abs(v) for v in vals)
        a_worst = GRID7[int(np.argmax(np.abs(vals)))]
        good = worst < bound
        ok &= good
        parts.append(f"{material} {format_length(d)} max {pct(worst)} at {a_worst / UM:g}um "
                     f"(< {pct(bound)}) [{'ok' if good else 'off'}]")
    report("C7 |dP_eq| bounds", ok, "; ".join(parts), t0)


def test_c8_property_suite():
    t0 = time.time()
    checks = {}
    ti = SystemConfig.similar("Ti", "drude", 20 * NM, 0.5 * UM)
    au = SystemConfig.similar("Au", "drude", 20 * NM, 1 * UM)

    p, ps = pressure_eq_tilde(ti, TOL), pressure_eq_tilde(ti.swapped(), TOL)
    d, ds = sum(delta_pneq(ti, TOL)), sum(delta_pneq(ti.swapped(), TOL))
    checks["swap"] = abs(ps / p - 1) <= 1e-10 and abs(ds / d - 1) <= 1e-10

    b = point("Au", "drude", 20 * NM, 1 * UM)
    checks["additivity"] = (b.p_neq == b.p_eq_tilde + b.delta_p_neq
                            and b.delta_p_neq == b.delta_prop + b.delta_evan)

    eq = run_point(au.replace(t2=300.0), TOL)
    checks["T1=T2"] = (eq.p_neq == pressure_eq(au.separation, 300.0, au.upper)
                       and eq.delta_p_neq == 0.0)

    # gamma -> 0: Drude with the gamma table scaled by 0.01 against plasma
    scaled = run_point(au.replace(material=MATERIALS["Au"].scaled(0.01)), TOL)
    plasma = point("Au", "plasma", 20 * NM, 1 * UM)
    gap = abs(scaled.p_neq - plasma.p_neq)
    allowed = 3 * TOL * (abs(scaled.p_neq) + abs(plasma.p_neq))
    checks["gamma->0"] = gap <= allowed

    coarse, fine = sum(delta_pneq(ti, 2 * TOL)), d
    checks["tol halving"] = abs(fine - coarse) <= 2 * TOL * abs(fine)

    x_hi = thermal_cutoff(ti.t1, ti.t2)
    checks["omega cutoff"] = abs(sum(delta_pneq(ti, TOL, x_max=2 * x_hi)) - d) < TOL / 10 * abs(d)
    checks["omega_min"] = abs(sum(delta_pneq(ti, TOL, x_min=X_MIN_PER_TOL * TOL / 10)) - d) < TOL * abs(d)

    detail = ", ".join(f"{k} {'ok' if v else 'FAIL'}" for k, v in checks.items())
    detail += f" (gamma->0 gap {gap / abs(plasma.p_neq):.2%} of |P_plasma|, allowed {allowed / abs(plasma.p_neq):.1e})"
    report("C8 property suite", all(checks.values()), detail, t0)


def test_c9_oracles():
    t0 = time.time()
    zeta3 = 1.2020569031595942
    cfg = SystemConfig.similar("Au", "drude", 20 * NM, 1 * UM)
    term = matsubara_terms(cfg, 1, TOL)[0].value
    exact = -K_B * 300.0 * zeta3 / (16 * math.pi * UM**3)
    ok_term = abs(term / exact - 1) <= 1e-8
    p0 = pressure_ideal(1 * UM)
    p0_ref = -math.pi**2 * constants.hbar * constants.c / (240 * UM**4)
    ok_p0 = abs(p0 / p0_ref - 1) <= 1e-6 and round(p0 * 1e3, 4) == -1.3001
    q1 = integrate_adaptive(lambda x: x**2 / np.expm1(x), 1e-300, 40.0, rel_tol=1e-10).value
    q2 = integrate_semiinfinite(lambda t: t**3 / np.expm1(np.maximum(t, 1e-300)), 1.0,
                                rel_tol=1e-10).value
    ok_q = abs(q1 / (2 * zeta3) - 1) <= 1e-10 and abs(q2 / (math.pi**4 / 15) - 1) <= 1e-10
    report("C9 oracles", ok_term and ok_p0 and ok_q,
           f"l=0 TM term rel err {abs(term / exact - 1):.1e}; P0(1um) = {p0 * 1e3:.6f} mPa; "
           f"2zeta(3) err {abs(q1 / (2 * zeta3) - 1):.1e}, pi^4/15 err {abs(q2 / (math.pi**4 / 15) - 1):.1e}",
           t0)


# figure-shape regressions


def test_fig2_shape():
    t0 = time.time()
    ok, notes = True, []
    for material in ("Au", "Ti"):
        for d in THICKNESSES:
            pl = [abs(point(material, "plasma", d, a).p_neq) for a in GRID7]
            dr = [abs(point(material, "drude", d, a).p_neq) for a in GRID7]
            ok &= all(x > y for x, y in zip(pl, pl[1:])) and all(x > y for x, y in zip(dr, dr[1:]))
            ok &= all(x < y for x, y in zip(dr, pl))
    # Au: the two thicknesses are drawn as one line per model on a log axis
    # spanning two decades; near-coincidence is taken as within 10% (0.04 decade)
    spread, where = max(
        (abs(point("Au", m, 20 * NM, a).p_neq / point("Au", m, 1 * UM, a).p_neq - 1), (m, a))
        for m in ("plasma", "drude") for a in GRID7)
    ok &= spread < 0.10
    notes.append(f"|P_neq| decreasing, Drude < plasma; Au 20nm vs 1um differ by at most "
                 f"{pct(spread)} ({where[0]}, a={where[1] / UM:g}um)")
    report("Fig2 shape", ok, "; ".join(notes), t0)


def test_fig3_shape():
    t0 = time.time()
    ok = True
    for a in GRID7:
        over = {(m, d): point(mat, m, d, a).p_neq / pressure_ideal(a)
                for mat in ("Au",) for m in ("plasma", "drude", "drude-fixed:300") for d in THICKNESSES}
        ok &= min(over[("plasma", d)] for d in THICKNESSES) > max(over[("drude", d)] for d in THICKNESSES)
        for m in ("plasma", "drude"):
            ok &= over[(m, 20 * NM)] < over[(m, 1 * UM)]
        for d in THICKNESSES:
            ti_pl = point("Ti", "plasma", d, a).p_neq / pressure_ideal(a)
            ti_dr = point("Ti", "drude", d, a).p_neq / pressure_ideal(a)
            ok &= ti_pl > ti_dr > 0
            # dashed line sits next to its solid Drude line
            ok &= abs(over[("drude-fixed:300", d)] - over[("drude", d)]) < 0.1 * over[("drude", d)]
    report("Fig3 shape", ok, "Au: plasma pair above Drude pair, 20nm below 1um; Ti: plasma above "
           "Drude in each pair; fixed-gamma lines beside the Drude lines", t0)


def test_fig4_shape():
    t0 = time.time()
    order = (("Au", 1 * UM), ("Au", 20 * NM), ("Ti", 1 * UM), ("Ti", 20 * NM))
    ok = True
    for a in GRID7:
        vals = [delta_eq_rel(SystemConfig.similar(m, "drude", d, a), TOL) for m, d in order]
        ok &= all(x > y for x, y in zip(vals, vals[1:]))
    report("Fig4 shape", ok, "top to bottom: Au 1um, Au 20nm, Ti 1um, Ti 20nm at every separation", t0)


def test_fig5_shape():
    t0 = time.time()
    ok = True
    signed = {}
    for material in ("Au", "Ti"):
        for d in THICKNESSES:
            signed[(material, d)] = [point(material, "drude", d, a).delta_p_neq
                                     / point(material, "drude", d, a).p_neq for a in GRID7]
    ok &= all(x > y for x, y in zip(signed[("Au", 1 * UM)], signed[("Au", 20 * NM)]))
    ok &= all(x > y for x, y in zip(signed[("Ti", 20 * NM)], signed[("Ti", 1 * UM)]))
    ok &= all(point("Au", "drude", d, a).delta_p_neq > 0 for d in THICKNESSES for a in GRID7)
    ti = [point("Ti", "drude", 20 * NM, a).delta_p_neq for a in GRID7]
    ok &= ti[0] < 0 < ti[-1]
    flips = [GRID7[i] for i in range(6) if (ti[i] < 0) != (ti[i + 1] < 0)]
    report("Fig5 shape", ok,
           "line order as drawn; Au dP_neq > 0 throughout; Ti 20nm dP_neq changes sign once, "
           f"between {flips[0] / UM:g} and {flips[0] / UM + 0.25:g} um (reference: 1.19 um)" if len(flips) == 1
           else f"Ti 20nm sign changes: {len(flips)}", t0)


def test_fig6_shape():
    t0 = time.time()
    d_grid = (20 * NM, 30 * NM, 44 * NM, 60 * NM, 100 * NM, 160 * NM, 250 * NM, 500 * NM, 1 * UM)
    ok, notes = True, []
    curves = {(m, a): [point(m, "drude", d, a).delta_p_neq for d in d_grid]
              for m in ("Au", "Ti") for a in (0.5 * UM, 1 * UM)}
    for a in (0.5 * UM, 1 * UM):
        ok &= all(v > 0 for v in curves[("Au", a)])
        ok &= all(x > y for x, y in zip(curves[("Au", a)], curves[("Ti", a)]))
        ti = curves[("Ti", a)]
        ok &= ti[0] < 0 < ti[-1]
        for m in ("Au", "Ti"):
            depth = 2.99792458e8 / MATERIALS[m].omega_p
            d_max = d_grid[int(np.argmax(curves[(m, a)]))]
            ok &= 0.5 < d_max / (2 * depth) < 2
            notes.append(f"{m} a={a / UM:g}um peak near {d_max / NM:g} nm (2 c/wp = {2 * depth / NM:.0f} nm)")
    for m in ("Au", "Ti"):
        ok &= all(x > y for x, y in zip(curves[(m, 0.5 * UM)][-4:], curves[(m, 1 * UM)][-4:]))
    report("Fig6 shape", ok, "Au > 0 and above Ti; Ti negative at 20 nm; " + "; ".join(notes), t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
