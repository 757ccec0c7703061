"""Band sweeps, classification and the structural check operations."""

import numpy as np
import pytest

from hankelbands import (
    BandBranch,
    TrackingError,
    band_interval,
    carleman_oracle,
    check_alternation,
    check_disjointness,
    classify_flat,
    crossing_analysis,
    gronwall_envelope_check,
    local_branches,
    mathieu_symbol,
    period_doubling_check,
    sweep,
)
from hankelbands.bands import order_by_modulus


def carleman_rank_index(j):
    # paper-style modulus ordering of the diagonal values on (0, omega/2):
    # ranked branch j corresponds to lattice index n = +-ceil(j/2)
    return (j + 1) // 2 * (1 if j % 2 == 0 else -1)


def test_carleman_branches_match_oracle(carleman, k_grid):
    branches = sweep(carleman, 40, k_grid, 6)
    pos = [b for b in branches if b.sign == "+"]
    assert len(pos) == 6
    assert not any(b.sign == "-" for b in branches)   # positive semi-definite
    for j, b in enumerate(pos):
        n = carleman_rank_index(j)
        for k, v in zip(b.k, b.values):
            oracle = carleman_oracle(1.0, n, k)
            assert abs(v - oracle) < 1e-8 * oracle
        assert not b.flat
    # alternation of monotonicity with rank
    assert pos[0].monotonicity == "decreasing"
    assert pos[1].monotonicity == "increasing"
    assert pos[2].monotonicity == "decreasing"


def test_carleman_oracle_values():
    assert carleman_oracle(1.0, 0, 0.0) == pytest.approx(np.pi, rel=1e-14)
    assert carleman_oracle(1.0, 0, 40.0) < 1e-50
    assert carleman_oracle(1.0, -1, 0.3) == pytest.approx(carleman_oracle(1.0, 1, -0.3))


def test_carleman_band_edges(carleman, k_grid):
    branches = sweep(carleman, 40, k_grid, 6)
    bands = [band_interval(b) for b in branches]
    omega = 1.0
    # top band [pi/cosh(pi w/2), pi]
    assert bands[0].hi == pytest.approx(np.pi, rel=1e-10)
    assert bands[0].lo == pytest.approx(np.pi / np.cosh(np.pi * omega / 2), rel=1e-10)
    # consecutive bands share exactly one endpoint (all gaps closed)
    for a, b in zip(bands[:-1], bands[1:]):
        shared = min(abs(a.lo - b.hi), abs(a.hi - b.lo))
        assert shared < 1e-10


def test_classify_flat_synthetic():
    k = np.linspace(0, 0.5, 33)
    const = BandBranch(0, "+", k, np.full(33, 0.7))
    assert classify_flat(const, 1e-8)
    wiggly = BandBranch(0, "+", k, 0.7 + 1e-3 * np.sin(k))
    assert not classify_flat(wiggly, 1e-8)
    with pytest.raises(ValueError, match="8"):
        classify_flat(BandBranch(0, "+", k[:4], np.ones(4)), 1e-8)


def test_mathieu_all_flat_at_zero(k_grid):
    branches = sweep(mathieu_symbol(0.0, 1.0), 60, k_grid, 8)
    assert all(b.flat for b in branches)
    # spectrum is symmetric, so the tracked window pairs up evenly
    assert sum(b.sign == "+" for b in branches) == sum(b.sign == "-" for b in branches)
    assert len(order_by_modulus(branches)) >= 8


def test_mathieu_no_flat_at_two(k_grid):
    branches = sweep(mathieu_symbol(2.0, 1.0), 60, k_grid, 6)
    assert not any(b.flat for b in branches)
    top = order_by_modulus(branches)[0]
    assert top.monotonicity == "decreasing"


def test_sweep_grid_validation(carleman):
    with pytest.raises(ValueError, match="interior"):
        sweep(carleman, 40, np.linspace(0, 0.5, 20), 4)
    with pytest.raises(ValueError, match="span"):
        sweep(carleman, 40, np.linspace(0.0, 0.4, 50), 4)


def test_sweep_tracking_error_names_branch(carleman):
    # m_top deeper than the spectrum above the floor at N=6 forces a miss
    with pytest.raises(TrackingError, match="branch"):
        sweep(carleman, 6, np.linspace(0, 0.5, 40), 40, value_floor_rel=1e-3)


def test_alternation_carleman(carleman, k_grid):
    rep = check_alternation(sweep(carleman, 40, k_grid, 6))
    assert rep.ok, rep.violations


def test_alternation_mathieu_two(k_grid):
    rep = check_alternation(sweep(mathieu_symbol(2.0, 1.0), 60, k_grid, 6))
    assert rep.ok, rep.violations


def test_alternation_skipped_when_all_flat(k_grid):
    rep = check_alternation(sweep(mathieu_symbol(0.0, 1.0), 60, k_grid, 4))
    assert rep.skipped


def test_disjointness_carleman_touching(carleman, k_grid):
    bands = [band_interval(b) for b in sweep(carleman, 40, k_grid, 6)]
    rep = check_disjointness(bands)
    assert rep.ok, rep.violations


def test_disjointness_mathieu_strict_gaps(k_grid):
    bands = [band_interval(b) for b in sweep(mathieu_symbol(0.7, 1.0), 60, k_grid, 4)]
    rep = check_disjointness(bands)
    assert rep.ok, rep.violations
    gaps = [
        a.lo - b.hi
        for a, b in zip(bands[:-1], bands[1:])
        if a.sign == "+" and b.sign == "+"
    ]
    assert all(g > 0 for g in gaps)


def test_disjointness_flat_pairs(k_grid):
    bands = [band_interval(b) for b in sweep(mathieu_symbol(0.0, 1.0), 60, k_grid, 6)]
    rep = check_disjointness(bands)
    assert rep.ok, rep.violations
    assert rep.info["flat_count"] == (6, 6)


def test_disjointness_detects_overlap():
    from hankelbands import SpectralBand
    bands = [SpectralBand(0.1, 0.5, False, "+", 0), SpectralBand(0.4, 0.8, False, "+", 1)]
    rep = check_disjointness(bands)
    assert not rep.ok
    assert rep.violations[0]["kind"] == "interior-overlap"


def test_gronwall_envelope_on_real_branches(carleman, k_grid):
    for b in sweep(carleman, 40, k_grid, 6):
        assert gronwall_envelope_check(b)
    for b in sweep(mathieu_symbol(0.5, 1.0), 60, k_grid, 4):
        assert gronwall_envelope_check(b)


def test_gronwall_envelope_flat_branch_trivial():
    k = np.linspace(0, 0.5, 33)
    assert gronwall_envelope_check(BandBranch(0, "+", k, np.full(33, 0.3)))


def test_gronwall_envelope_rejects_fast_rate():
    # decay rate 4 > pi violates the envelope
    k = np.linspace(0, 0.5, 33)
    bad = BandBranch(0, "+", k, np.exp(-4.0 * k))
    assert not gronwall_envelope_check(bad)


def test_crossing_analysis_carleman_at_zero(carleman):
    branches = local_branches(carleman, 40, 4, 0.0, h=1e-3)
    infos = crossing_analysis(branches, 0.0)
    by_kind = {}
    for info in infos:
        by_kind.setdefault(info.kind, []).append(info)
    # top branch: lone non-degenerate maximum at k=0
    extrema = [i for i in by_kind.get("extremum", []) if 0 in i.branch_ids]
    assert extrema and extrema[0].ok
    assert extrema[0].second_derivative < 0
    # branches 1 and 2 cross transversally at k=0 with opposite slopes
    trans = by_kind.get("transversal", [])
    assert any(set(t.branch_ids) == {1, 2} and t.ok for t in trans)


def test_crossing_analysis_carleman_at_half(carleman):
    omega = 1.0
    branches = local_branches(carleman, 40, 4, omega / 2, h=1e-3)
    infos = crossing_analysis(branches, omega / 2)
    trans = [i for i in infos if i.kind == "transversal"]
    assert any(set(t.branch_ids) == {0, 1} and t.ok for t in trans)


def test_crossing_analysis_mathieu_no_crossings():
    sym = mathieu_symbol(0.7, 1.0)
    branches = local_branches(sym, 60, 3, 0.0, h=1e-3)
    infos = crossing_analysis(branches, 0.0)
    assert all(i.kind == "extremum" for i in infos)
    assert all(i.ok for i in infos)


@pytest.mark.parametrize("builder,N", [("carleman", 40), ("mathieu", 60)])
def test_period_doubling(builder, N, carleman):
    sym = carleman if builder == "carleman" else mathieu_symbol(0.5, 1.0)
    for k in (0.0, 0.2):
        assert period_doubling_check(sym, k, N, 10) < 1e-9


def test_period_doubling_flat_multiplicities(k_grid):
    # at A=0 each flat value of the doubled operator has twice the multiplicity
    sym = mathieu_symbol(0.0, 1.0)
    assert period_doubling_check(sym, 0.1, 50, 8) < 1e-9


def test_eigenvalue_accumulation_at_zero(carleman, k_grid):
    branches = sweep(carleman, 40, k_grid, 8)
    mid = len(k_grid) // 2
    vals = sorted((abs(b.values[mid]) for b in branches), reverse=True)
    assert vals[-1] <= 1e-3 * vals[0]


def test_strict_interior_monotonicity(carleman, k_grid):
    # no vanishing finite-difference slope on the open interval
    for sym, N in ((carleman, 40), (mathieu_symbol(0.7, 1.0), 60)):
        for b in sweep(sym, N, k_grid, 4):
            if b.flat:
                continue
            v, k = b.values, b.k
            slope = (v[2:] - v[:-2]) / (k[2:] - k[:-2])
            assert np.min(np.abs(slope)) > 1e-10
