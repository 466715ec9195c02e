import math
from dataclasses import replace

import numpy as np
import pytest

from rotstar import InvalidParams, Limits, TerminationKind, continue_family, mass_slope_check
from rotstar.continuation import (
    CSV_HEADER,
    FamilyRecord,
    Termination,
    _classify,
    read_family_csv,
    records_array,
    slope_is_degenerate,
    write_family_csv,
)
from rotstar.scf import Diagnostics


def test_tiny_kappa_max_gives_seed_only(seed_gamma15_small):
    seed, rot, opts = seed_gamma15_small
    recs, term = continue_family(seed, rot, 0.05 / 2, 0.05, 0.01, opts)
    assert len(recs) == 1 and recs[0].kappa == 0.0
    assert term.kind is TerminationKind.MaxKappaReached


def test_forced_failure(seed_gamma15_small):
    seed, rot, opts = seed_gamma15_small
    recs, term = continue_family(seed, rot, 1.0, 0.05, 0.05, replace(opts, max_iter=1))
    assert len(recs) == 1
    assert term.kind is TerminationKind.ConvergenceFailure


def test_bad_steps_rejected(seed_gamma15_small):
    seed, rot, opts = seed_gamma15_small
    with pytest.raises(InvalidParams):
        continue_family(seed, rot, 1.0, 0.01, 0.05, opts)


def test_limits_validation():
    with pytest.raises(InvalidParams):
        Limits(support_frac=1.0)
    with pytest.raises(InvalidParams):
        Limits(rho_factor=1.0)


def test_classification_precedence(seed_gamma15_small):
    seed = seed_gamma15_small[0]
    g = seed.grid
    both = replace(seed, diagnostics=Diagnostics(0.99 * g.rmax, 1.0, 100.0, 1.0))
    assert _classify(both, 1.0, Limits()).kind is TerminationKind.SupportBlowup
    dense = replace(seed, diagnostics=Diagnostics(1.0, 1.0, 100.0, 1.0), alpha=0.0)
    assert _classify(dense, 1.0, Limits()).kind is TerminationKind.DensityBlowup
    near = replace(seed, alpha=-0.5 * seed.eps_boundary)
    assert _classify(near, seed.diagnostics.max_rho, Limits()).kind is TerminationKind.BoundaryProximity
    assert _classify(seed, seed.diagnostics.max_rho, Limits()) is None


def test_mass_slope_values():
    assert mass_slope_check(2.0, 1.0) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-6)
    assert abs(mass_slope_check(4 / 3, 1.0)) < 1e-6
    slopes = [mass_slope_check(1.5, a) for a in np.linspace(0.5, 2.0, 7)]
    assert all(s > 0 for s in slopes)


def test_degenerate_slope_refuses_to_start(seed_gamma15_small):
    seed, rot, opts = seed_gamma15_small
    fake = replace(seed, gamma=4 / 3)
    with pytest.warns(UserWarning, match="not theoretically grounded"):
        with pytest.raises(InvalidParams):
            continue_family(fake, rot, 1.0, 0.05, 0.01, opts)
    assert slope_is_degenerate(4 / 3, 1.0)
    assert not slope_is_degenerate(1.5, 1.0)


def test_step_halving_continuity(seed_gamma15_small):
    """Sup-density jumps between consecutive records shrink with the step."""
    seed, rot, opts = seed_gamma15_small
    jumps = []
    for step in (0.1, 0.05, 0.025):
        recs, term = continue_family(seed, rot, 0.2, step, step / 8, opts)
        assert term.kind is TerminationKind.MaxKappaReached
        rho = records_array(recs)["max_rho"]
        jumps.append(np.max(np.abs(np.diff(rho))))
    assert jumps[0] > jumps[1] > jumps[2]


def test_csv_roundtrip(tmp_path):
    recs = [FamilyRecord(0.0, -0.5, 1.0, 1.2, 1.2, 1.5, 1e-9, 0.0, 12),
            FamilyRecord(0.1, -0.49, 0.98, 1.25, 1.2, 1.4, 2e-9, 1e-17, 20)]
    path = tmp_path / "f.csv"
    write_family_csv(path, recs, Termination(TerminationKind.MaxKappaReached))
    text = path.read_text().splitlines()
    assert text[0] == CSV_HEADER
    assert text[-1] == "# termination=MaxKappaReached"
    back, kind = read_family_csv(path)
    assert back == recs and kind == "MaxKappaReached"
