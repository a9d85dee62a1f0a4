import math
import os
from importlib import resources

import numpy as np
import pytest

from zdc import compare as cmp
from zdc.foundations import DomainError
from zdc.params import RangeSpec
from zdc.pipeline import DensityEstimate

# Synthetic constants for exercising the machinery only -- not the published values.
SYNTHETIC_CSV = """# synthetic test table
sigma,C1,C2
0.985,1.0e6,5.0e3
0.990,2.0e6,6.0e3
0.993,3.0e6,7.0e3
"""

needs_kln = pytest.mark.skipif(not os.environ.get(cmp.KLN_ENV),
                               reason=f"external data required: set {cmp.KLN_ENV}")


@pytest.fixture
def synthetic(tmp_path):
    path = tmp_path / "kln.csv"
    path.write_text(SYNTHETIC_CSV)
    return cmp.read_kln_csv(path)


def test_reader_and_step_lookup(synthetic):
    assert synthetic.sigmas == (0.985, 0.99, 0.993)
    assert synthetic.c1(0.985) == 1e6
    assert synthetic.c1(0.9899) == 1e6
    assert synthetic.c1(0.99) == 2e6
    assert synthetic.c2(1.0) == 7e3
    assert synthetic.c1_min(0.991) == 2e6
    with pytest.raises(DomainError):
        synthetic.c1(0.98)


def test_template_is_empty():
    template = resources.files("zdc") / "data" / "kln_template.csv"
    with pytest.raises(cmp.ExternalDataRequired, match="external data required"):
        cmp.read_kln_csv(template)


def test_missing_columns(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("sigma,C1\n0.99,1\n")
    with pytest.raises(cmp.ExternalDataRequired):
        cmp.read_kln_csv(path)


def test_bad_number(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("sigma,C1,C2\n0.99,abc,1\n")
    with pytest.raises(ValueError):
        cmp.read_kln_csv(path)


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        cmp.read_kln_csv(tmp_path / "nope.csv")


def test_load_without_source(monkeypatch):
    monkeypatch.delenv(cmp.KLN_ENV, raising=False)
    with pytest.raises(cmp.ExternalDataRequired):
        cmp.load_kln()


def test_table_validation():
    with pytest.raises(ValueError):
        cmp.KlnConstants((0.99, 0.985), (1.0, 1.0), (1.0, 1.0))
    with pytest.raises(ValueError):
        cmp.KlnConstants((0.99,), (-1.0,), (1.0,))


def test_identical_bounds_give_zero(synthetic):
    sigma, log_t = 0.99, 100.0
    theirs = cmp.kln_log_bound(synthetic, sigma, log_t)
    same = DensityEstimate(B=0.0, C1_part=math.exp(theirs), C2_part=0.0)
    assert cmp.improvement_percent(sigma, log_t, same, synthetic) == pytest.approx(0.0, abs=1e-10)


def test_regimes(reproduced, synthetic):
    first = reproduced[0]
    rep = cmp.check_dominance(first.row.spec, first.result.estimate, synthetic)
    assert rep.regime == "sigma-condition" and rep.passed
    big = reproduced[32]  # (e^500, e^1000], B = 2.152 < 8/3
    assert big.result.estimate.B < 8 / 3
    rep = cmp.check_dominance(big.row.spec, big.result.estimate, synthetic)
    assert rep.regime == "log-cube" and rep.passed


def test_inflated_C_fails(reproduced, synthetic):
    big = reproduced[32]
    est = big.result.estimate
    inflated = DensityEstimate(est.B, est.C1_part * 1e10, est.C2_part * 1e10)
    rep = cmp.check_dominance(big.row.spec, inflated, synthetic)
    assert not rep.passed and rep.worst_margin < 0


def test_direct_grid_regime(synthetic):
    spec = RangeSpec(400.0, 600.0, 0.985)
    est = DensityEstimate(3.0, 10.0, 10.0)
    rep = cmp.check_dominance(spec, est, synthetic)
    assert rep.regime == "direct-grid"


@pytest.mark.parametrize("index", [0, 10, 20, 30, 32, 37])
def test_dominance_implies_improvement(reproduced, synthetic, index):
    r = reproduced[index]
    spec, est = r.row.spec, r.result.estimate
    assert cmp.check_dominance(spec, est, synthetic).passed
    rng = np.random.default_rng(index)
    for sigma, log_t in zip(rng.uniform(spec.alpha0, 1, 100), rng.uniform(spec.log_t0, spec.log_t1, 100)):
        if log_t > spec.log_t0:
            assert cmp.improvement_percent(sigma, log_t, est, synthetic) > 0


def test_table1_points_map_to_rows(reproduced):
    specs = [r.row.spec for r in reproduced[:38]]
    rows = [cmp.row_index_for(specs, s, L) for s, L, _ in cmp.TABLE1_POINTS]
    assert rows == [1, 17, 30, 17, 30, 22, 22, 22]
    with pytest.raises(DomainError):
        cmp.row_index_for(specs, 0.98, 40.0)


def test_printed_improvement_grows_with_height():
    at_0993 = sorted((L, imp) for s, L, imp in cmp.TABLE1_POINTS if s == 0.9930)
    values = [imp for _, imp in at_0993]
    assert values == sorted(values)


# --- with user-supplied constants ----------------------------------------------

@needs_kln
def test_dominance_every_published_row(reproduced):
    kln = cmp.load_kln()
    for r in reproduced[:38]:
        assert cmp.check_dominance(r.row.spec, r.result.estimate, kln).passed, r.index


@needs_kln
def test_table1_improvements(reproduced):
    kln = cmp.load_kln()
    specs = [r.row.spec for r in reproduced[:38]]
    computed = []
    for sigma, log_t, printed in cmp.TABLE1_POINTS:
        est = reproduced[cmp.row_index_for(specs, sigma, log_t)].result.estimate
        value = cmp.improvement_percent(sigma, log_t, est, kln)
        computed.append((sigma, log_t, value))
        assert value == pytest.approx(printed, abs=1.0)
    at_0993 = [v for s, _, v in sorted(computed, key=lambda c: c[1]) if s == 0.9930]
    assert at_0993 == sorted(at_0993)
