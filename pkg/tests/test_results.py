import math

import numpy as np
import pytest

from compas_pbiharmonic.model import ConstantWeight
from compas_pbiharmonic.model import GridFunction
from compas_pbiharmonic.model import ProblemSpec
from compas_pbiharmonic.postprocess import Check
from compas_pbiharmonic.postprocess import VerifyReport
from compas_pbiharmonic.results import Eigenpair
from compas_pbiharmonic.results import SpectrumDatabase
from compas_pbiharmonic.results import SpectrumTable
from compas_pbiharmonic.results import SweepTable


@pytest.fixture
def problem():
    return ProblemSpec(2.0, ConstantWeight(1.0), grid_n=15, resample_n=15)


def make_pair(lam=100.0, k=1, p=2.0):
    values = np.sin(k * np.pi * np.arange(1, 16) / 16.0)
    return Eigenpair(lam, k, p, GridFunction(values), u_prime0=2.0, beta=-8.0, zeros=[j / k for j in range(1, k)])


# ==============================================================================
# eigenpairs
# ==============================================================================


def test_eigenpair_rejects_zero():
    with pytest.raises(ValueError):
        make_pair(lam=0.0)
    with pytest.raises(ValueError):
        Eigenpair(1.0, 1, 2.0, GridFunction([1.0]), engine="finite-elements")


def test_eigenpair_data():
    pair = make_pair(k=2)
    other = Eigenpair.__from_data__(pair.__data__)
    assert other.__data__ == pair.__data__
    assert other.sign == "+"
    assert pair.__data__["lambda"] == 100.0


def test_shoot_beta():
    # beta / phi_p(u'(0)) at p = 3: -8 / 4
    assert make_pair(p=3.0).shoot_beta == pytest.approx(-2.0)


def test_as_negative():
    pair = make_pair()
    negative = pair.as_negative()
    assert negative.sign == "-"
    assert negative.lam == -100.0
    assert np.array_equal(negative.eigenfunction.values, pair.eigenfunction.values)
    assert pair.corrupted(1.1).lam == pytest.approx(110.0)


def test_spectrum_table_data(problem):
    report = VerifyReport([Check("ordering", True, sign="+")])
    table = SpectrumTable(problem, [make_pair(), make_pair(1600.0, 2)], [], "NotAdmissible", {"+1": "ok", "+2": "ok"}, report)
    assert table.eigenvalues("+") == [100.0, 1600.0]
    assert table.branch("-") == []
    other = SpectrumTable.__from_data__(table.__data__)
    assert other.__data__ == table.__data__
    assert other.verify.passed


def test_spectrum_table_rejects_other_documents(problem):
    data = SpectrumTable(problem).__data__
    data["format"] = "something.else"
    with pytest.raises(ValueError):
        SpectrumTable.__from_data__(data)


def test_sweep_table_jumps(problem):
    smooth = [(2.0, 10.0**2.0, 0), (2.05, 10.1**2.05, 0), (2.1, 10.2**2.1, 0)]
    jumpy = [(2.0, 10.0**2.0, 1), (2.05, 11.0**2.05, 1)]
    sweep = SweepTable(problem, {("+", 1): smooth, ("+", 2): jumpy}, jump_threshold=0.05)
    assert max(sweep.jumps("+", 1)) < 0.05
    assert sweep.jumps("+", 2) == [pytest.approx(0.1)]
    assert [v[:2] for v in sweep.violations] == [("+", 2)]
    assert not sweep.passed
    other = SweepTable.__from_data__(sweep.__data__)
    assert other.curves == sweep.curves


def test_sweep_table_coarse_steps_are_rescaled(problem):
    # a 10% change over 0.5 in p is 1% per 0.05
    sweep = SweepTable(problem, {("+", 1): [(2.0, 10.0**2.0, 0), (2.5, 11.0**2.5, 0)]})
    assert sweep.jumps("+", 1) == [pytest.approx(0.01)]
    assert sweep.passed


def test_sweep_table_zero_count_change(problem):
    sweep = SweepTable(problem, {("+", 1): [(2.0, 100.0, 0), (2.05, 101.0, 1)]}, jump_threshold=1.0)
    assert sweep.zero_count_changes("+", 1) == [(0, 1)]
    assert not sweep.passed


def test_sweep_table_errors(problem):
    sweep = SweepTable(problem, errors={("+", 3): {"error": "StepUnderflow", "last_p": 2.4}})
    assert not sweep.passed
    assert sweep.__data__["errors"] == [{"sign": "+", "k": 3, "error": "StepUnderflow", "last_p": 2.4}]


# ==============================================================================
# checks
# ==============================================================================


def test_report_ignores_advisories():
    report = VerifyReport()
    report.add(Check("residual", True, 1e-12, 1e-7, "+", 1))
    report.add(Check("equi_partition", False, 1e-2, 1e-3, "+", 2, advisory=True))
    assert report.passed
    assert report.failures == []
    assert [c.check for c in report.advisories] == ["equi_partition"]
    report.add(Check("zero_count", False, 2.0, 1.0, "+", 2))
    assert not report.passed
    assert report.__data__["failures"] == ["zero_count [+2]"]
    assert "FAIL" in str(report) and "WARN" in str(report)


def test_check_infinite_values():
    check = Check("simplicity", False, math.inf, 1e-8, "+", 1)
    data = check.__data__
    assert data["value"] == "inf"
    assert Check.__from_data__(data).value == math.inf
    assert check.margin == math.inf


# ==============================================================================
# database
# ==============================================================================


@pytest.fixture
def database(tmp_path):
    db = SpectrumDatabase(str(tmp_path / "spectrum.db"))
    yield db
    db.close()


def test_database_stores_tables(database, problem):
    table = SpectrumTable(problem, [make_pair(), make_pair(1600.0, 2)], [make_pair().as_negative()])
    database.insert_table("constant", table)
    assert "eigenvalues" in database.table_names
    assert database.runs == ["constant"]
    rows = database.get_rows(["sign", "k", "lambda"], {"run": ["constant"]})
    assert rows == [["+", 1, 100.0], ["+", 2, 1600.0], ["-", 1, -100.0]]
    assert database.get_func_row("lambda", "MAX", {"sign": ["+"]}, ["k", "lambda"]) == [2, 1600.0]
    assert database.get_func_row("lambda", "MIN", {"sign": ["x"]}, ["k"]) is None


def test_database_stores_sweeps(database, problem):
    sweep = SweepTable(problem, {("+", 1): [(1.5, 50.0, 0), (2.0, 97.0, 0), (2.5, 180.0, 0)]})
    database.insert_sweep("sweep", sweep)
    database.insert_rows([])
    assert database.get_curve("sweep", "+", 1) == [(1.5, 50.0), (2.0, 97.0), (2.5, 180.0)]
    assert database.get_curve("sweep", "+", 2) == []
