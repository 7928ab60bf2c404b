"""
Integration Tests for the Verification Battery
"""
import json

import pytest

from src.analysis import verify
from src.analysis.evaluators import EvaluationContext
from src.core.cli import EXIT_OK, main
from src.core.config import RunConfig
from src.core.errors import QuadratureFailure
from src.core.schemas import VerificationReport
from src.physics.geometry import Waveguide


@pytest.fixture
def battery():
    cfg = RunConfig(workers=1)
    wg = Waveguide(b1=cfg.b1, b2=cfg.b2)
    return verify.Battery(config=cfg, waveguide=wg, ctx=EvaluationContext(waveguide=wg, spec=cfg.quadrature_spec()))


class TestIndividualChecks:
    """Test the fast checks one at a time"""

    @pytest.mark.parametrize("check", [
        verify.check_propagator_anchor,
        verify.check_connection_constant,
        verify.check_asymptotic_form,
        verify.check_synthetic_fits,
        verify.check_kernel_oracles,
        verify.check_recurrence,
        verify.check_boost_defect,
        verify.check_basis_exactness,
        verify.check_s_ij_identities,
    ])
    def test_passes(self, battery, check):
        record = check(battery)
        assert record.status == "passed", record.model_dump()
        assert record.assertable

    def test_basis_identity(self, battery):
        record = verify.check_basis_identity(battery)
        assert record.status == "passed"
        assert len(record.table) == 25
        assert record.details["unboosted_max_rel_diff"] > record.measured

    def test_spacelike_law(self, battery):
        record = verify.check_spacelike_law(battery)
        assert record.status == "passed"
        assert record.details["exponent_fit"]["window"][0] >= 10.0 / battery.omega_c - 1e-12

    def test_timelike_law(self, battery):
        assert verify.check_timelike_law(battery).status == "passed"

    def test_determinism(self, battery):
        assert verify.check_determinism(battery).status == "passed"


class TestMeasurements:
    """Test the discrepancy tables, which are reported and never asserted"""

    def test_propagator_vs_standard_hankel(self, battery):
        record = verify.measure_propagator_discrepancy(battery)
        assert record.status == "measured"
        assert not record.assertable
        assert len(record.table) == 12

    def test_printed_vs_rederived(self, battery):
        record = verify.measure_printed_vs_rederived(battery)
        assert record.status == "measured"
        assert record.measured > 1e-3

    def test_completion(self, battery):
        record = verify.measure_completion(battery)
        assert [row["z"] for row in record.table] == [0.5, 1.0, 2.0, 5.0, 10.0]
        assert record.measured < 1e-8


class TestGuards:
    """Test how failures are recorded"""

    def test_quadrature_failure_kept_apart(self, battery):
        def failing(b):
            raise QuadratureFailure("not converged")

        record = verify._guarded("anchor", failing, battery)({})
        assert record.status == "quadrature_failure"
        assert "not converged" in record.message

    def test_other_errors(self, battery):
        def failing(b):
            raise ZeroDivisionError("oops")

        record = verify._guarded("anchor", failing, battery)({})
        assert record.status == "error"

    def test_graph_shape(self, battery):
        graph = verify.build_graph(battery)
        assert set(graph.nodes) == {name for name, _ in verify.CHECKS}
        order = graph.toposort()
        assert order.index("connection_constant") < order.index("spacelike_law")
        assert order.index("basis_identity") < order.index("derivative_consistency")


@pytest.mark.slow
class TestFullBattery:
    """Test the complete battery through the CLI"""

    def test_default_config_passes(self, capsys, tmp_path):
        target = tmp_path / "verify.json"
        code = main(["verify", "--out", str(target)])
        err = capsys.readouterr().err
        report = VerificationReport.model_validate_json(target.read_text(encoding="utf-8"))
        assert code == EXIT_OK, err
        assert report.passed
        assert report.n_failed == 0
        assert report.n_measured == 4
        assert all(check.status in ("passed", "measured") for check in report.checks)
        assert "[1/" in err

    def test_tight_tolerance_reports_distinctly(self, capsys):
        main(["verify", "--rel-tol", "1e-14", "--quiet"])
        payload = json.loads(capsys.readouterr().out)
        statuses = {check["status"] for check in payload["checks"]}
        assert statuses <= {"passed", "failed", "measured", "quadrature_failure", "error", "skipped"}
        assert "error" not in statuses
