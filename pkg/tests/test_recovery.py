"""
Tests for problem forms, the recovery pipeline and recovery reports.
"""
import json

import numpy as np
import pandas as pd
import pytest

from imaging.test_images import TestImageSpec, generate_test_image
from recovery import (
    ProblemForm,
    RecoveryProblem,
    RecoveryReport,
    RegularizerKind,
    add_measurement_noise,
    build_system,
    measure_for_form,
    reconstruction_matrix,
    recover_image,
    recover_vector,
)
from regularizers.l1_norm import L1Params
from regularizers.total_variation import TvParams
from sensing.observation import ObservationMatrix, generate_observation
from solvers.gradient_solver import ConvergenceTrace, IterationRecord, SolverConfig, SolverMode
from transforms.transform_operator import TransformOperator
from utils.error_handler import ConfigError, DimensionError, DivergenceError

EXACT_NEWTON = SolverConfig(mode=SolverMode.NEWTON, eps_newton=0.0, max_iters=20)
NO_PENALTY = L1Params(lam=0.0)


@pytest.fixture
def dct8():
    return TransformOperator("dct", 8)


class TestReconstructionMatrix:
    def test_forms(self, uniform_obs):
        psi = TransformOperator("dct", 64)
        m0 = uniform_obs.mat
        psi_mat = psi.as_matrix()
        np.testing.assert_array_equal(build_system("a", uniform_obs, psi).matrix, m0)
        np.testing.assert_allclose(build_system("b", uniform_obs, psi).matrix, m0 @ psi_mat)
        np.testing.assert_allclose(build_system("c", uniform_obs, psi).matrix, m0 @ psi_mat.T)
        np.testing.assert_array_equal(build_system("d", uniform_obs, psi).matrix, m0)

    @pytest.mark.parametrize("form", list(ProblemForm))
    def test_identity_basis_degenerates_to_time_domain(self, uniform_obs, form):
        system = build_system(form, uniform_obs, TransformOperator("identity", 64))
        np.testing.assert_array_equal(system.matrix, uniform_obs.mat)

    def test_problem_system(self, uniform_obs):
        problem = RecoveryProblem("a", uniform_obs, np.zeros(12))
        np.testing.assert_array_equal(reconstruction_matrix(problem).matrix, uniform_obs.mat)

    def test_map_back(self, identity_obs):
        psi = TransformOperator("dct", 4)
        z = np.array([1.0, -2.0, 0.0, 0.5])
        np.testing.assert_allclose(build_system("c", identity_obs, psi).to_time_domain(z), psi.inverse(z))
        np.testing.assert_allclose(build_system("d", identity_obs, psi).to_time_domain(z), psi.inverse(z))
        np.testing.assert_array_equal(build_system("b", identity_obs, psi).to_time_domain(z), z)

    def test_measure_for_form(self, uniform_obs, rng):
        psi = TransformOperator("dct", 64)
        f = rng.standard_normal(64)
        np.testing.assert_allclose(measure_for_form("a", uniform_obs, psi, f), uniform_obs.mat @ f)
        np.testing.assert_allclose(measure_for_form("c", uniform_obs, psi, f), uniform_obs.mat @ f)
        np.testing.assert_allclose(measure_for_form("b", uniform_obs, psi, f), uniform_obs.mat @ psi.forward(f))
        np.testing.assert_allclose(measure_for_form("d", uniform_obs, psi, f), uniform_obs.mat @ psi.forward(f))

    def test_basis_size_mismatch(self, uniform_obs):
        with pytest.raises(DimensionError):
            build_system("c", uniform_obs, TransformOperator("dct", 32))


class TestRecoveryProblem:
    def test_defaults(self, uniform_obs):
        problem = RecoveryProblem("a", uniform_obs, np.zeros(12))
        assert problem.form is ProblemForm.TIME_SPARSE_TIME_MEAS
        assert problem.regularizer is RegularizerKind.L1
        assert problem.psi.n == 64
        assert not problem.is_image and problem.columns == 1

    def test_measurement_rows_must_match(self, uniform_obs):
        with pytest.raises(DimensionError):
            RecoveryProblem("a", uniform_obs, np.zeros(11))

    def test_basis_size_must_match(self, uniform_obs):
        with pytest.raises(DimensionError):
            RecoveryProblem("c", uniform_obs, np.zeros(12), psi=TransformOperator("dct", 16))

    def test_tv_only_for_time_domain_form(self, uniform_obs):
        with pytest.raises(ConfigError):
            RecoveryProblem("c", uniform_obs, np.zeros((12, 64)), regularizer="tv")

    def test_one_matrix_per_column(self, uniform_obs):
        with pytest.raises(DimensionError):
            RecoveryProblem("a", uniform_obs, np.zeros((12, 3)), column_observations=[uniform_obs])

    def test_column_matrices_are_l1_only(self, uniform_obs):
        with pytest.raises(ConfigError):
            RecoveryProblem(
                "a", uniform_obs, np.zeros((12, 64)), regularizer="tv", column_observations=[uniform_obs] * 64
            )


class TestRecoverVector:
    def test_identity_newton_recovers_measurements(self, identity_obs):
        y = np.array([0.5, -1.0, 0.0, 2.0])
        problem = RecoveryProblem("a", identity_obs, y, l1=NO_PENALTY)
        f, trace = recover_vector(problem, EXACT_NEWTON)
        np.testing.assert_allclose(f, y, rtol=0, atol=1e-14)
        assert len(trace) <= 3

    @pytest.mark.parametrize("form", ["b", "c", "d"])
    def test_transform_forms_return_time_domain_signal(self, dct8, rng, form):
        obs = ObservationMatrix.from_array(np.eye(8))
        f = rng.standard_normal(8)
        y = measure_for_form(form, obs, dct8, f)
        problem = RecoveryProblem(form, obs, y, psi=dct8, l1=NO_PENALTY)
        recovered, _ = recover_vector(problem, EXACT_NEWTON)
        np.testing.assert_allclose(recovered, f, atol=1e-10)

    @pytest.mark.parametrize("mode", [SolverMode.STEEPEST_DESCENT, SolverMode.NEWTON])
    def test_overdetermined_l1(self, overdetermined_system, mode):
        a, x, y = overdetermined_system
        problem = RecoveryProblem("a", ObservationMatrix.from_array(a), y, l1=L1Params(lam=1e-4))
        config = SolverConfig(mode=mode, max_iters=2000, stop_tol=1e-12)
        f, trace = recover_vector(problem, config)
        np.testing.assert_allclose(f, x, atol=1e-2)
        assert trace.residuals[-1] < trace.residuals[0]

    def test_rejects_image_measurements(self, uniform_obs):
        with pytest.raises(DimensionError):
            recover_vector(RecoveryProblem("a", uniform_obs, np.zeros((12, 2))), SolverConfig(max_iters=5))

    def test_divergence_carries_trace(self, uniform_obs):
        problem = RecoveryProblem("a", uniform_obs, np.ones(12), l1=NO_PENALTY)
        config = SolverConfig(mode=SolverMode.FIXED_STEP, fixed_mu=1e3, max_iters=1000)
        with np.errstate(all="ignore"):
            with pytest.raises(DivergenceError) as info:
                recover_vector(problem, config)
        assert info.value.trace is not None
        assert len(info.value.trace) > 0


class TestRecoverImage:
    def test_zero_image_stops_immediately(self, uniform_obs):
        problem = RecoveryProblem("a", uniform_obs, np.zeros((12, 5)))
        report = recover_image(problem, SolverConfig(mode=SolverMode.STEEPEST_DESCENT), workers=1)
        np.testing.assert_array_equal(report.recovered, np.zeros((64, 5)))
        assert [len(t) for t in report.traces] == [1] * 5
        assert report.total_iterations == 5

    def test_parallel_columns_match_sequential(self, uniform_obs, rng):
        img = np.where(rng.random((64, 6)) < 0.05, 1.0, 0.0)
        problem = RecoveryProblem("a", uniform_obs, uniform_obs.measure(img), l1=L1Params(lam=0.01, decay=0.995))
        config = SolverConfig(mode=SolverMode.NEWTON, max_iters=30)
        sequential = recover_image(problem, config, workers=1)
        parallel = recover_image(problem, config, workers=4)
        assert np.array_equal(sequential.recovered, parallel.recovered)
        assert [len(t) for t in sequential.traces] == [len(t) for t in parallel.traces]

    def test_reference_psnr(self, identity_obs):
        img = np.array([[0.0, 1.0], [0.5, 0.0], [0.0, 0.0], [1.0, 0.25]])
        problem = RecoveryProblem("a", identity_obs, identity_obs.measure(img), l1=NO_PENALTY)
        report = recover_image(problem, EXACT_NEWTON, reference=img, workers=1)
        assert report.psnr_vs_reference > 250.0
        assert report.seeds == [None]
        assert report.to_dict()["mode"] == "newton"

    def test_per_column_matrices(self, rng):
        obs = [generate_observation(12, 4, "normal01", seed=s) for s in (5, 6)]
        img = rng.standard_normal((4, 2))
        y = np.column_stack([o.measure(img[:, k]) for k, o in enumerate(obs)])
        problem = RecoveryProblem("a", obs[0], y, l1=NO_PENALTY, column_observations=obs)
        report = recover_image(problem, EXACT_NEWTON, workers=1)
        np.testing.assert_allclose(report.recovered, img, atol=1e-8)
        assert report.seeds == [5, 6]

    def test_tv_runs_jointly(self):
        img = generate_test_image(TestImageSpec("geometric", 16))
        obs = generate_observation(10, 16, "uniform01", seed=3)
        y = obs.measure(img)
        problem = RecoveryProblem("a", obs, y, regularizer="tv", tv=TvParams(lam=0.005))
        report = recover_image(problem, SolverConfig(mode=SolverMode.STEEPEST_DESCENT, max_iters=20), reference=img)
        assert report.joint
        assert len(report.traces) == 1
        assert report.total_iterations == len(report.traces[0])
        assert report.recovered.shape == (16, 16)
        assert report.traces[0].residuals[-1] < np.linalg.norm(y)
        assert report.lam == 0.005
        assert report.psnr_vs_reference is not None

    def test_tv_objective_never_increases(self):
        img = generate_test_image(TestImageSpec("geometric", 16))
        obs = generate_observation(10, 16, "uniform01", seed=3)
        problem = RecoveryProblem("a", obs, obs.measure(img), regularizer="tv", tv=TvParams(lam=0.01, eps_smooth=1e-6))
        config = SolverConfig(mode=SolverMode.STEEPEST_DESCENT, max_iters=300, stop_tol=0.0, log_every=0)
        objectives = recover_image(problem, config).traces[0].objectives
        assert np.all(np.diff(objectives) <= 1e-10 * objectives[0])
        assert objectives[-1] < objectives[0]

    def test_rejects_vector_measurements(self, uniform_obs):
        with pytest.raises(DimensionError):
            recover_image(RecoveryProblem("a", uniform_obs, np.zeros(12)), SolverConfig(max_iters=5))


class TestMeasurementNoise:
    def test_standard_deviation(self):
        noisy = add_measurement_noise(np.zeros(10000), 0.5, seed=11)
        assert np.std(noisy) == pytest.approx(0.5, rel=0.05)

    def test_deterministic(self):
        y = np.arange(6.0)
        assert np.array_equal(add_measurement_noise(y, 0.1, 3), add_measurement_noise(y, 0.1, 3))
        assert not np.array_equal(add_measurement_noise(y, 0.1, 3), add_measurement_noise(y, 0.1, 4))

    def test_zero_sigma_copies(self):
        y = np.ones((3, 2))
        out = add_measurement_noise(y, 0.0, 1)
        assert np.array_equal(out, y) and out is not y

    def test_negative_sigma(self):
        with pytest.raises(ConfigError):
            add_measurement_noise(np.zeros(3), -0.1, 1)


def _trace(n: int) -> ConvergenceTrace:
    trace = ConvergenceTrace()
    for i in range(n):
        trace.append(IterationRecord(i, 1.0 / (i + 1), 0.5 / (i + 1), 0.1))
    return trace


class TestRecoveryReport:
    def test_trace_count_must_match_columns(self):
        with pytest.raises(ValueError):
            RecoveryReport(recovered=np.zeros((4, 3)), traces=[_trace(2)])

    def test_save_image_report(self, tmp_path):
        report = RecoveryReport(
            recovered=np.full((4, 2), 0.5),
            traces=[_trace(3), _trace(2)],
            psnr_vs_reference=31.5,
            total_iterations=5,
            form=ProblemForm.TIME_SPARSE_TIME_MEAS,
            regularizer=RegularizerKind.L1,
            lam=0.01,
            mode=SolverMode.NEWTON,
            seeds=[9],
        )
        out = report.save(tmp_path / "run")
        names = sorted(p.name for p in out.iterdir())
        assert names == ["recovered.csv", "recovered.pgm", "report.json", "trace_col_0.csv", "trace_col_1.csv"]
        data = json.loads((out / "report.json").read_text())
        assert data == {
            "form": "a",
            "regularizer": "l1",
            "lambda": 0.01,
            "mode": "newton",
            "iterations": 5,
            "psnr": 31.5,
            "elapsed_ms": 0.0,
            "seeds": [9],
        }
        trace = pd.read_csv(out / "trace_col_0.csv")
        assert list(trace.columns) == ["iter", "residual", "objective", "delta"]
        assert len(trace) == 3

    def test_save_joint_and_vector_reports(self, tmp_path):
        joint = RecoveryReport(recovered=np.zeros((4, 4)), traces=[_trace(1)], joint=True)
        assert (joint.save(tmp_path / "tv") / "trace_joint.csv").exists()

        vector = RecoveryReport(recovered=np.ones(5), traces=[_trace(1)])
        out = vector.save(tmp_path / "vec")
        assert sorted(p.name for p in out.iterdir()) == ["recovered.csv", "report.json", "trace_col_0.csv"]
