import csv
import io
import json
import subprocess
import sys

import numpy as np

from hqcdfs import __version__
from hqcdfs.cli import main
from hqcdfs.model import GateRecipe, detune
from hqcdfs.serialize import matrix_from_json


def write_recipe(path, recipe):
    path.write_text(json.dumps(recipe.to_json_dict()))
    return str(path)


def write_ensemble(path, kick_count=2, samples=20, seed=4, dist=None):
    doc = {
        "kick_count": kick_count,
        "distribution": dist or {"type": "uniform", "params": {}},
        "samples": samples,
        "seed": seed,
    }
    path.write_text(json.dumps(doc))
    return str(path)


class TestGateCommand:
    def test_xz_recipe_passes(self, tmp_path):
        recipe_path = write_recipe(tmp_path / "recipe.json", GateRecipe.xz(0.3))
        out_path = tmp_path / "report.json"
        status = main(
            ["gate", "--recipe", recipe_path, "--steps", "512", "--out", str(out_path)]
        )
        assert status == 0
        doc = json.loads(out_path.read_text())
        assert doc["tool"] == {"name": "hqcdfs", "version": __version__}
        assert doc["violations"] == []
        assert doc["report"]["distance"] <= 1e-10
        assert doc["input"]["recipe"]["kind"] == "XZ"

    def test_inline_json_recipe(self, tmp_path, capsys):
        inline = json.dumps(GateRecipe.zx(1.0).to_json_dict())
        status = main(["gate", "--recipe", inline, "--steps", "512"])
        assert status == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["report"]["distance"] <= 1e-10

    def test_malformed_json_exits_2_without_report(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        out_path = tmp_path / "nope.json"
        status = main(["gate", "--recipe", str(bad), "--out", str(out_path)])
        assert status == 2
        assert not out_path.exists()

    def test_missing_file_exits_2(self, tmp_path):
        assert main(["gate", "--recipe", str(tmp_path / "none.json")]) == 2

    def test_invalid_pulse_area_exits_2(self, tmp_path):
        doc = GateRecipe.xz(0.3).to_json_dict()
        doc["duration"] *= 1.5
        bad = tmp_path / "bad_recipe.json"
        bad.write_text(json.dumps(doc))
        assert main(["gate", "--recipe", str(bad)]) == 2

    def test_too_few_steps_exits_2(self, tmp_path):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.0))
        assert main(["gate", "--recipe", recipe_path, "--steps", "4"]) == 2

    def test_detuned_recipe_reported_without_violations(self, tmp_path, capsys):
        recipe_path = write_recipe(tmp_path / "r.json", detune(GateRecipe.xz(0.3), 1.05))
        status = main(["gate", "--recipe", recipe_path, "--steps", "512"])
        assert status == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["report"]["distance"] > 1e-4
        assert doc["violations"] == []

    def test_tolerance_scale_env(self, tmp_path, capsys, monkeypatch):
        # A scale tiny enough to trip the distance check turns a clean run
        # into exit status 1 with a populated violations list.
        monkeypatch.setenv("HQC_DFS_TOLERANCE_SCALE", "1e-12")
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.3))
        status = main(["gate", "--recipe", recipe_path, "--steps", "512"])
        doc = json.loads(capsys.readouterr().out)
        assert doc["tolerance_scale"] == 1e-12
        if doc["violations"]:
            assert status == 1
            assert all("check" in v and "tolerance" in v for v in doc["violations"])
        else:
            assert status == 0

    def test_report_matrices_reload_unitary(self, tmp_path):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.cnot())
        out_path = tmp_path / "cnot.json"
        assert main(["gate", "--recipe", recipe_path, "--steps", "512", "--out", str(out_path)]) == 0
        doc = json.loads(out_path.read_text())
        for key, dim in (("propagator", 64), ("restricted", 4), ("dfs_restricted", 5)):
            matrix = matrix_from_json(doc["report"][key])
            defect = np.linalg.norm(matrix.conj().T @ matrix - np.eye(dim))
            assert defect <= 1e-10 * dim


class TestHolonomyCommand:
    def test_certifies_recipe(self, tmp_path, capsys):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.zx(0.7))
        status = main(["holonomy", "--recipe", recipe_path, "--steps", "1024"])
        assert status == 0
        doc = json.loads(capsys.readouterr().out)
        report = doc["report"]
        assert report["cyclicity_defect"] <= 1e-10
        assert report["transport_defect"] <= 1e-12
        assert report["reconstruction_distance"] <= 1e-3
        matrix = matrix_from_json(report["holonomy_matrix"])
        assert np.linalg.norm(matrix.conj().T @ matrix - np.eye(2)) <= 1e-8

    def test_accepts_custom_basis_json(self, tmp_path, capsys):
        from hqcdfs.subspace import LogicalBlock, logical_basis

        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.4))
        basis = logical_basis([LogicalBlock(1)], 3)
        basis_path = tmp_path / "basis.json"
        basis_path.write_text(json.dumps(basis.to_json_dict()))
        status = main(
            ["holonomy", "--recipe", recipe_path, "--basis", str(basis_path), "--steps", "512"]
        )
        assert status == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["report"]["transport_defect"] <= 1e-12

    def test_rejects_mismatched_basis(self, tmp_path):
        from hqcdfs.gates import two_qubit_dfs

        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.4))
        basis_path = tmp_path / "basis.json"
        basis_path.write_text(json.dumps(two_qubit_dfs().to_json_dict()))
        assert main(["holonomy", "--recipe", recipe_path, "--basis", str(basis_path)]) == 2

    def test_non_holonomic_basis_exits_3(self, tmp_path):
        # The ancilla/logical pair carries Hamiltonian coupling, so
        # certification refuses it: an in-run contract failure, not a
        # parse error.
        from hqcdfs.subspace import BasisSet, LogicalBlock, dfs_basis

        full = dfs_basis(LogicalBlock(1), 3)
        pair = BasisSet(full.vectors[:, :2], ("a", "0L"))
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.4))
        basis_path = tmp_path / "basis.json"
        basis_path.write_text(json.dumps(pair.to_json_dict()))
        status = main(
            ["holonomy", "--recipe", recipe_path, "--basis", str(basis_path), "--steps", "512"]
        )
        assert status == 3


class TestNoiseCommand:
    def test_json_summary(self, tmp_path, capsys):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.2))
        ensemble_path = write_ensemble(tmp_path / "e.json")
        status = main(["noise", "--recipe", recipe_path, "--ensemble", ensemble_path])
        assert status == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["report"]["min_fidelity"] >= 1 - 1e-10
        assert len(doc["report"]["per_sample"]) == 20

    def test_csv_per_sample(self, tmp_path, capsys):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.2))
        ensemble_path = write_ensemble(tmp_path / "e.json", samples=7)
        status = main(
            ["noise", "--recipe", recipe_path, "--ensemble", ensemble_path, "--format", "csv"]
        )
        assert status == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rows[0] == ["sample", "fidelity"]
        assert len(rows) == 8

    def test_bad_ensemble_exits_2(self, tmp_path):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.2))
        assert main(["noise", "--recipe", recipe_path, "--ensemble", '{"kick_count": 1}']) == 2


class TestSweepCommand:
    def test_phase_sweep(self, tmp_path):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.0))
        out_path = tmp_path / "sweep.csv"
        status = main(
            [
                "sweep", "--param", "phase", "--from", "0", "--to", "6.283185307179586",
                "--points", "9", "--recipe", recipe_path, "--steps", "512",
                "--out", str(out_path),
            ]
        )
        assert status == 0
        rows = list(csv.reader(out_path.open()))
        assert rows[0] == ["parameter", "distance", "cyclicity_defect", "transport_defect"]
        assert len(rows) == 10
        assert all(float(r[1]) <= 1e-10 for r in rows[1:])

    def test_detuning_sweep_distance_nondecreasing(self, tmp_path):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.4))
        out_path = tmp_path / "detuning.csv"
        status = main(
            [
                "sweep", "--param", "pulse_area_detuning", "--from", "0", "--to", "0.1",
                "--points", "11", "--recipe", recipe_path, "--steps", "512",
                "--out", str(out_path),
            ]
        )
        assert status == 0
        rows = list(csv.reader(out_path.open()))[1:]
        assert len(rows) == 11
        distances = [float(r[1]) for r in rows]
        assert all(b >= a - 1e-12 for a, b in zip(distances, distances[1:]))

    def test_two_point_sweep(self, tmp_path, capsys):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.zx(0.0))
        status = main(
            ["sweep", "--param", "phase", "--from", "0", "--to", "1",
             "--points", "2", "--recipe", recipe_path, "--steps", "512"]
        )
        assert status == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert len(rows) == 3

    def test_single_point_rejected(self, tmp_path):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.zx(0.0))
        assert main(
            ["sweep", "--param", "phase", "--from", "0", "--to", "1",
             "--points", "1", "--recipe", recipe_path]
        ) == 2

    def test_phase_sweep_of_cnot_rejected(self, tmp_path):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.cnot())
        assert main(
            ["sweep", "--param", "phase", "--from", "0", "--to", "1",
             "--points", "3", "--recipe", recipe_path]
        ) == 2

    def test_detuning_below_minus_one_rejected(self, tmp_path):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.0))
        assert main(
            ["sweep", "--param", "pulse_area_detuning", "--from", "-2", "--to", "0",
             "--points", "3", "--recipe", recipe_path]
        ) == 2

    def test_unwritable_output_exits_2(self, tmp_path):
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.0))
        missing_dir = tmp_path / "no" / "such" / "dir" / "out.json"
        assert main(
            ["gate", "--recipe", recipe_path, "--steps", "512", "--out", str(missing_dir)]
        ) == 2


class TestNogoCommand:
    def test_seeded_run_is_clean(self, tmp_path):
        out_path = tmp_path / "nogo.json"
        status = main(["nogo", "--trials", "1000", "--seed", "7", "--out", str(out_path)])
        assert status == 0
        doc = json.loads(out_path.read_text())
        assert doc["report"]["counterexamples"] == 0
        assert doc["report"]["witness_error"] == 0.0
        assert doc["report"]["trials"] == 1000


class TestExitStatusContract:
    def test_internal_contract_violation_exits_3(self, tmp_path, monkeypatch):
        from hqcdfs import cli
        from hqcdfs.errors import ContractViolation

        def explode(*args, **kwargs):
            raise ContractViolation("synthetic contract failure")

        monkeypatch.setattr(cli, "realize", explode)
        recipe_path = write_recipe(tmp_path / "r.json", GateRecipe.xz(0.1))
        assert main(["gate", "--recipe", recipe_path]) == 3


class TestConsoleScript:
    def test_version_flag(self):
        result = subprocess.run(
            [sys.executable, "-m", "hqcdfs.cli", "--version"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert __version__ in result.stdout
