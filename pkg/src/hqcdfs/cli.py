"""Command-line front end emitting machine-readable reports.

Commands: ``gate``, ``holonomy``, ``noise``, ``sweep``, ``nogo``. Every
report embeds the full input configuration and the tool version. Exit
status contract: 0 all checks within tolerance, 1 tolerance violations
(listed in the report), 2 unparseable input, 3 internal contract violation.
The environment variable HQC_DFS_TOLERANCE_SCALE (default 1) multiplies
every documented tolerance for exploratory runs and is recorded in reports.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .errors import ContractViolation, SingularChainError
from .gates import realize, no_go_certificate
from .holonomy import MIN_CHAIN_STEPS, certify, defects_only_report
from .model import GateRecipe, detune, recipe_hamiltonian
from .noise import NoiseEnsemble, noisy_realize
from .subspace import BasisSet, LogicalBlock, logical_basis

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_PARSE = 2
EXIT_CONTRACT = 3

# Documented tolerances; multiplied by HQC_DFS_TOLERANCE_SCALE at run time.
TOLERANCES = {
    "distance": 1e-10,
    "dfs_error": 1e-10,
    "invariance_defect": 1e-10,
    "cyclicity_defect": 1e-10,
    "transport_defect": 1e-12,
    "reconstruction_distance": 1e-3,
    "fidelity_deficit": 1e-10,
}


class InputError(Exception):
    """Unparseable or invalid command input (exit status 2)."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str | None = None
    output_path: str | None = None
    steps: int = 4096
    seed: int = 0
    format: str = "json"
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.format not in ("json", "csv"):
            raise InputError(f"format must be json or csv, got {self.format!r}")
        if self.command in ("gate", "holonomy") and self.steps < MIN_CHAIN_STEPS:
            raise InputError(
                f"steps must be >= {MIN_CHAIN_STEPS} for {self.command}, got {self.steps}"
            )


def tolerance_scale() -> float:
    raw = os.environ.get("HQC_DFS_TOLERANCE_SCALE", "1")
    try:
        scale = float(raw)
    except ValueError as exc:
        raise InputError(f"HQC_DFS_TOLERANCE_SCALE={raw!r} is not a number") from exc
    if scale <= 0:
        raise InputError(f"HQC_DFS_TOLERANCE_SCALE must be positive, got {scale}")
    return scale


def _load_json_input(source: str) -> dict:
    """Accept a file path or inline JSON (anything starting with '{')."""
    try:
        if source.lstrip().startswith("{"):
            return json.loads(source)
        with open(source, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON input {source!r}: {exc}") from exc


def _parse_recipe(source: str) -> GateRecipe:
    try:
        return GateRecipe.from_json_dict(_load_json_input(source))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"invalid gate recipe: {exc}") from exc


def _parse_ensemble(source: str) -> NoiseEnsemble:
    try:
        return NoiseEnsemble.from_json_dict(_load_json_input(source))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"invalid noise ensemble: {exc}") from exc


def _parse_basis(source: str) -> BasisSet:
    try:
        return BasisSet.from_json_dict(_load_json_input(source))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"invalid basis set: {exc}") from exc


def _check(violations: list, name: str, value: float | None, bound: float) -> None:
    if value is not None and value > bound:
        violations.append({"check": name, "value": value, "tolerance": bound})


def _envelope(config: RunConfig, input_doc: dict, report: dict, violations: list) -> dict:
    return {
        "tool": {"name": "hqcdfs", "version": __version__},
        "command": config.command,
        "tolerance_scale": tolerance_scale(),
        "input": input_doc,
        "report": report,
        "violations": violations,
    }


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path:
        try:
            with open(config.output_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write report to {config.output_path!r}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _emit_json(config: RunConfig, doc: dict) -> None:
    _emit(config, json.dumps(doc, indent=2) + "\n")


def _run_gate(config: RunConfig) -> int:
    recipe = _parse_recipe(config.extras["recipe"])
    scale = tolerance_scale()
    realization = realize(recipe, steps=config.steps)
    violations: list = []
    if not recipe.detuned:
        _check(violations, "distance", realization.distance, TOLERANCES["distance"] * scale)
        _check(violations, "dfs_error", realization.dfs_error, TOLERANCES["dfs_error"] * scale)
        _check(
            violations,
            "invariance_defect",
            realization.invariance,
            TOLERANCES["invariance_defect"] * scale,
        )
        hol = realization.holonomy
        _check(
            violations,
            "cyclicity_defect",
            hol.cyclicity_defect,
            TOLERANCES["cyclicity_defect"] * scale,
        )
        _check(
            violations,
            "transport_defect",
            hol.transport_defect,
            TOLERANCES["transport_defect"] * scale,
        )
        _check(
            violations,
            "reconstruction_distance",
            hol.reconstruction_distance,
            TOLERANCES["reconstruction_distance"] * scale,
        )
    doc = _envelope(
        config,
        {"recipe": recipe.to_json_dict(), "steps": config.steps},
        realization.to_json_dict(),
        violations,
    )
    _emit_json(config, doc)
    return EXIT_VIOLATIONS if violations else EXIT_OK


def _run_holonomy(config: RunConfig) -> int:
    recipe = _parse_recipe(config.extras["recipe"])
    scale = tolerance_scale()
    n_blocks = max(recipe.blocks)
    h = recipe_hamiltonian(recipe, n_blocks)
    if config.extras.get("basis"):
        basis = _parse_basis(config.extras["basis"])
        if basis.dim_ambient != h.shape[0]:
            raise InputError(
                f"basis ambient dimension {basis.dim_ambient} does not match "
                f"the {h.shape[0]}-dimensional register of this recipe"
            )
    else:
        basis = logical_basis([LogicalBlock(b) for b in recipe.blocks], 3 * n_blocks)
    if recipe.detuned:
        report = defects_only_report(h, basis, recipe.duration, config.steps)
        violations: list = []
    else:
        report = certify(h, basis, recipe.duration, config.steps)
        violations = []
        _check(
            violations,
            "cyclicity_defect",
            report.cyclicity_defect,
            TOLERANCES["cyclicity_defect"] * scale,
        )
        _check(
            violations,
            "transport_defect",
            report.transport_defect,
            TOLERANCES["transport_defect"] * scale,
        )
        _check(
            violations,
            "reconstruction_distance",
            report.reconstruction_distance,
            TOLERANCES["reconstruction_distance"] * scale,
        )
    doc = _envelope(
        config,
        {"recipe": recipe.to_json_dict(), "steps": config.steps},
        report.to_json_dict(),
        violations,
    )
    _emit_json(config, doc)
    return EXIT_VIOLATIONS if violations else EXIT_OK


def _run_noise(config: RunConfig) -> int:
    recipe = _parse_recipe(config.extras["recipe"])
    ensemble = _parse_ensemble(config.extras["ensemble"])
    scale = tolerance_scale()
    result = noisy_realize(recipe, ensemble)
    violations: list = []
    if not recipe.detuned:
        _check(
            violations,
            "fidelity_deficit",
            1.0 - result.min_fidelity,
            TOLERANCES["fidelity_deficit"] * scale,
        )
    if config.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(["sample", "fidelity"])
        for i, fidelity in enumerate(result.per_sample):
            writer.writerow([i, f"{fidelity:.12g}"])
        _emit(config, buffer.getvalue())
    else:
        doc = _envelope(
            config,
            {"recipe": recipe.to_json_dict(), "ensemble": ensemble.to_json_dict()},
            result.to_json_dict(),
            violations,
        )
        _emit_json(config, doc)
    return EXIT_VIOLATIONS if violations else EXIT_OK


def _run_sweep(config: RunConfig) -> int:
    param = config.extras["param"]
    start = config.extras["start"]
    stop = config.extras["stop"]
    points = config.extras["points"]
    if param not in ("phase", "pulse_area_detuning"):
        raise InputError(f"unknown sweep parameter {param!r}")
    if points < 2:
        raise InputError(f"sweep needs at least 2 points, got {points}")
    if param == "pulse_area_detuning" and min(start, stop) <= -1.0:
        raise InputError("detuning must stay above -1 to keep the pulse area positive")
    template = _parse_recipe(config.extras["recipe"])

    rows = []
    for i in range(points):
        value = start + (stop - start) * i / (points - 1)
        if param == "phase":
            if template.kind == "CNOT":
                raise InputError("phase sweep is undefined for CNOT recipes")
            recipe = GateRecipe(
                template.kind,
                value,
                template.strength,
                template.duration,
                template.blocks,
                template.detuned,
            )
        else:
            recipe = detune(template, 1.0 + value) if value != 0.0 else template
        realization = realize(recipe, steps=config.steps)
        hol = realization.holonomy
        rows.append(
            (
                value,
                realization.distance,
                hol.cyclicity_defect,
                hol.transport_defect,
            )
        )

    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["parameter", "distance", "cyclicity_defect", "transport_defect"])
    for row in rows:
        writer.writerow([f"{v:.12g}" for v in row])
    _emit(config, buffer.getvalue())
    return EXIT_OK


def _run_nogo(config: RunConfig) -> int:
    trials = config.extras["trials"]
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    report = no_go_certificate(trials, config.seed)
    violations: list = []
    if report.counterexamples > 0:
        violations.append(
            {"check": "counterexamples", "value": report.counterexamples, "tolerance": 0}
        )
    _check(violations, "witness_error", report.witness_error, 0.0)
    doc = _envelope(
        config,
        {"trials": trials, "seed": config.seed},
        report.to_json_dict(),
        violations,
    )
    _emit_json(config, doc)
    return EXIT_VIOLATIONS if violations else EXIT_OK


_RUNNERS = {
    "gate": _run_gate,
    "holonomy": _run_holonomy,
    "noise": _run_noise,
    "sweep": _run_sweep,
    "nogo": _run_nogo,
}


def run(config: RunConfig) -> int:
    """Dispatch one parsed command; returns the process exit status."""
    try:
        return _RUNNERS[config.command](config)
    except InputError:
        raise
    except (ContractViolation, SingularChainError) as exc:
        sys.stderr.write(f"contract violation: {exc}\n")
        return EXIT_CONTRACT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hqcdfs",
        description="Simulate and certify holonomic gates on decoherence-free encoded qubits.",
    )
    parser.add_argument("--version", action="version", version=f"hqcdfs {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gate = sub.add_parser("gate", help="realize a gate recipe and report the comparison")
    gate.add_argument("--recipe", required=True, help="recipe file path or inline JSON")
    gate.add_argument("--steps", type=int, default=4096)
    gate.add_argument("--out", default=None)

    hol = sub.add_parser("holonomy", help="certify the holonomic character of a recipe")
    hol.add_argument("--recipe", required=True)
    hol.add_argument(
        "--basis",
        default=None,
        help="basis-set JSON (path or inline) to certify instead of the logical basis",
    )
    hol.add_argument("--steps", type=int, default=4096)
    hol.add_argument("--out", default=None)

    noise = sub.add_parser("noise", help="gate fidelity under collective phase kicks")
    noise.add_argument("--recipe", required=True)
    noise.add_argument("--ensemble", required=True, help="ensemble file path or inline JSON")
    noise.add_argument("--format", choices=("json", "csv"), default="json")
    noise.add_argument("--out", default=None)

    sweep = sub.add_parser("sweep", help="sweep a recipe parameter, one CSV row per point")
    sweep.add_argument("--param", required=True, choices=("phase", "pulse_area_detuning"))
    sweep.add_argument("--from", dest="start", type=float, required=True)
    sweep.add_argument("--to", dest="stop", type=float, required=True)
    sweep.add_argument("--points", type=int, required=True)
    sweep.add_argument("--recipe", required=True)
    sweep.add_argument("--steps", type=int, default=4096)
    sweep.add_argument("--out", default=None)

    nogo = sub.add_parser("nogo", help="randomized two-qubit no-go certificate")
    nogo.add_argument("--trials", type=int, default=1000)
    nogo.add_argument("--seed", type=int, default=0)
    nogo.add_argument("--out", default=None)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    extras = {}
    for key in ("recipe", "ensemble", "basis", "param", "start", "stop", "points", "trials"):
        if hasattr(args, key):
            extras[key] = getattr(args, key)
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "recipe", None),
        output_path=getattr(args, "out", None),
        steps=getattr(args, "steps", 4096),
        seed=getattr(args, "seed", 0),
        format=getattr(args, "format", "json"),
        extras=extras,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return run(config)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
