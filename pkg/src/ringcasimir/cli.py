"""Command-line workbench.

Subcommands: ``exact`` (mode-sum energies and chiral Dirac-sea reports),
``vqe`` (partitioned family runs, chiral runs, or runs on imported Pauli
files, with result JSON and convergence CSV), ``export`` / ``import-pauli``
(Pauli text files), ``pauli-count`` (term-growth CSV) and ``dispersion``
(branch CSV).

Exit codes: 0 ok, 2 usage error, 3 VQE did not converge, 4 capacity
exceeded, 5 Pauli parse error.  Relative output paths resolve against
$RINGCASIMIR_OUTDIR when it is set.  Every file written gets a sidecar
``<name>.manifest.json`` recording the resolved configuration; re-running
the same command reproduces the data files byte for byte (exact mode).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .chiral import (
    REFERENCE_ETA,
    REFERENCE_SITES,
    REFERENCE_SUBTRACTION,
    ChiralSystem,
    bulk_density,
    continuum_casimir_target,
    dirac_sea_energy,
    dispersion,
    dispersion_table,
    jordan_wigner_hamiltonian,
    reference_system,
    single_particle_matrix,
)
from .hamiltonian import CapacityError, HamiltonianSpec
from .lattice import (
    FAMILY_LABELS,
    ModeFamily,
    casimir_exact,
    mode_sum_energy,
    ring_hamiltonian,
    subtraction_constant,
)
from .pauli import PauliFormatError, decompose_diagonal, parse, serialize, term_count
from .vqe import (
    Optimizer,
    VqeConfig,
    combined_trace,
    partitioned_run,
    run_vqe,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_CONVERGED = 3
EXIT_CAPACITY = 4
EXIT_PARSE = 5


def _out_path(raw: str) -> Path:
    path = Path(raw)
    if not path.is_absolute():
        base = os.environ.get("RINGCASIMIR_OUTDIR", ".")
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _write_manifest(path: Path, command: str, config: dict) -> None:
    clean = {
        k: v
        for k, v in config.items()
        if k not in ("fn", "needs_selector")
        and isinstance(v, (str, int, float, bool, type(None)))
    }
    manifest = {
        "command": command,
        "config": clean,
        "artifact_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    manifest_path = path.with_name(path.name + ".manifest.json")
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _fmt(value: float, full: bool) -> str:
    return repr(float(value)) if full else f"{value:.6g}"


def _parse_sweep(text: str):
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise ValueError(f"bad sweep range {text!r}")
    return range(lo, hi + 1)


def _vqe_config(args) -> VqeConfig:
    return VqeConfig(
        depth=args.depth,
        optimizer=Optimizer(args.optimizer),
        max_iterations=args.max_iterations,
        tolerance=args.tolerance,
        seed=args.seed,
        shots=args.shots,
        ansatz=args.ansatz,
        init_spread=args.init_spread,
    )


def cmd_exact(args) -> int:
    full = args.full_precision
    if args.from_file:
        psum = parse(Path(args.from_file).read_text())
        spec = HamiltonianSpec(qubits=psum.qubits, pauli=psum, label=f"file {args.from_file}")
        energy = spec.ground_energy()
        print(f"qubits {psum.qubits}")
        print(f"ground_energy {energy!r}")
        return EXIT_OK
    if args.chiral:
        system = (
            ChiralSystem(args.sites, args.eta, args.scale)
            if args.scale is not None
            else reference_system(args.sites, args.eta)
        )
        sea = dirac_sea_energy(single_particle_matrix(system))
        if args.subtraction is not None:
            subtraction = args.subtraction
        elif (args.sites, args.eta) == (REFERENCE_SITES, REFERENCE_ETA) and args.scale is None:
            subtraction = REFERENCE_SUBTRACTION
        else:
            subtraction = system.scale * system.sites * bulk_density(system.eta)
        report = {
            "sites": system.sites,
            "eta": system.eta,
            "scale": system.scale,
            "dirac_sea_energy": sea,
            "subtraction": subtraction,
            "casimir": sea - subtraction,
            "continuum_target": continuum_casimir_target(system.sites),
        }
        print(f"sites {system.sites}  eta {_fmt(system.eta, full)}  scale {_fmt(system.scale, full)}")
        print(f"dirac_sea_energy {_fmt(sea, full)}")
        print(f"subtraction {_fmt(subtraction, full)}")
        print(f"casimir {_fmt(report['casimir'], full)}")
        print(f"continuum_target {_fmt(report['continuum_target'], full)}")
        if args.json:
            path = _out_path(args.json)
            path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
            _write_manifest(path, "exact", vars(args) | {"resolved_scale": system.scale})
        return EXIT_OK

    sweep = _parse_sweep(args.sweep) if args.sweep else [args.sites]
    rows = []
    print("n  energy  subtraction" if not args.no_correction else "n  energy")
    for n in sweep:
        family = ModeFamily.from_label(args.family, n)
        correction = subtraction_constant(family.statistics)
        energy = mode_sum_energy(family) if args.no_correction else casimir_exact(family)
        rows.append(
            {
                "family": family.label,
                "sites": n,
                "exact_energy": energy,
                "subtraction": None if args.no_correction else correction,
            }
        )
        if args.no_correction:
            print(f"{n}  {energy:.4f}" if not full else f"{n}  {energy!r}")
        else:
            line = f"{n}  {energy:.4f}  {_fmt(correction, False)}"
            print(line if not full else f"{n}  {energy!r}  {correction!r}")
    if args.json:
        path = _out_path(args.json)
        path.write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n")
        _write_manifest(path, "exact", vars(args))
    return EXIT_OK


def _result_record(args, family_label, sites, exact, vqe_energy, pct,
                   iterations, evaluations, converged):
    return {
        "family": family_label,
        "sites": sites,
        "exact_energy": exact,
        "vqe_energy": vqe_energy,
        "percent_difference": pct,
        "iterations": iterations,
        "evaluations": evaluations,
        "optimizer": args.optimizer,
        "seed": args.seed,
        "converged": converged,
    }


def _write_trace(path: Path, rows) -> None:
    lines = ["iteration,energy"]
    for iteration, energy in rows:
        lines.append(f"{iteration},{float(energy)!r}")
    path.write_text("\n".join(lines) + "\n")


def cmd_vqe(args) -> int:
    cfg = _vqe_config(args)
    from .lattice import percent_difference as pct_diff

    if args.from_file:
        text = Path(args.from_file).read_text()
        psum = parse(text)
        spec = HamiltonianSpec(qubits=psum.qubits, pauli=psum, label=f"file {args.from_file}")
        result = run_vqe(spec, cfg)
        exact = spec.ground_energy()
        record = _result_record(
            args, f"file:{args.from_file}", psum.qubits, exact,
            result.energy, pct_diff(result.energy, exact),
            len(result.trace), result.evaluations, result.converged,
        )
        trace_rows = result.trace
        converged = result.converged
    elif args.chiral:
        system = (
            ChiralSystem(args.sites, args.eta, args.scale)
            if args.scale is not None
            else reference_system(args.sites, args.eta)
        )
        t = single_particle_matrix(system)
        spec = jordan_wigner_hamiltonian(t)
        result = run_vqe(spec, cfg)
        exact = dirac_sea_energy(t)
        record = _result_record(
            args, f"chiral eta={system.eta}", system.sites, exact,
            result.energy, pct_diff(result.energy, exact),
            len(result.trace), result.evaluations, result.converged,
        )
        trace_rows = result.trace
        converged = result.converged
    else:
        family = ModeFamily.from_label(args.family, args.sites)
        report, mode_results = partitioned_run(family, cfg, return_mode_results=True)
        converged = all(r.converged for r in mode_results)
        stitched = combined_trace(mode_results, offset=report.subtraction)
        record = _result_record(
            args, family.label, family.sites, report.exact_energy,
            report.vqe_energy, report.percent_difference,
            len(stitched), sum(r.evaluations for r in mode_results), converged,
        )
        record["per_mode_energies"] = [float(e) for e in report.per_mode_energies]
        trace_rows = stitched

    print(json.dumps(record, indent=2, sort_keys=True))
    if args.json:
        path = _out_path(args.json)
        path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
        _write_manifest(path, "vqe", vars(args))
    if args.trace:
        path = _out_path(args.trace)
        _write_trace(path, trace_rows)
        _write_manifest(path, "vqe", vars(args))
    return EXIT_OK if converged else EXIT_NOT_CONVERGED


def cmd_export(args) -> int:
    family = ModeFamily.from_label(args.family, args.sites)
    spec = ring_hamiltonian(family)
    diagonal = spec.diagonal
    if args.with_correction:
        diagonal = diagonal + subtraction_constant(family.statistics)
    psum = decompose_diagonal(diagonal)
    path = _out_path(args.out)
    path.write_text(serialize(psum))
    _write_manifest(path, "export", vars(args))
    print(f"wrote {len(psum)} terms on {psum.qubits} qubits to {path}")
    return EXIT_OK


def cmd_import(args) -> int:
    text = Path(args.path).read_text()
    psum = parse(text)
    spec = HamiltonianSpec(qubits=psum.qubits, pauli=psum, label=f"file {args.path}")
    print(f"qubits {psum.qubits}")
    print(f"terms {len(psum)}")
    print(f"ground_energy {spec.ground_energy()!r}")
    return EXIT_OK


def cmd_pauli_count(args) -> int:
    sweep = _parse_sweep(args.sites)
    lines = ["sites,qubits,terms"]
    for n in sweep:
        family = ModeFamily.from_label(args.family, n)
        try:
            count = term_count(family, n)
            lines.append(f"{n},{family.qubits},{count}")
        except CapacityError:
            lines.append(f"{n},NA,NA")
    text = "\n".join(lines) + "\n"
    if args.out:
        path = _out_path(args.out)
        path.write_text(text)
        _write_manifest(path, "pauli-count", vars(args))
    print(text, end="")
    return EXIT_OK


def cmd_dispersion(args) -> int:
    system = ChiralSystem(args.sites, args.eta, args.scale if args.scale is not None else 1.0)
    rows = ["momentum,lambda_minus,lambda_plus"]
    for point in dispersion_table(system):
        rows.append(f"{point.momentum!r},{point.lambda_minus!r},{point.lambda_plus!r}")
    if args.dense:
        for k in range(args.dense):
            p = 2.0 * np.pi * k / args.dense
            point = dispersion(p, system.eta, system.scale)
            rows.append(f"{point.momentum!r},{point.lambda_minus!r},{point.lambda_plus!r}")
    text = "\n".join(rows) + "\n"
    if args.out:
        path = _out_path(args.out)
        path.write_text(text)
        _write_manifest(path, "dispersion", vars(args))
    print(text, end="")
    return EXIT_OK


def _add_vqe_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--depth", type=int, default=0, help="entangling-layer count")
    p.add_argument("--optimizer", choices=[o.value for o in Optimizer], default="linear")
    p.add_argument("--max-iterations", type=int, default=500)
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--shots", type=int, default=None,
                   help="sample each Pauli term this many times (default: exact)")
    p.add_argument("--ansatz", choices=["ry", "ry-rz"], default="ry")
    p.add_argument("--init-spread", type=float, default=0.1,
                   help="half-width of the uniform initial-parameter window")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringcasimir",
        description="Casimir-energy workbench for lattice ring fields",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact mode-sum energies / chiral Dirac sea")
    p.add_argument("--family", choices=list(FAMILY_LABELS))
    p.add_argument("--chiral", action="store_true")
    p.add_argument("--from-file", help="ground energy of a Pauli text file")
    p.add_argument("--sites", type=int, default=1)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--scale", type=float, default=None,
                   help="chiral normalization (default: calibrated const/sites)")
    p.add_argument("--subtraction", type=float, default=None)
    p.add_argument("--sweep", help="range of sites, e.g. 1..8")
    p.add_argument("--no-correction", action="store_true",
                   help="print the raw mode sum without the subtraction constant")
    p.add_argument("--json", help="also write rows as JSON")
    p.add_argument("--full-precision", action="store_true")
    p.set_defaults(fn=cmd_exact, needs_selector=True)

    p = sub.add_parser("vqe", help="variational ground-state runs")
    p.add_argument("--family", choices=list(FAMILY_LABELS))
    p.add_argument("--chiral", action="store_true")
    p.add_argument("--from-file", help="run on a Pauli text file")
    p.add_argument("--sites", type=int, default=1)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--scale", type=float, default=None)
    _add_vqe_flags(p)
    p.add_argument("--json", help="write the result record JSON here")
    p.add_argument("--trace", help="write the convergence CSV here")
    p.set_defaults(fn=cmd_vqe, needs_selector=True)

    p = sub.add_parser("export", help="write a ring Hamiltonian as Pauli text")
    p.add_argument("--family", choices=list(FAMILY_LABELS), required=True)
    p.add_argument("--sites", type=int, required=True)
    p.add_argument("--with-correction", action="store_true",
                   help="include the subtraction constant as an identity term")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("import", aliases=["import-pauli"],
                       help="validate and summarize a Pauli text file")
    p.add_argument("path")
    p.set_defaults(fn=cmd_import)

    p = sub.add_parser("pauli-count", help="CSV of Pauli-term growth over sites")
    p.add_argument("--family", choices=list(FAMILY_LABELS), required=True)
    p.add_argument("--sites", required=True, help="range, e.g. 1..8")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_pauli_count)

    p = sub.add_parser("dispersion", help="CSV of chiral dispersion branches")
    p.add_argument("--sites", type=int, required=True)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--scale", type=float, default=None)
    p.add_argument("--dense", type=int, default=0,
                   help="append this many fine-grid momenta from the closed form")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_dispersion)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "needs_selector", False):
        chosen = [
            bool(args.family),
            bool(args.chiral),
            bool(getattr(args, "from_file", None)),
        ]
        if sum(chosen) != 1:
            parser.error("choose exactly one of --family / --chiral / --from-file")
    try:
        return args.fn(args)
    except PauliFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
