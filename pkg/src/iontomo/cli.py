"""Command-line entry point: ``iontomo {simulate,reconstruct,analyze,decay-scan}``.

Exit codes: 0 success, 2 invalid input or configuration, 3 file I/O error,
4 likelihood maximisation did not converge (the result is still written).
"""

from __future__ import annotations

import argparse
import sys
import warnings

import numpy as np

from . import entangle, experiment, formats, measure, pulsesim, qstate, recon, stats
from .errors import ConfigError, NotConverged, TomographyError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3
EXIT_NOT_CONVERGED = 4

SCAN_COLUMNS = ("t", "beta_m", "f_m", "fidelity", "eof", "ppt_min_eig")


def _times(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad time list {text!r}") from None


def _config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON experiment config; flags override its values")
    p.add_argument("--bell", help="PsiPlus, PsiMinus, PhiPlus or PhiMinus")
    p.add_argument("--shots", type=int, help="repetitions per analysis setting (default 200)")
    p.add_argument("--seed", type=int)
    p.add_argument("--crosstalk", type=float, help="addressing intensity leakage")
    p.add_argument("--preset", choices=sorted(experiment.PRESETS))
    p.add_argument("--time", type=float, help="hold time in seconds before tomography")
    p.add_argument("--omega-beta", type=float, help="differential splitting, rad/s")
    p.add_argument("--gamma-c", type=float, help="collective dephasing rate, 1/s")
    p.add_argument("--gamma-d", type=float, help="differential dephasing rate, 1/s")


def build_config(args) -> experiment.ExperimentConfig:
    cfg = experiment.ExperimentConfig()
    if args.config:
        data = formats.read_json(args.config)
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        cfg = experiment.ExperimentConfig.from_dict(data)
    noise = cfg.noise
    overrides = {"omega_beta": args.omega_beta, "gamma_collective": args.gamma_c,
                 "gamma_differential": args.gamma_d}
    if any(v is not None for v in overrides.values()):
        current = {k: getattr(noise, k) for k in overrides}
        current.update({k: v for k, v in overrides.items() if v is not None})
        try:
            noise = pulsesim.DecoherenceParams(**current)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    try:
        return cfg.updated(
            bell_kind=args.bell, shots=args.shots, seed=args.seed, crosstalk=args.crosstalk,
            preset=args.preset, hold_time=args.time, noise=noise,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_simulate(args) -> int:
    cfg = build_config(args)
    rho = experiment.prepare_state(cfg)
    records = measure.simulate_dataset(rho, cfg.shots, cfg.seed)
    formats.write_json(args.out, formats.dataset_to_json(records))
    print("true density matrix:")
    print(formats.dumps(formats.matrix_to_json(rho)))
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    records = formats.dataset_from_json(formats.read_json(args.dataset))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotConverged)
        rep = recon.mle_reconstruct(records)
    result = {
        "rho": formats.matrix_to_json(rep.rho),
        "log_likelihood": rep.log_likelihood,
        "iterations": rep.iterations,
        "converged": rep.converged,
        "initial_point": formats.matrix_to_json(rep.initial_point),
        "initial_log_likelihood": rep.initial_log_likelihood,
        "linear_inversion": formats.matrix_to_json(rep.linear_inversion),
    }
    formats.write_json(args.out, result)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(formats.matrix_to_csv(rep.rho))
    if not rep.converged:
        print(f"warning: not converged after {rep.iterations} iterations", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_analyze(args) -> int:
    data = formats.read_json(args.result)
    if not isinstance(data, dict) or "rho" not in data:
        raise ValueError("result file has no 'rho' entry")
    rho = formats.matrix_from_json(data["rho"])
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got {rho.shape}")
    check = qstate.is_physical(rho)
    if not check:
        raise ValueError(f"density matrix is not physical ({', '.join(check.failures)})")
    target = qstate.bell_state(args.bell or qstate.BellKind.PSI_PLUS)
    report = entangle.analyze(rho)
    out = {"entanglement": report.to_dict(), "fidelity": qstate.fidelity_pure(rho, target)}
    _, ppt = entangle.ppt_min_eigenvalue(rho)

    if args.bootstrap:
        boot = stats.bootstrap_errors(
            rho, args.shots or measure.DEFAULT_SHOTS, args.bootstrap, args.seed or 0, target,
            workers=args.workers,
        )
        out["bootstrap"] = boot.to_dict()

        def show(name, value, key):
            print(f"{name:<12} {stats.format_with_error(value, boot[key].std)}")
    else:

        def show(name, value, key):
            print(f"{name:<12} {value:.3f}")

    show("fidelity", out["fidelity"], "fidelity")
    show("eof", report.eof, "eof")
    show("concurrence", report.concurrence, "concurrence")
    show("ppt_min_eig", report.ppt_min_eig, "ppt_min_eig")
    show("chsh", report.chsh, "chsh")
    for i, w in enumerate(ppt):
        show(f"ppt_eig_{i}", w, f"ppt_eig_{i}")
    print(f"{'beta_m':<12} {report.beta_m:.3f}")
    print(f"{'f_m':<12} {report.f_m:.3f}")
    if args.out:
        formats.write_json(args.out, out)
    return EXIT_OK


def cmd_decay_scan(args) -> int:
    cfg = build_config(args)
    if not args.times:
        raise ConfigError("--times is required")
    rows = experiment.decay_scan(cfg, args.times, exact=args.exact)
    with open(args.out, "w") as fh:
        fh.write(formats.table_to_csv(rows, SCAN_COLUMNS))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iontomo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate a nine-setting counts dataset")
    _config_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reconstruct", help="maximum-likelihood reconstruction of a dataset")
    p.add_argument("dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--csv", help="also write rho as a 16-row row,col,re,im table")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("analyze", help="entanglement measures of a reconstructed state")
    p.add_argument("result")
    p.add_argument("--bell", help="target state for the fidelity (default PsiPlus)")
    p.add_argument("--bootstrap", type=int, metavar="TRIALS", help="bootstrap error bars")
    p.add_argument("--shots", type=int, help="shots per setting in the bootstrap (default 200)")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decay-scan", help="tomography after a list of hold times (CSV)")
    _config_args(p)
    p.add_argument("--times", type=_times, required=True, help="comma-separated seconds")
    p.add_argument("--exact", action="store_true", help="use noiseless expected counts")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decay_scan)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    np.set_printoptions(precision=4, suppress=True)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (TomographyError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
