"""Command-line front end.

Usage::

    wcrit generate --family c1 --p 0.3 --phi 1.2 --output state.json
    wcrit classify state.json
    wcrit report state.json --gamma -2
    wcrit spectra-verify
    wcrit optimize --gamma 1 --restarts 64 --seed 0
    wcrit scan --gamma-grid=-3,-2,-1,0,1,2 --csv scan.csv
    wcrit oracle-check --samples 1000 --seed 0

Exit codes: 0 success, 1 domain error (bad state file, failed check), 2 usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import classifier, optimizer, spectra, wfamily
from .oracle import oracle_check
from .serialization import dumps, read_state, parse_state, state_to_dict, write_state
from .statevec import StateError
from .uncertainty import report

log = logging.getLogger("wcrit")

_VARIANT_FLAG = {"paper": "paper_split", "robertson": "robertson"}


class _UsageError(Exception):
    pass


def _variant(args) -> str:
    return _VARIANT_FLAG[args.variant]


def _load(path: str, normalize: bool):
    if path == "-":
        return parse_state(sys.stdin.read(), normalize=normalize)
    return read_state(path, normalize=normalize)


def _emit(args, doc, text: Optional[str] = None) -> None:
    out = dumps(doc) if text is None else text
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    if getattr(args, "output", None):
        Path(args.output).write_text(out if out.endswith("\n") else out + "\n")


def _cmd_classify(args) -> int:
    docs, states, failed = [], [], False
    for path in args.files:
        try:
            states.append(_load(path, args.normalize))
        except StateError as exc:
            log.error("%s: %s", path, exc)
            states.append(exc)
            failed = True
    verdicts = classifier.scan([s for s in states if not isinstance(s, Exception)],
                               args.tolerance, variant=_variant(args))
    it = iter(verdicts)
    for path, item in zip(args.files, states):
        result = item if isinstance(item, Exception) else next(it)
        if isinstance(result, Exception):
            failed = True
            docs.append({"file": path, "error": str(result)})
        else:
            docs.append({"file": path, **result.to_dict()})
    _emit(args, docs[0] if len(docs) == 1 else docs)
    return 1 if failed else 0


def _cmd_report(args) -> int:
    state = _load(args.file, args.normalize)
    _emit(args, report(state, args.gamma, variant=_variant(args)).to_dict())
    return 0


def _cmd_generate(args) -> int:
    params = wfamily.CriticalParams(args.family, args.p, args.phi)
    state = wfamily.critical_state(params)
    if args.output:
        write_state(state, args.output)
    sys.stdout.write(dumps(state_to_dict(state)) + "\n")
    return 0


def _cmd_spectra_verify(args) -> int:
    expected = {k: np.sort(spectra.EIGENVALUES[k]) for k in spectra.KINDS}
    doc, ok = {}, True
    for kind in spectra.KINDS:
        spec = spectra.eigen_solve(spectra.block_operator(kind))
        match = bool(np.max(np.abs(spec.eigenvalues - expected[kind])) <= 1e-12)
        residual = max(
            float(np.linalg.norm(spectra.block_operator(kind) @ spectra.eigenstate(i)
                                 - spectra.EIGENVALUES[kind][i - 1]
                                 * spectra.eigenstate(i).amps))
            for i in range(1, 9))
        ok &= match and residual <= 1e-12
        doc[kind] = {"eigenvalues": spec.eigenvalues.tolist(),
                     "degeneracies": [list(d) for d in spec.degeneracies],
                     "eigenstate_residual": residual,
                     "match": match}
        log.info("%s: %s", kind, np.round(spec.eigenvalues, 12).tolist())
    basis = spectra.eigenbasis()
    ortho = float(np.max(np.abs(basis.conj().T @ basis - np.eye(8))))
    ok &= ortho <= 1e-12
    doc["orthonormality_residual"] = ortho
    doc["status"] = "PASS" if ok else "FAIL"
    _emit(args, doc)
    return 0 if ok else 1


def _config(args, **extra) -> optimizer.OptimizerConfig:
    return optimizer.OptimizerConfig(restarts=args.restarts, max_iters=args.max_iters,
                                     seed=args.seed, sense=args.sense,
                                     variant=_variant(args), **extra)


def _cmd_optimize(args) -> int:
    result = optimizer.optimize_ratio(args.gamma, _config(args))
    if result.counterexample is not None and args.counterexample:
        write_state(result.counterexample, args.counterexample)
        log.warning("claim check %s; counterexample written to %s",
                    result.claim_check.value, args.counterexample)
    _emit(args, result.to_dict())
    return 0


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        grid = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise _UsageError(f"--gamma-grid: not a comma-separated list of numbers: {text!r}")
    if not grid:
        raise _UsageError("--gamma-grid: must be nonempty")
    return grid


def _cmd_scan(args) -> int:
    grid = _parse_grid(args.gamma_grid)
    results = optimizer.gamma_scan(_config(args, gamma_grid=grid))
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["gamma", "best_ratio"])
        for r in results:
            writer.writerow([repr(r.gamma), repr(r.best_ratio)])
        Path(args.csv).write_text(buf.getvalue())
    _emit(args, [r.to_dict() for r in results])
    return 0


def _cmd_oracle_check(args) -> int:
    summary = oracle_check(args.samples, args.seed)
    for key, value in summary.max_residuals.items():
        log.info("%-13s max residual %.3e", key, value)
    _emit(args, summary.to_dict())
    return 0 if summary.passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress diagnostics")
    common.add_argument("--output", help="also write the output document here")

    state_opts = argparse.ArgumentParser(add_help=False)
    state_opts.add_argument("--variant", choices=sorted(_VARIANT_FLAG), default="robertson")
    state_opts.add_argument("--normalize", action="store_true",
                            help="rescale input states instead of rejecting them")

    opt_opts = argparse.ArgumentParser(add_help=False)
    opt_opts.add_argument("--restarts", type=int, default=64)
    opt_opts.add_argument("--max-iters", type=int, default=2000)
    opt_opts.add_argument("--seed", type=int, default=0)
    opt_opts.add_argument("--sense", choices=optimizer.SENSES, default="min")
    opt_opts.add_argument("--variant", choices=sorted(_VARIANT_FLAG), default="robertson")

    parser = argparse.ArgumentParser(prog="wcrit", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", parents=[common, state_opts])
    p.add_argument("files", nargs="+", help="state files ('-' for stdin)")
    p.add_argument("--tolerance", type=float, default=classifier.DEFAULT_TOLERANCE)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("report", parents=[common, state_opts])
    p.add_argument("file")
    p.add_argument("--gamma", type=float, default=1.0)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("generate", parents=[common])
    p.add_argument("--family", choices=wfamily.FAMILIES, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("spectra-verify", parents=[common])
    p.set_defaults(func=_cmd_spectra_verify)

    p = sub.add_parser("optimize", parents=[common, opt_opts])
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--counterexample", help="write the best state here if the claim check fails")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("scan", parents=[common, opt_opts])
    p.add_argument("--gamma-grid", required=True, help="comma-separated gamma values")
    p.add_argument("--csv", help="write gamma,best_ratio rows here")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("oracle-check", parents=[common])
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_oracle_check)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.INFO,
                        format="%(levelname)s: %(message)s", stream=sys.stderr,
                        force=True)
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        log.error("%s", exc)
        return 2
    except (StateError, ValueError) as exc:
        log.error("%s", exc)
        return 1


def main() -> None:
    sys.exit(run())
