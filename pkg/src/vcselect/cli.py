"""Command-line front end.

Subcommands: simulate (synthetic CSV), xi (discrepancy curve for one
model), fit (bound-curve fit of a saved curve), select (full nested-model
sweep and selection), compare (multi-seed simulation tally).  Every run
writes a manifest JSON capturing the resolved configuration, the package
version and input digests, so outputs can be reproduced from the manifest
alone.
"""

import argparse
import hashlib
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np
import pandas as pd

from . import __version__
from .bootstrap import XiCurve, xi_curve
from .bound import fit_vc
from .config import (
    BootstrapConfig,
    CGrid,
    DesignPoints,
    DiscretizationConfig,
    SelectionConfig,
)
from .data import Dataset, validate_dataset
from .errors import (
    AllDomainError,
    DataValidationError,
    DomainError,
    LossExceedsBoundError,
    MissingColumnError,
    NoModelWithinTError,
    ParseError,
    SingularCovarianceError,
    StratumTooSmallError,
    VcselectError,
    ZeroVarianceError,
)
from .linear import sphere as sphere_op
from .linear import standardize as standardize_op
from .selection import NestedModelList, corr_order, select_vc, sweep
from .simulate import SimulationConfig, simulate

log = logging.getLogger("vcselect")

EXIT_CODES = (
    (ParseError, 3),
    (MissingColumnError, 4),
    (StratumTooSmallError, 5),
    (NoModelWithinTError, 7),
    (LossExceedsBoundError, 8),
    (ZeroVarianceError, 9),
    (SingularCovarianceError, 10),
    (AllDomainError, 6),
    (DomainError, 6),
    (DataValidationError, 11),
    (VcselectError, 12),
)


@dataclass
class RunManifest:
    command: str
    config: dict
    seed: int
    version: str
    duration_s: float
    input_digests: dict

    def write(self, path):
        with open(path, "w") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def load_csv(path, response, block=None):
    """Read a CSV into a Dataset, dropping rows with missing used values."""
    try:
        frame = pd.read_csv(path)
    except pd.errors.ParserError as exc:
        raise ParseError(-1, "", str(exc)) from exc
    if response not in frame.columns:
        raise MissingColumnError(response)
    if block is not None and block not in frame.columns:
        raise MissingColumnError(block)
    covars = [c for c in frame.columns if c not in (response, block)]
    used = frame[covars + [response]].apply(pd.to_numeric, errors="coerce")
    keep = used.notna().all(axis=1)
    dropped = int((~keep).sum())
    if dropped:
        log.info("dropped %d rows with missing or non-numeric values", dropped)
    used = used[keep]
    blocks = frame.loc[keep, block].to_numpy() if block is not None else None
    d = Dataset(
        used[covars].to_numpy(dtype=np.float64),
        used[response].to_numpy(dtype=np.float64),
        tuple(covars),
        blocks,
    )
    return validate_dataset(d)


def _parse_design(text):
    return DesignPoints(tuple(int(tok) for tok in text.split(",") if tok))


def _prepare(args):
    """Load, optionally standardize and sphere, per the shared flags."""
    d = load_csv(args.data, args.response, args.block_column)
    if args.standardize:
        d, _ = standardize_op(d)
    if args.sphere:
        d = sphere_op(d)
    return d


def _bootstrap_cfg(args):
    return BootstrapConfig(
        b1=args.b1,
        b2=args.b2,
        seed=args.seed,
        stratified=args.block_column is not None,
        workers=args.workers,
    )


def _write_manifest(args, started, out_base, extra=None):
    config = {k: v for k, v in vars(args).items() if k not in ("func",)}
    if extra:
        config.update(extra)
    digests = {}
    for key in ("data", "curve"):
        path = getattr(args, key, None)
        if path:
            digests[path] = _digest(path)
    RunManifest(
        command=args.command,
        config=config,
        seed=getattr(args, "seed", 0),
        version=__version__,
        duration_s=round(time.time() - started, 3),
        input_digests=digests,
    ).write(out_base + ".manifest.json")


def cmd_simulate(args):
    started = time.time()
    cfg = SimulationConfig(
        p=args.p,
        n=args.n,
        sigma_eps=args.sigma_eps,
        mu_beta=args.mu_beta,
        sigma_beta=args.sigma_beta,
        mu_x=args.mu_x,
        sigma_x=args.sigma_x,
        decoys=args.decoys,
        seed=args.seed,
    )
    result = simulate(cfg)
    d = result.dataset
    frame = pd.DataFrame(d.X, columns=list(d.columns))
    frame["y"] = d.y
    frame.to_csv(args.out + ".csv", index=False, float_format="%.17g")
    with open(args.out + ".beta.json", "w") as fh:
        json.dump({"beta_raw": result.beta.tolist()}, fh, indent=2)
        fh.write("\n")
    _write_manifest(args, started, args.out)
    log.info("wrote %s.csv (%d rows, %d columns)", args.out, d.n, d.p)
    return 0


def _model_columns(d, args):
    if args.columns:
        names = [tok for tok in args.columns.split(",") if tok]
        return [d.column_index(nm) for nm in names]
    return list(range(d.p))


def cmd_xi(args):
    started = time.time()
    d = _prepare(args)
    cols = _model_columns(d, args)
    curve = xi_curve(
        d,
        cols,
        _parse_design(args.design_points),
        DiscretizationConfig(m=args.m),
        _bootstrap_cfg(args),
    )
    curve.to_tsv(args.out + ".curve.tsv")
    with open(args.out + ".curve.json", "w") as fh:
        json.dump(curve.to_json(), fh, indent=2)
        fh.write("\n")
    _write_manifest(args, started, args.out, {"model_columns": cols})
    return 0


def cmd_fit(args):
    started = time.time()
    curve = XiCurve.from_tsv(args.curve)
    grid = CGrid(args.c_min, args.c_max, args.c_step)
    est = fit_vc(curve, grid, args.d_max, trace=args.trace)
    with open(args.out + ".estimate.json", "w") as fh:
        json.dump(est.to_json(), fh, indent=2)
        fh.write("\n")
    if args.trace:
        est.trace_to_tsv(args.out + ".trace.tsv")
    _write_manifest(args, started, args.out)
    print(f"d_hat={est.d_hat:.6g} c_hat={est.c_hat:.6g} objective={est.objective:.6g}")
    return 0


def cmd_select(args):
    started = time.time()
    d = _prepare(args)
    if args.order == "correlation":
        models = corr_order(d)
    else:
        models = NestedModelList(tuple(range(d.p)))
    report = sweep(
        d,
        models,
        _parse_design(args.design_points),
        DiscretizationConfig(m=args.m),
        _bootstrap_cfg(args),
        CGrid(args.c_min, args.c_max, args.c_step),
        eta=args.eta,
        folds=args.folds,
        d_max=args.d_max,
    )
    q_star = select_vc(report, SelectionConfig(args.rule, args.t))
    report.to_tsv(args.out + ".report.tsv")
    selected = {
        "q_star_vc": q_star,
        "order": [d.columns[j] for j in models.order],
        "argmin": {
            name: report.argmin(name) for name in ("erm1", "erm2", "aic", "bic", "cv")
        },
    }
    with open(args.out + ".selection.json", "w") as fh:
        json.dump(selected, fh, indent=2)
        fh.write("\n")
    _write_manifest(args, started, args.out)
    print(f"selected q*={q_star} ({', '.join(selected['order'][:q_star])})")
    return 0


def cmd_compare(args):
    started = time.time()
    seeds = [int(tok) for tok in args.seeds.split(",") if tok]
    rows = []
    for seed in seeds:
        result = simulate(
            SimulationConfig(
                p=args.p,
                n=args.n,
                sigma_eps=args.sigma_eps,
                decoys=args.decoys,
                seed=seed,
            )
        )
        d = result.dataset
        models = corr_order(d) if args.order == "correlation" else NestedModelList(
            tuple(range(d.p))
        )
        report = sweep(
            d,
            models,
            _parse_design(args.design_points),
            DiscretizationConfig(m=args.m),
            BootstrapConfig(args.b1, args.b2, seed, False, args.workers),
            eta=args.eta,
            folds=args.folds,
            d_max=args.d_max,
        )
        row = {"seed": seed, "vc": select_vc(report, SelectionConfig(args.rule, args.t))}
        for name in ("erm1", "erm2", "aic", "bic", "cv"):
            row[name] = report.argmin(name)
        rows.append(row)
        log.info("seed %d: %s", seed, row)
    frame = pd.DataFrame(rows)
    frame.to_csv(args.out + ".tally.tsv", sep="\t", index=False)
    _write_manifest(args, started, args.out)
    counts = frame.drop(columns="seed").apply(lambda col: col.value_counts().idxmax())
    print("modal selected size per criterion:")
    print(counts.to_string())
    return 0


def _add_io_flags(sp, data_required=True):
    sp.add_argument("--data", required=data_required, help="input CSV path")
    sp.add_argument("--response", default="y", help="response column name")
    sp.add_argument("--block-column", default=None, help="stratification column")
    sp.add_argument(
        "--standardize",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="center and scale covariates and response",
    )
    sp.add_argument(
        "--sphere",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="decorrelate covariates to unit covariance",
    )


def _add_bootstrap_flags(sp):
    sp.add_argument("--design-points", required=True, help="comma list, e.g. 50,100,200")
    sp.add_argument("--m", type=int, default=10, help="loss intervals")
    sp.add_argument("--b1", type=int, default=50, help="inner bootstrap replicates")
    sp.add_argument("--b2", type=int, default=50, help="outer bootstrap replicates")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)


def _add_grid_flags(sp):
    sp.add_argument("--c-min", type=float, default=0.01)
    sp.add_argument("--c-max", type=float, default=100.0)
    sp.add_argument("--c-step", type=float, default=0.01)
    sp.add_argument("--d-max", type=float, default=None)


def _add_selection_flags(sp):
    sp.add_argument("--order", choices=("correlation", "file"), default="correlation")
    sp.add_argument("--rule", choices=("local", "global"), default="local")
    sp.add_argument("--t", type=float, default=0.0)
    sp.add_argument("--eta", type=float, default=0.05)
    sp.add_argument("--folds", type=int, default=10)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="vcselect",
        description="VC dimension estimation and model selection for regression",
    )
    ap.add_argument("--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="generate a synthetic dataset CSV")
    sp.add_argument("--p", type=int, required=True, help="true model size")
    sp.add_argument("--n", type=int, required=True, help="rows")
    sp.add_argument("--sigma-eps", type=float, default=0.4)
    sp.add_argument("--mu-beta", type=float, default=5.0)
    sp.add_argument("--sigma-beta", type=float, default=3.0)
    sp.add_argument("--mu-x", type=float, default=5.0)
    sp.add_argument("--sigma-x", type=float, default=2.0)
    sp.add_argument("--decoys", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True, help="output path prefix")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("xi", help="estimate the discrepancy curve for one model")
    _add_io_flags(sp)
    _add_bootstrap_flags(sp)
    sp.add_argument("--columns", default=None, help="comma list of model columns")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_xi)

    sp = sub.add_parser("fit", help="fit the bound curve to a saved discrepancy curve")
    sp.add_argument("--curve", required=True, help="curve TSV from the xi command")
    _add_grid_flags(sp)
    sp.add_argument("--trace", action="store_true", help="also write the per-c trace")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("select", help="sweep nested models and select one")
    _add_io_flags(sp)
    _add_bootstrap_flags(sp)
    _add_grid_flags(sp)
    _add_selection_flags(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_select)

    sp = sub.add_parser("compare", help="tally selections over simulated seeds")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sigma-eps", type=float, default=0.4)
    sp.add_argument("--decoys", type=int, default=0)
    sp.add_argument("--seeds", required=True, help="comma list of seeds")
    _add_bootstrap_flags(sp)
    _add_grid_flags(sp)
    _add_selection_flags(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_compare)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except VcselectError as exc:
        for klass, code in EXIT_CODES:
            if isinstance(exc, klass):
                print(f"error: {exc}", file=sys.stderr)
                return code
        print(f"error: {exc}", file=sys.stderr)
        return 12
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 13


if __name__ == "__main__":
    sys.exit(main())
