# Sub-command bodies. Each takes the parsed argparse namespace and returns an exit code.

import csv
import json
import logging
from pathlib import Path

from fdr_forge.cli.inputs import parse_m_list, parse_shape, read_pvalues
from fdr_forge.errors import ConfigurationError
from fdr_forge.generators import GeneratorSpec, content_hash
from fdr_forge.harness import EXPERIMENTS, accepted_overrides, run_experiment, write_csv
from fdr_forge.metrics import fdr_hat, mc_fdr_many
from fdr_forge.model import ProcedureSpec
from fdr_forge.procedures import adjusted_pvalues, named_procedure, step_up

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2

SWEEP_FILE = "sweep.csv"
SWEEP_COLUMNS = [
    "key", "generator", "m", "m0", "procedure", "q", "fixed_t", "n_reps", "seed", "mean_fdp", "se", "variance",
    "mean_rejections", "mean_false_rejections", "fdp_q90", "mean_fdr_hat", "mean_threshold", "flags",
]


def _check_adjust_flags(args) -> None:
    # --shape and --pi only shape a generic step-up; --lambda only tunes Storey.
    if args.proc != "step-up":
        for flag, value in (("--shape", args.shape), ("--pi", args.pi)):
            if value is not None:
                raise ConfigurationError(f"{flag} needs --proc step-up, got --proc {args.proc}")
    if args.lam is not None and args.proc != "storey":
        raise ConfigurationError(f"--lambda needs --proc storey, got --proc {args.proc}")


def cmd_adjust(args) -> int:
    _check_adjust_flags(args)
    problem = read_pvalues(args.input)
    shape = parse_shape(args.shape, problem.m)
    spec = named_procedure(args.proc, args.q, lam=args.lam, pi=args.pi, shape=shape)
    result = step_up(problem, spec)
    t_hat = result.threshold
    estimate = fdr_hat(problem, t_hat)
    adjusted = adjusted_pvalues(problem, spec)
    lines = [
        f"procedure: {spec.name} q={spec.q!r}",
        f"m: {problem.m}",
        f"rejected: {' '.join(str(i) for i in result.one_based())}",
        f"threshold: {t_hat!r}",
        f"fdr_hat: {estimate!r}",
    ]
    print("\n".join(lines))
    if args.out:
        body = {
            "procedure": spec.to_dict(),
            "m": problem.m,
            "rejected": result.one_based(),
            "threshold": t_hat,
            "fdr_hat": estimate,
            "adjusted": adjusted.tolist(),
        }
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            json.dump(body, f, indent=2)
            f.write("\n")
        logger.info("[OK] wrote %s", args.out)
    return EXIT_OK


def experiment_overrides(args) -> dict:
    overrides = {
        "m": args.m,
        "q": args.q,
        "n_reps": args.reps,
        "seed": args.seed,
        "lam": args.lam,
        "m_list": parse_m_list(args.m_list) if args.m_list else None,
    }
    # --threads is a runtime setting; experiments without a pool just ignore it.
    if args.threads is not None and "threads" in accepted_overrides(args.name):
        overrides["threads"] = args.threads
    return overrides


def cmd_experiment(args) -> int:
    report = run_experiment(args.name, **experiment_overrides(args))
    print(f"experiment: {report.name}  seed: {args.seed}")
    for v in report.verdicts:
        se = "" if v.se is None else f" se={v.se:.3g}"
        print(f"{'PASS' if v.passed else 'FAIL'}  {v.claim}: estimate={v.estimate:.6g}{se} bound={v.margin:.6g}")
    for path in report.write(args.out):
        logger.info("[OK] wrote %s", path)
    print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_list(args) -> int:
    for name in EXPERIMENTS:
        params = ", ".join(p for p in accepted_overrides(name) if p != "threads")
        print(f"{name}: {params}")
    return EXIT_OK


def load_sweep_config(path) -> dict:
    try:
        config = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(config, dict):
        raise ConfigurationError(f"{path}: sweep config must be a JSON object")
    for key in ("generators", "procedures", "m", "q"):
        if not isinstance(config.get(key), list) or not config[key]:
            raise ConfigurationError(f"{path}: '{key}' must be a non-empty list")
    unknown = sorted(set(config) - {"generators", "procedures", "m", "q", "n_reps", "seed"})
    if unknown:
        raise ConfigurationError(f"{path}: unknown keys {', '.join(unknown)}")
    return config


def _procedure(entry, q: float) -> ProcedureSpec:
    if isinstance(entry, str):
        return named_procedure(entry, q)
    if isinstance(entry, dict):
        return ProcedureSpec.from_dict({**entry, "q": q})
    raise ConfigurationError(f"procedure entry must be a name or an object, got {entry!r}")


def sweep_cells(config: dict, seed: int | None = None) -> list[tuple[str, GeneratorSpec, ProcedureSpec, int]]:
    # Cross product generators x procedures x m x q, each keyed by a content hash.
    n_reps = int(config.get("n_reps", 1000))
    seed = int(config.get("seed", 0) if seed is None else seed)
    cells = []
    for gen in config["generators"]:
        if not isinstance(gen, dict):
            raise ConfigurationError(f"generator entry must be an object, got {gen!r}")
        base = GeneratorSpec.from_dict({"m": config["m"][0], **gen}).with_seed(seed)
        for m in config["m"]:
            for q in config["q"]:
                spec = base.with_m(int(m))
                if spec.kind == "counterexample":
                    spec = GeneratorSpec.from_dict({**spec.to_dict(), "q": q})
                for entry in config["procedures"]:
                    proc = _procedure(entry, q)
                    key = content_hash({"generator": spec.to_dict(), "procedure": proc.to_dict(), "n_reps": n_reps})
                    cells.append((key, spec, proc, n_reps))
    return cells


def _done_keys(path: Path) -> set[str]:
    if not path.exists():
        return set()
    with open(path, encoding="utf-8", newline="") as f:
        return {row["key"] for row in csv.DictReader(f) if row.get("key")}


def cmd_sweep(args) -> int:
    config = load_sweep_config(args.config)
    cells = sweep_cells(config, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    table = out / SWEEP_FILE
    done = _done_keys(table)
    todo = [c for c in cells if c[0] not in done]
    logger.info("[INFO] sweep: %d cells, %d already done", len(cells), len(cells) - len(todo))
    if not table.exists():
        write_csv(table, [], SWEEP_COLUMNS)
    for key, spec, proc, n_reps in todo:
        report = mc_fdr_many(spec, [proc], n_reps, threads=args.threads)[0]
        write_csv(table, [{"key": key, **report.csv_row()}], SWEEP_COLUMNS, append=True)
        logger.info("[OK] %s m=%d %s q=%s: FDR=%.4g", spec.kind, spec.m, proc.name, proc.q, report.mean_fdp)
    print(f"sweep: {len(todo)} new cells, {len(cells) - len(todo)} skipped -> {table}")
    return EXIT_OK


def cmd_plot(args) -> int:
    from fdr_forge.visualizations import plot_table

    path = plot_table(args.table, args.x, args.y, out=args.out, group=args.group, title=args.title)
    print(f"plot: {path}")
    return EXIT_OK
