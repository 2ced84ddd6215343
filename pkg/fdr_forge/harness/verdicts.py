# PASS/FAIL verdicts and experiment reports.

import csv
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path

from fdr_forge.metrics import SimulationReport
from fdr_forge.settings import SIGMA_MARGIN

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    claim: str
    reference: str
    estimate: float
    se: float | None
    margin: float
    passed: bool
    detail: str = ""

    def log(self) -> None:
        tag = "[PASS]" if self.passed else "[FAIL]"
        se = "n/a" if self.se is None else f"{self.se:.3g}"
        logger.info("%s %s: estimate=%.6g se=%s bound=%.6g %s", tag, self.claim, self.estimate, se, self.margin, self.detail)


def at_most(claim: str, reference: str, report: SimulationReport, bound: float, detail: str = "") -> Verdict:
    # FDR estimate within 3 standard errors of being <= bound.
    se = report.se or 0.0
    ok = report.mean_fdp <= bound + SIGMA_MARGIN * se
    return Verdict(claim, reference, report.mean_fdp, report.se, bound, bool(ok), detail)


def exceeds(claim: str, reference: str, report: SimulationReport, bound: float, detail: str = "") -> Verdict:
    # Failure demonstrations: lower 3-sigma band and point estimate both above bound.
    se = report.se or 0.0
    ok = report.mean_fdp - SIGMA_MARGIN * se > bound and report.mean_fdp > bound
    return Verdict(claim, reference, report.mean_fdp, report.se, bound, bool(ok), detail)


def check(claim: str, reference: str, estimate: float, bound: float, ok: bool, se: float | None = None,
          detail: str = "") -> Verdict:
    return Verdict(claim, reference, float(estimate), se, float(bound), bool(ok), detail)


@dataclass
class ExperimentReport:
    name: str
    config: dict
    verdicts: list[Verdict] = field(default_factory=list)
    tables: dict[str, list[dict]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def add(self, verdict: Verdict) -> Verdict:
        verdict.log()
        self.verdicts.append(verdict)
        return verdict

    def to_dict(self) -> dict:
        return {
            "experiment": self.name,
            "pass": self.passed,
            "config": self.config,
            "verdicts": [
                {**{k: v for k, v in asdict(x).items() if k != "passed"}, "pass": x.passed} for x in self.verdicts
            ],
        }

    def write(self, out_dir) -> list[Path]:
        # <name>.json plus one <name>_<table>.csv per table.
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = [out / f"{self.name}.json"]
        with open(written[0], "w", encoding="utf-8", newline="\n") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True, default=_jsonable)
            f.write("\n")
        for table, rows in self.tables.items():
            path = out / f"{self.name}_{table}.csv"
            write_csv(path, rows)
            written.append(path)
        return written


def _jsonable(obj):
    if hasattr(obj, "tolist"):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def write_csv(path, rows: list[dict], columns: list[str] | None = None, append: bool = False) -> None:
    # RFC-4180 CSV, UTF-8, LF line endings.
    columns = columns or (list(rows[0].keys()) if rows else [])
    mode = "a" if append else "w"
    with open(path, mode, encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=columns, lineterminator="\n")
        if not append:
            writer.writeheader()
        writer.writerows(rows)
