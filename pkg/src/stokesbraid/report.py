"""Run configuration, check records and deterministic report rendering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from importlib import resources


COMMANDS = ("kloosterman", "airy", "full-twist", "stokes-braid", "count", "table")

# Exit codes
OK, CHECK_FAILED, CONFIG_ERROR, RESOURCE_ERROR = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    type_label: str | None = None
    rank: int | None = None
    family: str = "SL"
    n: int | None = None
    q: int | None = None
    class_text: str | None = None
    slope: str | None = None
    labels: tuple[str, ...] | None = None
    base_direction: str | None = None
    braid: tuple[int, ...] | None = None
    target: tuple[int, ...] | None = None
    method: str = "enumerate"
    output_format: str = "json"
    seed: int = 0

    def to_json(self) -> dict:
        out = asdict(self)
        for k in ("labels", "braid", "target"):
            if out[k] is not None:
                out[k] = list(out[k])
        return out


@dataclass
class CheckRecord:
    claim: str
    inputs: dict
    outputs: dict
    passed: bool

    def to_json(self) -> dict:
        return {"claim": self.claim, "inputs": self.inputs, "outputs": self.outputs, "passed": self.passed}


CONVENTIONS = {
    "borel": "upper triangular",
    "s_dot_i": "[[0,-1],[1,0]] in rows/cols i,i+1",
    "b_i(z)": "x_i(z) s_dot_i = [[z,-1],[1,0]] in rows/cols i,i+1",
    "simple_root_character": "alpha_i(t) = t_i / t_{i+1}",
    "coxeter_word": "s_1 s_2 ... s_rank",
    "braid_variety": "w^-1 b_{i_1}(z_1) ... b_{i_r}(z_r) in B",
    "monodromy": "b_{i_1}(z_1) ... b_{i_r}(z_r), imposed equal to 1 (not merely central)",
    "angles": "exact fractions of pi",
    "chamber_positivity": "decaying roots, Re(a e^{-i nu theta}) < 0",
    "rigidity_surrogate": "one torus orbit over the tested field plus a point-count fit "
    "consistent with a single orbit; stands in for the statement over C",
}


@dataclass
class Report:
    config: RunConfig
    records: list[CheckRecord] = field(default_factory=list)
    results: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    error: dict | None = None

    def add(self, claim: str, passed: bool, inputs: dict | None = None, outputs: dict | None = None):
        self.records.append(CheckRecord(claim, inputs or {}, outputs or {}, bool(passed)))
        return passed

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return self.error["exit_code"]
        return OK if all(r.passed for r in self.records) else CHECK_FAILED

    def summary(self) -> dict:
        passed = sum(r.passed for r in self.records)
        return {
            "checks": len(self.records),
            "passed": passed,
            "failed": len(self.records) - passed,
            "exit_code": self.exit_code,
        }

    def body(self) -> dict:
        """Everything except timings; identical for identical configs."""
        return {
            "config": self.config.to_json(),
            "conventions": CONVENTIONS,
            "records": [r.to_json() for r in self.records],
            "results": self.results,
            "summary": self.summary(),
            "error": self.error,
        }

    def to_json(self) -> dict:
        return {**self.body(), "timings": self.timings}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, default=str)

    def markdown(self) -> str:
        lines = [f"# stokesbraid {self.config.command}", ""]
        cfg = {k: v for k, v in self.config.to_json().items() if v is not None}
        lines.append("Config: " + ", ".join(f"`{k}={v}`" for k, v in sorted(cfg.items())))
        lines.append("")
        if self.error:
            lines += [f"**Error** ({self.error['kind']}): {self.error['message']}", ""]
        if self.records:
            lines += ["| claim | result |", "|---|---|"]
            for r in self.records:
                lines.append(f"| {r.claim} | {'pass' if r.passed else 'FAIL'} |")
            lines.append("")
        if "rendering" in self.results:
            lines += ["```", self.results["rendering"], "```", ""]
        s = self.summary()
        lines.append(f"{s['passed']}/{s['checks']} checks passed, exit code {s['exit_code']}.")
        return "\n".join(lines) + "\n"


def load_schema() -> dict:
    text = resources.files("stokesbraid").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)
