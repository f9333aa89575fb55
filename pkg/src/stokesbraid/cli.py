"""Command-line entry point: ``stokesbraid <command> ...`` or ``python -m stokesbraid``."""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import braidvariety as bv
from .braidmonoid import (
    BraidWord,
    braid_equal,
    braid_equal_by_rewriting,
    coxeter_braid,
    cyclically_equivalent,
    full_twist,
    normal_form,
)
from .errors import ConfigurationError, StokesBraidError
from .fields import GF, QQ
from .matgroup import ClassSpec, GroupSpec
from .report import COMMANDS, Report, RunConfig
from .rootdata import (
    CENTER_TABLE_ROWS,
    WeylElement,
    build_root_system,
    center_group,
    exponent_divides_coxeter,
)
from .stokes import (
    IrregularClassSpec,
    Label,
    check_positive_system,
    deck_twist_from_labels,
    expected_isoclinic_braid,
    standard_isoclinic,
    stokes_diagram,
)

# commands -> flags that must be present
REQUIRED = {
    "kloosterman": ("n", "class_text"),
    "airy": ("type_label", "rank"),
    "full-twist": ("type_label", "rank"),
    "stokes-braid": ("type_label", "rank", "slope"),
    "count": ("n", "q", "braid"),
    "table": (),
}


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e", "none"):
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", ",").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stokesbraid",
        description="Exact checks of rigidity for Kloosterman and Airy connections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", dest="output_format", choices=("json", "markdown"), default="json")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("kloosterman", help="Steinberg section meets a regular class in one T^w-orbit")
    p.add_argument("--group", dest="family", choices=("SL", "PGL"), default="SL")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int, help="prime field size (default: rationals)")
    p.add_argument("--class", dest="class_text", help='characteristic polynomial, e.g. "x^2-3x+1"')
    common(p)

    p = sub.add_parser("airy", help="Airy braid variety checks")
    p.add_argument("--type", dest="type_label")
    p.add_argument("--rank", type=int)
    common(p)

    p = sub.add_parser("full-twist", help="c~^h equals the full twist")
    p.add_argument("--type", dest="type_label")
    p.add_argument("--rank", type=int)
    common(p)

    p = sub.add_parser("stokes-braid", help="braid of an isoclinic irregular class")
    p.add_argument("--type", dest="type_label", default="A")
    p.add_argument("--rank", type=int)
    p.add_argument("--slope", help="d/m")
    p.add_argument("--labels", help='leading labels "r@s/t,...", meaning r*exp(i pi s/t)')
    p.add_argument("--base", dest="base_direction", help="base direction, in units of pi")
    common(p)

    p = sub.add_parser("count", help="count F_q points of a braid variety")
    p.add_argument("--group", dest="family", choices=("SL", "PGL"), default="SL")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--braid", type=_int_list, help="letters, e.g. 1,2,1")
    p.add_argument("--target", type=_int_list, help="reduced word of w; omit for no Borel condition")
    p.add_argument("--class", dest="class_text")
    p.add_argument("--method", choices=("enumerate", "flags"), default="enumerate")
    common(p)

    p = sub.add_parser("table", help="centers of simply connected groups and Coxeter numbers")
    common(p)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(ns).items() if v is not None}
    if "labels" in values:
        values["labels"] = tuple(x.strip() for x in values["labels"].split(","))
    cfg = RunConfig(**values)
    validate(cfg)
    return cfg


def validate(cfg: RunConfig):
    if cfg.command not in COMMANDS:
        raise ConfigurationError(f"unknown command {cfg.command!r}")
    missing = [k for k in REQUIRED[cfg.command] if getattr(cfg, k) is None]
    if missing:
        flags = ", ".join("--" + {"class_text": "class", "type_label": "type"}.get(k, k) for k in missing)
        raise ConfigurationError(f"{cfg.command} requires {flags}")
    if cfg.command == "count" and cfg.class_text and cfg.method == "flags":
        raise ConfigurationError("--class needs --method enumerate")


# -- commands --------------------------------------------------------------


def _absorb(report: Report, answer: bv.ModuliAnswer, prefix: str = ""):
    for c in answer.checks:
        outputs = {k: v for k, v in c.items() if k not in ("claim", "passed")}
        report.add(prefix + c["claim"], c["passed"], outputs=outputs)


def cmd_kloosterman(cfg: RunConfig, report: Report):
    field = QQ if cfg.q is None else GF(cfg.q)
    group = GroupSpec(cfg.family, cfg.n, field)
    cls = ClassSpec.regular(group, cfg.class_text)
    answer = bv.kloosterman_verify(group, cls)
    _absorb(report, answer)
    report.add(
        "Kloosterman connections are physically rigid: one T^w-orbit on Sigma_c cap C",
        answer.rigid,
        inputs={"group": group.label(), "class": cfg.class_text},
        outputs={"orbits": answer.torus_orbit_count, "points": answer.point_count_over_closure_surrogate},
    )
    report.results["moduli"] = answer.to_json()


def cmd_airy(cfg: RunConfig, report: Report):
    rs = build_root_system(cfg.type_label, cfg.rank)
    group = GroupSpec("SL", rs.rank + 1, QQ) if rs.type_label == "A" and rs.rank <= 2 else None
    answer = bv.airy_verify(rs, group, seed=cfg.seed)
    _absorb(report, answer)
    report.add(
        "Airy connections are physically rigid: the moduli space is BS for a finite S",
        answer.rigid,
        inputs={"type": rs.name, "point_counts": group is not None},
        outputs={"stabilizer_order": answer.stabilizer_order},
    )
    report.results["moduli"] = answer.to_json()


def cmd_full_twist(cfg: RunConfig, report: Report):
    rs = build_root_system(cfg.type_label, cfg.rank)
    c = coxeter_braid(rs)
    power = c**rs.coxeter_number
    twist = full_twist(rs)
    report.add(
        "c~^h represents the full twist (Garside normal form)",
        braid_equal(power, twist),
        inputs={"type": rs.name, "h": rs.coxeter_number},
        outputs={"normal_form": normal_form(power).to_json()},
    )
    if len(power) <= 9:
        report.add(
            "c~^h represents the full twist (braid-relation rewriting)",
            braid_equal_by_rewriting(power, twist),
            inputs={"type": rs.name},
        )
    report.results["coxeter_word"] = list(c.letters)
    report.results["full_twist"] = list(twist.letters)


def _irregular_class(cfg: RunConfig) -> IrregularClassSpec:
    rs = build_root_system(cfg.type_label, cfg.rank)
    try:
        slope = Fraction(cfg.slope)
    except (ValueError, ZeroDivisionError):
        raise ConfigurationError(f"bad slope {cfg.slope!r}") from None
    if cfg.labels is None:
        return standard_isoclinic(rs, slope)
    labels = tuple(Label.parse(x) for x in cfg.labels)
    return IrregularClassSpec(rs, slope, labels, deck_twist_from_labels(rs, slope, labels))


def cmd_stokes_braid(cfg: RunConfig, report: Report):
    spec = _irregular_class(cfg)
    rs = spec.root_system
    base = None if cfg.base_direction is None else Fraction(cfg.base_direction)
    diagram = stokes_diagram(spec, base)
    braid = diagram.braid
    report.add(
        "every chamber is a positive system",
        all(check_positive_system(rs, ch) for ch in diagram.chambers),
        outputs={"chambers": len(diagram.chambers)},
    )
    report.add(
        "no relative position across a Stokes direction is trivial",
        all(not w.is_identity() for w in diagram.relative_positions),
    )
    report.add(
        "letters of the braid = sum of lengths of relative positions",
        len(braid) == sum(w.length() for w in diagram.relative_positions),
        outputs={"letters": len(braid)},
    )
    target = expected_isoclinic_braid(spec)
    report.add(
        "isoclinic braid is w~^d up to cyclic shift",
        cyclically_equivalent(braid, target),
        inputs={"slope": str(spec.slope)},
        outputs={"braid": list(braid.letters), "expected": list(target.letters)},
    )
    report.results["diagram"] = diagram.to_json()
    report.results["rendering"] = diagram.render()


def cmd_count(cfg: RunConfig, report: Report):
    group = GroupSpec(cfg.family, cfg.n, GF(cfg.q))
    rs = group.root_system
    braid = BraidWord(rs, cfg.braid)
    target = None if cfg.target is None else WeylElement.from_word(rs, cfg.target)
    spec = bv.BraidVarietySpec(group, braid, target)
    cls = ClassSpec.regular(group, cfg.class_text) if cfg.class_text else None
    result = bv.count_points(spec, cfg.q, cls, method=cfg.method)
    report.add(
        "constrained count does not exceed raw count",
        result.constrained_count is None or result.constrained_count <= result.raw_count,
        outputs={"raw_count": result.raw_count, "constrained_count": result.constrained_count},
    )
    report.results["count"] = result.to_json()
    report.results["expected_dimension"] = bv.expected_dimension(braid)
    report.timings["count"] = result.elapsed


def cmd_table(cfg: RunConfig, report: Report):
    rows = []
    for label, t, ranks in CENTER_TABLE_ROWS:
        for r in ranks:
            rs = build_root_system(t, r)
            Z = center_group(rs)
            ok = exponent_divides_coxeter(rs)
            rows.append({"row": label, "type": rs.name, "center": Z.label(),
                         "exponent": Z.exponent, "h": rs.coxeter_number, "divides": ok})
        report.add(
            f"exponent of Z(G) divides h for {label}",
            all(x["divides"] for x in rows if x["row"] == label),
            inputs={"ranks": list(ranks)},
        )
    report.results["table"] = rows


DISPATCH = {
    "kloosterman": cmd_kloosterman,
    "airy": cmd_airy,
    "full-twist": cmd_full_twist,
    "stokes-braid": cmd_stokes_braid,
    "count": cmd_count,
    "table": cmd_table,
}


def run(cfg: RunConfig) -> Report:
    report = Report(cfg)
    start = time.perf_counter()
    try:
        validate(cfg)
        DISPATCH[cfg.command](cfg, report)
    except StokesBraidError as exc:
        report.error = {"kind": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
    report.timings["total"] = time.perf_counter() - start
    return report


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except StokesBraidError as exc:
        print(f"stokesbraid: {exc}", file=sys.stderr)
        return exc.exit_code
    report = run(cfg)
    if report.error:
        print(f"stokesbraid: {report.error['message']}", file=sys.stderr)
    print(report.markdown() if cfg.output_format == "markdown" else report.dumps())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
