"""Command-line front end: one job per invocation."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import canonical
from .canonical import LabelError
from .classify import (
    ClassificationError,
    classify,
    classify_first_kind_deg2,
    classify_second_kind_deg2,
    closeness_scan,
    random_automorphism,
)
from .cohomology import NotACocycleError, NotCodifferentialError, cohomology_report
from .core import Cochain, DegreeError, ParityError, bracket, is_codifferential, kind_of
from .deformation import DeformationError, run
from .grammar import ParseError, format_cochain, parse_cochain
from .oracle import oracle_bracket
from .scalars import is_symbolic, parse_rational, symbolic_field

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 2, 3, 4

LABELS = {"star", "sharp", "second-rank1", "second-rank2", "deg1-first", "deg1-second", "zero"}


class UsageError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    inputs: list
    c: object = None
    n_max: int = 6
    K_max: int = 4
    seed: int = 0
    format: str = "text"
    oracle: bool = False


def _specialize(f: Cochain, c) -> Cochain:
    if c is None:
        return f
    _, gen = symbolic_field()
    sym = gen.as_expr()

    def value(x):
        if not is_symbolic(x):
            return x
        v = x.as_expr().subs(sym, c)
        return Fraction(int(v.p), int(v.q))

    return f.substitute(value)


def read_cochain(text: str, c=None) -> Cochain:
    """A canonical label or a cochain expression."""
    t = text.strip()
    if t in LABELS or t.replace(" ", "").startswith("family("):
        return canonical.canonical_from_label(t)
    return _specialize(parse_cochain(t), c)


def _coeffs(text: str, count: int) -> list[Fraction]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise UsageError(f"expected {count} comma-separated coefficients, got {len(parts)}")
    return [parse_rational(p) for p in parts]


def _emit(cfg: JobConfig, text: str, obj, csv_text: str | None = None):
    if cfg.format == "json":
        print(json.dumps(obj, indent=2))
    elif cfg.format == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
    else:
        print(text)


def cmd_bracket(cfg: JobConfig) -> int:
    f, g = (read_cochain(x, cfg.c) for x in cfg.inputs)
    result = bracket(f, g)
    obj = {"f": format_cochain(f), "g": format_cochain(g), "bracket": format_cochain(result)}
    lines = [format_cochain(result)]
    if cfg.oracle:
        other = oracle_bracket(f, g)
        obj["oracle"] = format_cochain(other)
        obj["agree"] = other == result
        lines.append(f"oracle: {format_cochain(other)}")
        lines.append("agree" if other == result else "DISAGREE")
    _emit(cfg, "\n".join(lines), obj)
    if cfg.oracle and not obj["agree"]:
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_check(cfg: JobConfig) -> int:
    d = read_cochain(cfg.inputs[0], cfg.c)
    chk = is_codifferential(d)
    obj = {
        "cochain": format_cochain(d),
        "codifferential": chk.ok,
        "kind": kind_of(d).name.lower(),
        "residual": format_cochain(chk.residual) if chk.residual is not None else "0",
        "reason": chk.reason,
    }
    text = f"codifferential: {'yes' if chk.ok else 'no'}\nkind: {obj['kind']}"
    if not chk.ok:
        text += f"\nreason: {chk.reason}\n[d,d] = {obj['residual']}"
    _emit(cfg, text, obj)
    return EXIT_OK if chk.ok else EXIT_DOMAIN


def cmd_cohomology(cfg: JobConfig) -> int:
    d = read_cochain(cfg.inputs[0], cfg.c)
    report = cohomology_report(d, cfg.n_max)
    _emit(cfg, report.to_text().rstrip("\n"), report.to_json_obj(), report.to_csv())
    return EXIT_OK


def cmd_classify(cfg: JobConfig) -> int:
    head = cfg.inputs[0]
    if head in ("first", "second"):
        if len(cfg.inputs) != 2:
            raise UsageError(f"classify {head} needs one comma-separated coefficient list")
        if head == "first":
            res = classify_first_kind_deg2(*_coeffs(cfg.inputs[1], 4))
        else:
            res = classify_second_kind_deg2(*_coeffs(cfg.inputs[1], 3))
    else:
        res = classify(read_cochain(head, cfg.c))
    obj = res.to_json_obj()
    _emit(cfg, f"{res.label}\n{json.dumps(obj['witness'])}", obj)
    return EXIT_OK


def cmd_deform(cfg: JobConfig) -> int:
    d = read_cochain(cfg.inputs[0], cfg.c)
    result = run(d, n_max=cfg.n_max, K_max=cfg.K_max)
    obj = result.to_json_obj()
    obj["legend"] = dict(canonical.LEGEND)
    _emit(cfg, result.to_text(), obj)
    return EXIT_OK


def cmd_scan(cfg: JobConfig, eps: list[Fraction], extra: int) -> int:
    label = cfg.inputs[0]
    rep = canonical.canonical_from_label(label)
    directions = None
    if extra:
        rng = random.Random(cfg.seed)
        from .classify import act, degree2_directions

        base = degree2_directions(kind_of(rep)) if rep else degree2_directions(kind_of(canonical.d_star()))
        directions = list(base)
        for _ in range(extra):
            directions.append(act(random_automorphism(rng), base[rng.randrange(len(base))]))
    labels = sorted(closeness_scan(label, eps, directions))
    obj = {"label": label, "eps": [str(e) for e in eps], "labels": labels}
    _emit(cfg, "\n".join(labels), obj)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--c", dest="c", default=None, help="value substituted for the symbol c")
    common.add_argument("--seed", type=int, default=None)

    p = argparse.ArgumentParser(prog="linfty", description="Exact computations with L-infinity structures on a 2|1-dimensional space.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bracket", parents=[common], help="bracket of two cochains")
    b.add_argument("f")
    b.add_argument("g")
    b.add_argument("--oracle", action="store_true", help="cross-check against the coalgebra oracle")

    ch = sub.add_parser("check", parents=[common], help="is the cochain a codifferential")
    ch.add_argument("d")

    co = sub.add_parser("cohomology", parents=[common], help="cohomology table")
    co.add_argument("d")
    co.add_argument("--max-degree", type=int, default=6)

    cl = sub.add_parser("classify", parents=[common], help="canonical form with witness")
    cl.add_argument("args", nargs="+", help="'first x,a,b,c', 'second a,b,c', a label or an expression")

    de = sub.add_parser("deform", parents=[common], help="miniversal deformation")
    de.add_argument("d")
    de.add_argument("--max-degree", type=int, default=6)
    de.add_argument("--order", type=int, default=4, help="highest parameter order K_max")

    sc = sub.add_parser("scan", parents=[common], help="labels near a canonical form")
    sc.add_argument("label")
    sc.add_argument("--eps", action="append", default=None, help="perturbation size; repeat or comma-separate")
    sc.add_argument("--random", type=int, default=0, help="extra random directions, drawn with the seed")
    return p


def _config(ns) -> JobConfig:
    seed = ns.seed
    if seed is None:
        seed = int(os.environ.get("LINFTY_SEED", "0"))
    c = parse_rational(ns.c) if ns.c is not None else None
    inputs = {
        "bracket": lambda: [ns.f, ns.g],
        "check": lambda: [ns.d],
        "cohomology": lambda: [ns.d],
        "classify": lambda: list(ns.args),
        "deform": lambda: [ns.d],
        "scan": lambda: [ns.label],
    }[ns.command]()
    cfg = JobConfig(ns.command, inputs, c=c, seed=seed, format=ns.format)
    if ns.command in ("cohomology", "deform"):
        cfg.n_max = ns.max_degree
    if ns.command == "deform":
        cfg.K_max = ns.order
    if ns.command == "bracket":
        cfg.oracle = ns.oracle
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config(ns)
        if ns.command == "bracket":
            return cmd_bracket(cfg)
        if ns.command == "check":
            return cmd_check(cfg)
        if ns.command == "cohomology":
            return cmd_cohomology(cfg)
        if ns.command == "classify":
            return cmd_classify(cfg)
        if ns.command == "deform":
            return cmd_deform(cfg)
        eps = []
        for item in ns.eps or ["1/10"]:
            eps += [parse_rational(e) for e in item.split(",") if e.strip()]
        return cmd_scan(cfg, eps, ns.random)
    except (DeformationError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (DegreeError, ParityError, NotCodifferentialError, NotACocycleError, ClassificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ParseError, LabelError, UsageError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
