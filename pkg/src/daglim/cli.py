"""Command-line front end: ``daglim limit|weights|laws|scalars|verify-unique``.

Exit codes: 0 success, 1 invalid input or unsupported request, 2 a law that
should hold on the chosen backend produced a counterexample.  Errors go to
stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .diagram import parse_validate
from .errors import DaglimError
from .laws import run_law_suite
from .limits import DaggerLimitResult, cone_residual, dagger_limit, unitary_comparison
from .matcat import Morphism, compose, dagger, identity
from .scalars import DEFAULT_EPSILON, backend_named, format_complex
from .semiring import (
    SEMIRINGS,
    BackendScalars,
    characteristic_probe,
    classify_backend,
    embedding_probe,
    order_probe,
)
from .serialize import matrix_to_json, result_to_json

EXIT_OK, EXIT_INVALID, EXIT_LAW = 0, 1, 2


@dataclass(frozen=True)
class CliConfig:
    command: str
    input_path: str | None
    omega: str | None
    epsilon: float
    seed: int
    trials: int
    output: str
    backend: str
    semiring: str


def _default_epsilon() -> float:
    raw = os.environ.get("DAGLIM_EPSILON")
    if raw is None:
        return DEFAULT_EPSILON
    try:
        value = float(raw)
    except ValueError:
        raise SystemExit(f"DAGLIM_EPSILON={raw!r} is not a number") from None
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="daglim", description="Dagger limits of matrix diagrams.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--epsilon", type=float, default=None,
                        help="numerical tolerance (default 1e-9, or $DAGLIM_EPSILON)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", choices=["json", "text"], default="json")

    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("limit", "compute the dagger limit of a diagram file"),
        ("weights", "print the canonical weight of every object"),
        ("verify-unique", "compute the limit twice in different bases and compare"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file")
        p.add_argument("--omega", default=None, help='"all", "leaves" or a comma-separated list')

    p = sub.add_parser("laws", parents=[common], help="run the law suite on a backend")
    p.add_argument("--backend", default="complex-f64")
    p.add_argument("--trials", type=int, default=500)

    p = sub.add_parser("scalars", parents=[common], help="run the semiring pipeline probes")
    p.add_argument("--semiring", choices=["nat", "rational", "gauss", "backend"], default="nat")
    p.add_argument("--backend", default="complex-f64")
    p.add_argument("--trials", type=int, default=2000)
    return parser


def parse_config(argv) -> CliConfig:
    ns = build_parser().parse_args(argv)
    eps = ns.epsilon if ns.epsilon is not None else _default_epsilon()
    return CliConfig(
        command=ns.command,
        input_path=getattr(ns, "file", None),
        omega=getattr(ns, "omega", None),
        epsilon=eps,
        seed=ns.seed,
        trials=getattr(ns, "trials", 1),
        output=ns.out,
        backend=getattr(ns, "backend", "complex-f64"),
        semiring=getattr(ns, "semiring", "nat"),
    )


# text rendering


def _fmt(x) -> str:
    if isinstance(x, complex):
        return format_complex(x)
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _matrix_text(f: Morphism) -> str:
    rows = [" ".join(_fmt(f.matrix[i, j]) for j in range(f.dom.dim)) for i in range(f.cod.dim)]
    return "[" + "; ".join(rows) + "]"


def _limit_text(result: DaggerLimitResult) -> str:
    lines = [
        f"limit_dim: {result.limit_object.dim}",
        f"omega: {', '.join(result.omega)}",
        f"trace_id_L: {result.trace_id_L}",
        f"normalization_residual: {_fmt(result.normalization_residual)}",
    ]
    for name, f in result.limit_maps.items():
        lines.append(f"l_{name}: {_matrix_text(f)}")
    lines += _weights_lines(result)
    return "\n".join(lines)


def _weights_lines(result: DaggerLimitResult) -> list[str]:
    width = max((len(n) for n in result.weights), default=0)
    return [f"weight {name:<{width}}  {w}" for name, w in result.weights.items()]


# commands


def _load_limit(cfg: CliConfig, rng=None) -> tuple:
    d = parse_validate(cfg.input_path, epsilon=cfg.epsilon)
    return d, dagger_limit(d, cfg.omega, rng=rng)


def cmd_limit(cfg: CliConfig) -> tuple[int, str]:
    _, result = _load_limit(cfg)
    if cfg.output == "text":
        return EXIT_OK, _limit_text(result)
    return EXIT_OK, json.dumps(result_to_json(result))


def cmd_weights(cfg: CliConfig) -> tuple[int, str]:
    _, result = _load_limit(cfg)
    if cfg.output == "text":
        return EXIT_OK, "\n".join(_weights_lines(result) + [f"trace_id_L {result.trace_id_L}"])
    return EXIT_OK, json.dumps({
        "omega": list(result.omega),
        "weights": {n: w.to_json() for n, w in result.weights.items()},
        "trace_id_L": result.trace_id_L.to_json(),
    })


def verify_unique(cfg: CliConfig) -> dict:
    d = parse_validate(cfg.input_path, epsilon=cfg.epsilon)
    r1 = dagger_limit(d, cfg.omega, rng=np.random.default_rng([cfg.seed, 1]))
    r2 = dagger_limit(d, cfg.omega, rng=np.random.default_rng([cfg.seed, 2]))
    c = unitary_comparison(r1, r2)
    L1, L2 = r1.limit_object, r2.limit_object
    return {
        "comparison": matrix_to_json(c),
        "limit_dim": L1.dim,
        "isometry_residual": compose(c, dagger(c)).distance(identity(L1, d.backend)),
        "coisometry_residual": compose(dagger(c), c).distance(identity(L2, d.backend)),
        "cone_residuals": [cone_residual(d, r1.limit_maps), cone_residual(d, r2.limit_maps)],
        "_morphism": c,
    }


def cmd_verify_unique(cfg: CliConfig) -> tuple[int, str]:
    report = verify_unique(cfg)
    c = report.pop("_morphism")
    if cfg.output == "text":
        return EXIT_OK, "\n".join([
            f"limit_dim: {report['limit_dim']}",
            f"comparison: {_matrix_text(c)}",
            f"|c;c^dagger - id|: {_fmt(report['isometry_residual'])}",
            f"|c^dagger;c - id|: {_fmt(report['coisometry_residual'])}",
        ])
    return EXIT_OK, json.dumps(report)


def cmd_laws(cfg: CliConfig) -> tuple[int, str]:
    backend = backend_named(cfg.backend, cfg.epsilon)
    reports = run_law_suite(backend, cfg.seed, cfg.trials)
    code = EXIT_LAW if any(r.unexpected_failure for r in reports) else EXIT_OK
    if cfg.output == "text":
        lines = []
        for r in reports:
            flag = "" if r.expected else "  (not expected to hold)"
            line = f"{r.law.value:<24} {r.verdict.value:<17} trials={r.trials}{flag}"
            if r.witness is not None:
                line += f"\n    witness: {json.dumps(r.witness)}"
            lines.append(line)
        return code, "\n".join(lines)
    return code, "\n".join(json.dumps(r.to_json()) for r in reports)


def cmd_scalars(cfg: CliConfig) -> tuple[int, str]:
    if cfg.semiring == "backend":
        backend = backend_named(cfg.backend, cfg.epsilon)
        s = BackendScalars(backend)
    else:
        backend = None
        s = SEMIRINGS[cfg.semiring]()
    verdicts = [characteristic_probe(s, 1000), order_probe(s, cfg.seed, cfg.trials)]
    if backend is None or backend.has_negation:
        verdicts.append(embedding_probe(s, cfg.seed, cfg.trials))
    payload = {"semiring": s.name, "probes": [v.to_json() for v in verdicts]}
    if backend is not None:
        payload["classification"] = classify_backend(backend).to_json()
    if cfg.output == "text":
        lines = [f"semiring: {s.name}"]
        for v in verdicts:
            status = "clean" if v.ok else "violation"
            extra = f"  witness={json.dumps(v.witness)}" if v.witness is not None else ""
            lines.append(f"{v.probe:<16} {status:<10} checked={v.checked}{extra}")
        if backend is not None:
            cls = payload["classification"]
            lines.append(f"classification   {cls['classification']}: {cls['reason']}")
        return EXIT_OK, "\n".join(lines)
    return EXIT_OK, json.dumps(payload)


COMMANDS = {
    "limit": cmd_limit,
    "weights": cmd_weights,
    "verify-unique": cmd_verify_unique,
    "laws": cmd_laws,
    "scalars": cmd_scalars,
}


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg = parse_config(argv)
        code, text = COMMANDS[cfg.command](cfg)
    except DaglimError as exc:
        print(json.dumps({"error": exc.kind, "message": str(exc)}), file=stderr)
        return EXIT_INVALID
    except (ValueError, SystemExit) as exc:
        if isinstance(exc, SystemExit) and exc.code in (0, None):
            return EXIT_OK
        if isinstance(exc, SystemExit) and isinstance(exc.code, int):
            return EXIT_INVALID
        print(json.dumps({"error": "InvalidInput", "message": str(exc)}), file=stderr)
        return EXIT_INVALID
    print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
