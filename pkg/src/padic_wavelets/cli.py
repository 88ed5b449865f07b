"""Command-line front end.

Exit statuses: 0 success, 1 usage or parse error, 2 domain violation,
3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import group as G
from . import suites
from .functions import inner
from .padic import is_prime, vec_norm
from .serialize import (
    FormatError,
    amp_to_json,
    coeffs_from_json,
    coeffs_to_json,
    dumps,
    function_from_json,
    function_to_json,
    index_to_json,
    matrix_from_json,
    matrix_to_json,
    padic_from_json,
)
from .wavelet import NotMeanZeroError, analyze, enumerate_indices, make_wavelet, parseval_sum, synthesize

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class Config:
    p: int
    d: int
    gamma_min: int
    gamma_max: int
    max_digits: int
    seed: int
    depth: int
    out: str | None

    @classmethod
    def from_args(cls, a) -> Config:
        if not is_prime(a.p):
            raise UsageError(f"--p {a.p} is not prime")
        if a.d < 1:
            raise UsageError("--d must be positive")
        if a.gamma_min > a.gamma_max:
            raise UsageError("--gamma-min must not exceed --gamma-max")
        if a.max_digits < 0 or a.depth < 0:
            raise UsageError("--max-digits and --depth must be non-negative")
        return cls(a.p, a.d, a.gamma_min, a.gamma_max, a.max_digits, a.seed, a.depth, a.out)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _emit(cfg: Config, payload) -> None:
    text = dumps(payload)
    if cfg.out and cfg.out != "-":
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands ---------------------------------------------------------------------


def cmd_basis(cfg: Config, args) -> int:
    idx = enumerate_indices(cfg.p, cfg.d, range(cfg.gamma_min, cfg.gamma_max + 1), cfg.max_digits)
    _emit(cfg, [{"index": index_to_json(i), "function": function_to_json(make_wavelet(i))} for i in idx])
    return EXIT_OK


def cmd_analyze(cfg: Config, args) -> int:
    f = function_from_json(_read_json(args.input))
    try:
        c = analyze(f)
    except NotMeanZeroError as exc:
        sys.stderr.write(f"{exc}\n")
        _emit(cfg, {"error": "not mean zero", "integral": amp_to_json(exc.integral)})
        return EXIT_DOMAIN
    total, norm = parseval_sum(c, f.p), inner(f, f)
    _emit(
        cfg,
        {
            "p": f.p,
            "d": f.d,
            "coefficients": coeffs_to_json(c),
            "parseval": {"sum_abs2": amp_to_json(total), "norm2": amp_to_json(norm), "equal": total == norm},
        },
    )
    return EXIT_OK


def cmd_synthesize(cfg: Config, args) -> int:
    data = _read_json(args.input)
    p, d = cfg.p, cfg.d
    if isinstance(data, dict):
        p, d = data.get("p", p), data.get("d", d)
        data = data.get("coefficients")
    c = coeffs_from_json(p, data)
    _emit(cfg, function_to_json(synthesize(c, p, d)))
    return EXIT_OK


def cmd_verify(cfg: Config, args) -> int:
    if args.suite not in suites.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(suites.SUITES)}")
    report = suites.run_suite(
        args.suite,
        cfg.p,
        cfg.d,
        gamma_min=cfg.gamma_min,
        gamma_max=cfg.gamma_max,
        max_digits=cfg.max_digits,
        seed=cfg.seed,
        depth=cfg.depth,
    )
    _emit(cfg, report)
    return EXIT_OK if report["pass"] else EXIT_VERIFY


def _parse_letter(p: int, d: int, obj) -> G.GroupElement:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FormatError("each word letter needs a 'kind'")
    kind = obj["kind"]
    if kind == "matrix":
        rows = matrix_from_json(p, obj.get("m"))
        if not G.is_unit_matrix(p, rows):
            raise DomainError("matrix letter is not norm-preserving")
        return G.GroupElement.matrix(G.UnitMatrix(p, rows))
    if kind == "translate":
        b = obj.get("b")
        if not isinstance(b, list) or len(b) != d:
            raise FormatError(f"translation needs {d} coordinates")
        return G.GroupElement.translation(p, tuple(padic_from_json(p, x) for x in b))
    if kind == "dilate":
        gamma = obj.get("gamma")
        if not isinstance(gamma, int):
            raise FormatError("dilation needs an integer gamma")
        return G.GroupElement.dilation(p, d, gamma)
    raise FormatError(f"unknown letter kind {kind!r}")


def _element_json(g: G.GroupElement) -> dict:
    return {"gamma": g.gamma, "b": [str(x) for x in g.b], "m": matrix_to_json(g.p, g.m.rows)}


def cmd_group(cfg: Config, args) -> int:
    p, d = cfg.p, cfg.d
    if args.action == "factorize":
        word = _read_json(args.input)
        if not isinstance(word, list) or not word:
            raise FormatError("word must be a non-empty list of letters")
        _emit(cfg, _element_json(G.factorize([_parse_letter(p, d, w) for w in word])))
    elif args.action == "sphere-map":
        x = tuple(padic_from_json(p, s) for s in args.x)
        if len(x) != d:
            raise UsageError(f"expected {d} coordinates, got {len(x)}")
        if vec_norm(x) != 1:
            raise DomainError(f"|x|_p = {vec_norm(x)}, not 1")
        m = G.e1_to_x(p, x)
        _emit(cfg, {"x": [str(c) for c in x], "m": matrix_to_json(p, m.rows)})
    else:
        f = function_from_json(_read_json(args.input))
        res = G.orbit_classify(f)
        if res is None:
            _emit(cfg, {"in_orbit": False})
        else:
            ell, idx = res
            _emit(cfg, {"in_orbit": True, "ell": ell, "index": index_to_json(idx)})
    return EXIT_OK


# parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="prime (default 2)")
    common.add_argument("--d", type=int, default=1, help="dimension (default 1)")
    common.add_argument("--gamma-min", type=int, default=-1)
    common.add_argument("--gamma-max", type=int, default=1)
    common.add_argument("--max-digits", type=int, default=1, help="fractional digits per coordinate of n")
    common.add_argument("--seed", type=int, default=suites.DEFAULT_SEED)
    common.add_argument("--depth", type=int, default=2, help="orbit search depth")
    common.add_argument("--out", default=None, help="output path (default stdout)")

    parser = _Parser(prog="padic-wavelets", description="Exact p-adic wavelet bases and checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("basis", parents=[common], help="list basis wavelets in a window").set_defaults(run=cmd_basis)

    pa = sub.add_parser("analyze", parents=[common], help="wavelet coefficients of a mean-zero function")
    pa.add_argument("input")
    pa.set_defaults(run=cmd_analyze)

    ps = sub.add_parser("synthesize", parents=[common], help="function from a coefficient map")
    ps.add_argument("input")
    ps.set_defaults(run=cmd_synthesize)

    pv = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    pv.add_argument("--suite", required=True)
    pv.set_defaults(run=cmd_verify)

    pg = sub.add_parser("group", help="group operations")
    gsub = pg.add_subparsers(dest="action", required=True, parser_class=_Parser)
    gf = gsub.add_parser("factorize", parents=[common], help="factored form of a generator word")
    gf.add_argument("input")
    gm = gsub.add_parser("sphere-map", parents=[common], help="matrix sending e1 to x")
    gm.add_argument("x", nargs="+")
    gc = gsub.add_parser("classify", parents=[common], help="match a function against zeta**l psi_idx")
    gc.add_argument("input")
    pg.set_defaults(run=cmd_group)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config.from_args(args)
        return args.run(cfg, args)
    except (UsageError, FormatError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
