#!/usr/bin/env python3
"""
vfree - command line front end.

Subcommands:
    solve      matching + S-links covering every degree-3 T-node
    extmatch   perfect / maximum-quasi-degree extended matching of a hypergraph
    reduce3dm  3DM instance -> gadget bipartite graph + role sidecar
    oracle     exact decision with witness (vfree, extmatch or 3dm)
    verify     check a certificate against an instance
    gen        seeded random instances

Exit status: 0 success, 1 NO answer or rejected certificate, 2 input error,
3 oracle budget exhausted.
"""

import argparse
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from config import RunConfig
from errors import (
    BudgetExceeded,
    CoverageGap,
    GraphError,
    InfeasibleParams,
    InvalidSolution,
    NoSaturation,
    NotVFree,
    PreconditionViolated,
)
from extended_matching import (
    extended_matching_covering_max_quasidegree,
    perfect_extended_matching,
    quasi_degrees,
    verify_extended_matching,
)
from formats import (
    format_bipartite,
    format_certificate,
    format_gadget_map,
    parse_3dm,
    parse_bipartite,
    parse_certificate,
    parse_hypergraph,
    parse_required,
    read_text,
    write_text,
)
from i18n_manager import t
from instance_generator import gen_random, parse_params
from liang_solver import LiangSolution, solve_liang, verify_liang, verify_vfree
from reduction_3dm import reduce_3dm, verify_3dm
from vfree_oracle import oracle_3dm_matching, oracle_extended_matching, oracle_vfree_cover

logger = logging.getLogger("main")

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inputs", type=Path, action="append", default=[],
                        help="Input file (repeatable)")
    common.add_argument("--out", type=Path, default=None,
                        help="Output file (default: stdout)")
    common.add_argument("--seed", type=int, default=0,
                        help="Random seed (default: 0)")
    common.add_argument("--required", default=None,
                        help="File of required node ids, or 'all' (default: depends on subcommand)")
    common.add_argument("--budget-edges", type=int, default=None,
                        help="Edge cap for the V-free oracle (default: VFREE_BUDGET_EDGES or 26)")
    common.add_argument("--budget-nodes", type=int, default=None,
                        help="Node cap for exhaustive oracles (default: VFREE_BUDGET_NODES or 12)")
    common.add_argument("--time-limit", type=float, default=None,
                        help="Oracle wall-clock limit in seconds (default: VFREE_TIME_LIMIT or 60)")
    common.add_argument("--quiet", action="store_true", help="Only warnings and errors")
    common.add_argument("-v", "--verbose", action="count", default=0, help="Debug logging")

    parser = argparse.ArgumentParser(prog="vfree", description="Matching, extended-matching and V-free 2-matching toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("solve", parents=[common], help="Matching + S-link cover of degree-3 T-nodes")

    extmatch = sub.add_parser("extmatch", parents=[common], help="Extended matching of an oddly uniform hypergraph")
    extmatch.add_argument("--mode", choices=["perfect", "maxdeg"], default="maxdeg",
                          help="perfect (quasi-regular input) or cover max quasi-degree nodes (default: maxdeg)")

    reduce = sub.add_parser("reduce3dm", parents=[common], help="3DM instance to gadget bipartite graph")
    reduce.add_argument("--sidecar", type=Path, default=None,
                        help="Role sidecar path (default: <out>.roles when --out is given)")

    oracle = sub.add_parser("oracle", parents=[common], help="Exhaustive decision with witness")
    oracle.add_argument("--kind", choices=["vfree", "extmatch", "3dm"], default=None,
                        help="Problem (default: inferred from the input header)")

    verify = sub.add_parser("verify", parents=[common], help="Check a certificate")
    verify.add_argument("--cert", type=Path, required=True, help="Certificate file")
    verify.add_argument("--kind", choices=["liang", "vfree", "extmatch", "3dm"], default=None,
                        help="Certificate kind (default: from the instance header, then the certificate lines)")

    gen = sub.add_parser("gen", parents=[common], help="Seeded random instance")
    gen.add_argument("--kind", choices=["liang", "hypergraph", "3dm"], required=True, help="Instance family")
    gen.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                     help="Family parameter, e.g. s_count=10 or layers=3:4,1:2 (repeatable)")
    return parser


def parse_param_values(items: list[str]) -> dict:
    """KEY=VALUE strings to typed values; layers=k:r,k:r becomes a list of pairs."""
    values = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep:
            raise InfeasibleParams(f"parameter {item!r} is not KEY=VALUE")
        key = key.strip().replace("-", "_")
        if key == "layers":
            try:
                values[key] = [tuple(int(x) for x in part.split(":")) for part in raw.split(",") if part]
            except ValueError as exc:
                raise InfeasibleParams(f"layers must look like 3:4,1:2, got {raw!r}") from exc
            continue
        for cast in (int, float):
            try:
                values[key] = cast(raw)
                break
            except ValueError:
                continue
        else:
            values[key] = raw
    return values


class Runner:
    """Executes one validated RunConfig."""

    def __init__(self, config: RunConfig, args: argparse.Namespace):
        self.config = config
        self.args = args
        self.quiet = config.verbosity < 0

    def say(self, message: str):
        if not self.quiet:
            print(message, file=sys.stderr)

    def emit(self, text: str, path=None):
        path = path if path is not None else self.config.output
        if path is None:
            sys.stdout.write(text)
            return
        write_text(path, text)
        self.say(t("written", path))

    def load(self, index: int = 0) -> str:
        if len(self.config.inputs) <= index:
            raise PreconditionViolated(f"{self.config.subcommand} needs --in (input #{index + 1})")
        path = self.config.inputs[index]
        logger.info(t("loading", path))
        return read_text(path)

    def required(self, default, everything):
        """Required node ids: --required file, 'all', or the subcommand default."""
        if self.config.required is None:
            return frozenset(default)
        if self.config.required == "all":
            return frozenset(everything)
        return parse_required(read_text(Path(self.config.required)))

    def run(self) -> int:
        handlers = {
            "solve": self.run_solve,
            "extmatch": self.run_extmatch,
            "reduce3dm": self.run_reduce_3dm,
            "oracle": self.run_oracle,
            "verify": self.run_verify,
            "gen": self.run_gen,
        }
        return handlers[self.config.subcommand]()

    # --- subcommands -------------------------------------------------------

    def run_solve(self) -> int:
        g = parse_bipartite(self.load())
        sol = solve_liang(g)
        report = verify_liang(g, sol, sol.covered)
        self.emit(format_certificate(edges=sol.m.edges, links=sol.f))
        if not sol.covered:
            self.say(t("solve_nothing"))
        self.say(t("solve_done", len(sol.m), len(sol.f), report.notes["required_covered"]))
        return EXIT_OK

    def run_extmatch(self) -> int:
        h = parse_hypergraph(self.load())
        if self.args.mode == "perfect":
            em, required = perfect_extended_matching(h), range(h.n)
        else:
            em, required = extended_matching_covering_max_quasidegree(h), quasi_degrees(h).maximal_nodes
        report = verify_extended_matching(h, em, required)
        self.emit(format_certificate(em=em))
        self.say(t("extmatch_done", len(em.hyperedges), len(em.pairs), report.notes["covered"]))
        return EXIT_OK

    def run_reduce_3dm(self) -> int:
        h = parse_3dm(self.load())
        g, gm = reduce_3dm(h)
        self.emit(format_bipartite(g))
        sidecar = self.args.sidecar
        if sidecar is None and self.config.output is not None:
            sidecar = self.config.output.with_suffix(".roles")
        if sidecar is not None:
            self.emit(format_gadget_map(g, gm), sidecar)
        self.say(t("reduce_done", g.s_count, g.t_count, len(g.edges)))
        return EXIT_OK

    def run_oracle(self) -> int:
        text = self.load()
        kind = self.args.kind or _infer_instance_kind(text)
        budget = self.config.budget()
        if kind == "vfree":
            g = parse_bipartite(text)
            required = self.required(range(g.t_count), range(g.t_count))
            witness = oracle_vfree_cover(g, required, budget)
            cert = None if witness is None else format_certificate(edges=witness.edges)
            size = 0 if witness is None else len(witness)
        elif kind == "extmatch":
            h = parse_hypergraph(text)
            required = self.required(quasi_degrees(h).maximal_nodes, range(h.n))
            witness = oracle_extended_matching(h, required, budget)
            cert = None if witness is None else format_certificate(em=witness)
            size = 0 if witness is None else len(witness)
        else:
            instance = parse_3dm(text)
            witness = oracle_3dm_matching(instance, budget)
            cert = None if witness is None else "".join(f"hyperedge {e}\n" for e in sorted(witness))
            size = 0 if witness is None else len(witness)

        if cert is None:
            self.emit(format_certificate(comments=["no witness"]))
            self.say(t("oracle_no", kind))
            return EXIT_NO
        self.emit(cert)
        self.say(t("oracle_yes", size))
        return EXIT_OK

    def run_verify(self) -> int:
        text = self.load()
        cert = parse_certificate(read_text(self.args.cert))
        kind = self.args.kind or self.verify_kind(text, cert)
        if kind == "3dm":
            report = verify_3dm(parse_3dm(text), cert.hyperedges)
        elif kind == "extmatch":
            h = parse_hypergraph(text)
            required = self.required(quasi_degrees(h).maximal_nodes, range(h.n))
            report = verify_extended_matching(h, cert.extended_matching(), required)
        else:
            g = parse_bipartite(text)
            if kind == "vfree":
                required = self.required(range(g.t_count), range(g.t_count))
                report = verify_vfree(g, cert.two_matching(), required)
            else:
                degree3 = [v for v in range(g.t_count) if g.t_degree(v) == 3]
                required = self.required(degree3, range(g.t_count))
                sol = LiangSolution(cert.matching(), cert.links_family(), frozenset(required))
                report = verify_liang(g, sol, required)
        self.emit("\n".join(report.lines()) + "\n")
        if report.ok:
            self.say(t("verify_ok", kind))
            return EXIT_OK
        self.say(t("verify_failed", kind, len(report.violations)))
        return EXIT_NO

    def verify_kind(self, text: str, cert) -> str:
        instance_kind = _infer_instance_kind(text)
        if instance_kind != "vfree":
            return instance_kind
        # --required without links: an oracle V-free witness.
        if self.config.required is not None and not cert.links:
            return "vfree"
        return cert.kind

    def run_gen(self) -> int:
        params = parse_params(self.args.kind, parse_param_values(self.args.param))
        self.emit(gen_random(self.args.kind, params, self.config.seed))
        self.say(t("gen_done", self.args.kind, self.config.seed))
        return EXIT_OK


def _infer_instance_kind(text):
    for raw in text.splitlines():
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            return {"b": "vfree", "h": "extmatch", "3dm": "3dm"}.get(tokens[0], "vfree")
    return "vfree"


def configure_logging(quiet: bool, verbose: int):
    level = logging.WARNING if quiet else logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s [%(levelname)s] %(message)s", force=True)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.quiet, args.verbose)

    try:
        config = RunConfig(
            subcommand=args.subcommand,
            inputs=args.inputs,
            output=args.out,
            seed=args.seed,
            required=args.required,
            budget_edges=args.budget_edges,
            budget_nodes=args.budget_nodes,
            time_limit=args.time_limit,
            verbosity=-1 if args.quiet else args.verbose,
        )
    except ValidationError as exc:
        first = exc.errors()[0]
        print(t("error", first["msg"]), file=sys.stderr)
        return EXIT_INPUT

    try:
        return Runner(config, args).run()
    except BudgetExceeded as exc:
        print(t("budget_exceeded", exc), file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, PreconditionViolated, InfeasibleParams, NotVFree, CoverageGap,
            InvalidSolution, NoSaturation, OSError) as exc:
        print(t("error", exc), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
