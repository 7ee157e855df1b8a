"""Command-line front end.

Exit codes: 0 success, 1 negative mathematical result, 2 usage or input
error. JSON output is sorted and carries no timings, so identical runs give
identical bytes.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .bei import binomial_edge_ideal, decomposition_report
from .errors import CapacityError, ContextError, DomainError, GraphFormatError
from .fpurity import fedder_is_fpure
from .graphs import Graph, find_closed_labeling, find_weakly_closed_labeling, read_edge_list
from .knutson import MAX_CLOSURE_N, certify_membership_JG, explore_closure, replay_certificate
from .poly import ORDER_CONVENTION
from .verify import LIMITS, THEOREMS, run_suite

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    graph: str | None = None
    mode: str = "weakly-closed"
    theorem: str | None = None
    nmax: int = 4
    n: int = 2
    p: int = 2
    depth: int = 3
    max_ideals: int = 5000
    json: bool = False
    seed_axiom: bool = True
    workers: int = 1
    certificate: str | None = None

    def validate(self):
        if self.subcommand == "verify":
            if self.nmax < 1 or self.nmax > LIMITS[self.theorem]:
                raise CapacityError(f"--nmax for {self.theorem} must be in 1..{LIMITS[self.theorem]}")
        if self.subcommand == "knutson" and not 1 <= self.n <= MAX_CLOSURE_N:
            raise CapacityError(f"--n must be in 1..{MAX_CLOSURE_N}")
        if self.subcommand in ("verify", "fpure") and not _is_prime(self.p):
            raise DomainError(f"--p must be a prime, got {self.p}")
        if self.depth < 0 or self.max_ideals < 1 or self.workers < 1:
            raise CapacityError("--depth, --max-ideals and --workers must be positive")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _header() -> dict:
    return {"version": __version__, "order": ORDER_CONVENTION}


def _emit(cfg: RunConfig, payload: dict, text: str):
    if cfg.json:
        print(json.dumps({**_header(), **payload}, indent=2, sort_keys=True))
    else:
        print(text)


def _graph_dict(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]}


# -- subcommands ------------------------------------------------------------


def cmd_recognize(cfg: RunConfig) -> int:
    G = read_edge_list(cfg.graph)
    finder = find_closed_labeling if cfg.mode == "closed" else find_weakly_closed_labeling
    lab = finder(G)
    labeling = list(lab.perm) if lab else None
    text = "none" if lab is None else "labeling " + " ".join(f"{v}->{lab(v)}" for v in range(1, G.n + 1))
    _emit(cfg, {"graph": _graph_dict(G), "mode": cfg.mode, "labeling": labeling}, text)
    return EXIT_OK if lab else EXIT_NEGATIVE


def cmd_decompose(cfg: RunConfig) -> int:
    G = read_edge_list(cfg.graph)
    report = decomposition_report(G)
    if cfg.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        lines = [f"{len(report['minimal_primes'])} minimal primes of J_G for {G}"]
        for d in report["minimal_primes"]:
            form = "closed form" if d["closed_form"] else "not closed form"
            lines.append(f"  S={d['S']} cliques={d['cliques']} intervals={d['intervals']} ({form})")
        lines.append(f"intersection equals J_G: {report['decomposition_verified']}")
        print("\n".join(lines))
    return EXIT_OK if report["decomposition_verified"] else EXIT_NEGATIVE


def cmd_verify(cfg: RunConfig) -> int:
    res = run_suite(cfg.theorem, cfg.nmax, cfg.p, cfg.depth, cfg.max_ideals, cfg.workers, cfg.seed_axiom)
    payload = {"theorem": cfg.theorem, "nmax": cfg.nmax, **res.as_dict()}
    if cfg.theorem == "fpure":
        payload["p"] = cfg.p
    _emit(cfg, payload, res.line())
    return EXIT_OK if res.ok else EXIT_NEGATIVE


def cmd_knutson(cfg: RunConfig) -> int:
    reg = explore_closure(cfg.n, cfg.depth, cfg.max_ideals, cfg.seed_axiom)
    failures = reg.shape_failures()
    primes = reg.all_primes()
    if cfg.json:
        entries = [
            {
                "index": e.index,
                "derivation": list(e.derivation),
                "depth": e.depth,
                "gb": e.ideal.rendered_gb(),
                "minimal_primes": [str(P) for P in e.primes],
            }
            for e in reg
        ]
        payload = {
            "summary": reg.summary(),
            "entries": entries,
            "primes": [P.as_dict() for P in primes],
            "shape_failures": [str(P) for P in failures],
        }
        _emit(cfg, payload, "")
    else:
        lines = [f"{e.index:4d} {e.label():24s} {', '.join(e.ideal.rendered_gb()) or '0'}" for e in reg]
        s = reg.summary()
        lines.append(
            f"{s['ideals']} ideals, {s['distinct_minimal_primes']} distinct minimal primes, "
            f"depth {s['depth_reached']}{' (truncated)' if s['truncated'] else ''}, "
            f"{len(failures)} shape failures"
        )
        print("\n".join(lines))
    return EXIT_OK if not failures else EXIT_NEGATIVE


def cmd_fpure(cfg: RunConfig) -> int:
    G = read_edge_list(cfg.graph)
    report = fedder_is_fpure(binomial_edge_ideal(G, cfg.p), cfg.p)
    d = report.as_dict(G)
    text = f"{d['verdict']} (p={cfg.p}, colon basis size {d['colon_gb_size']}, witness {d['witness']})"
    _emit(cfg, d, text)
    return EXIT_OK if report.fpure else EXIT_NEGATIVE


def cmd_certify(cfg: RunConfig) -> int:
    cert = certify_membership_JG(read_edge_list(cfg.graph))
    if cfg.json:
        print(cert.to_json())
    else:
        print(f"{cert.status}" + (f": {cert.reason}" if cert.reason else f", verified={cert.verified}"))
    return EXIT_OK if cert.status == "certified" and cert.verified else EXIT_NEGATIVE


def cmd_replay(cfg: RunConfig) -> int:
    with open(cfg.certificate) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"certificate is not JSON: {exc.msg}", exc.lineno) from None
    ok = replay_certificate(data)
    _emit(cfg, {"replayed": ok}, "replay ok" if ok else "replay FAILED")
    return EXIT_OK if ok else EXIT_NEGATIVE


COMMANDS = {
    "recognize": cmd_recognize,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "knutson": cmd_knutson,
    "fpure": cmd_fpure,
    "certify": cmd_certify,
    "replay": cmd_replay,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binedge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"binedge {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def with_graph(p):
        p.add_argument("--graph", required=True, metavar="PATH", help="edge-list file")

    def with_json(p):
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("recognize", help="find a closed or weakly closed labeling")
    with_graph(p)
    p.add_argument("--mode", choices=("closed", "weakly-closed"), default="weakly-closed")
    with_json(p)

    p = sub.add_parser("decompose", help="minimal primes of J_G, checked by Groebner bases")
    with_graph(p)
    with_json(p)

    p = sub.add_parser("verify", help="run an exhaustive small-n suite")
    p.add_argument("theorem", choices=THEOREMS)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--p", type=int, default=2, help="characteristic for the fpure suite")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--max-ideals", type=int, default=5000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-seed-axiom", dest="seed_axiom", action="store_false")
    with_json(p)

    p = sub.add_parser("knutson", help="explore the ideal family of f")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--max-ideals", type=int, default=5000)
    p.add_argument("--no-seed-axiom", dest="seed_axiom", action="store_false",
                   help="seed with (f) only instead of (f) and the adjacent-column ideals")
    with_json(p)

    p = sub.add_parser("fpure", help="Fedder's criterion for J_G over F_p")
    with_graph(p)
    p.add_argument("--p", type=int, default=2)
    with_json(p)

    p = sub.add_parser("certify", help="certificate that J_G lies in the family")
    with_graph(p)
    with_json(p)

    p = sub.add_parser("replay", help="re-verify a certificate file")
    p.add_argument("--certificate", required=True, metavar="PATH")
    with_json(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(**vars(args))
    try:
        cfg.validate()
        return COMMANDS[cfg.subcommand](cfg)
    except GraphFormatError as exc:
        print(f"{cfg.graph or cfg.certificate}: {exc}", file=sys.stderr)
    except (OSError, CapacityError, DomainError, ContextError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
