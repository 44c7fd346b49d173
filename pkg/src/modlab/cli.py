"""Batch command line front end.

Commands: ``define`` validates a job document, ``check`` runs its
firstness/classification checks, ``verify`` runs its equivalence
verifications, ``corpus`` generates the built-in ring corpus and sweeps
every decider plus the randomized order-action properties over it.

Exit codes: 0 ok (negative mathematical verdicts included), 1 parse error,
2 size cap exceeded, 3 engine error, 4 internal inconsistency (independent
routes to one verdict disagreed: an engine bug, never mathematics).
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .actions import random_instance_holds
from .classify import (THEOREM_IDS, classify_ring, generate_universe,
                       verify_theorem)
from .config import (DEFAULT_MODULE_CAP, DEFAULT_RING_CAP,
                     DEFAULT_UNIVERSE_DEPTH)
from .errors import (InternalInconsistency, JobParseError, ModlabError,
                     SizeCapExceeded)
from .firstness import firstness_report
from .jobs import parse_job, render_structured, render_text, run_job
from .rings import cyclic_ring, matrix_ring, product_ring

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_CAP = 2
EXIT_ENGINE = 3
EXIT_INCONSISTENT = 4

VERIFY_KINDS = ("verify",)
CHECK_KINDS = ("bjkn_prime", "prime", "rpid_first", "diuniform", "a_first",
               "a_fully_first", "classes", "evaluate", "flags", "compare",
               "classify", "lep")


def corpus_rings(ring_cap=DEFAULT_RING_CAP):
    """The built-in corpus: the rings every acceptance sweep runs over."""
    return [
        cyclic_ring(2, cap=ring_cap),
        cyclic_ring(4, cap=ring_cap),
        cyclic_ring(6, cap=ring_cap),
        cyclic_ring(8, cap=ring_cap),
        product_ring([cyclic_ring(2), cyclic_ring(2)], cap=ring_cap),
        matrix_ring(cyclic_ring(2), 2, cap=ring_cap),
    ]


def _add_common_flags(sub):
    sub.add_argument("--cap-ring", type=int, default=DEFAULT_RING_CAP,
                     help="largest allowed ring order")
    sub.add_argument("--cap-module", type=int, default=DEFAULT_MODULE_CAP,
                     help="largest allowed module order")
    sub.add_argument("--universe-depth", type=int,
                     default=DEFAULT_UNIVERSE_DEPTH,
                     help="direct-sum generation depth of universes")
    sub.add_argument("--format", choices=("text", "structured"), default=None,
                     help="override the document's output format")
    sub.add_argument("--seed", type=int, default=0,
                     help="seed for randomized property sweeps")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="modlab",
        description="module-theory laboratory over explicit finite rings")
    parser.add_argument("--version", action="version",
                        version=f"modlab {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p_define = subs.add_parser("define", help="validate a job document")
    p_define.add_argument("job", help="path to the job document")
    _add_common_flags(p_define)

    p_check = subs.add_parser(
        "check", help="run the firstness/classification checks of a job")
    p_check.add_argument("job")
    _add_common_flags(p_check)

    p_verify = subs.add_parser(
        "verify", help="run the equivalence verifications of a job")
    p_verify.add_argument("job")
    _add_common_flags(p_verify)

    p_corpus = subs.add_parser(
        "corpus", help="generate and sweep the built-in ring/module corpus")
    _add_common_flags(p_corpus)
    p_corpus.add_argument("--actions", type=int, default=0, metavar="N",
                          help="also run N randomized order-action instances")
    return parser


def _load_spec(args):
    with open(args.job, encoding="utf-8") as fh:
        document = fh.read()
    spec = parse_job(document, ring_cap=args.cap_ring,
                     module_cap=args.cap_module,
                     universe_depth=args.universe_depth)
    if args.format:
        spec.output_format = args.format
    return spec


def _emit(report, spec_format, runtime):
    if spec_format == "structured":
        sys.stdout.write(render_structured(report))
    else:
        sys.stdout.write(render_text(report, runtime=runtime))


def cmd_define(args):
    spec = _load_spec(args)
    sys.stdout.write(
        f"ok: ring {spec.ring_text} (order {spec.ring.order}), "
        f"{len(spec.modules)} modules, {len(spec.preradicals)} preradicals, "
        f"{len(spec.checks)} checks\n")
    return EXIT_OK


def cmd_check(args):
    spec = _load_spec(args)
    start = time.perf_counter()
    report, code = run_job(spec, kinds=CHECK_KINDS)
    _emit(report, spec.output_format, time.perf_counter() - start)
    return code


def cmd_verify(args):
    spec = _load_spec(args)
    start = time.perf_counter()
    report, code = run_job(spec, kinds=VERIFY_KINDS)
    _emit(report, spec.output_format, time.perf_counter() - start)
    return code


def cmd_corpus(args):
    start = time.perf_counter()
    inconsistencies = []
    ring_blocks = []
    # converse gaps the sweep looks for: either a finite witness inside the
    # corpus or an explicit "not witnessed at these caps" report
    gap_witnesses = {"diuniform_not_bjkn_prime": None,
                     "prime_not_bjkn_prime": None,
                     "rpid_first_not_bjkn_prime": None}
    for ring in corpus_rings(args.cap_ring):
        universe = generate_universe(ring, depth=args.universe_depth,
                                     module_cap=args.cap_module)
        block = {"ring": ring.provenance,
                 "universe_size": len(universe.modules),
                 "classification": classify_ring(ring, universe).to_dict(),
                 "modules": [], "theorems": []}
        for mod in universe.nonzero_modules():
            try:
                rep = firstness_report(mod)
                entry = rep.to_dict()
                verdicts = rep.verdicts
                if verdicts["bjkn_prime"]:
                    for weaker in ("rpid_first", "prime", "diuniform"):
                        if not verdicts[weaker]:
                            raise InternalInconsistency(
                                f"bjkn-prime module fails {weaker}")
                else:
                    where = f"{mod.provenance} over {ring.provenance}"
                    for notion, key in (("diuniform", "diuniform_not_bjkn_prime"),
                                        ("prime", "prime_not_bjkn_prime"),
                                        ("rpid_first",
                                         "rpid_first_not_bjkn_prime")):
                        if verdicts[notion] and gap_witnesses[key] is None:
                            gap_witnesses[key] = where
            except InternalInconsistency as exc:
                entry = {"module": mod.provenance, "error": str(exc),
                         "status": "inconsistent"}
                inconsistencies.append(str(exc))
            block["modules"].append(entry)
        for tid in THEOREM_IDS:
            verdict = verify_theorem(tid, ring, universe)
            block["theorems"].append(verdict.to_dict())
            if not verdict.consistent:
                inconsistencies.append(
                    f"{tid} inconsistent over {ring.provenance}")
        ring_blocks.append(block)
    action_failures = []
    for i in range(args.actions):
        action_failures.extend(random_instance_holds(args.seed + i))
    if action_failures:
        inconsistencies.append(f"{len(action_failures)} action-instance failures")
    report = {
        "schema_version": "1",
        "engine": {"name": "modlab", "version": __version__},
        "caps": {"ring": args.cap_ring, "module": args.cap_module,
                 "universe_depth": args.universe_depth},
        "rings": ring_blocks,
        "gap_witnesses": {k: v or "not witnessed at these caps"
                          for k, v in gap_witnesses.items()},
        "action_instances": args.actions,
        "action_failures": len(action_failures),
        "inconsistencies": inconsistencies,
    }
    runtime = time.perf_counter() - start
    if args.format == "structured":
        sys.stdout.write(render_structured(report))
    else:
        lines = [f"modlab {__version__} corpus sweep",
                 f"caps: ring={args.cap_ring} module={args.cap_module} "
                 f"universe-depth={args.universe_depth}", ""]
        for block in ring_blocks:
            lines.append(f"== {block['ring']} "
                         f"(universe of {block['universe_size']})")
            cls = block["classification"]
            flags = [k for k, v in cls.items()
                     if isinstance(v, bool) and v]
            lines.append("   classification: " + ", ".join(flags))
            for entry in block["modules"]:
                if "verdicts" in entry:
                    verd = " ".join(f"{k}={'y' if v else 'n'}"
                                    for k, v in entry["verdicts"].items())
                    lines.append(f"   {entry['module']} (order "
                                 f"{entry['order']}): {verd}")
                else:
                    lines.append(f"   {entry['module']}: {entry['error']}")
            bad = [t["theorem"] for t in block["theorems"] if not t["consistent"]]
            lines.append("   theorems: " +
                         ("all consistent" if not bad else
                          "INCONSISTENT: " + ", ".join(bad)))
        lines.append("converse gaps:")
        for key, where in report["gap_witnesses"].items():
            lines.append(f"   {key}: {where}")
        if args.actions:
            lines.append(f"action instances: {args.actions}, "
                         f"failures: {len(action_failures)}")
        lines.append(f"runtime: {runtime:.2f}s")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_INCONSISTENT if inconsistencies else EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"define": cmd_define, "check": cmd_check,
                "verify": cmd_verify, "corpus": cmd_corpus}
    try:
        return handlers[args.command](args)
    except JobParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except SizeCapExceeded as exc:
        sys.stderr.write(f"size cap: {exc}\n")
        return EXIT_CAP
    except InternalInconsistency as exc:
        sys.stderr.write(f"internal inconsistency: {exc}\n")
        return EXIT_INCONSISTENT
    except ModlabError as exc:
        sys.stderr.write(f"engine error: {exc}\n")
        return EXIT_ENGINE
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
