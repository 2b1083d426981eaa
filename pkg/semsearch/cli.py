"""
Command-line entry point.

    semsearch build DATASET [--config FILE] [--artifact-dir DIR] [pipeline flags]
    semsearch query [QUERY | --interactive] [-k N] [--sigma S] [--json]
    semsearch eval GOLD [-k N] [--json]
    semsearch serve [--host HOST] [--port PORT]

Exit codes: 0 success, 1 runtime failure, 2 usage or validation error.
"""

import argparse
import os
import sys
from typing import Any, Callable, Dict, List, Optional

from semsearch.config import ConfigValidationError, load_pipeline_config, settings
from semsearch.core.exceptions import (
    DatasetError,
    GoldSetError,
    InvalidQueryError,
    SemSearchError,
)
from semsearch.core.logger import get_logger, log_print, logging_manager
from semsearch.version import get_version_string

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# Errors caused by what the user passed in, as opposed to the state on disk.
USAGE_ERRORS = (ConfigValidationError, DatasetError, InvalidQueryError, GoldSetError)

logger = get_logger("cli")


def _default_artifact_dir() -> str:
    return str(settings.get("pipeline.artifact_dir", "artifacts"))


def _add_artifact_dir(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--artifact-dir",
        default=None,
        help="directory holding the build output (default: pipeline.artifact_dir)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semsearch",
        description="Keyword search over RDF graphs with summary-graph augmentation",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {get_version_string()}"
    )
    parser.add_argument("--debug", action="store_true", help="enable debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", help="preprocess a dataset into artifacts")
    build.add_argument("dataset", nargs="?", help="N-Triples file")
    build.add_argument("--config", help="key=value pipeline file (or SEMSEARCH_CONFIG)")
    _add_artifact_dir(build)
    build.add_argument("--beta", type=float)
    build.add_argument("--max-iterations", type=int)
    build.add_argument("--epsilon", type=float)
    build.add_argument("--exact-matching-limit", type=int)
    build.add_argument("--weight-mode", choices=("uniform", "rarity"))
    build.add_argument("--tau", type=float)
    build.add_argument("--sigma", type=float)
    build.add_argument("-k", type=int)
    build.add_argument(
        "--stemming", action=argparse.BooleanOptionalAction, default=None
    )
    build.add_argument(
        "--split-camel-case", action=argparse.BooleanOptionalAction, default=None
    )
    build.add_argument("--stopword-file")
    build.add_argument(
        "--lenient",
        action="store_true",
        default=None,
        help="skip malformed lines instead of failing",
    )
    build.add_argument("--no-progress", action="store_true", help="hide progress bars")
    build.add_argument("--json", action="store_true", help="print the manifest as JSON")
    build.set_defaults(handler=cmd_build)

    query = subparsers.add_parser("query", help="run keyword queries against a build")
    query.add_argument("querystring", nargs="?", help="keyword query")
    query.add_argument(
        "-i",
        "--interactive",
        action="store_true",
        help="read queries until end of input",
    )
    _add_artifact_dir(query)
    query.add_argument("-k", type=int, help="number of results")
    query.add_argument("--sigma", type=float, help="augmentation threshold")
    query.add_argument("--json", action="store_true", help="emit JSON lines")
    query.set_defaults(handler=cmd_query)

    evaluate = subparsers.add_parser("eval", help="score a build against a gold set")
    evaluate.add_argument("gold", help="gold file: query<TAB>iri,iri,...")
    _add_artifact_dir(evaluate)
    evaluate.add_argument("-k", type=int, help="result cutoff")
    evaluate.add_argument("--workers", type=int, help="query threads")
    evaluate.add_argument(
        "--json", action="store_true", help="print the report as JSON"
    )
    evaluate.set_defaults(handler=cmd_eval)

    serve = subparsers.add_parser("serve", help="serve queries over local HTTP")
    _add_artifact_dir(serve)
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    serve.set_defaults(handler=cmd_serve)

    return parser


def cmd_build(args: argparse.Namespace) -> int:
    from semsearch.engines.builder import IndexBuilder
    from semsearch.ui.interface import SearchInterface

    overrides: Dict[str, Any] = {
        "dataset": args.dataset,
        "artifact_dir": args.artifact_dir,
        "beta": args.beta,
        "max_iterations": args.max_iterations,
        "epsilon": args.epsilon,
        "exact_matching_limit": args.exact_matching_limit,
        "weight_mode": args.weight_mode,
        "tau": args.tau,
        "sigma": args.sigma,
        "k": args.k,
        "stemming": args.stemming,
        "split_camel_case": args.split_camel_case,
        "stopword_file": args.stopword_file,
        "lenient": args.lenient,
    }
    config = load_pipeline_config(args.config, **overrides)
    show_progress = False if (args.no_progress or args.json) else None
    result = IndexBuilder(config, show_progress=show_progress).run()

    ui = SearchInterface()
    if args.json:
        ui.write_json(result.manifest.to_dict())
    else:
        ui.show_build_summary(result)
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    from semsearch.engines.query import load_engine
    from semsearch.ui.interactive import InteractiveSession
    from semsearch.ui.interface import SearchInterface

    if not args.interactive and args.querystring is None:
        raise ConfigValidationError("give a query string or --interactive")

    loaded = load_engine(
        args.artifact_dir or _default_artifact_dir(), k=args.k, sigma=args.sigma
    )
    ui = SearchInterface()

    if args.interactive:
        return InteractiveSession(loaded.engine, ui, as_json=args.json).run()

    results = loaded.engine.search(args.querystring)
    if args.json:
        ui.write_json_lines(results)
    else:
        ui.show_results(results, args.querystring)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    from semsearch.engines.query import load_engine
    from semsearch.evaluation import evaluate, load_gold_set
    from semsearch.ui.interface import SearchInterface

    gold = load_gold_set(args.gold)
    loaded = load_engine(args.artifact_dir or _default_artifact_dir(), k=args.k)
    report = evaluate(loaded.engine, gold, loaded.config.k, workers=args.workers)

    ui = SearchInterface()
    if args.json:
        ui.write_json(report.to_dict())
    else:
        ui.show_eval_report(report)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    from semsearch.engines.query import load_engine
    from semsearch.ui.server import serve

    loaded = load_engine(args.artifact_dir or _default_artifact_dir())
    try:
        serve(loaded, host=args.host, port=args.port)
    except OSError as e:
        log_print(f"Error: cannot serve on the requested address: {e}", level="ERROR")
        return EXIT_USAGE
    return EXIT_OK


def _run(handler: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    try:
        return handler(args)
    except USAGE_ERRORS as e:
        log_print(f"Error: {e}", level="ERROR")
        return EXIT_USAGE
    except SemSearchError as e:
        log_print(f"Error: {e}", level="ERROR")
        return EXIT_FAILURE
    except KeyboardInterrupt:
        log_print("Operation cancelled by user", level="WARNING")
        return EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help and --version exit 0; usage errors exit 2
        return int(e.code or 0)

    if args.debug:
        os.environ["DEBUG"] = "1"
        logging_manager.reset()
        logging_manager.initialize()
        logger.debug(f"Arguments: {vars(args)}")

    code = _run(args.handler, args)
    logger.debug(f"Command {args.command!r} finished with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())

