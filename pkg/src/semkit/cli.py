"""Command-line frontend.

Subcommands: execute, simplify, select, prompt, run, bootstrap.
Machine-readable JSON goes to stdout, diagnostics to stderr.
Exit codes: 0 success, 1 usage/config error, 2 captured domain failure.

Experiment configs (``run``) are JSON; paths are resolved relative to the
config file, and the ``bundled:`` prefix names packaged resources, e.g.
``bundled:datasets/geoquery.jsonl``.  See README for the schema.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import resources
from .corpus import load_dataset, load_split, sample_demos
from .errors import SemkitError
from .evaluation import POLICIES, canonicalize_names, report_from_verdicts, score_run, verdict_of
from .execute import load_environment, operators_of, run_program
from .llm import CompletionRequest, LlmClient, ReplayCache, extract_program, http_transport
from .prompts import PromptSpec, build_prompt, load_dd_source, render_dd
from .selection import bm25_rank, coverage_fraction, greedy_select
from .social import desimplify_ldcs, parse_ldcs, render_ldcs, simplify_ldcs

CSV_HEADER = "seed,split,dialect,dd_variant,k,accuracy,exec_failure_rate"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's default 2
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _resolve(path: str, base: Path | None = None) -> Path:
    if path.startswith("bundled:"):
        return resources.data_path(*path[len("bundled:"):].split("/"))
    resolved = Path(path)
    if base is not None and not resolved.is_absolute():
        resolved = base / resolved
    return resolved


def cmd_execute(args) -> int:
    program_text = Path(args.program).read_text(encoding="utf-8").strip()
    if not program_text:
        print("error: empty program file", file=sys.stderr)
        return 1
    env_object = load_environment(args.env, _resolve(args.world))
    outcome = run_program(args.dialect, program_text, args.env, env_object)
    print(json.dumps(outcome.to_json(), ensure_ascii=False))
    if not outcome.ok:
        print(f"execution failed: {outcome.message}", file=sys.stderr)
        return 2
    return 0


def cmd_simplify(args) -> int:
    lines = Path(args.input).read_text(encoding="utf-8").splitlines()
    out_lines = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            if args.direction == "simplify":
                ast = simplify_ldcs(parse_ldcs(line, "full"))
            else:
                ast = desimplify_ldcs(parse_ldcs(line, "simple"))
            out_lines.append(render_ldcs(ast))
        except SemkitError as exc:
            print(f"line {lineno}: {exc}", file=sys.stderr)
            return 2
    text = "\n".join(out_lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _train_pool(dataset, split, dialect):
    return [(ex_id, dataset[ex_id]) for ex_id in split.train_ids
            if dialect in dataset[ex_id].programs]


def _select_demo_ids(method: str, dataset, split, dialect: str, k: int,
                     seed: int, query: str | None):
    pool = _train_pool(dataset, split, dialect)
    operator_sets = {ex_id: operators_of(dialect, ex.programs[dialect]) for ex_id, ex in pool}
    structures = frozenset().union(*operator_sets.values()) if operator_sets else frozenset()
    if method == "random":
        ids = list(sample_demos(dataset, split, k, seed, dialect=dialect).ids)
    elif method == "coverage":
        ids = greedy_select([(ex_id, operator_sets[ex_id]) for ex_id, _ in pool],
                            structures, k)
    elif method == "bm25":
        if query is None:
            raise SemkitError("bm25 selection needs a query utterance")
        ids = bm25_rank(query, [(ex_id, ex.utterance) for ex_id, ex in pool], k)
    else:
        raise SemkitError(f"unknown selection method {method!r}")
    fraction = coverage_fraction([operator_sets[i] for i in ids], structures)
    return ids, fraction


def cmd_select(args) -> int:
    dataset = load_dataset(_resolve(args.dataset))
    split = load_split(_resolve(args.split), dataset)
    ids, fraction = _select_demo_ids(args.method, dataset, split, args.dialect,
                                     args.k, args.seed, args.query)
    print(json.dumps({"method": args.method, "k": args.k, "ids": ids,
                      "coverage_fraction": fraction}, ensure_ascii=False))
    return 0


def _dd_text(environment: str, dialect: str, variant: str) -> str:
    if variant == "none":
        return ""
    declarations = load_dd_source(resources.dd_path(environment, dialect))
    return render_dd(declarations, variant)


def cmd_prompt(args) -> int:
    dataset = load_dataset(_resolve(args.dataset))
    split = load_split(_resolve(args.split), dataset)
    ids, _ = _select_demo_ids(args.method, dataset, split, args.dialect,
                              args.k, args.seed, args.utterance)
    spec = PromptSpec(
        dd_variant=args.dd, dd_text=_dd_text(args.env, args.dialect, args.dd),
        demonstrations=tuple((dataset[i].utterance, dataset[i].programs[args.dialect])
                             for i in ids),
        test_utterance=args.utterance, dialect=args.dialect)
    sys.stdout.write(build_prompt(spec))
    return 0


def _make_client(client_config: dict, base: Path) -> LlmClient:
    mode = client_config.get("mode", "replay")
    cache = None
    if "cache" in client_config:
        cache = ReplayCache(_resolve(client_config["cache"], base))
    transport = None
    if mode in ("live", "record"):
        transport = http_transport(client_config["endpoint"],
                                   client_config.get("api_key_env", "SEMKIT_API_KEY"))
    return LlmClient(mode=mode, cache=cache, transport=transport)


def _csv_row(seed, split_name, dialect, dd_variant, k, accuracy, failure_rate) -> str:
    return (f"{seed},{split_name},{dialect},{dd_variant},{k},"
            f"{accuracy:.6f},{failure_rate:.6f}")


def run_experiment(config: dict, base: Path, out_dir: Path, jobs: int = 1) -> dict:
    dataset = load_dataset(_resolve(config["dataset"], base))
    split = load_split(_resolve(config["split"], base), dataset)
    if not split.test_ids:
        raise SemkitError("experiment has zero test examples")
    environment = config["environment"]
    dialect = config["dialect"]
    gold_dialect = config.get("gold_dialect", dialect)
    dd_variant = config.get("dd_variant", "full")
    selection = config.get("selection", {"method": "random", "k": 3})
    method, k = selection["method"], int(selection["k"])
    seeds = config["seeds"]
    if not seeds:
        raise SemkitError("seeds list must be nonempty")
    jobs = max(int(config.get("jobs", jobs)), 1)
    model = config["client"].get("model", "unspecified-model")
    temperature = float(config["client"].get("temperature", 0.0))
    client = _make_client(config["client"], base)
    env_object = load_environment(
        environment, _resolve(config.get("environment_file",
                                         f"bundled:{resources.environment_path(environment).name}"),
                              base))
    policy = POLICIES[environment]
    dd_text = _dd_text(environment, dialect, dd_variant)
    template_id = config.get("template_id", "v1")

    out_dir.mkdir(parents=True, exist_ok=True)
    reports = []
    per_seed_rows = []
    for seed in seeds:
        if method == "bm25":
            fixed_ids = None
        else:
            fixed_ids, _ = _select_demo_ids(method, dataset, split, dialect, k, seed, None)

        def evaluate_one(test_id, seed=seed, fixed_ids=fixed_ids):
            example = dataset[test_id]
            if fixed_ids is None:
                ids, _ = _select_demo_ids("bm25", dataset, split, dialect, k,
                                          seed, example.utterance)
            else:
                ids = fixed_ids
            spec = PromptSpec(
                dd_variant=dd_variant, dd_text=dd_text,
                demonstrations=tuple((dataset[i].utterance, dataset[i].programs[dialect])
                                     for i in ids),
                test_utterance=example.utterance, dialect=dialect, template_id=template_id)
            request = CompletionRequest(prompt=build_prompt(spec), model=model,
                                        temperature=temperature)
            try:
                completion = client.complete(request)
            except SemkitError as exc:
                print(f"seed {seed} {test_id}: {exc}", file=sys.stderr)
                return (test_id, "execution-failure")
            program = extract_program(completion)
            gold_program = example.programs[gold_dialect]
            if policy.name_canonicalization:
                try:
                    program, gold_program = canonicalize_names(program, gold_program, env_object)
                except SemkitError:
                    return (test_id, "execution-failure")
            pred = run_program(dialect, program, environment, env_object)
            gold = run_program(gold_dialect, gold_program, environment, env_object)
            return (test_id, verdict_of(pred, gold, policy))

        if jobs > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                verdicts = list(pool.map(evaluate_one, split.test_ids))
        else:
            verdicts = [evaluate_one(test_id) for test_id in split.test_ids]
        report = report_from_verdicts(seed, verdicts)
        reports.append(report)
        (out_dir / f"report_seed{seed}.json").write_text(
            json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        row = _csv_row(seed, split.name, dialect, dd_variant, k,
                       report.accuracy, report.exec_failure_rate)
        per_seed_rows.append(row)
        (out_dir / f"report_seed{seed}.csv").write_text(
            CSV_HEADER + "\n" + row + "\n", encoding="utf-8")

    aggregate = score_run(reports)
    mean_row = _csv_row("mean", split.name, dialect, dd_variant, k,
                        aggregate["mean_accuracy"], aggregate["mean_exec_failure_rate"])
    (out_dir / "aggregate.csv").write_text(
        CSV_HEADER + "\n" + "\n".join(per_seed_rows) + "\n" + mean_row + "\n", encoding="utf-8")
    (out_dir / "aggregate.json").write_text(
        json.dumps(aggregate, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    return aggregate


def cmd_run(args) -> int:
    config_path = Path(args.config)
    config = json.loads(config_path.read_text(encoding="utf-8"))
    base = config_path.parent
    if args.output_dir:
        out_dir = Path(args.output_dir)
    elif "output_dir" in config:
        out_dir = _resolve(config["output_dir"], base)
    else:
        out_dir = Path("out")  # relative to the caller, never the config's home
    aggregate = run_experiment(config, base, out_dir, jobs=args.jobs)
    print(json.dumps(aggregate, ensure_ascii=False))
    return 0


def cmd_bootstrap(args) -> int:
    from .corpus import Example, example_to_json_line
    from .llm import BootstrapConfig, bootstrap_annotations

    config_path = Path(args.config)
    config = json.loads(config_path.read_text(encoding="utf-8"))
    base = config_path.parent
    dataset = load_dataset(_resolve(config["dataset"], base))
    seed_pool = [dataset[i] for i in config["seed_ids"]]
    # ids listed as unlabeled are treated as lacking the target-dialect annotation
    unlabeled = []
    for ex_id in config["unlabeled_ids"]:
        example = dataset[ex_id]
        programs = {d: p for d, p in example.programs.items() if d != config["dialect"]}
        unlabeled.append(Example(id=example.id, utterance=example.utterance,
                                 programs=programs, tags=example.tags))
    env_object = load_environment(
        config["environment"],
        _resolve(config.get("environment_file",
                            f"bundled:{resources.environment_path(config['environment']).name}"),
                 base))
    client = _make_client(config["client"], base)
    bootstrap_config = BootstrapConfig(
        environment=config["environment"], dialect=config["dialect"],
        gold_dialect=config["gold_dialect"], model=config["client"].get("model", "m"),
        k=int(config.get("k", 3)), passes=int(config.get("passes", 3)),
        seed=int(config.get("seed", 0)),
        dd_declarations=load_dd_source(resources.dd_path(config["environment"],
                                                         config["dialect"])))
    pool = bootstrap_annotations(seed_pool, unlabeled, env_object, client, bootstrap_config)
    output = _resolve(config.get("output", "pool.jsonl"), base)
    with open(output, "w", encoding="utf-8") as fh:
        for example in pool:
            fh.write(example_to_json_line(example) + "\n")
    print(json.dumps({"pool_before": len(seed_pool), "pool_after": len(pool),
                      "output": str(output)}, ensure_ascii=False))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="semkit", description="Execute and evaluate meaning representations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("execute", help="run one program file against an environment")
    p.add_argument("--env", required=True, choices=("geo", "social", "calendar"))
    p.add_argument("--dialect", required=True)
    p.add_argument("--program", required=True)
    p.add_argument("--world", required=True, help="model/db/world file (or bundled:...)")
    p.set_defaults(func=cmd_execute)

    p = sub.add_parser("simplify", help="convert full-dialect programs to simple and back")
    p.add_argument("--direction", choices=("simplify", "desimplify"), default="simplify")
    p.add_argument("--input", required=True, help="one program per line")
    p.add_argument("--output")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("select", help="pick demonstrations from a train split")
    p.add_argument("--method", choices=("random", "coverage", "bm25"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--split", required=True)
    p.add_argument("--dialect", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--query", help="test utterance (bm25 only)")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("prompt", help="print an assembled prompt")
    p.add_argument("--env", required=True, choices=("geo", "social", "calendar"))
    p.add_argument("--dialect", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--split", required=True)
    p.add_argument("--dd", choices=("none", "operator-list", "no-typing", "full"),
                   default="full")
    p.add_argument("--method", choices=("random", "coverage", "bm25"), default="random")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--utterance", required=True)
    p.set_defaults(func=cmd_prompt)

    p = sub.add_parser("run", help="run a full experiment from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--output-dir")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel per-example workers (aggregation stays single-threaded)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bootstrap", help="grow an annotation pool with verified programs")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_bootstrap)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SemkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
