import sys
import json
import logging
import argparse
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.errors import AdmissionError, CodeToolError, VerificationError
from src.spectrum import analyze, parse_function_spec
from src.charsums import LEMMAS, context_from_dict, lemmas_for, sweep
from src.codes import classify, sphere_packing_max_d, write_matrix
from src.constructions import augmented_generator, build_defining_set, lift_generator, verify_construction
from src.catalog import example_numbers, get_example
from src.visualizer import CodeVisualizer

DEFAULT_SEED = 2024


def setup_logging(verbose=False, quiet=False):
    level = logging.DEBUG if verbose else logging.ERROR if quiet else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr, force=True)


@dataclass
class RunConfig:
    command: str
    fmt: str
    output: str
    jobs: int
    seed: int
    verbose: bool
    quiet: bool
    args: argparse.Namespace

    @classmethod
    def from_args(cls, args):
        if args.jobs < 1:
            raise ValueError(f"--jobs must be at least 1, got {args.jobs}")
        return cls(args.command, args.format, args.output, args.jobs, args.seed, args.verbose, args.quiet, args)

    @property
    def text(self):
        return self.fmt == "text" and not self.quiet


def emit(config, document):
    if config.output:
        Path(config.output).write_text(json.dumps(document, indent=2, default=str) + "\n")
        if config.text:
            print(f"✅ Report saved: {config.output}")
    if config.fmt == "json":
        print(json.dumps(document, indent=2, default=str))


def banner(config, title):
    if config.text:
        print(f"🎯 {title}")
        print("=" * 40)


# --- commands -------------------------------------------------------------------------


def run_analyze(config):
    args = config.args
    f = parse_function_spec(args.f)
    profile = analyze(f, config.jobs)
    document = {"function": str(f), "profile": profile.to_dict()}

    banner(config, "WALSH SPECTRUM")
    if config.text:
        print(f"📊 {f}")
        if not profile.plateaued:
            print("⚠️  Not plateaued")
        else:
            print(f"✅ {profile.k}-plateaued, sign pattern: {profile.sign_pattern}")
            print(f"   support size: {profile.support_size}, balanced: {profile.balanced}, "
                  f"symmetric: {profile.symmetric}, dual homogeneous: {profile.dual_homogeneous}")
            print(f"   in weight-table class: {profile.in_wrp}")

    if args.plot and profile.plateaued:
        path = CodeVisualizer().plot_spectrum(profile, args.plot, title=str(f))
        document["plot"] = path
        if config.text:
            print(f"✅ Plot saved: {path}")
    emit(config, document)
    return 0


def _load_context(text, jobs):
    raw = text if text.lstrip().startswith("{") else Path(text).read_text()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ValueError(f"--context is neither a JSON document nor a readable file: {e}") from e
    return context_from_dict(data, jobs)


def run_lemma_check(config):
    args = config.args
    ctx = _load_context(args.context, config.jobs)
    names = lemmas_for(ctx) if args.lemma == "all" else [args.lemma]

    banner(config, "LEMMA CHECK")
    document = {"context": ctx.describe(), "lemmas": {}}
    failed = 0
    for name in names:
        rows = sweep(ctx, name, sample=args.sample, seed=config.seed, jobs=config.jobs)
        bad = [r for r in rows if r.match is False]
        unmet = [r for r in rows if r.match is None]
        notes = sorted({r.note for r in rows if r.note and r.match is not None})
        failed += len(bad)
        document["lemmas"][name] = {
            "rows": len(rows),
            "mismatches": [r.to_dict() for r in bad],
            "precondition_unmet": len(unmet),
            "notes": notes[:5],
        }
        if config.text:
            status = "✅" if not bad else "❌"
            line = f"{status} {name}: {len(rows) - len(bad) - len(unmet)}/{len(rows)} rows agree"
            if unmet:
                line += f", {len(unmet)} precondition unmet"
            print(line)
            for r in bad[:3]:
                print(f"   ❌ {r.inputs}: closed {r.closed}, oracle {r.oracle}")
            if notes:
                print(f"   ⚠️  published values differ on {sum(1 for r in rows if r.note)} rows")

    if config.text:
        print(f"\n📊 Results: {'PASSED' if not failed else 'FAILED'}")
    emit(config, document)
    return 0 if not failed else 1


def _print_report(report, heading):
    data = report.to_dict()
    actual = data["actual"]
    print(f"📊 {heading}: [{actual['length']}, {actual['dimension']}, {actual['min_distance']}]"
          f"  self-orthogonal: {actual['self_orthogonal']}")
    print(f"   enumerator: {actual['enumerator']}")
    print(f"   dual distance (<= 3 search): {actual['dual_d_upto3']['value']}")
    if actual["bound"]:
        print(f"   sphere-packing: max d = {actual['bound']['max_d']} ({actual['bound']['class']})")
    if data["prediction"]:
        p = data["prediction"]
        print(f"   prediction ({p['table']}): [{p['length']}, {p['dimension']}, {p['min_distance']}]")
    elif data["prediction_note"]:
        print(f"   ⚠️  {data['prediction_note']}")
    if data["lcd"]:
        lcd = data["lcd"]
        print(f"   LCD lift: [{lcd['length']}, {lcd['dimension']}, {lcd['min_distance']}]"
              f"  is LCD: {lcd['is_lcd']}  dual distance: {lcd['dual_d_upto3']['value']}")
    for w in data["warnings"]:
        print(f"   ⚠️  {w}")
    for m in data["mismatches"]:
        print(f"   ❌ {m}")
    print(f"{'✅' if report.ok else '❌'} {'All checks passed' if report.ok else 'Mismatch found'}")


def run_construct(config):
    args = config.args
    g = parse_function_spec(args.g)
    if args.kind == "fg":
        if not args.f:
            raise ValueError("--kind fg needs --f")
        f = parse_function_spec(args.f)
        n = None
    else:
        if args.n is None:
            raise ValueError("--kind traceg needs --n")
        f = None
        n = args.n
    ds = build_defining_set(f, g, args.lam, n=n, jobs=config.jobs)
    report = verify_construction(ds, lcd=args.lcd, jobs=config.jobs, variant=args.variant)
    document = report.to_dict()

    banner(config, "CODE CONSTRUCTION")
    if config.text:
        _print_report(report, f"{ds.kind} code, lambda={ds.lam}")

    if args.matrix_out:
        gen = augmented_generator(ds)
        write_matrix(args.matrix_out, lift_generator(gen).gen if args.lcd else gen)
        document["matrix"] = args.matrix_out
        if config.text:
            print(f"✅ Generator saved: {args.matrix_out}")
    if args.plot:
        actual = dict(document["actual"]["distribution"])
        predicted = dict(document["prediction"]["distribution"]) if document["prediction"] else None
        path = CodeVisualizer().plot_weight_distribution(actual, predicted, args.plot, title=f"{ds.kind} code")
        document["plot"] = path
        if config.text:
            print(f"✅ Plot saved: {path}")
    emit(config, document)
    return 0 if report.ok else 1


def run_reproduce(config):
    args = config.args
    numbers = example_numbers() if args.all else [args.example]
    banner(config, "REFERENCE CONSTRUCTIONS")
    document = {"examples": {}}
    failed = 0
    for number in numbers:
        entry = get_example(number)
        if config.text:
            print(f"\n🔄 Entry {number}: {entry.title}")
        try:
            report = entry.run(jobs=config.jobs, variant=args.variant)
        except AdmissionError as e:
            document["examples"][number] = {"skipped": str(e), "reasons": e.reasons}
            if config.text:
                print(f"⚠️  Skipped: {e}")
            continue
        document["examples"][number] = report.to_dict()
        if not report.ok:
            failed += 1
        if config.text:
            _print_report(report, f"entry {number}")
            if entry.note:
                print(f"   note: {entry.note}")

    if config.text:
        print(f"\n📊 Results: {'PASSED' if not failed else 'FAILED'}")
    emit(config, document)
    return 0 if not failed else 1


def run_bound(config):
    args = config.args
    if args.d is None:
        document = {"n": args.n, "k": args.k, "max_d": sphere_packing_max_d(args.n, args.k)}
    else:
        document = classify(args.n, args.k, args.d)
    banner(config, "SPHERE-PACKING BOUND")
    if config.text:
        print(f"📊 [{args.n}, {args.k}]: max d = {document['max_d']}")
        if "class" in document:
            print(f"✅ d = {args.d} is {document['class']}")
    emit(config, document)
    return 0


COMMANDS = {
    "analyze": run_analyze,
    "lemma-check": run_lemma_check,
    "construct": run_construct,
    "reproduce": run_reproduce,
    "bound": run_bound,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text", help="Output format (default: text)")
    common.add_argument("--output", help="Also write the JSON report to this path")
    common.add_argument("--jobs", type=int, default=1, help="Worker threads (default: 1)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Sampling seed (default: {DEFAULT_SEED})")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    common.add_argument("--quiet", "-q", action="store_true", help="Minimal output")

    parser = argparse.ArgumentParser(
        description="Build and check ternary self-orthogonal and LCD codes from weakly regular plateaued functions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python3 main.py analyze --f "Tr(2*x^92) @ GF(3^4)"
  python3 main.py construct --kind traceg --n 1 --g "Tr([0,1,0]*x^4) @ GF(3^3)" --lambda 1 --lcd
  python3 main.py lemma-check --lemma all --context '{"kind": "trace", "n": 1, "g": "Tr([0,1,0]*x^2) @ GF(3^3)", "lambda": 1}'
  python3 main.py reproduce --all --jobs 4
  python3 main.py bound --n 32 --k 27 --d 3
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="Walsh spectrum and class membership of a function")
    p.add_argument("--f", required=True, help="Function spec, e.g. 'Tr(g^3*x^2) @ GF(3^3)'")
    p.add_argument("--plot", help="Save a spectrum plot (PNG)")

    p = sub.add_parser("lemma-check", parents=[common], help="Closed forms against brute force")
    p.add_argument("--lemma", default="all", choices=["all"] + list(LEMMAS), help="Identity to check")
    p.add_argument("--context", required=True, help="Context as JSON text or a path to a JSON file")
    p.add_argument("--sample", type=int, help="Check a seeded sample of this many inputs")

    p = sub.add_parser("construct", parents=[common], help="Build a code and compare it with its prediction")
    p.add_argument("--kind", choices=["fg", "traceg"], required=True)
    p.add_argument("--f", help="Function on the x field (fg only)")
    p.add_argument("--g", required=True, help="Function on the y field")
    p.add_argument("--n", type=int, help="Degree of the x field (traceg only)")
    p.add_argument("--lambda", dest="lam", type=int, choices=[1, 2], default=1, help="Shift lambda in GF(3)* (default: 1)")
    p.add_argument("--lcd", action="store_true", help="Also build and check the LCD lift (I | G)")
    p.add_argument("--variant", choices=["derived", "reference"], default="derived",
                   help="Weight table variant (default: derived)")
    p.add_argument("--matrix-out", help="Write the generator matrix to this file")
    p.add_argument("--plot", help="Save a weight distribution plot (PNG)")

    p = sub.add_parser("reproduce", parents=[common], help="Run the built-in reference constructions")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--example", type=int, help="Entry number")
    group.add_argument("--all", action="store_true", help="Every entry")
    p.add_argument("--variant", choices=["derived", "reference"], default="derived")

    p = sub.add_parser("bound", parents=[common], help="Sphere-packing bound for ternary [n, k] codes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, help="Classify this minimum distance")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose, args.quiet)

    try:
        config = RunConfig.from_args(args)
        return COMMANDS[config.command](config)
    except VerificationError as e:
        print(f"❌ {e}")
        return 1
    except (ValueError, CodeToolError, OSError) as e:
        print(f"❌ {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
