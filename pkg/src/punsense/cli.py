"""Command-line interface.

Exit codes: 0 success, 1 domain error, 2 usage error.  With ``--json``
domain errors are emitted as one ``{"error": ...}`` line on stderr.
All file outputs are written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import defaults, harness, textprep
from .classifier import load_model, save_model
from .errors import PunsenseError
from .harness import ExperimentConfig
from .locator import locate_heterographic, locate_homographic
from .thesaurus import Manifest, ThesaurusIndex, parse_thesaurus
from .vectorizer import DEFAULT_PARTITION, apply_transform, semantic_vector


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".out-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_index(args):
    if getattr(args, "index", None):
        return ThesaurusIndex.load(args.index)
    return defaults.default_index()


def _load_prep(args):
    stopwords = textprep.load_stopwords(getattr(args, "stopwords", None))
    lexicon = textprep.load_lexicon(getattr(args, "lexicon", None))
    return stopwords, lexicon


def _input_lines(args):
    if getattr(args, "infile", None):
        with open(args.infile, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    elif getattr(args, "text", None):
        lines = [" ".join(args.text)]
    else:
        lines = sys.stdin.read().splitlines()
    return [line for line in lines if line.strip()]


def _partition(args):
    raw = getattr(args, "partition", None)
    if not raw:
        return DEFAULT_PARTITION
    return tuple(int(x) for x in raw.split(","))


def _progress(args, message):
    if not getattr(args, "quiet", False):
        print(message, file=sys.stderr)


def cmd_build_index(args):
    with open(args.source, "rb") as fh:
        raw = fh.read()
    manifest = (
        Manifest.from_file(args.manifest) if args.manifest else defaults.default_manifest()
    )
    expected = args.expected_checksum
    if expected is None and not args.force:
        expected = defaults.pinned_checksum()
    index = parse_thesaurus(raw, manifest, expected_checksum=expected, force=args.force)
    index.save(args.out)
    _progress(args, f"indexed {len(index)} entries into {args.out}")
    return 0


def _analyze_line(line, index, stopwords, lexicon):
    sentence = textprep.analyze(line, index, stopwords=stopwords, lexicon=lexicon)
    vector = semantic_vector(sentence.tokens, sentence.collocations, index)
    return sentence, vector


def cmd_analyze(args):
    index = _load_index(args)
    stopwords, lexicon = _load_prep(args)
    partition = _partition(args)
    for line in _input_lines(args):
        sentence, vector = _analyze_line(line, index, stopwords, lexicon)
        counts = apply_transform(vector.counts, args.transform, partition)
        if args.json:
            print(json.dumps({"text": line, "vector": counts}, sort_keys=True))
        else:
            print(" ".join(str(c) for c in counts))
    return 0


def cmd_explain(args):
    index = _load_index(args)
    stopwords, lexicon = _load_prep(args)
    for line in _input_lines(args):
        sentence, vector = _analyze_line(line, index, stopwords, lexicon)
        sources = {
            index.manifest.name_of(k): words
            for k, words in vector.source_words.items()
            if words
        }
        payload = {
            "text": line,
            "vector": vector.counts,
            "source_words": sources,
            "collocations": [c.surface_lemma for c in sentence.collocations],
        }
        print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_train(args):
    index = _load_index(args)
    stopwords, lexicon = _load_prep(args)
    corpus = harness.load_corpus(args.corpus)
    config = ExperimentConfig(
        methods=[args.method],
        svm_c=args.C,
        svm_gamma=args.gamma if args.gamma == "scale" else float(args.gamma),
        logreg_l2=args.l2,
    )
    vectors, _ = harness.vectorize_corpus(corpus, index, stopwords, lexicon)
    vectors = [apply_transform(v, args.transform, _partition(args)) for v in vectors]
    labels = [r.label for r in corpus.records]
    model = harness._make_classifier(args.method, config, args.seed).fit(vectors, labels)
    save_model(model, args.model)
    _progress(args, f"trained {args.method} on {len(corpus)} records -> {args.model}")
    return 0


def cmd_classify(args):
    index = _load_index(args)
    stopwords, lexicon = _load_prep(args)
    model = load_model(args.model)
    partition = _partition(args)
    for line in _input_lines(args):
        _, vector = _analyze_line(line, index, stopwords, lexicon)
        counts = apply_transform(vector.counts, args.transform, partition)
        decision = float(model.decision_function([counts])[0])
        label = model.classes_[1] if decision > 0 else model.classes_[0]
        if args.json:
            print(json.dumps({"label": label, "decision_value": decision}, sort_keys=True))
        else:
            print(f"{label}\t{decision:.6f}")
    return 0


def cmd_locate(args):
    index = _load_index(args)
    stopwords, lexicon = _load_prep(args)
    for k, line in enumerate(_input_lines(args)):
        sentence = textprep.analyze(line, index, stopwords=stopwords, lexicon=lexicon)
        if args.mode == "heterographic":
            result = locate_heterographic(sentence, index)
        else:
            result = locate_homographic(
                sentence, index, method=args.method, seed=args.seed + k
            )
        if args.json:
            print(json.dumps(result.as_dict(), sort_keys=True))
        else:
            print(result.target)
    return 0


def cmd_experiment(args):
    with open(args.config, encoding="utf-8") as fh:
        raw = json.load(fh)
    corpus_path = raw.pop("corpus", None) or defaults.default_corpus_path()
    index_path = raw.pop("index", None)
    config = ExperimentConfig.from_dict(raw)
    index = ThesaurusIndex.load(index_path) if index_path else defaults.default_index()
    stopwords, lexicon = _load_prep(args)
    corpus = harness.load_corpus(corpus_path)
    if config.task == "classify":
        report = harness.run_classification_experiment(corpus, config, index, stopwords, lexicon)
    elif config.task == "locate":
        report = harness.run_location_experiment(corpus, config, index, stopwords, lexicon)
    else:
        raise PunsenseError(f"unknown task {config.task!r}")
    if args.out:
        _atomic_write(args.out, json.dumps(report, sort_keys=True, indent=2) + "\n")
    if args.log:
        lines = []
        for row in report["rows"]:
            for seed_entry in row["per_seed"]:
                entry = dict(seed_entry)
                entry["method"] = row["method"]
                entry.setdefault("transform", row.get("transform"))
                lines.append(json.dumps(entry, sort_keys=True))
        _atomic_write(args.log, "\n".join(lines) + "\n")
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(harness.render_table(report))
    return 0


def _add_common(parser, index=True, prep=True, io=True):
    if index:
        parser.add_argument("--index", help="path to a built index file (default: packaged)")
    if prep:
        parser.add_argument("--stopwords", help="stopword list file")
        parser.add_argument("--lexicon", help="POS lexicon file (word<TAB>tag)")
    if io:
        parser.add_argument("--in", dest="infile", help="input file, one sentence per line")
        parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--quiet", action="store_true", help="suppress progress output")


def build_parser():
    parser = argparse.ArgumentParser(prog="punsense")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-index", help="parse a thesaurus source into an index file")
    p.add_argument("--source", required=True)
    p.add_argument("--manifest", help="section manifest (default: packaged)")
    p.add_argument("--out", required=True)
    p.add_argument("--expected-checksum", help="pin a specific source checksum")
    p.add_argument("--force", action="store_true", help="accept an unpinned source")
    _add_common(p, index=False, prep=False, io=False)
    p.set_defaults(func=cmd_build_index)

    p = sub.add_parser("analyze", help="semantic vector of each sentence")
    p.add_argument("text", nargs="*", help="sentence (if no --in and no stdin)")
    p.add_argument("--transform", choices=["none", "sort", "sort-partitioned"], default="none")
    p.add_argument("--partition", help="comma-separated block sizes, default 8,8,8,10")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("explain", help="vector with per-Section contributing words")
    p.add_argument("text", nargs="*")
    _add_common(p)
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("train", help="train a classifier on a corpus file")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True, help="output model path")
    p.add_argument("--method", choices=["svm-rbf", "svm-linear", "logreg"], default="svm-rbf")
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--gamma", default="scale")
    p.add_argument("--l2", type=float, default=1e-3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--transform", choices=["none", "sort", "sort-partitioned"], default="none")
    p.add_argument("--partition")
    _add_common(p, io=False)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", help="label sentences with a trained model")
    p.add_argument("text", nargs="*")
    p.add_argument("--model", required=True)
    p.add_argument("--transform", choices=["none", "sort", "sort-partitioned"], default="none")
    p.add_argument("--partition")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("locate", help="find the target word of each pun")
    p.add_argument("text", nargs="*")
    p.add_argument("--mode", choices=["homographic", "heterographic"], default="homographic")
    p.add_argument(
        "--method",
        choices=["sense_based", "last_word", "random", "most_polysemous"],
        default="sense_based",
    )
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("experiment", help="run a configured experiment")
    p.add_argument("--config", required=True, help="JSON experiment config")
    p.add_argument("--out", help="write the report as JSON")
    p.add_argument("--log", help="write the per-seed log as JSONL")
    _add_common(p, index=False)
    p.set_defaults(func=cmd_experiment)

    return parser


_TRANSFORM_ALIASES = {"none": "none", "sort": "sort_full", "sort-partitioned": "sort_partitioned"}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "transform"):
        args.transform = _TRANSFORM_ALIASES[args.transform]
    try:
        return args.func(args)
    except (PunsenseError, OSError, ValueError) as exc:
        if getattr(args, "json", False):
            print(json.dumps({"error": str(exc)}), file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
