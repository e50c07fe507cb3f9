"""Corpus loading and experiment orchestration.

Corpus rows: ``id<TAB>label<TAB>pun_type<TAB>gold_target<TAB>text``
(TSV) or one JSON object per line with the same fields; ``-`` marks an
absent pun_type/gold_target.  Experiments shuffle, split, vectorize,
train and evaluate once per seed and report per-seed values alongside
their mean, so every mean is re-derivable from the log.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field

from . import textprep
from .classifier import LogisticRegressionClassifier, SmoSvmClassifier, evaluate
from .errors import (
    CorpusParseError,
    DuplicateId,
    EmptyText,
    MissingGold,
    SingleClassData,
)
from .locator import locate_heterographic, locate_homographic
from .vectorizer import DEFAULT_PARTITION, apply_transform, semantic_vector

LABELS = ("pun", "not-pun")
PUN_TYPES = ("homographic", "heterographic", "unknown")


@dataclass
class CorpusRecord:
    id: str
    label: str
    pun_type: str
    gold_target: str | None
    text: str


@dataclass
class Corpus:
    records: list
    path: str | None = None
    checksum: str | None = None

    def __len__(self):
        return len(self.records)

    def class_counts(self):
        counts = {}
        for record in self.records:
            counts[record.label] = counts.get(record.label, 0) + 1
        return counts


def _make_record(row, fields):
    if fields["label"] not in LABELS:
        raise CorpusParseError(f"row {row}: bad label {fields['label']!r}", row=row)
    pun_type = fields.get("pun_type") or "unknown"
    if pun_type == "-":
        pun_type = "unknown"
    if pun_type not in PUN_TYPES:
        raise CorpusParseError(f"row {row}: bad pun_type {pun_type!r}", row=row)
    gold = fields.get("gold_target")
    if gold in ("-", "", None):
        gold = None
    text = fields["text"]
    if not text or not text.strip():
        raise EmptyText(f"row {row}: empty text", row=row)
    return CorpusRecord(
        id=str(fields["id"]), label=fields["label"], pun_type=pun_type,
        gold_target=gold, text=text,
    )


def load_corpus(path, fmt=None):
    if fmt is None:
        fmt = "jsonl" if str(path).endswith((".jsonl", ".json")) else "tsv"
    with open(path, "rb") as fh:
        raw = fh.read()
    checksum = hashlib.sha256(raw).hexdigest()
    text = raw.decode("utf-8")
    records = []
    seen = set()
    for row, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        if fmt == "tsv":
            parts = line.split("\t")
            if len(parts) != 5:
                raise CorpusParseError(
                    f"row {row}: expected 5 tab-separated fields, got {len(parts)}", row=row
                )
            fields = dict(
                zip(("id", "label", "pun_type", "gold_target", "text"), parts)
            )
        elif fmt == "jsonl":
            try:
                fields = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusParseError(f"row {row}: invalid JSON ({exc})", row=row) from exc
        else:
            raise ValueError(f"unknown corpus format {fmt!r}")
        record = _make_record(row, fields)
        if record.id in seen:
            raise DuplicateId(f"row {row}: duplicate id {record.id!r}", row=row)
        seen.add(record.id)
        records.append(record)
    return Corpus(records=records, path=str(path), checksum=checksum)


@dataclass
class ExperimentConfig:
    task: str = "classify"  # classify | locate
    methods: list = field(default_factory=lambda: ["svm-rbf"])
    transforms: list = field(default_factory=lambda: ["none"])
    seeds: list = field(default_factory=lambda: [0, 1, 2, 3, 4])
    split_ratio: float = 0.5
    partition: tuple = DEFAULT_PARTITION
    svm_c: float = 1.0
    svm_gamma: object = "scale"
    logreg_l2: float = 1e-3

    @classmethod
    def from_dict(cls, data):
        config = cls()
        for key, value in data.items():
            if not hasattr(config, key):
                raise ValueError(f"unknown config key {key!r}")
            setattr(config, key, value)
        if not config.seeds:
            raise ValueError("seeds must be non-empty")
        return config


def _make_classifier(method, config, seed):
    if method == "svm-rbf":
        return SmoSvmClassifier(kernel="rbf", C=config.svm_c, gamma=config.svm_gamma, seed=seed)
    if method == "svm-linear":
        return SmoSvmClassifier(kernel="linear", C=config.svm_c, seed=seed)
    if method == "logreg":
        return LogisticRegressionClassifier(l2=config.logreg_l2, seed=seed)
    raise ValueError(f"unknown classification method {method!r}")


def vectorize_corpus(corpus, index, stopwords=None, lexicon=None):
    """Raw Section-count vector per record, computed once."""
    vectors = []
    analyzed = []
    for record in corpus.records:
        sentence = textprep.analyze(record.text, index, stopwords=stopwords, lexicon=lexicon)
        vector = semantic_vector(sentence.tokens, sentence.collocations, index)
        vectors.append(vector.counts)
        analyzed.append(sentence)
    return vectors, analyzed


def split_indices(n, seed, ratio=0.5):
    """Deterministic shuffled train/test index split."""
    order = list(range(n))
    random.Random(seed).shuffle(order)
    cut = int(round(n * ratio))
    return order[:cut], order[cut:]


def run_classification_experiment(corpus, config, index, stopwords=None, lexicon=None):
    counts = corpus.class_counts()
    if len(counts) < 2:
        raise SingleClassData(f"corpus has classes {sorted(counts)}")
    base_vectors, _ = vectorize_corpus(corpus, index, stopwords, lexicon)
    labels = [record.label for record in corpus.records]
    rows = []
    for method in config.methods:
        for transform in config.transforms:
            vectors = [
                apply_transform(v, transform, tuple(config.partition)) for v in base_vectors
            ]
            per_seed = []
            for seed in config.seeds:
                train_idx, test_idx = split_indices(len(corpus), seed, config.split_ratio)
                X_train = [vectors[i] for i in train_idx]
                y_train = [labels[i] for i in train_idx]
                X_test = [vectors[i] for i in test_idx]
                y_test = [labels[i] for i in test_idx]
                model = _make_classifier(method, config, seed).fit(X_train, y_train)
                predictions = model.predict(X_test).tolist()
                report = evaluate(predictions, y_test, positive_label="pun")
                per_seed.append(
                    {
                        "seed": seed,
                        "f_avg": report.f_avg,
                        "per_class": report.per_class,
                        "confusion": report.confusion,
                        "train_ids": [corpus.records[i].id for i in train_idx],
                    }
                )
            mean = lambda key: sum(s[key] for s in per_seed) / len(per_seed)  # noqa: E731
            summary = {
                "method": method,
                "transform": transform,
                "f_avg": mean("f_avg"),
                "per_class": {
                    label: {
                        metric: sum(s["per_class"][label][metric] for s in per_seed)
                        / len(per_seed)
                        for metric in ("precision", "recall", "f")
                    }
                    for label in per_seed[0]["per_class"]
                },
                "per_seed": per_seed,
            }
            rows.append(summary)
    return {"task": "classify", "n_records": len(corpus), "rows": rows}


def run_location_experiment(corpus, config, index, stopwords=None, lexicon=None):
    for row, record in enumerate(corpus.records, start=1):
        if record.gold_target is None:
            raise MissingGold(f"row {row}: record {record.id} has no gold target", row=row)
    _, analyzed = vectorize_corpus(corpus, index, stopwords, lexicon)
    by_type = {}
    for record, sentence in zip(corpus.records, analyzed):
        by_type.setdefault(record.pun_type, []).append((record, sentence))
    rows = []
    for pun_type in sorted(by_type):
        items = by_type[pun_type]
        if pun_type == "heterographic":
            correct = 0
            for record, sentence in items:
                try:
                    result = locate_heterographic(sentence, index)
                    if result.target == record.gold_target:
                        correct += 1
                except Exception:
                    pass
            rows.append(
                {
                    "pun_type": pun_type,
                    "method": "heterographic",
                    "accuracy": correct / len(items),
                    "per_seed": [{"seed": None, "accuracy": correct / len(items)}],
                }
            )
            continue
        for method in config.methods:
            per_seed = []
            for seed in config.seeds:
                correct = 0
                for k, (record, sentence) in enumerate(items):
                    try:
                        result = locate_homographic(
                            sentence, index, method=method, seed=seed * 100003 + k
                        )
                        if result.target == record.gold_target:
                            correct += 1
                    except Exception:
                        pass
                per_seed.append({"seed": seed, "accuracy": correct / len(items)})
            rows.append(
                {
                    "pun_type": pun_type,
                    "method": method,
                    "accuracy": sum(s["accuracy"] for s in per_seed) / len(per_seed),
                    "per_seed": per_seed,
                }
            )
    return {"task": "locate", "n_records": len(corpus), "rows": rows}


def render_classification_table(report):
    header = f"{'Method':<14} {'Transform':<18} {'P pun':>6} {'P not':>6} {'R pun':>6} {'R not':>6} {'F pun':>6} {'F not':>6} {'f_avg':>6}"
    lines = [header, "-" * len(header)]
    for row in report["rows"]:
        pun = row["per_class"]["pun"]
        not_pun = row["per_class"]["not-pun"]
        lines.append(
            f"{row['method']:<14} {row['transform']:<18} "
            f"{pun['precision']:6.2f} {not_pun['precision']:6.2f} "
            f"{pun['recall']:6.2f} {not_pun['recall']:6.2f} "
            f"{pun['f']:6.2f} {not_pun['f']:6.2f} {row['f_avg']:6.2f}"
        )
    return "\n".join(lines)


def render_location_table(report):
    header = f"{'Pun type':<16} {'Method':<18} {'Accuracy':>8}"
    lines = [header, "-" * len(header)]
    for row in report["rows"]:
        lines.append(f"{row['pun_type']:<16} {row['method']:<18} {row['accuracy']:8.4f}")
    return "\n".join(lines)


def render_table(report):
    if report["task"] == "classify":
        return render_classification_table(report)
    return render_location_table(report)
