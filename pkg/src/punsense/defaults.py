"""Packaged default resources: manifest, pinned thesaurus source, index."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .thesaurus import Manifest, parse_thesaurus


def _data(name):
    return resources.files("punsense.data").joinpath(name)


def default_manifest():
    return Manifest.from_lines(_data("manifest.tsv").read_text(encoding="utf-8").splitlines())


def pinned_checksum():
    return _data("roget.sha256").read_text(encoding="utf-8").strip()


def default_source_text():
    return _data("roget.txt").read_text(encoding="utf-8")


def default_source_path():
    return str(_data("roget.txt"))


@lru_cache(maxsize=1)
def default_index():
    return parse_thesaurus(
        default_source_text(), default_manifest(), expected_checksum=pinned_checksum()
    )


def default_corpus_path():
    return str(_data("minicorpus.tsv"))
