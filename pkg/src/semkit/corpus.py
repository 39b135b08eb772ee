"""Datasets, splits and seeded demonstration sampling.

File formats
------------
Dataset files are JSONL, one example per line::

    {"id": str, "utterance": str, "programs": {dialect: str, ...}, "tags": [str, ...]}

Split files are JSON::

    {"name": str, "train": [id, ...], "test": [id, ...]}

Known dialect names: ``funql``, ``ldcs``, ``ldcs-simple``, ``dataflow-simple``,
``pymr``.

Sampling PRNG
-------------
Demonstration sampling must be reproducible across implementations, so it does
not use the host language's random module.  It uses the 32-bit linear
congruential generator

    state := (1664525 * state + 1013904223) mod 2**32

(Numerical Recipes constants), seeded with ``seed mod 2**32`` and stepped once
before first use.  ``k`` items are drawn without replacement by a partial
Fisher-Yates shuffle over the pool in file order: at step ``i`` the item at
index ``i + (state mod (n - i))`` is swapped into position ``i``, advancing the
state once per step.  The first ``k`` positions are the sample, in draw order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DataFormatError, PoolExhaustedError

KNOWN_DIALECTS = ("funql", "ldcs", "ldcs-simple", "dataflow-simple", "pymr")

_LCG_MULT = 1664525
_LCG_INC = 1013904223
_LCG_MOD = 2**32


@dataclass(frozen=True)
class Example:
    id: str
    utterance: str
    programs: dict[str, str]
    tags: frozenset[str] = frozenset()

    def tag_value(self, prefix: str) -> str | None:
        """Return the value of a "prefix:value" tag, or None."""
        for tag in self.tags:
            if tag.startswith(prefix + ":"):
                return tag[len(prefix) + 1:]
        return None


@dataclass(frozen=True)
class Dataset:
    name: str
    dialects: tuple[str, ...]
    examples: tuple[Example, ...]

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {ex.id: ex for ex in self.examples})

    def __getitem__(self, example_id: str) -> Example:
        return self._by_id[example_id]

    def __contains__(self, example_id: str) -> bool:
        return example_id in self._by_id

    def __len__(self) -> int:
        return len(self.examples)


@dataclass(frozen=True)
class Split:
    name: str
    train_ids: tuple[str, ...]
    test_ids: tuple[str, ...]


@dataclass(frozen=True)
class DemoSet:
    examples: tuple[Example, ...]
    seed: int
    method: str  # "random" | "coverage" | "bm25"

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(ex.id for ex in self.examples)


def load_dataset(path, name: str | None = None) -> Dataset:
    """Load a JSONL dataset, preserving file order.

    Raises DataFormatError on malformed lines (with the line number),
    duplicate ids, or unknown dialect names.
    """
    examples: list[Example] = []
    seen: set[str] = set()
    dialects: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataFormatError(f"{path}: line {lineno}: not valid JSON: {exc}") from exc
            try:
                ex_id = record["id"]
                utterance = record["utterance"]
                programs = record["programs"]
                tags = record.get("tags", [])
            except KeyError as exc:
                raise DataFormatError(f"{path}: line {lineno}: missing field {exc}") from exc
            if ex_id in seen:
                raise DataFormatError(f"{path}: line {lineno}: duplicate id {ex_id!r}")
            seen.add(ex_id)
            for dialect in programs:
                if dialect not in KNOWN_DIALECTS:
                    raise DataFormatError(
                        f"{path}: line {lineno}: unknown dialect {dialect!r} "
                        f"(known: {', '.join(KNOWN_DIALECTS)})"
                    )
                if dialect not in dialects:
                    dialects.append(dialect)
            examples.append(
                Example(id=ex_id, utterance=utterance, programs=dict(programs), tags=frozenset(tags))
            )
    return Dataset(name=name or str(path), dialects=tuple(dialects), examples=tuple(examples))


def save_dataset(dataset: Dataset, path) -> None:
    """Write a dataset back to JSONL; load/save round-trips byte-identically."""
    with open(path, "w", encoding="utf-8") as fh:
        for ex in dataset.examples:
            fh.write(example_to_json_line(ex) + "\n")


def example_to_json_line(ex: Example) -> str:
    record = {
        "id": ex.id,
        "utterance": ex.utterance,
        "programs": {d: ex.programs[d] for d in sorted(ex.programs)},
        "tags": sorted(ex.tags),
    }
    return json.dumps(record, ensure_ascii=False)


def load_split(path, dataset: Dataset) -> Split:
    """Load a split file and check it against the dataset."""
    with open(path, encoding="utf-8") as fh:
        try:
            record = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"{path}: not valid JSON: {exc}") from exc
    train = record.get("train", [])
    test = record.get("test", [])
    for ex_id in [*train, *test]:
        if ex_id not in dataset:
            raise DataFormatError(f"{path}: unknown example id {ex_id!r}")
    overlap = set(train) & set(test)
    if overlap:
        raise DataFormatError(f"{path}: train/test overlap: {sorted(overlap)}")
    return Split(name=record.get("name", str(path)), train_ids=tuple(train), test_ids=tuple(test))


class Lcg:
    """The documented 32-bit LCG (see module docstring)."""

    def __init__(self, seed: int):
        self.state = seed % _LCG_MOD
        self.next()  # decorrelate small consecutive seeds

    def next(self) -> int:
        self.state = (_LCG_MULT * self.state + _LCG_INC) % _LCG_MOD
        return self.state

    def below(self, n: int) -> int:
        return self.next() % n


def _draw(pool: list[str], k: int, rng: Lcg) -> list[str]:
    items = list(pool)
    for i in range(k):
        j = i + rng.below(len(items) - i)
        items[i], items[j] = items[j], items[i]
    return items[:k]


def sample_demos(
    dataset: Dataset,
    split: Split,
    k: int,
    seed: int,
    dialect: str | None = None,
    stratify_by: str | None = None,
) -> DemoSet:
    """Sample ``k`` demonstrations uniformly without replacement from the train pool.

    Deterministic in (dataset order, split, k, seed).  When ``dialect`` is
    given, the pool is restricted to train examples annotated in that dialect.
    When ``stratify_by`` names a tag prefix (e.g. "domain"), at least two
    examples per tag value are drawn first (pool order per value), then the
    remainder uniformly; default is plain uniform sampling.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    pool = [i for i in split.train_ids if dialect is None or dialect in dataset[i].programs]
    if not pool:
        raise PoolExhaustedError("empty train pool")
    if k > len(pool):
        raise PoolExhaustedError(f"requested k={k} from a pool of {len(pool)}")
    rng = Lcg(seed)
    chosen: list[str]
    if stratify_by is None:
        chosen = _draw(pool, k, rng)
    else:
        by_value: dict[str, list[str]] = {}
        for ex_id in pool:
            value = dataset[ex_id].tag_value(stratify_by)
            if value is not None:
                by_value.setdefault(value, []).append(ex_id)
        chosen = []
        for value in sorted(by_value):
            ids = by_value[value]
            want = min(2, len(ids), max(0, k - len(chosen)))
            chosen.extend(_draw(ids, want, rng))
        rest = [i for i in pool if i not in set(chosen)]
        remaining = k - len(chosen)
        if remaining > 0:
            chosen.extend(_draw(rest, remaining, rng))
    return DemoSet(examples=tuple(dataset[i] for i in chosen), seed=seed, method="random")
