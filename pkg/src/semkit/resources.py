"""Access to the bundled data files (corpora, environments, DD sources)."""

from __future__ import annotations

from pathlib import Path

DATA_DIR = Path(__file__).parent / "data"


def data_path(*parts: str) -> Path:
    path = DATA_DIR.joinpath(*parts)
    if not path.exists():
        raise FileNotFoundError(f"no bundled resource {'/'.join(parts)!r}")
    return path


def dataset_path(name: str) -> Path:
    return data_path("datasets", f"{name}.jsonl")


def split_path(name: str) -> Path:
    return data_path("splits", f"{name}.json")


def environment_path(environment: str) -> Path:
    names = {"geo": "geobase.jsonl", "social": "social_db.json", "calendar": "calendar_world.json"}
    return data_path(names[environment])


def dd_path(environment: str, dialect: str) -> Path:
    return data_path("dd", f"{environment}_{dialect.replace('-', '_')}.json")


def template_path(template_id: str = "v1") -> Path:
    return data_path(f"prompt_template_{template_id}.txt")
