"""Engine configuration and one-shot resource loading."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib.resources import files
from pathlib import Path

from gunrock.dialog.flow import FlowSpec, load_flow
from gunrock.dialog.manager import RETRIEVAL_MODULE
from gunrock.errors import ConfigError
from gunrock.generation.markup import MarkupConfig, load_markup_rules
from gunrock.generation.templates import TemplateBank, load_templates
from gunrock.knowledge.store import KnowledgeStore, ingest_knowledge
from gunrock.nlu.acts import load_tagset
from gunrock.nlu.affect import AffectLexicons, load_lexicons
from gunrock.nlu.segmenter import SegmentationRules, load_rules
from gunrock.phonetics.correct import DEFAULT_RATE_BOUNDS
from gunrock.phonetics.index import PhoneticIndex, build_phonetic_index, load_gazetteer

# Knowledge bases the ASR corrector consults (title-bearing domains).
CORRECTION_DOMAINS = frozenset({"movie", "book", "person"})

ENV_CONFIG = "GUNROCK_CONFIG"
ENV_PORT = "GUNROCK_PORT"


def default_config_dir() -> Path:
    return Path(str(files("gunrock").joinpath("data")))


@dataclass
class EngineConfig:
    config_dir: Path = field(default_factory=default_config_dir)
    log_path: Path = Path("conversations.jsonl")
    user_store_path: Path | None = None  # default: next to the log
    seed: int = 7
    rate_bounds: tuple[float, float] = DEFAULT_RATE_BOUNDS

    @classmethod
    def from_env(cls, **overrides) -> "EngineConfig":
        cfg = cls(**overrides)
        env_dir = os.environ.get(ENV_CONFIG)
        if env_dir and "config_dir" not in overrides:
            cfg.config_dir = Path(env_dir)
        return cfg

    @property
    def resolved_user_store(self) -> Path:
        if self.user_store_path is not None:
            return self.user_store_path
        return self.log_path.with_name("user_store.json")


@dataclass
class EngineResources:
    gazetteers: dict[str, PhoneticIndex]
    correction_indexes: list[PhoneticIndex]
    knowledge: KnowledgeStore
    templates: TemplateBank
    markup: MarkupConfig
    flows: dict[str, FlowSpec]
    rules: SegmentationRules
    lexicons: AffectLexicons
    tagset: frozenset[str]

    def all_gazetteers(self) -> list[PhoneticIndex]:
        return list(self.gazetteers.values())


def load_resources(config_dir: str | Path | None = None) -> EngineResources:
    """Load and validate every data file the engine needs, fail-fast."""
    base = Path(config_dir) if config_dir else default_config_dir()
    gz_dir = base / "gazetteers"
    gazetteers: dict[str, PhoneticIndex] = {}
    correction: list[PhoneticIndex] = []
    if gz_dir.is_dir():
        for path in sorted(gz_dir.glob("*.tsv")):
            entries = load_gazetteer(path)
            idx = build_phonetic_index(entries)
            gazetteers[path.stem] = idx
            if any(domain in CORRECTION_DOMAINS for _, domain in entries):
                correction.append(idx)

    templates = load_templates(base / "templates.tsv")
    template_keys = set(templates.keys())
    flows: dict[str, FlowSpec] = {}
    flow_dir = base / "flows"
    for path in sorted(flow_dir.glob("*.json")):
        flow = load_flow(path, template_keys)
        flows[flow.module_id] = flow
    if RETRIEVAL_MODULE not in flows:
        raise ConfigError(f"flow registry must include the {RETRIEVAL_MODULE!r} backup module")

    return EngineResources(
        gazetteers=gazetteers,
        correction_indexes=correction,
        knowledge=ingest_knowledge(base),
        templates=templates,
        markup=load_markup_rules(base / "markup_rules.json"),
        flows=flows,
        rules=load_rules(str(base / "segmentation_rules.json")),
        lexicons=load_lexicons(str(base)),
        tagset=load_tagset(str(base / "tagset.txt")),
    )
