"""Command line entry points: correct, serve, analyze, synth."""

from __future__ import annotations

import json
import logging
import os
import sys
from pathlib import Path

import click

from gunrock.service.config import ENV_PORT


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging.")
def main(verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.option("--kb", "kb_files", multiple=True, required=True,
              type=click.Path(exists=True), help="Gazetteer file (repeatable).")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True),
              help="JSONL of {'tokens': [{word,start_ms,end_ms}]} lines.")
def correct(kb_files, input_path):
    """Debug the phonetic corrector over timed-token input lines."""
    from gunrock.phonetics.correct import TimedToken, correct_utterance
    from gunrock.phonetics.index import build_phonetic_index, load_gazetteer

    indexes = [build_phonetic_index(load_gazetteer(p)) for p in kb_files]
    for raw in Path(input_path).read_text(encoding="utf-8").splitlines():
        raw = raw.strip()
        if not raw:
            continue
        payload = json.loads(raw)
        tokens = [
            TimedToken(t["word"].lower(), t["start_ms"], t["end_ms"])
            for t in payload["tokens"]
        ]
        text, applied = correct_utterance(tokens, indexes)
        click.echo(json.dumps({
            "text": text,
            "corrections": [
                {"span": list(c.token_span), "original": c.original,
                 "replacement": c.replacement, "score": c.score,
                 "code": c.matched_code}
                for c in applied
            ],
        }, ensure_ascii=False))


@main.command()
@click.option("--config", "config_dir", type=click.Path(exists=True),
              help="Config/data directory (default: bundled data).")
@click.option("--log", "log_path", default="conversations.jsonl", show_default=True,
              help="Append-only conversation log path.")
@click.option("--port", default=None, type=int, help="HTTP port (or GUNROCK_PORT).")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--seed", default=7, show_default=True, help="Engine RNG seed.")
def serve(config_dir, log_path, port, host, seed):
    """Run the conversation HTTP service."""
    import uvicorn

    from gunrock.service.app import create_app
    from gunrock.service.config import EngineConfig
    from gunrock.service.engine import ConversationEngine

    if port is None:
        port = int(os.environ.get(ENV_PORT, "8080"))
    cfg = EngineConfig.from_env(
        log_path=Path(log_path), seed=seed,
        **({"config_dir": Path(config_dir)} if config_dir else {}),
    )
    engine = ConversationEngine(cfg)
    uvicorn.run(create_app(engine), host=host, port=port)


@main.command()
@click.option("--log", "log_path", required=True, type=click.Path(exists=True))
@click.option("--min-turns", default=3, show_default=True,
              help="Minimum user turns for a conversation to qualify.")
@click.option("--out", "out_dir", default="analysis_out", show_default=True)
@click.option("--format", "formats", multiple=True,
              type=click.Choice(["json", "table", "csv"]),
              help="Output formats (default: all three).")
def analyze(log_path, min_turns, out_dir, formats):
    """Run the engagement analyses over a conversation log."""
    from gunrock.analytics.metrics import load_logs
    from gunrock.analytics.report import run_paper_analyses, write_report

    rows = load_logs(log_path, min_user_turns=min_turns)
    if not rows:
        click.echo("no qualifying conversations", err=True)
        sys.exit(1)
    report = run_paper_analyses(rows)
    chosen = tuple(formats) if formats else ("json", "table", "csv")
    out = write_report(report, out_dir, chosen)
    if "table" in chosen:
        click.echo((Path(out) / "report.txt").read_text(encoding="utf-8"))
    click.echo(f"report written to {out}")


@main.command()
@click.option("--out", "out_path", default="synth.jsonl", show_default=True)
@click.option("--n", default=2000, show_default=True)
@click.option("--seed", default=20190305, show_default=True)
def synth(out_path, n, seed):
    """Generate the seeded synthetic conversation corpus."""
    from gunrock.analytics.synth import generate_corpus

    corpus = generate_corpus(out_path, n=n, seed=seed)
    click.echo(
        f"wrote {corpus.n} conversations to {corpus.path} "
        f"(seed {corpus.seed}, planted {corpus.planted})"
    )


if __name__ == "__main__":
    main()
