"""The four engagement analyses over extracted conversation metrics.

(a) rating ~ mean word count          (b) user turns ~ mean word count
(c) log rating ~ log backstory count, for users with >= 1 backstory query
(d) rating ~ has-pet (yes=1 / no=0)

Rows without a rating are excluded wherever rating is modeled, with the
exclusion count disclosed. Turns are used untransformed.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from statistics import mean, median

from gunrock.analytics.metrics import ConversationMetrics
from gunrock.analytics.ols import RegressionResult, ols_fit
from gunrock.errors import DegenerateDesignError, InsufficientDataError

ANALYSES = ("rating_by_words", "turns_by_words", "log_rating_by_log_backstory", "rating_by_has_pet")


@dataclass
class AnalysisOutcome:
    name: str
    result: RegressionResult | None = None
    skipped_reason: str | None = None
    n_excluded_missing_rating: int = 0
    points: list[tuple[float, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"analysis": self.name, "n_excluded_missing_rating": self.n_excluded_missing_rating}
        if self.result is not None:
            out.update(asdict(self.result))
        if self.skipped_reason:
            out["skipped"] = self.skipped_reason
        return out


@dataclass
class SummaryStats:
    conversations: int
    rated_conversations: int
    mean_rating: float | None
    median_rating: float | None
    mean_turns: float
    median_turns: float
    mean_words: float
    mean_duration_min: float
    median_duration_min: float

    def to_dict(self) -> dict:
        return asdict(self)


def summary_stats(metrics: list[ConversationMetrics]) -> SummaryStats:
    if not metrics:
        raise InsufficientDataError("no conversations to summarize")
    ratings = [m.rating for m in metrics if m.rating is not None]
    return SummaryStats(
        conversations=len(metrics),
        rated_conversations=len(ratings),
        mean_rating=mean(ratings) if ratings else None,
        median_rating=median(ratings) if ratings else None,
        mean_turns=mean(m.user_turns for m in metrics),
        median_turns=median(m.user_turns for m in metrics),
        mean_words=mean(m.mean_word_count for m in metrics),
        mean_duration_min=mean(m.duration_min for m in metrics),
        median_duration_min=median(m.duration_min for m in metrics),
    )


def _fit(name: str, points: list[tuple[float, float]], excluded: int) -> AnalysisOutcome:
    outcome = AnalysisOutcome(name=name, points=points, n_excluded_missing_rating=excluded)
    if len(points) < 3:
        outcome.skipped_reason = f"only {len(points)} usable rows (need 3)"
        return outcome
    try:
        outcome.result = ols_fit([p[0] for p in points], [p[1] for p in points])
    except (DegenerateDesignError, InsufficientDataError) as exc:
        outcome.skipped_reason = str(exc)
    return outcome


def run_paper_analyses(metrics: list[ConversationMetrics]) -> dict:
    """All four regressions plus summary statistics, as a report dict."""
    if not metrics:
        raise InsufficientDataError("no conversations qualified")
    rated = [m for m in metrics if m.rating is not None]
    missing = len(metrics) - len(rated)

    a = _fit(
        "rating_by_words",
        [(m.mean_word_count, float(m.rating)) for m in rated],
        missing,
    )
    b = _fit(
        "turns_by_words",
        [(m.mean_word_count, float(m.user_turns)) for m in metrics],
        0,
    )
    backstory = [m for m in rated if m.backstory_queries >= 1]
    c = _fit(
        "log_rating_by_log_backstory",
        [(math.log(m.backstory_queries), math.log(m.rating)) for m in backstory],
        missing,
    )
    pets = [m for m in rated if m.has_pet in ("yes", "no")]
    d = _fit(
        "rating_by_has_pet",
        [(1.0 if m.has_pet == "yes" else 0.0, float(m.rating)) for m in pets],
        missing,
    )
    return {
        "summary": summary_stats(metrics).to_dict(),
        "analyses": [x.to_dict() for x in (a, b, c, d)],
        "_outcomes": (a, b, c, d),
    }


def _format_table(report: dict) -> str:
    lines = []
    s = report["summary"]
    lines.append("Conversation summary")
    lines.append(f"  conversations: {s['conversations']}  (rated: {s['rated_conversations']})")
    if s["mean_rating"] is not None:
        lines.append(f"  rating: mean {s['mean_rating']:.2f}  median {s['median_rating']:.1f}")
    lines.append(f"  user turns: mean {s['mean_turns']:.2f}  median {s['median_turns']:.1f}")
    lines.append(f"  words/utterance: mean {s['mean_words']:.2f}")
    lines.append(
        f"  duration (min): mean {s['mean_duration_min']:.2f}  median {s['median_duration_min']:.2f}"
    )
    lines.append("")
    header = f"{'analysis':<30}{'n':>7}{'beta':>12}{'SE':>12}{'t':>10}{'p':>12}{'r2':>9}"
    lines.append(header)
    lines.append("-" * len(header))
    for a in report["analyses"]:
        if "skipped" in a:
            lines.append(f"{a['analysis']:<30}  skipped: {a['skipped']}")
            continue
        lines.append(
            f"{a['analysis']:<30}{a['n']:>7}{a['beta']:>12.5f}{a['se']:>12.5f}"
            f"{a['t']:>10.3f}{a['p']:>12.3e}{a['r_squared']:>9.4f}"
        )
    lines.append("")
    lines.append("note: turns regressed untransformed; unrated conversations excluded")
    lines.append("      from rating models (counts disclosed above).")
    return "\n".join(lines)


def write_report(report: dict, out_dir: str | Path, formats: tuple[str, ...] = ("json", "table", "csv")):
    """Emit report.json, report.txt, and per-analysis point CSVs."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    outcomes = report.pop("_outcomes", ())
    if "json" in formats:
        (out / "report.json").write_text(
            json.dumps(report, indent=2, ensure_ascii=False), encoding="utf-8"
        )
    if "table" in formats:
        (out / "report.txt").write_text(_format_table(report) + "\n", encoding="utf-8")
    if "csv" in formats:
        for outcome in outcomes:
            with open(out / f"points_{outcome.name}.csv", "w", newline="", encoding="utf-8") as f:
                writer = csv.writer(f)
                writer.writerow(["x", "y"])
                writer.writerows(outcome.points)
    report["_outcomes"] = outcomes
    return out
