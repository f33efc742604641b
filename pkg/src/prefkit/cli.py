"""Command-line client: all logic lives in the library, the CLI only wires IO.

Exit codes: 0 on success, 1 on any input problem (bad files, bad flags,
inconsistent data), 2 when an internal invariant trips.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__
from .analysis import analyze, render_report_json, render_report_text
from .datasets import table1_path
from .errors import NotComplete, NotTransitive, PrefkitError
from .formats import parse_judgments, sniff_format
from .model import ConflictPolicy, Mode, build_relation
from .representation import derive_scores, scale_scores
from .scheduler import Strategy
from .simulate import simulate

_MODES = click.Choice([m.value for m in Mode])
_STRATEGIES = click.Choice([s.value for s in Strategy])


def read_blocks(path: Path) -> list[list[str]]:
    """Triple-block file: JSON array of 3-item arrays, or text lines ``a,b,c``."""
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        blocks = json.loads(text)
        if not isinstance(blocks, list):
            raise click.UsageError(f"{path}: expected a JSON array of triples")
        return [list(block) for block in blocks]
    blocks = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        blocks.append([cell.strip() for cell in line.split(",")])
    return blocks


def _load_dataset(path: Path):
    return parse_judgments(path.read_bytes(), sniff_format(str(path)))


def _emit(data: bytes, output: Path | None) -> None:
    if output is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        output.write_bytes(data)


@click.group()
@click.version_option(__version__)
def cli() -> None:
    """Consistency checking, scoring, and adaptive collection of pairwise preferences."""


@cli.command("analyze")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--mode", type=_MODES, default="weak", show_default=True)
@click.option("--blocks", "blocks_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), default=None,
              help="Restrict triples to designated blocks (JSON triples or a,b,c lines).")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the report here instead of stdout.")
@click.option("--format", "report_format", type=click.Choice(["json", "table"]), default="json", show_default=True)
@click.option("--conflicts", type=click.Choice([p.value for p in ConflictPolicy]), default="error", show_default=True)
def analyze_command(input_path: Path, mode: str, blocks_path: Path | None, output: Path | None,
                    report_format: str, conflicts: str) -> None:
    """Per-annotator consistency report (and scores where derivable)."""
    dataset = _load_dataset(input_path)
    blocks = read_blocks(blocks_path) if blocks_path else None
    report = analyze(dataset, mode=Mode(mode), conflict_policy=ConflictPolicy(conflicts), blocks=blocks)
    rendered = render_report_json(report) if report_format == "json" else render_report_text(report)
    _emit(rendered, output)


@cli.command("scores")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--annotator", required=True)
@click.option("--criterion", required=True)
@click.option("--scale", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
def scores_command(input_path: Path, annotator: str, criterion: str, scale: int, output: Path | None) -> None:
    """Absolute scores for one annotator's relation (requires consistency)."""
    dataset = _load_dataset(input_path)
    relation = build_relation(dataset.judgments, annotator, criterion)
    try:
        table = derive_scores(relation, dataset.items)
    except (NotComplete, NotTransitive) as exc:
        raise click.ClickException(f"cannot score {annotator}/{criterion}: {exc}") from exc
    if scale > 1:
        table = scale_scores(table, scale)
    payload = {
        "annotator": annotator,
        "criterion": criterion,
        "scale": table.scale,
        "scores": dict(sorted(table.scores.items())),
    }
    _emit((json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8"), output)


@cli.command("simulate")
@click.option("--items", "n_items", type=click.IntRange(min=2), default=None,
              help="Number of synthetic items s1..sN (required without --ground-truth).")
@click.option("--strategy", type=_STRATEGIES, default="random", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--mode", type=_MODES, default="weak", show_default=True)
@click.option("--ground-truth", "truth_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), default=None,
              help="item->score table (JSON object or CSV item,score lines); defines the items.")
def simulate_command(n_items: int | None, strategy: str, seed: int, mode: str, truth_path: Path | None) -> None:
    """Run a simulated annotator through an adaptive session, report savings."""
    scores = None
    items = None
    if truth_path is not None:
        scores = _read_ground_truth(truth_path)
        items = list(scores)
        if n_items is not None and n_items != len(items):
            raise click.UsageError(f"--items {n_items} contradicts the {len(items)}-item ground truth")
    elif n_items is None:
        raise click.UsageError("--items is required without --ground-truth")

    result = simulate(
        n_items=n_items or (len(items) if items else 0),
        strategy=Strategy(strategy),
        seed=seed,
        mode=Mode(mode),
        scores=scores,
        items=items,
    )
    stats = result.stats
    payload = {
        "mode": mode,
        "strategy": strategy,
        "seed": seed,
        "n_items": stats.n_items,
        "pairs_total": stats.pairs_total,
        "pairs_asked": stats.pairs_asked,
        "pairs_inferred": stats.pairs_inferred,
        "savings_ratio": stats.savings_ratio,
        "matches_ground_truth": result.matches_ground_truth,
    }
    _emit((json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8"), None)


def _read_ground_truth(path: Path) -> dict[str, int]:
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        raw = json.loads(text)
        if not isinstance(raw, dict):
            raise click.UsageError(f"{path}: expected a JSON object item -> score")
        return {str(item): int(score) for item, score in raw.items()}
    scores = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#") or line.lower().replace(" ", "") == "item,score":
            continue
        item, _, score = line.partition(",")
        try:
            scores[item.strip()] = int(score.strip())
        except ValueError:
            raise click.UsageError(f"{path}: bad score line {line!r}") from None
    return scores


@cli.command("serve")
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--static", "static_dir", type=click.Path(exists=True, file_okay=False, path_type=Path), default=None,
              help="Serve a built UI from this directory at /.")
@click.option("--journal", "journal_dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Persist session transcripts here and replay them on startup.")
def serve_command(port: int, host: str, static_dir: Path | None, journal_dir: Path | None) -> None:
    """Start the HTTP service (and optionally the bundled UI)."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(journal_dir=journal_dir, static_dir=static_dir), host=host, port=port)


@cli.command("fixture")
@click.argument("name", type=click.Choice(["table1"]))
def fixture_command(name: str) -> None:
    """Print the path of a bundled demo dataset."""
    click.echo(str(table1_path()))


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except PrefkitError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except AssertionError as exc:
        click.echo(f"internal invariant failure: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
