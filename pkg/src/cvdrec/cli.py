"""Command-line driver.

Subcommands: assess, recommend, validate-catalog, simulate, survey-score,
serve. JSON output is byte-identical to the corresponding service response
body (both go through the shared serializer).

Exit codes: 0 success, 1 usage error, 2 validation/content error,
3 internal error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__
from .catalog import CatalogError, load_catalog
from .explain import LlmConfig
from .intake import ParseError, parse_questionnaire, validate
from .recommend import build_profile, generate
from .risk import CalibrationError, load_calibration
from .serialize import dump_json, profile_payload, recommendation_payload, render_text
from .verification import SurveyMatrix, cronbach_alpha, dus, run_simulation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_INTERNAL = 3


class ValidationFailure(click.ClickException):
    """Input failed parsing or content validation (exit code 2)."""

    exit_code = EXIT_VALIDATION


def _read_json(source: str) -> dict:
    """Read a JSON document from a path or '-' for stdin."""
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text("utf-8")
    except OSError as err:
        raise ValidationFailure(f"cannot read {source}: {err}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ValidationFailure(f"{source}: not valid JSON ({err})") from None


def _load_inputs(catalog_path: str | None, calibration_path: str | None,
                 region: str | None):
    try:
        catalog = load_catalog(catalog_path)
        calibration = load_calibration(calibration_path, region=region)
    except (CatalogError, CalibrationError, OSError) as err:
        raise ValidationFailure(str(err)) from None
    return catalog, calibration


def _parse_record(doc: dict):
    try:
        ind = parse_questionnaire(doc)
    except ParseError as err:
        raise ValidationFailure(str(err)) from None
    report = validate(ind)
    if not report.ok:
        messages = "; ".join(f"{e.field}: {e.message}" for e in report.errors)
        raise ValidationFailure(messages)
    return ind, report.warning_messages()


shared_options = [
    click.option("--catalog", "catalog_path", type=click.Path(), default=None,
                 help="Catalog JSON path (default: packaged catalog)."),
    click.option("--calibration", "calibration_path", type=click.Path(), default=None,
                 help="Calibration JSON path (default: packaged file)."),
    click.option("--region", default=None,
                 type=click.Choice(["low", "moderate", "high", "very_high"]),
                 help="Risk-region override."),
]


def _with_shared_options(command):
    for option in reversed(shared_options):
        command = option(command)
    return command


@click.group()
@click.version_option(version=__version__, prog_name="cvdrec")
def main():
    """Cardiovascular prevention recommendations from a 17-item questionnaire."""


@main.command()
@click.option("--in", "source", default="-", show_default=True,
              help="Questionnaire JSON file, or - for stdin.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="json", show_default=True)
@_with_shared_options
def assess(source, fmt, catalog_path, calibration_path, region):
    """Derive factors, classes and the risk category for one record."""
    _, calibration = _load_inputs(catalog_path, calibration_path, region)
    ind, warnings = _parse_record(_read_json(source))
    profile = build_profile(ind, calibration)
    payload = profile_payload(profile, warnings)
    if fmt == "json":
        click.echo(dump_json(payload))
    else:
        lines = [
            f"factors:  {payload['factor']}",
            f"classes:  {payload['class']}",
            f"BMI:      {payload['bmi']}",
            f"risk:     {payload['cvrisk']}% (category: {payload['category']})"
            if payload["cvrisk"] is not None else
            f"risk:     {payload['category']}"
            + (f" ({payload['risk_note']})" if payload["risk_note"] else ""),
        ]
        lines += [f"warning:  {w}" for w in warnings]
        click.echo("\n".join(lines))


@main.command()
@click.option("--in", "source", default="-", show_default=True,
              help="Questionnaire JSON file, or - for stdin.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="json", show_default=True)
@click.option("--explain", type=click.Choice(["fallback", "llm"]),
              default="fallback", show_default=True,
              help="Explanation source; llm needs CVDREC_LLM_ENDPOINT.")
@_with_shared_options
def recommend(source, fmt, explain, catalog_path, calibration_path, region):
    """Produce the full four-dimension recommendation for one record."""
    catalog, calibration = _load_inputs(catalog_path, calibration_path, region)
    ind, warnings = _parse_record(_read_json(source))
    llm = LlmConfig.from_env() if explain == "llm" else None
    rec = generate(ind, catalog, calibration, llm=llm)
    if fmt == "json":
        click.echo(dump_json({
            "recommendation": recommendation_payload(rec),
            "warnings": warnings,
        }))
    else:
        for warning in warnings:
            click.echo(f"warning: {warning}", err=True)
        click.echo(render_text(rec))


@main.command("validate-catalog")
@click.option("--catalog", "catalog_path", type=click.Path(), default=None,
              help="Catalog JSON path (default: packaged catalog).")
def validate_catalog(catalog_path):
    """Check a catalog for completeness; nonzero exit when it has gaps."""
    try:
        catalog = load_catalog(catalog_path)
    except (CatalogError, OSError) as err:
        raise ValidationFailure(str(err)) from None
    click.echo(dump_json({
        "version": catalog.version,
        "language": catalog.language,
        "items": len(catalog.items),
        "status": "ok",
    }))


@main.command()
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--n", "trials", type=int, default=10000, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False), default=None,
              help="Also write report.json, coverage.csv and coverage.png here.")
@_with_shared_options
def simulate(seed, trials, out_dir, catalog_path, calibration_path, region):
    """Run the postcondition suite over a generated indicator stream."""
    catalog, calibration = _load_inputs(catalog_path, calibration_path, region)
    report = run_simulation(seed, trials, catalog, calibration)
    payload = report.to_payload()
    click.echo(dump_json(payload))
    if out_dir is not None:
        from . import report as report_mod
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / "report.json").write_text(
            json.dumps(payload, indent=2, ensure_ascii=False) + "\n", "utf-8")
        report_mod.save_subclass_csv(report.subclass_counts, directory / "coverage.csv")
        report_mod.save_subclass_figure(report.subclass_counts, directory / "coverage.png")
    if not report.all_passed:
        raise ValidationFailure(
            f"{len(report.failures)} postcondition failure(s); "
            f"replay with --seed {seed}")


@main.command("survey-score")
@click.option("--in", "source", required=True,
              help="Survey JSON file: {\"questions\": [{\"label\", \"scores\"|\"mean\"}]}.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=None,
              help="Also write dus.csv and dus.png here.")
def survey_score(source, out_dir):
    """Compute usability scores (and alpha, when raw scores are given)."""
    doc = _read_json(source)
    questions = doc.get("questions")
    if not isinstance(questions, list) or not questions:
        raise ValidationFailure("survey file needs a non-empty 'questions' list")

    labels: list[str] = []
    values: list[float] = []
    score_rows: list[tuple[float, ...]] = []
    all_raw = True
    try:
        for idx, question in enumerate(questions, start=1):
            labels.append(str(question.get("label", f"Q{idx}")))
            if "scores" in question:
                row = tuple(float(s) for s in question["scores"])
                score_rows.append(row)
                values.append(dus(row))
            elif "mean" in question:
                all_raw = False
                mean = float(question["mean"])
                if not (1.0 <= mean <= 5.0):
                    raise ValueError(f"mean {mean} outside the 1-5 scale")
                values.append(mean / 5.0)
            else:
                raise ValueError(f"question {idx}: needs 'scores' or 'mean'")
    except (TypeError, ValueError) as err:
        raise ValidationFailure(str(err)) from None

    payload: dict = {
        "per_question": [{"label": label, "dus": round(value, 4)}
                         for label, value in zip(labels, values)],
        "mean_dus": round(sum(values) / len(values), 4),
    }
    if all_raw and len(score_rows) >= 2:
        try:
            payload["cronbach_alpha"] = round(
                cronbach_alpha(SurveyMatrix(tuple(score_rows), tuple(labels))), 4)
        except ValueError as err:
            payload["cronbach_alpha"] = None
            payload["alpha_note"] = str(err)
    click.echo(dump_json(payload))

    if out_dir is not None:
        from . import report as report_mod
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        report_mod.save_dus_csv(labels, values, directory / "dus.csv")
        report_mod.save_dus_figure(labels, values, directory / "dus.png")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--store", "store_path", type=click.Path(), default=None,
              help="Assessment store path (default ./assessments.jsonl).")
@_with_shared_options
def serve(host, port, store_path, catalog_path, calibration_path, region):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    app = create_app(catalog_path=catalog_path, calibration_path=calibration_path,
                     store_path=store_path, region=region)
    uvicorn.run(app, host=host, port=port)


def entry() -> None:
    """Console-script entry point."""
    sys.exit(run())


def run() -> int:
    """Dispatch with the documented exit-code mapping."""
    try:
        main.main(standalone_mode=False)
    except click.exceptions.Exit as err:
        return err.exit_code
    except click.UsageError as err:
        err.show()
        return EXIT_USAGE
    except ValidationFailure as err:
        err.show()
        return EXIT_VALIDATION
    except click.ClickException as err:
        err.show()
        return err.exit_code
    except click.exceptions.Abort:
        return EXIT_USAGE
    except Exception as err:  # pragma: no cover - defensive
        click.echo(f"internal error: {err}", err=True)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(run())
