"""Command-line entry point."""

from __future__ import annotations

import json
import sys

import click

from ..gcw import borel_filtered_cohomology
from ..serre import e2_page
from ..wallpaper import ACTION_ROWS, NAMES, catalog_json, coefficient_module, phi_names, row_representative, torus_gcw
from .golden import compare
from .tables import FIGURES, compute_table

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_VALIDATION = 3


def _resolve_group(name: str) -> str:
    if name in NAMES:
        return name
    if name in ACTION_ROWS:
        return row_representative(name)
    raise click.UsageError(f"unknown group {name!r}; expected one of {', '.join(NAMES)}")


@click.group()
@click.option("--cache", "cache_dir", type=click.Path(file_okay=False), default=None,
              help="Directory for persisted presentations.")
@click.option("--jobs", type=int, default=None, help="Worker processes for table cells.")
@click.pass_context
def cli(ctx: click.Context, cache_dir: str | None, jobs: int | None) -> None:
    """Borel equivariant cohomology of the torus under wallpaper point groups."""
    ctx.obj = {"cache": cache_dir, "jobs": jobs}


@cli.command()
@click.argument("figure", type=click.Choice(FIGURES))
@click.option("--format", "fmt", type=click.Choice(["md", "json"]), default="md")
@click.option("--check", is_flag=True, help="Diff against the reference table; exit 1 on mismatch.")
@click.option("--row", "rows", multiple=True, help="Restrict to rows with this label (repeatable).")
@click.pass_context
def table(ctx: click.Context, figure: str, fmt: str, check: bool, rows: tuple[str, ...]) -> None:
    """Compute a table live and render it."""
    try:
        result = compute_table(figure, ctx.obj["jobs"], ctx.obj["cache"], labels=rows or None)
    except KeyError as exc:
        raise click.UsageError(exc.args[0]) from None
    if fmt == "json":
        click.echo(json.dumps(result.to_json(), indent=1, ensure_ascii=False))
    else:
        click.echo(result.to_markdown())
    if check:
        bad = compare(result, partial=bool(rows))
        for m in bad:
            click.echo(f"MISMATCH {m}", err=True)
        click.echo(f"check {figure}: {'ok' if not bad else f'{len(bad)} mismatches'}", err=True)
        if bad:
            sys.exit(EXIT_MISMATCH)


@cli.command()
@click.option("--group", "group", required=True, help="Plane group name such as p4g or cmm.")
@click.option("--coeff", type=click.Choice(["trivial", "phi0", "phi1", "phi2"]), default="trivial")
@click.option("--degree", type=click.IntRange(0, 6), required=True)
@click.option("--show-filtration", is_flag=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def compute(group: str, coeff: str, degree: int, show_filtration: bool, fmt: str) -> None:
    """One equivariant cohomology group, with its filtration and page entries."""
    name = _resolve_group(group)
    if coeff != "trivial" and coeff not in phi_names(name):
        avail = ", ".join(phi_names(name)) or "none"
        raise click.UsageError(f"{coeff} is not defined for {name} (available: {avail})")
    X = torus_gcw(name)
    M = coefficient_module(name, coeff)
    fc = borel_filtered_cohomology(X, M, degree)
    report: dict = {"group": name, "coefficient": coeff, "degree": degree, "total": str(fc.total)}
    if show_filtration:
        report["filtration"] = [str(F.iso_type) for F in fc.filtration]
        e2 = e2_page(X, M, max_total=degree)
        report["E2"] = {f"{p},{q}": str(e2[(p, q)]) for p, q in e2.total_degree(degree)}
        report["Einf"] = {f"{p},{degree - p}": str(fc.graded(p))
                          for p in range(degree + 1) if degree - p <= 2}
    if fmt == "json":
        click.echo(json.dumps(report, indent=1, ensure_ascii=False))
        return
    click.echo(f"H^{degree}_P(T^2; {coeff}) for {name} = {report['total']}")
    if show_filtration:
        chain = (f"F^{p} {g}" for p, g in enumerate(report["filtration"]))
        click.echo("filtration: " + " ⊇ ".join(chain))
        for page in ("E2", "Einf"):
            cells = ", ".join(f"[{k}] {v}" for k, v in report[page].items())
            click.echo(f"{page}: {cells}")


@cli.command()
def validate() -> None:
    """Run the catalog consistency checks; exit 3 if any fails."""
    from .validation import run_validation

    checks = run_validation()
    for c in checks:
        click.echo(c.line())
    failed = sum(not c.ok for c in checks)
    click.echo(f"{len(checks) - failed}/{len(checks)} checks passed")
    if failed:
        sys.exit(EXIT_VALIDATION)


@cli.command("twist-class")
@click.argument("name")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def twist_class_cmd(name: str, fmt: str) -> None:
    """Class of the translation cocycle in H^2(P; lattice)."""
    from ..spacegroup import twist_class

    report = twist_class(_resolve_group(name))
    if fmt == "json":
        click.echo(json.dumps(report.to_json(), indent=1, ensure_ascii=False))
        return
    click.echo(f"{report.name}: H^2 = {report.cohomology}, class {'nonzero' if report.nonzero else 'zero'}")
    click.echo(f"coordinates: {report.coordinates}")
    refl = report.reflection_coordinates
    for k, v in refl.items():
        click.echo(f"restriction to {k}: {v}")
    if refl:
        flat = tuple(x for v in refl.values() for x in v)
        click.echo(f"reflection coordinates: {flat}")


@cli.command("catalog")
def catalog_cmd() -> None:
    """Export the plane group catalog as JSON."""
    click.echo(json.dumps(catalog_json(), indent=1, ensure_ascii=False))


def main() -> None:
    cli(prog_name="eqcoh")


if __name__ == "__main__":
    main()
