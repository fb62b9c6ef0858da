"""Live computation of the published tables, one row per job."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from ..gcw import BorelComplex, borel_filtered_cohomology, mod_p_filtration_dimensions
from ..groupalg import FinGroup, GModule, cyclic_group, dihedral_group, sign_homomorphisms, trivial_group, twist_module
from ..groupcoh import group_cohomology
from ..intlin import AbelianPresentation, format_group
from ..wallpaper import ACTION_ROWS, coefficient_module, entry, phi_names, row_representative, torus_gcw
from .cache import Cache

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5", "point-table", "point-table-twisted")

_FILTRATION_COLUMNS = ("H3", "F2", "F3", "Einf^{1,2}", "Einf^{2,1}")
_DEGREE_COLUMNS = ("H0", "H1", "H2", "H3")

COLUMNS = {
    "fig1": _FILTRATION_COLUMNS,
    "fig2": _DEGREE_COLUMNS,
    "fig3": ("H1(Z2)", "F1", "H1/F1"),
    "fig4": _FILTRATION_COLUMNS,
    "fig5": _DEGREE_COLUMNS,
    "point-table": _DEGREE_COLUMNS,
    "point-table-twisted": _DEGREE_COLUMNS,
}

# point groups of the catalog together with the extra families
POINT_GROUPS = ("1", "Z_2", "Z_3", "Z_4", "Z_6", "D_1", "D_2", "D_3", "D_4", "D_6")


@dataclass(frozen=True)
class Row:
    label: str
    point_group: str
    coefficient: str
    extra: tuple[tuple[str, str], ...]
    values: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "row": self.label,
            "point_group": self.point_group,
            "coefficient": self.coefficient,
            "extra": dict(self.extra),
            "values": list(self.values),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Row":
        return cls(data["row"], data["point_group"], data["coefficient"],
                   tuple(sorted(data.get("extra", {}).items())), tuple(data["values"]))


@dataclass(frozen=True)
class Table:
    figure: str
    columns: tuple[str, ...]
    rows: tuple[Row, ...]

    def to_json(self) -> dict:
        return {"figure": self.figure, "columns": list(self.columns), "rows": [r.to_json() for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "Table":
        return cls(data["figure"], tuple(data["columns"]), tuple(Row.from_json(r) for r in data["rows"]))

    def to_markdown(self) -> str:
        extra_keys = [k for k, _ in self.rows[0].extra] if self.rows else []
        head = ["row", "P", "coefficient", *extra_keys, *self.columns]
        lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
        for r in self.rows:
            cells = [r.label, r.point_group, r.coefficient, *[v for _, v in r.extra], *r.values]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines)


# ------------------------------------------------------------------ row keys
def row_keys(figure: str) -> list[tuple[str, str]]:
    if figure in ("fig1", "fig2", "fig3"):
        return [(row, "trivial") for row in ACTION_ROWS]
    if figure in ("fig4", "fig5"):
        return [(row, phi) for row in ACTION_ROWS for phi in phi_names(row_representative(row))]
    if figure == "point-table":
        return [(g, "trivial") for g in POINT_GROUPS]
    if figure == "point-table-twisted":
        out = []
        for g in POINT_GROUPS:
            if g == "1":
                continue
            for phi in sorted(sign_homomorphisms(point_group_by_name(g))):
                out.append((g, phi))
        return out
    raise KeyError(f"unknown figure {figure!r}; expected one of {', '.join(FIGURES)}")


def point_group_by_name(name: str) -> FinGroup:
    if name == "1":
        return trivial_group()
    kind, n = name.split("_")
    return cyclic_group(int(n)) if kind == "Z" else dihedral_group(int(n))


def display_group(G: FinGroup) -> str:
    if G.order == 1:
        return "1"
    return f"{G.name[0]}_{G.name[1:]}"


# ------------------------------------------------------------- computation
def _torus_cell(cache: Cache | None, kind: str, row: str, coeff: str, n: int,
                compute: Callable[[], dict]) -> dict:
    name = row_representative(row)
    if cache is None:
        return compute()
    X = torus_gcw(name)
    M = coefficient_module(name, coeff)
    key = cache.key(kind, X.group.name, Cache.complex_hash(X), Cache.module_hash(M), n)
    return cache.get_or_compute(key, compute)


def _filtration_values(row: str, coeff: str, cache: Cache | None) -> list[str]:
    name = row_representative(row)

    def compute() -> dict:
        X = torus_gcw(name)
        fc = borel_filtered_cohomology(X, coefficient_module(name, coeff), 3)
        return {
            "H3": fc.total.to_json(),
            "F2": fc.filtration[2].iso_type.to_json(),
            "F3": fc.filtration[3].iso_type.to_json(),
            "E12": fc.graded(1).to_json(),
            "E21": fc.graded(2).to_json(),
        }

    data = _torus_cell(cache, "filtration", row, coeff, 3, compute)
    return [str(AbelianPresentation.from_json(data[k])) for k in ("H3", "F2", "F3", "E12", "E21")]


def _degree_values(row: str, coeff: str, cache: Cache | None) -> list[str]:
    name = row_representative(row)
    out = []
    for n in range(4):
        def compute(n=n) -> dict:
            B = BorelComplex(torus_gcw(name), coefficient_module(name, coeff))
            return B.cohomology(n).to_json()

        out.append(str(AbelianPresentation.from_json(_torus_cell(cache, "total", row, coeff, n, compute))))
    return out


def _mod2_values(row: str, cache: Cache | None) -> list[str]:
    name = row_representative(row)

    def compute() -> dict:
        X = torus_gcw(name)
        return {"dims": mod_p_filtration_dimensions(X, GModule.trivial(X.group), 1, 2)}

    dims = _torus_cell(cache, "mod2-filtration", row, "trivial", 1, compute)["dims"]
    return [format_group(0, [2] * d) for d in (dims[0], dims[1], dims[0] - dims[1])]


def _point_values(group: str, coeff: str, cache: Cache | None) -> list[str]:
    G = point_group_by_name(group)
    M = GModule.trivial(G)
    if coeff != "trivial":
        M = twist_module(M, sign_homomorphisms(G)[coeff])
    out = []
    for n in range(4):
        def compute(n=n) -> dict:
            return group_cohomology(G, M, n).to_json()

        if cache is None:
            data = compute()
        else:
            data = cache.get_or_compute(cache.key("point", G.name, "pt", Cache.module_hash(M), n), compute)
        out.append(str(AbelianPresentation.from_json(data)))
    return out


def compute_row(figure: str, key: tuple[str, str], cache_dir: str | None = None) -> Row:
    """One table row, computed from scratch (or from the presentation cache)."""
    label, coeff = key
    cache = Cache(cache_dir) if cache_dir else None
    if figure.startswith("point"):
        G = point_group_by_name(label)
        return Row(label, display_group(G), coeff, (), tuple(_point_values(label, coeff, cache)))
    e = entry(row_representative(label))
    extra = (("ori", "-" if e.orientation_reversing() else "+"),)
    if figure in ("fig1", "fig4"):
        values = _filtration_values(label, coeff, cache)
    elif figure in ("fig2", "fig5"):
        values = _degree_values(label, coeff, cache)
    elif figure == "fig3":
        values = _mod2_values(label, cache)
    else:
        raise KeyError(figure)
    return Row(label, display_group(e.point_group), coeff, extra, tuple(values))


def _job(args: tuple[str, tuple[str, str], str | None]) -> Row:
    return compute_row(*args)


def compute_table(figure: str, jobs: int | None = None, cache_dir: str | None = None,
                  labels: Sequence[str] | None = None) -> Table:
    """Rows of a figure (all, or those with the given labels).

    Rows are computed in a process pool but returned in table order.
    """
    keys = row_keys(figure)
    if labels:
        unknown = set(labels) - {k[0] for k in keys}
        if unknown:
            raise KeyError(f"no rows labelled {', '.join(sorted(unknown))} in {figure}")
        keys = [k for k in keys if k[0] in labels]
    work = [(figure, k, cache_dir) for k in keys]
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(work) <= 1:
        rows = [_job(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_job, work))
    return Table(figure, COLUMNS[figure], tuple(rows))
