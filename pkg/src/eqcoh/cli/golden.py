"""Reference tables shipped as data, and the diff against computed tables.

Nothing in the computation path imports this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..intlin import AbelianPresentation
from .tables import POINT_GROUPS, Table


def load_raw(figure: str) -> dict:
    text = resources.files(__package__).joinpath("golden", f"{figure}.json").read_text(encoding="utf-8")
    return json.loads(text)


def _family_of(group: str) -> tuple[str, int]:
    if group == "1":
        return "cyclic", 1
    kind, n = group.split("_")
    return ("cyclic" if kind == "Z" else "dihedral"), int(n)


def _matches_parity(parity: str, n: int) -> bool:
    return parity == "any" or (parity == "even") == (n % 2 == 0)


def expected(figure: str) -> dict[tuple[str, str], tuple[str, ...]]:
    """Reference values keyed by (row label, coefficient).

    Lines listing several coefficients are expanded to one key each, and
    point-table families are instantiated for every tabulated point group.
    """
    raw = load_raw(figure)
    out: dict[tuple[str, str], tuple[str, ...]] = {}
    if "families" in raw:
        for group in POINT_GROUPS:
            kind, n = _family_of(group)
            for fam in raw["families"]:
                if fam["family"] != kind or not _matches_parity(fam["parity"], n):
                    continue
                values = tuple(v.replace("Z_n", f"Z_{n}") for v in fam["values"])
                for c in fam["coefficients"]:
                    out[(group, c)] = values
        return out
    for line in raw["rows"]:
        for c in line["coefficients"]:
            out[(line["row"], c)] = tuple(line["values"])
    return out


@dataclass(frozen=True)
class Mismatch:
    row: str
    coefficient: str
    column: str
    computed: str
    reference: str

    def __str__(self) -> str:
        return f"{self.row} [{self.coefficient}] {self.column}: computed {self.computed}, reference {self.reference}"


def compare(table: Table, partial: bool = False) -> list[Mismatch]:
    """Cells whose isomorphism type differs from the reference, plus missing rows.

    With ``partial`` only the rows present in ``table`` are checked.
    """
    ref = expected(table.figure)
    bad: list[Mismatch] = []
    seen = set()
    for row in table.rows:
        key = (row.label, row.coefficient)
        seen.add(key)
        want = ref.get(key)
        if want is None:
            bad.append(Mismatch(row.label, row.coefficient, "*", "present", "absent"))
            continue
        for col, got, exp in zip(table.columns, row.values, want):
            if AbelianPresentation.parse(got) != AbelianPresentation.parse(exp):
                bad.append(Mismatch(row.label, row.coefficient, col, got, exp))
    for key in ref:
        if not partial and key not in seen:
            bad.append(Mismatch(key[0], key[1], "*", "absent", "present"))
    return bad
