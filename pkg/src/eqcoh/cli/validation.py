"""Catalog-wide consistency checks run by ``eqcoh validate``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..gcw import GCWError
from ..groupcoh import bar_resolution
from ..spacegroup import VectorSystem, nu, nu_class, tau
from ..wallpaper import NAMES, NONSYMMORPHIC, entry, lattice_action_matrices, torus_gcw


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _run(name: str, fn: Callable[[], str | None]) -> Check:
    try:
        detail = fn()
    except (GCWError, ValueError, ArithmeticError) as exc:
        return Check(name, False, str(exc))
    return Check(name, True, detail or "")


def _torus(name: str) -> str:
    X = torus_gcw(name)
    X.validate_torus()
    return f"orbits {X.orbit_counts()}"


def _resolution(name: str) -> None:
    G = entry(name).point_group
    res = bar_resolution(G, 4)
    for n in range(2, 5):
        if not (res.boundary(n - 1) @ res.boundary(n)).is_zero():
            raise ValueError(f"bar boundary squared is nonzero in degree {n}")


def _module(name: str) -> None:
    lattice_action_matrices(name).validate()


def _cocycle(name: str) -> str:
    c = nu(VectorSystem.of(name))
    bad = c.left_defect()
    if bad is not None:
        raise ValueError(f"nu violates the cocycle law at {bad[0]}")
    if c.group.order > 1 and not c.as_right_cocycle().is_cocycle():
        raise ValueError("right-module form of nu is not a cocycle")
    if tau(c).dual_defect() is not None:
        raise ValueError("tau violates the dual cocycle law")
    coords = nu_class(name)
    nonzero = any(coords)
    if nonzero != (name in NONSYMMORPHIC):
        raise ValueError(f"class of nu is {'nonzero' if nonzero else 'zero'}")
    return "class nonzero" if nonzero else "class zero"


def run_validation() -> list[Check]:
    checks = []
    for name in NAMES:
        checks.append(_run(f"{name} lattice action", lambda n=name: _module(n)))
        checks.append(_run(f"{name} bar resolution", lambda n=name: _resolution(n)))
        checks.append(_run(f"{name} torus complex", lambda n=name: _torus(n)))
        checks.append(_run(f"{name} translation cocycle", lambda n=name: _cocycle(n)))
    return checks
