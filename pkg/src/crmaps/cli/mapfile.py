"""Map-definition files (TOML) and their conversion into :class:`HoloMap` objects.

Example::

    name = "R_eps"
    mode = "rational"
    components = ["z1", "w*(eps + z1) - i*z1 - 2*i*eps*z1^2", "w*(1 + eps*z1)"]

    [source]
    kind = "hyperquadric"
    n = 1
    ell = 0

    [target]
    kind = "winkelmann"
    n = 1
    ell = 1

    [parameters]
    eps = "1/2"

Scalars are strings such as ``"1/2"`` or ``"1/2 + 3/4*i"`` (or plain
integers); decimals are rejected.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import tomli

from ..algebra.scalars import Scalar, to_scalar
from ..errors import CRMapsError, ExpressionError, StructuralError
from ..expr import evaluate, free_names, parse_expression
from ..hypersurface import Hypersurface, make_hypersurface
from ..maps import HoloMap


class MapFileError(CRMapsError):
    """Malformed map-definition input."""


@dataclass(frozen=True)
class SurfaceSpec:
    kind: str
    n: int
    ell: int | None = None
    epsilon: tuple[int, ...] | None = None

    def build(self) -> Hypersurface:
        return make_hypersurface(self.kind, self.n, self.ell, self.epsilon)


@dataclass(frozen=True)
class MapDefinition:
    name: str
    source: SurfaceSpec
    target: SurfaceSpec
    components: tuple[str, ...]
    mode: str = "rational"
    order: int | None = None
    base_point: tuple[Scalar, ...] | None = None
    parameters: tuple[tuple[str, Scalar], ...] = ()
    expect: tuple[tuple[str, Any], ...] = field(default=())

    def build(self, order: int | None = None) -> HoloMap:
        S, T = self.source.build(), self.target.build()
        params = dict(self.parameters)
        if len(self.components) != T.ambient_dim:
            raise StructuralError(f"{len(self.components)} components given, {T.label()} needs {T.ambient_dim}")
        known = set(S.space.holo) | set(params) | {"i", "z"}
        trees = []
        for k, text in enumerate(self.components):
            tree = parse_expression(text)
            unknown = free_names(tree) - known
            if unknown:
                raise ExpressionError(f"component {k}: unbound names {sorted(unknown)}", 1, 1)
            trees.append(tree)
        if self.mode == "series":
            K = order or self.order
            if K is None:
                raise MapFileError("series mode needs an order")
            comps = [evaluate(t, S.space, mode="series", order=K, params=params) for t in trees]
            return HoloMap.series(S, T, comps, K, name=self.name)
        comps = [evaluate(t, S.space, params=params) for t in trees]
        base = None
        if self.base_point is not None:
            base = S.point(self.base_point)
        return HoloMap.rational(S, T, comps, base=base, name=self.name)


def _surface(d: Mapping, what: str) -> SurfaceSpec:
    if not isinstance(d, Mapping):
        raise MapFileError(f"[{what}] must be a table")
    try:
        kind = str(d["kind"])
        n = int(d["n"])
    except KeyError as e:
        raise MapFileError(f"[{what}] is missing {e.args[0]!r}") from None
    ell = d.get("ell")
    eps = d.get("epsilon")
    return SurfaceSpec(kind, n, int(ell) if ell is not None and eps is None else None,
                       tuple(int(e) for e in eps) if eps is not None else None)


def _scalar(x, what: str) -> Scalar:
    if isinstance(x, bool) or isinstance(x, float):
        raise MapFileError(f"{what}: write exact scalars as strings like \"1/2\"")
    try:
        return to_scalar(x)
    except (TypeError, ValueError) as e:
        raise MapFileError(f"{what}: {e}") from None


def definition_from_dict(d: Mapping, default_name: str = "map") -> MapDefinition:
    for key in ("source", "target", "components"):
        if key not in d:
            raise MapFileError(f"missing key {key!r}")
    mode = str(d.get("mode", "rational"))
    if mode not in ("rational", "series"):
        raise MapFileError(f"unknown mode {mode!r}")
    comps = d["components"]
    if not isinstance(comps, list) or not all(isinstance(c, str) for c in comps):
        raise MapFileError("components must be a list of expression strings")
    params = tuple((str(k), _scalar(v, f"parameter {k}")) for k, v in d.get("parameters", {}).items())
    base = d.get("base_point")
    if base is not None:
        base = tuple(_scalar(x, "base_point") for x in base)
    order = d.get("order")
    return MapDefinition(
        name=str(d.get("name", default_name)),
        source=_surface(d["source"], "source"),
        target=_surface(d["target"], "target"),
        components=tuple(comps),
        mode=mode,
        order=int(order) if order is not None else None,
        base_point=base,
        parameters=params,
        expect=tuple(sorted(d.get("expect", {}).items())),
    )


def load_mapfile(path: str | Path) -> MapDefinition:
    path = Path(path)
    try:
        data = tomli.loads(path.read_text())
    except tomli.TOMLDecodeError as e:
        raise MapFileError(f"{path}: {e}") from None
    return definition_from_dict(data, path.stem)


def load_points(path: str | Path) -> list[dict]:
    """Sample points: ``[[points]]`` tables with ``coords`` (non-``w`` coordinates) and optional ``t``."""
    data = tomli.loads(Path(path).read_text())
    pts = data.get("points", [])
    out = []
    for k, p in enumerate(pts):
        if "coords" not in p:
            raise MapFileError(f"point {k} has no coords")
        out.append({"coords": [_scalar(x, f"point {k}") for x in p["coords"]], "t": _scalar(p.get("t", 0), "t")})
    return out


def bundled_dir() -> Path:
    return Path(__file__).resolve().parent.parent / "data"


def bundled_files() -> list[Path]:
    return sorted(bundled_dir().glob("*.toml"))


__all__ = ["MapDefinition", "MapFileError", "SurfaceSpec", "bundled_dir", "bundled_files", "definition_from_dict",
           "load_mapfile", "load_points"]
