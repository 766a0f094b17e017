"""
Backend construction from command-line specs.

    rational                 Q
    grassmann:<m>            E_m
    relfree:<m>,<k>,<d>      truncated relatively free L_k algebra
    utri:<t>:<backend>       t x t upper triangular matrices over a backend
    json:<path>              structure constants exported by StructureAlgebra.to_json
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from rings.errors import ConfigError
from rings.findim import MAX_DENSE_GRASSMANN, StructureAlgebra, from_grassmann, scalars, upper_triangular
from rings.grassmann import GrassmannBackend
from rings.relfree import build
from rings.ringcore import RationalRing, RingBackend

logger = logging.getLogger(__name__)


@dataclass
class BackendInfo:
    """
    A parsed backend spec.

    lie_index is the k of property L_k when the construction guarantees it;
    t is the U_t size for upper triangular backends.
    """
    spec: str
    backend: RingBackend
    lie_index: Optional[int] = None
    t: Optional[int] = None

    def findim(self) -> StructureAlgebra:
        """Structure-constant view of the backend, for the ideal and quotient checks."""
        return findim_view(self.backend)


def _ints(text: str, count: int, spec: str):
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise ConfigError(f"bad backend spec {spec!r}: expected integers") from None
    if len(values) != count:
        raise ConfigError(f"bad backend spec {spec!r}: expected {count} integers")
    return values


def parse_backend(spec: str) -> BackendInfo:
    """
    Build the backend a spec names.

    Raises:
        ConfigError: for an unknown or malformed spec
    """
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    if kind == "rational" and not rest:
        return BackendInfo(spec, RationalRing(), lie_index=1)
    if kind == "grassmann":
        (m,) = _ints(rest, 1, spec)
        return BackendInfo(spec, GrassmannBackend(m), lie_index=2)
    if kind == "relfree":
        m, k, d = _ints(rest, 3, spec)
        return BackendInfo(spec, build(m, k, d).algebra, lie_index=k)
    if kind == "utri":
        size, _, inner = rest.partition(":")
        (t,) = _ints(size, 1, spec)
        if not inner:
            raise ConfigError(f"bad backend spec {spec!r}: expected utri:<t>:<backend>")
        base = parse_backend(inner)
        return BackendInfo(spec, upper_triangular(base.findim(), t), t=t)
    if kind == "json" and rest:
        try:
            data = json.loads(Path(rest).read_text(encoding="utf-8"))
            algebra = StructureAlgebra.from_json(data)
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"cannot load backend {rest!r}: {exc}") from exc
        return BackendInfo(spec, algebra)
    raise ConfigError(f"unknown backend spec {spec!r}")


def findim_view(backend: RingBackend) -> StructureAlgebra:
    """
    Raises:
        ConfigError: if the backend has no dense structure-constant form
    """
    if isinstance(backend, StructureAlgebra):
        return backend
    if isinstance(backend, RationalRing):
        return scalars()
    if isinstance(backend, GrassmannBackend):
        if backend.m > MAX_DENSE_GRASSMANN:
            raise ConfigError(f"E_{backend.m} is too large for structure constants (m <= {MAX_DENSE_GRASSMANN})")
        return from_grassmann(backend.m)
    raise ConfigError(f"{backend.describe()} has no structure-constant form")
