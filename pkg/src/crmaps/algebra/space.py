"""Variable spaces closed under conjugation."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from sympy import symbols
from sympy.polys.domains import QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from ..errors import StructuralError


class SpaceMismatch(StructuralError):
    """Raised when operands live in different variable spaces."""


def conj_name(name: str) -> str:
    return name + "b"


@dataclass(frozen=True)
class VariableSpace:
    """Ordered holomorphic variables, their antiholomorphic partners, and real variables.

    The generators of the underlying polynomial ring are laid out as
    ``holo + [conj(h) for h in holo] + real``; conjugation swaps the first two
    blocks and fixes the real block.  ``weights`` assigns a weighted degree to
    each holomorphic or real variable (partners inherit it); missing entries
    default to 1.
    """

    holo: tuple[str, ...]
    real: tuple[str, ...] = ()
    weights: tuple[tuple[str, int], ...] = field(default=(), compare=True)

    def __post_init__(self):
        names = list(self.holo) + [conj_name(h) for h in self.holo] + list(self.real)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")

    @classmethod
    def make(cls, holo: Sequence[str], real: Sequence[str] = (),
             weights: Mapping[str, int] | None = None) -> "VariableSpace":
        w = tuple(sorted((weights or {}).items()))
        return cls(tuple(holo), tuple(real), w)

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(self.holo) + tuple(conj_name(h) for h in self.holo) + tuple(self.real)

    @cached_property
    def ring(self) -> PolyRing:
        return PolyRing(symbols(",".join(self.names), seq=True), QQ_I, grlex)

    @cached_property
    def index(self) -> dict[str, int]:
        return {n: k for k, n in enumerate(self.names)}

    @cached_property
    def partner_perm(self) -> tuple[int, ...]:
        """``perm[k]`` is the index of the conjugation partner of generator ``k``."""
        m = len(self.holo)
        perm = list(range(len(self.names)))
        for k in range(m):
            perm[k], perm[m + k] = m + k, k
        return tuple(perm)

    @cached_property
    def weight_vector(self) -> tuple[int, ...]:
        wmap = dict(self.weights)
        out = []
        for n in self.names:
            base = n[:-1] if n.endswith("b") and n[:-1] in self.holo else n
            out.append(wmap.get(base, 1))
        return tuple(out)

    @property
    def conj_holo(self) -> tuple[str, ...]:
        return tuple(conj_name(h) for h in self.holo)

    def partner(self, name: str) -> str:
        return self.names[self.partner_perm[self.index[name]]]

    def gen(self, name: str):
        try:
            return self.ring.gens[self.index[name]]
        except KeyError:
            raise KeyError(f"variable {name!r} not in space {self.names}") from None

    def is_holomorphic(self, name: str) -> bool:
        return name in self.holo

    def __contains__(self, name: str) -> bool:
        return name in self.index

    def __repr__(self) -> str:
        extra = f", real={list(self.real)}" if self.real else ""
        return f"VariableSpace({list(self.holo)}{extra})"
