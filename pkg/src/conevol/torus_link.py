"""Validated (p, q) parameters of a torus knot or link t(p, q)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["MAX_PARAM", "TorusLinkParams", "is_knot", "params_new"]

MAX_PARAM = 10**6


@dataclass(frozen=True)
class TorusLinkParams:
    """Normalized torus link parameters, ``1 <= p <= q``.

    ``normalized_swap`` records whether the caller passed ``(q, p)``; it is
    excluded from equality so that ``params_new(p, q) == params_new(q, p)``.
    """

    p: int
    q: int
    gcd: int
    lcm: int
    components: int
    normalized_swap: bool = field(default=False, compare=False)

    @property
    def is_knot(self) -> bool:
        return self.gcd == 1

    @property
    def is_unknot(self) -> bool:
        # t(1, q) bounds a disc: the singular set is a single unknotted circle
        return self.p == 1

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "gcd": self.gcd,
            "lcm": self.lcm,
            "components": self.components,
            "normalized_swap": self.normalized_swap,
        }


def _check(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    if value > MAX_PARAM:
        raise ValueError(f"{name} = {value} exceeds the supported maximum {MAX_PARAM}")
    return value


def params_new(p: int, q: int) -> TorusLinkParams:
    """Validate and normalize ``(p, q)`` so that ``p <= q``.

    t(p, q) and t(q, p) are isotopic, so the swap loses nothing.
    """
    p = _check("p", p)
    q = _check("q", q)
    swapped = p > q
    if swapped:
        p, q = q, p
    g = math.gcd(p, q)
    return TorusLinkParams(
        p=p, q=q, gcd=g, lcm=p * q // g, components=g, normalized_swap=swapped
    )


def is_knot(params: TorusLinkParams) -> bool:
    return params.gcd == 1
