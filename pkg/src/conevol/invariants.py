"""Spherical cone-manifold invariants of torus knots and links.

For the cone-manifold T(p,q)(alpha) whose singular set is t(p, q), with the
same cone angle alpha on every component, everything is a polynomial in the
excess

    X = alpha/2 - pi*(1 - 1/p - 1/q)

    volume            (pq/2) * X**2
    d volume/d alpha  (pq/2) * X
    strand length     lcm(p, q) * X       (one component)

and a spherical structure exists whenever

    2*pi*(1 - 1/p - 1/q) < alpha < 2*pi*(1 - 1/p + 1/q).

The volume also equals q times the volume of the two-bridge link
cone-manifold T(2,2p)(alpha, 2*pi/q), which it covers q-fold; that relation
is checked by :func:`covering_residual`.  Lengths follow the spherical
Schlafli convention dV = 1/2 * sum(l_i * d theta_i).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import GradeError, PiScalar, render, to_float
from .torus_link import TorusLinkParams, params_new

__all__ = [
    "AngleInterval",
    "InvariantReport",
    "NotAssertedError",
    "admits_spherical",
    "asserted_window",
    "covering_residual",
    "excess",
    "existence_interval",
    "invariant_report",
    "strand_length",
    "two_bridge_volume",
    "volume",
    "volume_derivative",
    "volume_polynomial",
]


class NotAssertedError(ValueError):
    """The angle lies outside the window where a spherical structure is asserted."""


@dataclass(frozen=True)
class AngleInterval:
    """Open interval ``(lower, upper)`` of grade-1 scalars."""

    lower: PiScalar
    upper: PiScalar

    def __contains__(self, alpha: PiScalar) -> bool:
        return self.lower < alpha < self.upper

    @property
    def width(self) -> PiScalar:
        return self.upper - self.lower

    def to_json(self) -> dict:
        return {"lower": scalar_json(self.lower), "upper": scalar_json(self.upper)}


def scalar_json(x: PiScalar) -> dict:
    return {"exact": render(x), **x.to_json(), "float": float_json(to_float(x))}


def float_json(value: float) -> float:
    """Round to the 12 significant digits used in every rendering."""
    return float(f"{value:.12g}")


def _angle(alpha: PiScalar) -> PiScalar:
    if not isinstance(alpha, PiScalar):
        raise TypeError(f"cone angle must be a PiScalar, got {type(alpha).__name__}")
    if alpha.grade != 1:
        raise GradeError(f"cone angle must be grade 1 (a multiple of pi), got grade {alpha.grade}")
    return alpha


def _offset(p: int, q: int) -> PiScalar:
    # pi * (1 - 1/p - 1/q)
    return PiScalar(1 - Fraction(1, p) - Fraction(1, q), 1)


def existence_interval(params: TorusLinkParams) -> AngleInterval:
    p, q = params.p, params.q
    lower = PiScalar(2 * (1 - Fraction(1, p) - Fraction(1, q)), 1)
    upper = PiScalar(2 * (1 - Fraction(1, p) + Fraction(1, q)), 1)
    return AngleInterval(lower, upper)


def asserted_window(params: TorusLinkParams) -> AngleInterval:
    """The existence interval with its lower end clamped at zero.

    Only differs from :func:`existence_interval` when p = 1.
    """
    iv = existence_interval(params)
    zero = PiScalar.zero(1)
    return AngleInterval(max(iv.lower, zero), iv.upper)


def admits_spherical(params: TorusLinkParams, alpha: PiScalar) -> bool:
    alpha = _angle(alpha)
    return alpha.coeff > 0 and alpha in existence_interval(params)


def excess(params: TorusLinkParams, alpha: PiScalar) -> PiScalar:
    return _angle(alpha) / 2 - _offset(params.p, params.q)


def volume_polynomial(p: int, q: int, alpha: PiScalar) -> PiScalar:
    """``(pq/2) * X**2`` for raw, unnormalized ``p`` and ``q``; no window check."""
    x = _angle(alpha) / 2 - _offset(p, q)
    return Fraction(p * q, 2) * (x * x)


def _require(params: TorusLinkParams, alpha: PiScalar, force: bool):
    if not force and not admits_spherical(params, alpha):
        iv = existence_interval(params)
        raise NotAssertedError(
            f"no spherical structure asserted here: alpha = {render(alpha)} is outside "
            f"({render(max(iv.lower, PiScalar.zero(1)))}, {render(iv.upper)}) "
            f"for t({params.p},{params.q}); pass force=True to continue the formula"
        )


def volume(params: TorusLinkParams, alpha: PiScalar, force: bool = False) -> PiScalar:
    """Exact volume of T(p,q)(alpha), grade 2.

    Raises :class:`NotAssertedError` outside the asserted window unless
    ``force`` is set, in which case the polynomial is evaluated as is.
    """
    _require(params, alpha, force)
    return volume_polynomial(params.p, params.q, alpha)


def volume_derivative(params: TorusLinkParams, alpha: PiScalar, force: bool = False) -> PiScalar:
    _require(params, alpha, force)
    return Fraction(params.p * params.q, 2) * excess(params, alpha)


def strand_length(params: TorusLinkParams, alpha: PiScalar, force: bool = False) -> PiScalar:
    """Length of one component of the singular set (all components are congruent)."""
    _require(params, alpha, force)
    return params.lcm * excess(params, alpha)


def two_bridge_volume(p: int, alpha: PiScalar, beta: PiScalar) -> PiScalar:
    """Volume of T(2,2p)(alpha, beta) with independent cone angles."""
    if isinstance(p, bool) or not isinstance(p, int):
        raise TypeError(f"p must be an integer, got {p!r}")
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    half_sum = (_angle(alpha) + _angle(beta)) / 2
    inner = half_sum * p - PiScalar(p - 1, 1)
    return Fraction(1, 2 * p) * (inner * inner)


def covering_residual(params: TorusLinkParams, alpha: PiScalar) -> PiScalar:
    """``Vol T(p,q)(alpha) - q * Vol T(2,2p)(alpha, 2pi/q)``; identically zero."""
    branch_angle = PiScalar(Fraction(2, params.q), 1)
    cover = params.q * two_bridge_volume(params.p, alpha, branch_angle)
    return volume(params, alpha, force=True) - cover


@dataclass(frozen=True)
class InvariantReport:
    params: TorusLinkParams
    alpha: PiScalar
    interval: AngleInterval
    in_interval: bool
    forced: bool
    covering_residual: PiScalar
    volume: PiScalar | None = None
    volume_derivative: PiScalar | None = None
    length: PiScalar | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def length_total(self) -> PiScalar | None:
        if self.length is None:
            return None
        return self.params.components * self.length

    @property
    def floats(self) -> dict:
        out = {"alpha": to_float(self.alpha)}
        for name in ("volume", "length"):
            value = getattr(self, name)
            out[name] = None if value is None else to_float(value)
        out["length_total"] = None if self.length is None else to_float(self.length_total)
        return out

    def to_json(self) -> dict:
        def opt(x):
            return None if x is None else scalar_json(x)

        return {
            "params": self.params.to_json(),
            "alpha": scalar_json(self.alpha),
            "interval": self.interval.to_json(),
            "asserted_spherical": self.in_interval,
            "forced": self.forced,
            "volume": opt(self.volume),
            "volume_derivative": opt(self.volume_derivative),
            "length_per_component": opt(self.length),
            "length_total": opt(self.length_total),
            "covering_residual": scalar_json(self.covering_residual),
            "notes": list(self.notes),
        }


def invariant_report(
    params: TorusLinkParams, alpha: PiScalar, force: bool = False, notes=()
) -> InvariantReport:
    """Bundle every invariant for one query.

    Volume and lengths are filled in when the angle is in the asserted
    window, or anywhere when ``force`` is set (the report then says so).
    """
    alpha = _angle(alpha)
    iv = existence_interval(params)
    inside = admits_spherical(params, alpha)
    notes = list(notes)
    if params.is_unknot:
        notes.append("unknot (degenerate singular set)")
    if iv.lower.coeff < 0:
        notes.append("lower bound clamped to 0: cone angles are positive")
    fill = inside or force
    if force and not inside:
        notes.append("forced: polynomial continuation, no spherical structure asserted")
    return InvariantReport(
        params=params,
        alpha=alpha,
        interval=iv,
        in_interval=inside,
        forced=bool(force),
        covering_residual=covering_residual(params, alpha),
        volume=volume(params, alpha, force=True) if fill else None,
        volume_derivative=volume_derivative(params, alpha, force=True) if fill else None,
        length=strand_length(params, alpha, force=True) if fill else None,
        notes=tuple(notes),
    )


def report_for(p: int, q: int, alpha: PiScalar, force: bool = False) -> InvariantReport:
    return invariant_report(params_new(p, q), alpha, force=force)
