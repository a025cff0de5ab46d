"""Independent checks of the exact formulas.

Two kinds of oracle live here.  Floating-point ones (a central-difference
derivative of the volume, and a separate straight-line float transcription
of the volume formula) share no arithmetic with the exact path.  Exact ones
(covering, symmetry, Schlafli, two-bridge, boundary) compare PiScalars with
zero tolerance.  :func:`run_identity_suite` runs all of them over seeded
random samples and collects failures instead of raising.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .exact import PiScalar, render, to_float
from .invariants import (
    asserted_window,
    covering_residual,
    existence_interval,
    strand_length,
    two_bridge_volume,
    volume,
    volume_derivative,
    volume_polynomial,
)
from .torus_link import TorusLinkParams, params_new

__all__ = [
    "CROSS_PATH_TOL",
    "Failure",
    "SamplingError",
    "VerificationConfig",
    "VerificationReport",
    "cross_path_residual",
    "naive_float_volume",
    "run_identity_suite",
    "sample_alpha",
    "schlafli_fd_residual",
]

CROSS_PATH_TOL = 1e-12
MAX_ALPHA_DENOMINATOR = 1000


class SamplingError(ValueError):
    """The finite-difference stencil leaves the asserted window."""


def naive_float_volume(p: int, q: int, alpha_radians: float) -> float:
    """Volume of T(p,q)(alpha) computed directly in doubles."""
    x = alpha_radians / 2.0 - math.pi * (1.0 - 1.0 / p - 1.0 / q)
    return (p * q / 2.0) * x * x


def cross_path_residual(params: TorusLinkParams, alpha: PiScalar) -> float:
    """Float disagreement between the exact and naive volume paths.

    Relative to ``max(1, |volume|)``: near the lower endpoint the volume
    vanishes quadratically and the naive path's cancellation error is
    absolute, not relative.
    """
    exact = to_float(volume(params, alpha, force=True))
    naive = naive_float_volume(params.p, params.q, to_float(alpha))
    return abs(exact - naive) / max(1.0, abs(exact))


def schlafli_fd_residual(params: TorusLinkParams, alpha: PiScalar, h: float = 1e-6) -> float:
    """Relative residual of the central difference of the float volume.

    The reference slope is ``components/2 * strand_length`` and the residual
    is scaled by ``max(1, |dV/dalpha|)``.  Volume is quadratic in alpha, so the
    central difference carries no truncation error; whatever remains is
    rounding in ``to_float``.
    """
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    # the step itself is made exact so both stencil points go through the exact path
    step = PiScalar(Fraction(h / math.pi), 1)
    window = asserted_window(params)
    lo_pt, hi_pt = alpha - step, alpha + step
    if not (lo_pt in window and hi_pt in window):
        raise SamplingError(
            f"stencil alpha +/- {h:g} leaves ({render(window.lower)}, {render(window.upper)}) "
            f"at alpha = {render(alpha)}"
        )
    slope = (to_float(volume(params, hi_pt)) - to_float(volume(params, lo_pt))) / (
        2.0 * to_float(step)
    )
    schlafli = to_float(Fraction(params.components, 2) * strand_length(params, alpha))
    scale = max(1.0, abs(to_float(volume_derivative(params, alpha))))
    return abs(slope - schlafli) / scale


def sample_alpha(rng: random.Random, params: TorusLinkParams,
                 max_den: int = MAX_ALPHA_DENOMINATOR) -> PiScalar:
    """Random rational multiple of pi strictly inside the asserted window."""
    window = asserted_window(params)
    lo, hi = window.lower.coeff, window.upper.coeff
    while True:
        den = rng.randint(1, max_den)
        n_min = math.floor(lo * den) + 1
        n_max = math.ceil(hi * den) - 1
        if n_min <= n_max:
            return PiScalar(Fraction(rng.randint(n_min, n_max), den), 1)


@dataclass(frozen=True)
class VerificationConfig:
    trials: int = 1000
    p_max: int = 50
    q_max: int = 50
    seed: int = 42
    fd_step: float = 1e-6
    rel_tol: float = 1e-9

    def __post_init__(self):
        if self.trials < 0:
            raise ValueError(f"trials must be >= 0, got {self.trials}")
        if self.p_max < 1 or self.q_max < 1:
            raise ValueError("p_max and q_max must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if not self.fd_step > 0:
            raise ValueError(f"fd_step must be positive, got {self.fd_step}")
        if not 0 < self.rel_tol < 1:
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")


@dataclass(frozen=True)
class Failure:
    check_name: str
    p: int
    q: int
    alpha: str
    expected: str
    got: str
    residual: str


@dataclass
class VerificationReport:
    config: VerificationConfig
    cases_run: int = 0
    failures: list[Failure] = field(default_factory=list)
    max_fd_residual: float = 0.0
    max_cross_path_residual: float = 0.0
    checks_run: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "config": asdict(self.config),
            "cases_run": self.cases_run,
            "checks_run": self.checks_run,
            "passed": self.passed,
            "max_fd_residual": self.max_fd_residual,
            "max_cross_path_residual": self.max_cross_path_residual,
            "failures": [asdict(f) for f in self.failures],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"

    def summary(self) -> str:
        c = self.config
        lines = [
            f"identity suite: trials={c.trials} p_max={c.p_max} q_max={c.q_max} "
            f"seed={c.seed} fd_step={c.fd_step:g} rel_tol={c.rel_tol:g}",
            f"  cases run              {self.cases_run}",
            f"  checks run             {self.checks_run}",
            f"  max FD residual        {self.max_fd_residual:.3e}",
            f"  max cross-path resid.  {self.max_cross_path_residual:.3e}",
            f"  failures               {len(self.failures)}",
        ]
        if self.failures:
            lines.append("")
            lines.append(f"  {'check':<16} {'p':>4} {'q':>4}  {'alpha':<14} residual")
            for f in self.failures:
                lines.append(f"  {f.check_name:<16} {f.p:>4} {f.q:>4}  {f.alpha:<14} {f.residual}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"


def _exact_checks(raw_p: int, raw_q: int, params: TorusLinkParams, alpha: PiScalar):
    """Yield ``(name, expected, got)`` for every zero-tolerance identity."""
    zero2 = PiScalar.zero(2)
    yield "covering", zero2, covering_residual(params, alpha)

    v = volume(params, alpha)
    yield "symmetry", v, volume(params_new(raw_q, raw_p), alpha)
    yield "symmetry_raw", volume_polynomial(raw_p, raw_q, alpha), volume_polynomial(raw_q, raw_p, alpha)

    yield (
        "schlafli_exact",
        volume_derivative(params, alpha),
        Fraction(params.components, 2) * strand_length(params, alpha),
    )

    doubled = params_new(2, 2 * params.p)
    yield "two_bridge", volume(doubled, alpha, force=True), two_bridge_volume(params.p, alpha, alpha)

    lower = existence_interval(params).lower
    yield "boundary_volume", zero2, volume(params, lower, force=True)
    yield "boundary_deriv", PiScalar.zero(1), volume_derivative(params, lower, force=True)
    yield "boundary_length", PiScalar.zero(1), strand_length(params, lower, force=True)


def run_identity_suite(config: VerificationConfig) -> VerificationReport:
    """Run every identity over ``config.trials`` seeded random cases."""
    rng = random.Random(config.seed)
    report = VerificationReport(config=config)
    failures = []

    for _ in range(config.trials):
        raw_p = rng.randint(1, config.p_max)
        raw_q = rng.randint(1, config.q_max)
        params = params_new(raw_p, raw_q)
        alpha = sample_alpha(rng, params)
        report.cases_run += 1

        def fail(name, expected, got, residual):
            key = (params.p, params.q, alpha.coeff, name)
            failures.append((key, Failure(name, params.p, params.q, render(alpha),
                                          str(expected), str(got), str(residual))))

        for name, expected, got in _exact_checks(raw_p, raw_q, params, alpha):
            report.checks_run += 1
            if expected != got:
                diff = got - expected if expected.grade == got.grade else "grade mismatch"
                fail(name, render(expected), render(got), diff)

        h = config.fd_step
        while True:
            try:
                fd = schlafli_fd_residual(params, alpha, h)
                break
            except SamplingError:
                h /= 2
        report.checks_run += 1
        report.max_fd_residual = max(report.max_fd_residual, fd)
        if not fd <= config.rel_tol:
            fail("schlafli_fd", f"<= {config.rel_tol:g}", f"{fd:.3e}", fd)

        cp = cross_path_residual(params, alpha)
        report.checks_run += 1
        report.max_cross_path_residual = max(report.max_cross_path_residual, cp)
        if not cp <= CROSS_PATH_TOL:
            fail("cross_path", f"<= {CROSS_PATH_TOL:g}", f"{cp:.3e}", cp)

    report.failures = [f for _, f in sorted(failures, key=lambda kf: kf[0])]
    return report
