"""Exit criteria.  Each test prints one PASS/FAIL line in the terminal summary."""
import csv
import io
import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import criterion
from conevol.exact import PiScalar, to_float
from conevol.invariants import (
    covering_residual,
    existence_interval,
    strand_length,
    two_bridge_volume,
    volume,
    volume_derivative,
)
from conevol.torus_link import params_new
from conevol.verify import (
    SamplingError,
    cross_path_residual,
    sample_alpha,
    schlafli_fd_residual,
)

SEED = 20240611
N_CASES = 1000
FD_STEP = 1e-6
FD_TOL = 1e-9
CROSS_PATH_TOL = 1e-12
ZERO1, ZERO2 = PiScalar.zero(1), PiScalar.zero(2)
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def cases():
    """1,000 seeded (p, q, alpha) with 1 <= p <= q <= 50 and rational alpha in the window."""
    rng = random.Random(SEED)
    out = []
    for _ in range(N_CASES):
        t = params_new(rng.randint(1, 50), rng.randint(1, 50))
        out.append((t, sample_alpha(rng, t)))
    assert all(1 <= t.p <= t.q <= 50 for t, _ in out)
    return out


def test_c1_covering_identity(cases):
    with criterion(1, f"covering residual is exact zero on {N_CASES} cases"):
        bad = [(t, a) for t, a in cases if covering_residual(t, a) != ZERO2]
        assert bad == []


def test_c2_schlafli_exact(cases):
    with criterion(2, f"dV/dalpha == components/2 * length exactly on {N_CASES} cases"):
        bad = [
            (t, a) for t, a in cases
            if volume_derivative(t, a) != Fraction(t.components, 2) * strand_length(t, a)
        ]
        assert bad == []


def test_c3_finite_difference(cases):
    with criterion(3, f"FD residual <= {FD_TOL:g} at h={FD_STEP:g}, {N_CASES} cases in < 5 s"):
        start = time.perf_counter()
        worst = 0.0
        for t, a in cases:
            try:
                worst = max(worst, schlafli_fd_residual(t, a, FD_STEP))
            except SamplingError:
                pytest.fail(f"stencil left the interval at t({t.p},{t.q}), alpha={a}")
        elapsed = time.perf_counter() - start
        assert worst <= FD_TOL, worst
        assert elapsed < 5.0, elapsed


def test_c4_trefoil():
    with criterion(4, "trefoil: Vol = pi^2/3, length = 2pi, interval (pi/3, 5pi/3)"):
        t = params_new(2, 3)
        pi = PiScalar.angle(1)
        v = volume(t, pi)
        assert v == PiScalar(Fraction(1, 3), 2)
        assert abs(to_float(v) - 3.289868134) <= 1e-9
        assert strand_length(t, pi) == PiScalar.angle(2)
        iv = existence_interval(t)
        assert (iv.lower, iv.upper) == (PiScalar.angle(1, 3), PiScalar.angle(5, 3))


def test_c5_two_bridge():
    with criterion(5, "two-bridge(p, a, a) == Vol T(2,2p)(a) for p <= 100, 100 angles"):
        rng = random.Random(SEED + 5)
        angles = [PiScalar(Fraction(rng.randint(-4000, 4000), rng.randint(1, 1000)), 1)
                  for _ in range(100)]
        for p in range(1, 101):
            doubled = params_new(2, 2 * p)
            for a in angles:
                assert two_bridge_volume(p, a, a) == volume(doubled, a, force=True), (p, a)


def test_c6_boundary():
    with criterion(6, "volume, derivative, length vanish at the lower endpoint (100 pairs)"):
        rng = random.Random(SEED + 6)
        for _ in range(100):
            t = params_new(rng.randint(1, 1000), rng.randint(1, 1000))
            lower = existence_interval(t).lower
            assert volume(t, lower, force=True) == ZERO2
            assert volume_derivative(t, lower, force=True) == ZERO1
            assert strand_length(t, lower, force=True) == ZERO1


def test_c7_symmetry():
    with criterion(7, "params (p,q) and (q,p) give identical invariants; width == 4pi/q"):
        rng = random.Random(SEED + 7)
        for _ in range(100):
            p, q = rng.randint(1, 500), rng.randint(1, 500)
            a, b = params_new(p, q), params_new(q, p)
            assert existence_interval(a) == existence_interval(b)
            alpha = sample_alpha(rng, a)
            for f in (volume, volume_derivative, strand_length):
                assert f(a, alpha) == f(b, alpha)
            iv = existence_interval(a)
            assert iv.upper - iv.lower == PiScalar(Fraction(4, a.q), 1)


def test_c8_cross_path(cases):
    with criterion(8, f"exact vs naive float volume within {CROSS_PATH_TOL:g} on {N_CASES} cases"):
        worst = max(cross_path_residual(t, a) for t, a in cases)
        assert worst <= CROSS_PATH_TOL, worst


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "conevol", *args],
                          capture_output=True, text=True, check=False)


def test_c9_cli_contract():
    with criterion(9, "CLI: sweep CSV, verify exit 0, info 4 6 golden JSON"):
        res = _cli("sweep", "2", "3", "--samples", "100", "--format", "csv")
        assert res.returncode == 0, res.stderr
        rows = list(csv.reader(io.StringIO(res.stdout)))
        assert rows[0] == ["alpha_exact", "alpha_rad", "volume_exact", "volume",
                           "length_exact", "length_per_component"]
        body = rows[1:]
        assert len(body) == 100
        alphas = [float(r[1]) for r in body]
        assert all(x < y for x, y in zip(alphas, alphas[1:]))
        assert all(math.pi / 3 < x < 5 * math.pi / 3 for x in alphas)

        res = _cli("verify", "--trials", "1000", "--seed", "42")
        assert res.returncode == 0, res.stdout + res.stderr

        res = _cli("info", "4", "6", "--format", "json")
        assert res.returncode == 0
        assert res.stdout.encode() == (GOLDEN / "info_4_6.json").read_bytes()
        assert json.loads(res.stdout)["params"]["components"] == 2
