import math
import subprocess
import sys

import numpy as np
import pytest

from dfstates import _series_numpy
from dfstates import backends

_numba = pytest.importorskip("dfstates._series_numba")

PROBES = [
    # subtract, n, ops, q, r, amag, theta
    (False, 0, 1, 1, 1, 0.5, 0.0),
    (False, 1, 1, 2, 2, 1.0, 0.7),
    (False, 2, 2, 3, 1, 2.0, 1.1),
    (False, 3, 1, 0, 0, 4.0, 0.3),
    (True, 1, 1, 1, 1, 0.8, 0.0),
    (True, 2, 1, 2, 3, 1.5, 2.0),
    (True, 3, 2, 4, 4, 2.5, 0.9),
    (True, 2, 2, 0, 0, 3.0, 0.4),
]

CTRL = (1e-12, 2000, 5)


class TestKernelParity:
    @pytest.mark.parametrize("probe", PROBES)
    def test_moment_sum(self, probe):
        a = _series_numpy.moment_sum(*probe, *CTRL)
        b = _numba.moment_sum(*probe, *CTRL)
        assert a[2] and b[2]
        scale = max(1.0, abs(a[0]))
        # cancellation spans e^{|alpha|^2} in dynamic range, so the parity
        # budget widens past |alpha| = 2.5
        tol = 1e-11 if probe[5] <= 2.5 else 1e-9
        assert abs(a[0] - b[0]) / scale < tol

    @pytest.mark.parametrize("probe", PROBES)
    def test_husimi_amp(self, probe):
        subtract, n, ops, _, _, amag, theta = probe
        bmag, theta_b = 1.2, 0.6
        nterms = _series_numpy.husimi_terms(amag, bmag, n, ops)
        a = _series_numpy.husimi_amp(subtract, n, ops, amag, theta, bmag, theta_b, nterms)
        b = _numba.husimi_amp(subtract, n, ops, amag, theta, bmag, theta_b, nterms)
        assert abs(a - b) < 1e-11 * max(1.0, abs(a))

    def test_husimi_grid(self):
        re = np.linspace(-1.5, 1.5, 7)
        im = np.linspace(-1.0, 1.0, 5)
        nterms = _series_numpy.husimi_terms(1.0, math.hypot(1.5, 1.0), 2, 1)
        a = _series_numpy.husimi_grid(True, 2, 1, 1.0, 0.4, re, im, nterms)
        b = _numba.husimi_grid(True, 2, 1, 1.0, 0.4, re, im, nterms)
        assert a.shape == b.shape == (7, 5)
        assert float(np.max(np.abs(a - b))) < 1e-11 * max(1.0, float(np.max(np.abs(a))))

    def test_terms_helper_is_shared(self):
        assert backends.husimi_terms is _series_numpy.husimi_terms


class TestSelection:
    def probe_backend(self, env_value):
        code = "import dfstates.backends as b; print(b.BACKEND)"
        return subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True, text=True,
            env={"PATH": "/usr/bin:/bin", "DFSTATES_BACKEND": env_value},
        )

    def test_forced_numpy(self):
        proc = self.probe_backend("numpy")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "numpy"

    def test_forced_numba(self):
        proc = self.probe_backend("numba")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "numba"

    def test_default_prefers_compiled(self):
        proc = self.probe_backend("")
        assert proc.returncode == 0
        assert proc.stdout.strip() in ("numba", "numpy")

    def test_bogus_value_rejected(self):
        proc = self.probe_backend("fortran")
        assert proc.returncode != 0
        assert "DFSTATES_BACKEND" in proc.stderr

    def test_full_suite_runs_on_numpy_backend(self):
        code = (
            "from dfstates.moments import moment_closed_form\n"
            "from dfstates.states import StateSpec\n"
            "from dfstates import backends\n"
            "assert backends.BACKEND == 'numpy'\n"
            "v = moment_closed_form(StateSpec('padfs', 1, 0, 1.0, 0.0), 1, 1).value\n"
            "assert abs(v - 2.5) < 1e-12, v\n"
            "print('ok')\n"
        )
        proc = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True, text=True,
            env={"PATH": "/usr/bin:/bin", "DFSTATES_BACKEND": "numpy"},
        )
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout.strip() == "ok"
