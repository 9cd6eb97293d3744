import os
import pathlib
import subprocess
import sys

import numpy as np
import pytest

import qmuxopt
from qmuxopt import gates, kernels

GATE_KERNELS = [
    kernels.FORWARD_POS,
    kernels.FORWARD_NEG,
    kernels.INVERSE_POS,
    kernels.INVERSE_NEG,
    kernels.IDENTITY,
]


def _random_gate_vector(rng, n):
    return np.stack([gates.random_unitary(rng) for _ in range(n)])


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
@pytest.mark.parametrize("kernel", GATE_KERNELS)
def test_gate_stage_backends_agree(kernel):
    rng = np.random.default_rng(20 + kernel)
    for m in (1, 2, 4):
        vec = _random_gate_vector(rng, 1 << m)
        for bit in range(m):
            a = kernels.gate_stage_numba(vec, kernel, bit)
            b = kernels.gate_stage_numpy(vec, kernel, bit)
            assert np.abs(a - b).max() <= 1e-12


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
def test_mux_cost_backends_agree():
    rng = np.random.default_rng(30)
    for m in (2, 4, 6):
        vec = _random_gate_vector(rng, 1 << m)
        vec[:: 1 << (m - 1)] = np.eye(2)  # plant identities
        counts = rng.integers(0, m + 1, size=1 << m).astype(np.int64)
        table = np.arange(m + 1, dtype=np.int64) * 3 + 1
        a = kernels.mux_cost_numba(vec, counts, table, 1e-9)
        b = kernels.mux_cost_numpy(vec, counts, table, 1e-9)
        assert tuple(int(x) for x in a) == tuple(int(x) for x in b)


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
@pytest.mark.parametrize("kernel", [kernels.GF2_POS, kernels.GF2_NEG, kernels.GF2_MIXED])
def test_gf2_stage_backends_agree(kernel):
    rng = np.random.default_rng(40 + kernel)
    for n in (1, 3, 6):
        vec = rng.integers(0, 2, size=1 << n).astype(np.uint8)
        for bit in range(n):
            a = kernels.gf2_stage_numba(vec, kernel, bit)
            b = kernels.gf2_stage_numpy(vec, kernel, bit)
            assert np.array_equal(a, b)


def test_gf2_kernels_are_self_inverse():
    rng = np.random.default_rng(41)
    vec = rng.integers(0, 2, size=16).astype(np.uint8)
    for kernel in (kernels.GF2_POS, kernels.GF2_NEG, kernels.GF2_MIXED):
        twice = kernels.gf2_stage(kernels.gf2_stage(vec, kernel, 2), kernel, 2)
        assert np.array_equal(twice, vec)


def test_forward_and_inverse_kernels_cancel():
    rng = np.random.default_rng(42)
    vec = _random_gate_vector(rng, 8)
    for fwd, inv in [
        (kernels.FORWARD_POS, kernels.INVERSE_POS),
        (kernels.FORWARD_NEG, kernels.INVERSE_NEG),
    ]:
        back = kernels.gate_stage(kernels.gate_stage(vec, fwd, 1), inv, 1)
        assert np.abs(back - vec).max() <= 1e-12


def test_env_flag_forces_numpy_path():
    code = (
        "from qmuxopt import kernels; "
        "assert not kernels.USE_NUMBA; "
        "assert kernels.gate_stage is kernels.gate_stage_numpy"
    )
    env = dict(os.environ)
    env["QMUXOPT_NO_NUMBA"] = "1"
    src = str(pathlib.Path(qmuxopt.__file__).resolve().parents[1])
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    subprocess.run([sys.executable, "-c", code], check=True, env=env)
