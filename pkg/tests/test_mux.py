import numpy as np
import pytest

from qmuxopt import gates
from qmuxopt.errors import (
    FormMismatch,
    LengthNotPowerOfTwo,
    PolarityLengthMismatch,
)
from qmuxopt.mux import (
    FPQF,
    KQF,
    STANDARD,
    Multiplexer,
    active_gate_indices,
    butterfly_stage,
    forward_transform,
    inverse_transform,
    max_semantic_deviation,
    negative_control_realization,
    semantics,
    transform_stages,
    triangular_solve,
)

INV = gates.inverse


def random_mux(rng, m, form=STANDARD, polarity=None):
    targets = np.stack([gates.random_unitary(rng) for _ in range(1 << m)])
    return Multiplexer(m, targets, form, polarity)


def all_polarities(m, digits):
    for i in range(len(digits) ** m):
        out = []
        v = i
        for _ in range(m):
            out.append(digits[v % len(digits)])
            v //= len(digits)
        yield "".join(reversed(out))


def ivvx_case():
    return Multiplexer(2, np.stack([gates.I, gates.V, gates.V, gates.X]))


# --- construction ---


def test_rejects_zero_controls():
    with pytest.raises(ValueError):
        Multiplexer(0, np.stack([gates.I]))


def test_rejects_wrong_target_count():
    with pytest.raises(ValueError):
        Multiplexer(2, np.stack([gates.I, gates.X]))


def test_rejects_non_unitary_target():
    bad = np.stack([gates.I, 2 * gates.X])
    with pytest.raises(ValueError):
        Multiplexer(1, bad)


def test_rejects_fpqf_with_mixed_digit():
    with pytest.raises(ValueError):
        Multiplexer(2, ivvx_case().targets, FPQF, "12")


def test_rejects_standard_with_polarity():
    with pytest.raises(ValueError):
        Multiplexer(2, ivvx_case().targets, STANDARD, "11")


def test_targets_are_read_only():
    m = ivvx_case()
    with pytest.raises(ValueError):
        m.targets[0, 0, 0] = 5.0


# --- semantics ---


def test_standard_semantics_selects_one_gate():
    rng = np.random.default_rng(50)
    m = random_mux(rng, 2)
    assert np.abs(semantics(m, 2) - m.targets[2]).max() == 0


def test_fpqf_all_positive_activation():
    rng = np.random.default_rng(51)
    g = random_mux(rng, 2, FPQF, "11")
    # input 3 fires everything, highest index leftmost
    want = g.targets[3] @ g.targets[2] @ g.targets[1] @ g.targets[0]
    assert np.abs(semantics(g, 3) - want).max() <= 1e-12
    # input 0 fires only the unconditioned gate
    assert np.abs(semantics(g, 0) - g.targets[0]).max() == 0
    assert list(active_gate_indices(g, 2)) == [0, 2]


def test_mixed_digits_pin_their_bit():
    rng = np.random.default_rng(52)
    g = random_mux(rng, 2, KQF, "21")
    assert list(active_gate_indices(g, 0)) == [0]
    assert list(active_gate_indices(g, 1)) == [0, 1]
    assert list(active_gate_indices(g, 2)) == [2]
    assert list(active_gate_indices(g, 3)) == [2, 3]


# --- butterfly_stage ---


def test_butterfly_stage_with_callable_kernel():
    rng = np.random.default_rng(53)
    vec = np.stack([gates.random_unitary(rng) for _ in range(4)])
    out = butterfly_stage(vec, lambda a, b: (b, a @ b), 0)
    assert np.abs(out[0] - vec[1]).max() <= 1e-12
    assert np.abs(out[1] - vec[0] @ vec[1]).max() <= 1e-12
    assert np.abs(out[2] - vec[3]).max() <= 1e-12
    assert np.abs(out[3] - vec[2] @ vec[3]).max() <= 1e-12


def test_butterfly_stage_identity_kernel():
    rng = np.random.default_rng(54)
    vec = np.stack([gates.random_unitary(rng) for _ in range(8)])
    assert np.array_equal(butterfly_stage(vec, "identity", 1), vec)


def test_butterfly_stage_inverse_pos_at_bit_one():
    rng = np.random.default_rng(55)
    a, b, c, d = (gates.random_unitary(rng) for _ in range(4))
    out = butterfly_stage(np.stack([a, b, c, d]), "inverse_pos", 1)
    assert np.abs(out[0] - a).max() <= 1e-12
    assert np.abs(out[1] - b).max() <= 1e-12
    assert np.abs(out[2] - c @ a).max() <= 1e-12
    assert np.abs(out[3] - d @ b).max() <= 1e-12


def test_butterfly_stage_length_check():
    vec = np.stack([gates.I, gates.X, gates.Z])
    with pytest.raises(LengthNotPowerOfTwo):
        butterfly_stage(vec, "identity", 0)


def test_butterfly_stage_bit_range_check():
    vec = np.stack([gates.I, gates.X])
    with pytest.raises(ValueError):
        butterfly_stage(vec, "identity", 1)


# --- forward transform ---


def test_forward_two_positive_digits_algebra():
    rng = np.random.default_rng(56)
    for _ in range(20):
        m = random_mux(rng, 2)
        f0, f1, f2, f3 = m.targets
        g = forward_transform(m, "11").targets
        assert np.abs(g[0] - f0).max() <= 1e-12
        assert np.abs(g[1] - f1 @ INV(f0)).max() <= 1e-12
        assert np.abs(g[2] - f2 @ INV(f0)).max() <= 1e-12
        assert np.abs(g[3] - f3 @ INV(f1) @ f0 @ INV(f2)).max() <= 1e-12


def test_forward_all_mixed_is_the_standard_form():
    rng = np.random.default_rng(57)
    m = random_mux(rng, 2)
    out = forward_transform(m, "22")
    assert out.form == KQF
    assert np.array_equal(out.targets, m.targets)


def test_forward_iv_v_x_collapses():
    out = forward_transform(ivvx_case(), "11")
    expect = np.stack([gates.I, gates.V, gates.V, gates.I])
    assert np.abs(out.targets - expect).max() <= 1e-12


def test_forward_requires_standard_form():
    g = forward_transform(ivvx_case(), "11")
    with pytest.raises(FormMismatch):
        forward_transform(g, "11")


def test_forward_polarity_length_checked():
    with pytest.raises(PolarityLengthMismatch):
        forward_transform(ivvx_case(), "111")


# --- inverse transform ---


def test_inverse_single_variable_base_cases():
    rng = np.random.default_rng(58)
    g0, g1 = gates.random_unitary(rng), gates.random_unitary(rng)
    pos = Multiplexer(1, np.stack([g0, g1]), FPQF, "1")
    back = inverse_transform(pos)
    assert np.abs(back.targets[0] - g0).max() <= 1e-12
    assert np.abs(back.targets[1] - g1 @ g0).max() <= 1e-12

    neg = Multiplexer(1, np.stack([g0, g1]), FPQF, "0")
    back = inverse_transform(neg)
    assert np.abs(back.targets[0] - g1 @ g0).max() <= 1e-12
    assert np.abs(back.targets[1] - g0).max() <= 1e-12

    mixed = Multiplexer(1, np.stack([g0, g1]), KQF, "2")
    back = inverse_transform(mixed)
    assert np.abs(back.targets - np.stack([g0, g1])).max() <= 1e-12


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8])
def test_round_trip_forward_then_inverse(m):
    rng = np.random.default_rng(60 + m)
    std = random_mux(rng, m)
    polarity = "".join(str(d) for d in rng.integers(0, 3, size=m))
    back = inverse_transform(forward_transform(std, polarity))
    assert back.form == STANDARD
    assert np.abs(back.targets - std.targets).max() <= 1e-9


def test_inverse_requires_polarized_form():
    with pytest.raises(FormMismatch):
        inverse_transform(ivvx_case())


# --- the equivalence theorem at unit-test scale ---


@pytest.mark.parametrize("m", [1, 2, 3])
def test_semantics_preserved_for_every_polarity(m):
    rng = np.random.default_rng(70 + m)
    for _ in range(5):
        std = random_mux(rng, m)
        for polarity in all_polarities(m, "012"):
            assert max_semantic_deviation(std, forward_transform(std, polarity)) <= 1e-9


@pytest.mark.parametrize("m", [1, 2, 3])
def test_forward_agrees_with_triangular_solve(m):
    rng = np.random.default_rng(80 + m)
    for _ in range(5):
        std = random_mux(rng, m)
        for polarity in all_polarities(m, "012"):
            fast = forward_transform(std, polarity)
            slow = triangular_solve(std, polarity)
            assert np.abs(fast.targets - slow.targets).max() <= 1e-9


def test_triangular_solve_iv_v_x_by_hand():
    out = triangular_solve(ivvx_case(), "11")
    expect = np.stack([gates.I, gates.V, gates.V, gates.I])
    assert np.abs(out.targets - expect).max() <= 1e-12


def test_diagonal_targets_make_stage_order_irrelevant():
    # commuting targets: running the columns in the opposite order must
    # give the same result, so this corpus cannot detect an order bug
    rng = np.random.default_rng(90)
    m = 3
    targets = np.stack([gates.rz(a) for a in rng.uniform(0, 2 * np.pi, size=1 << m)])
    std = Multiplexer(m, targets)
    for polarity in ("111", "010", "120"):
        shipped = transform_stages(std.targets, polarity, "forward")
        reversed_order = std.targets.copy()
        from qmuxopt import kernels
        table = {"1": kernels.FORWARD_POS, "0": kernels.FORWARD_NEG, "2": kernels.IDENTITY}
        for k in reversed(range(m)):
            reversed_order = kernels.gate_stage(
                reversed_order, table[polarity[k]], m - 1 - k
            )
        assert np.abs(shipped - reversed_order).max() <= 1e-12


def test_noncommuting_targets_are_stage_order_sensitive():
    # control for the test above: on generic unitaries the opposite order
    # diverges, so the equivalence suite genuinely pins the shipped order
    rng = np.random.default_rng(91)
    std = random_mux(rng, 2)
    from qmuxopt import kernels
    shipped = transform_stages(std.targets, "11", "forward")
    other = std.targets.copy()
    for k in reversed(range(2)):
        other = kernels.gate_stage(other, kernels.FORWARD_POS, 2 - 1 - k)
    assert np.abs(shipped - other).max() > 1e-6


# --- negative control realization ---


def test_realization_flags_negative_lines():
    rng = np.random.default_rng(92)
    g = random_mux(rng, 2, FPQF, "10")
    realized = negative_control_realization(g)
    assert realized.polarity == "11"
    assert realized.inverted_lines == (2,)
    assert np.array_equal(realized.targets, g.targets)


def test_realization_without_negatives_is_identity():
    rng = np.random.default_rng(93)
    g = random_mux(rng, 2, FPQF, "11")
    assert negative_control_realization(g) is g


def test_realization_preserves_semantics():
    rng = np.random.default_rng(94)
    for m in (1, 2, 3):
        std = random_mux(rng, m)
        for polarity in all_polarities(m, "012"):
            if "0" not in polarity:
                continue
            g = forward_transform(std, polarity)
            realized = negative_control_realization(g)
            assert max_semantic_deviation(g, realized) <= 1e-12


def test_realization_rejects_standard_form():
    with pytest.raises(FormMismatch):
        negative_control_realization(ivvx_case())


def test_realized_mux_round_trips_through_inverse():
    rng = np.random.default_rng(95)
    std = random_mux(rng, 3)
    g = forward_transform(std, "010")
    back = inverse_transform(negative_control_realization(g))
    assert np.abs(back.targets - std.targets).max() <= 1e-9
