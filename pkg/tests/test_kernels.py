import numpy as np
import pytest

from domain.exceptions import ContourError, IndexingError, ParameterDomainError, PoleError
from domain.scaling import params_from_scaled
from fredholm.operator import det_eval
from fredholm.quadrature import build_grid, half_line_rule
from kernels.context import ContourOffsets, KernelContext, default_offsets
from kernels.contour_oracles import (
    Q_CONTOURS,
    s1_contour,
    s2_contour,
    s3_contour,
    s4_contour,
    t1_contour,
)
from kernels.q_form import QFormAssembly, q_block, q_coefficients, q_component, q_matrices
from kernels.two_time import (
    Block,
    KFormAssembly,
    k_block,
    kernel_component,
    kernel_matrices,
    r_u,
    s_t_assemble,
    s_t_from_components,
)

ORACLE_TOLERANCE = 1e-7


@pytest.fixture
def ctx(shifted_params):
    return KernelContext.build(shifted_params)


@pytest.fixture
def skewed_ctx():
    return KernelContext.build(params_from_scaled(0.3, -0.4, -0.2, 0.3, 1.4))


def test_context_picks_admissible_delta(ctx):
    assert ctx.delta > ctx.params.delta_lower_bound
    assert ctx.first_shift == pytest.approx(ctx.params.xi1 + ctx.params.eta1 ** 2)


def test_context_rejects_explicit_delta_below_bound(origin_params):
    bad = origin_params.model_copy(update={"delta": -1.0})
    with pytest.raises(ParameterDomainError):
        KernelContext.build(bad)


def test_default_offsets_are_ordered(shifted_params):
    offsets = default_offsets(shifted_params)
    assert offsets.check(shifted_params.alpha) is offsets


def test_misordered_offsets_rejected(origin_params):
    offsets = ContourOffsets(D1=1.0, D2=0.5, D3=2.0, d1=0.5, d2=0.75, d3=2.0)
    with pytest.raises(ContourError):
        KernelContext.build(origin_params, offsets=offsets)


def test_s_plus_t_equals_s1_minus_t1(ctx):
    x = np.array([-3.0, -0.5, 0.7, 2.5])
    parts = kernel_matrices(ctx, x, x)
    S, T = s_t_from_components(parts, x, x)
    assert np.max(np.abs(S + T - (parts["S1"] - parts["T1"]))) < 1e-12


def test_s_t_assemble_uses_half_line_indicators(ctx):
    S, T = s_t_assemble(1.0, -1.0, ctx)
    expected_S = (kernel_component("S1", 1.0, -1.0, ctx) + kernel_component("S2", 1.0, -1.0, ctx)
                  - kernel_component("S3", 1.0, -1.0, ctx))
    assert S == pytest.approx(expected_S, abs=1e-13)
    assert S + T == pytest.approx(kernel_component("S1", 1.0, -1.0, ctx)
                                  - kernel_component("T1", 1.0, -1.0, ctx), abs=1e-13)


def test_unknown_component_rejected(ctx):
    with pytest.raises(ParameterDomainError):
        kernel_component("S9", 0.0, 0.0, ctx)


def test_r_u_pole_at_zero(ctx):
    with pytest.raises(PoleError):
        r_u(0, 0.1, 0.2, ctx)


def test_r_u_combines_s_and_t(ctx):
    S, T = s_t_assemble(-0.4, 0.9, ctx)
    assert r_u(2.0, -0.4, 0.9, ctx) == pytest.approx(S + T / 2.0)


def test_k_block_rows_scale_with_u(ctx):
    value = k_block(2.0 + 1.0j, -0.4, 0.9, ctx, row=Block.MINUS, col=Block.PLUS)
    assert value.entry(Block.PLUS, Block.PLUS) == pytest.approx((2.0 + 1.0j) * value.minus_plus)
    assert value.minus_minus == value.minus_plus


def test_k_block_indexing_error(ctx):
    with pytest.raises(IndexingError):
        k_block(2.0, 0.5, 0.1, ctx, row=Block.MINUS)


def test_k_form_assembly_pole(ctx):
    assembly = KFormAssembly(ctx, build_grid(6.0, 8))
    with pytest.raises(PoleError):
        assembly.kernel_values(0)


@pytest.mark.parametrize("x,y", [(-0.8, 0.6), (0.4, 1.2), (-1.5, -0.3)])
def test_s2_and_s3_match_contour_integrals(ctx, x, y):
    assert kernel_component("S2", x, y, ctx) == pytest.approx(s2_contour(x, y, ctx).real,
                                                              abs=ORACLE_TOLERANCE)
    assert kernel_component("S3", x, y, ctx) == pytest.approx(s3_contour(x, y, ctx).real,
                                                              abs=ORACLE_TOLERANCE)


@pytest.mark.slow
@pytest.mark.parametrize("x,y", [(-0.8, 0.6), (0.4, -1.2)])
def test_s1_and_t1_match_contour_integrals(skewed_ctx, x, y):
    assert kernel_component("S1", x, y, skewed_ctx) == pytest.approx(
        s1_contour(x, y, skewed_ctx).real, abs=ORACLE_TOLERANCE)
    assert kernel_component("T1", x, y, skewed_ctx) == pytest.approx(
        t1_contour(x, y, skewed_ctx).real, abs=ORACLE_TOLERANCE)


@pytest.mark.slow
def test_pole_residue_gives_s1_minus_t1(skewed_ctx):
    x, y = 0.3, -0.5
    difference = kernel_component("S1", x, y, skewed_ctx) - kernel_component("T1", x, y, skewed_ctx)
    assert difference == pytest.approx(s4_contour(x, y, skewed_ctx).real, abs=ORACLE_TOLERANCE)


@pytest.mark.parametrize("name", sorted(Q_CONTOURS))
@pytest.mark.parametrize("v1,v2", [(0.0, 0.5), (1.2, 0.3), (0.4, 0.4)])
def test_q_form_kernels_match_contour_integrals(ctx, name, v1, v2):
    oracle = Q_CONTOURS[name](v1, v2, ctx)
    assert abs(oracle.imag) < 1e-9 * max(1.0, abs(oracle.real))
    assert q_component(name, v1, v2, ctx) == pytest.approx(oracle.real, abs=ORACLE_TOLERANCE)


@pytest.mark.parametrize("name", sorted(Q_CONTOURS))
def test_q_form_kernels_match_contour_integrals_off_unit_alpha(skewed_ctx, name):
    oracle = Q_CONTOURS[name](0.7, 0.2, skewed_ctx)
    assert q_component(name, 0.7, 0.2, skewed_ctx) == pytest.approx(oracle.real, abs=ORACLE_TOLERANCE)


def test_q_form_rejects_negative_arguments(ctx):
    with pytest.raises(IndexingError):
        q_matrices(ctx, np.array([-0.1]), np.array([0.2]))


def test_q_form_unknown_component(ctx):
    with pytest.raises(ParameterDomainError):
        q_component("k9", 0.0, 0.0, ctx)


def test_q_coefficients_vanish_where_expected():
    coefficients = q_coefficients(1.0)
    assert coefficients["11"]["k1"] == 0
    assert coefficients["12"] == {"k3": 0, "k4": 0}
    assert coefficients["22"]["M1"] == 0
    with pytest.raises(PoleError):
        q_coefficients(0)


def test_q_block_is_linear_in_the_kernels(ctx):
    block = q_block(2.0, 0.3, 0.7, ctx)
    assert block["22"] == pytest.approx(-0.5 * q_component("M1", 0.3, 0.7, ctx))
    assert block["21"] == pytest.approx(0.5 * q_component("k6", 0.3, 0.7, ctx)
                                        - q_component("k7", 0.3, 0.7, ctx))


@pytest.mark.parametrize("u", [2.0, -2.0, 2.0j])
def test_q_determinant_does_not_depend_on_damping(ctx, u):
    v, w = half_line_rule(8.0, 24)
    base = QFormAssembly(ctx, v, w)
    shifted = QFormAssembly(ctx, v, w, damping=ctx.delta + 0.5)
    assert det_eval(base.matrix(u)) == pytest.approx(det_eval(shifted.matrix(u)), rel=1e-8, abs=1e-12)
