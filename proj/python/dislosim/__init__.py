"""Dislocation density dynamics: spectral Groma-Balogh transport on the
torus, the 1D translation-invariant submodel, the regularized GCZ slab and
lifted transport of curves moving by normal velocity."""

from dislosim._core import (  # noqa: F401
    # material constants and the Volterra kernel
    ElasticConstants,
    derive_constants,
    sigma0,
    full_stress,
    # spectral operators on the unit torus
    riesz_transform,
    sigma12_from_rho_diff,
    antiderivative_x1,
    zygmund_norm,
    # microscopic signed-particle dynamics
    ParticleSystem,
    pairwise_velocity,
    step_particles,
    empirical_density,
    # periodic 2D Groma-Balogh transport
    GBState,
    make_gb_state,
    random_smooth_state,
    compute_stress,
    stress_from_densities,
    gb_step,
    entropy,
    entropy_budget,
    # 1D nonlocal submodel
    Sub1DState,
    random_monotone_state,
    velocity_field,
    sub1d_step,
    comparison_check,
    # regularized GCZ slab
    SlabState1D,
    GczDiagnostics,
    GczRunOptions,
    GczRunResult,
    gaussian_bump_state,
    linear_kappa_state,
    back_stress,
    step_regularized,
    monitor_lower_bound,
    displacement,
    gcz_evolve,
    run_to_steady,
    # curve front tracking and lifted measures
    Curve,
    VelocityField,
    constant_velocity,
    linear_velocity_x1,
    evolve_curve,
    LiftedSample,
    LiftedMeasure,
    lift_measures,
    TestFunction,
    default_test_family,
    compatibility_residual,
    transport_residual,
    # configuration and orchestration
    SimConfig,
    parse_config,
    run_simulation,
    __version__,
)
