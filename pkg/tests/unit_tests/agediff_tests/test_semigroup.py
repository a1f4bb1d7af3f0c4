import numpy as np
import pytest
import agediff

def scalar_model( **kwargs ):
    args = dict( a_max = 2.0, n_age = 16, n_space = 1, bc = 'neumann', diffusion_enabled = False )
    args.update( kwargs )
    return agediff.model( **args )

def bump_model( **kwargs ):
    args = dict( n_age = 16, n_space = 4, mortality = { 'preset': 'constant', 'value': 0.2 },
        birth = { 'preset': 'gaussian_bump', 'amplitude': 2.0, 'age_center': 1.0, 'age_width': 0.3 } )
    args.update( kwargs )
    return agediff.model( **args )

def semigroup_of( model ):
    return agediff.semigroup( agediff.evolution( model ) )

def kernel( model, gamma = 1.0 ):
    return agediff.perturbation( model, kind = 'age_kernel', gamma = gamma,
        m = { 'preset': 'constant', 'value': 0.5 }, k = { 'preset': 'uniform', 'value': 1.0 } )

def test_transport_without_birth():
    model = scalar_model()
    semigroup = semigroup_of( model )
    u0 = agediff.AgeProfile( np.arange( 17.0 ), model.agrid )
    trajectory = semigroup.evolve( u0, 3 * model.agrid.spacing )
    assert len( trajectory ) == 4
    assert np.allclose( trajectory.final.values[3:, 0], np.arange( 14.0 ) )
    assert np.allclose( trajectory.final.values[:3, 0], 0.0 )
    assert np.allclose( trajectory.birth_history[1:], 0.0 )

def test_birth_law_after_each_step():
    model = bump_model()
    semigroup = semigroup_of( model )
    trajectory = semigroup.evolve( agediff.AgeProfile.ones( model.agrid, model.n_space ), model.agrid.a_max )
    for profile in trajectory.profiles[1:]:
        assert np.allclose( profile.values[0], semigroup.cache.birth_functional( profile.values ), rtol = 1e-12 )
    assert np.allclose( trajectory.birth_history[0], semigroup.cache.birth_functional( trajectory.profiles[0].values ) )

def test_semigroup_property():
    model = bump_model()
    semigroup = semigroup_of( model )
    u0 = agediff.AgeProfile( np.random.default_rng( 3 ).uniform( 0.0, 1.0, size = ( 17, 4 ) ), model.agrid )
    t1, t2 = 0.5, 0.75
    direct = semigroup.evolve( u0, t1 + t2 ).profiles[-1]
    halfway = semigroup.evolve( u0, t1 ).profiles[-1]
    composed = semigroup.evolve( halfway, t2 ).profiles[-1]
    assert np.allclose( composed.values, direct.values, rtol = 1e-12, atol = 1e-14 )

def test_profile_arithmetic():
    agrid = agediff.AgeGrid( 1.0, 2 )
    profile = agediff.AgeProfile( np.arange( 6.0 ).reshape( 3, 2 ), agrid )
    assert np.array_equal( ( 2.0 * profile - profile ).values, profile.values )
    assert profile.copy().values is not profile.values
    assert not hasattr( profile, 'at' ) and not hasattr( agediff.AgeProfile, 'from_function' )

def test_zero_horizon():
    model = bump_model()
    trajectory = semigroup_of( model ).evolve( agediff.AgeProfile.ones( model.agrid, model.n_space ), 0.0 )
    assert len( trajectory ) == 1
    assert trajectory.at_time( 0.0 ) is not None
    assert trajectory.at_time( 0.3 ) is None

def test_alignment_error():
    model = bump_model()
    with pytest.raises( agediff.semigroup.AlignmentError ):
        semigroup_of( model ).evolve( agediff.AgeProfile.ones( model.agrid, model.n_space ), 0.1 )

def test_domain_error():
    model = bump_model()
    with pytest.raises( agediff.semigroup.DomainError ):
        semigroup_of( model ).evolve( agediff.AgeProfile.ones( model.agrid, model.n_space ), -model.agrid.spacing )

def test_dimension_error():
    model = bump_model()
    with pytest.raises( agediff.model.DimensionError ):
        semigroup_of( model ).evolve( agediff.AgeProfile( np.ones( ( 17, 3 ) ) ), 0.0 )

def test_orbits_stay_positive():
    model = bump_model()
    semigroup = semigroup_of( model )
    rng = np.random.default_rng( 0 )
    for _ in range( 10 ):
        u0 = agediff.AgeProfile( rng.uniform( 0.0, 1.0, size = ( 17, 4 ) ), model.agrid )
        trajectory = semigroup.evolve( u0, model.agrid.a_max )
        assert all( model.cone_check( p ) for p in trajectory.profiles )

def test_growth_rate_matches_spectral_bound():
    model = scalar_model( n_age = 64, birth = { 'preset': 'constant', 'value': 1.0 } )
    cache = agediff.evolution( model )
    semigroup = agediff.semigroup( cache )
    trajectory = semigroup.evolve( agediff.AgeProfile.ones( model.agrid, 1 ), 20.0 )
    s = agediff.spectrum( agediff.resolvent( cache ) ).spectral_bound()
    assert abs( semigroup.growth_rate( trajectory ) - s ) < 1e-3

def test_zero_perturbation_is_plain_orbit():
    model = bump_model()
    semigroup = semigroup_of( model )
    u0 = agediff.AgeProfile.ones( model.agrid, model.n_space )
    none = agediff.perturbation( model )
    plain = semigroup.evolve( u0, 1.0 )
    perturbed = semigroup.evolve_perturbed( u0, 1.0, none )
    assert perturbed.perturbed
    assert np.allclose( plain.final.values, perturbed.final.values )
    assert semigroup.duhamel_residual( perturbed, none ) == 0.0

def test_positive_perturbation_dominates():
    model = bump_model()
    semigroup = semigroup_of( model )
    u0 = agediff.AgeProfile.ones( model.agrid, model.n_space )
    plain = semigroup.evolve( u0, model.agrid.a_max )
    perturbed = semigroup.evolve_perturbed( u0, model.agrid.a_max, kernel( model ) )
    for a, b in zip( plain.profiles, perturbed.profiles ):
        assert np.all( b.values >= a.values - 1e-12 )
    assert np.sum( perturbed.final.values ) > np.sum( plain.final.values )

def test_duhamel_residual_first_order():
    residuals = []
    for n_age in ( 16, 32 ):
        model = bump_model( n_age = n_age )
        semigroup = semigroup_of( model )
        pert = kernel( model )
        trajectory = semigroup.evolve_perturbed( agediff.AgeProfile.ones( model.agrid, model.n_space ), model.agrid.a_max, pert )
        residuals.append( semigroup.duhamel_residual( trajectory, pert ) )
    assert residuals[1] < residuals[0]
    assert residuals[0] < 0.5

def test_generator_residual_of_resolvent():
    model = bump_model()
    solver = agediff.resolvent( agediff.evolution( model ) )
    phi = agediff.AgeProfile.ones( model.agrid, model.n_space )
    psi = solver.apply( phi, 5.0 ).psi
    zeta = psi * 5.0 - phi
    assert solver.semigroup.generator_residual( psi, zeta ) < 1e-10
    assert solver.semigroup.generator_residual( psi, zeta * 2.0 ) > 1e-3

def test_generator_residual_with_shift():
    model = bump_model()
    solver = agediff.resolvent( agediff.evolution( model ) )
    phi = agediff.AgeProfile.ones( model.agrid, model.n_space )
    for lam in ( 5.0, 100.0 ):
        psi = solver.apply( phi, lam ).psi
        zeta = psi * lam - phi
        assert solver.semigroup.generator_residual( psi, zeta, shift = lam ) < 1e-10
    assert solver.semigroup.generator_residual( psi, psi * 100.0, shift = 100.0 ) > 1e-3

def test_laplace_transform_of_transport():
    # A = 0, b = 0, u0 = 1: int_0^T e^{-lt} u(t, a) dt = (1 - e^{-l a}) / l for a <= T.
    model = scalar_model( a_max = 1.0, n_age = 64 )
    semigroup = semigroup_of( model )
    trajectory = semigroup.evolve( agediff.AgeProfile.ones( model.agrid, 1 ), 1.0 )
    transform = semigroup.laplace_transform( trajectory, 1.0 )
    expected = 1.0 - np.exp( -model.agrid.nodes )
    errors = np.abs( transform.values[:, 0] - expected )
    # The sampled orbit jumps at t = a, so interior nodes carry a first-order quadrature error.
    assert np.max( errors ) <= model.agrid.spacing
    assert errors[-1] < 1e-4

if __name__ == "__main__":
    test_transport_without_birth()
