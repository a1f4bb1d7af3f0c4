import numpy as np
import pytest
import agediff

def scalar_model( **kwargs ):
    args = dict( a_max = 2.0, n_age = 16, n_space = 1, bc = 'neumann', diffusion_enabled = False )
    args.update( kwargs )
    return agediff.model( **args )

def test_create():
    global cache
    cache = agediff.evolution( agediff.model( n_age = 16, n_space = 6 ) )
    assert cache.steps.shape == ( 16, 6, 6 )
    assert cache.positive
    print( cache )

def test_rational_factor():
    assert agediff.evolution.rational_factor( 0.0 ) == 1.0
    assert agediff.evolution.rational_factor( 2.0 ) == 0.0
    z = np.linspace( 0.0, 0.1, 5 )
    assert np.allclose( agediff.evolution.rational_factor( z ), np.exp( -z ), atol = 1e-4 )

def test_shift_coefficients_trapezoid_range():
    da = 0.1
    z = np.linspace( -1.5, 1.0, 11 )
    coefficients = agediff.evolution.shift_coefficients( z, da )
    assert not np.any( coefficients.split )
    assert np.allclose( coefficients.factors, agediff.evolution.rational_factor( z ) )
    assert np.allclose( coefficients.head, 0.5 * da / ( 1.0 + 0.5 * z ) )
    assert np.allclose( coefficients.tail, coefficients.head )

def test_shift_coefficients_stay_positive_for_stiff_shifts():
    z = np.linspace( 0.0, 20.0, 401 )
    coefficients = agediff.evolution.shift_coefficients( z, 0.1 )
    assert np.all( coefficients.split == ( z > 1.0 ) )
    assert np.all( coefficients.factors > 0.0 )
    assert np.all( np.diff( coefficients.factors ) < 0.0 )
    assert np.all( coefficients.head > 0.0 ) and np.all( coefficients.tail > 0.0 )
    edge = agediff.evolution.shift_coefficients( [ 1.0, 1.0 + 1e-9 ], 0.1 ).factors
    assert abs( edge[0] - edge[1] ) < 1e-8
    # rational_factor alone changes sign past z = 2
    assert agediff.evolution.rational_factor( 3.0 ) < 0.0

def test_scalar_steps_are_rational_factors():
    model = scalar_model( mortality = { 'preset': 'constant', 'value': 0.5 } )
    cache = agediff.evolution( model )
    factor = agediff.evolution.rational_factor( 0.5 * model.agrid.spacing )
    for i in range( model.n_age + 1 ):
        assert np.isclose( cache.product( i, 0 )[0, 0], factor ** i )
    assert np.allclose( cache.mortality_levels, 0.5 )

def test_identity_on_diagonal():
    cache = agediff.evolution( agediff.model( n_age = 8, n_space = 4 ) )
    for i in range( 9 ):
        assert np.allclose( cache.product( i, i ), np.eye( 4 ) )

def test_causality():
    cache = agediff.evolution( agediff.model( n_age = 8, n_space = 4 ) )
    with pytest.raises( agediff.evolution.CausalityError ):
        cache.product( 1, 2 )
    with pytest.raises( agediff.evolution.CausalityError ):
        cache.apply_pi( 9, 0, np.ones( 4 ) )

def test_evolution_property():
    model = agediff.model( n_age = 16, n_space = 6, bc = 'robin', robin_coeff = 0.5,
        mortality = { 'preset': 'gaussian_bump', 'base': 0.1, 'amplitude': 0.5, 'age_center': 1.0, 'age_width': 0.4 } )
    cache = agediff.evolution( model )
    for i, j, k in [ ( 16, 8, 0 ), ( 10, 3, 1 ), ( 12, 12, 5 ), ( 7, 2, 2 ) ]:
        assert np.allclose( cache.product( i, j ) @ cache.product( j, k ), cache.product( i, k ), rtol = 1e-13, atol = 1e-13 )

def test_apply_matches_product():
    cache = agediff.evolution( agediff.model( n_age = 8, n_space = 4 ) )
    v = np.arange( 4.0 )
    assert np.allclose( cache.apply_pi( 6, 2, v ), cache.product( 6, 2 ) @ v )

def test_positive_steps():
    model = agediff.model( n_age = 8, n_space = 12, diffusion = { 'preset': 'constant', 'value': 5.0 } )
    cache = agediff.evolution( model, substeps = 1 )
    assert np.all( cache.steps >= -model.tol_pos )
    assert np.max( cache.interval_substeps ) > 1

def test_raised_substeps_rebuild_the_operators():
    model = agediff.model( n_age = 8, n_space = 12, diffusion = { 'preset': 'constant', 'value': 5.0 } )
    cache = agediff.evolution( model, substeps = 1 )
    for i in range( model.n_age ):
        substeps = int( cache.interval_substeps[i] )
        operators, dt = cache._interval_operators( i, substeps )
        assert len( operators ) == substeps
        assert np.isclose( dt * substeps, model.agrid.spacing )
        expected = np.eye( 12 )
        for op in operators:
            expected = np.linalg.solve( np.eye( 12 ) - 0.5 * dt * op, ( np.eye( 12 ) + 0.5 * dt * op ) @ expected )
        assert np.allclose( cache.propagators[i], expected, rtol = 1e-10, atol = 1e-13 )

def test_shift_equals_mortality_shift():
    model = agediff.model( n_age = 16, n_space = 5, mortality = { 'preset': 'constant', 'value': 0.2 } )
    shifted = agediff.model( n_age = 16, n_space = 5, mortality = { 'preset': 'constant', 'value': 0.7 } )
    cache = agediff.evolution( model )
    shifted_cache = agediff.evolution( shifted )
    v = np.linspace( 0.0, 1.0, 5 )
    assert np.allclose( cache.apply_pi_shifted( 0.5, 12, 3, v ), shifted_cache.apply_pi( 12, 3, v ), rtol = 1e-12, atol = 1e-14 )

def test_step_construction_error():
    model = scalar_model( n_age = 4, mortality = { 'preset': 'constant', 'value': 100.0 } )
    with pytest.raises( agediff.evolution.StepConstructionError, match = 'model.n_age' ):
        agediff.evolution( model )

def test_birth_at_origin_too_large():
    model = scalar_model( n_age = 4, birth = { 'preset': 'constant', 'value': 10.0 } )
    with pytest.raises( agediff.evolution.StepConstructionError ):
        agediff.evolution( model )

def test_march_without_forcing():
    model = scalar_model( mortality = { 'preset': 'constant', 'value': 0.25 } )
    cache = agediff.evolution( model )
    values = cache.march( 1.0, np.ones( 1 ) )
    factor = agediff.evolution.rational_factor( 1.25 * model.agrid.spacing )
    assert np.allclose( values[:, 0], factor ** np.arange( model.agrid.n_nodes ) )

def test_march_forcing_trapezoid():
    # psi' = -psi + 1, psi(0) = 0 has psi(a) = 1 - exp(-a).
    model = scalar_model( a_max = 1.0, n_age = 64 )
    cache = agediff.evolution( model )
    forcing = np.ones( ( model.agrid.n_nodes, 1 ) )
    values = cache.march( 1.0, np.zeros( 1 ), forcing )
    assert np.max( np.abs( values[:, 0] - ( 1.0 - np.exp( -model.agrid.nodes ) ) ) ) < 1e-4

def test_birth_functional():
    model = scalar_model( birth = { 'preset': 'constant', 'value': 2.0 } )
    cache = agediff.evolution( model )
    values = np.ones( ( model.agrid.n_nodes, 1 ) )
    assert np.allclose( cache.birth_functional( values ), 4.0 )

def test_fit_estimate():
    model = agediff.model( n_age = 16, n_space = 4, mortality = { 'preset': 'constant', 'value': 0.5 } )
    cache = agediff.evolution( model )
    fit = cache.fit_estimate( sample_size = 50, seed = 1 )
    assert fit.m0 >= 1.0
    assert fit.varpi < 0.0
    assert len( fit.samples ) == 50
    for i in range( 1, 17 ):
        for j in range( i ):
            lag = model.agrid.nodes[i] - model.agrid.nodes[j]
            assert model.operator_norm( cache.product( i, j ) ) <= fit.m0 * np.exp( fit.varpi * lag ) * ( 1 + 1e-12 )

def test_fit_estimate_rate_is_the_mortality():
    model = agediff.model( n_age = 16, n_space = 4, bc = 'neumann', mortality = { 'preset': 'constant', 'value': 0.5 } )
    cache = agediff.evolution( model )
    fit = cache.fit_estimate( sample_size = 40, seed = 1 )
    assert fit.varpi == pytest.approx( -0.5, rel = 0.02 )
    for a_i, a_j, norm in cache.fit_estimate( sample_size = 40, seed = 7 ).samples:
        assert norm <= fit.m0 * np.exp( fit.varpi * ( a_i - a_j ) ) * ( 1 + 1e-12 )

def test_shifted_transport_decays_by_exp_lambda():
    errors = []
    for n_age in ( 16, 32 ):
        model = scalar_model( n_age = n_age )
        cache = agediff.evolution( model )
        v = np.array([ 2.0 ])
        i = model.agrid.index_of( 1.0 )
        shifted = cache.apply_pi_shifted( 1.0, i, 0, v )
        errors.append( abs( shifted[0] - 2.0 * np.exp( -1.0 ) ) )
        assert errors[-1] <= model.agrid.spacing ** 2
    assert errors[1] < errors[0] / 3.5

def test_fit_estimate_transport():
    cache = agediff.evolution( scalar_model() )
    fit = cache.fit_estimate()
    assert fit.m0 == 1.0
    assert fit.varpi == 0.0

def test_validation_substeps():
    with pytest.raises( agediff.config.ValidationError, match = 'numerics.substeps' ):
        agediff.evolution( agediff.model(), substeps = 0 )

if __name__ == "__main__":
    test_create()
    test_evolution_property()
