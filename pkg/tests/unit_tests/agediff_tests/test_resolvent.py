import numpy as np
import pytest
import agediff

def scalar_model( **kwargs ):
    args = dict( a_max = 2.0, n_age = 64, n_space = 1, bc = 'neumann', diffusion_enabled = False )
    args.update( kwargs )
    return agediff.model( **args )

def bump_model( **kwargs ):
    args = dict( n_age = 16, n_space = 4, mortality = { 'preset': 'constant', 'value': 0.2 },
        birth = { 'preset': 'gaussian_bump', 'amplitude': 2.0, 'age_center': 1.0, 'age_width': 0.3 } )
    args.update( kwargs )
    return agediff.model( **args )

def solver_of( model, **kwargs ):
    return agediff.resolvent( agediff.evolution( model ), **kwargs )

def kernel( model ):
    return agediff.perturbation( model, kind = 'age_kernel',
        m = { 'preset': 'constant', 'value': 0.5 }, k = { 'preset': 'gaussian', 'value': 1.0, 'width': 0.5 } )

def test_create():
    global solver
    solver = solver_of( bump_model() )
    print( solver )

def test_no_birth_gives_zero_birth_matrix():
    solver = solver_of( bump_model( birth = { 'preset': 'constant', 'value': 0.0 } ) )
    assert np.all( solver.birth_matrix( 1.0 ) == 0.0 )

def test_scalar_birth_matrix():
    # Q_lambda = beta (1 - exp(-lambda a_max)) / lambda for A = 0, beta constant.
    solver = solver_of( scalar_model( birth = { 'preset': 'constant', 'value': 1.0 } ) )
    for lam in ( 0.5, 1.0, 3.0 ):
        q = solver.birth_matrix( lam )
        assert q.shape == ( 1, 1 )
        assert abs( q[0, 0] - ( 1.0 - np.exp( -2.0 * lam ) ) / lam ) < 1e-3

def test_birth_matrix_decreases_in_lambda():
    solver = solver_of( bump_model() )
    radii = [ np.max( np.abs( np.linalg.eigvals( solver.birth_matrix( lam ) ) ) ) for lam in ( 0.0, 1.0, 10.0 ) ]
    assert radii[0] > radii[1] > radii[2] > 0.0

def test_birth_matrix_for_large_lambda():
    model = bump_model()
    solver = solver_of( model )
    norms = []
    for lam in ( 10.0, 100.0, 1000.0 ):
        q = solver.birth_matrix( lam )
        assert np.all( q >= 0.0 )
        norms.append( model.operator_norm( q ) )
    assert norms[0] > norms[1] > norms[2] > 0.0

def test_apply_for_large_lambda():
    model = bump_model()
    solver = solver_of( model )
    values = np.zeros( ( model.agrid.n_nodes, model.n_space ) )
    values[3] = 1.0
    result = solver.apply( agediff.AgeProfile( values, model.agrid ), 100.0 )
    assert result.certified
    assert model.cone_check( result.psi )
    assert np.max( result.psi.values ) > 0.0
    shifted = solver.cache.apply_pi_shifted( 100.0, 5, 0, np.ones( model.n_space ) )
    assert np.all( shifted >= 0.0 )
    assert np.all( shifted <= 1.0 )

def test_closed_form_without_birth():
    # b = 0, A = 0, phi = 1, lambda = 1: psi(a) = 1 - exp(-a).
    model = scalar_model( a_max = 1.0 )
    result = solver_of( model ).apply( agediff.AgeProfile.ones( model.agrid, 1 ), 1.0 )
    assert result.certified
    assert result.path == 'direct'
    assert np.max( np.abs( result.psi.values[:, 0] - ( 1.0 - np.exp( -model.agrid.nodes ) ) ) ) < 1e-4
    assert np.allclose( result.psi0, 0.0 )

def test_apply_certifies():
    model = bump_model()
    result = solver_of( model ).apply( agediff.AgeProfile.ones( model.agrid, model.n_space ), 2.0 )
    assert result.certified
    assert result.certified_residual <= 1e-8
    assert np.isfinite( result.condition ) and result.condition >= 1.0
    assert model.cone_check( result.psi )

def test_birth_law_of_result():
    model = bump_model()
    solver = solver_of( model )
    psi = solver.apply( agediff.AgeProfile.ones( model.agrid, model.n_space ), 2.0 ).psi
    assert np.allclose( psi.values[0], solver.cache.birth_functional( psi.values ) )

def test_factorization_is_memoized():
    solver = solver_of( bump_model() )
    assert solver.factorize( 1.5 ) is solver.factorize( 1.5 )

def test_near_spectrum():
    model = scalar_model( birth = { 'preset': 'constant', 'value': 1.0 } )
    solver = solver_of( model, cond_max = 1e6 )
    s = agediff.spectrum( solver ).spectral_bound()
    with pytest.raises( agediff.resolvent.NearSpectrumError ) as info:
        solver.apply( agediff.AgeProfile.ones( model.agrid, 1 ), s )
    assert info.value.lam == s
    assert info.value.condition > 1e6

def test_dimension_error():
    solver = solver_of( bump_model() )
    with pytest.raises( agediff.model.DimensionError ):
        solver.apply( agediff.AgeProfile( np.ones( ( 17, 2 ) ) ), 1.0 )

def test_resolvent_identity():
    model = bump_model()
    solver = solver_of( model )
    phi = agediff.AgeProfile.ones( model.agrid, model.n_space )
    lam, nu = 2.0, 3.0
    r_lam = solver.apply( phi, lam ).psi
    r_nu = solver.apply( phi, nu ).psi
    composed = solver.apply( r_nu, lam ).psi
    defect = ( r_lam - r_nu ) - composed * ( nu - lam )
    assert model.profile_norm( defect ) <= 1e-9 * model.profile_norm( r_lam )

def test_matches_full_node_solve():
    model = bump_model( bc = 'robin', robin_coeff = 0.5 )
    solver = solver_of( model )
    values = np.random.default_rng( 0 ).uniform( 0.0, 1.0, size = ( 17, 4 ) )
    psi = solver.apply( agediff.AgeProfile( values, model.agrid ), 1.5 ).psi.values
    full, condition = agediff.spectrum.full_node_solve( solver.cache, 1.5, values )
    assert np.allclose( full, psi, rtol = 1e-10, atol = 1e-12 )
    assert condition >= 1.0

def test_perturbed_neumann_path():
    model = bump_model()
    solver = solver_of( model )
    pert = kernel( model )
    phi = agediff.AgeProfile.ones( model.agrid, model.n_space )
    result = solver.apply_perturbed( phi, 3.0, pert )
    assert result.path == 'neumann'
    assert result.certified
    assert result.iterations >= 1
    full, _ = agediff.spectrum.full_node_solve( solver.cache, 3.0, phi.values, pert = pert )
    assert np.allclose( result.psi.values, full, rtol = 1e-9, atol = 1e-12 )
    plain = solver.apply( phi, 3.0 ).psi.values
    assert np.all( result.psi.values >= plain - 1e-12 )

def test_neumann_ratios_are_bounded_by_the_perturbation_norm():
    model = bump_model( bc = 'neumann' )
    solver = solver_of( model )
    pert = kernel( model )
    result = solver.apply_perturbed( agediff.AgeProfile.ones( model.agrid, model.n_space ), 3.0, pert )
    assert result.path == 'neumann'
    assert len( result.ratios ) >= 2
    bound = solver.perturbation_norm( 3.0, pert )
    # later ratios compare differences near round-off
    for ratio in result.ratios[:3]:
        assert ratio <= bound * ( 1 + 1e-9 )

def test_perturbed_dense_fallback():
    model = bump_model()
    pert = kernel( model )
    phi = agediff.AgeProfile.ones( model.agrid, model.n_space )
    neumann = solver_of( model ).apply_perturbed( phi, 3.0, pert )
    dense = solver_of( model, neumann_max_iter = 1 ).apply_perturbed( phi, 3.0, pert )
    assert dense.path == 'dense'
    assert dense.certified
    assert np.allclose( dense.psi.values, neumann.psi.values, rtol = 1e-9, atol = 1e-12 )

def test_zero_perturbation_is_direct():
    model = bump_model()
    solver = solver_of( model )
    phi = agediff.AgeProfile.ones( model.agrid, model.n_space )
    result = solver.apply_perturbed( phi, 2.0, agediff.perturbation( model ) )
    assert result.path == 'direct'

def test_perturbation_norm():
    model = bump_model( bc = 'neumann' )
    solver = solver_of( model )
    pert = kernel( model )
    norm = solver.perturbation_norm( 3.0, pert )
    assert 0.0 < norm < 1.0
    phi = agediff.AgeProfile.ones( model.agrid, model.n_space )
    image = agediff.AgeProfile( pert.apply( solver.apply( phi, 3.0 ).psi.values ), model.agrid )
    assert model.profile_norm( image ) <= norm * model.profile_norm( phi ) * ( 1 + 1e-12 )

def test_validation():
    cache = agediff.evolution( bump_model() )
    with pytest.raises( agediff.config.ValidationError, match = 'numerics.tol_res' ):
        agediff.resolvent( cache, tol_res = -1.0 )
    with pytest.raises( agediff.config.ValidationError, match = 'numerics.cond_max' ):
        agediff.resolvent( cache, cond_max = 0.5 )

if __name__ == "__main__":
    test_create()
    test_resolvent_identity()
