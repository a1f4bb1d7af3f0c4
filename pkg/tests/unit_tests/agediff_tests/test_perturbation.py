import numpy as np
import pytest
import agediff

def test_default_is_zero():
    model = agediff.model( n_age = 8, n_space = 3 )
    pert = agediff.perturbation( model )
    assert pert.is_zero()
    assert pert.norm_bound() == 0.0
    assert np.allclose( pert.apply( np.ones( ( 9, 3 ) ) ), 0.0 )
    print( pert )

def test_uniform_kernel():
    model = agediff.model( n_age = 8, n_space = 3 )
    pert = agediff.perturbation( model, kind = 'age_kernel', gamma = 2.0,
        m = { 'preset': 'constant', 'value': 0.5 }, k = { 'preset': 'uniform', 'value': 1.0 } )
    assert not pert.is_zero()
    assert np.allclose( pert.matrix(), np.tile( model.agrid.weights, ( 9, 1 ) ) )
    assert np.allclose( pert.apply( np.ones( ( 9, 3 ) ) ), model.agrid.a_max )
    assert np.isclose( pert.norm_bound(), 2.0 * 0.5 * 1.0 * model.agrid.a_max )

def test_gaussian_kernel():
    model = agediff.model( n_age = 8, n_space = 2 )
    pert = agediff.perturbation( model, kind = 'age_kernel',
        m = { 'preset': 'constant', 'value': 1.0 }, k = { 'preset': 'gaussian', 'value': 3.0, 'width': 0.5 } )
    assert np.allclose( pert.k_values.diagonal(), 3.0 )
    assert np.allclose( pert.k_values, pert.k_values.T )
    assert np.isclose( pert.k_values[0, 2], 3.0 * np.exp( -0.5 ) )

def test_age_dependent_factor():
    model = agediff.model( n_age = 4, n_space = 2 )
    pert = agediff.perturbation( model, kind = 'age_kernel',
        m = { 'preset': 'separable', 'scale': 1.0, 'age_lo': 1.0 }, k = { 'preset': 'uniform' } )
    assert np.allclose( pert.m_values, [ 0.0, 0.0, 1.0, 1.0, 1.0 ] )
    assert np.allclose( pert.apply( np.ones( ( 5, 2 ) ) )[:2], 0.0 )

def test_scaled_and_on_grid():
    model = agediff.model( n_age = 8, n_space = 2 )
    pert = agediff.perturbation( model, kind = 'age_kernel', m = { 'preset': 'constant', 'value': 1.0 } )
    assert np.allclose( pert.scaled( 3.0 ).matrix(), 3.0 * pert.matrix() )
    fine = pert.on_grid( agediff.AgeGrid( 2.0, 16 ) )
    assert fine.matrix().shape == ( 17, 17 )
    assert np.isclose( fine.norm_bound(), pert.norm_bound() )

def test_negative_factor_rejected():
    model = agediff.model( n_age = 8, n_space = 2 )
    with pytest.raises( agediff.model.InvalidCoefficient, match = 'negative' ):
        agediff.perturbation( model, kind = 'age_kernel', m = { 'preset': 'constant', 'value': -1.0 } )
    signed = agediff.perturbation( model, kind = 'age_kernel', positive = False, m = { 'preset': 'constant', 'value': -1.0 } )
    assert np.all( signed.matrix() <= 0.0 )

def test_negative_gamma_rejected():
    model = agediff.model( n_age = 8, n_space = 2 )
    with pytest.raises( agediff.config.ValidationError, match = 'perturbation.gamma' ):
        agediff.perturbation( model, kind = 'age_kernel', gamma = -1.0 )

def test_unknown_kind():
    model = agediff.model( n_age = 8, n_space = 2 )
    with pytest.raises( agediff.config.ValidationError, match = 'perturbation.kind' ):
        agediff.perturbation( model, kind = 'spatial' )

def test_unknown_kernel_parameter():
    model = agediff.model( n_age = 8, n_space = 2 )
    with pytest.raises( agediff.config.ValidationError, match = 'perturbation.k.width' ):
        agediff.perturbation( model, kind = 'age_kernel', k = { 'preset': 'uniform', 'width': 1.0 } )

def test_named_sections():
    config = agediff.config.full()
    config.perturbation_local = agediff.perturbation.config( section = 'perturbation_local' ).perturbation_local
    config.perturbation_local.kind = 'age_kernel'
    config.perturbation_local.gamma = 0.25
    assert agediff.perturbation.sections( config ) == [ 'perturbation', 'perturbation_local' ]
    model = agediff.model( config = config, n_age = 8, n_space = 2 )
    pert = agediff.perturbation( model, config = config, section = 'perturbation_local' )
    assert pert.gamma == 0.25
    assert np.allclose( pert.m_values, 1.0 )
    with pytest.raises( agediff.config.ValidationError, match = 'perturbation_other' ):
        agediff.perturbation( model, config = config, section = 'perturbation_other' )

if __name__ == "__main__":
    test_uniform_kernel()
