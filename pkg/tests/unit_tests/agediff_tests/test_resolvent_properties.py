import numpy as np
from hypothesis import given, settings, seed
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import agediff

N_AGE = 8
N_SPACE = 3

model = agediff.model( n_age = N_AGE, n_space = N_SPACE, mortality = { 'preset': 'constant', 'value': 0.2 },
    birth = { 'preset': 'gaussian_bump', 'amplitude': 2.0, 'age_center': 1.0, 'age_width': 0.4 } )
solver = agediff.resolvent( agediff.evolution( model ) )
LAMBDA = 3.0

profiles = arrays(
    np.float64,
    ( N_AGE + 1, N_SPACE ),
    elements = st.floats( min_value = 0.0, max_value = 10.0 ),
)

@seed(1)
@settings( max_examples = 50, deadline = None )
@given( values = profiles )
def test_resolvent_is_positive( values ):
    psi = solver.apply( agediff.AgeProfile( values, model.agrid ), LAMBDA, strict = False ).psi
    assert model.cone_check( psi )

@seed(1)
@settings( max_examples = 50, deadline = None )
@given( first = profiles, second = profiles, scale = st.floats( min_value = -5.0, max_value = 5.0 ) )
def test_resolvent_is_linear( first, second, scale ):
    combined = solver.solve_values( LAMBDA, scale * first + second )[0]
    separate = scale * solver.solve_values( LAMBDA, first )[0] + solver.solve_values( LAMBDA, second )[0]
    assert np.allclose( combined, separate, rtol = 1e-10, atol = 1e-9 )

@seed(1)
@settings( max_examples = 25, deadline = None )
@given( lam = st.floats( min_value = 0.0, max_value = 1000.0 ) )
def test_birth_matrix_is_nonnegative( lam ):
    q = solver.birth_matrix( lam )
    assert np.all( q >= 0.0 )
    assert model.operator_norm( q ) >= model.operator_norm( solver.birth_matrix( lam + 1.0 ) )

@seed(1)
@settings( max_examples = 25, deadline = None )
@given( values = profiles, lam = st.floats( min_value = LAMBDA, max_value = 500.0 ) )
def test_resolvent_is_positive_for_large_lambda( values, lam ):
    result = solver.apply( agediff.AgeProfile( values, model.agrid ), lam, strict = False )
    assert model.cone_check( result.psi )
    if np.any( values > 0 ):
        assert result.certified
