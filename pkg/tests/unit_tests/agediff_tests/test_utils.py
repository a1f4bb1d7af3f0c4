import json
import numpy as np
import pandas as pd
import pytest

import agediff
import agediff.utils.codes as code_utils
import agediff.utils.io_utils as io_utils
from agediff.utils.linalg_utils import power_iteration, dominant_eigenvalues, sort_spectrum, observed_order

def test_exception_to_code():
    assert code_utils.exception_to_code( agediff.resolvent.NearSpectrumError( 'near' ) ) == 2
    assert code_utils.exception_to_code( agediff.config.ValidationError( 'model.n_age' ) ) == 3
    assert code_utils.exception_to_code( agediff.config.InvalidConfigFile( 'bad' ) ) == 3
    assert code_utils.exception_to_code( agediff.semigroup.AlignmentError( 't' ) ) == 3
    assert code_utils.exception_to_code( agediff.model.DimensionError( 'shape' ) ) == 3
    assert code_utils.exception_to_code( agediff.spectrum.SizeError( 'big' ) ) == 3
    assert code_utils.exception_to_code( agediff.evolution.StepConstructionError( 'step' ) ) == 4
    assert code_utils.exception_to_code( agediff.resolvent.InternalInconsistencyError( 'residual' ) ) == 4
    assert code_utils.exception_to_code( RuntimeError( 'other' ) ) == 4

def test_code_strings():
    assert code_utils.code_to_string( code_utils.SUCCESS ) == 'Success'
    assert code_utils.code_to_string( code_utils.VERIFY_FAILED ) == 'VerifyFailed'
    assert code_utils.code_to_string( 42 ) == 'UnknownCode'

def test_code_helpers():
    assert code_utils.code_to_loguru_color( code_utils.SUCCESS ) == 'green'
    assert not hasattr( code_utils, 'code_to_color' )

def test_error_record( capsys ):
    record = agediff.logging.error_record( 3, agediff.config.ValidationError( 'model.n_age must be a positive integer' ) )
    err = capsys.readouterr().err
    assert err.strip() == record
    parsed = json.loads( record )
    assert parsed['code'] == 3
    assert parsed['error'] == 'ValidationError'
    assert parsed['message'].startswith( 'model.n_age' )

def test_profile_csv( tmp_path ):
    agrid = agediff.AgeGrid( 2.0, 4 )
    values = np.arange( 15.0 ).reshape( 5, 3 ) / 7.0
    path = str( tmp_path / 'profile.csv' )
    io_utils.write_profile( agediff.AgeProfile( values, agrid ), path )
    with open( path ) as f:
        assert f.readline() == '# agediff age-profile v1\n'
        assert f.readline().strip() == 'age_index,x_index,value'
    profile = io_utils.read_profile( path, agrid, 3 )
    assert np.array_equal( profile.values, values )
    assert profile.agrid == agrid

def test_profile_csv_is_bit_exact( tmp_path ):
    agrid = agediff.AgeGrid( 1.0, 16 )
    values = np.random.default_rng( 5 ).lognormal( 0.0, 3.0, size = ( 17, 4 ) )
    values[0, 0] = np.nextafter( 0.1, 1.0 )
    path = str( tmp_path / 'profile.csv' )
    io_utils.write_profile( agediff.AgeProfile( values, agrid ), path )
    assert np.array_equal( io_utils.read_profile( path, agrid, 4 ).values, values )

def test_profile_csv_wrong_grid( tmp_path ):
    path = str( tmp_path / 'profile.csv' )
    io_utils.write_profile( agediff.AgeProfile.ones( agediff.AgeGrid( 2.0, 4 ), 3 ), path )
    with pytest.raises( agediff.model.DimensionError ):
        io_utils.read_profile( path, agediff.AgeGrid( 2.0, 8 ), 3 )

def test_profile_csv_missing_header( tmp_path ):
    path = tmp_path / 'profile.csv'
    path.write_text( 'age_index,x_index,value\n0,0,1.0\n' )
    with pytest.raises( agediff.config.ValidationError, match = 'header' ):
        io_utils.read_profile( str( path ), agediff.AgeGrid( 1.0, 1 ), 1 )

def test_profile_csv_missing_file( tmp_path ):
    with pytest.raises( agediff.config.ValidationError, match = 'does not exist' ):
        io_utils.read_profile( str( tmp_path / 'missing.csv' ), agediff.AgeGrid( 1.0, 1 ), 1 )

def test_trajectory_csv( tmp_path ):
    model = agediff.model( n_age = 4, n_space = 2, birth = { 'preset': 'constant', 'value': 0.5 } )
    semigroup = agediff.semigroup( agediff.evolution( model ) )
    trajectory = semigroup.evolve( agediff.AgeProfile.ones( model.agrid, 2 ), 1.0 )
    path = str( tmp_path / 'trajectory.csv' )
    io_utils.write_trajectory( trajectory, path )
    frame = pd.read_csv( path, comment = '#' )
    assert list( frame.columns ) == io_utils.TRAJECTORY_COLUMNS
    assert len( frame ) == len( trajectory ) * 5 * 2
    births = str( tmp_path / 'births.csv' )
    io_utils.write_birth_history( trajectory, births )
    assert len( pd.read_csv( births, comment = '#' ) ) == len( trajectory ) * 2

def test_json_is_deterministic( tmp_path ):
    report = agediff.SpectralReport( s_bound = 0.25, char_values = [ ( 0.0, 1.5 ), ( 1.0, 0.5 ) ] ).to_dict()
    first = str( tmp_path / 'a.json' )
    second = str( tmp_path / 'b.json' )
    io_utils.write_json( report, first )
    io_utils.write_json( report, second )
    assert open( first ).read() == open( second ).read()
    assert json.load( open( first ) )['char_values'] == [ [ 0.0, 1.5 ], [ 1.0, 0.5 ] ]

def test_power_iteration():
    matrix = np.array([ [ 2.0, 1.0 ], [ 1.0, 2.0 ] ])
    result = power_iteration( lambda v: matrix @ v, np.array([ 1.0, 0.0 ]) )
    assert result.converged
    assert np.isclose( result.value, 3.0 )
    assert np.allclose( result.vector, [ 0.5, 0.5 ] )
    zero = power_iteration( lambda v: 0.0 * v, np.ones( 2 ) )
    assert zero.converged and zero.value == 0.0
    with pytest.raises( ValueError ):
        power_iteration( lambda v: v, np.zeros( 2 ) )

def test_dominant_eigenvalues():
    values = dominant_eigenvalues( np.diag([ 1.0, -3.0, 2.0 ]), 2 )
    assert np.allclose( values, [ -3.0, 2.0 ] )

def test_sort_spectrum():
    values = sort_spectrum( np.array([ -1.0, 2.0 - 1.0j, 2.0 + 1.0j, 0.5 ]) )
    assert np.allclose( values, [ 2.0 + 1.0j, 2.0 - 1.0j, 0.5, -1.0 ] )

def test_observed_order():
    assert np.isclose( observed_order( [ 1e-2, 2.5e-3, 6.25e-4 ] ), 2.0 )
    assert np.isclose( observed_order( [ 1e-2, 5e-3, 1.25e-3 ] ), 1.0 )
    assert observed_order( [ 1e-2 ] ) == float('inf')

if __name__ == "__main__":
    test_power_iteration()
