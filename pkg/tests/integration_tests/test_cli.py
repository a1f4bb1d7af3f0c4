import os
import json

import pandas as pd
import pytest

import agediff

CONFIGS = os.path.join( os.path.dirname( os.path.abspath( __file__ ) ), '..', '..', 'configs' )
SCALAR_LOTKA = os.path.join( CONFIGS, 'scalar_lotka.yaml' )

def error_record( capsys ) -> dict:
    lines = [ line for line in capsys.readouterr().err.splitlines() if line.startswith( '{"code"' ) ]
    assert len( lines ) == 1
    return json.loads( lines[0] )

def test_spectral_bound_scalar_lotka( tmp_path ):
    code = agediff.cli.main( [ 'spectral-bound', '--config', SCALAR_LOTKA, '--output', str( tmp_path ) ] )
    assert code == 0
    report = json.load( open( tmp_path / 'spectral_bound.json' ) )
    assert list( report.keys() )[:3] == [ 'version', 's_bound', 'bracket' ]
    assert 0.79 < report['s_bound'] < 0.80
    assert abs( report['richardson'] - agediff._executor.verify_impl.lotka_root( 1.0, 0.0, 2.0 ) ) < 1e-6
    char_values = pd.read_csv( tmp_path / 'char_values.csv', comment = '#' )
    assert list( char_values.columns ) == [ 'lambda', 'radius' ]
    assert ( char_values['radius'].diff().dropna() <= 0 ).all()

def test_raw_error_estimate():
    estimate = agediff._executor.executor_impl.raw_error_estimate( 0.5, 0.5 + 7e-6 )
    assert estimate.startswith( '7.000e-06' ) and 'richardson' in estimate
    assert agediff._executor.executor_impl.raw_error_estimate( None, 0.5 ) == '-'

def test_effective_config_round_trip( tmp_path ):
    args = [ 'spectral-bound', '--config', SCALAR_LOTKA, '--output', str( tmp_path ), '--model.n_age', '64' ]
    assert agediff.cli.main( args ) == 0
    echoed = agediff.cli.parse_config( str( tmp_path / 'effective_config.yaml' ) )
    config = agediff.cli.config( args )
    assert echoed.model.n_age == 64
    assert echoed.model.diffusion_enabled == False
    assert echoed.model.birth.value == 1.0
    assert echoed.to_flat() == { key: val for key, val in config.to_flat().items() if key != 'command' }

def test_command_line_overrides_config( tmp_path ):
    config = agediff.cli.config( [ 'spectral-bound', '--config', SCALAR_LOTKA, '--model.n_age', '16', '--output', str( tmp_path ) ] )
    assert config.command == 'spectral-bound'
    assert config.model.n_age == 16
    assert config.model.n_space == 1
    assert config.output.dir == str( tmp_path )

def test_unknown_key( tmp_path, capsys ):
    path = tmp_path / 'run.yaml'
    path.write_text( 'model:\n  n_age: 8\n  n_ages: 9\n' )
    assert agediff.cli.main( [ 'spectral-bound', '--config', str( path ), '--output', str( tmp_path ) ] ) == 3
    record = error_record( capsys )
    assert record['code'] == 3
    assert 'model.n_ages' in record['message']

def test_invalid_n_age( tmp_path, capsys ):
    assert agediff.cli.main( [ 'spectral-bound', '--model.n_age', '0', '--output', str( tmp_path ) ] ) == 3
    assert 'model.n_age' in error_record( capsys )['message']

def test_unknown_preset( tmp_path, capsys ):
    path = tmp_path / 'run.yaml'
    path.write_text( 'model.birth.preset: logistic\n' )
    assert agediff.cli.main( [ 'spectral-bound', '--config', str( path ), '--output', str( tmp_path ) ] ) == 3
    message = error_record( capsys )['message']
    assert 'logistic' in message
    assert 'gaussian_bump' in message

def test_invalid_yaml( tmp_path, capsys ):
    path = tmp_path / 'run.yaml'
    path.write_text( 'model:\n  n_age: [8\n' )
    assert agediff.cli.main( [ 'spectral-bound', '--config', str( path ), '--output', str( tmp_path ) ] ) == 3
    assert error_record( capsys )['code'] == 3

def test_resolvent_needs_lambda( tmp_path, capsys ):
    assert agediff.cli.main( [ 'resolvent', '--config', SCALAR_LOTKA, '--output', str( tmp_path ) ] ) == 3
    assert 'lambda' in error_record( capsys )['message']

def test_resolvent_near_spectrum( tmp_path, capsys ):
    config = agediff.cli.parse_config( SCALAR_LOTKA )
    s = agediff.executor( config = config ).spectrum.spectral_bound()
    args = [ 'resolvent', '--config', SCALAR_LOTKA, '--output', str( tmp_path ), '--lambda', repr( s ), '--numerics.cond_max', '1e6' ]
    assert agediff.cli.main( args ) == 2
    assert error_record( capsys )['code'] == 2
    assert not os.path.exists( tmp_path / 'resolvent.csv' )

def test_resolvent_writes_profile( tmp_path ):
    args = [ 'resolvent', '--config', SCALAR_LOTKA, '--output', str( tmp_path ), '--lambda', '2.0' ]
    assert agediff.cli.main( args ) == 0
    config = agediff.cli.parse_config( SCALAR_LOTKA )
    model = agediff.model( config = config )
    psi = agediff.utils.io_utils.read_profile( str( tmp_path / 'resolvent.csv' ), model.agrid, 1 )
    assert psi.values.min() > 0

def test_resolvent_reads_input( tmp_path ):
    config = agediff.cli.parse_config( SCALAR_LOTKA )
    model = agediff.model( config = config )
    phi = agediff.AgeProfile.ones( model.agrid, 1 ) * 2.0
    agediff.utils.io_utils.write_profile( phi, str( tmp_path / 'phi.csv' ) )
    assert agediff.cli.main( [ 'resolvent', '--config', SCALAR_LOTKA, '--output', str( tmp_path / 'one' ), '--lambda', '2.0' ] ) == 0
    assert agediff.cli.main( [ 'resolvent', '--config', SCALAR_LOTKA, '--output', str( tmp_path / 'two' ), '--lambda', '2.0',
        '--input', str( tmp_path / 'phi.csv' ) ] ) == 0
    one = agediff.utils.io_utils.read_profile( str( tmp_path / 'one' / 'resolvent.csv' ), model.agrid, 1 )
    two = agediff.utils.io_utils.read_profile( str( tmp_path / 'two' / 'resolvent.csv' ), model.agrid, 1 )
    assert abs( two.values - 2.0 * one.values ).max() < 1e-12

def test_input_on_wrong_grid( tmp_path, capsys ):
    agediff.utils.io_utils.write_profile( agediff.AgeProfile.ones( agediff.AgeGrid( 2.0, 8 ), 1 ), str( tmp_path / 'phi.csv' ) )
    args = [ 'resolvent', '--config', SCALAR_LOTKA, '--output', str( tmp_path ), '--lambda', '2.0', '--input', str( tmp_path / 'phi.csv' ) ]
    assert agediff.cli.main( args ) == 3
    assert error_record( capsys )['code'] == 3

def test_simulate_misaligned_horizon( tmp_path, capsys ):
    args = [ 'simulate', '--config', SCALAR_LOTKA, '--output', str( tmp_path ), '--numerics.t_final', '0.01' ]
    assert agediff.cli.main( args ) == 3
    assert error_record( capsys )['code'] == 3

def test_simulate_writes_trajectory( tmp_path ):
    args = [ 'simulate', '--output', str( tmp_path ), '--model.n_age', '8', '--model.n_space', '3', '--numerics.t_final', '1.0' ]
    assert agediff.cli.main( args ) == 0
    trajectory = pd.read_csv( tmp_path / 'trajectory.csv', comment = '#' )
    assert list( trajectory.columns ) == [ 't', 'a', 'x_index', 'value' ]
    assert sorted( trajectory['t'].unique() ) == pytest.approx( [ 0.0, 0.25, 0.5, 0.75, 1.0 ] )
    births = pd.read_csv( tmp_path / 'birth_history.csv', comment = '#' )
    assert len( births ) == 5 * 3
    assert os.path.exists( tmp_path / 'final_profile.csv' )
    assert os.path.exists( tmp_path / 'effective_config.yaml' )

def test_simulate_ignores_perturbation_without_flag( tmp_path ):
    strong = os.path.join( CONFIGS, 'strong_positivity.yaml' )
    base = [ 'simulate', '--config', strong, '--numerics.t_final', '1.0' ]
    assert agediff.cli.main( base + [ '--output', str( tmp_path / 'plain' ) ] ) == 0
    assert agediff.cli.main( base + [ '--output', str( tmp_path / 'perturbed' ), '--perturbed' ] ) == 0
    model = agediff.cli.config( base ).model
    agrid = agediff.AgeGrid( model.a_max, model.n_age )
    plain = agediff.utils.io_utils.read_profile( str( tmp_path / 'plain' / 'final_profile.csv' ), agrid, model.n_space )
    perturbed = agediff.utils.io_utils.read_profile( str( tmp_path / 'perturbed' / 'final_profile.csv' ), agrid, model.n_space )
    expected = agediff.semigroup( agediff.evolution( agediff.model( config = agediff.cli.config( base ) ) ) ).evolve(
        agediff.AgeProfile.ones( agrid, model.n_space ), 1.0 ).final
    assert abs( plain.values - expected.values ).max() < 1e-12
    assert ( perturbed.values >= plain.values - 1e-12 ).all()
    assert abs( perturbed.values - plain.values ).max() > 1e-6

def test_unknown_perturbation_section( tmp_path, capsys ):
    args = [ 'compare-perturbed', '--output', str( tmp_path ), '--perturbed', 'perturbation_missing' ]
    assert agediff.cli.main( args ) == 3
    assert 'perturbation_missing' in error_record( capsys )['message']

def test_compare_perturbed( tmp_path ):
    strong = os.path.join( CONFIGS, 'strong_positivity.yaml' )
    assert agediff.cli.main( [ 'compare-perturbed', '--config', strong, '--output', str( tmp_path ) ] ) == 0
    report = json.load( open( tmp_path / 'compare.json' ) )
    assert report['s_bound_perturbed'] > report['s_bound']
    assert all( outcome['passed'] for outcome in report['comparisons'] )

