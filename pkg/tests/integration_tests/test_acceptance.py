import os
import json

import pytest

import agediff
from agediff._executor import verify_impl

CONFIGS = os.path.join( os.path.dirname( os.path.abspath( __file__ ) ), '..', '..', 'configs' )

def suite( tmp_path, name: str = 'sample_config.yaml' ) -> verify_impl.VerifySuite:
    config = agediff.cli.parse_config( os.path.join( CONFIGS, name ) )
    config.output.dir = str( tmp_path )
    return verify_impl.VerifySuite( agediff.executor( config = config ) )

def assert_passed( outcomes ):
    outcomes = outcomes if isinstance( outcomes, list ) else [ outcomes ]
    assert len( outcomes ) > 0
    for outcome in outcomes:
        assert outcome.passed, '{}: margin {} ({})'.format( outcome.name, outcome.margin, outcome.detail )

def test_lotka_oracle( tmp_path ):
    outcomes = suite( tmp_path ).lotka_oracle()
    assert_passed( outcomes )
    # the raw root at n_age = 128 is O(da^2) off; the extrapolate carries the tolerance
    assert 'raw s_128' in outcomes[0].detail and 'above 1e-06' in outcomes[0].detail
    assert outcomes[0].detail.endswith( 'checked on the extrapolate' )

def test_lotka_growth_rate():
    model = agediff.model( a_max = 2.0, n_age = 128, n_space = 1, bc = 'neumann', diffusion_enabled = False,
        birth = { 'preset': 'constant', 'value': 1.0 }, mortality = { 'preset': 'constant', 'value': 0.0 } )
    semigroup = agediff.semigroup( agediff.evolution( model ) )
    trajectory = semigroup.evolve( agediff.AgeProfile.ones( model.agrid, 1 ), 40 * 2.0 )
    assert abs( semigroup.growth_rate( trajectory ) - verify_impl.lotka_root( 1.0, 0.0, 2.0 ) ) < 1e-3

def test_resolvent_closed_form( tmp_path ):
    assert_passed( suite( tmp_path ).resolvent_closed_form() )

def test_construction_consistency( tmp_path ):
    outcomes = suite( tmp_path ).construction_consistency()
    assert [ o.name for o in outcomes ] == [ 'construction_consistency', 'full_node_consistency' ]
    assert_passed( outcomes )

def test_laplace_consistency( tmp_path ):
    assert_passed( suite( tmp_path ).laplace_consistency() )

def test_comparison( tmp_path ):
    outcomes = suite( tmp_path ).comparison()
    names = [ o.name for o in outcomes ]
    assert names[:2] == [ 'strong_positivity', 'strict_increase' ]
    assert any( name.startswith( 'comparison.' ) for name in names )
    assert_passed( outcomes )

def test_compactness( tmp_path ):
    assert_passed( suite( tmp_path ).compactness() )

def test_invariant_suites( tmp_path ):
    verify = suite( tmp_path )
    assert_passed( verify.evolution_property() )
    assert_passed( verify.mortality_shift() )
    assert_passed( verify.resolvent_identity() )
    assert_passed( verify.positivity() )
    assert_passed( verify.duhamel_order() )

def test_mortality_shift_skipped_for_separable( tmp_path ):
    verify = suite( tmp_path )
    verify.executor.config.model.mortality = agediff.Config({ 'preset': 'separable', 'scale': 0.2 })
    verify.executor._model = None
    outcome = verify.mortality_shift()
    assert outcome.skipped and outcome.passed

@pytest.mark.parametrize( 'name', [ 'sample_config.yaml', 'strong_positivity.yaml' ] )
def test_verify_command( tmp_path, name ):
    code = agediff.cli.main( [ 'verify', '--config', os.path.join( CONFIGS, name ), '--output', str( tmp_path ) ] )
    report = json.load( open( tmp_path / 'verify.json' ) )
    failed = [ o['name'] for o in report['outcomes'] if not o['passed'] ]
    assert failed == []
    assert report['passed']
    assert code == 0
