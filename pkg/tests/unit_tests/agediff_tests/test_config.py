import os
import argparse
import pytest
import agediff

def test_full_defaults():
    config = agediff.config.full()
    assert config.model.n_age == 32
    assert config.model.bc == 'dirichlet'
    assert config.model.positivity_mode == True
    assert config.numerics.substeps == 4
    assert config.numerics.tol_res == 1e-8
    assert config.perturbation.kind == 'none'
    assert config.output.dir == './agediff_output'
    agediff.config.check_all( config )

def test_flat_nesting():
    config = agediff.Config.from_flat( { 'model.n_age': 64, 'model.birth.preset': 'constant', 'output.dir': '/tmp/x' } )
    assert config.model.n_age == 64
    assert config.model.birth.preset == 'constant'
    assert config.to_flat() == { 'model.n_age': 64, 'model.birth.preset': 'constant', 'output.dir': '/tmp/x' }

def test_config_prints_as_yaml():
    config = agediff.Config.from_flat( { 'model.n_age': 64 } )
    assert str( config ).strip() == 'model:\n  n_age: 64'
    assert not hasattr( config, 'toString' ) and not hasattr( config, 'update_with_kwargs' )

def test_parser_dotted_keys():
    parser = argparse.ArgumentParser()
    agediff.model.add_args( parser )
    config = agediff.config( parser, args = [ '--model.n_age', '16', '--model.birth.preset', 'gaussian_bump' ] )
    assert config.model.n_age == 16
    assert config.model.birth.preset == 'gaussian_bump'

def test_add_args_twice():
    parser = argparse.ArgumentParser()
    agediff.model.add_args( parser )
    agediff.model.add_args( parser )
    assert agediff.config( parser, args = [] ).model.n_age == 32

def test_load_yaml_nested_and_dotted( tmp_path ):
    path = tmp_path / 'run.yaml'
    path.write_text( 'model:\n  n_age: 16\n  birth:\n    preset: constant\n    value: 1.5\nnumerics.substeps: 8\n' )
    items = agediff.config.load_yaml( str( path ) )
    assert items == { 'model.n_age': 16, 'model.birth.preset': 'constant', 'model.birth.value': 1.5, 'numerics.substeps': 8 }

def test_load_yaml_empty( tmp_path ):
    path = tmp_path / 'empty.yaml'
    path.write_text( '' )
    assert agediff.config.load_yaml( str( path ) ) == {}

def test_load_yaml_missing( tmp_path ):
    with pytest.raises( agediff.config.InvalidConfigFile ):
        agediff.config.load_yaml( str( tmp_path / 'missing.yaml' ) )

def test_load_yaml_syntax_error_has_line( tmp_path ):
    path = tmp_path / 'broken.yaml'
    path.write_text( 'model:\n  n_age: 16\n  bc: [dirichlet\n' )
    with pytest.raises( agediff.config.InvalidConfigFile ) as info:
        agediff.config.load_yaml( str( path ) )
    assert info.value.line is not None
    assert info.value.line >= 3

def test_load_yaml_not_a_mapping( tmp_path ):
    path = tmp_path / 'list.yaml'
    path.write_text( '- 1\n- 2\n' )
    with pytest.raises( agediff.config.InvalidConfigFile ):
        agediff.config.load_yaml( str( path ) )

def test_dump_yaml_round_trip( tmp_path ):
    config = agediff.config.full()
    path = str( tmp_path / 'effective.yaml' )
    agediff.config.dump_yaml( config, path )
    assert agediff.Config.from_flat( agediff.config.load_yaml( path ) ) == config

def test_check_all_names_field():
    config = agediff.config.full()
    config.numerics.substeps = 0
    with pytest.raises( agediff.config.ValidationError, match = 'numerics.substeps' ):
        agediff.config.check_all( config )

def test_check_all_perturbation_sections():
    config = agediff.config.full()
    config.perturbation_local = agediff.perturbation.config( section = 'perturbation_local' ).perturbation_local
    config.perturbation_local.kind = 'bogus'
    with pytest.raises( agediff.config.ValidationError, match = 'perturbation_local.kind' ):
        agediff.config.check_all( config )

if __name__ == "__main__":
    test_full_defaults()
