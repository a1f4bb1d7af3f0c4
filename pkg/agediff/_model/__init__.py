# The MIT License (MIT)
# Copyright © 2021 The agediff authors

# Permission is hereby granted, free of charge, to any person obtaining a copy of this software and associated 
# documentation files (the “Software”), to deal in the Software without restriction, including without limitation 
# the rights to use, copy, modify, merge, publish, distribute, sublicense, and/or sell copies of the Software, 
# and to permit persons to whom the Software is furnished to do so, subject to the following conditions:

# The above copyright notice and this permission notice shall be included in all copies or substantial portions of 
# the Software.

# THE SOFTWARE IS PROVIDED “AS IS”, WITHOUT WARRANTY OF ANY KIND, EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO
# THE WARRANTIES OF MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL 
# THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION 
# OF CONTRACT, TORT OR OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER 
# DEALINGS IN THE SOFTWARE.


import copy
import math
import argparse

import agediff
from . import model_impl
from .grids import AgeGrid, SpaceGrid, NormSpec, BoundaryCondition, BC_KINDS, NORM_KINDS
from .coefficients import Coefficients, CoefficientField, PRESETS, ALL_PARAMS

COEFFICIENTS = ['diffusion', 'mortality', 'birth']

# Value of a constant coefficient whose value is not given.
CONSTANT_DEFAULTS = { 'diffusion': 1.0, 'mortality': 0.0, 'birth': 0.0 }

def str2bool( value ) -> bool:
    if isinstance( value, bool ):
        return value
    if str( value ).lower() in ( 'true', 'yes', '1', 'on' ):
        return True
    if str( value ).lower() in ( 'false', 'no', '0', 'off' ):
        return False
    raise argparse.ArgumentTypeError( 'expected a boolean, got {}'.format( value ) )

class model:

    class InvalidCoefficient(Exception):
        r""" A coefficient is not finite, violates d >= d_min, or has negative birth in positivity mode.
        """
        pass

    class DimensionError(Exception):
        r""" A profile does not match the grid it is used with.
        """
        pass

    def __new__(
            cls,
            config: 'agediff.Config' = None,
            a_max: float = None,
            n_age: int = None,
            n_space: int = None,
            length: float = None,
            bc: str = None,
            robin_coeff: float = None,
            positivity_mode: bool = None,
            diffusion_enabled: bool = None,
            d_min: float = None,
            norm: str = None,
            norm_scale: float = None,
            diffusion: dict = None,
            mortality: dict = None,
            birth: dict = None,
            tol_pos: float = None,
        ) -> 'agediff.Model':
        r""" Creates a new agediff.Model from a config and per-field overrides.
            Args:
                config (:obj:`agediff.Config`, `optional`):
                    agediff.model.config()
                a_max (float, `optional`):
                    Maximal age.
                n_age (int, `optional`):
                    Number of age intervals.
                n_space (int, `optional`):
                    Number of interior spatial nodes.
                length (float, `optional`):
                    Length of the spatial interval.
                bc (str, `optional`):
                    One of dirichlet, neumann, robin.
                robin_coeff (float, `optional`):
                    Robin coefficient.
                positivity_mode (bool, `optional`):
                    Enforce and check the positive structure.
                diffusion_enabled (bool, `optional`):
                    When false the diffusion is treated as zero.
                d_min (float, `optional`):
                    Lower bound on the diffusion.
                norm (str, `optional`):
                    Spatial norm, l1_weighted or sup.
                norm_scale (float, `optional`):
                    Scale of the spatial norm weights.
                diffusion, mortality, birth (dict, `optional`):
                    Coefficient preset and parameters, i.e. {'preset': 'constant', 'value': 1.0}.
                tol_pos (float, `optional`):
                    Tolerance band of the cone check.
        """
        if config == None: config = model.config()
        config = copy.deepcopy( config )
        config.model.a_max = a_max if a_max != None else config.model.a_max
        config.model.n_age = n_age if n_age != None else config.model.n_age
        config.model.n_space = n_space if n_space != None else config.model.n_space
        config.model.length = length if length != None else config.model.length
        config.model.bc = bc if bc != None else config.model.bc
        config.model.robin_coeff = robin_coeff if robin_coeff != None else config.model.robin_coeff
        config.model.positivity_mode = positivity_mode if positivity_mode != None else config.model.positivity_mode
        config.model.diffusion_enabled = diffusion_enabled if diffusion_enabled != None else config.model.diffusion_enabled
        config.model.d_min = d_min if d_min != None else config.model.d_min
        config.model.norm = norm if norm != None else config.model.norm
        config.model.norm_scale = norm_scale if norm_scale != None else config.model.norm_scale
        config.numerics.tol_pos = tol_pos if tol_pos != None else config.numerics.tol_pos
        for name, override in zip( COEFFICIENTS, [ diffusion, mortality, birth ] ):
            if override != None:
                section = agediff.Config({ key: None for key in ALL_PARAMS })
                section.preset = override.get( 'preset', 'constant' )
                for key, val in override.items():
                    section[ key ] = val
                config.model[ name ] = section
        try:
            model.check_config( config )
        except AssertionError as e:
            raise agediff.config.ValidationError( str( e ) ) from e

        agrid = AgeGrid( config.model.a_max, config.model.n_age )
        boundary = BoundaryCondition( kind = config.model.bc, robin_coeff = float( config.model.robin_coeff ) )
        sgrid = SpaceGrid( config.model.length, config.model.n_space, boundary )
        coeff = Coefficients(
            diffusion = model.field( config.model.diffusion, CONSTANT_DEFAULTS['diffusion'] ),
            mortality = model.field( config.model.mortality, CONSTANT_DEFAULTS['mortality'] ),
            birth = model.field( config.model.birth, CONSTANT_DEFAULTS['birth'] ),
            diffusion_enabled = config.model.diffusion_enabled,
            d_min = config.model.d_min,
        )
        norms = NormSpec( space_norm = config.model.norm, scale = float( config.model.norm_scale ) )
        return model_impl.Model(
            agrid = agrid,
            sgrid = sgrid,
            coeff = coeff,
            norms = norms,
            positivity_mode = config.model.positivity_mode,
            tol_pos = config.numerics.tol_pos,
            config = config,
        )

    @staticmethod
    def field( section: 'agediff.Config', default_value: float = 0.0 ) -> CoefficientField:
        r""" Builds the coefficient field of a config section like model.birth.
            A constant preset without a value takes default_value.
        """
        params = { key: section[key] for key in ALL_PARAMS if key in section and section[key] != None }
        if section.preset == 'constant' and 'value' not in params:
            params['value'] = default_value
        return CoefficientField( section.preset, **params )

    @staticmethod
    def config() -> 'agediff.Config':
        parser = argparse.ArgumentParser()
        model.add_args( parser )
        return agediff.config( parser, args = [] )

    @staticmethod
    def add_coefficient_args( parser: argparse.ArgumentParser, prefix: str, default_preset: str = 'constant' ):
        parser.add_argument('--' + prefix + '.preset', type=str, choices=list( PRESETS ), default=default_preset,
            help='''Coefficient preset, one of {}.'''.format( ', '.join( PRESETS ) ))
        for key in ALL_PARAMS:
            parser.add_argument('--' + prefix + '.' + key, type=float, default=None,
                help='''Preset parameter {} (only read by presets that define it).'''.format( key ))

    @staticmethod
    def add_args( parser: argparse.ArgumentParser ):
        try:
            parser.add_argument('--model.a_max', type=float, default=2.0, help='''Maximal age a_max.''')
            parser.add_argument('--model.n_age', type=int, default=32, help='''Number of age intervals.''')
            parser.add_argument('--model.n_space', type=int, default=8, help='''Number of interior spatial nodes.''')
            parser.add_argument('--model.length', type=float, default=1.0, help='''Length L of the spatial interval [0, L].''')
            parser.add_argument('--model.bc', type=str, default='dirichlet', help='''Boundary condition: dirichlet, neumann or robin.''')
            parser.add_argument('--model.robin_coeff', type=float, default=0.0, help='''Robin coefficient r in du/dn + r u = 0.''')
            parser.add_argument('--model.positivity_mode', type=str2bool, default=True, help='''Enforce the positive structure (beta >= 0, positive steps).''')
            parser.add_argument('--model.diffusion_enabled', type=str2bool, default=True, help='''When false the diffusion coefficient is treated as zero.''')
            parser.add_argument('--model.d_min', type=float, default=1e-8, help='''Lower bound on the diffusion coefficient.''')
            parser.add_argument('--model.norm', type=str, default='l1_weighted', help='''Spatial norm: l1_weighted or sup.''')
            parser.add_argument('--model.norm_scale', type=float, default=1.0, help='''Scale of the spatial norm weights.''')
            parser.add_argument('--numerics.tol_pos', type=float, default=1e-10, help='''Tolerance band of the cone check.''')
            model.add_coefficient_args( parser, 'model.diffusion', 'constant' )
            model.add_coefficient_args( parser, 'model.mortality', 'constant' )
            model.add_coefficient_args( parser, 'model.birth', 'constant' )
        except argparse.ArgumentError:
            # re-parsing arguments.
            pass

    @staticmethod
    def check_coefficient( section: 'agediff.Config', path: str ):
        assert section != None and 'preset' in section, '{}.preset is missing'.format( path )
        assert section.preset in PRESETS, '{}.preset: unknown preset {}, available presets: {}'.format(
            path, section.preset, ', '.join( PRESETS ) )
        for key, val in section.items():
            if key == 'preset' or val == None:
                continue
            assert key in PRESETS[ section.preset ], '{}.{} is not a parameter of preset {}, valid parameters: {}'.format(
                path, key, section.preset, ', '.join( PRESETS[ section.preset ] ) )
            assert isinstance( val, ( int, float ) ) and not isinstance( val, bool ) and math.isfinite( val ), \
                '{}.{} must be a finite number'.format( path, key )
        p = section
        if section.preset == 'gaussian_bump':
            assert p.get('age_width') == None or p.age_width > 0, '{}.age_width must be positive'.format( path )
            assert p.get('space_width') == None or p.space_width > 0, '{}.space_width must be positive'.format( path )

    @staticmethod
    def check_config( config: 'agediff.Config' ):
        m = config.model
        assert isinstance( m.a_max, ( int, float ) ) and math.isfinite( m.a_max ) and m.a_max > 0, 'model.a_max must be a positive real'
        assert isinstance( m.n_age, int ) and not isinstance( m.n_age, bool ) and m.n_age >= 1, 'model.n_age must be a positive integer'
        assert isinstance( m.n_space, int ) and not isinstance( m.n_space, bool ) and m.n_space >= 1, 'model.n_space must be a positive integer'
        assert isinstance( m.length, ( int, float ) ) and math.isfinite( m.length ) and m.length > 0, 'model.length must be a positive real'
        assert m.bc in BC_KINDS, 'model.bc must be one of {}'.format( ', '.join( BC_KINDS ) )
        assert isinstance( m.robin_coeff, ( int, float ) ) and math.isfinite( m.robin_coeff ), 'model.robin_coeff must be a finite real'
        assert isinstance( m.positivity_mode, bool ), 'model.positivity_mode must be true or false'
        assert isinstance( m.diffusion_enabled, bool ), 'model.diffusion_enabled must be true or false'
        if m.positivity_mode:
            assert m.robin_coeff >= 0, 'model.robin_coeff must be >= 0 in positivity mode'
        assert isinstance( m.d_min, ( int, float ) ) and m.d_min > 0, 'model.d_min must be positive'
        assert m.norm in NORM_KINDS, 'model.norm must be one of {}'.format( ', '.join( NORM_KINDS ) )
        assert isinstance( m.norm_scale, ( int, float ) ) and math.isfinite( m.norm_scale ) and m.norm_scale > 0, 'model.norm_scale must be a positive real'
        assert isinstance( config.numerics.tol_pos, ( int, float ) ) and config.numerics.tol_pos >= 0, 'numerics.tol_pos must be >= 0'
        for name in COEFFICIENTS:
            model.check_coefficient( m.get( name ), 'model.' + name )
