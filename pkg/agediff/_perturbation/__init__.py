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


import re
import copy
import math
import argparse
from typing import List

import agediff
from . import perturbation_impl
from .perturbation_impl import AgeKernel, KERNELS, KINDS
from agediff._model.coefficients import CoefficientField, ALL_PARAMS

KERNEL_PARAMS = sorted( { key for params in KERNELS.values() for key in params } )
SECTION = re.compile( r'^perturbation(_[A-Za-z0-9]+)*$' )

class perturbation:

    def __new__(
            cls,
            model: 'agediff.Model',
            config: 'agediff.Config' = None,
            section: str = 'perturbation',
            kind: str = None,
            gamma: float = None,
            positive: bool = None,
            m: dict = None,
            k: dict = None,
        ) -> 'agediff.PerturbationSpec':
        r""" Creates the perturbation B of a config section on the model's age grid.
            Args:
                model (:obj:`agediff.Model`, `required`):
                    Model whose age grid B acts on.
                config (:obj:`agediff.Config`, `optional`):
                    agediff.perturbation.config()
                section (str, `optional`):
                    Config section holding the perturbation, perturbation or perturbation_<name>.
                kind (str, `optional`):
                    none or age_kernel.
                gamma (float, `optional`):
                    Overall scale.
                positive (bool, `optional`):
                    Require m >= 0 and k >= 0.
                m (dict, `optional`):
                    Age factor preset, i.e. {'preset': 'constant', 'value': 1.0}.
                k (dict, `optional`):
                    Kernel preset, i.e. {'preset': 'gaussian', 'value': 1.0, 'width': 0.25}.
        """
        if config == None: config = perturbation.config( section = section )
        config = copy.deepcopy( config )
        if section not in config:
            raise agediff.config.ValidationError( '{}: no such perturbation section in the config'.format( section ) )
        items = config[ section ]
        items.kind = kind if kind != None else items.kind
        items.gamma = gamma if gamma != None else items.gamma
        items.positive = positive if positive != None else items.positive
        if m != None:
            items.m = agediff.Config({ key: None for key in ALL_PARAMS })
            items.m.preset = m.get( 'preset', 'constant' )
            items.m.update( m )
        if k != None:
            items.k = agediff.Config({ key: None for key in KERNEL_PARAMS })
            items.k.preset = k.get( 'preset', 'uniform' )
            items.k.update( k )
        try:
            perturbation.check_config( config, section = section )
        except AssertionError as e:
            raise agediff.config.ValidationError( str( e ) ) from e

        if items.kind == 'none':
            return perturbation_impl.PerturbationSpec( model.agrid, kind = 'none', positive = items.positive, gamma = items.gamma )
        kernel_params = { key: items.k[key] for key in KERNEL_PARAMS if items.k.get( key ) != None }
        return perturbation_impl.PerturbationSpec(
            model.agrid,
            kind = items.kind,
            m = agediff.model.field( items.m, 1.0 ),
            k = AgeKernel( items.k.preset, **kernel_params ),
            positive = items.positive,
            gamma = items.gamma,
        )

    @staticmethod
    def config( section: str = 'perturbation' ) -> 'agediff.Config':
        parser = argparse.ArgumentParser()
        perturbation.add_args( parser, prefix = section )
        return agediff.config( parser, args = [] )

    @staticmethod
    def sections( config: 'agediff.Config' ) -> List[str]:
        r""" Names of all perturbation sections of a config.
        """
        return sorted( key for key in config.keys() if SECTION.match( key ) )

    @staticmethod
    def add_args( parser: argparse.ArgumentParser, prefix: str = 'perturbation' ):
        try:
            parser.add_argument('--' + prefix + '.kind', type=str, default='none', help='''Perturbation kind: none or age_kernel.''')
            parser.add_argument('--' + prefix + '.gamma', type=float, default=1.0, help='''Overall scale gamma of the perturbation.''')
            parser.add_argument('--' + prefix + '.positive', type=agediff._model.str2bool, default=True, help='''Require m >= 0 and k >= 0.''')
            agediff.model.add_coefficient_args( parser, prefix + '.m', 'constant' )
            parser.add_argument('--' + prefix + '.k.preset', type=str, choices=list( KERNELS ), default='uniform',
                help='''Age kernel preset, one of {}.'''.format( ', '.join( KERNELS ) ))
            for key in KERNEL_PARAMS:
                parser.add_argument('--' + prefix + '.k.' + key, type=float, default=None, help='''Kernel parameter {}.'''.format( key ))
        except argparse.ArgumentError:
            # re-parsing arguments.
            pass

    @staticmethod
    def check_config( config: 'agediff.Config', section: str = 'perturbation' ):
        assert section in config, '{} section is missing'.format( section )
        p = config[ section ]
        assert p.kind in KINDS, '{}.kind must be one of {}'.format( section, ', '.join( KINDS ) )
        assert isinstance( p.gamma, ( int, float ) ) and math.isfinite( p.gamma ), '{}.gamma must be a finite real'.format( section )
        assert isinstance( p.positive, bool ), '{}.positive must be true or false'.format( section )
        if p.positive:
            assert p.gamma >= 0, '{}.gamma must be >= 0 when {}.positive is set'.format( section, section )
        agediff.model.check_coefficient( p.get( 'm' ), section + '.m' )
        kernel = p.get( 'k' )
        assert kernel != None and kernel.get( 'preset' ) in KERNELS, '{}.k.preset: unknown kernel {}, available kernels: {}'.format(
            section, None if kernel == None else kernel.get( 'preset' ), ', '.join( KERNELS ) )
        for key, val in kernel.items():
            if key == 'preset' or val == None:
                continue
            assert key in KERNELS[ kernel.preset ], '{}.k.{} is not a parameter of kernel {}, valid parameters: {}'.format(
                section, key, kernel.preset, ', '.join( KERNELS[ kernel.preset ] ) )
            assert isinstance( val, ( int, float ) ) and math.isfinite( val ), '{}.k.{} must be a finite number'.format( section, key )
        if kernel.preset == 'gaussian' and kernel.get( 'width' ) != None:
            assert kernel.width > 0, '{}.k.width must be positive'.format( section )
