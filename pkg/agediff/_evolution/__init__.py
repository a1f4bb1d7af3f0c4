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
import argparse

import agediff
from . import evolution_impl

class evolution:

    class StepConstructionError(Exception):
        r""" A Crank-Nicolson step could not be built: singular system, non-finite entries, or a too coarse age grid.
        """
        pass

    class CausalityError(Exception):
        r""" Pi(a_i, a_j) was requested with j > i.
        """
        pass

    def __new__(
            cls,
            model: 'agediff.Model',
            config: 'agediff.Config' = None,
            substeps: int = None,
        ) -> 'agediff.EvolutionCache':
        r""" Builds the evolution cache of a model.
            Args:
                model (:obj:`agediff.Model`, `required`):
                    Model whose A(a) is propagated.
                config (:obj:`agediff.Config`, `optional`):
                    agediff.evolution.config()
                substeps (int, `optional`):
                    Crank-Nicolson substeps per age interval.
        """
        if config == None: config = evolution.config()
        config = copy.deepcopy( config )
        config.numerics.substeps = substeps if substeps != None else config.numerics.substeps
        try:
            evolution.check_config( config )
        except AssertionError as e:
            raise agediff.config.ValidationError( str( e ) ) from e
        return evolution_impl.EvolutionCache( model = model, substeps = config.numerics.substeps )

    @staticmethod
    def config() -> 'agediff.Config':
        parser = argparse.ArgumentParser()
        evolution.add_args( parser )
        return agediff.config( parser, args = [] )

    @staticmethod
    def add_args( parser: argparse.ArgumentParser ):
        try:
            parser.add_argument('--numerics.substeps', type=int, default=4, help='''Crank-Nicolson substeps per age interval (raised automatically in positivity mode).''')
        except argparse.ArgumentError:
            # re-parsing arguments.
            pass

    @staticmethod
    def check_config( config: 'agediff.Config' ):
        substeps = config.numerics.substeps
        assert isinstance( substeps, int ) and not isinstance( substeps, bool ) and substeps >= 1, 'numerics.substeps must be an integer >= 1'

    @staticmethod
    def rational_factor( z ):
        return evolution_impl.rational_factor( z )

    @staticmethod
    def shift_coefficients( z, da: float ) -> 'evolution_impl.ShiftCoefficients':
        return evolution_impl.shift_coefficients( z, da )
