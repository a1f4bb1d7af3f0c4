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


import math
import argparse

import agediff
from . import semigroup_impl

class semigroup:

    class AlignmentError(Exception):
        r""" A time is not a multiple of the age step.
        """
        pass

    class DomainError(Exception):
        r""" A time or age lies outside its domain.
        """
        pass

    def __new__( cls, cache: 'agediff.EvolutionCache' ) -> 'agediff.Semigroup':
        r""" Creates the discrete semigroup of an evolution cache.
            Args:
                cache (:obj:`agediff.EvolutionCache`, `required`):
                    agediff.evolution( model )
        """
        return semigroup_impl.Semigroup( cache = cache )

    @staticmethod
    def config() -> 'agediff.Config':
        parser = argparse.ArgumentParser()
        semigroup.add_args( parser )
        return agediff.config( parser, args = [] )

    @staticmethod
    def add_args( parser: argparse.ArgumentParser ):
        try:
            parser.add_argument('--numerics.t_final', type=float, default=None, help='''Final time of simulate; a multiple of a_max / n_age. Defaults to a_max.''')
        except argparse.ArgumentError:
            # re-parsing arguments.
            pass

    @staticmethod
    def check_config( config: 'agediff.Config' ):
        t_final = config.numerics.t_final
        if t_final != None:
            assert isinstance( t_final, ( int, float ) ) and math.isfinite( t_final ), 'numerics.t_final must be a finite real'
