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
from typing import List, Tuple

import agediff
from . import spectrum_impl
from . import generator_impl

def parse_pair( value: str ) -> List[int]:
    r""" Parses an n_age,n_space refinement like 64,16.
    """
    if isinstance( value, ( list, tuple ) ):
        parts = list( value )
    else:
        parts = str( value ).replace( 'x', ',' ).split( ',' )
    if len( parts ) != 2:
        raise argparse.ArgumentTypeError( 'expected n_age,n_space, got {}'.format( value ) )
    try:
        return [ int( parts[0] ), int( parts[1] ) ]
    except ValueError:
        raise argparse.ArgumentTypeError( 'expected two integers n_age,n_space, got {}'.format( value ) )

class spectrum:

    class DegeneratePeripheralSpectrum(Exception):
        r""" The peripheral spectrum of Q_s does not isolate a positive fixed vector. Carries the top eigenvalues.
        """
        def __init__( self, message: str, eigenvalues = None ):
            super().__init__( message )
            self.eigenvalues = eigenvalues

    class SizeError(Exception):
        r""" A dense block system exceeds numerics.dense_limit.
        """
        pass

    class NumericalError(Exception):
        r""" An eigen or root computation failed to produce a finite, certified answer.
        """
        pass

    def __new__(
            cls,
            solver: 'agediff.ResolventSolver',
            config: 'agediff.Config' = None,
            bracket_lo: float = None,
            bracket_hi: float = None,
            lambdas: List[float] = None,
            refinements: List[Tuple[int, int]] = None,
            threshold_offset: float = None,
            seed: int = None,
        ) -> 'agediff.Spectrum':
        r""" Creates the spectral analysis of a resolvent solver's instance.
            Args:
                solver (:obj:`agediff.ResolventSolver`, `required`):
                    agediff.resolvent( cache )
                config (:obj:`agediff.Config`, `optional`):
                    agediff.spectrum.config()
                bracket_lo, bracket_hi (float, `optional`):
                    Search interval of the spectral bound; both None selects the default bracket.
                lambdas (:obj:`List[float]`, `optional`):
                    lambdas of the resolvent comparison.
                refinements (:obj:`List[Tuple[int, int]]`, `optional`):
                    (n_age, n_space) levels of the compactness probe.
                threshold_offset (float, `optional`):
                    Count eigenvalues with real part above s_bound - threshold_offset.
                seed (int, `optional`):
                    Seed of the random comparison inputs.
        """
        if config == None: config = spectrum.config()
        config = copy.deepcopy( config )
        n = config.numerics
        n.bracket_lo = bracket_lo if bracket_lo != None else n.bracket_lo
        n.bracket_hi = bracket_hi if bracket_hi != None else n.bracket_hi
        n.lambdas = lambdas if lambdas != None else n.lambdas
        n.refinements = refinements if refinements != None else n.refinements
        n.threshold_offset = threshold_offset if threshold_offset != None else n.threshold_offset
        n.seed = seed if seed != None else n.seed
        try:
            spectrum.check_config( config )
        except AssertionError as e:
            raise agediff.config.ValidationError( str( e ) ) from e
        bracket = None if n.bracket_lo == None else ( n.bracket_lo, n.bracket_hi )
        return spectrum_impl.Spectrum(
            solver = solver,
            bracket = bracket,
            lambdas = n.lambdas,
            refinements = [ tuple( parse_pair( r ) ) for r in n.refinements ],
            threshold_offset = n.threshold_offset,
            seed = n.seed,
        )

    @staticmethod
    def config() -> 'agediff.Config':
        parser = argparse.ArgumentParser()
        spectrum.add_args( parser )
        return agediff.config( parser, args = [] )

    @staticmethod
    def add_args( parser: argparse.ArgumentParser ):
        try:
            parser.add_argument('--numerics.bracket_lo', type=float, default=None, help='''Lower end of the spectral bound search interval.''')
            parser.add_argument('--numerics.bracket_hi', type=float, default=None, help='''Upper end of the spectral bound search interval.''')
            parser.add_argument('--numerics.lambdas', type=float, nargs='*', default=[], help='''lambdas of the resolvent comparison and of the char-values export.''')
            parser.add_argument('--numerics.refinements', type=parse_pair, nargs='*', default=[ [32, 8], [64, 16], [128, 32] ],
                help='''Compactness refinements as n_age,n_space pairs.''')
            parser.add_argument('--numerics.threshold_offset', type=float, default=5.0, help='''Eigenvalues right of s_bound - threshold_offset are counted.''')
            parser.add_argument('--numerics.seed', type=int, default=0, help='''Seed of every random input.''')
        except argparse.ArgumentError:
            # re-parsing arguments.
            pass

    @staticmethod
    def check_config( config: 'agediff.Config' ):
        n = config.numerics
        assert ( n.bracket_lo == None ) == ( n.bracket_hi == None ), 'numerics.bracket_lo and numerics.bracket_hi must be set together'
        if n.bracket_lo != None:
            assert math.isfinite( n.bracket_lo ) and math.isfinite( n.bracket_hi ), 'numerics.bracket_lo and numerics.bracket_hi must be finite'
            assert n.bracket_lo < n.bracket_hi, 'numerics.bracket_lo must be below numerics.bracket_hi'
        assert isinstance( n.lambdas, list ), 'numerics.lambdas must be a list of reals'
        for lam in n.lambdas:
            assert isinstance( lam, ( int, float ) ) and math.isfinite( lam ), 'numerics.lambdas must be finite reals'
        assert isinstance( n.refinements, list ) and len( n.refinements ) >= 1, 'numerics.refinements must be a non-empty list of n_age,n_space pairs'
        for pair in n.refinements:
            try:
                n_age, n_space = parse_pair( pair )
            except argparse.ArgumentTypeError as e:
                raise AssertionError( 'numerics.refinements: {}'.format( e ) )
            assert n_age >= 1 and n_space >= 1, 'numerics.refinements: n_age and n_space must be positive, got {}'.format( pair )
        assert isinstance( n.threshold_offset, ( int, float ) ) and n.threshold_offset > 0, 'numerics.threshold_offset must be positive'
        assert isinstance( n.seed, int ) and not isinstance( n.seed, bool ), 'numerics.seed must be an integer'

    @staticmethod
    def full_node_solve( cache, lam, values, pert = None, dense_limit = 20000 ):
        return generator_impl.full_node_solve( cache, lam, values, pert = pert, dense_limit = dense_limit )
