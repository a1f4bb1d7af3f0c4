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
from . import resolvent_impl

class resolvent:

    class NearSpectrumError(Exception):
        r""" lambda is at or near the spectrum: the renewal system I - Q_lambda (or the block system) is singular to working precision.
        """
        def __init__( self, message: str, lam: float = None, condition: float = None ):
            super().__init__( message )
            self.lam = lam
            self.condition = condition

    class InternalInconsistencyError(Exception):
        r""" A computed resolvent fails its own generator-residual certificate.
        """
        pass

    def __new__(
            cls,
            cache: 'agediff.EvolutionCache',
            config: 'agediff.Config' = None,
            tol_res: float = None,
            cond_max: float = None,
            neumann_rtol: float = None,
            neumann_max_iter: int = None,
            dense_limit: int = None,
        ) -> 'agediff.ResolventSolver':
        r""" Creates a resolvent solver on an evolution cache.
            Args:
                cache (:obj:`agediff.EvolutionCache`, `required`):
                    agediff.evolution( model )
                config (:obj:`agediff.Config`, `optional`):
                    agediff.resolvent.config()
                tol_res (float, `optional`):
                    Relative generator residual accepted as certified.
                cond_max (float, `optional`):
                    Condition number beyond which lambda is reported as near the spectrum.
                neumann_rtol (float, `optional`):
                    Relative tolerance of the perturbed fixed-point iteration.
                neumann_max_iter (int, `optional`):
                    Maximum number of perturbed fixed-point iterations.
                dense_limit (int, `optional`):
                    Largest dense block system, in unknowns.
        """
        if config == None: config = resolvent.config()
        config = copy.deepcopy( config )
        config.numerics.tol_res = tol_res if tol_res != None else config.numerics.tol_res
        config.numerics.cond_max = cond_max if cond_max != None else config.numerics.cond_max
        config.numerics.neumann_rtol = neumann_rtol if neumann_rtol != None else config.numerics.neumann_rtol
        config.numerics.neumann_max_iter = neumann_max_iter if neumann_max_iter != None else config.numerics.neumann_max_iter
        config.numerics.dense_limit = dense_limit if dense_limit != None else config.numerics.dense_limit
        try:
            resolvent.check_config( config )
        except AssertionError as e:
            raise agediff.config.ValidationError( str( e ) ) from e
        return resolvent_impl.ResolventSolver(
            cache = cache,
            tol_res = config.numerics.tol_res,
            cond_max = config.numerics.cond_max,
            neumann_rtol = config.numerics.neumann_rtol,
            neumann_max_iter = config.numerics.neumann_max_iter,
            dense_limit = config.numerics.dense_limit,
        )

    @staticmethod
    def config() -> 'agediff.Config':
        parser = argparse.ArgumentParser()
        resolvent.add_args( parser )
        return agediff.config( parser, args = [] )

    @staticmethod
    def add_args( parser: argparse.ArgumentParser ):
        try:
            parser.add_argument('--numerics.tol_res', type=float, default=1e-8, help='''Relative generator residual accepted as certified.''')
            parser.add_argument('--numerics.cond_max', type=float, default=1e12, help='''Condition number of I - Q_lambda beyond which lambda is near the spectrum.''')
            parser.add_argument('--numerics.neumann_rtol', type=float, default=1e-12, help='''Relative tolerance of the perturbed resolvent iteration.''')
            parser.add_argument('--numerics.neumann_max_iter', type=int, default=500, help='''Maximum number of perturbed resolvent iterations.''')
            parser.add_argument('--numerics.dense_limit', type=int, default=20000, help='''Largest number of unknowns of a dense block system.''')
            parser.add_argument('--numerics.lambda', type=float, default=None, help='''Default lambda of the resolvent command.''')
        except argparse.ArgumentError:
            # re-parsing arguments.
            pass

    @staticmethod
    def check_config( config: 'agediff.Config' ):
        n = config.numerics
        assert isinstance( n.tol_res, ( int, float ) ) and n.tol_res > 0, 'numerics.tol_res must be positive'
        assert isinstance( n.cond_max, ( int, float ) ) and n.cond_max > 1, 'numerics.cond_max must be > 1'
        assert isinstance( n.neumann_rtol, ( int, float ) ) and n.neumann_rtol > 0, 'numerics.neumann_rtol must be positive'
        assert isinstance( n.neumann_max_iter, int ) and not isinstance( n.neumann_max_iter, bool ) and n.neumann_max_iter >= 1, \
            'numerics.neumann_max_iter must be an integer >= 1'
        assert isinstance( n.dense_limit, int ) and not isinstance( n.dense_limit, bool ) and n.dense_limit >= 1, \
            'numerics.dense_limit must be an integer >= 1'
        lam = n.get( 'lambda' )
        if lam != None:
            assert isinstance( lam, ( int, float ) ) and math.isfinite( lam ), 'numerics.lambda must be a finite real'

    @staticmethod
    def birth_matrix( cache: 'agediff.EvolutionCache', lam: float ):
        return resolvent_impl.ResolventSolver( cache ).birth_matrix( lam )
