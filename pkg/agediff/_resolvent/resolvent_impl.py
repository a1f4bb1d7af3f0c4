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


import warnings
import threading
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg

import agediff
from agediff._semigroup.profile import AgeProfile

from loguru import logger
logger = logger.opt(colors=True)

class Resolvent:
    r""" Factorization of I - Q_lambda at one lambda.
    """
    def __init__( self, lam: float, q: np.ndarray, q_norm: float, condition: float, lu: Tuple[np.ndarray, np.ndarray] ):
        self.lam = float( lam )
        self.q = q
        self.q_norm = float( q_norm )
        self.condition = float( condition )
        self.lu = lu

    def solve( self, values: np.ndarray ) -> np.ndarray:
        r""" Solves (I - Q_lambda) psi0 = values for one right-hand side or stacked columns.
        """
        shape = values.shape
        solution = scipy.linalg.lu_solve( self.lu, values.reshape( shape[0], -1 ) )
        return solution.reshape( shape )

    def __repr__( self ) -> str:
        return 'Resolvent(lambda={}, q_norm={:.6g}, condition={:.6g})'.format( self.lam, self.q_norm, self.condition )

@dataclass
class ResolventResult:
    r""" Output of a resolvent application.
        path is direct for (lambda - A)^{-1}, neumann or dense for (lambda - A - B)^{-1}.
    """
    psi: AgeProfile
    psi0: np.ndarray
    lam: float
    q_norm: float
    condition: float
    certified_residual: float
    certified: bool = True
    path: str = 'direct'
    iterations: int = 0
    ratios: List[float] = field( default_factory = list )

class ResolventSolver:
    r""" Applies (lambda - A)^{-1} through the renewal construction

            psi(a) = Pi_lambda(a, 0) psi(0) + int_0^a Pi_lambda(a, s) phi(s) ds,
            (I - Q_lambda) psi(0) = int_0^a_max b(a) int_0^a Pi_lambda(a, s) phi(s) ds da,

        with Q_lambda = int b(a) Pi_lambda(a, 0) da, all integrals on the age grid with the trapezoid weights
        of the evolution cache.
    """
    def __init__(
            self,
            cache: 'agediff.EvolutionCache',
            tol_res: float = 1e-8,
            cond_max: float = 1e12,
            neumann_rtol: float = 1e-12,
            neumann_max_iter: int = 500,
            dense_limit: int = 20000,
        ):
        r""" Initializes a resolvent solver.
            Args:
                cache (:obj:`agediff.EvolutionCache`, `required`):
                    agediff.evolution( model )
                tol_res (float, `optional`):
                    Bound on the relative generator residual of a certified result.
                cond_max (float, `optional`):
                    Largest accepted 1-norm condition number of I - Q_lambda.
                neumann_rtol (float, `optional`):
                    Relative tolerance of the fixed-point iteration of the perturbed resolvent.
                neumann_max_iter (int, `optional`):
                    Maximum number of fixed-point iterations.
                dense_limit (int, `optional`):
                    Largest number of unknowns of a dense block solve.
        """
        self.cache = cache
        self.model = cache.model
        self.agrid = cache.agrid
        self.tol_res = float( tol_res )
        self.cond_max = float( cond_max )
        self.neumann_rtol = float( neumann_rtol )
        self.neumann_max_iter = int( neumann_max_iter )
        self.dense_limit = int( dense_limit )
        self.semigroup = agediff.Semigroup( cache )
        self._factorizations = {}
        self._lock = threading.Lock()

    def __str__( self ) -> str:
        return 'ResolventSolver({})'.format( self.cache )

    def __repr__( self ) -> str:
        return self.__str__()

    def birth_matrix( self, lam: float ) -> np.ndarray:
        r""" Returns Q_lambda = sum_i w_i diag(beta(a_i)) Pi_lambda(a_i, 0), shape (n_space, n_space).
        """
        n = self.cache.n_space
        columns = self.cache.march( lam, np.eye( n ) )
        return self.cache.birth_functional( columns )

    def factorize( self, lam: float ) -> Resolvent:
        r""" Factors I - Q_lambda, memoized per lambda.

            Raises:
                NearSpectrumError: ||(I - Q)^{-1}||_1 max(1, ||I - Q||_1, ||Q||_1) exceeds cond_max or is not finite.
        """
        lam = float( lam )
        with self._lock:
            if lam in self._factorizations:
                return self._factorizations[ lam ]
        q = self.birth_matrix( lam )
        matrix = np.eye( q.shape[0] ) - q
        lu = None
        condition = float('inf')
        if np.all( np.isfinite( matrix ) ):
            with np.errstate( all = 'ignore' ), warnings.catch_warnings():
                warnings.simplefilter( 'ignore', scipy.linalg.LinAlgWarning )
                lu = scipy.linalg.lu_factor( matrix, check_finite = False )
                inverse = scipy.linalg.lu_solve( lu, np.eye( q.shape[0] ), check_finite = False )
            if np.all( np.isfinite( inverse ) ):
                # Scaled by max(1, ||I - Q||, ||Q||) instead of ||I - Q|| alone, which gives 1 for every nonzero 1 x 1 system.
                scale = max( 1.0, float( np.linalg.norm( matrix, 1 ) ), float( np.linalg.norm( q, 1 ) ) )
                condition = float( np.linalg.norm( inverse, 1 ) ) * scale
        if not np.isfinite( condition ) or condition > self.cond_max:
            raise agediff.resolvent.NearSpectrumError(
                'lambda {:.12g} is at or near the spectrum: condition of I - Q_lambda is {:.3g} (limit {:.3g})'.format(
                    lam, condition, self.cond_max ),
                lam = lam, condition = condition )
        resolvent = Resolvent( lam, q, self.model.operator_norm( q ), condition, lu )
        with self._lock:
            self._factorizations[ lam ] = resolvent
        return resolvent

    def solve_values( self, lam: float, values: np.ndarray ) -> Tuple[np.ndarray, np.ndarray]:
        r""" Uncertified (lambda - A)^{-1} on raw node values, with columns stacked along trailing axes.

            Returns:
                psi (:obj:`np.ndarray`):
                    Values on all nodes, shape of values.
                psi0 (:obj:`np.ndarray`):
                    Value at age 0.
        """
        resolvent = self.factorize( lam )
        particular = self.cache.march( lam, np.zeros( values.shape[1:] ), values )
        psi0 = resolvent.solve( self.cache.birth_functional( particular ) )
        return self.cache.march( lam, psi0, values ), psi0

    def _certify( self, result: ResolventResult, zeta: np.ndarray, scale: float, strict: bool ) -> ResolventResult:
        residual = self.semigroup.generator_residual( result.psi, AgeProfile( zeta, self.agrid ), shift = result.lam )
        relative = residual / scale if scale > 0 else residual
        result.certified_residual = float( relative )
        result.certified = bool( relative <= self.tol_res )
        if not result.certified:
            message = 'resolvent at lambda {:.12g} ({}) has generator residual {:.3g} above {:.3g}'.format(
                result.lam, result.path, relative, self.tol_res )
            if strict:
                raise agediff.resolvent.InternalInconsistencyError( message )
            logger.warning( message )
        return result

    def apply( self, phi: AgeProfile, lam: float, strict: bool = True ) -> ResolventResult:
        r""" Returns psi = (lambda - A)^{-1} phi, certified by the generator residual of (psi, lambda psi - phi).
            Args:
                phi (:obj:`agediff.AgeProfile`, `required`):
                    Right-hand side.
                lam (float, `required`):
                    Real lambda in the resolvent set.
                strict (bool, `optional`):
                    Raise on an uncertified result instead of flagging it.

            Raises:
                NearSpectrumError: I - Q_lambda is singular to working precision.
                InternalInconsistencyError: strict and the residual is above tol_res.
        """
        self.model.check_profile( phi, 'phi' )
        lam = float( lam )
        resolvent = self.factorize( lam )
        values = np.asarray( phi.values, dtype = float )
        psi, psi0 = self.solve_values( lam, values )
        result = ResolventResult(
            psi = AgeProfile( psi, self.agrid ),
            psi0 = psi0,
            lam = lam,
            q_norm = resolvent.q_norm,
            condition = resolvent.condition,
            certified_residual = 0.0,
        )
        return self._certify( result, lam * psi - values, self.model.profile_norm( phi ), strict )

    def apply_perturbed( self, phi: AgeProfile, lam: float, pert: 'agediff.PerturbationSpec', strict: bool = True ) -> ResolventResult:
        r""" Returns psi = (lambda - A - B)^{-1} phi = (lambda - A)^{-1} w with w = phi + B (lambda - A)^{-1} w.

            The fixed point is found by the Neumann iteration of B (lambda - A)^{-1}. When it diverges, stalls
            or (lambda - A) is not invertible, the full-node block system of lambda - A - B is solved densely.

            Raises:
                NearSpectrumError: both paths fail.
        """
        self.model.check_profile( phi, 'phi' )
        if pert.is_zero():
            return self.apply( phi, lam, strict = strict )
        lam = float( lam )
        values = np.asarray( phi.values, dtype = float )
        scale = self.model.profile_norm( phi )

        result = None
        try:
            result = self._neumann( values, lam, pert )
        except agediff.resolvent.NearSpectrumError as e:
            logger.debug( 'Perturbed resolvent at lambda {:.6g}: {}', lam, e )
        if result is None:
            result = self._dense( values, lam, pert )
        zeta = lam * result.psi.values - pert.apply( result.psi.values ) - values
        return self._certify( result, zeta, scale, strict )

    def _neumann( self, values: np.ndarray, lam: float, pert: 'agediff.PerturbationSpec' ) -> Optional[ResolventResult]:
        resolvent = self.factorize( lam )
        w = values.copy()
        ratios = []
        previous = None
        for iteration in range( 1, self.neumann_max_iter + 1 ):
            new = values + pert.apply( self.solve_values( lam, w )[0] )
            if not np.all( np.isfinite( new ) ):
                logger.debug( 'Neumann iteration at lambda {:.6g} produced non-finite values', lam )
                return None
            delta = self.model.profile_norm( AgeProfile( new - w, self.agrid ) )
            size = self.model.profile_norm( AgeProfile( new, self.agrid ) )
            if previous is not None and previous > 0:
                ratios.append( delta / previous )
            w = new
            if delta <= self.neumann_rtol * max( size, np.finfo( float ).tiny ):
                psi, psi0 = self.solve_values( lam, w )
                return ResolventResult(
                    psi = AgeProfile( psi, self.agrid ),
                    psi0 = psi0,
                    lam = lam,
                    q_norm = resolvent.q_norm,
                    condition = resolvent.condition,
                    certified_residual = 0.0,
                    path = 'neumann',
                    iterations = iteration,
                    ratios = ratios,
                )
            if len( ratios ) >= 5 and all( r > 1.0 for r in ratios[-5:] ):
                logger.debug( 'Neumann iteration at lambda {:.6g} diverges (ratio {:.3g})', lam, ratios[-1] )
                return None
            previous = delta
        logger.debug( 'Neumann iteration at lambda {:.6g} did not converge in {} iterations', lam, self.neumann_max_iter )
        return None

    def _dense( self, values: np.ndarray, lam: float, pert: 'agediff.PerturbationSpec' ) -> ResolventResult:
        from agediff._spectrum.generator_impl import full_node_solve
        logger.debug( 'Perturbed resolvent at lambda {:.6g}: dense block solve', lam )
        try:
            psi, condition = full_node_solve( self.cache, lam, values, pert = pert, dense_limit = self.dense_limit )
        except ( np.linalg.LinAlgError, scipy.linalg.LinAlgError ) as e:
            raise agediff.resolvent.NearSpectrumError(
                'lambda {:.12g} is at or near the spectrum of A + B: {}'.format( lam, e ), lam = lam, condition = float('inf') ) from e
        if not np.isfinite( condition ) or condition > self.cond_max:
            raise agediff.resolvent.NearSpectrumError(
                'lambda {:.12g} is at or near the spectrum of A + B: condition of the block system is {:.3g}'.format( lam, condition ),
                lam = lam, condition = condition )
        return ResolventResult(
            psi = AgeProfile( psi, self.agrid ),
            psi0 = psi[0].copy(),
            lam = lam,
            q_norm = float('nan'),
            condition = condition,
            certified_residual = 0.0,
            path = 'dense',
        )

    def perturbation_norm( self, lam: float, pert: 'agediff.PerturbationSpec' ) -> float:
        r""" Norm of B (lambda - A)^{-1} induced by the E_0 norm, from its dense matrix on all nodes.
            Exact for l1_weighted; for the sup norm the column-block bound sum_i w_i ||M_ij||_inf / w_j.
        """
        n_nodes = self.agrid.n_nodes
        n = self.cache.n_space
        size = n_nodes * n
        unit = np.eye( size ).reshape( n_nodes, n, size )
        image = pert.apply( self.solve_values( lam, unit )[0] ).reshape( n_nodes, n, n_nodes, n )
        age_weights = self.agrid.weights
        if self.model.norms.space_norm == 'sup':
            blocks = np.max( np.sum( np.abs( image ), axis = 3 ), axis = 1 )
            return float( np.max( ( age_weights @ blocks ) / age_weights ) )
        space_weights = self.model.space_weights
        weights = np.outer( age_weights, space_weights )
        columns = np.einsum( 'ik,ikjl->jl', weights, np.abs( image ) )
        return float( np.max( columns / weights ) )
