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
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg
from scipy import optimize

import agediff
from agediff._semigroup.profile import AgeProfile
from agediff._evolution.evolution_impl import TRAPEZOID_LIMIT, _scale_rows
from agediff.utils.linalg_utils import power_iteration, dominant_eigenvalues
from .generator_impl import GeneratorMatrix
from .report import Outcome, CompactnessDiagnostics, CompactnessLevel, StrongPositivity

from loguru import logger
logger = logger.opt(colors=True)

# Margin an entrywise comparison may fall below zero and still pass.
COMPARISON_TOL = 1e-10

class Spectrum:
    r""" Spectral analysis of the discrete generator through the characteristic function lambda -> r(Q_lambda),
        dense eigenanalysis of the generator matrix, and comparisons between A and A + B.
    """
    def __init__(
            self,
            solver: 'agediff.ResolventSolver',
            bracket: Optional[Tuple[float, float]] = None,
            lambdas: Optional[List[float]] = None,
            refinements: Optional[List[Tuple[int, int]]] = None,
            threshold_offset: float = 5.0,
            seed: int = 0,
            power_tol: float = 1e-12,
            power_max_iter: int = 10000,
            root_tol: float = 1e-10,
            residual_tol: float = 1e-8,
        ):
        r""" Initializes the spectral analysis of one instance.
            Args:
                solver (:obj:`agediff.ResolventSolver`, `required`):
                    agediff.resolvent( cache )
                bracket (:obj:`Tuple[float, float]`, `optional`):
                    Search interval of the spectral bound. Defaults to default_bracket().
                lambdas (:obj:`List[float]`, `optional`):
                    lambdas of the resolvent comparison.
                refinements (:obj:`List[Tuple[int, int]]`, `optional`):
                    (n_age, n_space) levels of the compactness probe.
                threshold_offset (float, `optional`):
                    Eigenvalues with real part above s_bound - threshold_offset are counted.
                seed (int, `optional`):
                    Seed of the random comparison inputs.
                power_tol (float, `optional`):
                    Tolerance of the power iterations.
                power_max_iter (int, `optional`):
                    Maximum number of power iterations.
                root_tol (float, `optional`):
                    Bound on |r(Q_s) - 1| at the returned spectral bound.
                residual_tol (float, `optional`):
                    Bound on the generator residual of an eigenvector.
        """
        self.solver = solver
        self.cache = solver.cache
        self.model = solver.model
        self.agrid = solver.agrid
        self.semigroup = solver.semigroup
        self.bracket = None if bracket is None else ( float( bracket[0] ), float( bracket[1] ) )
        self.lambdas = [] if lambdas is None else [ float( l ) for l in lambdas ]
        self.refinements = [ ( 32, 8 ), ( 64, 16 ), ( 128, 32 ) ] if refinements is None else [ tuple( r ) for r in refinements ]
        self.threshold_offset = float( threshold_offset )
        self.seed = int( seed )
        self.power_tol = float( power_tol )
        self.power_max_iter = int( power_max_iter )
        self.root_tol = float( root_tol )
        self.residual_tol = float( residual_tol )
        self._bound = None
        self._default = None

    def __str__( self ) -> str:
        return 'Spectrum({})'.format( self.cache )

    def __repr__( self ) -> str:
        return self.__str__()

    # ---- Characteristic function ----

    def _radius( self, matrix: np.ndarray ) -> float:
        if not np.any( matrix ):
            return 0.0
        if self.model.positivity_mode and np.all( matrix >= 0 ):
            result = power_iteration( lambda v: matrix @ v, np.ones( matrix.shape[0] ), tol = self.power_tol, max_iter = self.power_max_iter )
            if result.converged:
                return result.value
            logger.debug( 'Power iteration stalled after {} iterations; using the dense eigensolve', result.iterations )
        try:
            values = scipy.linalg.eigvals( matrix )
        except ( ValueError, np.linalg.LinAlgError, scipy.linalg.LinAlgError ) as e:
            raise agediff.spectrum.NumericalError( 'spectral radius failed: {}'.format( e ) ) from e
        radius = float( np.max( np.abs( values ) ) )
        if not math.isfinite( radius ):
            raise agediff.spectrum.NumericalError( 'spectral radius is not finite' )
        return radius

    def characteristic_radius( self, lam: float ) -> float:
        r""" Returns the spectral radius r(Q_lambda) of the birth matrix.
        """
        return self._radius( self.solver.birth_matrix( lam ) )

    def char_values( self, lambdas: List[float] ) -> List[Tuple[float, float]]:
        return [ ( float( lam ), self.characteristic_radius( lam ) ) for lam in lambdas ]

    def admissible_range( self ) -> Tuple[float, float]:
        r""" lambdas for which every interval takes one trapezoidal step, (mbar_i + lambda) da in (-2, TRAPEZOID_LIMIT],
            with a 0.1% margin at the singular end. The discrete generator and Q_lambda agree exactly on this range.
        """
        da = self.agrid.spacing
        levels = self.cache.mortality_levels
        return ( -0.999 * 2.0 / da - float( np.min( levels ) ), TRAPEZOID_LIMIT / da - float( np.max( levels ) ) )

    def spatial_floor( self ) -> float:
        r""" min over age nodes of the rightmost eigenvalue of A(a_i), which already carries the mortality.
        """
        return min( float( scipy.linalg.eigvalsh( self.model.assemble_spatial_operator( a ).matrix )[-1] ) for a in self.agrid.nodes )

    def default_bracket( self ) -> Tuple[float, float]:
        r""" [min_i lambda_max(A(a_i)) - 1, ||beta|| a_max + 1] clipped to the admissible range. With a nonzero birth law
            the lower end moves down by doubling steps until r(Q_lo) > 1 or the admissible range ends.
        """
        if self._default is not None:
            return self._default
        low_limit, high_limit = self.admissible_range()
        lo = max( self.spatial_floor() - 1.0, low_limit )
        hi = min( self.model.birth_sup() * self.agrid.a_max + 1.0, high_limit )
        if self.model.birth_sup() > 0:
            step = 1.0
            while lo > low_limit and self.characteristic_radius( lo ) <= 1.0:
                step *= 2.0
                lo = max( lo - step, low_limit )
                logger.debug( 'Lowering the bracket to {:.6g}', lo )
        self._default = ( lo, hi )
        return self._default

    def spectral_bound( self, bracket: Optional[Tuple[float, float]] = None ) -> Optional[float]:
        r""" Root s of g(lambda) = r(Q_lambda) - 1 on the bracket by Brent's method, or None when g does not change sign.

            Returns:
                s_bound (float or None):
                    Spectral bound with |g(s)| <= root_tol, None for none-found.

            Raises:
                NumericalError: the default bracket has no sign change although the birth law is nonzero.
        """
        if bracket is None and self._bound is not None:
            return self._bound[0]
        lo, hi = self.search_bracket() if bracket is None else bracket
        if not self.model.positivity_mode:
            logger.warning( 'Spectral bound without positivity mode: r(Q_lambda) need not be monotone' )
        bound = self._root( lambda lam: self.characteristic_radius( lam ) - 1.0, lo, hi, 'r(Q_lambda)' )
        if bound is None and bracket is None and self.bracket is None and self.model.birth_sup() > 0:
            raise agediff.spectrum.NumericalError(
                'r(Q_lambda) - 1 has no sign change on the admissible bracket [{:.6g}, {:.6g}]; increase model.n_age'.format( lo, hi ) )
        if bracket is None:
            self._bound = ( bound, )
        return bound

    def search_bracket( self ) -> Tuple[float, float]:
        return self.bracket if self.bracket is not None else self.default_bracket()

    def _root( self, g, lo: float, hi: float, name: str ) -> Optional[float]:
        if not lo < hi:
            raise agediff.config.ValidationError( 'numerics.bracket_lo {} must be below numerics.bracket_hi {}'.format( lo, hi ) )
        g_lo = g( lo )
        g_hi = g( hi )
        logger.debug( '{} - 1 on [{:.6g}, {:.6g}]: {:.3g}, {:.3g}', name, lo, hi, g_lo, g_hi )
        if g_lo == 0.0:
            return float( lo )
        if g_hi == 0.0:
            return float( hi )
        if g_lo * g_hi > 0:
            logger.info( 'No sign change of {} - 1 on [{:.6g}, {:.6g}]: none-found', name, lo, hi )
            return None
        root = optimize.brentq( g, lo, hi, xtol = 1e-14, rtol = 4 * np.finfo( float ).eps, maxiter = 500 )
        value = g( root )
        if abs( value ) > self.root_tol:
            # Secant polish on the bracketing side points.
            a, b = root - 1e-8, root + 1e-8
            ga, gb = g( a ), g( b )
            if gb != ga:
                candidate = b - gb * ( b - a ) / ( gb - ga )
                if abs( g( candidate ) ) < abs( value ):
                    root, value = candidate, g( candidate )
        if abs( value ) > self.root_tol:
            logger.warning( '{} - 1 is {:.3g} at the root {:.12g}, above {:.3g}', name, value, root, self.root_tol )
        return float( root )

    def richardson( self ) -> Optional[float]:
        r""" Extrapolates the spectral bound from this grid and the grid with half the age intervals, (4 s_h - s_2h) / 3.
            Returns None when n_age is odd or either bound is none-found.
        """
        if self.agrid.n_age % 2 != 0 or self.agrid.n_age < 2:
            return None
        fine = self.spectral_bound()
        coarse = self.refined( self.agrid.n_age // 2, self.cache.n_space ).spectral_bound()
        if fine is None or coarse is None:
            return None
        return ( 4.0 * fine - coarse ) / 3.0

    # ---- Eigenvectors ----

    def principal_eigenvector( self, s: float ) -> AgeProfile:
        r""" Positive eigenvector psi(a_i) = Pi_s(a_i, 0) psi0 with Q_s psi0 = psi0, at unit E_0 norm.

            Raises:
                DegeneratePeripheralSpectrum: no positive fixed vector of Q_s could be isolated.
                NumericalError: the eigenvector fails its generator residual.
        """
        q = self.solver.birth_matrix( s )
        result = power_iteration( lambda v: q @ v, np.ones( q.shape[0] ), tol = self.power_tol, max_iter = self.power_max_iter )
        vector = result.vector
        if not result.converged or not np.all( vector >= -self.model.tol_pos ) or not np.any( vector > 0 ):
            top = dominant_eigenvalues( q, 2 )
            raise agediff.spectrum.DegeneratePeripheralSpectrum(
                'no positive fixed vector of Q_s at s = {:.12g}; top eigenvalues of Q_s: {}'.format(
                    s, ', '.join( '{:.6g}'.format( v ) for v in top ) ),
                eigenvalues = top )
        values = self.cache.march( s, vector )
        psi = AgeProfile( values, self.agrid )
        psi = psi * ( 1.0 / self.model.profile_norm( psi ) )
        residual = self.semigroup.generator_residual( psi, psi * s, shift = s )
        if residual > self.residual_tol:
            raise agediff.spectrum.NumericalError(
                'principal eigenvector at s = {:.12g} has generator residual {:.3g} above {:.3g}'.format( s, residual, self.residual_tol ) )
        return psi

    def strong_positivity( self ) -> StrongPositivity:
        r""" Age nodes where diag(beta(a_i)) Pi(a_i, 0) > 0 entrywise, with their trapezoid measure.
        """
        ages = []
        measure = 0.0
        for i in range( self.agrid.n_nodes ):
            block = _scale_rows( self.cache.birth[i], self.cache.product( i, 0 ) )
            if np.all( block > 0 ):
                ages.append( float( self.agrid.nodes[i] ) )
                measure += float( self.agrid.weights[i] )
        return StrongPositivity( ages = ages, measure = measure )

    # ---- Perturbed spectrum ----

    def _perturbed_operator( self, lam: float, pert: 'agediff.PerturbationSpec' ):
        return lambda v: pert.apply( self.solver.solve_values( lam, v )[0] )

    def perturbed_radius( self, lam: float, pert: 'agediff.PerturbationSpec' ) -> float:
        r""" Spectral radius of B (lambda - A)^{-1}, matrix-free with a dense fallback.
        """
        if pert.is_zero():
            return 0.0
        shape = ( self.agrid.n_nodes, self.cache.n_space )
        operator = self._perturbed_operator( lam, pert )
        result = power_iteration( operator, np.ones( shape ), tol = self.power_tol, max_iter = self.power_max_iter )
        if result.converged:
            return result.value
        logger.debug( 'Power iteration on B R(lambda) stalled at lambda {:.6g}; using the dense eigensolve', lam )
        size = shape[0] * shape[1]
        if size > self.solver.dense_limit:
            raise agediff.spectrum.NumericalError( 'power iteration on B R(lambda) failed and the dense fallback exceeds numerics.dense_limit' )
        columns = operator( np.eye( size ).reshape( shape + ( size, ) ) ).reshape( size, size )
        return self._radius( columns )

    def perturbed_spectral_bound( self, pert: 'agediff.PerturbationSpec', bracket: Optional[Tuple[float, float]] = None ) -> Optional[float]:
        r""" s(A + B): root of r(B (lambda - A)^{-1}) = 1 above s(A), which equals s(A) when r stays below 1 there.
        """
        s_a = self.spectral_bound( bracket )
        if pert.is_zero():
            return s_a
        lo, hi = self.search_bracket() if bracket is None else bracket
        hi = min( hi + pert.norm_bound(), self.admissible_range()[1] )
        if s_a is not None:
            lo = s_a + 1e-6 * max( 1.0, abs( s_a ) )
        g = lambda lam: self.perturbed_radius( lam, pert ) - 1.0
        if s_a is not None and g( lo ) < 0:
            return s_a
        return self._root( g, lo, hi, 'r(B R(lambda))' )

    def perturbed_principal_eigenvector( self, s: float, pert: 'agediff.PerturbationSpec' ) -> AgeProfile:
        r""" Positive eigenvector of A + B at s: psi = (s - A)^{-1} w with B (s - A)^{-1} w = w.
        """
        if pert.is_zero():
            return self.principal_eigenvector( s )
        shape = ( self.agrid.n_nodes, self.cache.n_space )
        result = power_iteration( self._perturbed_operator( s, pert ), np.ones( shape ), tol = self.power_tol, max_iter = self.power_max_iter )
        if not result.converged or not np.all( result.vector >= -self.model.tol_pos ):
            raise agediff.spectrum.DegeneratePeripheralSpectrum(
                'no positive fixed vector of B R(s) at s = {:.12g}'.format( s ), eigenvalues = np.array([ result.value ]) )
        psi = AgeProfile( self.solver.solve_values( s, result.vector )[0], self.agrid )
        psi = psi * ( 1.0 / self.model.profile_norm( psi ) )
        zeta = AgeProfile( s * psi.values - pert.apply( psi.values ), self.agrid )
        residual = self.semigroup.generator_residual( psi, zeta, shift = s )
        if residual > self.residual_tol:
            raise agediff.spectrum.NumericalError(
                'perturbed principal eigenvector at s = {:.12g} has generator residual {:.3g} above {:.3g}'.format( s, residual, self.residual_tol ) )
        return psi

    # ---- Dense eigenanalysis ----

    def generator( self, pert: Optional['agediff.PerturbationSpec'] = None ) -> GeneratorMatrix:
        return GeneratorMatrix( self.cache, pert = pert, dense_limit = self.solver.dense_limit )

    def eigenvalues( self, pert: Optional['agediff.PerturbationSpec'] = None ) -> np.ndarray:
        return self.generator( pert ).eigenvalues()

    def refined( self, n_age: int, n_space: int ) -> 'Spectrum':
        r""" The same analysis on another grid, with this analysis' settings.
        """
        model = self.model.refine( n_age, n_space )
        cache = agediff.EvolutionCache( model, self.cache.substeps )
        solver = agediff.ResolventSolver(
            cache,
            tol_res = self.solver.tol_res,
            cond_max = self.solver.cond_max,
            neumann_rtol = self.solver.neumann_rtol,
            neumann_max_iter = self.solver.neumann_max_iter,
            dense_limit = self.solver.dense_limit,
        )
        return Spectrum( solver, self.bracket, self.lambdas, self.refinements, self.threshold_offset, self.seed,
            self.power_tol, self.power_max_iter, self.root_tol, self.residual_tol )

    def compactness_probe( self, refinements: Optional[List[Tuple[int, int]]] = None ) -> CompactnessDiagnostics:
        r""" Singular values of the dense discrete resolvent and eigenvalue counts right of a threshold per refinement.

            The reference lambda is s_bound + 1 and the threshold s_bound - threshold_offset, both from this grid;
            without a spectral bound the bracket midpoint stands in for s_bound + 1.
            The decay exponent is the slope of log sigma_k against log k over the top half of the singular values.
        """
        refinements = self.refinements if refinements is None else [ tuple( r ) for r in refinements ]
        s = self.spectral_bound()
        if s is None:
            lo, hi = self.search_bracket()
            lam_ref = 0.5 * ( lo + hi )
            threshold = lam_ref - 1.0 - self.threshold_offset
        else:
            lam_ref = s + 1.0
            threshold = s - self.threshold_offset

        levels = []
        counts = []
        singular_values = np.zeros( 0 )
        for n_age, n_space in refinements:
            level = self.refined( n_age, n_space )
            generator = level.generator()
            eigenvalues = generator.eigenvalues()
            count = int( np.sum( eigenvalues.real > threshold ) )
            inverse = scipy.linalg.svdvals( generator.shifted( lam_ref ) )
            if np.any( inverse <= 0 ):
                raise agediff.resolvent.NearSpectrumError(
                    'reference lambda {:.6g} is an eigenvalue at refinement ({}, {})'.format( lam_ref, n_age, n_space ), lam = lam_ref, condition = float('inf') )
            singular_values = np.sort( 1.0 / inverse )[::-1]
            half = max( 2, len( singular_values ) // 2 )
            ranks = np.arange( 1, half + 1 )
            exponent = float( np.polyfit( np.log( ranks ), np.log( singular_values[:half] ), 1 )[0] )
            logger.debug( 'Compactness level ({}, {}): {} eigenvalues above {:.6g}, decay exponent {:.4f}', n_age, n_space, count, threshold, exponent )
            counts.append( ( ( n_age, n_space ), count ) )
            levels.append( CompactnessLevel(
                n_age = n_age,
                n_space = n_space,
                count = count,
                decay_exponent = exponent,
                smallest_singular_value = float( singular_values[-1] ),
                largest_singular_value = float( singular_values[0] ),
            ))
        return CompactnessDiagnostics(
            lam_ref = lam_ref,
            threshold = threshold,
            singular_values = singular_values,
            halfplane_counts = counts,
            decay_exponent = levels[-1].decay_exponent if len( levels ) > 0 else float('nan'),
            levels = levels,
        )

    # ---- Comparison of A and A + B ----

    def comparison_suite( self, pert: 'agediff.PerturbationSpec', lambdas: Optional[List[float]] = None ) -> List[Outcome]:
        r""" Checks that a positive perturbation can only enlarge the spectral bound, the resolvent and the semigroup.

            (a) s(A) <= s(A + B); (b) (lambda - A)^{-1} phi <= (lambda - A - B)^{-1} phi entrywise for phi >= 0 and every
            lambda above both bounds; (c) e^{tA} u0 <= e^{t(A+B)} u0 at t in {da, a_max/2, a_max}; (d) the principal
            eigenvector of A + B is nonnegative and certified. Each margin is the most negative difference observed.
        """
        if not self.model.positivity_mode or not pert.positive:
            raise agediff.config.ValidationError( 'perturbation.positive: the comparison suite needs positivity mode and a positive perturbation' )
        lambdas = self.lambdas if lambdas is None else [ float( l ) for l in lambdas ]
        outcomes = []

        s_a = self.spectral_bound()
        s_ab = self.perturbed_spectral_bound( pert )
        if s_a is None and s_ab is None:
            outcomes.append( Outcome( 'spectral_bound', True, 0.0, 'both bounds none-found', skipped = True ) )
        elif s_ab is None:
            outcomes.append( Outcome( 'spectral_bound', True, float('inf'), 's(A) = {:.12g}, s(A+B) none-found above the bracket'.format( s_a ) ) )
        elif s_a is None:
            outcomes.append( Outcome( 'spectral_bound', True, float('inf'), 's(A) none-found, s(A+B) = {:.12g}'.format( s_ab ) ) )
        else:
            margin = s_ab - s_a
            outcomes.append( Outcome( 'spectral_bound', margin >= -1e-9, margin, 's(A) = {:.12g}, s(A+B) = {:.12g}'.format( s_a, s_ab ) ) )

        known = [ s for s in ( s_a, s_ab ) if s is not None ]
        floor = max( known ) if len( known ) > 0 else -float('inf')
        rng = np.random.default_rng( self.seed )
        shape = ( self.agrid.n_nodes, self.cache.n_space )
        inputs = [ np.ones( shape ) ] + [ rng.uniform( 0.0, 1.0, size = shape ) for _ in range( 3 ) ]
        for lam in lambdas:
            name = 'resolvent[{:.6g}]'.format( lam )
            if lam <= floor:
                logger.info( 'Skipping resolvent comparison at lambda {:.6g}: not above the spectral bounds ({:.6g})', lam, floor )
                outcomes.append( Outcome( name, True, 0.0, 'lambda not above max(s(A), s(A+B))', skipped = True ) )
                continue
            margin = float('inf')
            for phi in inputs:
                profile = AgeProfile( phi, self.agrid )
                plain = self.solver.apply( profile, lam ).psi.values
                perturbed = self.solver.apply_perturbed( profile, lam, pert ).psi.values
                margin = min( margin, float( np.min( perturbed - plain ) ) )
            outcomes.append( Outcome( name, margin >= -COMPARISON_TOL, margin, '{} nonnegative inputs'.format( len( inputs ) ) ) )

        a_max = self.agrid.a_max
        half = self.agrid.spacing * round( 0.5 * a_max / self.agrid.spacing )
        u0 = AgeProfile.ones( self.agrid, self.cache.n_space )
        plain = self.semigroup.evolve( u0, a_max )
        perturbed = self.semigroup.evolve_perturbed( u0, a_max, pert )
        for t in ( self.agrid.spacing, half, a_max ):
            margin = float( np.min( perturbed.at_time( t ).values - plain.at_time( t ).values ) )
            outcomes.append( Outcome( 'semigroup[{:.6g}]'.format( t ), margin >= -COMPARISON_TOL, margin, 'u0 = 1' ) )

        if s_ab is None:
            outcomes.append( Outcome( 'eigenvector', True, 0.0, 's(A+B) none-found', skipped = True ) )
        else:
            try:
                source = ''
                if s_a is not None and s_ab <= s_a:
                    logger.info( 's(A+B) {:.12g} <= s(A) {:.12g}: checking the principal eigenvector of A instead', s_ab, s_a )
                    source = '; eigenvector of A, s(A+B) <= s(A)'
                    psi = self.principal_eigenvector( s_ab )
                else:
                    psi = self.perturbed_principal_eigenvector( s_ab, pert )
                residual = self.semigroup.generator_residual( psi, AgeProfile( s_ab * psi.values - pert.apply( psi.values ), self.agrid ), shift = s_ab )
                margin = float( np.min( psi.values ) )
                passed = self.model.cone_check( psi ) and residual <= self.residual_tol
                outcomes.append( Outcome( 'eigenvector', passed, margin, 'generator residual {:.3g}{}'.format( residual, source ) ) )
            except ( agediff.spectrum.DegeneratePeripheralSpectrum, agediff.spectrum.NumericalError ) as e:
                outcomes.append( Outcome( 'eigenvector', False, float('-inf'), str( e ) ) )
        return outcomes
