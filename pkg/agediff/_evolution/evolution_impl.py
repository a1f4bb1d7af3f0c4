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
import threading
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
import scipy.linalg

import agediff

from loguru import logger
logger = logger.opt(colors=True)

def rational_factor( z ):
    r""" Trapezoidal (Crank-Nicolson) approximation (1 - z/2) / (1 + z/2) of exp(-z).
    """
    return ( 1.0 - 0.5 * z ) / ( 1.0 + 0.5 * z )

# Largest (mbar + lambda) da taken by one trapezoidal step.
TRAPEZOID_LIMIT = 1.0

class ShiftCoefficients( NamedTuple ):
    r""" Scalar coefficients of one shifted family, per age interval.
        factors multiply the transported value, head and tail weigh the source at the two ends of the interval.
        split marks the intervals past the trapezoidal limit.
    """
    factors: np.ndarray
    head: np.ndarray
    tail: np.ndarray
    split: np.ndarray

def shift_coefficients( z: np.ndarray, da: float ) -> ShiftCoefficients:
    r""" Coefficients of g(da) = factor g(0) + head f(0) + tail f(da) for g' = -(z/da) g + f on one interval.

        Up to TRAPEZOID_LIMIT this is the trapezoidal step, factor = r(z) and head = tail = (da/2) / (1 + z/2).
        Past it the factor continues as exp(-y), y = z log(1/r(L)) / L with L the limit, which keeps it positive and
        decreasing in z. Head and tail then integrate the linear interpolant of f exactly at rate y.
    """
    z = np.atleast_1d( np.asarray( z, dtype = float ) )
    split = z > TRAPEZOID_LIMIT
    factors = rational_factor( z )
    head = 0.5 * da / ( 1.0 + 0.5 * z )
    tail = head.copy()
    if np.any( split ):
        y = z[ split ] * ( -math.log( rational_factor( TRAPEZOID_LIMIT ) ) / TRAPEZOID_LIMIT )
        decay = np.exp( -y )
        first = -np.expm1( -y ) / y
        second = ( -np.expm1( -y ) - y * decay ) / y ** 2
        factors[ split ] = decay
        head[ split ] = da * second
        tail[ split ] = da * ( first - second )
    return ShiftCoefficients( factors, head, tail, split )

def _scale_rows( weights: np.ndarray, values: np.ndarray ) -> np.ndarray:
    r""" Multiplies the leading spatial axis of values by weights, for vectors and stacked columns alike.
    """
    return weights.reshape( ( -1, ) + ( 1, ) * ( values.ndim - 1 ) ) * values

class EstimateFit( NamedTuple ):
    r""" Exponential envelope ||Pi(a_i, a_j)|| <= m0 * exp(varpi * (a_i - a_j)).
        samples holds the (a_i, a_j, norm) triples the slope was fitted on.
    """
    m0: float
    varpi: float
    samples: List[Tuple[float, float, float]]

class EvolutionCache:
    r""" Discrete parabolic evolution operator Pi(a_i, a_j) on the age grid.

        On interval i the scalar level mbar_i = min_x mu(a_i + da/2, x) is split off A(a).
        The residual operator A(a) + mbar_i is propagated by `substeps` Crank-Nicolson steps with
        coefficients frozen at the substep midpoints (propagators[i]), and

            step[i] = r(mbar_i da) propagators[i],         r(z) = (1 - z/2) / (1 + z/2).

        The family of -lambda + A replaces mbar_i by mbar_i + lambda, so shifting the mortality by c
        and shifting lambda by c give the same matrices. Past (mbar_i + lambda) da = TRAPEZOID_LIMIT the scalar factor
        continues exponentially (see shift_coefficients), so it stays in (0, 1) and decreases however large lambda is.
    """
    def __init__( self, model: 'agediff.Model', substeps: int ):
        self.model = model
        self.agrid = model.agrid
        self.sgrid = model.sgrid
        self.substeps = int( substeps )
        self.positivity_mode = model.positivity_mode

        n_age = self.agrid.n_age
        n = self.sgrid.n_space
        da = self.agrid.spacing

        self._products = {}
        self._shifts = {}
        self._lock = threading.Lock()

        self.mortality_levels = np.zeros( n_age )
        self.interval_substeps = np.zeros( n_age, dtype = int )
        self.propagators = np.zeros( ( n_age, n, n ) )
        for i in range( n_age ):
            self.mortality_levels[i] = float( np.min( model.mortality_at( self.agrid.midpoint( i ) ) ) )
            self.propagators[i], self.interval_substeps[i] = self._build_propagator( i )
        self.mortality_levels.flags.writeable = False
        self.propagators.flags.writeable = False

        self.steps = self.shift_factors( 0.0 ).reshape( -1, 1, 1 ) * self.propagators
        self.steps.flags.writeable = False
        if not np.all( np.isfinite( self.steps ) ):
            raise agediff.evolution.StepConstructionError( 'step matrices are not finite; increase numerics.substeps' )

        self.birth = model.birth_at_nodes()
        self.weights = self.agrid.weights
        self.birth_diagonal = 1.0 - self.weights[0] * self.birth[0]
        if np.any( self.birth_diagonal <= 0 ):
            raise agediff.evolution.StepConstructionError(
                'birth rate at age 0 is too large for the age grid (1 - da/2 * beta(0) <= 0); increase model.n_age'
            )

        self.positive = bool( np.all( self.steps >= -model.tol_pos * max( 1.0, float( np.max( np.abs( self.steps ) ) ) ) ) )
        if self.positivity_mode and not self.positive:
            logger.warning( 'Evolution steps have negative entries below -{}; positivity is not preserved', model.tol_pos )

        self._origin = np.zeros( ( n_age + 1, n, n ) )
        self._origin[0] = np.eye( n )
        for i in range( n_age ):
            self._origin[i + 1] = self.steps[i] @ self._origin[i]
        self._origin.flags.writeable = False

        logger.debug( 'Built evolution cache: {} intervals, {} space nodes, substeps {}..{}',
            n_age, n, int( self.interval_substeps.min() ), int( self.interval_substeps.max() ) )

    def __str__( self ) -> str:
        return 'EvolutionCache({}, substeps={})'.format( self.model, self.substeps )

    def __repr__( self ) -> str:
        return self.__str__()

    @property
    def n_space( self ) -> int:
        return self.sgrid.n_space

    @property
    def n_age( self ) -> int:
        return self.agrid.n_age

    def _build_propagator( self, i: int ) -> Tuple[np.ndarray, int]:
        da = self.agrid.spacing
        n = self.sgrid.n_space
        mbar = self.mortality_levels[i]
        z = mbar * da
        if z <= -2.0:
            raise agediff.evolution.StepConstructionError(
                'interval {}: mortality level {:.6g} times da {:.6g} is <= -2; increase model.n_age'.format( i, mbar, da ) )
        if self.positivity_mode and z >= 2.0:
            raise agediff.evolution.StepConstructionError(
                'interval {}: mortality level {:.6g} times da {:.6g} is >= 2; increase model.n_age'.format( i, mbar, da ) )

        substeps = self.substeps
        operators, dt = self._interval_operators( i, substeps )
        for _ in range( 8 ):
            if not self.positivity_mode:
                break
            stiffness = max( float( np.max( -np.diag( op ) ) ) for op in operators )
            needed = max( substeps, int( math.ceil( da * stiffness / 2.0 - 1e-12 ) ) )
            if needed <= substeps:
                break
            logger.debug( 'Interval {}: raising substeps {} -> {} for positivity', i, substeps, needed )
            substeps = needed
            # operators always match the reported count.
            operators, dt = self._interval_operators( i, substeps )

        propagator = np.eye( n )
        for op in operators:
            left = np.eye( n ) - 0.5 * dt * op
            right = np.eye( n ) + 0.5 * dt * op
            try:
                lu, piv = scipy.linalg.lu_factor( left, check_finite = True )
            except ( ValueError, scipy.linalg.LinAlgError ) as e:
                raise agediff.evolution.StepConstructionError(
                    'interval {}: Crank-Nicolson system cannot be factored ({}); increase numerics.substeps'.format( i, e ) ) from e
            if np.any( np.abs( np.diag( lu ) ) <= 1e-14 * max( 1.0, float( np.max( np.abs( left ) ) ) ) ):
                raise agediff.evolution.StepConstructionError(
                    'interval {}: Crank-Nicolson system is singular; increase numerics.substeps'.format( i ) )
            propagator = scipy.linalg.lu_solve( ( lu, piv ), right @ propagator )
        if not np.all( np.isfinite( propagator ) ):
            raise agediff.evolution.StepConstructionError(
                'interval {}: propagator is not finite; increase numerics.substeps'.format( i ) )
        return propagator, substeps

    def _interval_operators( self, i: int, substeps: int ) -> Tuple[List[np.ndarray], float]:
        r""" A(a) + mbar_i frozen at the midpoints of `substeps` equal pieces of interval i.
        """
        n = self.sgrid.n_space
        dt = self.agrid.spacing / substeps
        ages = self.agrid.nodes[i] + dt * ( np.arange( substeps ) + 0.5 )
        shift = self.mortality_levels[i] * np.eye( n )
        return [ self.model.assemble_spatial_operator( a ).matrix + shift for a in ages ], dt

    def _check_indices( self, i: int, j: int ):
        if j > i:
            raise agediff.evolution.CausalityError( 'Pi(a_{}, a_{}) is undefined: evolution only runs forward in age (j <= i)'.format( i, j ) )
        if j < 0 or i > self.agrid.n_age:
            raise agediff.evolution.CausalityError( 'age indices ({}, {}) are outside 0..{}'.format( i, j, self.agrid.n_age ) )

    def shift_coefficients( self, lam: float ) -> ShiftCoefficients:
        r""" Scalar factors and source weights of the family of -lambda + A, memoized per lambda.
        """
        lam = float( lam )
        with self._lock:
            if lam in self._shifts:
                return self._shifts[ lam ]
        z = ( self.mortality_levels + lam ) * self.agrid.spacing
        if np.any( z <= -2.0 ):
            raise agediff.evolution.StepConstructionError(
                'lambda {:.6g} is below -2/da - mbar; the shifted step is singular'.format( lam ) )
        coefficients = shift_coefficients( z, self.agrid.spacing )
        if np.any( coefficients.split ):
            logger.debug( 'lambda {:.6g}: {} intervals past the trapezoidal limit', lam, int( np.sum( coefficients.split ) ) )
        with self._lock:
            self._shifts[ lam ] = coefficients
        return coefficients

    def shift_factors( self, lam: float ) -> np.ndarray:
        r""" Per-interval scalar factors of the shifted family, r((mbar_i + lambda) da) up to the trapezoidal limit.
        """
        return self.shift_coefficients( lam ).factors

    def product( self, i: int, j: int ) -> np.ndarray:
        r""" Returns the matrix Pi(a_i, a_j) = step[i-1] ... step[j], memoized.
        """
        self._check_indices( i, j )
        if j == 0:
            return self._origin[i]
        key = ( i, j )
        with self._lock:
            if key in self._products:
                return self._products[key]
        matrix = np.eye( self.sgrid.n_space )
        for k in range( j, i ):
            matrix = self.steps[k] @ matrix
        matrix.flags.writeable = False
        with self._lock:
            self._products[key] = matrix
        return matrix

    def apply_pi( self, i: int, j: int, v: np.ndarray ) -> np.ndarray:
        r""" Returns Pi(a_i, a_j) v by sequential step application.
        """
        self._check_indices( i, j )
        with self._lock:
            cached = self._products.get( ( i, j ) )
        if cached is not None:
            return cached @ v
        v = np.array( v, dtype = float )
        for k in range( j, i ):
            v = self.steps[k] @ v
        return v

    def apply_pi_shifted( self, lam: float, i: int, j: int, v: np.ndarray ) -> np.ndarray:
        r""" Returns Pi_lambda(a_i, a_j) v, the evolution of -lambda + A.
        """
        self._check_indices( i, j )
        factors = self.shift_factors( lam )
        v = np.array( v, dtype = float )
        for k in range( j, i ):
            v = factors[k] * ( self.propagators[k] @ v )
        return v

    def march( self, lam: float, initial: np.ndarray, forcing: Optional[np.ndarray] = None, sign: float = 1.0 ) -> np.ndarray:
        r""" Marches psi_0 = initial through the age grid with

                psi_{i+1} = Pi_lambda(a_{i+1}, a_i) psi_i + sign * ( tail_i f_{i+1} + head_i T_i f_i ),

            the trapezoidal rule for psi(a) = Pi_lambda(a, 0) psi(0) + sign * int_0^a Pi_lambda(a, s) f(s) ds.
            head_i = tail_i = (da/2) / (1 + (mbar_i + lambda) da/2) up to the trapezoidal limit.
            Columns may be stacked along trailing axes.

            Args:
                lam (float, `required`):
                    Shift lambda.
                initial (:obj:`np.ndarray`, `required`):
                    psi(0), shape (n_space, ...).
                forcing (:obj:`np.ndarray`, `optional`):
                    f on all nodes, shape (n_age+1, n_space, ...).
                sign (float, `optional`):
                    Sign of the source term.

            Returns:
                values (:obj:`np.ndarray`):
                    psi on all nodes, shape (n_age+1, n_space, ...).
        """
        factors, head, tail, _ = self.shift_coefficients( lam )
        head = head * sign
        tail = tail * sign
        initial = np.asarray( initial, dtype = float )
        values = np.zeros( ( self.agrid.n_nodes, ) + initial.shape )
        values[0] = initial
        for i in range( self.agrid.n_age ):
            if forcing is None:
                values[i + 1] = factors[i] * ( self.propagators[i] @ values[i] )
            else:
                values[i + 1] = self.propagators[i] @ ( factors[i] * values[i] + head[i] * forcing[i] ) + tail[i] * forcing[i + 1]
        return values

    def birth_functional( self, values: np.ndarray ) -> np.ndarray:
        r""" Quadrature sum_i w_i beta(a_i) psi(a_i) of the birth law.
        """
        total = np.zeros( values.shape[1:] )
        for i in range( self.agrid.n_nodes ):
            total += self.weights[i] * _scale_rows( self.birth[i], values[i] )
        return total

    def fit_estimate( self, sample_size: int = 200, seed: int = 0 ) -> EstimateFit:
        r""" Fits ||Pi(a_i, a_j)|| <= m0 exp(varpi (a_i - a_j)) with norms induced by the spatial norm.

            The slope is the least-squares fit of log-norms against the lag on a seeded sample of pairs.
            m0 is raised until the envelope holds on every pair (i > j) of the cache.

            Args:
                sample_size (int, `optional`):
                    Number of pairs used for the slope.
                seed (int, `optional`):
                    Seed of the pair sample.

            Returns:
                fit (:obj:`agediff.EstimateFit`):
                    m0 >= 1, varpi and the fitted samples.
        """
        nodes = self.agrid.nodes
        lags = []
        norms = []
        pairs = []
        for j in range( self.agrid.n_age ):
            matrix = np.eye( self.sgrid.n_space )
            for i in range( j + 1, self.agrid.n_nodes ):
                matrix = self.steps[i - 1] @ matrix
                pairs.append( ( i, j ) )
                lags.append( nodes[i] - nodes[j] )
                norms.append( self.model.operator_norm( matrix ) )
        lags = np.asarray( lags )
        norms = np.asarray( norms )
        if len( norms ) == 0:
            return EstimateFit( m0 = 1.0, varpi = 0.0, samples = [] )

        rng = np.random.default_rng( seed )
        if len( pairs ) > sample_size:
            chosen = np.sort( rng.choice( len( pairs ), size = sample_size, replace = False ) )
        else:
            chosen = np.arange( len( pairs ) )
        samples = [ ( float( nodes[ pairs[k][0] ] ), float( nodes[ pairs[k][1] ] ), float( norms[k] ) ) for k in chosen ]

        positive = chosen[ norms[ chosen ] > 0 ]
        logs = np.log( norms[ positive ] ) if len( positive ) > 0 else np.zeros( 0 )
        if len( positive ) < 2 or np.ptp( lags[ positive ] ) == 0.0:
            varpi = 0.0
        elif np.ptp( logs ) == 0.0 and logs[0] == 0.0:
            varpi = 0.0
        else:
            varpi = float( np.polyfit( lags[ positive ], logs, 1 )[0] )

        envelope = norms * np.exp( -varpi * lags )
        m0 = max( 1.0, float( np.max( envelope ) ) )
        m0 = float( np.nextafter( m0, np.inf ) ) if m0 > 1.0 else 1.0
        return EstimateFit( m0 = m0, varpi = varpi, samples = samples )
