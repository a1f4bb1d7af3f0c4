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


from typing import Optional, Tuple

import numpy as np
import scipy.linalg
import scipy.linalg.lapack

import agediff
from agediff._semigroup.profile import AgeProfile
from agediff.utils.linalg_utils import sort_spectrum

from loguru import logger
logger = logger.opt(colors=True)

def _check_size( cache: 'agediff.EvolutionCache', dense_limit: int ):
    size = cache.agrid.n_nodes * cache.n_space
    if size > dense_limit:
        raise agediff.spectrum.SizeError(
            'dense block system has {} unknowns, above numerics.dense_limit {}; use the characteristic function '
            '(spectral-bound) instead of dense eigenanalysis'.format( size, dense_limit ) )

def _condition( lu: np.ndarray, matrix: np.ndarray ) -> float:
    gecon, = scipy.linalg.lapack.get_lapack_funcs( ( 'gecon', ), ( lu, ) )
    anorm = float( np.max( np.sum( np.abs( matrix ), axis = 0 ) ) )
    rcond, info = gecon( lu, anorm, norm = '1' )
    if info != 0 or rcond <= 0.0:
        return float('inf')
    return 1.0 / float( rcond )

def full_node_solve(
        cache: 'agediff.EvolutionCache',
        lam: float,
        values: np.ndarray,
        pert: Optional['agediff.PerturbationSpec'] = None,
        dense_limit: int = 20000,
    ) -> Tuple[np.ndarray, float]:
    r""" Solves (lambda - A - B) psi = phi as one dense block system on all age nodes.

        Block row 0 is the birth law (1 - w_0 beta_0) psi_0 - sum_{j>=1} w_j beta_j psi_j = 0; block row i+1 is the
        trapezoidal interval relation

            psi_{i+1} - rho_i T_i psi_i - tail_i B psi_{i+1} - head_i T_i B psi_i = tail_i phi_{i+1} + head_i T_i phi_i,

        with rho, head and tail the scalar coefficients of the shifted family at lambda. Without B it reproduces
        the renewal construction of the resolvent for every lambda.

        Returns:
            psi (:obj:`np.ndarray`):
                Solution on all nodes, shape (n_age+1, n_space).
            condition (float):
                1-norm condition estimate of the block system.
    """
    _check_size( cache, dense_limit )
    n_nodes = cache.agrid.n_nodes
    n = cache.n_space
    eye = np.eye( n )
    system = np.zeros( ( n_nodes, n, n_nodes, n ) )
    rhs = np.zeros( ( n_nodes, n ) )

    system[0, :, 0, :] = np.diag( cache.birth_diagonal )
    for j in range( 1, n_nodes ):
        system[0, :, j, :] = -np.diag( cache.weights[j] * cache.birth[j] )

    kernel = None if pert is None or pert.is_zero() else pert.matrix()
    factors, head, tail, _ = cache.shift_coefficients( lam )
    for i in range( cache.n_age ):
        propagator = cache.propagators[i]
        system[i + 1, :, i + 1, :] += eye
        system[i + 1, :, i, :] -= factors[i] * propagator
        if kernel is not None:
            for l in range( n_nodes ):
                system[i + 1, :, l, :] -= tail[i] * kernel[i + 1, l] * eye + head[i] * kernel[i, l] * propagator
        rhs[i + 1] = tail[i] * values[i + 1] + head[i] * ( propagator @ values[i] )

    matrix = system.reshape( n_nodes * n, n_nodes * n )
    lu, piv = scipy.linalg.lu_factor( matrix )
    condition = _condition( lu, matrix )
    psi = scipy.linalg.lu_solve( ( lu, piv ), rhs.reshape( -1 ) )
    return psi.reshape( n_nodes, n ), condition

class GeneratorMatrix:
    r""" Dense discrete generator of A (or A + B) on the unknowns at age nodes 1..n_age.

        The age-0 block is eliminated through the birth law psi_0 = L psi_{1:N}, L_j = diag(w_j beta_j) / (1 - w_0 beta_0).
        With zeta = G psi the trapezoidal interval relations read

            1/2 (zeta_{i+1} + T_i zeta_i) = -((1 + mbar_i da/2) psi_{i+1} - (1 - mbar_i da/2) T_i psi_i) / da
                                            + 1/2 ((B psi)_{i+1} + T_i (B psi)_i),

        with zeta_0 = L zeta_{1:N}. So M G = -D + M_B, and (lambda - G) restricted resolvent values reproduce phi
        whenever phi_0 = L phi_{1:N}. The relations are the trapezoidal ones, so this holds where every (mbar_i + lambda) da <= TRAPEZOID_LIMIT.
    """
    def __init__( self, cache: 'agediff.EvolutionCache', pert: Optional['agediff.PerturbationSpec'] = None, dense_limit: int = 20000 ):
        _check_size( cache, dense_limit )
        self.cache = cache
        self.model = cache.model
        self.agrid = cache.agrid
        self.pert = pert
        self.n_space = cache.n_space
        self.n_age = cache.n_age
        self.dim = self.n_age * self.n_space

        n = self.n_space
        n_age = self.n_age
        da = self.agrid.spacing
        eye = np.eye( n )

        lift = np.zeros( ( n, n_age, n ) )
        for j in range( 1, n_age + 1 ):
            lift[:, j - 1, :] = np.diag( cache.weights[j] * cache.birth[j] / cache.birth_diagonal )
        self.lift_matrix = lift.reshape( n, self.dim )

        mass = np.zeros( ( n_age, n, n_age, n ) )
        stiffness = np.zeros( ( n_age, n, n_age, n ) )
        for i in range( n_age ):
            propagator = cache.propagators[i]
            z = cache.mortality_levels[i] * da
            mass[i, :, i, :] += 0.5 * eye
            stiffness[i, :, i, :] += ( 1.0 + 0.5 * z ) / da * eye
            if i >= 1:
                mass[i, :, i - 1, :] += 0.5 * propagator
                stiffness[i, :, i - 1, :] -= ( 1.0 - 0.5 * z ) / da * propagator
            else:
                mass[0] += ( 0.5 * propagator @ self.lift_matrix ).reshape( n, n_age, n )
                stiffness[0] -= ( ( 1.0 - 0.5 * z ) / da * propagator @ self.lift_matrix ).reshape( n, n_age, n )
        mass = mass.reshape( self.dim, self.dim )
        right = -stiffness.reshape( self.dim, self.dim )

        if pert is not None and not pert.is_zero():
            kernel = pert.matrix()
            blocks = [ kernel[j, 0] * self.lift_matrix + np.kron( kernel[j, 1:], eye ) for j in range( n_age + 1 ) ]
            coupling = np.zeros( ( n_age, n, self.dim ) )
            for i in range( n_age ):
                coupling[i] = 0.5 * ( blocks[i + 1] + cache.propagators[i] @ blocks[i] )
            right = right + coupling.reshape( self.dim, self.dim )

        try:
            self.matrix = scipy.linalg.solve( mass, right )
        except ( np.linalg.LinAlgError, scipy.linalg.LinAlgError ) as e:
            raise agediff.spectrum.NumericalError( 'generator mass matrix is singular: {}'.format( e ) ) from e
        if not np.all( np.isfinite( self.matrix ) ):
            raise agediff.spectrum.NumericalError( 'generator matrix has non-finite entries' )
        logger.debug( 'Assembled generator matrix of dimension {}', self.dim )

    def __str__( self ) -> str:
        return 'GeneratorMatrix(dim={}, perturbed={})'.format( self.dim, self.pert is not None and not self.pert.is_zero() )

    def __repr__( self ) -> str:
        return self.__str__()

    def restrict( self, values: np.ndarray ) -> np.ndarray:
        return np.asarray( values, dtype = float )[1:].reshape( -1 )

    def lift( self, vector: np.ndarray ) -> np.ndarray:
        r""" Node values with the age-0 block set by the birth law.
        """
        values = np.zeros( ( self.n_age + 1, self.n_space ), dtype = np.result_type( vector, float ) )
        values[1:] = vector.reshape( self.n_age, self.n_space )
        values[0] = self.lift_matrix @ vector
        return values

    def trace_compatible( self, values: np.ndarray ) -> np.ndarray:
        return self.lift( self.restrict( values ) )

    def apply( self, psi: AgeProfile ) -> AgeProfile:
        r""" Returns G psi for the unknowns of psi at nodes 1..n_age.
        """
        self.model.check_profile( psi, 'psi' )
        return AgeProfile( self.lift( self.matrix @ self.restrict( psi.values ) ), self.agrid )

    def defect( self, psi: AgeProfile, value: float ) -> float:
        r""" Relative eigen-defect ||G psi - value psi|| / ||psi|| on the lifted unknowns.
        """
        vector = self.restrict( psi.values )
        residual = AgeProfile( self.lift( self.matrix @ vector - value * vector ), self.agrid )
        scale = self.model.profile_norm( AgeProfile( self.lift( vector ), self.agrid ) )
        norm = self.model.profile_norm( residual )
        return norm / scale if scale > 0 else norm

    def eigenvalues( self ) -> np.ndarray:
        return sort_spectrum( scipy.linalg.eigvals( self.matrix ) )

    def shifted( self, lam: float ) -> np.ndarray:
        r""" Returns the matrix lambda I - G.
        """
        return lam * np.eye( self.dim ) - self.matrix
