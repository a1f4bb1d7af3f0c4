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


from typing import Optional

import numpy as np

import agediff
from .profile import AgeProfile, Trajectory
from agediff._evolution.evolution_impl import _scale_rows

from loguru import logger
logger = logger.opt(colors=True)

class Semigroup:
    r""" Orbits of the discrete semigroup along characteristics aligned with the age grid (time step = da).
    """
    def __init__( self, cache: 'agediff.EvolutionCache' ):
        r""" Initializes the semigroup of an evolution cache.
            Args:
                cache (:obj:`agediff.EvolutionCache`, `required`):
                    agediff.evolution( model )
        """
        self.cache = cache
        self.model = cache.model
        self.agrid = cache.agrid

    def __str__( self ) -> str:
        return 'Semigroup({})'.format( self.cache )

    def __repr__( self ) -> str:
        return self.__str__()

    def _steps_for( self, t_final: float ) -> int:
        if not np.isfinite( t_final ):
            raise agediff.semigroup.DomainError( 't_final must be finite, got {}'.format( t_final ) )
        if t_final < 0:
            raise agediff.semigroup.DomainError( 't_final must be >= 0, got {}'.format( t_final ) )
        position = t_final / self.agrid.spacing
        n_steps = int( round( position ) )
        if abs( position - n_steps ) > 1e-9 * max( 1.0, position ):
            raise agediff.semigroup.AlignmentError(
                't_final {} is not a multiple of the age step {}'.format( t_final, self.agrid.spacing ) )
        return n_steps

    def step( self, values: np.ndarray ) -> np.ndarray:
        r""" One time step of length da: every node moves one age step along its characteristic and the
            birth node solves (1 - w_0 beta_0) B = sum_{i>=1} w_i beta_i u_i.
        """
        cache = self.cache
        new = np.empty_like( values )
        new[1:] = np.einsum( 'kab,kb...->ka...', cache.steps, values[:-1] )
        births = np.zeros( values.shape[1:] )
        for i in range( 1, self.agrid.n_nodes ):
            births += cache.weights[i] * _scale_rows( cache.birth[i], new[i] )
        new[0] = _scale_rows( 1.0 / cache.birth_diagonal, births )
        return new

    def evolve( self, u0: AgeProfile, t_final: float ) -> Trajectory:
        r""" Solves the Cauchy problem u' = A u by the characteristics representation with renewal.
            Args:
                u0 (:obj:`agediff.AgeProfile`, `required`):
                    Initial profile; it need not satisfy the birth law.
                t_final (float, `required`):
                    Final time, a multiple of the age step.

            Returns:
                trajectory (:obj:`agediff.Trajectory`):
                    Profiles at t_n = n da and the birth history, B(0) being the quadrature of u0.

            Raises:
                AlignmentError: t_final is not a multiple of da.
                DomainError: t_final is negative.
        """
        self.model.check_profile( u0, 'u0' )
        n_steps = self._steps_for( t_final )
        values = np.array( u0.values, dtype = float )
        profiles = [ AgeProfile( values, self.agrid ) ]
        births = [ self.cache.birth_functional( values ) ]
        for _ in range( n_steps ):
            values = self.step( values )
            profiles.append( AgeProfile( values, self.agrid ) )
            births.append( values[0].copy() )
        times = self.agrid.spacing * np.arange( n_steps + 1 )
        return Trajectory( times, profiles, np.stack( births ) )

    def evolve_perturbed( self, u0: AgeProfile, t_final: float, pert: 'agediff.PerturbationSpec' ) -> Trajectory:
        r""" Orbit of A + B by a first-order splitting with a trapezoidal Duhamel correction:

                u_{n+1} = S u_n + da/2 (S B u_n + B S u_n),

            S being one step of the unperturbed semigroup. Positive terms only, so for B >= 0 the orbit
            dominates the unperturbed one.
        """
        self.model.check_profile( u0, 'u0' )
        n_steps = self._steps_for( t_final )
        if pert.is_zero():
            trajectory = self.evolve( u0, t_final )
            trajectory.perturbed = True
            return trajectory
        half = 0.5 * self.agrid.spacing
        values = np.array( u0.values, dtype = float )
        profiles = [ AgeProfile( values, self.agrid ) ]
        births = [ self.cache.birth_functional( values ) ]
        for _ in range( n_steps ):
            moved = self.step( values )
            values = moved + half * ( self.step( pert.apply( values ) ) + pert.apply( moved ) )
            profiles.append( AgeProfile( values, self.agrid ) )
            births.append( values[0].copy() )
        times = self.agrid.spacing * np.arange( n_steps + 1 )
        return Trajectory( times, profiles, np.stack( births ), perturbed = True )

    def generator_residual( self, psi: AgeProfile, zeta: AgeProfile, shift: float = 0.0 ) -> float:
        r""" Defect of psi(a) = Pi(a, 0) psi(0) - int_0^a Pi(a, s) zeta(s) ds and of the birth law psi(0) = sum w beta psi.
            Zero certifies psi in the discrete domain of the generator with A psi = zeta.

            With a shift the same relation is taken for the family of -shift + A and zeta - shift psi,
            which is the form the resolvent at lambda = shift is built on.

            Returns:
                residual (float):
                    max_i ||psi_i - Pi(a_i,0) psi_0 + (int Pi zeta)_i|| + ||psi_0 - sum_i w_i beta_i psi_i||.
        """
        self.model.check_profile( psi, 'psi' )
        self.model.check_profile( zeta, 'zeta' )
        shift = float( shift )
        forcing = zeta.values - shift * psi.values if shift != 0.0 else zeta.values
        predicted = self.cache.march( shift, psi.values[0], forcing, sign = -1.0 )
        mild = float( np.max( self.model.spatial_norm( psi.values - predicted ) ) )
        birth = float( self.model.spatial_norm( psi.values[0] - self.cache.birth_functional( psi.values ) ) )
        return mild + birth

    def duhamel_residual( self, trajectory: Trajectory, pert: 'agediff.PerturbationSpec' ) -> float:
        r""" Relative defect of u(t) = e^{tA} u0 + int_0^t e^{(t-s)A} B u(s) ds along a perturbed trajectory,
            with the time integral taken by the trapezoid rule on the samples.
        """
        half = 0.5 * self.agrid.spacing
        values = trajectory.profiles[0].values
        free = np.array( values, dtype = float )
        accumulated = half * pert.apply( values )
        worst = 0.0
        scale = 0.0
        for n in range( 1, len( trajectory.profiles ) ):
            values = trajectory.profiles[n].values
            free = self.step( free )
            forcing = pert.apply( values )
            accumulated = self.step( accumulated ) + 2.0 * half * forcing
            duhamel = accumulated - half * forcing
            worst = max( worst, self.model.profile_norm( AgeProfile( values - free - duhamel, self.agrid ) ) )
            scale = max( scale, self.model.profile_norm( trajectory.profiles[n] ) )
        return worst / scale if scale > 0 else worst

    def laplace_transform( self, trajectory: Trajectory, lam: float ) -> AgeProfile:
        r""" Trapezoid rule for int_0^T e^{-lambda t} u(t) dt on the trajectory samples.
        """
        dt = self.agrid.spacing
        total = np.zeros_like( trajectory.profiles[0].values )
        last = len( trajectory.profiles ) - 1
        for n, ( t, profile ) in enumerate( zip( trajectory.times, trajectory.profiles ) ):
            weight = 0.5 * dt if n in ( 0, last ) else dt
            total += weight * np.exp( -lam * t ) * profile.values
        return AgeProfile( total, self.agrid )

    def growth_rate( self, trajectory: Trajectory ) -> float:
        r""" Slope of log ||u(t)|| over the second half of the horizon.
        """
        half = len( trajectory.times ) // 2
        times = trajectory.times[ half: ]
        norms = np.array([ self.model.profile_norm( p ) for p in trajectory.profiles[ half: ] ])
        if len( times ) < 2:
            raise agediff.semigroup.DomainError( 'growth rate needs at least two samples in the second half of the horizon' )
        if np.any( norms <= 0 ):
            return float('-inf')
        return float( np.polyfit( times, np.log( norms ), 1 )[0] )
