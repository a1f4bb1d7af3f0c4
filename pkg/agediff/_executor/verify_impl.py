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


""" End-to-end checks of the verify command: closed-form oracles on canonical instances and
invariant suites on the configured instance. Every check yields one Outcome; margins are
tolerance minus measured defect, or observed order minus required order, so a negative
margin means a failure.
"""
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy import optimize

import agediff
from agediff._spectrum.report import Outcome
from agediff._semigroup.profile import AgeProfile
from agediff._evolution.evolution_impl import _scale_rows
from agediff.utils.linalg_utils import observed_order

from loguru import logger
logger = logger.opt(colors=True)

ORDER_MIN = 1.9
DUHAMEL_ORDER_MIN = 0.9
LOTKA_TOL = 1e-6
CONSTRUCTION_TOL = 1e-10
LAPLACE_TOL = 0.02
STRICT_INCREASE = 1e-4
EVOLUTION_TOL = 1e-13
SHIFT_TOL = 1e-9
IDENTITY_TOL = 1e-9
COMPACTNESS_EXPONENT = -0.5
CANONICAL_REFINEMENTS = [ ( 32, 8 ), ( 64, 16 ), ( 128, 32 ) ]

# Strong-positivity instance: beta > 0 on [0.5, 1.5] only, Dirichlet heat flow.
STRONG_POSITIVITY = dict(
    a_max = 2.0, n_age = 32, n_space = 8, length = 1.0, bc = 'dirichlet',
    diffusion = { 'preset': 'constant', 'value': 0.1 },
    mortality = { 'preset': 'constant', 'value': 0.2 },
    birth = { 'preset': 'separable', 'scale': 2.0, 'age_lo': 0.5, 'age_hi': 1.5 },
)
STRONG_POSITIVITY_KERNEL = dict(
    kind = 'age_kernel', gamma = 1.0, positive = True,
    m = { 'preset': 'constant', 'value': 0.5 },
    k = { 'preset': 'uniform', 'value': 1.0 },
)

# Compactness instance: exponential fertility, weak Neumann diffusion. One real root per spatial mode,
# s = 9 - 8.8 - 0.1, modes j <= 4 right of s - 5 and every other root left of -8.9.
# mu_max da stays below 2 on the finest level.
COMPACTNESS = dict(
    a_max = 2.0, n_age = 32, n_space = 8, length = 1.0, bc = 'neumann',
    diffusion = { 'preset': 'constant', 'value': 0.025 },
    mortality = { 'preset': 'constant', 'value': 0.1 },
    birth = { 'preset': 'separable', 'scale': 9.0, 'age_rate': -8.8 },
)

def _within( error: float ) -> str:
    return 'within {:.0e}'.format( LOTKA_TOL ) if error <= LOTKA_TOL else 'above {:.0e}'.format( LOTKA_TOL )

def survival_integral( x: float, a_max: float ) -> float:
    r""" int_0^a_max exp(-x a) da. """
    if x == 0.0:
        return a_max
    return -math.expm1( -x * a_max ) / x

def lotka_root( beta: float, mu: float, a_max: float ) -> float:
    r""" Root of beta (1 - exp(-(lambda + mu) a_max)) / (lambda + mu) = 1 by Brent's method.
    """
    g = lambda lam: beta * survival_integral( lam + mu, a_max ) - 1.0
    return optimize.brentq( g, -mu - 1.0 - math.log( 1.0 + beta * a_max ), beta * a_max + 1.0 - mu, xtol = 1e-15, rtol = 4 * np.finfo( float ).eps )

def compatible_ones( cache: 'agediff.EvolutionCache' ) -> AgeProfile:
    r""" All-ones profile whose age-0 block is set by the discrete birth law.
    """
    values = np.ones( ( cache.agrid.n_nodes, cache.n_space ) )
    values[0] = 0.0
    values[0] = _scale_rows( 1.0 / cache.birth_diagonal, cache.birth_functional( values ) )
    return AgeProfile( values, cache.agrid )

def _relative( a: np.ndarray, b: np.ndarray ) -> float:
    scale = max( float( np.linalg.norm( b ) ), np.finfo( float ).tiny )
    return float( np.linalg.norm( a - b ) ) / scale

class VerifySuite:

    def __init__( self, executor: 'agediff.Executor' ):
        self.executor = executor
        self.config = executor.config
        self.seed = int( self.config.numerics.seed )

    def _stack( self, **overrides ) -> Tuple['agediff.Model', 'agediff.EvolutionCache', 'agediff.ResolventSolver', 'agediff.Spectrum']:
        model = agediff.model( **overrides )
        cache = agediff.evolution( model, config = self.config )
        solver = agediff.resolvent( cache, config = self.config )
        spectrum = agediff.spectrum( solver, config = agediff.spectrum.config() )
        return model, cache, solver, spectrum

    def _guard( self, name: str, check ) -> List[Outcome]:
        try:
            outcomes = check()
        except Exception as e:
            logger.error( 'Check <red>{}</red> raised {}: {}', name, type( e ).__name__, e )
            return [ Outcome( name, False, float('-inf'), '{}: {}'.format( type( e ).__name__, e ) ) ]
        return outcomes if isinstance( outcomes, list ) else [ outcomes ]

    def run( self ) -> List[Outcome]:
        checks = [
            ( 'lotka_oracle', self.lotka_oracle ),
            ( 'resolvent_closed_form', self.resolvent_closed_form ),
            ( 'construction_consistency', self.construction_consistency ),
            ( 'laplace_consistency', self.laplace_consistency ),
            ( 'comparison', self.comparison ),
            ( 'compactness', self.compactness ),
            ( 'evolution_property', self.evolution_property ),
            ( 'mortality_shift', self.mortality_shift ),
            ( 'resolvent_identity', self.resolvent_identity ),
            ( 'positivity', self.positivity ),
            ( 'duhamel_order', self.duhamel_order ),
        ]
        outcomes = []
        for name, check in checks:
            logger.info( 'Verify:'.ljust(20) + '<blue>{}</blue>', name )
            outcomes.extend( self._guard( name, check ) )
        return outcomes

    # ---- Canonical oracles ----

    def lotka_oracle( self ) -> List[Outcome]:
        r""" Scalar constant case beta = 1, mu = 0, a_max = 2 against the Lotka equation root. """
        oracle = lotka_root( 1.0, 0.0, 2.0 )
        bounds = {}
        for n_age in ( 64, 128 ):
            _, _, _, spectrum = self._stack(
                a_max = 2.0, n_age = n_age, n_space = 1, bc = 'neumann', diffusion_enabled = False,
                birth = { 'preset': 'constant', 'value': 1.0 },
                mortality = { 'preset': 'constant', 'value': 0.0 },
            )
            bounds[ n_age ] = spectrum.spectral_bound()
        if bounds[64] is None or bounds[128] is None:
            return Outcome( 'lotka_oracle', False, float('-inf'), 'spectral bound none-found' )
        extrapolated = ( 4.0 * bounds[128] - bounds[64] ) / 3.0
        error = abs( extrapolated - oracle )
        raw = abs( bounds[128] - oracle )
        order = observed_order( [ abs( bounds[64] - oracle ), raw ] )
        if raw > LOTKA_TOL:
            logger.info( 'Lotka oracle: raw s_128 is off by {:.3e}, the tolerance {:.0e} is met by the extrapolate', raw, LOTKA_TOL )
        return [
            Outcome( 'lotka_oracle', error <= LOTKA_TOL, LOTKA_TOL - error,
                'oracle {:.12g}; raw s_128 {:.12g} (error {:.3e}, {}); extrapolated {:.12g} (error {:.3e}, {}); checked on the extrapolate'.format(
                    oracle, bounds[128], raw, _within( raw ), extrapolated, error, _within( error ) ) ),
            Outcome( 'lotka_order', order >= ORDER_MIN, order - ORDER_MIN, 'observed order {:.3f}'.format( order ) ),
        ]

    def resolvent_closed_form( self ) -> List[Outcome]:
        r""" b = 0, A = 0, phi = 1, lambda = 1, a_max = 1: psi(a) = 1 - exp(-a). """
        errors = []
        for n_age in ( 16, 32, 64 ):
            model, _, solver, _ = self._stack(
                a_max = 1.0, n_age = n_age, n_space = 1, bc = 'neumann', diffusion_enabled = False,
                birth = { 'preset': 'constant', 'value': 0.0 },
                mortality = { 'preset': 'constant', 'value': 0.0 },
            )
            phi = AgeProfile.ones( model.agrid, 1 )
            psi = solver.apply( phi, 1.0 ).psi.values[:, 0]
            errors.append( float( np.max( np.abs( psi - ( 1.0 - np.exp( -model.agrid.nodes ) ) ) ) ) )
        order = observed_order( errors )
        return Outcome( 'resolvent_closed_form', order >= ORDER_MIN, order - ORDER_MIN,
            'max node errors {}'.format( ', '.join( '{:.3e}'.format( e ) for e in errors ) ) )

    def construction_consistency( self ) -> List[Outcome]:
        r""" (lambda - G) R(lambda) phi = phi on random positive instances, and the full-node system reproduces R(lambda). """
        rng = np.random.default_rng( self.seed )
        worst_generator = 0.0
        worst_full = 0.0
        for _ in range( 10 ):
            a_max = float( rng.uniform( 1.0, 3.0 ) )
            model, cache, solver, spectrum = self._stack(
                a_max = a_max,
                n_age = 2 * int( rng.integers( 4, 17 ) ),
                n_space = int( rng.integers( 2, 9 ) ),
                bc = str( rng.choice( [ 'dirichlet', 'neumann', 'robin' ] ) ),
                robin_coeff = float( rng.uniform( 0.0, 1.0 ) ),
                diffusion = { 'preset': 'gaussian_bump', 'base': float( rng.uniform( 0.1, 0.5 ) ), 'amplitude': float( rng.uniform( 0.0, 0.5 ) ),
                    'age_center': float( rng.uniform( 0.0, a_max ) ), 'age_width': float( rng.uniform( 0.2, 1.0 ) ) },
                mortality = { 'preset': 'constant', 'value': float( rng.uniform( 0.0, 1.0 ) ) },
                birth = { 'preset': 'gaussian_bump', 'base': 0.0, 'amplitude': float( rng.uniform( 0.5, 3.0 ) ),
                    'age_center': float( rng.uniform( 0.3, 0.7 ) * a_max ), 'age_width': float( rng.uniform( 0.1, 0.5 ) ),
                    'space_width': 0.3 },
            )
            generator = spectrum.generator()
            s = spectrum.spectral_bound()
            high = spectrum.admissible_range()[1]
            for lam in s + ( high - s ) * rng.uniform( 0.3, 1.0, size = 2 ):
                values = generator.trace_compatible( rng.uniform( 0.0, 1.0, size = ( model.agrid.n_nodes, model.n_space ) ) )
                phi = AgeProfile( values, model.agrid )
                psi = solver.apply( phi, float( lam ), strict = False ).psi
                vector = generator.restrict( psi.values )
                image = generator.lift( lam * vector - generator.matrix @ vector )
                defect = model.profile_norm( AgeProfile( image - values, model.agrid ) ) / model.profile_norm( phi )
                worst_generator = max( worst_generator, defect )
                full, _ = agediff.spectrum.full_node_solve( cache, float( lam ), values, dense_limit = solver.dense_limit )
                worst_full = max( worst_full, _relative( full, psi.values ) )
        return [
            Outcome( 'construction_consistency', worst_generator <= CONSTRUCTION_TOL, CONSTRUCTION_TOL - worst_generator,
                'max relative defect of (lambda - G) R(lambda) phi - phi' ),
            Outcome( 'full_node_consistency', worst_full <= CONSTRUCTION_TOL, CONSTRUCTION_TOL - worst_full,
                'max relative difference of the block solve and R(lambda)' ),
        ]

    def comparison( self ) -> List[Outcome]:
        r""" Strong-positivity instance with a positive age kernel: domination of A + B over A. """
        model, _, _, spectrum = self._stack( **STRONG_POSITIVITY )
        pert = agediff.perturbation( model, **STRONG_POSITIVITY_KERNEL )
        positivity = spectrum.strong_positivity()
        s_a = spectrum.spectral_bound()
        s_ab = spectrum.perturbed_spectral_bound( pert )
        outcomes = [ Outcome( 'strong_positivity', positivity.measure > 0, positivity.measure,
            '{} age nodes with diag(beta) Pi(a, 0) > 0'.format( len( positivity.ages ) ) ) ]
        if s_a is None or s_ab is None:
            outcomes.append( Outcome( 'strict_increase', False, float('-inf'), 'spectral bound none-found' ) )
            return outcomes
        increase = s_ab - s_a
        outcomes.append( Outcome( 'strict_increase', increase >= STRICT_INCREASE, increase - STRICT_INCREASE,
            's(A) = {:.12g}, s(A+B) = {:.12g}'.format( s_a, s_ab ) ) )
        floor = max( s_a, s_ab )
        for outcome in spectrum.comparison_suite( pert, [ floor + 0.5, floor + 1.0, floor + 2.0 ] ):
            outcome.name = 'comparison.' + outcome.name
            outcomes.append( outcome )
        return outcomes

    def compactness( self ) -> List[Outcome]:
        r""" Halfplane counts stable between the two finest levels; singular values decaying at every level. """
        _, _, _, spectrum = self._stack( **COMPACTNESS )
        diagnostics = spectrum.compactness_probe( CANONICAL_REFINEMENTS )
        counts = [ count for _, count in diagnostics.halfplane_counts ]
        exponent = max( level.decay_exponent for level in diagnostics.levels )
        return [
            Outcome( 'compactness_counts', diagnostics.counts_stable, 0.0 if diagnostics.counts_stable else -1.0,
                'counts right of {:.6g}: {}'.format( diagnostics.threshold, counts ) ),
            Outcome( 'compactness_decay', exponent < COMPACTNESS_EXPONENT, COMPACTNESS_EXPONENT - exponent,
                'largest fitted exponent {:.4f}'.format( exponent ) ),
        ]

    # ---- Configured instance ----

    def laplace_consistency( self ) -> List[Outcome]:
        r""" int e^{-lambda t} u(t) dt over T = 15 / (lambda - s) against R(lambda) u0 at lambda = s + 3, on this grid and the next finer one. """
        spectrum = self.executor.spectrum
        s = spectrum.spectral_bound()
        if s is None:
            return Outcome( 'laplace_consistency', True, 0.0, 'spectral bound none-found', skipped = True )
        lam = s + 3.0
        errors = []
        for level in ( spectrum, spectrum.refined( 2 * spectrum.agrid.n_age, spectrum.cache.n_space ) ):
            spacing = level.agrid.spacing
            horizon = spacing * math.ceil( 15.0 / ( lam - s ) / spacing - 1e-9 )
            u0 = compatible_ones( level.cache )
            transform = level.semigroup.laplace_transform( level.semigroup.evolve( u0, horizon ), lam )
            psi = level.solver.apply( u0, lam ).psi
            errors.append( level.model.profile_norm( transform - psi ) / level.model.profile_norm( psi ) )
        improving = errors[1] <= errors[0] or errors[1] <= 1e-8
        return [
            Outcome( 'laplace_consistency', errors[0] <= LAPLACE_TOL, LAPLACE_TOL - errors[0],
                'lambda {:.6g}, relative error {:.3e}'.format( lam, errors[0] ) ),
            Outcome( 'laplace_refinement', improving, errors[0] - errors[1],
                'relative error {:.3e} -> {:.3e} at twice the age intervals'.format( errors[0], errors[1] ) ),
        ]

    def evolution_property( self ) -> List[Outcome]:
        r""" Pi(a_i, a_j) Pi(a_j, a_k) = Pi(a_i, a_k) on sampled triples. """
        cache = self.executor.cache
        rng = np.random.default_rng( self.seed )
        worst = 0.0
        for _ in range( 20 ):
            k, j, i = np.sort( rng.integers( 0, cache.n_age + 1, size = 3 ) )
            composed = cache.product( int( i ), int( j ) ) @ cache.product( int( j ), int( k ) )
            direct = cache.product( int( i ), int( k ) )
            worst = max( worst, float( np.max( np.abs( composed - direct ) ) ) / max( 1.0, float( np.max( np.abs( direct ) ) ) ) )
        return Outcome( 'evolution_property', worst <= EVOLUTION_TOL, EVOLUTION_TOL - worst, '20 sampled triples' )

    def mortality_shift( self ) -> List[Outcome]:
        r""" s(mu + c) = s(mu) - c. """
        model = self.executor.model
        spectrum = self.executor.spectrum
        mortality = model.coeff.mortality
        if not hasattr( mortality, 'shifted' ) or getattr( mortality, 'preset', None ) == 'separable':
            return Outcome( 'mortality_shift', True, 0.0, 'mortality preset cannot be shifted', skipped = True )
        s = spectrum.spectral_bound()
        if s is None:
            return Outcome( 'mortality_shift', True, 0.0, 'spectral bound none-found', skipped = True )
        c = 0.5
        shifted = model.with_coefficients( model.coeff.with_mortality( mortality.shifted( c ) ) )
        cache = agediff.EvolutionCache( shifted, self.executor.cache.substeps )
        solver = agediff.ResolventSolver( cache, tol_res = self.executor.solver.tol_res, cond_max = self.executor.solver.cond_max )
        lo, hi = spectrum.search_bracket()
        s_shifted = agediff.Spectrum( solver ).spectral_bound( ( lo - c, hi - c ) )
        if s_shifted is None:
            return Outcome( 'mortality_shift', False, float('-inf'), 'shifted spectral bound none-found' )
        defect = abs( s_shifted - ( s - c ) )
        return Outcome( 'mortality_shift', defect <= SHIFT_TOL, SHIFT_TOL - defect, 'c = {}, s = {:.12g}'.format( c, s ) )

    def _above_spectrum( self ) -> float:
        s = self.executor.spectrum.spectral_bound()
        return self.executor.spectrum.search_bracket()[1] if s is None else s

    def resolvent_identity( self ) -> List[Outcome]:
        r""" R(lambda) - R(nu) = (nu - lambda) R(lambda) R(nu). """
        solver = self.executor.solver
        model = self.executor.model
        base = self._above_spectrum()
        lam, nu = base + 1.0, base + 2.0
        high = self.executor.spectrum.admissible_range()[1]
        if nu > high:
            # the identity is exact only on one trapezoidal step per interval
            lam, nu = base + ( high - base ) / 3.0, base + 2.0 * ( high - base ) / 3.0
        phi = AgeProfile.ones( model.agrid, model.n_space )
        r_lam = solver.apply( phi, lam ).psi
        r_nu = solver.apply( phi, nu ).psi
        composed = solver.apply( r_nu, lam ).psi
        defect = model.profile_norm( ( r_lam - r_nu ) - composed * ( nu - lam ) ) / model.profile_norm( r_lam )
        return Outcome( 'resolvent_identity', defect <= IDENTITY_TOL, IDENTITY_TOL - defect,
            'lambda = {:.6g}, nu = {:.6g}'.format( lam, nu ) )

    def positivity( self ) -> List[Outcome]:
        r""" Orbits of 100 random nonnegative profiles stay in the cone; so does R(lambda) above the spectral bound. """
        model = self.executor.model
        if not model.positivity_mode:
            return Outcome( 'positivity', True, 0.0, 'positivity mode is off', skipped = True )
        rng = np.random.default_rng( self.seed )
        semigroup = self.executor.semigroup
        shape = ( model.agrid.n_nodes, model.n_space )
        margin = float('inf')
        for _ in range( 100 ):
            trajectory = semigroup.evolve( AgeProfile( rng.uniform( 0.0, 1.0, size = shape ), model.agrid ), model.agrid.a_max )
            margin = min( margin, min( float( np.min( p.values ) ) for p in trajectory.profiles ) )
        lam = self._above_spectrum() + 1.0
        for _ in range( 5 ):
            psi = self.executor.solver.apply( AgeProfile( rng.uniform( 0.0, 1.0, size = shape ), model.agrid ), lam ).psi
            margin = min( margin, float( np.min( psi.values ) ) )
        return Outcome( 'positivity', margin >= -model.tol_pos, margin + model.tol_pos, '100 orbits and 5 resolvents' )

    def duhamel_order( self ) -> List[Outcome]:
        r""" The Duhamel residual of the split perturbed orbit decays at first order under age-grid halving. """
        model = self.executor.model
        pert = self.executor.perturbation()
        if pert.is_zero():
            pert = agediff.perturbation( model, kind = 'age_kernel', m = { 'preset': 'constant', 'value': 1.0 }, k = { 'preset': 'uniform', 'value': 1.0 } )
        residuals = []
        for factor in ( 1, 2, 4 ):
            level = model.refine( factor * model.agrid.n_age, model.n_space )
            semigroup = agediff.Semigroup( agediff.EvolutionCache( level, self.executor.cache.substeps ) )
            trajectory = semigroup.evolve_perturbed( AgeProfile.ones( level.agrid, level.n_space ), level.agrid.a_max, pert.on_grid( level.agrid ) )
            residuals.append( semigroup.duhamel_residual( trajectory, pert.on_grid( level.agrid ) ) )
        if residuals[-1] <= 1e-13:
            return Outcome( 'duhamel_order', True, 0.0, 'residual at rounding level {:.3e}'.format( residuals[-1] ) )
        order = observed_order( residuals )
        return Outcome( 'duhamel_order', order >= DUHAMEL_ORDER_MIN, order - DUHAMEL_ORDER_MIN,
            'residuals {}'.format( ', '.join( '{:.3e}'.format( r ) for r in residuals ) ) )
