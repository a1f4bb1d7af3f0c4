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
from typing import NamedTuple, Optional

import numpy as np

import agediff
from .grids import AgeGrid, SpaceGrid, NormSpec
from .coefficients import Coefficients

from loguru import logger
logger = logger.opt(colors=True)

class SpatialOperator( NamedTuple ):
    r""" The discrete A(a) at one age: divergence-form diffusion minus mortality.
        age_index is -1 when the age is not an age-grid node.
    """
    age_index: int
    age: float
    matrix: np.ndarray

class Model:
    r""" Grids, coefficients, boundary conditions and norms of one discretized instance.
    """
    def __init__(
            self,
            agrid: AgeGrid,
            sgrid: SpaceGrid,
            coeff: Coefficients,
            norms: NormSpec = NormSpec(),
            positivity_mode: bool = True,
            tol_pos: float = 1e-10,
            config: 'agediff.Config' = None,
        ):
        r""" Initializes a model. Prefer agediff.model( config ) which validates its inputs.
            Args:
                agrid (:obj:`agediff.AgeGrid`, `required`):
                    Uniform age grid.
                sgrid (:obj:`agediff.SpaceGrid`, `required`):
                    Spatial grid with its boundary condition.
                coeff (:obj:`agediff.Coefficients`, `required`):
                    Diffusion, mortality and birth fields.
                norms (:obj:`agediff.NormSpec`, `optional`):
                    Spatial norm.
                positivity_mode (:obj:`bool`, `optional`):
                    Require the structure that makes the semigroup positive.
                tol_pos (:obj:`float`, `optional`):
                    Tolerance band of the cone check.
                config (:obj:`agediff.Config`, `optional`):
                    Config the model was built from, used by refine.
        """
        self.agrid = agrid
        self.sgrid = sgrid
        self.coeff = coeff
        self.norms = norms
        self.positivity_mode = bool( positivity_mode )
        self.tol_pos = float( tol_pos )
        self.config = config
        self.space_weights = sgrid.weights( norms )
        self._birth = None

    def __str__( self ) -> str:
        return 'Model({}, {}, norm={})'.format( self.agrid, self.sgrid, self.norms.space_norm )

    def __repr__( self ) -> str:
        return self.__str__()

    @property
    def n_space( self ) -> int:
        return self.sgrid.n_space

    @property
    def n_age( self ) -> int:
        return self.agrid.n_age

    def _check_finite( self, name: str, values: np.ndarray, age: float, points: np.ndarray ):
        bad = np.flatnonzero( ~np.isfinite( values ) )
        if len( bad ) > 0:
            k = int( bad[0] )
            raise agediff.model.InvalidCoefficient(
                '{} is not finite at age {:.6g}, x {:.6g} (space index {})'.format( name, age, points[k], k )
            )

    def mortality_at( self, age: float ) -> np.ndarray:
        values = np.asarray( self.coeff.mortality( age, self.sgrid.points ), dtype = float ) * np.ones( self.n_space )
        self._check_finite( 'mortality', values, age, self.sgrid.points )
        return values

    def diffusion_at_faces( self, age: float ) -> np.ndarray:
        if not self.coeff.diffusion_enabled:
            return np.zeros( self.n_space + 1 )
        values = np.asarray( self.coeff.diffusion( age, self.sgrid.faces ), dtype = float ) * np.ones( self.n_space + 1 )
        self._check_finite( 'diffusion', values, age, self.sgrid.faces )
        low = np.flatnonzero( values < self.coeff.d_min )
        if len( low ) > 0:
            k = int( low[0] )
            raise agediff.model.InvalidCoefficient(
                'diffusion {:.6g} is below d_min {:.6g} at age {:.6g}, x {:.6g} (face index {})'.format(
                    values[k], self.coeff.d_min, age, self.sgrid.faces[k], k )
            )
        return values

    def birth_at_nodes( self ) -> np.ndarray:
        r""" Returns beta on every (age node, space node) pair, shape (n_age+1, n_space).
        """
        if self._birth is None:
            birth = np.zeros( ( self.agrid.n_nodes, self.n_space ) )
            for i, age in enumerate( self.agrid.nodes ):
                values = np.asarray( self.coeff.birth( age, self.sgrid.points ), dtype = float ) * np.ones( self.n_space )
                self._check_finite( 'birth', values, age, self.sgrid.points )
                if self.positivity_mode and np.any( values < 0 ):
                    k = int( np.flatnonzero( values < 0 )[0] )
                    raise agediff.model.InvalidCoefficient(
                        'birth {:.6g} is negative at age {:.6g}, x {:.6g} (space index {}) with positivity mode on'.format(
                            values[k], age, self.sgrid.points[k], k )
                    )
                birth[i] = values
            birth.flags.writeable = False
            self._birth = birth
        return self._birth

    def assemble_spatial_operator( self, age: float ) -> SpatialOperator:
        r""" Assembles the central-difference discretization of x -> d/dx( d(a,x) d/dx . ) - mu(a,x) . at one age.
            Args:
                age (float, `required`):
                    Age in [0, a_max].

            Returns:
                operator (:obj:`agediff.SpatialOperator`):
                    n_space x n_space matrix, symmetric for Dirichlet, Neumann and Robin.

            Raises:
                InvalidCoefficient: a coefficient is not finite or the diffusion is below d_min.
        """
        if not ( 0.0 <= age <= self.agrid.a_max * ( 1 + 1e-12 ) ):
            raise agediff.semigroup.DomainError( 'age {} is outside [0, {}]'.format( age, self.agrid.a_max ) )

        n = self.n_space
        h = self.sgrid.spacing
        d = self.diffusion_at_faces( age ) / h ** 2
        mu = self.mortality_at( age )
        kind = self.sgrid.bc.kind

        # Face k couples points k-1 and k. The end faces touch the boundary.
        left = d[:-1].copy()
        right = d[1:].copy()
        matrix = np.diag( right[:-1], 1 ) + np.diag( left[1:], -1 )
        if kind == 'dirichlet':
            diagonal = -( left + right )
        else:
            left[0] = 0.0
            right[-1] = 0.0
            diagonal = -( left + right )
            if kind == 'robin':
                r = self.sgrid.bc.robin_coeff
                diagonal[0] -= d[0] * h * r
                diagonal[-1] -= d[-1] * h * r
        matrix = matrix + np.diag( diagonal - mu )
        return SpatialOperator( age_index = self.agrid.index_of( age ), age = float( age ), matrix = matrix )

    def spatial_norm( self, values: np.ndarray ) -> np.ndarray:
        r""" E_0 norm of the spatial vectors along the last axis.
        """
        if self.norms.space_norm == 'sup':
            return np.max( np.abs( values ), axis = -1 )
        return np.sum( np.abs( values ) * self.space_weights, axis = -1 )

    def check_profile( self, psi: 'agediff.AgeProfile', name: str = 'profile' ):
        values = psi.values if hasattr( psi, 'values' ) else np.asarray( psi )
        expected = ( self.agrid.n_nodes, self.n_space )
        if values.shape[:2] != expected:
            raise agediff.model.DimensionError(
                '{} has shape {} but the grid needs {}'.format( name, values.shape, expected )
            )
        if getattr( psi, 'agrid', None ) is not None and psi.agrid != self.agrid:
            raise agediff.model.DimensionError(
                '{} lives on {} but the model uses {}'.format( name, psi.agrid, self.agrid )
            )

    def profile_norm( self, psi: 'agediff.AgeProfile' ) -> float:
        r""" Norm of E_0-valued L1 in age: the age quadrature of the spatial norms.
        """
        self.check_profile( psi )
        return float( np.dot( self.agrid.weights, self.spatial_norm( psi.values ) ) )

    def cone_check( self, psi: 'agediff.AgeProfile', tol_pos: Optional[float] = None ) -> bool:
        r""" True iff every entry is at least -tol_pos.
        """
        tol = self.tol_pos if tol_pos is None else tol_pos
        values = psi.values if hasattr( psi, 'values' ) else np.asarray( psi )
        return bool( np.all( values >= -tol ) )

    def operator_norm( self, matrix: np.ndarray ) -> float:
        r""" Norm of a spatial matrix induced by the spatial norm.
        """
        if self.norms.space_norm == 'sup':
            return float( np.max( np.sum( np.abs( matrix ), axis = 1 ) ) )
        w = self.space_weights
        return float( np.max( ( w @ np.abs( matrix ) ) / w ) )

    def mortality_sup( self ) -> float:
        r""" Max of |mu| over the age nodes and interval midpoints.
        """
        ages = np.concatenate( [ self.agrid.nodes, self.agrid.nodes[:-1] + 0.5 * self.agrid.spacing ] )
        return float( max( np.max( np.abs( self.mortality_at( a ) ) ) for a in ages ) )

    def birth_sup( self ) -> float:
        return float( np.max( np.abs( self.birth_at_nodes() ) ) )

    def refine( self, n_age: int, n_space: int ) -> 'Model':
        r""" Returns the same instance on another grid.
        """
        if self.config is None:
            agrid = AgeGrid( self.agrid.a_max, n_age )
            sgrid = SpaceGrid( self.sgrid.length, n_space, self.sgrid.bc )
            return Model( agrid, sgrid, self.coeff, self.norms, self.positivity_mode, self.tol_pos )
        return agediff.model( config = self.config, n_age = n_age, n_space = n_space )

    def with_coefficients( self, coeff: Coefficients ) -> 'Model':
        return Model( self.agrid, self.sgrid, coeff, self.norms, self.positivity_mode, self.tol_pos )

    def with_norms( self, norms: NormSpec ) -> 'Model':
        model = Model( self.agrid, self.sgrid, self.coeff, norms, self.positivity_mode, self.tol_pos )
        if self.config is not None:
            model.config = copy.deepcopy( self.config )
            model.config.model.norm = norms.space_norm
            model.config.model.norm_scale = norms.scale
        return model
