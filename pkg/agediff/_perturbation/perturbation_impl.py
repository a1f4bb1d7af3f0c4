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


from collections import OrderedDict
from typing import Callable, Optional

import numpy as np

import agediff

KERNELS = OrderedDict([
    ( 'uniform', OrderedDict([ ( 'value', 1.0 ) ]) ),
    ( 'gaussian', OrderedDict([ ( 'value', 1.0 ), ( 'width', 0.25 ) ]) ),
])
KINDS = ['none', 'age_kernel']

class AgeKernel:
    r""" Kernel k(a, s) of the age redistribution. uniform: value; gaussian: value * exp(-((a - s)/width)^2 / 2).
    """
    def __init__( self, preset: str = 'uniform', value: float = None, width: float = None ):
        if preset not in KERNELS:
            raise ValueError( 'unknown kernel {}, available kernels: {}'.format( preset, ', '.join( KERNELS ) ) )
        self.preset = preset
        self.value = KERNELS[preset]['value'] if value is None else float( value )
        self.width = KERNELS[preset].get( 'width' ) if width is None else float( width )

    def __call__( self, a: np.ndarray, s: np.ndarray ) -> np.ndarray:
        a = np.asarray( a, dtype = float )
        s = np.asarray( s, dtype = float )
        if self.preset == 'uniform':
            return np.full( np.broadcast( a, s ).shape, self.value )
        return self.value * np.exp( -0.5 * ( ( a - s ) / self.width ) ** 2 )

    def describe( self ) -> str:
        if self.preset == 'uniform':
            return 'uniform(value={})'.format( self.value )
        return 'gaussian(value={}, width={})'.format( self.value, self.width )

class PerturbationSpec:
    r""" Bounded age-kernel operator (B phi)(a_i) = gamma * m(a_i) * sum_j w_j k(a_i, a_j) phi(a_j), acting pointwise in space.
    """
    def __init__(
            self,
            agrid: 'agediff.AgeGrid',
            kind: str = 'none',
            m: Optional[Callable] = None,
            k: Optional[Callable] = None,
            positive: bool = True,
            gamma: float = 1.0,
        ):
        r""" Initializes a perturbation on an age grid.
            Args:
                agrid (:obj:`agediff.AgeGrid`, `required`):
                    Grid of the profiles the operator acts on.
                kind (str, `optional`):
                    none or age_kernel.
                m (:obj:`Callable`, `optional`):
                    Age factor m(a), a coefficient field evaluated at x = 0.
                k (:obj:`Callable`, `optional`):
                    Kernel k(a, s).
                positive (bool, `optional`):
                    Require m >= 0 and k >= 0 on all node pairs.
                gamma (float, `optional`):
                    Overall scale.
        """
        if kind not in KINDS:
            raise ValueError( 'unknown perturbation kind {}, available kinds: {}'.format( kind, ', '.join( KINDS ) ) )
        self.agrid = agrid
        self.kind = kind
        self.m = m
        self.k = k
        self.positive = bool( positive )
        self.gamma = float( gamma )

        n_nodes = agrid.n_nodes
        if kind == 'none' or m is None or k is None:
            self.m_values = np.zeros( n_nodes )
            self.k_values = np.zeros( ( n_nodes, n_nodes ) )
        else:
            self.m_values = np.array([ float( np.asarray( m( a, np.zeros( 1 ) ) ).reshape( -1 )[0] ) for a in agrid.nodes ])
            self.k_values = np.asarray( k( agrid.nodes[:, None], agrid.nodes[None, :] ), dtype = float )
        if not np.all( np.isfinite( self.m_values ) ) or not np.all( np.isfinite( self.k_values ) ):
            raise agediff.model.InvalidCoefficient( 'perturbation m or k is not finite on the age grid' )
        if self.positive:
            if np.any( self.m_values < 0 ):
                i = int( np.flatnonzero( self.m_values < 0 )[0] )
                raise agediff.model.InvalidCoefficient( 'perturbation m is negative at age {:.6g} but positive is set'.format( agrid.nodes[i] ) )
            if np.any( self.k_values < 0 ):
                i, j = np.argwhere( self.k_values < 0 )[0]
                raise agediff.model.InvalidCoefficient( 'perturbation k is negative at ages ({:.6g}, {:.6g}) but positive is set'.format(
                    agrid.nodes[i], agrid.nodes[j] ) )
            if self.gamma < 0:
                raise agediff.model.InvalidCoefficient( 'perturbation gamma {} is negative but positive is set'.format( self.gamma ) )
        self._matrix = self.gamma * self.m_values[:, None] * self.k_values * agrid.weights[None, :]
        self._matrix.flags.writeable = False

    def __str__( self ) -> str:
        if self.kind == 'none':
            return 'PerturbationSpec(none)'
        return 'PerturbationSpec(age_kernel, gamma={}, m={}, k={})'.format(
            self.gamma, getattr( self.m, 'describe', lambda: 'callable' )(), getattr( self.k, 'describe', lambda: 'callable' )() )

    def __repr__( self ) -> str:
        return self.__str__()

    def matrix( self ) -> np.ndarray:
        r""" Age matrix K with (B phi)_i = sum_j K_ij phi_j, shape (n_age+1, n_age+1).
        """
        return self._matrix

    def apply( self, values: np.ndarray ) -> np.ndarray:
        return np.einsum( 'ij,j...->i...', self._matrix, values )

    def is_zero( self ) -> bool:
        return not np.any( self._matrix )

    def norm_bound( self ) -> float:
        r""" Bound |gamma| ||m||_inf ||k||_inf a_max on the operator norm over L1 in age.
        """
        if self.is_zero():
            return 0.0
        return abs( self.gamma ) * float( np.max( np.abs( self.m_values ) ) ) * float( np.max( np.abs( self.k_values ) ) ) * self.agrid.a_max

    def scaled( self, gamma: float ) -> 'PerturbationSpec':
        r""" Same m and k with another overall scale.
        """
        return PerturbationSpec( self.agrid, self.kind, self.m, self.k, self.positive, gamma )

    def on_grid( self, agrid: 'agediff.AgeGrid' ) -> 'PerturbationSpec':
        return PerturbationSpec( agrid, self.kind, self.m, self.k, self.positive, self.gamma )
