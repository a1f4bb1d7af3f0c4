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


from typing import NamedTuple

import numpy as np

BC_KINDS = ['dirichlet', 'neumann', 'robin']
NORM_KINDS = ['l1_weighted', 'sup']

class BoundaryCondition( NamedTuple ):
    r""" Spatial boundary treatment, identical at both ends of [0, L].
        Robin reads d * du/dn + robin_coeff * d * u = 0.
    """
    kind: str = 'dirichlet'
    robin_coeff: float = 0.0

class NormSpec( NamedTuple ):
    r""" Norm of the spatial state space. scale rescales the grid weights of the l1 norm.
    """
    space_norm: str = 'l1_weighted'
    scale: float = 1.0

class AgeGrid:
    r""" Uniform age grid on [0, a_max] with n_age intervals and trapezoid weights.
    """
    def __init__( self, a_max: float, n_age: int ):
        self.a_max = float( a_max )
        self.n_age = int( n_age )
        self.nodes = np.linspace( 0.0, self.a_max, self.n_age + 1 )
        self.spacing = self.a_max / self.n_age
        self.weights = np.full( self.n_age + 1, self.spacing )
        self.weights[0] = 0.5 * self.spacing
        self.weights[-1] = 0.5 * self.spacing
        self.nodes.flags.writeable = False
        self.weights.flags.writeable = False

    @property
    def n_nodes( self ) -> int:
        return self.n_age + 1

    def midpoint( self, i: int ) -> float:
        return self.nodes[i] + 0.5 * self.spacing

    def index_of( self, age: float, atol: float = 1e-9 ) -> int:
        r""" Returns the node index at the passed age, or -1 when the age is not a node.
        """
        position = age / self.spacing
        index = int( round( position ) )
        if abs( position - index ) > atol * max( 1.0, abs( position ) ) or index < 0 or index > self.n_age:
            return -1
        return index

    def __eq__( self, other ) -> bool:
        return isinstance( other, AgeGrid ) and self.a_max == other.a_max and self.n_age == other.n_age

    def __hash__( self ):
        return hash( ( self.a_max, self.n_age ) )

    def __repr__( self ) -> str:
        return 'AgeGrid(a_max={}, n_age={})'.format( self.a_max, self.n_age )

class SpaceGrid:
    r""" Interior nodes of [0, length]. Dirichlet uses the vertex grid x_k = (k+1)h with h = L/(n+1),
        Neumann and Robin the cell-centred grid x_k = (k+1/2)h with h = L/n.
    """
    def __init__( self, length: float, n_space: int, bc: BoundaryCondition = BoundaryCondition() ):
        self.length = float( length )
        self.n_space = int( n_space )
        self.bc = bc
        if bc.kind == 'dirichlet':
            self.spacing = self.length / ( self.n_space + 1 )
            self.points = self.spacing * ( np.arange( self.n_space ) + 1.0 )
        else:
            self.spacing = self.length / self.n_space
            self.points = self.spacing * ( np.arange( self.n_space ) + 0.5 )
        # Face k sits between points k-1 and k; faces 0 and n_space are the domain ends for the staggered grid.
        self.faces = self.points[0] - 0.5 * self.spacing + self.spacing * np.arange( self.n_space + 1 )
        self.points.flags.writeable = False
        self.faces.flags.writeable = False

    def weights( self, norms: NormSpec ) -> np.ndarray:
        return np.full( self.n_space, self.spacing * norms.scale )

    def __eq__( self, other ) -> bool:
        return isinstance( other, SpaceGrid ) and self.length == other.length and self.n_space == other.n_space and self.bc == other.bc

    def __hash__( self ):
        return hash( ( self.length, self.n_space, self.bc ) )

    def __repr__( self ) -> str:
        return 'SpaceGrid(length={}, n_space={}, bc={})'.format( self.length, self.n_space, self.bc.kind )
