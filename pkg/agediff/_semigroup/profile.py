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


from typing import List, Optional

import numpy as np

class AgeProfile:
    r""" One spatial vector per age node: values[i] = psi(a_i), shape (n_age+1, n_space).
    """
    def __init__( self, values: np.ndarray, agrid: 'agediff.AgeGrid' = None ):
        values = np.array( values, dtype = float )
        if values.ndim == 1:
            values = values.reshape( -1, 1 )
        self.values = values
        self.agrid = agrid

    @staticmethod
    def zeros( agrid: 'agediff.AgeGrid', n_space: int ) -> 'AgeProfile':
        return AgeProfile( np.zeros( ( agrid.n_nodes, n_space ) ), agrid )

    @staticmethod
    def ones( agrid: 'agediff.AgeGrid', n_space: int ) -> 'AgeProfile':
        return AgeProfile( np.ones( ( agrid.n_nodes, n_space ) ), agrid )

    @property
    def shape( self ):
        return self.values.shape

    @property
    def n_space( self ) -> int:
        return self.values.shape[1]

    def copy( self ) -> 'AgeProfile':
        return AgeProfile( self.values.copy(), self.agrid )

    def __add__( self, other: 'AgeProfile' ) -> 'AgeProfile':
        return AgeProfile( self.values + other.values, self.agrid )

    def __sub__( self, other: 'AgeProfile' ) -> 'AgeProfile':
        return AgeProfile( self.values - other.values, self.agrid )

    def __mul__( self, scalar: float ) -> 'AgeProfile':
        return AgeProfile( scalar * self.values, self.agrid )

    __rmul__ = __mul__

    def __repr__( self ) -> str:
        return 'AgeProfile(shape={})'.format( self.values.shape )

class Trajectory:
    r""" Samples of the orbit t -> e^{tA} u0 on the times t_n = n da, with the birth history B(t_n) = u(t_n, 0).
    """
    def __init__( self, times: np.ndarray, profiles: List[AgeProfile], birth_history: np.ndarray, perturbed: bool = False ):
        self.times = np.asarray( times, dtype = float )
        self.profiles = profiles
        self.birth_history = np.asarray( birth_history, dtype = float )
        self.perturbed = perturbed

    @property
    def final( self ) -> AgeProfile:
        return self.profiles[-1]

    def at_time( self, t: float, atol: float = 1e-9 ) -> Optional[AgeProfile]:
        r""" Returns the profile at time t, or None when t is not a sample time.
        """
        index = int( np.argmin( np.abs( self.times - t ) ) )
        if abs( self.times[index] - t ) > atol * max( 1.0, abs( t ) ):
            return None
        return self.profiles[index]

    def __len__( self ) -> int:
        return len( self.profiles )

    def __repr__( self ) -> str:
        return 'Trajectory(samples={}, t_final={})'.format( len( self.profiles ), self.times[-1] if len( self.times ) else 0.0 )
