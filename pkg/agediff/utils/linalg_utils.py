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


from typing import Callable, NamedTuple

import numpy as np
import scipy.linalg

class PowerResult( NamedTuple ):
    value: float
    vector: np.ndarray
    iterations: int
    converged: bool

def power_iteration(
        matvec: Callable[[np.ndarray], np.ndarray],
        v0: np.ndarray,
        tol: float = 1e-12,
        max_iter: int = 10000,
    ) -> PowerResult:
    r""" Computes the dominant eigenvalue modulus and eigenvector from a matrix-vector routine.
        The iterate is kept at unit l1 norm, so for a nonnegative operator and v0 >= 0 the value is
        the Collatz-Wielandt ratio sum(Av) / sum(v).

        Args:
            matvec (:obj:`Callable`, `required`):
                Applies the operator to a vector of the shape of v0.
            v0 (:obj:`np.ndarray`, `required`):
                Start vector.
            tol (float, `optional`):
                Relative tolerance on the eigenvalue and on the l1 change of the iterate.
            max_iter (int, `optional`):
                Maximum number of iterations.

        Returns:
            result (:obj:`PowerResult`):
                value, vector (unit l1), iterations and whether both tolerances were met.
    """
    norm = np.sum( np.abs( v0 ) )
    if norm == 0.0:
        raise ValueError('power iteration needs a nonzero start vector')
    v = v0 / norm
    value = np.inf

    for iteration in range( 1, max_iter + 1 ):
        w = matvec( v )
        if not np.all( np.isfinite( w ) ):
            return PowerResult( float('nan'), v, iteration, False )
        new_value = float( np.sum( np.abs( w ) ) )
        if new_value == 0.0:
            return PowerResult( 0.0, v, iteration, True )
        w = w / new_value
        value_change = abs( new_value - value )
        vector_change = float( np.sum( np.abs( w - v ) ) )
        v = w
        if value_change <= tol * max( 1.0, new_value ) and vector_change <= 10 * tol:
            return PowerResult( new_value, v, iteration, True )
        value = new_value

    return PowerResult( value, v, max_iter, False )

def dominant_eigenvalues( matrix: np.ndarray, count: int = 2 ) -> np.ndarray:
    r""" Returns the `count` eigenvalues of largest modulus, largest first. Ties are broken by real then imaginary part.
    """
    values = scipy.linalg.eigvals( matrix )
    order = np.lexsort( ( -values.imag, -values.real, -np.abs( values ) ) )
    return values[ order ][ :count ]

def sort_spectrum( values: np.ndarray ) -> np.ndarray:
    r""" Deterministic order: decreasing real part, then decreasing imaginary part.
    """
    values = np.asarray( values, dtype = complex )
    order = np.lexsort( ( -values.imag, -values.real ) )
    return values[ order ]

def observed_order( errors, factor: float = 2.0 ) -> float:
    r""" Smallest convergence order between successive errors of a refinement sequence with the given ratio.
    """
    errors = np.asarray( errors, dtype = float )
    if len( errors ) < 2:
        return float('inf')
    orders = []
    for coarse, fine in zip( errors[:-1], errors[1:] ):
        if fine <= 0.0:
            orders.append( float('inf') )
        elif coarse <= 0.0:
            orders.append( float('-inf') )
        else:
            orders.append( float( np.log( coarse / fine ) / np.log( factor ) ) )
    return min( orders )
