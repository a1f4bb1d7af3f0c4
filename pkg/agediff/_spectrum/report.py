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
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

import agediff

NONE_FOUND = 'none-found'

def _complex( value ) -> List[float]:
    value = complex( value )
    return [ float( value.real ), float( value.imag ) ]

def _float( value ) -> Optional[float]:
    return None if value is None else float( value )

@dataclass
class Outcome:
    r""" One named check with the smallest margin observed; passed means margin >= -tolerance.
    """
    name: str
    passed: bool
    margin: float
    detail: str = ''
    skipped: bool = False

    def to_dict( self ) -> 'OrderedDict':
        return OrderedDict([
            ( 'name', self.name ),
            ( 'passed', bool( self.passed ) ),
            ( 'margin', float( self.margin ) ),
            ( 'skipped', bool( self.skipped ) ),
            ( 'detail', self.detail ),
        ])

@dataclass
class CompactnessLevel:
    n_age: int
    n_space: int
    count: int
    decay_exponent: float
    smallest_singular_value: float
    largest_singular_value: float

@dataclass
class CompactnessDiagnostics:
    r""" Finite-dimensional proxies of a compact resolvent: the singular values of the discrete
        resolvent at lam_ref decay like a power law and the number of eigenvalues right of the
        threshold stays fixed under refinement. They are proxies only; a discrete operator has
        finite spectrum by construction.
    """
    lam_ref: float
    threshold: float
    singular_values: np.ndarray
    halfplane_counts: List[Tuple[Tuple[int, int], int]]
    decay_exponent: float
    levels: List[CompactnessLevel] = field( default_factory = list )

    @property
    def counts_stable( self ) -> bool:
        if len( self.halfplane_counts ) < 2:
            return True
        return self.halfplane_counts[-1][1] == self.halfplane_counts[-2][1]

    def to_dict( self ) -> 'OrderedDict':
        return OrderedDict([
            ( 'lam_ref', float( self.lam_ref ) ),
            ( 'threshold', float( self.threshold ) ),
            ( 'decay_exponent', float( self.decay_exponent ) ),
            ( 'counts_stable', self.counts_stable ),
            ( 'halfplane_counts', [ OrderedDict([ ( 'n_age', int( level[0] ) ), ( 'n_space', int( level[1] ) ), ( 'count', int( count ) ) ])
                for level, count in self.halfplane_counts ] ),
            ( 'levels', [ OrderedDict([
                ( 'n_age', int( l.n_age ) ),
                ( 'n_space', int( l.n_space ) ),
                ( 'count', int( l.count ) ),
                ( 'decay_exponent', float( l.decay_exponent ) ),
                ( 'smallest_singular_value', float( l.smallest_singular_value ) ),
                ( 'largest_singular_value', float( l.largest_singular_value ) ),
            ]) for l in self.levels ] ),
            ( 'singular_values', [ float( v ) for v in self.singular_values ] ),
        ])

@dataclass
class StrongPositivity:
    r""" Age nodes where diag(beta(a_i)) Pi(a_i, 0) is entrywise strictly positive, and their quadrature measure.
    """
    ages: List[float]
    measure: float

    def to_dict( self ) -> 'OrderedDict':
        return OrderedDict([ ( 'measure', float( self.measure ) ), ( 'ages', [ float( a ) for a in self.ages ] ) ])

@dataclass
class SpectralReport:
    r""" Everything the spectral commands compute. Fields that were not requested stay empty.
    """
    s_bound: Optional[float] = None
    s_bound_perturbed: Optional[float] = None
    eigenvalues: Optional[np.ndarray] = None
    principal_vector: Optional['agediff.AgeProfile'] = None
    principal_residual: Optional[float] = None
    char_values: List[Tuple[float, float]] = field( default_factory = list )
    compactness: Optional[CompactnessDiagnostics] = None
    comparisons: List[Outcome] = field( default_factory = list )
    strong_positivity: Optional[StrongPositivity] = None
    richardson: Optional[float] = None
    bracket: Optional[Tuple[float, float]] = None

    def to_dict( self ) -> 'OrderedDict':
        r""" Returns the report with a fixed key order. Complex numbers are [real, imag] pairs.
        """
        report = OrderedDict()
        report['version'] = agediff.__version__
        report['s_bound'] = NONE_FOUND if self.s_bound is None else float( self.s_bound )
        if self.s_bound_perturbed is not None or len( self.comparisons ) > 0:
            report['s_bound_perturbed'] = NONE_FOUND if self.s_bound_perturbed is None else float( self.s_bound_perturbed )
        report['bracket'] = None if self.bracket is None else [ float( self.bracket[0] ), float( self.bracket[1] ) ]
        report['richardson'] = _float( self.richardson )
        report['char_values'] = [ [ float( lam ), float( radius ) ] for lam, radius in self.char_values ]
        report['eigenvalues'] = None if self.eigenvalues is None else [ _complex( v ) for v in self.eigenvalues ]
        if self.principal_vector is None:
            report['principal_vector'] = None
        else:
            report['principal_vector'] = OrderedDict([
                ( 'residual', _float( self.principal_residual ) ),
                ( 'values', np.asarray( self.principal_vector.values, dtype = float ).tolist() ),
            ])
        report['strong_positivity'] = None if self.strong_positivity is None else self.strong_positivity.to_dict()
        report['compactness'] = None if self.compactness is None else self.compactness.to_dict()
        report['comparisons'] = [ outcome.to_dict() for outcome in self.comparisons ]
        return report
