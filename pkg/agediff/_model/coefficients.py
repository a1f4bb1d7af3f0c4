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

# Parameters of every preset with their defaults. A None default means the parameter is switched off.
PRESETS = OrderedDict([
    ( 'constant', OrderedDict([
        ( 'value', 0.0 ),
    ])),
    ( 'gaussian_bump', OrderedDict([
        ( 'base', 0.0 ),
        ( 'amplitude', 1.0 ),
        ( 'age_center', 0.0 ),
        ( 'age_width', 1.0 ),
        ( 'space_center', 0.5 ),
        ( 'space_width', None ),
    ])),
    ( 'separable', OrderedDict([
        ( 'scale', 1.0 ),
        ( 'age_rate', 0.0 ),
        ( 'age_lo', 0.0 ),
        ( 'age_hi', None ),
        ( 'space_amplitude', 0.0 ),
        ( 'space_frequency', 1.0 ),
    ])),
])

ALL_PARAMS = sorted( { key for params in PRESETS.values() for key in params } )

SMOOTHNESS_NOTE = 'coefficients are assumed Hoelder continuous in age; the exponent is not checked'

class CoefficientField:
    r""" A named coefficient preset evaluated on (age, x).

        constant:       value
        gaussian_bump:  base + amplitude * exp(-((a - age_center)/age_width)^2 / 2) * s(x),
                        s(x) = exp(-((x - space_center)/space_width)^2 / 2), or 1 when space_width is None
        separable:      scale * exp(age_rate * a) * 1[age_lo <= a <= age_hi] * (1 + space_amplitude * cos(pi * space_frequency * x))
    """
    def __init__( self, preset: str, **params ):
        if preset not in PRESETS:
            raise ValueError( 'unknown preset {}, available presets: {}'.format( preset, ', '.join( PRESETS ) ) )
        unknown = [ key for key in params if key not in PRESETS[preset] ]
        if len( unknown ) > 0:
            raise ValueError( 'preset {} has no parameter {}, valid parameters: {}'.format( preset, ', '.join( unknown ), ', '.join( PRESETS[preset] ) ) )
        self.preset = preset
        self.params = OrderedDict()
        for key, default in PRESETS[preset].items():
            val = params.get( key, None )
            self.params[key] = default if val is None else float( val )

    def __call__( self, age: float, x: np.ndarray ) -> np.ndarray:
        x = np.asarray( x, dtype = float )
        p = self.params
        if self.preset == 'constant':
            return np.full( x.shape, p['value'] )

        elif self.preset == 'gaussian_bump':
            bump = np.exp( -0.5 * ( ( age - p['age_center'] ) / p['age_width'] ) ** 2 )
            if p['space_width'] is None:
                space = np.ones( x.shape )
            else:
                space = np.exp( -0.5 * ( ( x - p['space_center'] ) / p['space_width'] ) ** 2 )
            return p['base'] + p['amplitude'] * bump * space

        else:
            hi = np.inf if p['age_hi'] is None else p['age_hi']
            window = 1.0 if p['age_lo'] <= age <= hi else 0.0
            space = 1.0 + p['space_amplitude'] * np.cos( np.pi * p['space_frequency'] * x )
            return p['scale'] * np.exp( p['age_rate'] * age ) * window * space

    def is_zero( self ) -> bool:
        p = self.params
        if self.preset == 'constant':
            return p['value'] == 0.0
        elif self.preset == 'gaussian_bump':
            return p['base'] == 0.0 and p['amplitude'] == 0.0
        else:
            return p['scale'] == 0.0

    def shifted( self, c: float ) -> 'CoefficientField':
        r""" Returns this field plus the constant c. Only constant and gaussian_bump fields can be shifted.
        """
        params = dict( self.params )
        if self.preset == 'constant':
            params['value'] += c
        elif self.preset == 'gaussian_bump':
            params['base'] += c
        else:
            raise ValueError( 'a separable field cannot be shifted by a constant' )
        return CoefficientField( self.preset, **params )

    def describe( self ) -> str:
        items = ', '.join( '{}={}'.format( k, v ) for k, v in self.params.items() )
        return '{}({})'.format( self.preset, items )

    def __repr__( self ) -> str:
        return 'CoefficientField<{}>'.format( self.describe() )

class Coefficients:
    r""" Diffusion d(a, x), mortality mu(a, x) and birth beta(a, x) of the model.
        Any callable (age, x_array) -> array may be used in place of a preset field.
    """
    def __init__(
            self,
            diffusion: Callable,
            mortality: Callable,
            birth: Callable,
            diffusion_enabled: bool = True,
            d_min: float = 1e-8,
            smoothness_note: Optional[str] = None,
        ):
        self.diffusion = diffusion
        self.mortality = mortality
        self.birth = birth
        self.diffusion_enabled = bool( diffusion_enabled )
        self.d_min = float( d_min )
        self.smoothness_note = smoothness_note if smoothness_note is not None else SMOOTHNESS_NOTE

    def with_mortality( self, mortality: Callable ) -> 'Coefficients':
        return Coefficients(
            diffusion = self.diffusion,
            mortality = mortality,
            birth = self.birth,
            diffusion_enabled = self.diffusion_enabled,
            d_min = self.d_min,
            smoothness_note = self.smoothness_note,
        )

    def with_birth( self, birth: Callable ) -> 'Coefficients':
        return Coefficients(
            diffusion = self.diffusion,
            mortality = self.mortality,
            birth = birth,
            diffusion_enabled = self.diffusion_enabled,
            d_min = self.d_min,
            smoothness_note = self.smoothness_note,
        )
