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


import os
import json
from typing import List, Tuple

import numpy as np
import pandas as pd

import agediff

PROFILE_COLUMNS = ['age_index', 'x_index', 'value']
TRAJECTORY_COLUMNS = ['t', 'a', 'x_index', 'value']
BIRTH_COLUMNS = ['t', 'x_index', 'value']
CHAR_COLUMNS = ['lambda', 'radius']
EIGEN_COLUMNS = ['index', 'real', 'imag']

def _header( kind: str ) -> str:
    return '# agediff {} v{}\n'.format( kind, agediff.__csv_version__ )

def _write( frame: pd.DataFrame, path: str, kind: str ):
    directory = os.path.dirname( os.path.abspath( path ) )
    os.makedirs( directory, exist_ok = True )
    with open( path, 'w' ) as f:
        f.write( _header( kind ) )
        frame.to_csv( f, index = False, float_format = '%.17g' )

def _read( path: str, kind: str, columns: List[str] ) -> pd.DataFrame:
    if not os.path.isfile( path ):
        raise agediff.config.ValidationError( 'input file {} does not exist'.format( path ) )
    with open( path, 'r' ) as f:
        first = f.readline()
    if not first.startswith( '# agediff {} v'.format( kind ) ):
        raise agediff.config.ValidationError( '{}: missing "# agediff {} v<n>" header line'.format( path, kind ) )
    frame = pd.read_csv( path, comment = '#', float_precision = 'round_trip' )
    if list( frame.columns ) != columns:
        raise agediff.config.ValidationError( '{}: expected columns {}, found {}'.format( path, columns, list( frame.columns ) ) )
    return frame

def write_profile( profile: 'agediff.AgeProfile', path: str ):
    r""" Writes an AgeProfile row-major in age: age_index,x_index,value.
    """
    values = profile.values
    n_nodes, n_space = values.shape
    frame = pd.DataFrame({
        'age_index': np.repeat( np.arange( n_nodes ), n_space ),
        'x_index': np.tile( np.arange( n_space ), n_nodes ),
        'value': values.reshape( -1 ),
    }, columns = PROFILE_COLUMNS )
    _write( frame, path, 'age-profile' )

def read_profile( path: str, agrid: 'agediff.AgeGrid', n_space: int ) -> 'agediff.AgeProfile':
    r""" Reads an AgeProfile CSV written by write_profile and checks it against the grid.
    """
    frame = _read( path, 'age-profile', PROFILE_COLUMNS )
    n_nodes = agrid.n_age + 1
    if len( frame ) != n_nodes * n_space:
        raise agediff.model.DimensionError(
            '{}: {} rows do not match the grid ({} age nodes x {} space nodes)'.format( path, len( frame ), n_nodes, n_space )
        )
    values = np.zeros( ( n_nodes, n_space ) )
    ages = frame['age_index'].to_numpy( dtype = int )
    xs = frame['x_index'].to_numpy( dtype = int )
    if ages.min() < 0 or ages.max() >= n_nodes or xs.min() < 0 or xs.max() >= n_space:
        raise agediff.model.DimensionError( '{}: index out of range for the grid'.format( path ) )
    values[ ages, xs ] = frame['value'].to_numpy( dtype = float )
    return agediff.AgeProfile( values, agrid )

def write_trajectory( trajectory: 'agediff.Trajectory', path: str ):
    r""" Writes every profile sample of a trajectory: t,a,x_index,value.
    """
    stack = np.stack( [ p.values for p in trajectory.profiles ] )
    n_times, n_nodes, n_space = stack.shape
    nodes = trajectory.profiles[0].agrid.nodes
    frame = pd.DataFrame({
        't': np.repeat( trajectory.times, n_nodes * n_space ),
        'a': np.tile( np.repeat( nodes, n_space ), n_times ),
        'x_index': np.tile( np.arange( n_space ), n_times * n_nodes ),
        'value': stack.reshape( -1 ),
    }, columns = TRAJECTORY_COLUMNS )
    _write( frame, path, 'trajectory' )

def write_birth_history( trajectory: 'agediff.Trajectory', path: str ):
    births = np.asarray( trajectory.birth_history )
    n_times, n_space = births.shape
    frame = pd.DataFrame({
        't': np.repeat( trajectory.times, n_space ),
        'x_index': np.tile( np.arange( n_space ), n_times ),
        'value': births.reshape( -1 ),
    }, columns = BIRTH_COLUMNS )
    _write( frame, path, 'birth-history' )

def write_char_values( char_values: List[Tuple[float, float]], path: str ):
    frame = pd.DataFrame( [ list( pair ) for pair in char_values ], columns = CHAR_COLUMNS )
    _write( frame, path, 'char-values' )

def write_eigenvalues( eigenvalues: np.ndarray, path: str ):
    eigenvalues = np.asarray( eigenvalues, dtype = complex )
    frame = pd.DataFrame({
        'index': np.arange( len( eigenvalues ) ),
        'real': eigenvalues.real,
        'imag': eigenvalues.imag,
    }, columns = EIGEN_COLUMNS )
    _write( frame, path, 'eigenvalues' )

def write_json( report: dict, path: str ):
    r""" Writes a report with its key order preserved. Identical reports give identical bytes.
    """
    directory = os.path.dirname( os.path.abspath( path ) )
    os.makedirs( directory, exist_ok = True )
    with open( path, 'w' ) as f:
        json.dump( report, f, indent = 2, sort_keys = False, allow_nan = True )
        f.write( '\n' )
