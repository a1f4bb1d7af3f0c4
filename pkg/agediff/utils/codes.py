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


import agediff

# Process exit codes.
SUCCESS = 0
NEAR_SPECTRUM = 2
VALIDATION = 3
NUMERICAL = 4
VERIFY_FAILED = 5

def exception_to_code( error: Exception ) -> int:
    r""" Maps an agediff exception to the process exit code.
    """
    if isinstance( error, agediff.resolvent.NearSpectrumError ):
        return NEAR_SPECTRUM
    elif isinstance( error, agediff.config.ValidationError ):
        return VALIDATION
    elif isinstance( error, agediff.config.InvalidConfigFile ):
        return VALIDATION
    elif isinstance( error, agediff.semigroup.AlignmentError ):
        return VALIDATION
    elif isinstance( error, agediff.semigroup.DomainError ):
        return VALIDATION
    elif isinstance( error, agediff.model.DimensionError ):
        return VALIDATION
    elif isinstance( error, agediff.model.InvalidCoefficient ):
        return VALIDATION
    elif isinstance( error, agediff.evolution.CausalityError ):
        return VALIDATION
    elif isinstance( error, agediff.spectrum.SizeError ):
        return VALIDATION
    elif isinstance( error, agediff.evolution.StepConstructionError ):
        return NUMERICAL
    elif isinstance( error, agediff.resolvent.InternalInconsistencyError ):
        return NUMERICAL
    elif isinstance( error, agediff.spectrum.DegeneratePeripheralSpectrum ):
        return NUMERICAL
    elif isinstance( error, agediff.spectrum.NumericalError ):
        return NUMERICAL
    else:
        return NUMERICAL

def code_to_string( code: int ) -> str:
    if code == SUCCESS:
        return 'Success'
    elif code == NEAR_SPECTRUM:
        return 'NearSpectrum'
    elif code == VALIDATION:
        return 'ValidationError'
    elif code == NUMERICAL:
        return 'NumericalFailure'
    elif code == VERIFY_FAILED:
        return 'VerifyFailed'
    else:
        return 'UnknownCode'

def code_to_loguru_color( code: int ) -> str:
    if code == SUCCESS:
        return 'green'
    elif code == NEAR_SPECTRUM:
        return 'yellow'
    elif code == VERIFY_FAILED:
        return 'magenta'
    else:
        return 'red'
