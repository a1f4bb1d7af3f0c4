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


# agediff code and report format version.
__version__ = '1.0.0'
__version_as_int__ = (100 * 1) + (10 * 0) + (1 * 0)  # Integer representation

# Versioned header written on the first line of every CSV export.
__csv_version__ = 1

# ---- LOGGING ----
from agediff._logging import logging as logging

# ---- Utils ----
from agediff import utils as utils

# ---- Factories -----
from agediff._cli import cli as cli
from agediff._model import model as model
from agediff._config import config as config
from agediff._spectrum import spectrum as spectrum
from agediff._executor import executor as executor
from agediff._evolution import evolution as evolution
from agediff._semigroup import semigroup as semigroup
from agediff._resolvent import resolvent as resolvent
from agediff._perturbation import perturbation as perturbation

# ---- Classes -----
from agediff._cli.cli_impl import CLI as CLI
from agediff._model.model_impl import Model as Model
from agediff._config.config_impl import Config as Config
from agediff._model.grids import AgeGrid as AgeGrid
from agediff._model.grids import SpaceGrid as SpaceGrid
from agediff._model.grids import NormSpec as NormSpec
from agediff._model.grids import BoundaryCondition as BoundaryCondition
from agediff._model.coefficients import Coefficients as Coefficients
from agediff._model.coefficients import CoefficientField as CoefficientField
from agediff._model.model_impl import SpatialOperator as SpatialOperator
from agediff._semigroup.profile import AgeProfile as AgeProfile
from agediff._semigroup.profile import Trajectory as Trajectory
from agediff._evolution.evolution_impl import EstimateFit as EstimateFit
from agediff._evolution.evolution_impl import EvolutionCache as EvolutionCache
from agediff._semigroup.semigroup_impl import Semigroup as Semigroup
from agediff._perturbation.perturbation_impl import PerturbationSpec as PerturbationSpec
from agediff._resolvent.resolvent_impl import Resolvent as Resolvent
from agediff._resolvent.resolvent_impl import ResolventResult as ResolventResult
from agediff._resolvent.resolvent_impl import ResolventSolver as ResolventSolver
from agediff._spectrum.generator_impl import GeneratorMatrix as GeneratorMatrix
from agediff._spectrum.report import Outcome as Outcome
from agediff._spectrum.report import SpectralReport as SpectralReport
from agediff._spectrum.report import CompactnessDiagnostics as CompactnessDiagnostics
from agediff._spectrum.spectrum_impl import Spectrum as Spectrum
from agediff._executor.executor_impl import Executor as Executor
