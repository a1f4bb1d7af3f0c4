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
from typing import List

import numpy as np
from rich.align import Align
from rich.console import Console
from rich.table import Table

import agediff
import agediff.utils.codes as code_utils
import agediff.utils.io_utils as io_utils
from agediff._spectrum.report import SpectralReport, Outcome
from . import verify_impl

from loguru import logger
logger = logger.opt(colors=True)

def raw_error_estimate( s_bound, richardson ) -> str:
    r""" |s_bound - richardson|, the O(da^2) error of the raw root; tolerances below it need the extrapolate. """
    if s_bound == None or richardson == None:
        return '-'
    return '{:.3e} (use richardson below this)'.format( abs( s_bound - richardson ) )

class Executor:

    def __init__( self, config: 'agediff.Config', console: Console = None ):
        r""" Creates a new Executor that runs the agediff commands on one configured instance.
            Args:
                config (:obj:`agediff.Config`, `required`):
                    Validated run config, i.e. agediff.cli.parse_config( path ).
                console (:obj:`rich.console.Console`, `optional`):
                    Console the summary tables are printed to.
        """
        self.config = config
        self.console = console if console != None else Console()
        self._model = None
        self._cache = None
        self._solver = None
        self._spectrum = None

    def __str__( self ) -> str:
        return 'Executor({})'.format( self.output_dir )

    def __repr__( self ) -> str:
        return self.__str__()

    # ---- Instance ----

    @property
    def output_dir( self ) -> str:
        return os.path.expanduser( self.config.output.dir )

    @property
    def model( self ) -> 'agediff.Model':
        if self._model == None:
            self._model = agediff.model( config = self.config )
        return self._model

    @property
    def cache( self ) -> 'agediff.EvolutionCache':
        if self._cache == None:
            self._cache = agediff.evolution( self.model, config = self.config )
        return self._cache

    @property
    def solver( self ) -> 'agediff.ResolventSolver':
        if self._solver == None:
            self._solver = agediff.resolvent( self.cache, config = self.config )
        return self._solver

    @property
    def spectrum( self ) -> 'agediff.Spectrum':
        if self._spectrum == None:
            self._spectrum = agediff.spectrum( self.solver, config = self.config )
        return self._spectrum

    @property
    def semigroup( self ) -> 'agediff.Semigroup':
        return self.solver.semigroup

    def perturbation( self ) -> 'agediff.PerturbationSpec':
        section = self.config.run.perturbed if self.config.run.perturbed != None else 'perturbation'
        return agediff.perturbation( self.model, config = self.config, section = section )

    def _input_profile( self ) -> 'agediff.AgeProfile':
        if self.config.run.input == None:
            return agediff.AgeProfile.ones( self.model.agrid, self.model.n_space )
        profile = io_utils.read_profile( os.path.expanduser( self.config.run.input ), self.model.agrid, self.model.n_space )
        logger.info( 'Loaded input profile:'.ljust(20) + '<blue>{}</blue>', self.config.run.input )
        return profile

    def _path( self, name: str ) -> str:
        return os.path.join( self.output_dir, name )

    def echo_config( self ):
        r""" Writes the effective config with its defaults to output.dir/effective_config.yaml.
        """
        os.makedirs( self.output_dir, exist_ok = True )
        items = agediff.Config({ key: val for key, val in self.config.items() if key not in ( 'command', 'config' ) })
        agediff.config.dump_yaml( items, self._path( 'effective_config.yaml' ) )

    # ---- Commands ----

    def simulate( self ) -> int:
        r""" Evolves the input profile (ones by default) to numerics.t_final and writes the trajectory.
        """
        t_final = self.config.numerics.t_final if self.config.numerics.t_final != None else self.model.agrid.a_max
        u0 = self._input_profile()
        pert = self.perturbation() if self.config.run.perturbed != None else None
        if pert == None or pert.is_zero():
            trajectory = self.semigroup.evolve( u0, t_final )
        else:
            trajectory = self.semigroup.evolve_perturbed( u0, t_final, pert )
        io_utils.write_trajectory( trajectory, self._path( 'trajectory.csv' ) )
        io_utils.write_birth_history( trajectory, self._path( 'birth_history.csv' ) )
        io_utils.write_profile( trajectory.final, self._path( 'final_profile.csv' ) )

        rows = [
            [ 'samples', str( len( trajectory ) ) ],
            [ 't_final', '{:.6g}'.format( trajectory.times[-1] ) ],
            [ 'perturbed', str( trajectory.perturbed ) ],
            [ '||u(0)||', '{:.6e}'.format( self.model.profile_norm( trajectory.profiles[0] ) ) ],
            [ '||u(t_final)||', '{:.6e}'.format( self.model.profile_norm( trajectory.final ) ) ],
            [ 'positive', str( all( self.model.cone_check( p ) for p in trajectory.profiles ) ) ],
        ]
        if len( trajectory ) >= 4:
            rows.append( [ 'growth rate', '{:.6g}'.format( self.semigroup.growth_rate( trajectory ) ) ] )
        self._print_pairs( 'simulate', rows )
        return code_utils.SUCCESS

    def resolvent( self ) -> int:
        r""" Applies (lambda - A)^{-1}, or (lambda - A - B)^{-1} with --perturbed, to the input profile.
        """
        lam = self.config.numerics.get( 'lambda' )
        if lam == None:
            raise agediff.config.ValidationError( 'numerics.lambda: the resolvent command needs --lambda' )
        phi = self._input_profile()
        if self.config.run.perturbed != None:
            result = self.solver.apply_perturbed( phi, lam, self.perturbation() )
        else:
            result = self.solver.apply( phi, lam )
        io_utils.write_profile( result.psi, self._path( 'resolvent.csv' ) )
        self._print_pairs( 'resolvent', [
            [ 'lambda', '{:.12g}'.format( result.lam ) ],
            [ 'path', result.path ],
            [ 'q_norm', '{:.6g}'.format( result.q_norm ) ],
            [ 'condition', '{:.6g}'.format( result.condition ) ],
            [ 'residual', '{:.3e}'.format( result.certified_residual ) ],
            [ 'certified', str( result.certified ) ],
            [ 'iterations', str( result.iterations ) ],
        ])
        return code_utils.SUCCESS

    def _char_lambdas( self, report: SpectralReport ) -> List[float]:
        if len( self.config.numerics.lambdas ) > 0:
            return list( self.config.numerics.lambdas )
        lo, hi = report.bracket
        return [ float( l ) for l in np.linspace( lo, hi, 17 ) ]

    def spectral_bound( self ) -> int:
        r""" Root of r(Q_lambda) = 1 with the characteristic values on a lambda grid and the Richardson extrapolate.
        """
        report = SpectralReport( bracket = self.spectrum.search_bracket() )
        report.s_bound = self.spectrum.spectral_bound()
        report.char_values = self.spectrum.char_values( self._char_lambdas( report ) )
        report.richardson = self.spectrum.richardson()
        io_utils.write_char_values( report.char_values, self._path( 'char_values.csv' ) )
        io_utils.write_json( report.to_dict(), self._path( 'spectral_bound.json' ) )
        self._print_pairs( 'spectral-bound', [
            [ 's_bound', 'none-found' if report.s_bound == None else '{:.12g}'.format( report.s_bound ) ],
            [ 'richardson', '-' if report.richardson == None else '{:.12g}'.format( report.richardson ) ],
            [ 'raw error est.', raw_error_estimate( report.s_bound, report.richardson ) ],
            [ 'bracket', '[{:.6g}, {:.6g}]'.format( *report.bracket ) ],
        ])
        return code_utils.SUCCESS

    def spectrum_report( self ) -> int:
        r""" Dense eigenvalues of the generator, the spectral bound, the principal eigenvector and the strong-positivity set.
        """
        pert = self.perturbation() if self.config.run.perturbed != None else None
        report = SpectralReport( bracket = self.spectrum.search_bracket() )
        report.s_bound = self.spectrum.spectral_bound()
        report.eigenvalues = self.spectrum.eigenvalues( pert )
        report.strong_positivity = self.spectrum.strong_positivity()
        if pert != None and not pert.is_zero():
            report.s_bound_perturbed = self.spectrum.perturbed_spectral_bound( pert )
            if report.s_bound_perturbed != None:
                report.principal_vector = self.spectrum.perturbed_principal_eigenvector( report.s_bound_perturbed, pert )
        elif report.s_bound != None and self.model.positivity_mode:
            report.principal_vector = self.spectrum.principal_eigenvector( report.s_bound )
        if report.principal_vector != None:
            report.principal_residual = self.spectrum.generator( pert ).defect(
                report.principal_vector, report.s_bound if report.s_bound_perturbed == None else report.s_bound_perturbed )
            io_utils.write_profile( report.principal_vector, self._path( 'principal_vector.csv' ) )
        io_utils.write_eigenvalues( report.eigenvalues, self._path( 'eigenvalues.csv' ) )
        io_utils.write_json( report.to_dict(), self._path( 'spectrum.json' ) )

        table = Table( show_footer = False )
        table.title = '[bold white]Rightmost eigenvalues'
        table.add_column( '[overline white]#', style = 'yellow', justify = 'right' )
        table.add_column( '[overline white]Re', style = 'green', justify = 'right', no_wrap = True )
        table.add_column( '[overline white]Im', style = 'green', justify = 'right', no_wrap = True )
        for index, value in enumerate( report.eigenvalues[:10] ):
            table.add_row( str( index ), '{:.9g}'.format( value.real ), '{:.9g}'.format( value.imag ) )
        table.caption = '[bold white]s_bound: [bold green]{}'.format( 'none-found' if report.s_bound == None else '{:.12g}'.format( report.s_bound ) )
        self._print( table )
        return code_utils.SUCCESS

    def compactness( self ) -> int:
        r""" Singular-value decay and eigenvalue counts over numerics.refinements.
        """
        diagnostics = self.spectrum.compactness_probe()
        report = SpectralReport( bracket = self.spectrum.search_bracket(), s_bound = self.spectrum.spectral_bound(), compactness = diagnostics )
        io_utils.write_json( report.to_dict(), self._path( 'compactness.json' ) )

        table = Table( show_footer = False )
        table.title = '[bold white]Compactness proxies (threshold {:.6g})'.format( diagnostics.threshold )
        table.add_column( '[overline white]n_age', style = 'yellow', justify = 'right' )
        table.add_column( '[overline white]n_space', style = 'yellow', justify = 'right' )
        table.add_column( '[overline white]count', justify = 'right' )
        table.add_column( '[overline white]decay', style = 'green', justify = 'right' )
        table.add_column( '[overline white]sigma_max', justify = 'right' )
        table.add_column( '[overline white]sigma_min', justify = 'right' )
        for level in diagnostics.levels:
            table.add_row( str( level.n_age ), str( level.n_space ), str( level.count ), '{:.4f}'.format( level.decay_exponent ),
                '{:.4e}'.format( level.largest_singular_value ), '{:.4e}'.format( level.smallest_singular_value ) )
        table.caption = '[bold white]counts stable: {}'.format( '[bold green]yes' if diagnostics.counts_stable else '[bold red]no' )
        self._print( table )
        return code_utils.SUCCESS

    def compare_perturbed( self ) -> int:
        r""" Runs the comparison suite of A and A + B and writes compare.json.
        """
        pert = self.perturbation()
        lambdas = list( self.config.numerics.lambdas )
        if len( lambdas ) == 0:
            known = [ s for s in ( self.spectrum.spectral_bound(), self.spectrum.perturbed_spectral_bound( pert ) ) if s != None ]
            floor = max( known ) if len( known ) > 0 else self.spectrum.search_bracket()[1]
            lambdas = [ floor + 0.5, floor + 1.0, floor + 2.0 ]
        outcomes = self.spectrum.comparison_suite( pert, lambdas )
        report = SpectralReport(
            bracket = self.spectrum.search_bracket(),
            s_bound = self.spectrum.spectral_bound(),
            s_bound_perturbed = self.spectrum.perturbed_spectral_bound( pert ),
            comparisons = outcomes,
        )
        io_utils.write_json( report.to_dict(), self._path( 'compare.json' ) )
        self._print_outcomes( 'compare-perturbed', outcomes )
        return code_utils.SUCCESS

    def verify( self ) -> int:
        r""" Runs the invariant suites and the canonical oracles; exit code 5 when any check fails.
        """
        outcomes = verify_impl.VerifySuite( self ).run()
        io_utils.write_json( { 'outcomes': [ o.to_dict() for o in outcomes ], 'passed': all( o.passed for o in outcomes ) },
            self._path( 'verify.json' ) )
        self._print_outcomes( 'verify', outcomes )
        if all( o.passed for o in outcomes ):
            return code_utils.SUCCESS
        return code_utils.VERIFY_FAILED

    # ---- Tables ----

    def _print( self, table: Table ):
        table.box = None
        table.pad_edge = False
        table.width = None
        self.console.print( Align.center( table ) )

    def _print_pairs( self, title: str, rows: List[List[str]] ):
        table = Table( show_footer = False )
        table.title = '[bold white]' + title
        table.add_column( '[overline white]QUANTITY', style = 'yellow', no_wrap = True )
        table.add_column( '[overline white]VALUE', style = 'green', justify = 'right', no_wrap = True )
        for row in rows:
            table.add_row( *row )
        self._print( table )

    def _print_outcomes( self, title: str, outcomes: List[Outcome] ):
        passed = sum( 1 for o in outcomes if o.passed )
        table = Table( show_footer = True )
        table.title = '[bold white]' + title
        table.add_column( '[overline white]CHECK', str( len( outcomes ) ), footer_style = 'overline white', style = 'yellow', no_wrap = True )
        table.add_column( '[overline white]RESULT', '[bold green]{}/[bold red]{}'.format( passed, len( outcomes ) - passed ),
            footer_style = 'overline white', justify = 'right' )
        table.add_column( '[overline white]MARGIN', justify = 'right', style = 'green', no_wrap = True )
        table.add_column( '[overline white]DETAIL', style = 'dim blue', no_wrap = False )
        for o in outcomes:
            if o.skipped:
                result = '[bold yellow]SKIP'
            elif o.passed:
                result = '[bold green]PASS'
            else:
                result = '[bold red]FAIL'
            table.add_row( o.name, result, '{:.3e}'.format( o.margin ), o.detail )
        self._print( table )
