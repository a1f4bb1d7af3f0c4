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
import copy
import argparse
from collections import OrderedDict
from typing import Dict, List, Tuple

import agediff
from . import cli_impl

from loguru import logger
logger = logger.opt(colors=True)

COMMANDS = OrderedDict([
    ( 'simulate', '''Evolve u0 (--input, ones by default) to numerics.t_final and write the trajectory.''' ),
    ( 'resolvent', '''Apply (lambda - A)^{-1}, or (lambda - A - B)^{-1} with --perturbed, to --input.''' ),
    ( 'spectral-bound', '''Root of r(Q_lambda) = 1 with the characteristic values on numerics.lambdas.''' ),
    ( 'spectrum', '''Dense eigenvalues of the generator, principal eigenvector and strong positivity.''' ),
    ( 'compactness', '''Singular-value decay and eigenvalue counts over numerics.refinements.''' ),
    ( 'compare-perturbed', '''Compare the spectral bound, resolvent and semigroup of A and A + B.''' ),
    ( 'verify', '''Run the oracles and invariant suites and print a pass/fail table.''' ),
])

class ConfigParser( argparse.ArgumentParser ):
    r""" ArgumentParser that raises agediff.config.ValidationError instead of exiting the process.
    """
    def error( self, message: str ):
        raise agediff.config.ValidationError( message )

class cli:

    def __new__(
            cls,
            config: 'agediff.Config' = None,
            executor: 'agediff.Executor' = None
        ) -> 'agediff.CLI':
        r""" Creates a new agediff.cli from passed arguments.
            Args:
                config (:obj:`agediff.Config`, `optional`):
                    agediff.cli.config()
                executor (:obj:`agediff.Executor`, `optional`):
                    agediff executor object, used to execute cli commands.
        """
        if config == None: config = cli.config()
        cli.check_config( config )
        if executor == None:
            executor = agediff.executor( config = config )
        return cli_impl.CLI(
            config = config,
            executor = executor
        )

    @staticmethod
    def add_args( parser: argparse.ArgumentParser, items: Dict = None ):
        r""" Adds every config field, the perturbation sections named in items and the command flags.
        """
        agediff.executor.add_args( parser )
        for section in cli.extra_sections( items ):
            agediff.perturbation.add_args( parser, prefix = section )

    @staticmethod
    def add_command_args( parser: argparse.ArgumentParser ):
        parser.add_argument('--config', type=str, default=None, help='''YAML run file; command line flags override its values.''')
        parser.add_argument('--lambda', dest='numerics.lambda', type=float, default=None, help='''lambda of the resolvent command.''')
        parser.add_argument('--input', dest='run.input', type=str, default=None, help='''CSV AgeProfile input.''')
        parser.add_argument('--output', dest='output.dir', type=str, default='./agediff_output', help='''Output directory.''')
        parser.add_argument('--perturbed', dest='run.perturbed', type=str, nargs='?', const='perturbation', default=None,
            help='''Use the perturbation section (default: perturbation).''')

    @staticmethod
    def extra_sections( items: Dict = None ) -> List[str]:
        if items == None:
            return []
        sections = { key.split('.')[0] for key in items }
        return sorted( s for s in sections if s != 'perturbation' and agediff._perturbation.SECTION.match( s ) )

    @staticmethod
    def parser( items: Dict = None ) -> Tuple[ConfigParser, Dict[str, ConfigParser]]:
        r""" Builds the command parser and its subparsers.
        """
        parser = ConfigParser( description = "agediff cli", usage = "agediff-cli <command> <command args>", add_help = True, allow_abbrev = False )
        parser._positionals.title = "commands"
        cmd_parsers = parser.add_subparsers( dest = 'command' )
        commands = OrderedDict()
        for name, help in COMMANDS.items():
            command_parser = cmd_parsers.add_parser( name, help = help, allow_abbrev = False )
            cli.add_args( command_parser, items )
            cli.add_command_args( command_parser )
            commands[ name ] = command_parser
        return parser, commands

    @staticmethod
    def apply_items( parser: argparse.ArgumentParser, items: Dict ):
        r""" Installs run file items as parser defaults after rejecting unknown keys.
        """
        known = { action.dest for action in parser._actions }
        unknown = sorted( key for key in items if key not in known )
        if len( unknown ) > 0:
            raise agediff.config.ValidationError( '{}: unknown configuration key'.format( ', '.join( unknown ) ) )
        parser.set_defaults( **items )

    @staticmethod
    def config( args: List[str] = None ) -> 'agediff.Config':
        r""" Parses a command line, i.e. ['spectral-bound', '--config', 'run.yaml', '--model.n_age', '64'].
        """
        pre = argparse.ArgumentParser( add_help = False )
        pre.add_argument( '--config', type = str, default = None )
        known, _ = pre.parse_known_args( args = args )
        items = agediff.config.load_yaml( known.config ) if known.config != None else {}

        parser, commands = cli.parser( items )
        for command_parser in commands.values():
            cli.apply_items( command_parser, items )
        params = parser.parse_args( args = args )
        flat = dict( params.__dict__ )
        flat.pop( 'config', None )
        config = agediff.Config.from_flat( flat )
        cli.check_config( config )
        return config

    @staticmethod
    def parse_config( path: str, echo: bool = False ) -> 'agediff.Config':
        r""" Reads a YAML run file into a validated config with every default filled.
            Args:
                path (str, `required`):
                    YAML run file.
                echo (bool, `optional`):
                    Also write the effective config to output.dir/effective_config.yaml.

            Raises:
                InvalidConfigFile: the file is missing or not valid YAML.
                ValidationError: a key is unknown or a field violates its precondition.
        """
        items = agediff.config.load_yaml( path )
        parser = ConfigParser( allow_abbrev = False )
        cli.add_args( parser, items )
        cli.apply_items( parser, items )
        config = agediff.Config.from_flat( dict( parser.parse_args( args = [] ).__dict__ ) )
        agediff.config.check_all( config )
        if echo:
            os.makedirs( os.path.expanduser( config.output.dir ), exist_ok = True )
            agediff.config.dump_yaml( config, os.path.join( os.path.expanduser( config.output.dir ), 'effective_config.yaml' ) )
        return config

    @staticmethod
    def check_config( config: 'agediff.Config' ):
        if config.get( 'command' ) not in COMMANDS:
            raise agediff.config.ValidationError( 'command: expected one of {}'.format( ', '.join( COMMANDS ) ) )
        agediff.config.check_all( config )

    @staticmethod
    def run_command( command: str, config: 'agediff.Config' ) -> int:
        r""" Runs one command on a validated config and returns the process exit code.
        """
        config = copy.deepcopy( config )
        config.command = command
        try:
            return cli( config = config ).run()
        except Exception as e:
            code = agediff.utils.codes.exception_to_code( e )
            agediff.logging.error_record( code, e )
            return code

    @staticmethod
    def main( args: List[str] = None ) -> int:
        r""" Entry point of bin/agediff-cli: parses, validates, runs and returns the exit code.
        """
        try:
            config = cli.config( args )
        except ( agediff.config.ValidationError, agediff.config.InvalidConfigFile ) as e:
            code = agediff.utils.codes.exception_to_code( e )
            agediff.logging.error_record( code, e )
            return code
        return cli.run_command( config.command, config )
