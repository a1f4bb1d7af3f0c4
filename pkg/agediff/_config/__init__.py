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
import yaml
import agediff
from argparse import ArgumentParser

from . import config_impl

from loguru import logger
logger = logger.opt(colors=True)

class config:

    class InvalidConfigFile(Exception):
        r""" Raised when a run file cannot be read or is not valid YAML. Carries the line number when known.
        """
        def __init__( self, message: str, path: str = None, line: int = None ):
            super().__init__( message )
            self.path = path
            self.line = line

    class ValidationError(Exception):
        r""" Raised when a config field violates a precondition. The message starts with the field path.
        """
        pass

    def __new__( cls, parser: ArgumentParser = None, args: list = None ) -> 'agediff.Config':
        r""" Parses the passed parser into a nested agediff.Config.
            Args:
                parser (:obj:`argparse.ArgumentParser`, `optional`):
                    Parser with dotted destinations, i.e. --model.n_age.
                args (:obj:`list`, `optional`):
                    Command line to parse. Defaults to sys.argv.
        """
        if parser == None:
            parser = ArgumentParser()

        params = parser.parse_known_args( args = args )[0]
        return config_impl.Config.from_flat( params.__dict__ )

    @staticmethod
    def full() -> 'agediff.Config':
        parser = ArgumentParser()
        config.add_all_args( parser )
        return agediff.config( parser, args = [] )

    @staticmethod
    def add_all_args( parser: ArgumentParser ):
        r""" Adds the arguments of every computational factory to the parser.
        """
        agediff.model.add_args( parser )
        agediff.perturbation.add_args( parser )
        agediff.evolution.add_args( parser )
        agediff.semigroup.add_args( parser )
        agediff.resolvent.add_args( parser )
        agediff.spectrum.add_args( parser )
        agediff.executor.add_args( parser )
        agediff.logging.add_args( parser )

    @staticmethod
    def check_all( items: 'agediff.Config' ):
        r""" Runs every factory's check_config and converts failed preconditions into ValidationError.
        """
        try:
            agediff.model.check_config( items )
            for section in agediff.perturbation.sections( items ):
                agediff.perturbation.check_config( items, section = section )
            agediff.evolution.check_config( items )
            agediff.semigroup.check_config( items )
            agediff.resolvent.check_config( items )
            agediff.spectrum.check_config( items )
            agediff.executor.check_config( items )
        except AssertionError as e:
            raise config.ValidationError( str(e) ) from e

    @staticmethod
    def load_yaml( path: str ) -> dict:
        r""" Loads a run file and returns its items as a flat dict of dotted keys.
            Nested sections (model: {n_age: 64}) and dotted keys (model.n_age: 64) are both accepted.

            Args:
                path (str, `required`):
                    Path to the YAML run file.

            Returns:
                items (:obj:`dict`):
                    Flat dotted items from the file.
        """
        path = os.path.expanduser( path )
        if not os.path.isfile( path ):
            logger.error('CONFIG: cannot find passed configuration file at {}', path)
            raise config.InvalidConfigFile( 'cannot find a configuration file at {}'.format( path ), path = path )
        with open( path, 'r' ) as f:
            try:
                path_items = yaml.safe_load( f )
            except yaml.YAMLError as exc:
                line = None
                mark = getattr( exc, 'problem_mark', None )
                if mark != None:
                    line = mark.line + 1
                problem = getattr( exc, 'problem', None ) or str( exc )
                logger.error('CONFIG: cannot parse passed configuration file at {}', path)
                raise config.InvalidConfigFile( '{}:{}: {}'.format( path, line, problem ), path = path, line = line ) from exc
        if path_items == None:
            return {}
        if not isinstance( path_items, dict ):
            raise config.InvalidConfigFile( '{}:1: top level must be a mapping of sections'.format( path ), path = path, line = 1 )
        return config_impl.Config( path_items ).to_flat()

    @staticmethod
    def dump_yaml( items: 'agediff.Config', path: str ):
        r""" Writes the config as flat dotted keys, the format load_yaml reads back.
        """
        flat = items.to_flat()
        with open( path, 'w' ) as f:
            yaml.safe_dump( flat, f, default_flow_style = None, sort_keys = True )
