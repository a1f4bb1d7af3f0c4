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


import copy
import argparse

import agediff
from rich.console import Console

from . import executor_impl

class executor:

    def __new__(
            cls,
            config: 'agediff.Config' = None,
            console: Console = None,
        ) -> 'agediff.Executor':
        r""" Creates a new Executor object from passed arguments.
            Args:
                config (:obj:`agediff.Config`, `optional`):
                    agediff.executor.config()
                console (:obj:`rich.console.Console`, `optional`):
                    Console for the summary tables.
        """
        if config == None: config = executor.config()
        config = copy.deepcopy( config )
        agediff.config.check_all( config )
        agediff.logging (
            config = config
        )
        return executor_impl.Executor (
            config = config,
            console = console
        )

    @classmethod
    def config(cls) -> 'agediff.Config':
        parser = argparse.ArgumentParser()
        executor.add_args( parser )
        return agediff.config( parser, args = [] )

    @staticmethod
    def add_args( parser: argparse.ArgumentParser ):
        try:
            parser.add_argument('--output.dir', type=str, default='./agediff_output', help='''Directory of the CSV and JSON outputs and of the echoed config.''')
            parser.add_argument('--run.input', type=str, default=None, help='''CSV AgeProfile used as u0 by simulate and as phi by resolvent.''')
            parser.add_argument('--run.perturbed', type=str, default=None, help='''Perturbation section used by the command, i.e. perturbation or perturbation_<name>.''')
        except argparse.ArgumentError:
            # re-parsing arguments.
            pass
        agediff.logging.add_args( parser )
        agediff.model.add_args( parser )
        agediff.perturbation.add_args( parser )
        agediff.evolution.add_args( parser )
        agediff.semigroup.add_args( parser )
        agediff.resolvent.add_args( parser )
        agediff.spectrum.add_args( parser )

    @staticmethod
    def check_config( config: 'agediff.Config' ):
        assert isinstance( config.output.dir, str ) and len( config.output.dir ) > 0, 'output.dir must be a non-empty path'
        assert config.run.input == None or isinstance( config.run.input, str ), 'run.input must be a path'
        if config.run.perturbed != None:
            assert config.run.perturbed in agediff.perturbation.sections( config ), \
                'run.perturbed: no perturbation section named {}, available sections: {}'.format(
                    config.run.perturbed, ', '.join( agediff.perturbation.sections( config ) ) )
