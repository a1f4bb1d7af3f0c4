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
import agediff.utils.codes as code_utils

from loguru import logger
logger = logger.opt(colors=True)

class CLI:
    def __init__( self, config: 'agediff.Config', executor: 'agediff.Executor' ):
        r""" Initialized a agediff.CLI object.
            Args:
                config (:obj:`agediff.Config`, `required`):
                    agediff.cli.config()
                executor (:obj:`agediff.Executor`, `required`):
                    agediff executor object, used to execute cli commands.
        """
        self.config = config
        self.executor = executor

    def run( self ) -> int:
        r""" Runs the configured command. Errors are logged, written to stderr as a JSON record and mapped to exit codes.
        """
        try:
            self.executor.echo_config()
            if self.config.command == "simulate":
                code = self.executor.simulate()
            elif self.config.command == "resolvent":
                code = self.executor.resolvent()
            elif self.config.command == "spectral-bound":
                code = self.executor.spectral_bound()
            elif self.config.command == "spectrum":
                code = self.executor.spectrum_report()
            elif self.config.command == "compactness":
                code = self.executor.compactness()
            elif self.config.command == "compare-perturbed":
                code = self.executor.compare_perturbed()
            elif self.config.command == "verify":
                code = self.executor.verify()
            else:
                logger.critical( "The command {} not implemented".format( self.config.command ) )
                code = code_utils.VALIDATION
        except Exception as e:
            code = code_utils.exception_to_code( e )
            logger.error( '<{}>{}</{}>: {}', code_utils.code_to_loguru_color( code ), code_utils.code_to_string( code ),
                code_utils.code_to_loguru_color( code ), e )
            agediff.logging.error_record( code, e )
            return code
        logger.info( 'Finished:'.ljust(20) + '<{}>{}</{}> ({})', code_utils.code_to_loguru_color( code ),
            code_utils.code_to_string( code ), code_utils.code_to_loguru_color( code ), self.config.command )
        return code
