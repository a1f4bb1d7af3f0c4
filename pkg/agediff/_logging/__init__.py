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
import sys
import json
import copy
import argparse
import agediff

from loguru import logger
logger = logger.opt(colors=True)

class logging:
    __initialized__:bool = False
    __debug_on__:bool = False
    __trace_on__:bool = False
    __sink__:int = None
    __file_sink__:int = None

    def __new__(
            cls,
            config: 'agediff.Config' = None,
            debug: bool = None,
            trace: bool = None,
            record_log: bool = None,
            logging_dir: str = None,
        ):
        r""" Installs the agediff log sinks. Calling it again replaces the sinks with the new settings.
            Args:
                config (:obj:`agediff.Config`, `optional`):
                    agediff.logging.config()
                debug (:obj:`bool`, `optional`):
                    Turn on debug messages.
                trace (:obj:`bool`, `optional`):
                    Turn on trace messages.
                record_log (:obj:`bool`, `optional`):
                    Also write messages to logging_dir/logs.log.
                logging_dir (:obj:`str`, `optional`):
                    Directory for the recorded log.
        """
        if config == None: config = logging.config()
        config = copy.deepcopy(config)
        config.logging.debug = debug if debug != None else config.logging.debug
        config.logging.trace = trace if trace != None else config.logging.trace
        config.logging.record_log = record_log if record_log != None else config.logging.record_log
        config.logging.logging_dir = logging_dir if logging_dir != None else config.logging.logging_dir

        # Remove all logger sinks.
        try:
            logger.remove( 0 )
        except ValueError:
            pass
        for sink in [ cls.__sink__, cls.__file_sink__ ]:
            if sink != None:
                try:
                    logger.remove( sink )
                except ValueError:
                    pass
        cls.__sink__ = None
        cls.__file_sink__ = None

        # Add filtered sys.stdout.
        cls.__sink__ = logger.add (
            sys.stdout,
            filter = cls.log_filter,
            colorize = True,
            enqueue = False,
            backtrace = True,
            diagnose = True,
            format = cls.log_formatter
        )
        cls.__initialized__ = True
        cls.set_debug(config.logging.debug)
        cls.set_trace(config.logging.trace)

        # ---- Setup logging to root ----
        if config.logging.record_log:
            logging_dir = os.path.expanduser( config.logging.logging_dir )
            os.makedirs( logging_dir, exist_ok = True )
            filepath = logging_dir + "/logs.log"
            cls.__file_sink__ = logger.add (
                filepath,
                rotation="25 MB",
                retention="10 days"
            )
            logger.debug('Set record log:'.ljust(20) + '<blue>{}</blue>', filepath)

        return logger.bind( internal=True )

    @classmethod
    def config(cls):
        parser = argparse.ArgumentParser()
        logging.add_args( parser )
        return agediff.config( parser, args = [] )

    @classmethod
    def add_args(cls, parser: argparse.ArgumentParser):
        try:
            parser.add_argument('--logging.debug', action='store_true', help='''Turn on agediff debugging information''', default=False)
            parser.add_argument('--logging.trace', action='store_true', help='''Turn on agediff trace level information''', default=False)
            parser.add_argument('--logging.record_log', action='store_true', help='''Turns on logging to file.''', default=False)
            parser.add_argument('--logging.logging_dir', type=str, help='Logging default root directory.', default='~/.agediff/logs/')
        except argparse.ArgumentError:
            # re-parsing arguments.
            pass

    @classmethod
    def check_config( cls, config: 'agediff.Config' ):
        assert config.logging

    @classmethod
    def set_debug(cls, on: bool = True ):
        cls.__debug_on__ = on
        if not cls.__initialized__:
            logging( debug = on )

    @classmethod
    def set_trace(cls, on: bool = True):
        cls.__trace_on__ = on
        if not cls.__initialized__:
            logging( trace = on )

    @classmethod
    def log_filter(cls, record ):
        if cls.__trace_on__:
            return True
        elif cls.__debug_on__ and record["level"].no >= logger.level('DEBUG').no:
            return True
        elif record["level"].no >= logger.level('INFO').no:
            return True
        else:
            return False

    @classmethod
    def log_formatter(cls, record):
        extra = record['extra']
        if 'step' in extra:
            return "<blue>{time:YYYY-MM-DD HH:mm:ss.SSS}</blue> | <level>{level: ^16}</level> | {extra[step]: <20} | {message}\n"
        else:
            return "<blue>{time:YYYY-MM-DD HH:mm:ss.SSS}</blue> | <level>{level: ^16}</level> | {message}\n"

    @classmethod
    def error_record( cls, code: int, error: Exception ) -> str:
        r""" Writes a single-line JSON error record on stderr and returns it.
        """
        record = json.dumps({
            'code': int(code),
            'error': agediff.utils.codes.code_to_string( code ),
            'message': str( error ),
        })
        sys.stderr.write( record + '\n' )
        sys.stderr.flush()
        return record

    @classmethod
    def success( cls, prefix:str, sufix:str ):
        prefix = prefix + ":"
        prefix = prefix.ljust(20)
        log_msg = prefix + sufix
        logger.success( log_msg )

    @classmethod
    def info( cls, prefix:str, sufix:str ):
        prefix = prefix + ":"
        prefix = prefix.ljust(20)
        log_msg = prefix + sufix
        logger.info( log_msg )
