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


import yaml
from munch import Munch

class Config ( Munch ):

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

    def __repr__(self) -> str:
        return self.__str__()

    def __str__(items) -> str:
        return "\n" + yaml.dump(items.toDict())

    def to_flat( self, prefix: str = '' ) -> dict:
        r""" Returns the config as a flat dict of dotted keys, i.e. {'model.n_age': 64}.
        """
        items = {}
        for key, val in self.items():
            path = prefix + key
            if isinstance( val, Config ):
                items.update( val.to_flat( prefix = path + '.' ) )
            elif isinstance( val, dict ):
                items.update( Config( val ).to_flat( prefix = path + '.' ) )
            else:
                items[ path ] = val
        return items

    @staticmethod
    def from_flat( items: dict ) -> 'Config':
        r""" Nests a flat dict of dotted keys into a Config tree.
        """
        config = Config()
        for arg_key, arg_val in items.items():
            split_keys = arg_key.split('.')
            head = config
            for key in split_keys[:-1]:
                if key not in head or not isinstance( head[key], Config ):
                    head[key] = Config()
                head = head[key]
            head[split_keys[-1]] = arg_val
        return config
