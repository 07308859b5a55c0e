from . import pandas_extension
