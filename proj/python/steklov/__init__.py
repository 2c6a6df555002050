from ._steklov import *
