from .numerics import *
