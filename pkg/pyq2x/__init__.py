
""" Recursive multipole expansion coefficients of Laplace layer potentials
over simplices. """

__version__ = "0.1.0"
