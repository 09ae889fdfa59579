__author__ = "Fractal Approximator contributors"
__version__ = '0.1.0'
