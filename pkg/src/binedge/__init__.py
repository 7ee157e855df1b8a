"""Binomial edge ideals, weakly closed graphs and the Knutson family of
``f = y_1 f_12 f_23 ... f_{n-1,n} x_n``."""

__version__ = "0.1.0"
