"""Numerical audit toolkit for product-form non-abelian gauge field configurations."""

__version__ = "0.1.0"
