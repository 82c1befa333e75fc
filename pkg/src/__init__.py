"""
nslab - Number-theoretic Sheaf-sum Lab

Exact evaluation of Gauss and Jacobi sums, p-adic and finite-field
hypergeometric functions, twisted Kloosterman moments and a weight-4
newform, with prime-by-prime checks of the identities that tie them together.
"""

__version__ = "0.1.0"
__author__ = "Kena Kenea"
__email__ = "kkenea@proton.me"
