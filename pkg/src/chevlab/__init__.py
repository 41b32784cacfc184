"""Exact computation in low-rank adjoint Chevalley groups.

Modules:
  exactring  exact polynomial / quotient / fraction / modular arithmetic
  rootsys    A1, A2, B2, G2 root combinatorics
  chevgroup  Chevalley bases, adjoint matrices, symbolic group words
  decomp     rank-one, Gauss and Bruhat factorization calculus
  prooflab   the built-in identity catalog and verification runners
  shacheck   brute-force Sha-rigidity certification over small fields
  cli        batch command-line entry point
"""

__all__ = ["chevgroup", "decomp", "exactring", "prooflab", "rootsys",
           "shacheck", "cli"]
__version__ = "0.1.0"
