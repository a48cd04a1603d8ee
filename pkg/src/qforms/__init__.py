"""Exact q-expansion arithmetic for Jacobi forms of D_r lattice index,
half-integral weight and eta-type modular forms, and the Hecke
correspondences between them."""

__version__ = "0.1.0"
