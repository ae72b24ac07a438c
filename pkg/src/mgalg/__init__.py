'''Finite monadic Goedel algebras: construction, duality, subvarieties, free algebras.'''

from .core import (FiniteMGAlgebra, HomWitness, build_algebra, classify,
                   enumerate_algebras, find_isomorphism, generate_subalgebra,
                   ordinal_sum, product_algebra, quotient_by_filter)

__version__ = '0.1.0'
