"""Exact computations with nonassociative algebras and Lie superalgebras in small odd characteristic."""
