"""Borel equivariant cohomology of finite group actions on CW complexes."""
