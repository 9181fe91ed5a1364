"""suppvar: exact symbolic supports, local cohomology and localization
triangles for graded modules, complexes, and complete-intersection quotient
algebras."""

__version__ = "0.1.0"
