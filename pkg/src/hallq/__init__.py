"""Exact Hall-algebra, root-lattice and reflection-functor computations for
quiver algebras over small prime fields.

Everything in this package counts: all linear algebra is exact arithmetic in
F_p, all polynomial fits are exact rational interpolation, and every
enumeration either completes or raises a BudgetError naming the bound it hit.
"""

from .ffla import BudgetError, DEFAULT_BUDGET, Mat, QPoly

__version__ = "0.1.0"

__all__ = ["BudgetError", "DEFAULT_BUDGET", "Mat", "QPoly", "__version__"]
