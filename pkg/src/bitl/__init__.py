"""Bivariate inverse Topp-Leone lifetime model with FGM dependence.

Subpackages cover the univariate inverse Topp-Leone margin (`itl`), the
FGM copula layer (`fgm`), the composed joint model (`bivariate`),
maximum-likelihood fitting (`estimate`), random-walk Metropolis MCMC
(`bayes`), model comparison (`modelsel`), CSV/JSON ingestion and
serialization (`dataio`) and the batch command line (`cli`).
"""

from bitl.bivariate import BitlParams
from bitl.dataio import Dataset

__version__ = "0.1.0"

__all__ = ["BitlParams", "Dataset", "__version__"]
