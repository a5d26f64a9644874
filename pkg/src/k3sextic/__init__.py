"""Computer algebra for degree-2 K3 surfaces w^2 = f(x, y, z) over Q.

Submodules: ``arith`` (integers, finite fields, univariate polynomials),
``mpoly`` (sparse multivariate polynomials), ``groebner``, ``tritangent``,
``k3`` (smoothness, point counts, Weil data), ``realcert`` and ``pipeline``.
"""

__version__ = "0.1.0"
