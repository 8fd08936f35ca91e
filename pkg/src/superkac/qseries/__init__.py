from .engine import (Lattice, Series, div_one_plus, geom_inverse,
                     mul_one_plus, product_one_plus)
from .functions import (appell, euler_phi, euler_phi_inverse, jacobi_triple,
                        lemma_double_sum_identity, multi_appell, psi_product,
                        specialize_markers, super_product_identity,
                        theta_product, theta_series)

__all__ = [
    "Lattice", "Series", "div_one_plus", "geom_inverse", "mul_one_plus",
    "product_one_plus", "appell", "euler_phi", "euler_phi_inverse",
    "jacobi_triple", "lemma_double_sum_identity", "multi_appell",
    "psi_product", "specialize_markers", "super_product_identity",
    "theta_product", "theta_series",
]
