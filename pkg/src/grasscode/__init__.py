"""Exact tools for weights of Grassmann-code codewords over small finite fields."""

from .classify7 import ClassId, classify, representative, spectrum_c37
from .extalg import AltForm, interior, pair, parse_form, wedge
from .gf import FieldElement, FieldSpec, field_new, special_s
from .grassmann import codeword_weight_direct, enum_grassmannian, generator_matrix
from .pfaffian import pf_k, rank_2form
from .weightvar import q_omega, weight_nondeg_formula, weight_via_reduction, x_variety

__version__ = "0.1.0"
