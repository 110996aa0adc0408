"""Exact computations with cellular systems, heredity chains and standard stratifications."""

from .algcore import (Algebra, Quotient, algebra_verify, corner, division_verdict, ideal_generated, is_ideal,
                      local_verdict, pim_classes, primitive_idempotents, quotient_algebra, radical, settings, using)
from .cellsys import (CellularDatum, Layer, Poset, chain_poset, costandard_module, from_cellular_basis,
                      gram_table, m_iso, phi, standard_module, verify_axioms, verify_decomposition)
from .chains import (Certificate, Claim, IdealChain, certify_qh_from_system, chain_from_system,
                     decide_qh_bounded, replay, stratification_from_local_system, system_from_heredity_chain,
                     verify_heredity_chain, verify_heredity_ideal, verify_stratifying_ideal)
from .corpusio import (CorpusEntry, builtin, load_algebra, load_certificate, load_system, random_basis_change,
                       save_algebra, save_certificate, save_system)
from .errors import (AxiomViolation, DimensionMismatch, FieldMismatch, InconclusiveError,
                     InternalConsistencyError, MethodInapplicable, NotAnIdealError, NotDivisibleError, ParseError,
                     StrataError)
from .exactla import GF, QQ, Field, Matrix, Subspace
from .modules import AModule, hom_space, is_projective
from .repthy import (classify_simples, delta_filtration, fullness, lambda_irr, projective_cover, rad_delta, simple)

__version__ = "0.1.0"
