"""2-torsion invariants of hyperelliptic curves y^2 - y = f(x) in characteristic 2."""

from .classify import (Decomposition, Stratum, VerifyReport, closed_form_module, decompose,
                       enumerate_strata, partition_count, realizable, verify_main)
from .curve import (BranchDatum, CurveData, Invariants, curve_from_json, invariants, normalize,
                    random_curve)
from .drham import DeRhamBasisLabel, build_drham, cr_form, r_form
from .errors import (Char2EOError, CtxMismatch, DimensionMismatch, DivisionByZero, FieldTooSmall,
                     InputError, MixedStep, NotAChain, PoleAtInfinity, Unramified)
from .ff import FieldCtx, FieldElement, Poly, RationalFn, fe_sqrt, field_arith, partial_fractions
from .gc import build_gc, build_ordinary, gc_eo_closed, gc_relations, gc_summands
from .semilin import (EOType, SemilinearModule, Subspace, a_number, canonical_filtration,
                      check_bt1, direct_sum, eo_type, p_rank, sl_map)

__version__ = "0.1.0"
