"""Secondary pairings between torsion K-theory and K-homology, computed on
finitely generated abelian groups, circle eta invariants and unitary
determinants."""

from .fgab import (CompositionError, DirectSum, FgGroup, GroupElement, GroupHom,
                   IllDefinedHomError, IntMatrix, TRIVIAL, Z, are_isomorphic, cokernel, contains,
                   cyclic, direct_sum, exact_at, free_group, group_from_presentation, image,
                   induced_map, invariant_factors, inverse, is_subgroup_equal, kernel,
                   smith_normal_form, subgroup, torsion_subgroup)
from .functors import (QZ, DirectedFamily, DirectLimit, ExtElement, ExtGroup, HomGroup,
                       InconsistentFamilyError, InfiniteGroupError, QZHom, QZValue, all_characters,
                       direct_limit, dual_pairing, ext_z, hom_group, is_perfect_pairing,
                       pontryagin_dual, qz_from_cyclic_stage, tensor_q, tensor_qz, tensor_zn,
                       tor_zn)
from .coeff import (KTheoryPair, QZCoefficients, ZnCoefficients, k_coeff_qz, k_coeff_zn,
                    kappa_down, kappa_up)
from .pairing import (ExtensionClass, NotAnExtensionError, NotInKernelError, QZPictureClass,
                      baer_sum, delta_via_extension, delta_via_qz, ext_to_qz_hom,
                      extension_for_character, pairing_value, pullback, qz_class_for,
                      rational_extensions)
from .lambda_families import (CompatibilityReport, FamilySpace, IncompatibleFamilyError,
                              KKGroupDescriptor, LambdaFamily, check_compatibility,
                              compatible_family_space, delta_from_family, family_from_delta,
                              kk_group, kk_table)
from .spectral import (EtaResult, FlatLineBundle, RhoResult, eta_circle, hurwitz_zeta,
                       pairing_crosscheck, rho_relative)
from .detpair import (BranchError, QZPairingResult, UnitaryPath, dls_determinant,
                      log_det_pairing, pairing_crosscheck_group, winding_number,
                      zeta_generator_check)

__version__ = "0.1.0"
