from .ortho import (
    ortho_pair, y_first_column, cauchy_at_singularity, cauchy_transform, y_tilde_at_singularity,
    rhm_matrix,
)
from .identities import DeformedSymbol, verify_identity_alpha_beta, verify_identity_t
