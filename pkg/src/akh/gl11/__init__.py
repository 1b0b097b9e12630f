from .exterior import alpha_iso, complex_action, exterior_action
from .homology import action_on_homology
from .superrep import (
    RepFingerprint,
    SuperRep,
    fundamental_rep,
    rep_fingerprint,
    verify_superalgebra,
)
from .tensor import dual_tensor_rep, tensor_action
