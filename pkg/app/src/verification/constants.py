# Verification suite registry
# Structured as dictionaries for better organization and extensibility

# Check tag -> owning module and a one-line description
CHECKS = {
    'core-tensor': {
        'module': 'hilbert_core',
        'description': 'Tr(A (x) B) = Tr(A) Tr(B) and partial traces of products',
    },
    'core-partial-transpose': {
        'module': 'hilbert_core',
        'description': 'partial transpose is an involution that leaves the other reduced state alone',
    },
    'core-eig': {
        'module': 'hilbert_core',
        'description': 'Hermitian eigendecomposition reconstructs its input',
    },
    'core-weyl': {
        'module': 'hilbert_core',
        'description': 'Weyl operators are unitary and obey the composition law',
    },
    'eq-nogo': {
        'module': 'frames',
        'description': 'no frame satisfies positivity, orthogonality and completeness at once',
    },
    'eq-duals': {
        'module': 'frames',
        'description': 'pseudo-inverse duals are biorthogonal and match closed forms',
    },
    'eq-reconstruct': {
        'module': 'quasiprob',
        'description': 'rho -> Tr(Lambda(i) rho) -> sum_i P(i) R(i) round trip',
    },
    'eq-causality': {
        'module': 'quasiprob',
        'description': 'sum_i Tr(E R(i)) Tr(Lambda(i) rho) = Tr(E rho)',
    },
    'eq-two-space': {
        'module': 'quasiprob',
        'description': 'product trace over two Hilbert spaces equals Tr(E rho)',
    },
    'eq-kd-marginals': {
        'module': 'quasiprob',
        'description': 'Kirkwood-Dirac marginals are Born probabilities',
    },
    'eq-tomography': {
        'module': 'quasiprob',
        'description': 'linear-inversion tomography with the qubit SIC',
    },
    'eq-swap': {
        'module': 'correlations',
        'description': 'sum_i R(i) (x) Lambda(i) = U_SWAP',
    },
    'eq-fill': {
        'module': 'correlations',
        'description': 'sum_i (R(i) + I) (x) Lambda(i) = U_SWAP + I (x) I',
    },
    'eq-pt': {
        'module': 'correlations',
        'description': 'partial transpose of |E><E| equals U_SWAP / d',
    },
    'eq-entangled-expansion': {
        'module': 'correlations',
        'description': '|E><E| = (1/d) sum_i lambda_i R(i) (x) R*(i)',
    },
    'eq-conjugate': {
        'module': 'correlations',
        'description': 'outcomes of A on system 1 and A* on system 2 always agree',
    },
    'eq-bellm': {
        'module': 'protocols',
        'description': 'shifted phase-point sums are the generalized Bell projectors',
    },
    'eq-teleport': {
        'module': 'protocols',
        'description': 'teleportation restores the input for every outcome',
    },
    'eq-clone': {
        'module': 'protocols',
        'description': 'optimal cloning output, marginal fidelity and decomposition',
    },
    'eq-ideal-copy': {
        'module': 'protocols',
        'description': 'ideal-copy component marginals and frame expansion',
    },
    'eq-discrepancy': {
        'module': 'protocols',
        'description': 'discrepancy traces and element discrepancies',
    },
    'eq-joint-ideal': {
        'module': 'protocols',
        'description': 'frame sum of the ideal-copy statistics equals Re Tr(E1 E2 rho)',
    },
}

MODULES = ['hilbert_core', 'frames', 'quasiprob', 'correlations', 'protocols']

# Random inputs drawn per check and per dimension
TRIALS = {
    'states': 50,
    'protocol_inputs': 20,
    'triples': 100,
    'deformations': 100,
    'swap_deformations': 50,
    'tomography_seeds': 200,
}

TOMOGRAPHY_SHOTS = [1000, 10000, 100000]

# Accepted window for the log-log slope of tomography error against N
TOMOGRAPHY_SLOPE = {
    'target': -0.5,
    'window': 0.1,
}


def resolve_selector(selector):
    """
    Expand a selector into check tags.

    Args:
        selector (str): 'all', a module name or a check tag

    Returns:
        list: Sorted check tags, or None for an unknown selector

    Example:
        resolve_selector('correlations')  # ['eq-conjugate', 'eq-entangled-expansion', ...]
    """
    if selector == 'all':
        return sorted(CHECKS)
    if selector in MODULES:
        return sorted(tag for tag, info in CHECKS.items() if info['module'] == selector)
    if selector in CHECKS:
        return [selector]
    return None
