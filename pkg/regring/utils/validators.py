MAX_PRIME = 251


def validate_prime(p):
    """Validate a prime modulus in the supported range (2..251)"""
    try:
        p = int(p)
    except (ValueError, TypeError):
        return False
    if p < 2 or p > MAX_PRIME:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


def validate_matrix_size(n):
    """Validate a matrix size of a ring component (at least 1)"""
    try:
        return int(n) >= 1
    except (ValueError, TypeError):
        return False


def validate_trials(trials):
    """Validate a trial count (at least 1)"""
    try:
        return int(trials) >= 1
    except (ValueError, TypeError):
        return False


def validate_seed(seed):
    """Validate an rng seed (non-negative integer)"""
    try:
        return int(seed) >= 0
    except (ValueError, TypeError):
        return False


def validate_residues(entries, p):
    """Validate that every entry is a residue 0 <= e < p"""
    try:
        return all(0 <= int(e) < p for e in entries)
    except (ValueError, TypeError):
        return False
