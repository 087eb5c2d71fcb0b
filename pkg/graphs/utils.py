from django.conf import settings

DEFAULTS = {
    'SOLVER_TOL': 1e-9,
    'AGREEMENT_TOL': 1e-8,
    'GUARD_BAND': 1e-9,
    'DENSE_LIMIT': 512,
    'POWER_MAX_ITER': 200000,
    'DP_LIMIT': 22,
    'BIPARTITE_DP_LIMIT': 24,
    'DESK_LIMIT': 14,
    'BIPARTITE_DESK_LIMIT': 20,
    'SPOT_VALIDATE': True,
    'SEARCH_BUDGET': 50_000_000,
    'CUT_SEARCH_BUDGET': 200_000,
}


def hamcheck_setting(name):
    """
    Retourne un paramètre du dictionnaire HAMCHECK des settings.
    Hors d'un processus Django (settings non configurés), les valeurs par défaut s'appliquent.
    """
    if name not in DEFAULTS:
        raise KeyError(f"Paramètre HAMCHECK inconnu : {name}")
    if settings.configured:
        return getattr(settings, 'HAMCHECK', {}).get(name, DEFAULTS[name])
    return DEFAULTS[name]


def iter_bits(mask):
    """Indices des bits à 1 d'un entier, dans l'ordre croissant."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices):
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask
