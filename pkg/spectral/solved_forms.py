"""
Formes résolues des équations propres des graphes extrémaux privés d'une arête, et quantités
dérivées utilisées par les vérifications de preuve (phi, bornes sur z, produit s*t).
Toutes les fonctions prennent lambda et la valeur de classe y (ou y, z) et renvoient les
valeurs prédites des autres classes.
"""


def n_solved_forms(k, lam, y):
    """N^k_n - uv : x, z, t en fonction de y."""
    ratio = 1 - k * k / (lam * (lam + 1))
    return {
        'X': k / lam * y,
        'Z': ratio * y,
        'T': (lam + 1) / (lam + 2) * ratio * y,
    }


def l_solved_forms(k, lam, y):
    """L^k_n - uv : x, z, t en fonction de y = x_w."""
    ratio = 1 - k / ((lam - k + 1) * (lam + 1))
    return {
        'X': y / (lam - k + 1),
        'Z': ratio * y,
        'T': (lam + 1) / (lam + 2) * ratio * y,
    }


def b_solved_forms(n, k, lam, y, z):
    """B^k_n - uv (u dans Y, v dans Z) : s, t en fonction de y et z, et z en fonction de y."""
    denominator = lam * lam - 1
    return {
        'S': (lam * lam * y - lam * z) / denominator,
        'T': (lam * lam * z - lam * y) / denominator,
        'Z': denominator / lam ** 3 * (n - k + 1 / denominator) * y,
    }


def z_bounds(n, k):
    """Encadrement (1 - k/n - 1/n^2) y < z < y, renvoyé comme facteurs de y."""
    return 1 - k / n - 1 / n ** 2, 1.0


def phi(k, x, y, t):
    return 2 * t * t - 2 * k * x * y - k * (k - 1) * x * x


def phi_ratio(k, lam):
    """phi / y^2 en forme close, après substitution des formes résolues de L^k_n - uv."""
    shifted = lam - k + 1
    return (
        2 * ((lam + 1) / (lam + 2)) ** 2 * (1 - k / (shifted * (lam + 1))) ** 2
        - 2 * k / shifted
        - (k * k - k) / shifted ** 2
    )


def phi_lower_bound(k):
    """Minorant explicite de phi / y^2 dans le régime lambda >= n-k-1."""
    if k >= 2:
        return 2 * (11 / 15) * (101 / 117) - 10 / 9
    return 2 * (4 / 5) ** 2 * (11 / 12) ** 2 - 2 / 3


def l_restriction_quadratic(k, lam, x, y, t):
    """<A(K_{n-k}) x'', x''> pour la restriction du vecteur de Perron de L^k_n - uv."""
    return lam + 2 * t * t - 2 * k * x * y - k * (k - 1) * x * x


def b_restriction_quadratic(k, lam, w, x, s, t):
    """<A(K_{n,n-k}) x'', x''> pour la restriction du vecteur de Perron de B^k_n - uv."""
    return lam + 2 * s * t - 2 * k * k * w * x


def b_st_gap(k, lam, s, t, x):
    """lambda s t - k^3 x^2, positif dans le régime n >= k^3 + 2k + 4."""
    return lam * s * t - k ** 3 * x * x


def b_x_identity(n, k, lam, y):
    """Membre de droite de (lambda - k^2/lambda) x = (n-k) y - (n-k-1) y / lambda^2."""
    return (n - k) * y - (n - k - 1) * y / lam ** 2
