class SpectralError(Exception):
    """Erreur de calcul spectral (jamais une erreur de saisie : celles-ci lèvent ValidationError)."""


class PowerIterationError(SpectralError):
    def __init__(self, iterations, residual):
        self.iterations = iterations
        self.residual = residual
        super().__init__(f"power iteration did not converge after {iterations} steps (residual {residual:.3e})")


class QuotientBracketError(SpectralError):
    """La bisection du polynôme caractéristique n'a pas trouvé de changement de signe."""


class RootIsolationError(SpectralError):
    def __init__(self, n, k, message):
        self.n = n
        self.k = k
        super().__init__(f"f(n={n}, k={k}): {message}")


class BoundPreconditionError(SpectralError):
    """Hypothèse d'une borne spectrale non satisfaite par le graphe fourni."""
