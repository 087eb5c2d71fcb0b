class WitnessVerificationError(Exception):
    """Un témoin produit par la recherche ne se revérifie pas contre le graphe : erreur du solveur."""

    def __init__(self, kind, detail):
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind} witness failed re-verification: {detail}")
