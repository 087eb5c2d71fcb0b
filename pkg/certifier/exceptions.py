class TheoremViolation(Exception):
    """
    Un verdict obtenu par théorème est contredit par l'oracle exact, ou une inégalité
    interne à la preuve échoue sur le graphe. Signale une erreur d'implémentation.
    """

    def __init__(self, rule, detail):
        self.rule = rule
        self.detail = detail
        super().__init__(f"[{rule}] {detail}")
