"""
Sérialisation graph6 : en-tête de taille (caractères décalés de 63) puis bits du triangle
supérieur dans l'ordre des colonnes, 6 bits par caractère, complétés par des zéros.
"""
import logging

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from .structures import Graph

logger = logging.getLogger(__name__)

GRAPH6_HEADER = b'>>graph6<<'
MAX_ORDER = 68_719_476_735


def _invalid_character(char, position):
    return ValidationError(
        _("Caractère hors de la plage graph6 (%(char)r) en position %(position)s."),
        code='invalid_character',
        params={'char': char, 'position': position},
    )


def _to_ascii(text):
    """Un caractère non ASCII est refusé ici, jamais remplacé par un octet valide."""
    try:
        return text.encode('ascii')
    except UnicodeEncodeError as exc:
        raise _invalid_character(text[exc.start], exc.start) from exc


def _encode_size(n):
    if n < 0 or n > MAX_ORDER:
        raise ValidationError(
            _("Ordre %(n)s hors des limites du format graph6."),
            code='order_too_large',
            params={'n': n},
        )
    if n <= 62:
        return bytes([n + 63])
    if n <= 258_047:
        return bytes([126] + [((n >> shift) & 0x3F) + 63 for shift in (12, 6, 0)])
    return bytes([126, 126] + [((n >> shift) & 0x3F) + 63 for shift in (30, 24, 18, 12, 6, 0)])


def encode_graph6(g):
    """Encode un graphe en graph6 (sans en-tête ni retour à la ligne)."""
    out = bytearray(_encode_size(g.n))
    value = 0
    filled = 0
    for j in range(1, g.n):
        column = g.rows[j]
        for i in range(j):
            value = (value << 1) | (column >> i & 1)
            filled += 1
            if filled == 6:
                out.append(value + 63)
                value = filled = 0
    if filled:
        out.append((value << (6 - filled)) + 63)
    return bytes(out)


def _decode_size(data):
    """Retourne (n, position du premier octet de données)."""
    if not data:
        raise ValidationError(_("Enregistrement graph6 vide."), code='malformed_header', params={'position': 0})
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        width, start = 6, 2
    else:
        width, start = 3, 1
    if len(data) < start + width:
        raise ValidationError(
            _("En-tête graph6 tronqué."),
            code='malformed_header',
            params={'position': len(data)},
        )
    n = 0
    for offset in range(start, start + width):
        n = (n << 6) | (data[offset] - 63)
    return n, start + width


def decode_graph6(data):
    """
    Décode un enregistrement graph6. Accepte bytes ou str, avec l'en-tête optionnel
    >>graph6<< et un retour à la ligne final.
    """
    if isinstance(data, str):
        data = _to_ascii(data)
    data = data.rstrip(b'\r\n')
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]

    for position, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise _invalid_character(chr(byte), position)

    n, start = _decode_size(data)
    if n < 1:
        raise ValidationError(_("Un graphe a au moins un sommet."), code='malformed_header', params={'position': 0})
    pairs = n * (n - 1) // 2
    expected = (pairs + 5) // 6
    body = data[start:]
    if len(body) < expected:
        raise ValidationError(
            _("Section de bits tronquée : %(expected)s caractères attendus, %(got)s reçus."),
            code='truncated_bits',
            params={'expected': expected, 'got': len(body), 'position': len(data)},
        )
    if len(body) > expected:
        raise ValidationError(
            _("Caractères en trop après la section de bits (position %(position)s)."),
            code='trailing_data',
            params={'position': start + expected},
        )

    rows = [0] * n
    index = 0
    i, j = 0, 1
    for byte in body:
        chunk = byte - 63
        for shift in range(5, -1, -1):
            if index >= pairs:
                break
            if chunk >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            index += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, tuple(rows))


def read_graph6_lines(stream):
    """
    Itère sur (numéro de ligne, graphe) d'un flux texte ou binaire ; les lignes vides sont ignorées.
    Une erreur de décodage est relancée avec le numéro de ligne dans ses paramètres.
    """
    for lineno, line in enumerate(stream, start=1):
        try:
            if isinstance(line, str):
                line = _to_ascii(line)
            line = line.strip()
            if not line:
                continue
            yield lineno, decode_graph6(line)
        except ValidationError as exc:
            params = dict(exc.params or {})
            params['line'] = lineno
            logger.warning(f"graph6 parse error on line {lineno}: {exc.messages[0]}")
            raise ValidationError(
                _("Ligne %(line)s : ") + exc.message,
                code=exc.code,
                params=params,
            ) from exc
