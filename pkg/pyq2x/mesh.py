
""" The element mesh text format: one element per line,

    S x1 y1 z1 x2 y2 z2 rho
    T x1 y1 z1 x2 y2 z2 x3 y3 z3 rho
    Q x1 y1 z1 x2 y2 z2 x3 y3 z3 x4 y4 z4 rho

with whitespace-separated decimals. Everything after `#` is a comment.
"""

import logging

from marshmallow import ValidationError as MarshmallowValidationError

from pyq2x.exceptions import ValidationError
from pyq2x.geometry import SimplexElement
from pyq2x.schemas import MeshRowSchema

logger = logging.getLogger(__name__)

def parse_mesh(text):
    schema = MeshRowSchema()
    elements = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()

        if not tokens:
            continue

        kind, *numbers = tokens
        row = {
            "kind": kind,
            "coordinates": numbers[:-1],
            "density": numbers[-1] if numbers else None,
        }

        try:
            loaded = schema.load(row)
        except MarshmallowValidationError as e:
            raise ValidationError(e.messages, line=lineno) from e

        coordinates = loaded["coordinates"]
        vertices = [coordinates[i:i + 3] for i in range(0, len(coordinates), 3)]

        elements.append(SimplexElement(loaded["kind"], vertices, loaded["density"]))

    logger.debug("Parsed %d elements", len(elements))

    return elements

def load_mesh(path):
    with open(path, encoding="utf-8") as f:
        return parse_mesh(f.read())
