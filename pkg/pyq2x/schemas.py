
""" Marshmallow schemas validating configuration and text input. """

from marshmallow import RAISE, Schema, ValidationError, fields, validate, validates_schema

LOG_LEVELS = ("critical", "error", "warning", "info", "debug")

def make_strict_schema(**d):

    """ Create a Marshmallow schema instance from the incoming dict. Unknown
    keys are rejected.
    """

    return Schema.from_dict(d)(unknown=RAISE)

class ConfigSchema(Schema):

    """ The full set of configuration keys. Values overridden from the
    process environment arrive as strings and are coerced here.
    """

    class Meta:
        unknown = RAISE

    loglevel = fields.String(required=True, validate=validate.OneOf(LOG_LEVELS))
    extra_loglevel = fields.String(allow_none=True, validate=validate.OneOf(LOG_LEVELS))

    rt = fields.Float(required=True, validate=validate.Range(min=0, max=0.2, min_inclusive=False))
    bound_constant = fields.Float(required=True, validate=validate.Range(min=0, min_inclusive=False))
    envelope_margin = fields.Float(required=True, validate=validate.Range(min=1))
    double_layer_margin = fields.Float(required=True, validate=validate.Range(min=1))
    roundoff_floor = fields.Float(required=True, validate=validate.Range(min=0))
    recursion_tolerance = fields.Float(
        required=True, validate=validate.Range(min=0, min_inclusive=False)
    )

    workers = fields.Integer(required=True, validate=validate.Range(min=1))
    csv_digits = fields.Integer(required=True, validate=validate.Range(min=1, max=17))

    check_p_max = fields.Integer(required=True, validate=validate.Range(min=1))
    check_count = fields.Integer(required=True, validate=validate.Range(min=0))
    bench_reps = fields.Integer(required=True, validate=validate.Range(min=1))

class MeshRowSchema(Schema):

    """ One element line of a mesh file: a kind letter, the vertex
    coordinates and the density multiplier.
    """

    VERTEX_COUNTS = {"S": 2, "T": 3, "Q": 4}

    class Meta:
        unknown = RAISE

    kind = fields.String(required=True, validate=validate.OneOf(tuple(VERTEX_COUNTS)))
    coordinates = fields.List(fields.Float(allow_nan=False), required=True)
    density = fields.Float(required=True, allow_nan=False)

    @validates_schema
    def validate_vertex_count(self, data, **kwargs):
        expected = 3 * self.VERTEX_COUNTS[data["kind"]]

        if len(data["coordinates"]) != expected:
            raise ValidationError(
                f"Expected {expected} coordinates for kind {data['kind']}, "
                f"got {len(data['coordinates'])}.",
                "coordinates"
            )
