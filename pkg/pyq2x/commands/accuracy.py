from marshmallow import fields, validate

from pyq2x.args import int_list
from pyq2x.configloader import config
from pyq2x.commands.command import Command
from pyq2x.exceptions import ToleranceError, ValidationError
from pyq2x.experiments import SOURCE_DISTANCE, accuracy_sweep, envelope_breaches, log_spaced
from pyq2x.schemas import make_strict_schema

KIND_CODES = ("K", "L", "M", "N")

def envelope_margin(kind):

    """ The factor on the error bound tolerated by `--check-envelope`. The
    double-layer majorant sits below its leading tail term at low p, so
    kind M has its own.
    """

    return config.double_layer_margin if kind == "M" else config.envelope_margin

class AccuracyCommand(Command):
    HELP = "Sweep the truncation error of the reference simplex against its closed-form potential"

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument("-k", "--kind", required=True, type=str.upper, help="One of K, L, M, N")
        parser.add_argument("--p-list", type=int_list, default=[4, 8, 12, 16, 20])
        parser.add_argument("--d-min", type=float, default=1.5)
        parser.add_argument("--d-max", type=float, default=10.0)
        parser.add_argument("--d-steps", type=int, default=50, help="Log-spaced distance samples")
        parser.add_argument("--rt", type=float, help="Simplex circumradius, per configuration by default")
        parser.add_argument(
            "--check-envelope", action="store_true",
            help="Exit with status 1 if any error exceeds the margin times its bound"
        )

    def run(self):
        args = self.args
        permitted = self.permit_arguments(
            make_strict_schema(
                kind=fields.String(validate=validate.OneOf(KIND_CODES)),
                p_list=fields.List(
                    fields.Integer(validate=validate.Range(min=1)), validate=validate.Length(min=1)
                ),
                d_min=fields.Float(validate=validate.Range(min=0, min_inclusive=False)),
                d_max=fields.Float(),
                d_steps=fields.Integer(validate=validate.Range(min=1)),
                rt=fields.Float(validate=validate.Range(min=0, max=0.2, min_inclusive=False)),
            ),
            dict(
                kind=args.kind,
                p_list=args.p_list,
                d_min=args.d_min,
                d_max=args.d_max,
                d_steps=args.d_steps,
                rt=config.rt if args.rt is None else args.rt,
            ),
        )

        rt = permitted["rt"]

        if permitted["d_min"] <= SOURCE_DISTANCE + rt:
            raise ValidationError(
                {"d_min": [f"Must exceed the source radius {SOURCE_DISTANCE + rt:.6g}"]}
            )
        if permitted["d_max"] < permitted["d_min"]:
            raise ValidationError({"d_max": ["Must not be below d_min"]})

        self.logger.amend_context(kind=permitted["kind"])
        self.logger.info(f"Sweeping p={permitted['p_list']} over {permitted['d_steps']} distances")

        samples = accuracy_sweep(
            permitted["kind"],
            permitted["p_list"],
            log_spaced(permitted["d_min"], permitted["d_max"], permitted["d_steps"]),
            rt,
            config.bound_constant,
        )

        self.write_csv(
            ("kind", "p", "d", "error", "bound"),
            ((s.kind.value, s.p, s.d, s.error, s.bound) for s in samples),
        )

        if args.check_envelope:
            margin = envelope_margin(permitted["kind"])
            breaches = envelope_breaches(samples, margin, config.roundoff_floor)

            if breaches:
                worst = max(breaches, key=lambda s: s.error / s.bound)

                raise ToleranceError(
                    message=f"{len(breaches)} samples outside the error envelope, worst at d={worst.d:.6g}",
                    kind=worst.kind.value,
                    value=worst.error,
                    tolerance=margin * worst.bound,
                )

        return 0
