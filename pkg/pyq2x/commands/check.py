from marshmallow import fields, validate

from pyq2x.configloader import config
from pyq2x.commands.command import Command
from pyq2x.experiments import KINDS, check_case, run_check
from pyq2x.geometry import SimplexElement
from pyq2x.schemas import make_strict_schema

class CheckCommand(Command):

    """ Compare recursive against quadrature coefficients, and series
    against closed-form potentials, on seeded random elements of every
    kind. Each case is reproducible from (kind, seed, index).
    """

    HELP = "Self-check recursion, quadrature, series and oracles on random elements"

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument("--p-max", type=int, help="Truncation number, per configuration by default")
        parser.add_argument("--seed", type=int, default=1)
        parser.add_argument("--count", type=int, help="Cases per kind, per configuration by default")
        parser.add_argument("-k", "--kind", type=str.upper, action="append", help="Restrict to kinds")
        parser.add_argument(
            "--inject-degenerate", action="store_true",
            help="Add an element with coincident vertices to every kind to exercise failure reporting"
        )

    def run(self):
        args = self.args
        permitted = self.permit_arguments(
            make_strict_schema(
                p_max=fields.Integer(validate=validate.Range(min=1)),
                seed=fields.Integer(validate=validate.Range(min=0)),
                count=fields.Integer(validate=validate.Range(min=0)),
                kinds=fields.List(fields.String(validate=validate.OneOf([k.value for k in KINDS]))),
            ),
            dict(
                p_max=config.check_p_max if args.p_max is None else args.p_max,
                seed=args.seed,
                count=config.check_count if args.count is None else args.count,
                kinds=args.kind or [k.value for k in KINDS],
            ),
        )

        p, seed, count = permitted["p_max"], permitted["seed"], permitted["count"]
        self.logger.amend_context(seed=seed, p=p)
        rows = []

        for kind in KINDS:
            if kind.value not in permitted["kinds"]:
                continue

            if args.inject_degenerate:
                check_case(kind, seed, count, p, element=self._degenerate(kind))

            kind_logger = self.logger.bind(kind=kind.value)
            kind_logger.info(f"Checking {count} cases")

            results = run_check(kind, seed, count, p, config.recursion_tolerance, self.workers)

            if results:
                worst_recursion = max(r.recursion_error for r in results)
                worst_series = max(r.series_error / r.series_bound for r in results)

                kind_logger.info(
                    f"Passed; recursion difference {worst_recursion:.3g}, "
                    f"series error at {worst_series:.3g} of its bound"
                )
                rows.append((kind.value, len(results), worst_recursion, worst_series))

        self.write_csv(("kind", "cases", "max_recursion_difference", "max_series_error_ratio"), rows)

        return 0

    @staticmethod
    def _degenerate(kind):
        element_kind = kind.element_kind

        return SimplexElement(element_kind, [(0.0, 0.0, 0.0)] * element_kind.vertex_count)
