from marshmallow import fields, validate

from pyq2x.args import int_list
from pyq2x.configloader import config
from pyq2x.commands.command import Command
from pyq2x.experiments import SCALING_P, bench, cost_scaling
from pyq2x.schemas import make_strict_schema

KIND_ALIASES = {
    "K": "K", "L": "L", "M": "M", "N": "N",
    "SEGMENT": "K", "TRIANGLE": "L", "TETRA": "N", "TETRAHEDRON": "N",
}

class BenchCommand(Command):

    """ Time recursive against quadrature expansion of the reference simplex
    for every p of `--p-list`. With `--scaling`, report instead how the
    recursive cost grows from p=20 to p=40, whole `expand` calls and
    compiled recursions alone.
    """

    HELP = "Time recursive against quadrature expansion of the reference simplex"

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument(
            "-k", "--kind", required=True, type=str.upper,
            help="K, L, M, N, or one of segment, triangle, tetra"
        )
        parser.add_argument("--p-list", type=int_list, default=[4, 8, 16, 32])
        parser.add_argument("--reps", type=int, help="Repetitions, per configuration by default")
        parser.add_argument(
            "--scaling", action="store_true",
            help=f"Report the cost ratio of p={SCALING_P[1]} to p={SCALING_P[0]} instead"
        )

    def run(self):
        args = self.args
        permitted = self.permit_arguments(
            make_strict_schema(
                kind=fields.String(validate=validate.OneOf(tuple(KIND_ALIASES))),
                p_list=fields.List(
                    fields.Integer(validate=validate.Range(min=1)), validate=validate.Length(min=1)
                ),
                reps=fields.Integer(validate=validate.Range(min=1)),
            ),
            dict(
                kind=args.kind,
                p_list=args.p_list,
                reps=config.bench_reps if args.reps is None else args.reps,
            ),
        )

        kind = KIND_ALIASES[permitted["kind"]]
        self.logger.amend_context(kind=kind)

        if args.scaling:
            return self._run_scaling(kind, permitted["reps"])

        self.logger.info(f"Timing p={permitted['p_list']}, {permitted['reps']} repetitions")

        samples = bench(kind, permitted["p_list"], permitted["reps"], config.recursion_tolerance, config.rt)

        self.write_csv(
            ("kind", "p", "method", "ns_per_expansion"),
            ((s.kind.value, s.p, s.method, float(s.ns)) for s in samples),
        )

        return 0

    def _run_scaling(self, kind, reps):
        sample = cost_scaling(kind, reps=reps, rt=config.rt)

        self.logger.info(
            f"p={sample.p_high} over p={sample.p_low}: expand {sample.expansion_ratio:.2f}x, "
            f"recursion {sample.recursion_ratio:.2f}x"
        )
        self.write_csv(
            ("kind", "p_low", "p_high", "expansion_ratio", "recursion_ratio"),
            [(sample.kind.value, sample.p_low, sample.p_high, sample.expansion_ratio, sample.recursion_ratio)],
        )

        return 0
