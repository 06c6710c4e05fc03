from marshmallow import fields, validate

from pyq2x.args import point
from pyq2x.commands.command import Command
from pyq2x.harmonics import degree_of_index, order_of_index
from pyq2x.mesh import load_mesh
from pyq2x.q2x import ExpansionRequest, check_compatible, consolidate, expand
from pyq2x.schemas import make_strict_schema
from pyq2x.util import parallel_map

class ExpandCommand(Command):

    """ Expand every element of a mesh file about a common center. Rows are
    ordered by element index, then degree, then order.
    """

    HELP = "Expand the elements of a mesh file"

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument("mesh", type=str, help="Mesh file")
        parser.add_argument("-k", "--kind", required=True, type=str.upper, help="One of K, L, M, N")
        parser.add_argument("-p", "--p", required=True, type=int, help="Truncation number")
        parser.add_argument("--center", type=point, default=[0.0, 0.0, 0.0], help="x,y,z")
        parser.add_argument(
            "--consolidate", action="store_true",
            help="Emit the sum of all element expansions instead of one per element"
        )

    def run(self):
        args = self.args
        permitted = self.permit_arguments(
            make_strict_schema(
                kind=fields.String(validate=validate.OneOf(("K", "L", "M", "N"))),
                p=fields.Integer(validate=validate.Range(min=1)),
                center=fields.List(fields.Float(allow_nan=False), validate=validate.Length(equal=3)),
            ),
            dict(kind=args.kind, p=args.p, center=args.center),
        )

        request = ExpansionRequest(permitted["center"], permitted["p"], permitted["kind"])
        elements = load_mesh(args.mesh)

        for element in elements:
            check_compatible(element, request)

        self.logger.amend_context(kind=request.kind.value, p=request.p)
        self.logger.info(f"Expanding {len(elements)} elements on {self.workers} workers")

        expansions = parallel_map(lambda element: expand(element, request), elements, self.workers)

        if args.consolidate:
            labelled = [("all", consolidate(expansions))] if expansions else []
        else:
            labelled = list(enumerate(expansions))

        self.write_csv(("element_index", "n", "m", "re", "im"), self._rows(labelled, request.p))

        return 0

    @staticmethod
    def _rows(labelled, p):
        degrees = degree_of_index(p)
        orders = order_of_index(p)

        for label, coeffs in labelled:
            for n, m, value in zip(degrees, orders, coeffs.data.data):
                yield label, int(n), int(m), float(value.real), float(value.imag)
