from pyq2x.commands.command import Command
from pyq2x.util import make_namespace_importer

command_class = make_namespace_importer("pyq2x.commands.{code}", Command, return_class=True)
