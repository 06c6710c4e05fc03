from pyq2x.cli import run

run()
