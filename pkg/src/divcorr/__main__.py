from divcorr.cli import run

run()
