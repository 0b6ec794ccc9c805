"""Run a coupling-step sweep from a config file, the same way the CLI does.

Equivalent shell command:

    giantatom sweep demos/step_sweep.toml --csv demos/out/step_sweep.csv
"""

from pathlib import Path

from giantatom.cli import main

from _common import out_path

here = Path(__file__).resolve().parent
code = main(["sweep", str(here / "step_sweep.toml"), "--csv", str(out_path("step_sweep.csv")),
             "--svg", str(out_path("step_sweep.svg"))])
print(out_path("step_sweep.csv").read_text())
raise SystemExit(code)
