# vibrakit/cli/main.py

import typer

from .commands import bolts, modal, model, randvib, static
from ..config.settings import Config
from ..utils.logging import setup_logging

app = typer.Typer(
    name="vibrakit",
    help="Structural verification toolkit for small satellites",
    add_completion=False
)

# Random-vibration metrics as a command group
app.add_typer(randvib.app, name="randvib", help="Random-vibration test metrics")

# Model preparation
app.command(name="validate")(model.validate)
app.command(name="simplify")(model.simplify)
app.command(name="thickness")(model.thickness)

# Analyses
app.command(name="modal")(modal.modal)
app.command(name="jig")(modal.jig)
app.command(name="static")(static.static)
app.command(name="boltshear")(bolts.boltshear)
app.command(name="boltcheck")(bolts.boltcheck)


@app.callback()
def callback(
    verbose: bool = typer.Option(
        False,
        "-v",
        "--verbose",
        help="Enable verbose output with debug logging"
    )
):
    """
    vibrakit - FE modal/static analysis, bolt shear and random-vibration checks

    Exit codes: 0 success, 1 requirement failure, 2 input error, 3 solver error.
    """
    config = Config()
    setup_logging(config.config_dir, debug=verbose)


def main():
    app()


if __name__ == "__main__":
    main()
