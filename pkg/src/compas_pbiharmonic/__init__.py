import os

from dotenv import load_dotenv


__author__ = ["Francesco Ranaudo"]
__copyright__ = "Block Research Group"
__license__ = "MIT License"
__email__ = "ranaudo@arch.ethz.ch"
__version__ = "0.1.0"


HERE = os.path.dirname(__file__)

HOME = os.path.abspath(os.path.join(HERE, "../../"))
DATA = os.path.abspath(os.path.join(HOME, "data"))
CONFIGS = os.path.abspath(os.path.join(DATA, "configs"))
GOLDEN = os.path.abspath(os.path.join(DATA, "golden"))
DOCS = os.path.abspath(os.path.join(HOME, "docs"))
TEMP = os.path.abspath(os.path.join(HOME, "temp"))

DEFAULTS = {
    "VERBOSE": "False",
    "STEP_COUNT": "4096",
    "NEWTON_TOL": "1e-10",
    "NEWTON_MAX_ITER": "50",
    "FD_STEP": "1e-7",
    "DAMPING": "1.0",
    "GRID_N": "199",
    "RESAMPLE_N": "999",
    "SEED": "0",
}


def init_pbiharmonic(path=None, **overrides):
    """Create a default environment file if it doesn't exist and loads its variables.

    Parameters
    ----------
    path : str, optional
        Where to write the file, by default the package folder.
    **overrides : dict
        Values replacing the defaults, e.g. ``STEP_COUNT=8192``.

    Returns
    -------
    str
        The path of the environment file.

    """
    env_path = path or os.path.abspath(os.path.join(HERE, ".env"))
    if not os.path.exists(env_path):
        settings = dict(DEFAULTS)
        settings.update({k.upper(): str(v) for k, v in overrides.items()})
        try:
            with open(env_path, "x") as f:
                f.write("\n".join(["{}={}".format(k, v) for k, v in settings.items()]))
        except OSError:
            # read-only installs keep the built-in defaults
            return env_path
    load_dotenv(env_path)
    return env_path


if not load_dotenv():
    init_pbiharmonic()


def _env(key):
    return os.getenv(key) or DEFAULTS[key]


VERBOSE = _env("VERBOSE").lower() == "true"
STEP_COUNT = int(_env("STEP_COUNT"))
NEWTON_TOL = float(_env("NEWTON_TOL"))
NEWTON_MAX_ITER = int(_env("NEWTON_MAX_ITER"))
FD_STEP = float(_env("FD_STEP"))
DAMPING = float(_env("DAMPING"))
GRID_N = int(_env("GRID_N"))
RESAMPLE_N = int(_env("RESAMPLE_N"))
SEED = int(_env("SEED"))


def set_verbose(verbose):
    global VERBOSE
    VERBOSE = bool(verbose)


__all__ = ["HOME", "DATA", "CONFIGS", "GOLDEN", "DOCS", "TEMP", "init_pbiharmonic", "set_verbose"]
