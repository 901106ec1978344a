from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from functools import wraps
from time import perf_counter

import click

import compas_pbiharmonic


def timer(_func=None, *, message=None):
    """Print the runtime of the decorated function when running verbose."""

    def decorator_timer(func):
        @wraps(func)
        def wrapper_timer(*args, **kwargs):
            start_time = perf_counter()
            value = func(*args, **kwargs)
            if compas_pbiharmonic.VERBOSE:
                run_time = perf_counter() - start_time
                m = message or "Finished {!r} in".format(func.__name__)
                click.echo("{} {:.4f} secs".format(m, run_time), err=True)
            return value

        return wrapper_timer

    if _func is None:
        return decorator_timer
    else:
        return decorator_timer(_func)


def log(message, *args):
    """Print a progress message on stderr when running verbose."""
    if compas_pbiharmonic.VERBOSE:
        click.echo(message.format(*args) if args else message, err=True)


def warn(message, *args):
    """Print a warning on stderr when running verbose."""
    if compas_pbiharmonic.VERBOSE:
        click.echo("WARNING: " + (message.format(*args) if args else message), err=True)
