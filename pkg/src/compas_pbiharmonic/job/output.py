from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import csv
import io
import os

from compas.data import json_dumps
from compas.data import json_loads

import compas_pbiharmonic

CSV_HEADER = ("sign", "k", "p", "lambda")


def _write(text, path):
    folder = os.path.dirname(os.path.abspath(path))
    if not os.path.exists(folder):
        os.makedirs(folder)
    with open(path, "w", newline="") as f:
        f.write(text)
    if compas_pbiharmonic.VERBOSE:
        print("Output written to {}".format(path))


def dump_document(document, path=None):
    """Serialise a document to pretty JSON, optionally writing it to ``path``.

    Parameters
    ----------
    document : dict | :class:`compas_pbiharmonic.base.SpectralData`
        A plain document, or an object whose ``__data__`` is written.
    path : str, optional

    Returns
    -------
    str
        The JSON text, newline terminated.

    """
    if hasattr(document, "__data__") and not isinstance(document, dict):
        document = document.__data__
    text = json_dumps(document, pretty=True) + "\n"
    if path:
        _write(text, path)
    return text


def load_document(path):
    with open(path, "r") as f:
        return json_loads(f.read())


def csv_rows_from_table(table):
    return [(pair.sign, pair.k, pair.p, pair.lam) for pair in table.pairs]


def csv_rows_from_sweep(sweep):
    return [(sign, k, p, lam) for (sign, k), points in sorted(sweep.curves.items()) for p, lam, _ in points]


def csv_rows_from_oracle(plus, minus, kmax=None):
    rows = [("+", k, 2.0, lam) for k, (lam, _) in enumerate(plus, 1)]
    rows += [("-", k, 2.0, lam) for k, (lam, _) in enumerate(minus, 1)]
    return [row for row in rows if kmax is None or row[1] <= kmax]


def dump_csv(rows, path=None):
    """Flat ``sign,k,p,lambda`` table with shortest round-trip floats."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for sign, k, p, lam in rows:
        writer.writerow((sign, int(k), repr(float(p)), repr(float(lam))))
    text = buffer.getvalue()
    if path:
        _write(text, path)
    return text
