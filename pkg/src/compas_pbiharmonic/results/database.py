import os

from sqlalchemy import Column
from sqlalchemy import Float
from sqlalchemy import Integer
from sqlalchemy import MetaData
from sqlalchemy import String
from sqlalchemy import Table
from sqlalchemy import and_
from sqlalchemy import asc
from sqlalchemy import create_engine
from sqlalchemy import desc
from sqlalchemy import inspect
from sqlalchemy import select

import compas_pbiharmonic

TABLE = "eigenvalues"
COLUMNS = ("run", "sign", "k", "p", "lambda", "engine")


class SpectrumDatabase:
    """sqlalchemy wrapper class to store computed eigenvalues in a SQLite database.

    Every row is one eigenvalue ``(run, sign, k, p, lambda, engine)``.

    Parameters
    ----------
    path : str
        Path of the database file, or ``":memory:"``.

    """

    def __init__(self, path):
        self.path = path
        self.db_uri = "sqlite://" if path == ":memory:" else "sqlite:///" + os.path.abspath(path)
        self.engine, self.connection, self.metadata = self.db_connection()
        self.table = self.create_table()
        self.inspector = inspect(self.engine)

    def db_connection(self):
        """
        Create and return a connection to the SQLite database along with its metadata.

        Returns
        -------
        engine : Engine
            The SQLAlchemy engine instance.
        connection : Connection
            The database connection.
        metadata : MetaData
            The MetaData instance for the database.
        """
        engine = create_engine(self.db_uri)
        metadata = MetaData(bind=engine)
        return engine, engine.connect(), metadata

    def create_table(self):
        table = Table(
            TABLE,
            self.metadata,
            Column("id", Integer, primary_key=True),
            Column("run", String, nullable=False),
            Column("sign", String(1), nullable=False),
            Column("k", Integer, nullable=False),
            Column("p", Float, nullable=False),
            Column("lambda", Float, nullable=False),
            Column("engine", String, nullable=False),
        )
        self.metadata.create_all(self.engine)
        return table

    def execute_query(self, query):
        """Execute a previously-defined query and return all the rows."""
        result_proxy = self.connection.execute(query)
        return result_proxy.fetchall()

    def close(self):
        self.connection.close()
        self.engine.dispose()

    # =========================================================================
    #                       Write methods
    # =========================================================================

    def insert_rows(self, rows):
        """Insert eigenvalue rows.

        Parameters
        ----------
        rows : list[dict]
            One dictionary per row with the keys of ``COLUMNS``.

        """
        if not rows:
            return
        with self.connection.begin():
            self.connection.execute(self.table.insert(), [{c: row[c] for c in COLUMNS} for row in rows])
        if compas_pbiharmonic.VERBOSE:
            print("{} rows written to {}".format(len(rows), self.path))

    def insert_table(self, run, table):
        """Store all the pairs of a :class:`SpectrumTable`."""
        self.insert_rows([{"run": run, "sign": pair.sign, "k": pair.k, "p": pair.p, "lambda": pair.lam, "engine": pair.engine} for pair in table.pairs])

    def insert_sweep(self, run, sweep):
        """Store all the points of a :class:`SweepTable`."""
        rows = []
        for (sign, k), points in sorted(sweep.curves.items()):
            rows.extend({"run": run, "sign": sign, "k": k, "p": p, "lambda": lam, "engine": "shooting"} for p, lam, _ in points)
        self.insert_rows(rows)

    # =========================================================================
    #                       Query methods
    # =========================================================================

    @property
    def table_names(self):
        return self.inspector.get_table_names()

    @property
    def runs(self):
        return sorted({row[0] for row in self.execute_query(select([self.table.c.run]))})

    def get_rows(self, columns_names, filters):
        """Get all the rows that match the filtering criteria
        and return the values for each column.

        Parameters
        ----------
        columns_name : list
            Name of each column to retrieve. The results are output in the same
            order.
        filters : dict
            Filtering criteria as {"column_name":[admissible values]}

        Return
        ------
        list of lists
            list with each row as a list
        """
        query = select([self.table.columns[c] for c in columns_names]).where(and_(*[self.table.columns[k].in_(v) for k, v in filters.items()]))
        return [list(row) for row in self.execute_query(query.order_by(self.table.c.id))]

    def get_curve(self, run, sign, k):
        """The stored points ``(p, lambda)`` of one branch, ordered by ``p``."""
        query = (
            select([self.table.c.p, self.table.c["lambda"]])
            .where(and_(self.table.c.run == run, self.table.c.sign == sign, self.table.c.k == k))
            .order_by(asc(self.table.c.p))
        )
        return [tuple(row) for row in self.execute_query(query)]

    def get_func_row(self, column_name, func, filters, columns_names):
        """Get the row that minimises or maximises a column among those
        matching the filtering criteria.

        Parameters
        ----------
        column_name : str
            The column to order by.
        func : str
            ``"MIN"`` or ``"MAX"``.
        filters : dict
            Filtering criteria as {"column_name":[admissible values]}
        columns_names : list
            Name of each column to retrieve.

        Returns
        -------
        list | None
        """
        sql_func = {"MIN": asc, "MAX": desc}
        query = (
            select([self.table.columns[c] for c in columns_names])
            .where(and_(*[self.table.columns[k].in_(v) for k, v in filters.items()]))
            .order_by(sql_func[func](self.table.c[column_name]))
            .limit(1)
        )
        rows = self.execute_query(query)
        return list(rows[0]) if rows else None
