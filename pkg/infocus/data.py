"""Data representation classes."""

import os
import json
import logging

import numpy as np

# logger
logger = logging.getLogger("infocus.data")

# numeric format used in every output file
NUMBER_FORMAT = "%.9e"


def format_number(value):
    """Formats a number for output files"""
    return NUMBER_FORMAT % value


def provenance_lines(header):
    """Comment lines carrying the resolved configuration

    :param header: key-value pairs, in output order
    :type header: List[Tuple[str, str]]
    :rtype: List[str]
    """

    return ["# {0} = {1}".format(key, value) for key, value in header]


def write_csv(path, columns, rows, header=None):
    """Writes a CSV file with provenance comments and a column header

    :param path: output file path
    :param columns: column names
    :param rows: rows as lists of already formatted strings
    :param header: provenance key-value pairs
    :raises OSError: if the file cannot be written
    """

    lines = provenance_lines(header or [])
    lines.append(",".join(columns))
    lines.extend(",".join(row) for row in rows)

    # newline="" keeps line endings identical across platforms
    with open(path, "w", newline="") as handle:
        handle.write("\n".join(lines) + "\n")

    logger.info("Wrote %s", path)


class SweepRecord:
    """Class to represent the outcome of one beam at one sweep point."""

    # CSV column order
    COLUMNS = ("variable", "value", "beam", "rate_bps", "gain_min_db",
               "gain_max_db", "gain_mean_db", "n_tx", "n_active", "placement",
               "dispersion_factor")

    def __init__(self, variable, value, beam, rate_bps, gain_min_db,
                 gain_max_db, gain_mean_db, n_tx, n_active, placement,
                 dispersion_factor):
        """Initialises a record

        :param variable: swept quantity, or "none" for a single design
        :param value: swept value in configuration units
        :param beam: beam name
        :param rate_bps: achievable rate (bit/s)
        :param gain_min_db: smallest in-band gain (dB)
        :param gain_max_db: largest in-band gain (dB)
        :param gain_mean_db: mean in-band gain (dB)
        :param n_tx: antennas in the array
        :param n_active: antennas switched on
        :param placement: receiver placement name
        :param dispersion_factor: dispersion factor of the beam's chirp
        :raises ValueError: if the rate is negative
        """

        self.variable = str(variable)
        self.value = float(value)
        self.beam = str(beam)
        self.rate_bps = float(rate_bps)
        self.gain_min_db = float(gain_min_db)
        self.gain_max_db = float(gain_max_db)
        self.gain_mean_db = float(gain_mean_db)
        self.n_tx = int(n_tx)
        self.n_active = int(n_active)
        self.placement = str(placement)
        self.dispersion_factor = float(dispersion_factor)

        if self.rate_bps < 0:
            raise ValueError("Rate cannot be negative")

    def __repr__(self):
        """String representation of this record"""
        return self.csv_repr()

    def list_repr(self):
        """List representation of this record"""

        return [self.variable, self.value, self.beam, self.rate_bps,
                self.gain_min_db, self.gain_max_db, self.gain_mean_db,
                self.n_tx, self.n_active, self.placement,
                self.dispersion_factor]

    def formatted_row(self):
        """Record fields formatted for CSV output"""

        return [format_number(item) if isinstance(item, float) else str(item)
                for item in self.list_repr()]

    def csv_repr(self):
        """CSV representation of this record"""
        return ",".join(self.formatted_row())

    def dict_repr(self):
        """Dictionary representation of this record"""
        return dict(zip(self.COLUMNS, self.list_repr()))

    def json_repr(self):
        """JSON representation of this record"""
        return json.dumps(self.dict_repr())

    @classmethod
    def instance_from_dict(cls, ddict):
        """Returns a new instance of the record using the specified dict

        :param ddict: dict of data
        """

        return cls(**{key: ddict[key] for key in cls.COLUMNS})

    @classmethod
    def instance_from_json(cls, json_str):
        """Returns a new instance of the record using the specified \
        JSON-encoded string

        :param json_str: JSON-encoded data
        """

        return cls.instance_from_dict(json.loads(json_str))


class SweepStore:
    """Class to store sweep records in sweep order."""

    def __init__(self, variable, beams):
        """Initialises the store

        :param variable: swept quantity
        :param beams: beam names, in output order
        """

        self.variable = str(variable)
        self.beams = list(beams)

        # ordered records and the index of the point each belongs to
        self.records = []
        self.point_indices = []

    @classmethod
    def instance_from_json(cls, json_str):
        """Returns a new instance of the store using the specified JSON \
        encoded data

        :param json_str: JSON-encoded list of records
        """

        data = json.loads(json_str)
        records = [SweepRecord.instance_from_dict(row) for row in data]

        variable = records[0].variable if records else "none"
        beams = []

        for record in records:
            if record.beam not in beams:
                beams.append(record.beam)

        obj = cls(variable, beams)

        # records come back in store order, one point per beam cycle
        for index, start in enumerate(range(0, len(records), len(beams) or 1)):
            obj.insert(index, records[start:start + len(beams)])

        return obj

    def __repr__(self):
        """String representation of this store"""
        return self.csv_repr()

    def __len__(self):
        return len(self.records)

    @property
    def num_points(self):
        return len(set(self.point_indices))

    def csv_repr(self):
        """CSV representation of this store"""
        return "\n".join([record.csv_repr() for record in self.records])

    def list_repr(self):
        """List representation of this store"""
        return [record.list_repr() for record in self.records]

    def json_repr(self):
        """JSON representation of this store"""
        return json.dumps([record.dict_repr() for record in self.records])

    def insert(self, index, records):
        """Inserts the records of one sweep point

        :param index: sweep point index
        :type index: int
        :param records: one record per beam, in beam order
        :type records: List[:class:`SweepRecord`]
        :raises ValueError: if the point is out of order or a beam is missing
        """

        index = int(index)

        if self.point_indices and index <= self.point_indices[-1]:
            raise ValueError("A new sweep point index is lower than or equal "
                             "to an existing index")

        if [record.beam for record in records] != self.beams:
            raise ValueError("Sweep point does not hold one record per beam "
                             "in beam order")

        for record in records:
            self.records.append(record)
            self.point_indices.append(index)

    def get_records(self, beam=None):
        """Records of all points, optionally restricted to one beam"""

        if beam is None:
            return list(self.records)

        return [record for record in self.records if record.beam == beam]

    def rates(self, beam):
        """Rates of one beam across the sweep"""
        return np.array([record.rate_bps for record in self.get_records(beam)])

    def values(self):
        """Swept values, one per point"""

        if not self.beams:
            return np.array([])

        return np.array([record.value
                         for record in self.get_records(self.beams[0])])

    def write(self, path, header=None):
        """Writes the store as CSV

        :param path: output file path
        :param header: provenance key-value pairs
        """

        directory = os.path.dirname(path)

        if directory and not os.path.isdir(directory):
            raise OSError("Output directory {0} does not exist"
                          .format(directory))

        write_csv(path, SweepRecord.COLUMNS,
                  [record.formatted_row() for record in self.records],
                  header=header)
