from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
import pandas as pd

from config import COMMUNITY_NAMES, CONTINENT_TABLE_PATH, LOGGING_LEVEL, TIMEZONE_TABLE_PATH
from community_gsp.src.community.partition import Partition
from community_gsp.src.errors import IngestionError
from community_gsp.src.graph.graph import Graph, GraphSignal
from utils.logger.pylogger import get_logger

logger = get_logger("openflights", LOGGING_LEVEL)

AIRPORT_COLUMNS = ["airport_id", "name", "city", "country", "iata", "icao", "latitude", "longitude", "altitude",
                   "tz_offset", "dst", "tz_olson", "type", "source"]
ROUTE_COLUMNS = ["airline", "airline_id", "src_iata_or_icao", "src_id", "dst_iata_or_icao", "dst_id", "codeshare",
                 "stops", "equipment"]
NULL_SENTINEL = "\\N"


def _text(value):
    if value is None or (isinstance(value, float) and np.isnan(value)):
        return None
    value = str(value).strip()
    return value or None


def _real(value):
    value = _text(value)
    return None if value is None else float(value)


def _integer(value):
    value = _text(value)
    return None if value is None else int(value)


@dataclass(frozen=True)
class AirportRecord:
    airport_id: int
    name: Optional[str]
    city: Optional[str]
    country: Optional[str]
    iata: Optional[str]
    icao: Optional[str]
    latitude: float
    longitude: float
    altitude: Optional[float] = None
    tz_offset: Optional[float] = None
    dst: Optional[str] = None
    tz_olson: Optional[str] = None

    @classmethod
    def from_row(cls, row):
        """Record from one airports.dat row; raises ValueError on an unusable row."""
        airport_id = _integer(row["airport_id"])
        latitude, longitude = _real(row["latitude"]), _real(row["longitude"])
        if airport_id is None or latitude is None or longitude is None:
            raise ValueError("airport id and coordinates are required")
        if not -90 <= latitude <= 90 or not -180 <= longitude <= 180:
            raise ValueError("coordinates out of range")
        return cls(airport_id=airport_id, name=_text(row["name"]), city=_text(row["city"]),
                   country=_text(row["country"]), iata=_text(row["iata"]), icao=_text(row["icao"]),
                   latitude=latitude, longitude=longitude, altitude=_real(row["altitude"]),
                   tz_offset=_real(row["tz_offset"]), dst=_text(row["dst"]), tz_olson=_text(row["tz_olson"]))

    @property
    def label(self):
        return self.iata or self.icao or str(self.airport_id)


@dataclass(frozen=True)
class RouteRecord:
    airline: Optional[str]
    airline_id: Optional[int]
    src_iata_or_icao: Optional[str]
    src_id: Optional[int]
    dst_iata_or_icao: Optional[str]
    dst_id: Optional[int]
    codeshare: Optional[str] = None
    stops: Optional[int] = None
    equipment: Optional[str] = None

    @classmethod
    def from_row(cls, row):
        return cls(airline=_text(row["airline"]), airline_id=_integer(row["airline_id"]),
                   src_iata_or_icao=_text(row["src_iata_or_icao"]), src_id=_integer(row["src_id"]),
                   dst_iata_or_icao=_text(row["dst_iata_or_icao"]), dst_id=_integer(row["dst_id"]),
                   codeshare=_text(row["codeshare"]), stops=_integer(row["stops"]),
                   equipment=_text(row["equipment"]))


@dataclass(frozen=True)
class FlightsGraphOptions:
    restrict_to_largest_component: bool = True
    drop_unmappable_continent: bool = True


@dataclass
class IngestionReport:
    airports_read: int = 0
    airports_skipped: int = 0
    routes_read: int = 0
    routes_skipped: int = 0
    routes_unresolved: int = 0
    routes_self_loops: int = 0
    airports_unmappable: int = 0
    nodes_outside_largest_component: int = 0
    node_count: int = 0
    edge_count: int = 0
    graph_hash: str = ""

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True, eq=False)
class FlightNetwork:
    graph: Graph
    signal: GraphSignal
    partition: Partition
    report: IngestionReport


class ContinentTable(object):
    """Country -> continent lookup with an Olson time zone prefix fallback."""

    def __init__(self, countries, timezone_prefixes):
        self.countries = dict(countries)
        # longest prefix first
        self.timezone_prefixes = sorted(timezone_prefixes, key=lambda item: (-len(item[0]), item[0]))
        unknown = set(self.countries.values()).union(c for _, c in self.timezone_prefixes) - set(COMMUNITY_NAMES)
        if unknown:
            raise IngestionError("continent table names unknown continents {unknown}".format(
                unknown=sorted(unknown)))

    @classmethod
    def load(cls, country_path=CONTINENT_TABLE_PATH, timezone_path=TIMEZONE_TABLE_PATH):
        try:
            countries = pd.read_csv(country_path, comment="#", dtype=str, keep_default_na=False)
            timezones = pd.read_csv(timezone_path, comment="#", dtype=str, keep_default_na=False)
            return cls(countries=zip(countries["country"].str.strip(), countries["continent"].str.strip()),
                       timezone_prefixes=list(zip(timezones["prefix"].str.strip(),
                                                  timezones["continent"].str.strip())))
        except KeyError as e:
            raise IngestionError("continent table misses column {column}".format(column=e))
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise IngestionError("cannot parse continent table: {e}".format(e=e))

    def by_country(self, country):
        return self.countries.get(country)

    def by_timezone(self, tz_olson):
        if not tz_olson:
            return None
        for prefix, continent in self.timezone_prefixes:
            if tz_olson.startswith(prefix):
                return continent
        return None


def continent_of(a, table, strict=False):
    """
    Continent of an airport: its country in the table, else its Olson zone
    prefix. Unmappable airports give None, or an IngestionError when strict.
    """
    continent = table.by_country(a.country) if a.country else None
    if continent is None:
        continent = table.by_timezone(a.tz_olson)
    if continent is None and strict:
        raise IngestionError("no continent for airport {label} (country {country}, time zone {tz})".format(
            label=a.label, country=a.country, tz=a.tz_olson))
    return continent


def _read_table(path, columns):
    """Rows of an OpenFlights .dat file as strings, plus the count of lines pandas could not split."""
    bad_lines = list()

    def skip(fields):
        bad_lines.append(fields)
        return None

    try:
        df = pd.read_csv(path, header=None, names=columns, dtype=str, na_values=[NULL_SENTINEL],
                         keep_default_na=False, engine="python", on_bad_lines=skip, quotechar='"',
                         skipinitialspace=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise IngestionError("cannot parse {path}: {e}".format(path=path, e=e))
    return df, len(bad_lines)


def read_airports(path):
    df, skipped = _read_table(path, AIRPORT_COLUMNS)
    airports = dict()
    for row in df.to_dict(orient="records"):
        try:
            record = AirportRecord.from_row(row)
        except (ValueError, TypeError):
            skipped += 1
            continue
        if record.airport_id in airports:
            skipped += 1
            continue
        airports[record.airport_id] = record
    if skipped:
        logger.warning("skipped {count} unparseable airport rows in {path}".format(count=skipped, path=path))
    return airports, skipped


def read_routes(path):
    df, skipped = _read_table(path, ROUTE_COLUMNS)
    routes = list()
    for row in df.to_dict(orient="records"):
        try:
            routes.append(RouteRecord.from_row(row))
        except (ValueError, TypeError):
            skipped += 1
    if skipped:
        logger.warning("skipped {count} unparseable route rows in {path}".format(count=skipped, path=path))
    return routes, skipped


def _node_labels(airports):
    """IATA, else ICAO, else the numeric id; colliding labels get '#<airport_id>' appended."""
    counts = pd.Series([a.label for a in airports.values()]).value_counts()
    labels = dict()
    for airport_id, airport in airports.items():
        label = airport.label
        labels[airport_id] = label if counts[label] == 1 else "{label}#{airport_id}".format(
            label=label, airport_id=airport_id)
    return labels


def _resolve(airport_id, code, airports, by_code):
    if airport_id is not None and airport_id in airports:
        return airport_id
    if code is not None:
        return by_code.get(code)
    return None


def build_flights_graph(airports_file, routes_file, opts=None, table=None):
    """
    (graph, signal, partition) of the airport network.

    Nodes are airports on at least one resolvable route, labelled by IATA code.
    Any route between two airports gives an edge of weight 1. The signal counts
    route endpoints at each airport, then is demeaned and scaled to unit
    variance. Communities are continents.
    """
    opts = FlightsGraphOptions() if opts is None else opts
    table = ContinentTable.load() if table is None else table
    report = IngestionReport()

    airports, report.airports_skipped = read_airports(airports_file)
    routes, report.routes_skipped = read_routes(routes_file)
    report.airports_read, report.routes_read = len(airports), len(routes)
    by_code = dict()
    for airport_id in sorted(airports):
        for code in (airports[airport_id].iata, airports[airport_id].icao):
            if code is not None:
                by_code.setdefault(code, airport_id)

    continents = dict()
    pairs = list()
    for route in routes:
        src = _resolve(route.src_id, route.src_iata_or_icao, airports, by_code)
        dst = _resolve(route.dst_id, route.dst_iata_or_icao, airports, by_code)
        if src is None or dst is None:
            report.routes_unresolved += 1
            continue
        if src == dst:
            report.routes_self_loops += 1
            continue
        for airport_id in (src, dst):
            if airport_id not in continents:
                continents[airport_id] = continent_of(airports[airport_id], table,
                                                      strict=not opts.drop_unmappable_continent)
        pairs.append((src, dst))
    if report.routes_unresolved:
        logger.warning("dropped {count} routes referencing airports absent from {path}".format(
            count=report.routes_unresolved, path=airports_file))

    unmappable = set(airport_id for airport_id, continent in continents.items() if continent is None)
    report.airports_unmappable = len(unmappable)
    if unmappable:
        logger.warning("dropped {count} airports without a continent, e.g. {label} ({country})".format(
            count=len(unmappable), label=airports[min(unmappable)].label, country=airports[min(unmappable)].country))
    pairs = [(src, dst) for src, dst in pairs if src not in unmappable and dst not in unmappable]
    if not pairs:
        raise IngestionError("no usable routes in {path}".format(path=routes_file))

    labels = _node_labels(airports)
    endpoint_counts = pd.Series([labels[a] for pair in pairs for a in pair]).value_counts()
    node_ids = sorted(endpoint_counts.index)
    # parallel and reverse routes sum into one weight, flattened back to 1
    graph = Graph.from_edges([(labels[src], labels[dst]) for src, dst in pairs], node_ids=node_ids).binarized()
    if opts.restrict_to_largest_component:
        full_size = graph.n
        graph = graph.largest_component()
        report.nodes_outside_largest_component = full_size - graph.n

    counts = endpoint_counts.reindex(list(graph.node_ids)).to_numpy(dtype=float)
    centered = counts - counts.mean()
    std = centered.std()
    if std > 0:
        values = centered / std
    else:
        logger.warning("route counts are identical at every airport; the signal is all zeros")
        values = np.zeros(graph.n)
    signal = GraphSignal(values, graph)

    continent_by_label = {labels[airport_id]: continent for airport_id, continent in continents.items()}
    partition = Partition.from_assignments(graph, continent_by_label, order=COMMUNITY_NAMES)

    report.node_count, report.edge_count, report.graph_hash = graph.n, graph.edge_count, graph.hash
    logger.info("flights graph: {n} airports, {m} edges, {c} continents".format(
        n=graph.n, m=graph.edge_count, c=partition.community_count))
    return FlightNetwork(graph=graph, signal=signal, partition=partition, report=report)
