"""
File formats read and written by cutpath.

  - ``ugraph v1``: header ``ugraph v1 <n> <m>``, then ``m`` lines ``u v c``
    and optional ``#layer u k`` lines. Conductances are written as the
    shortest decimal that reads back to the same float.

  - sidecar metadata: ``key=value`` lines next to a generated graph.

  - trace binary: the vertex sequence as 32-bit little-endian unsigned ints.

  - CSV: ``# key=value`` config-echo lines, then a header row and the data,
    floats at 12 significant digits.

  - experiment config: ``key=value`` lines under ``[section]`` headers.

  - run summary: a YAML mapping.
"""
from __future__ import annotations

import configparser
from pathlib import Path
from typing import Mapping, Union

import numpy as np
import yaml
from pandas import DataFrame, read_csv as pandas_read_csv

from .common.exceptions import OutputError, ParsingError
from .common.log import CUTPATH_LOGGER
from .data.network import Network

LOGGER = CUTPATH_LOGGER.getChild("parsers")

PathLike = Union[str, Path]

HEADER = "ugraph v1"
LAYER_TAG = "#layer"
TRACE_DTYPE = np.dtype("<u4")
FLOAT_FORMAT = "%.12g"


def _open_for_writing(path: PathLike):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        return path.open("w", encoding="utf-8", newline="")
    except OSError as err:
        raise OutputError(f"cannot write '{path}': {err}") from err


def write_network(net: Network, path: PathLike) -> None:
    """
    Write a network in the ugraph v1 format.

    :param net: the network
    :param path: destination file
    """
    with _open_for_writing(path) as handle:
        handle.write(f"{HEADER} {net.n_vertices} {net.n_edges}\n")
        for u, v, c in net.edges():
            handle.write(f"{u} {v} {c!r}\n")
        if net.layers is not None:
            for vertex, layer in enumerate(net.layers.tolist()):
                handle.write(f"{LAYER_TAG} {vertex} {layer}\n")

    LOGGER.debug(f"wrote {net} to '{path}'")


def read_network(path: PathLike) -> Network:
    """
    Read a network in the ugraph v1 format.

    :param path: source file
    :returns: the validated network
    :raises ParsingError: if the header, an edge line or a label line is malformed,
        or the edge count does not match the header
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as err:
        raise ParsingError(f"cannot read '{path}': {err}") from err

    if not lines:
        raise ParsingError(f"'{path}' is empty")

    fields = lines[0].split()
    if len(fields) != 4 or " ".join(fields[:2]) != HEADER:
        raise ParsingError(f"'{path}': expected header '{HEADER} <n> <m>', got '{lines[0]}'")

    try:
        n, m = int(fields[2]), int(fields[3])
    except ValueError as err:
        raise ParsingError(f"'{path}': bad vertex or edge count in header") from err

    tails, heads, conductances = [], [], []
    layers: dict[int, int] = {}

    for number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        try:
            if parts[0] == LAYER_TAG:
                layers[int(parts[1])] = int(parts[2])
            else:
                u, v, c = parts
                tails.append(int(u))
                heads.append(int(v))
                conductances.append(float(c))
        except (ValueError, IndexError) as err:
            raise ParsingError(f"'{path}', line {number}: cannot parse '{line}'") from err

    if len(tails) != m:
        raise ParsingError(f"'{path}': header announces {m} edges, found {len(tails)}")

    labels = None
    if layers:
        if sorted(layers) != list(range(n)):
            raise ParsingError(f"'{path}': layer labels must cover every vertex exactly once")
        labels = {"layer": [layers[vertex] for vertex in range(n)]}

    return Network(n, tails, heads, conductances, labels=labels)


def write_metadata(path: PathLike, metadata: Mapping[str, object]) -> None:
    """
    Write ``key=value`` lines in the given order.

    :param path: destination file
    :param metadata: the values to echo
    """
    with _open_for_writing(path) as handle:
        for key, value in metadata.items():
            handle.write(f"{key}={value}\n")


def read_metadata(path: PathLike) -> dict[str, str]:
    """
    Read ``key=value`` lines.

    :param path: source file
    :returns: the values, as strings
    """
    metadata = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParsingError(f"'{path}': expected key=value, got '{line}'")
        metadata[key.strip()] = value.strip()
    return metadata


def write_trace_binary(path: PathLike, vertices: np.ndarray) -> None:
    """
    Write a vertex sequence as 32-bit little-endian unsigned integers.

    :param path: destination file
    :param vertices: the vertex ids
    """
    vertices = np.asarray(vertices)
    if len(vertices) and (vertices.min() < 0 or vertices.max() > np.iinfo(TRACE_DTYPE).max):
        raise OutputError("vertex ids do not fit in 32-bit unsigned integers")
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        vertices.astype(TRACE_DTYPE).tofile(str(path))
    except OSError as err:
        raise OutputError(f"cannot write '{path}': {err}") from err


def read_trace_binary(path: PathLike) -> np.ndarray:
    """
    Read a vertex sequence written by `write_trace_binary`.

    :param path: source file
    :returns: the vertex ids as ``int64``
    """
    return np.fromfile(str(path), dtype=TRACE_DTYPE).astype(np.int64)


def _flatten(config: Mapping, prefix: str = "") -> dict[str, object]:
    flat = {}
    for key, value in config.items():
        name = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            flat[name] = ",".join(str(item) for item in value)
        else:
            flat[name] = value
    return flat


def write_csv(frame: DataFrame, path: PathLike, config: Mapping | None = None) -> None:
    """
    Write a table with a ``# key=value`` config-echo header.

    :param frame: the table; the column order is kept
    :param path: destination file
    :param config: nested mapping echoed line by line, keys joined with dots
    """
    with _open_for_writing(path) as handle:
        for key, value in _flatten(config or {}).items():
            handle.write(f"# {key}={value}\n")
        frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")

    LOGGER.debug(f"wrote {len(frame)} rows to '{path}'")


def read_csv(path: PathLike) -> tuple[DataFrame, dict[str, str]]:
    """
    Read a table written by `write_csv`.

    :param path: source file
    :returns: the table and the echoed config (flat, values as strings)
    """
    config = {}
    with Path(path).open(encoding="utf-8") as handle:
        for line in handle:
            if not line.startswith("# "):
                break
            key, _, value = line[2:].rstrip("\n").partition("=")
            config[key] = value
    return pandas_read_csv(path, comment="#"), config


def read_config(path: PathLike) -> dict[str, dict[str, str]]:
    """
    Read an experiment config file.

    :param path: source file
    :returns: one dictionary of raw string values per section
    :raises ParsingError: if the file is missing, has keys outside a section,
        or repeats a section or key
    """
    parser = configparser.ConfigParser(interpolation=None, delimiters=("=",), comment_prefixes=("#", ";"))
    parser.optionxform = str  # keep key case (M is not m)

    try:
        with Path(path).open(encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as err:
        raise ParsingError(f"cannot read config '{path}': {err}") from err
    except configparser.Error as err:
        raise ParsingError(f"malformed config '{path}': {err}") from err

    return {section: dict(parser.items(section)) for section in parser.sections()}


def write_summary(path: PathLike, summary: Mapping) -> None:
    """
    Write the human-readable run summary as YAML.

    :param path: destination file
    :param summary: plain data (no numpy scalars)
    """
    with _open_for_writing(path) as handle:
        handle.write(yaml.safe_dump(dict(summary), sort_keys=False, default_flow_style=False))
