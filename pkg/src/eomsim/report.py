"""CSV serialization of sweep results.

Layout: a block of ``#``-prefixed lines holding the resolved sweep spec as JSON,
one header row of ``name [unit]`` cells, then one row per grid point.
"""

import csv
import json
import math

from .sweeps import SweepSpec, unit_of

UNSTABLE = "unstable"
METADATA_PREFIX = "# "


def format_value(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float) or hasattr(v, "dtype"):
        return format(float(v), ".17g")
    return str(v)


def parse_value(text):
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    if text == UNSTABLE:
        return UNSTABLE
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def write_csv(result, path):
    """Write ``result`` to ``path``; unstable points carry ``unstable`` in every observable cell."""
    meta = json.dumps(result.spec.to_dict(), sort_keys=True, indent=1).splitlines()
    observables = set(result.spec.columns)
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            for line in meta:
                fh.write(METADATA_PREFIX + line + "\n")
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([f"{c} [{unit_of(c)}]" for c in result.columns])
            for row in result.rows():
                cells = []
                for c in result.columns:
                    if c in observables and not row["stable"]:
                        cells.append(UNSTABLE)
                    else:
                        cells.append(format_value(row[c]))
                w.writerow(cells)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return path


def read_csv(path):
    """Read back ``(spec, rows)``; header units are stripped from the column names."""
    meta, body = [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                meta.append(line[len(METADATA_PREFIX):] if line.startswith(METADATA_PREFIX) else line[1:])
            else:
                body.append(line)
    spec = SweepSpec.from_dict(json.loads("".join(meta)))
    reader = csv.reader(body)
    header = [h.rsplit(" [", 1)[0] for h in next(reader)]
    rows = [dict(zip(header, map(parse_value, r))) for r in reader]
    return spec, rows


def nan_to_none(v):
    return None if isinstance(v, float) and math.isnan(v) else v
