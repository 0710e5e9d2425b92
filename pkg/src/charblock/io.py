"""JSON formats for character tables, Brauer tables and decomposition output.

Class indices inside files (power maps, block members) are 0-based.
"""

import json
from pathlib import Path

from ._nt import lcm
from .blocks import BrauerTable
from .chartab import CharacterTable
from .cyclo import CycloSyntaxError, format_cyclo, parse_cyclo

__all__ = [
    "TableFileError", "table_to_dict", "table_from_dict", "brauer_to_dict", "brauer_from_dict",
    "dumps", "parse_table_text", "parse_table_file", "write_table_file", "decomposition_to_dict",
]


class TableFileError(ValueError):
    def __init__(self, msg, line=None, col=None):
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(msg + where)
        self.line = line
        self.col = col


def _locate(text, needle):
    if text is None:
        return None, None
    pos = text.find(json.dumps(needle))
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _value(v, text):
    if isinstance(v, bool):
        raise TableFileError(f"invalid value {v!r}")
    if isinstance(v, int):
        return parse_cyclo(str(v))
    if not isinstance(v, str):
        raise TableFileError(f"invalid value {v!r}", *_locate(text, v))
    try:
        return parse_cyclo(v)
    except CycloSyntaxError as exc:
        line, col = _locate(text, v)
        if line is not None:
            col += exc.pos + 1
        raise TableFileError(f"bad cyclotomic value {v!r}: {exc}", line, col) from None


def _require(d, keys, what):
    if not isinstance(d, dict):
        raise TableFileError(f"{what} must be an object")
    missing = [k for k in keys if k not in d]
    if missing:
        raise TableFileError(f"{what} lacks field(s) {', '.join(missing)}")


# -- ordinary tables ------------------------------------------------------------


def table_to_dict(T):
    classes = []
    for k in range(T.nclasses):
        entry = {"name": T.class_names[k], "size": T.class_sizes[k],
                 "centralizer": T.centralizers[k], "order": T.rep_orders[k]}
        pm = {str(p): m[k] for p, m in sorted(T.power_maps.items())}
        if pm:
            entry["powermaps"] = pm
        classes.append(entry)
    return {
        "name": T.name,
        "order": T.order,
        "exponent": T.exponent,
        "classes": classes,
        "irr": [[format_cyclo(v) for v in row] for row in T.irr],
    }


def table_from_dict(d, text=None):
    _require(d, ["name", "order", "classes", "irr"], "character table")
    classes = d["classes"]
    if not isinstance(classes, list) or not classes:
        raise TableFileError("classes must be a nonempty list")
    for c in classes:
        _require(c, ["name", "size", "centralizer", "order"], "class entry")
    order = d["order"]
    n = len(classes)
    names = [c["name"] for c in classes]
    if len(set(names)) != n:
        raise TableFileError("duplicate class names")
    for c in classes:
        if c["size"] * c["centralizer"] != order:
            raise TableFileError(f"class {c['name']}: size * centralizer != order")
    if sum(c["size"] for c in classes) != order:
        raise TableFileError("class sizes do not sum to the group order")
    orders = [c["order"] for c in classes]
    if "exponent" in d and d["exponent"] != lcm(1, *orders):
        raise TableFileError(f"exponent {d['exponent']} differs from lcm of element orders")
    pms = {}
    for k, c in enumerate(classes):
        for p, idx in (c.get("powermaps") or {}).items():
            if not isinstance(idx, int) or not 0 <= idx < n:
                raise TableFileError(f"class {c['name']}: power map index {idx!r} out of range")
            pms.setdefault(int(p), [None] * n)[k] = idx
    for p, m in pms.items():
        if None in m:
            raise TableFileError(f"power map {p} is incomplete")
    rows = d["irr"]
    if not isinstance(rows, list):
        raise TableFileError("irr must be a list of rows")
    irr = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise TableFileError(f"row {i + 1} has {len(row) if isinstance(row, list) else '?'} "
                                 f"values for {n} classes")
        irr.append([_value(v, text) for v in row])
    if len(irr) != n:
        raise TableFileError(f"{len(irr)} rows for {n} classes")
    return CharacterTable(
        name=d["name"], order=order, class_names=names,
        class_sizes=[c["size"] for c in classes],
        centralizers=[c["centralizer"] for c in classes],
        rep_orders=orders, irr=irr, power_maps=pms,
    )


# -- Brauer tables -----------------------------------------------------------------


def brauer_to_dict(BT):
    return {
        "name": BT.name,
        "prime": BT.prime,
        "star": dict(BT.star),
        "classes": list(BT.class_names),
        "ibr": [[format_cyclo(v) for v in row] for row in BT.irr],
    }


def brauer_from_dict(d, text=None):
    _require(d, ["name", "prime", "classes", "ibr"], "Brauer table")
    n = len(d["classes"])
    irr = []
    for i, row in enumerate(d["ibr"]):
        if not isinstance(row, list) or len(row) != n:
            raise TableFileError(f"Brauer row {i + 1} does not match the {n} classes")
        irr.append([_value(v, text) for v in row])
    if len(irr) != n:
        raise TableFileError(f"{len(irr)} Brauer rows for {n} classes")
    star = d.get("star") or {}
    if star and not {"conductor", "factor"} <= set(star):
        raise TableFileError("star descriptor needs conductor and factor")
    return BrauerTable(d["name"], d["prime"], list(d["classes"]), irr, star)


# -- text and files ----------------------------------------------------------------


def dumps(obj):
    if isinstance(obj, CharacterTable):
        obj = table_to_dict(obj)
    elif isinstance(obj, BrauerTable):
        obj = brauer_to_dict(obj)
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def parse_table_text(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFileError(f"JSON syntax error: {exc.msg}", exc.lineno, exc.colno) from None
    if isinstance(d, dict) and "ibr" in d:
        return brauer_from_dict(d, text)
    return table_from_dict(d, text)


def parse_table_file(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise TableFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_table_text(text)


def write_table_file(path, obj):
    Path(path).write_text(dumps(obj), encoding="utf-8")


def decomposition_to_dict(partition, data):
    blocks = []
    for b in partition:
        D = [[data.D[i][j] for j in b.ibr] for i in b.irr]
        C = [[sum(data.D[i][a] * data.D[i][c] for i in b.irr) for c in b.ibr] for a in b.ibr]
        blocks.append({
            "irr": list(b.irr),
            "ibr": list(b.ibr),
            "defect": b.defect,
            "heights": [b.heights[i] for i in b.irr],
            "D": D,
            "C": C,
        })
    return {"blocks": blocks}
