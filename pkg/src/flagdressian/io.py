"""JSON interchange. Ground sets are 1-based on disk and 0-based in memory."""
import json
from fractions import Fraction

from .matroid import Matroid
from .trop import INF, format_trop, trop_rat
from .valuated import PlueckerVector


class InputError(ValueError):
    """Malformed input; the message names the offending location."""


def load_json(path_or_text):
    text = path_or_text
    where = "<inline>"
    if not path_or_text.lstrip().startswith(("{", "[")):
        where = path_or_text
        try:
            with open(path_or_text) as fh:
                text = fh.read()
        except OSError as e:
            raise InputError("%s: cannot read file (%s)" % (where, e.strerror))
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("%s: line %d column %d: %s" % (where, e.lineno, e.colno, e.msg))


def _int(doc, key, where):
    if key not in doc:
        raise InputError("%s: missing key %r" % (where, key))
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise InputError("%s.%s: expected a nonnegative integer" % (where, key))
    return v


def _subset(items, n, where):
    if isinstance(items, str):
        items = [s for s in items.replace(" ", "").split(",") if s]
    try:
        out = tuple(sorted(int(i) - 1 for i in items))
    except (TypeError, ValueError):
        raise InputError("%s: %r is not a list of element indices" % (where, items))
    if any(not 0 <= i < n for i in out):
        raise InputError("%s: index out of range 1..%d" % (where, n))
    if len(set(out)) != len(out):
        raise InputError("%s: repeated element" % where)
    return out


def _rat(v, where):
    try:
        return trop_rat(v)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError("%s: %r is not a rational or 'inf'" % (where, v))


def matroid_from_json(doc, where="matroid"):
    if not isinstance(doc, dict):
        raise InputError("%s: expected an object" % where)
    n, r = _int(doc, "n", where), _int(doc, "r", where)
    if "bases" not in doc or not isinstance(doc["bases"], list):
        raise InputError("%s: missing list 'bases'" % where)
    bases = [_subset(b, n, "%s.bases[%d]" % (where, k)) for k, b in enumerate(doc["bases"])]
    return n, r, bases


def matroid_to_json(M):
    return {"n": M.n, "r": M.r, "bases": [[i + 1 for i in B] for B in sorted(M.bases)]}


def pluecker_from_json(doc, where="valuated"):
    if not isinstance(doc, dict):
        raise InputError("%s: expected an object" % where)
    n, r = _int(doc, "n", where), _int(doc, "r", where)
    vals = doc.get("values")
    if not isinstance(vals, dict):
        raise InputError("%s: missing object 'values'" % where)
    out = {}
    for k, v in vals.items():
        loc = "%s.values[%r]" % (where, k)
        B = _subset(k, n, loc)
        if len(B) != r:
            raise InputError("%s: subset has %d elements, rank is %d" % (loc, len(B), r))
        out[B] = _rat(v, loc)
    if all(v is INF for v in out.values()):
        raise InputError("%s: every coordinate is infinite" % where)
    return PlueckerVector(n, r, out)


def pluecker_to_json(mu):
    return {
        "n": mu.n,
        "r": mu.r,
        "values": {",".join(str(i + 1) for i in B): format_trop(v) for B, v in sorted(mu.values.items())},
    }


def flag_from_json(doc, where="flag"):
    if isinstance(doc, dict) and "constituents" in doc:
        items = doc["constituents"]
    elif isinstance(doc, list):
        items = doc
    else:
        raise InputError("%s: expected {'constituents': [...]}" % where)
    if not isinstance(items, list) or not items:
        raise InputError("%s.constituents: expected a nonempty list" % where)
    return [pluecker_from_json(d, "%s.constituents[%d]" % (where, k)) for k, d in enumerate(items)]


def flag_to_json(flag):
    return {"constituents": [pluecker_to_json(mu) for mu in flag]}


def point_from_json(doc, n=None, where="point"):
    if isinstance(doc, dict):
        doc = doc.get("point")
    if isinstance(doc, str):
        doc = [s for s in doc.split(",")]
    if not isinstance(doc, list):
        raise InputError("%s: expected a list of coordinates" % where)
    pt = tuple(_rat(v, "%s[%d]" % (where, k)) for k, v in enumerate(doc))
    if n is not None and len(pt) != n:
        raise InputError("%s: %d coordinates, expected %d" % (where, len(pt), n))
    if all(v is INF for v in pt):
        raise InputError("%s: every coordinate is infinite" % where)
    return pt


def config_from_json(doc, where="configuration"):
    from .subdivision import WeightedConfig

    if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
        raise InputError("%s: expected {'points': [...]}" % where)
    labels, pts, wts = [], {}, {}
    for k, item in enumerate(doc["points"]):
        loc = "%s.points[%d]" % (where, k)
        if not isinstance(item, dict) or "coords" not in item:
            raise InputError("%s: expected an object with 'coords'" % loc)
        lab = item.get("label", k)
        lab = tuple(lab) if isinstance(lab, list) else lab
        if lab in pts:
            raise InputError("%s: duplicate label %r" % (loc, lab))
        try:
            coords = tuple(int(x) for x in item["coords"])
        except (TypeError, ValueError):
            raise InputError("%s.coords: expected integers" % loc)
        w = _rat(item.get("weight", "0"), loc + ".weight")
        if w is INF:
            raise InputError("%s.weight: must be finite" % loc)
        labels.append(lab)
        pts[lab] = coords
        wts[lab] = w
    try:
        return WeightedConfig(labels, pts, wts)
    except ValueError as e:
        raise InputError("%s: %s" % (where, e))


def jsonable(x):
    if x is INF:
        return "inf"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (frozenset, set)):
        return sorted((jsonable(v) for v in x), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    return x


def dumps(doc):
    return json.dumps(jsonable(doc), sort_keys=True, indent=2)


def matroid_from_doc(doc, where="matroid"):
    n, r, bases = matroid_from_json(doc, where)
    return Matroid(n, r, bases)
