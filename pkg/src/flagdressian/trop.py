"""Min-plus arithmetic over the rationals with a point at infinity."""
from fractions import Fraction


class _Infinity:
    """The tropical zero. Absorbing for addition of values, neutral for min."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("tropical-infinity")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ValueError("inf - inf is undefined")
        return self

    def __rsub__(self, other):
        raise ValueError("cannot subtract inf from a finite value")


INF = _Infinity()


def is_inf(x):
    return x is INF


def trop_rat(x):
    """Coerce ints, Fractions, 'p/q' strings and 'inf' into a TropRat."""
    if x is INF:
        return INF
    if isinstance(x, str):
        s = x.strip()
        if s.lower() in ("inf", "+inf", "infinity", "∞"):
            return INF
        return Fraction(s)
    if isinstance(x, float):
        # floats only enter through user input; refuse anything not exactly representable
        if x == float("inf"):
            return INF
        raise TypeError("floats are not accepted; use strings like '1/3'")
    if isinstance(x, bool):
        raise TypeError("booleans are not tropical numbers")
    return Fraction(x)


def format_trop(x):
    return "inf" if x is INF else str(Fraction(x))


def tadd(a, b):
    """Tropical sum, i.e. min."""
    return a if a <= b else b


def tmul(a, b):
    """Tropical product, i.e. ordinary addition with inf absorbing."""
    if a is INF or b is INF:
        return INF
    return a + b


def tsum(values):
    out = INF
    for v in values:
        if v < out:
            out = v
    return out


def min_achieved_twice(terms):
    """True iff the minimum is attained at least twice, or every term is inf."""
    terms = list(terms)
    if not terms:
        raise ValueError("min_achieved_twice needs at least one term")
    best = INF
    count = 0
    for t in terms:
        if t is INF:
            continue
        if t < best:
            best, count = t, 1
        elif t == best:
            count += 1
    return best is INF or count >= 2


def argmin_set(terms):
    """Indices attaining the minimum finite value (empty if all inf)."""
    terms = list(terms)
    finite = [t for t in terms if t is not INF]
    if not finite:
        return frozenset()
    m = min(finite)
    return frozenset(i for i, t in enumerate(terms) if t is not INF and t == m)


def support(v):
    """Indices of finite coordinates (0-based)."""
    return frozenset(i for i, x in enumerate(v) if x is not INF)


def projective_normalize(v):
    return ProjPoint(v)


class ProjPoint:
    """A point of tropical projective space, stored with minimum coordinate 0."""

    __slots__ = ("coords",)

    def __init__(self, v):
        v = tuple(trop_rat(x) for x in v)
        finite = [x for x in v if x is not INF]
        if not finite:
            raise ValueError("the all-infinite vector is not a projective point")
        m = min(finite)
        object.__setattr__(self, "coords", tuple(x if x is INF else x - m for x in v))

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if isinstance(other, ProjPoint):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "ProjPoint(%s)" % ", ".join(format_trop(x) for x in self.coords)

    @property
    def support(self):
        return support(self.coords)


def parse_vector(items):
    return tuple(trop_rat(x) for x in items)
