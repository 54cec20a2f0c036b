"""Isogeny-graph types, their volume vectors and twist rescaling rules,
and the closed-form Faltings decision.

Two independent encodings coexist on purpose:

* ``u_vectors`` + ``volume_vector`` + ``faltings_by_volumes`` re-derive
  the winning vertex as the exact argmax of u~_i^2 u_i^2 v_i;
* ``faltings_by_theorem`` looks the answer up in the literal decision
  rows.

Their agreement over every branch is a test, not an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import RatLike, is_squarefree, unit_residue, vp


class CuspError(ValueError):
    """t hits a cusp / excluded value of the parametrizing hauptmodul."""


class TieError(AssertionError):
    """Argmax tie: contradicts uniqueness of the minimal Faltings height."""


GENUS0 = {
    "L2_2", "L2_3", "L2_5", "L2_7", "L2_13",
    "L3_9", "L3_25", "T4", "T6", "T8", "R4_6", "R4_10", "R6", "S8",
}
GENUS_GE1 = {
    "L2_11", "L2_17", "L2_19", "L2_37", "L2_43", "L2_67", "L2_163",
    "L4", "R4_14", "R4_15", "R4_21",
}
ALL_TYPES = sorted(GENUS0 | GENUS_GE1)


def _chain(labels, p):
    return [(labels[i], labels[i + 1], p) for i in range(len(labels) - 1)]


@dataclass(frozen=True)
class GraphType:
    kind: str
    vertices: tuple
    volumes: tuple  # projective, first entry 1
    edges: tuple    # (label, label, isogeny degree)
    primes: tuple   # isogeny primes

    @property
    def genus_ge_1(self) -> bool:
        return self.kind in GENUS_GE1


def _L2(p):
    return GraphType(f"L2_{p}", ("E_1", f"E_{p}"), (Fraction(1), Fraction(1, p)),
                     ((f"E_1", f"E_{p}", p),), (p,))


_TYPES = {f"L2_{p}": _L2(p) for p in (2, 3, 5, 7, 11, 13, 17, 19, 37, 43, 67, 163)}
_TYPES["L3_9"] = GraphType(
    "L3_9", ("E_1", "E_3", "E_9"), (Fraction(1), Fraction(1, 3), Fraction(1, 9)),
    tuple(_chain(("E_1", "E_3", "E_9"), 3)), (3,))
_TYPES["L3_25"] = GraphType(
    "L3_25", ("E_1", "E_5", "E_25"), (Fraction(1), Fraction(1, 5), Fraction(1, 25)),
    tuple(_chain(("E_1", "E_5", "E_25"), 5)), (5,))
_TYPES["L4"] = GraphType(
    "L4", ("E_1", "E_3", "E_9", "E_27"),
    (Fraction(1), Fraction(1, 3), Fraction(1, 9), Fraction(1, 27)),
    tuple(_chain(("E_1", "E_3", "E_9", "E_27"), 3)), (3,))
for _p, _q in ((2, 3), (2, 5), (2, 7), (3, 5), (3, 7)):
    _TYPES[f"R4_{_p * _q}"] = GraphType(
        f"R4_{_p * _q}",
        ("E_1", f"E_{_p}", f"E_{_q}", f"E_{_p * _q}"),
        (Fraction(1), Fraction(1, _p), Fraction(1, _q), Fraction(1, _p * _q)),
        ((f"E_1", f"E_{_q}", _q), ("E_1", f"E_{_p}", _p),
         (f"E_{_p}", f"E_{_p * _q}", _q), (f"E_{_q}", f"E_{_p * _q}", _p)),
        (_p, _q))
_TYPES["R6"] = GraphType(
    "R6", ("E_1", "E_2", "E_3", "E_6", "E_9", "E_18"),
    (Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 6), Fraction(1, 9), Fraction(1, 18)),
    (("E_1", "E_3", 3), ("E_3", "E_9", 3), ("E_2", "E_6", 3), ("E_6", "E_18", 3),
     ("E_1", "E_2", 2), ("E_3", "E_6", 2), ("E_9", "E_18", 2)), (2, 3))
_TYPES["T4"] = GraphType(
    "T4", ("E_1", "E_2", "E_4", "E_12"),
    (Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
    (("E_1", "E_2", 2), ("E_2", "E_4", 2), ("E_2", "E_12", 2)), (2,))
_TYPES["T6"] = GraphType(
    "T6", ("E_1", "E_2", "E_12", "E_4", "E_8", "E_22"),
    (Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 4), Fraction(1, 8), Fraction(1, 8)),
    (("E_1", "E_2", 2), ("E_12", "E_2", 2), ("E_2", "E_4", 2),
     ("E_4", "E_8", 2), ("E_4", "E_22", 2)), (2,))
_TYPES["T8"] = GraphType(
    "T8", ("E_1", "E_2", "E_21", "E_4", "E_41", "E_8", "E_81", "E_16"),
    (Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 4),
     Fraction(1, 8), Fraction(1, 8), Fraction(1, 16), Fraction(1, 16)),
    (("E_1", "E_2", 2), ("E_21", "E_2", 2), ("E_2", "E_4", 2), ("E_4", "E_41", 2),
     ("E_4", "E_8", 2), ("E_8", "E_81", 2), ("E_8", "E_16", 2)), (2,))
_TYPES["S8"] = GraphType(
    "S8", ("E_1", "E_3", "E_2", "E_6", "E_21", "E_12", "E_4", "E_31"),
    (Fraction(1), Fraction(1, 3), Fraction(1, 2), Fraction(1, 6),
     Fraction(1, 4), Fraction(1, 12), Fraction(1, 4), Fraction(1, 12)),
    (("E_1", "E_3", 3), ("E_1", "E_2", 2), ("E_3", "E_6", 2), ("E_2", "E_6", 3),
     ("E_2", "E_21", 2), ("E_2", "E_4", 2), ("E_6", "E_12", 2), ("E_6", "E_31", 2),
     ("E_21", "E_12", 3), ("E_4", "E_31", 3)), (2, 3))


def graph_type(kind: str) -> GraphType:
    try:
        return _TYPES[kind]
    except KeyError:
        raise ValueError(f"unknown graph type {kind!r}") from None


def graph_structure(kind: str):
    g = graph_type(kind)
    return g.vertices, g.edges


def volume_vector(kind: str) -> tuple:
    return graph_type(kind).volumes


# ---------------------------------------------------------------------------
# t-condition helpers

def _check_t(kind: str, t: Optional[Fraction]) -> Optional[Fraction]:
    if kind in GENUS_GE1:
        return None
    if t is None:
        raise ValueError(f"type {kind} needs a hauptmodul value t")
    t = Fraction(t)
    if t == 0:
        raise CuspError("t = 0 is a cusp")
    if kind == "L2_2" and t == -64:
        raise CuspError("t = -64 is excluded for L2_2 (v_2(t+64) undefined)")
    if kind == "L2_3" and t == -27:
        raise CuspError("t = -27 is excluded for L2_3 (v_3(t+27) undefined)")
    if kind == "L3_9" and (t * t + 9 * t + 27) == 0:
        raise CuspError("t is a cusp of X_0(9)")  # unreachable over Q
    return t


def _ures4(t: Fraction) -> int:
    # residue mod 4 of the odd part of t
    return unit_residue(t, 2, 2)


# Each genus-0 type gets a branch classifier returning an opaque branch
# key; the u-vector and decision tables below are keyed on it.  Branches
# are mutually exclusive and exhaustive by construction.

def _branch_L2_2(t):
    v = vp(t, 2)
    if v >= 8:
        return "v>=8"
    if v == 7 or (v == 6 and vp(t + 64, 2) % 4 in (2, 3)):
        return "high"
    if v == 5 or (v == 6 and vp(t + 64, 2) % 4 in (0, 1)):
        return "low"
    return "v<=4"


def _branch_L2_3(t):
    v = vp(t, 3)
    if v >= 5:
        return "v>=5"
    if v == 4 or (v == 3 and vp(t + 27, 3) % 6 in (3, 4, 5)):
        return "high"
    if v == 2 or (v == 3 and vp(t + 27, 3) % 6 in (0, 1, 2)):
        return "low"
    return "v<=1"


def _valuation_branch(p, cuts):
    # cuts: list of (predicate over v, name)
    def classify_t(t):
        v = vp(t, p)
        for pred, name in cuts:
            if pred(v):
                return name
        raise AssertionError("non-exhaustive t-branches")

    return classify_t


_BRANCH = {
    "L2_2": _branch_L2_2,
    "L2_3": _branch_L2_3,
    "L2_5": _valuation_branch(5, [(lambda v: v >= 3, "v>=3"), (lambda v: v == 2, "v=2"),
                                  (lambda v: v == 1, "v=1"), (lambda v: True, "v<=0")]),
    "L2_7": _valuation_branch(7, [(lambda v: v >= 2, "v>=2"), (lambda v: v == 1, "v=1"),
                                  (lambda v: True, "v<=0")]),
    "L2_13": _valuation_branch(13, [(lambda v: v > 0, "v>0"), (lambda v: True, "v<=0")]),
    "L3_9": _valuation_branch(3, [(lambda v: v >= 3, "v>=3"), (lambda v: v == 2, "v=2"),
                                  (lambda v: v == 1, "v=1"), (lambda v: True, "v<=0")]),
    "L3_25": _valuation_branch(5, [(lambda v: v >= 1, "v>=1"), (lambda v: True, "v<=0")]),
}


def _branch_T4(t):
    v = vp(t, 2)
    if v >= 6:
        return "v>=6"
    if v == 5:
        return "v=5"
    if v == 4:
        return "v=4,1(4)" if _ures4(t) == 1 else "v=4,3(4)"
    if v == 3:
        return "v=3"
    return "v<=2"


def _branch_T6(t):
    v = vp(t, 2)
    if v >= 3:
        return "v>=3"
    if v == 2:
        return "v=2,3(4)" if _ures4(t) == 3 else "v=2,1(4)"
    return "v<=1"


def _branch_T8(t):
    v = vp(t, 2)
    if v >= 2:
        return "v>=2"
    if v == 1:
        return "v=1,3(4)" if _ures4(t) == 3 else "v=1,1(4)"
    return "v<=0"


_BRANCH["T4"] = _branch_T4
_BRANCH["T6"] = _branch_T6
_BRANCH["T8"] = _branch_T8


def _branch2_R4_6(t):
    return "v2>=2" if vp(t, 2) >= 2 else "v2<=1"


def _branch3_R4_6(t):
    v = vp(t, 3)
    return "v3>=2" if v >= 2 else "v3=1" if v == 1 else "v3<=0"


def _branch2_R4_10(t):
    v = vp(t, 2)
    return "v2>1" if v > 1 else "v2=1" if v == 1 else "v2<=0"


def _branch5_R4_10(t):
    if vp(t, 5) == 0 and unit_residue(t, 5, 1) == 4:
        return "t=4(5)"
    return "other"


def _branch2_R6(t):
    return "v2>0" if vp(t, 2) > 0 else "v2<=0"


def _branch3_R6(t):
    return "v3=0" if vp(t, 3) == 0 else "v3!=0"


def _branch2_S8(t):
    if vp(t, 2) != 0:
        return "v2!=0"
    return "v2=0,3(4)" if _ures4(t) == 3 else "v2=0,1(4)"


def _branch3_S8(t):
    return "v3>=1" if vp(t, 3) >= 1 else "v3<=0"


# ---------------------------------------------------------------------------
# u-vector rule tables (per-prime exponent vectors; multi-prime types
# multiply their blocks componentwise)
#
# block: prime -> branch key -> (uE exponents, uEd exponents by d-class)
# d-classes: "all", or a ("div"/"ndiv") split on divisibility of d by p.

_ONES2 = (0, 0)
_ONES3 = (0, 0, 0)
_ONES4 = (0, 0, 0, 0)

_UTABLE = {
    "L2_2": {2: {
        "v>=8": ((0, 1), {"all": _ONES2}),
        "high": ((0, 1), {"ndiv": _ONES2, "div": (1, 0)}),
        "low": (_ONES2, {"ndiv": _ONES2, "div": (0, 1)}),
        "v<=4": (_ONES2, {"all": _ONES2}),
    }},
    "L2_3": {3: {
        "v>=5": ((0, 1), {"all": _ONES2}),
        "high": ((0, 1), {"ndiv": _ONES2, "div": (1, 0)}),
        "low": (_ONES2, {"ndiv": _ONES2, "div": (0, 1)}),
        "v<=1": (_ONES2, {"all": _ONES2}),
    }},
    "L2_5": {5: {
        "v>=3": ((0, 1), {"all": _ONES2}),
        "v=2": ((0, 1), {"ndiv": _ONES2, "div": (1, 0)}),
        "v=1": (_ONES2, {"ndiv": _ONES2, "div": (0, 1)}),
        "v<=0": (_ONES2, {"all": _ONES2}),
    }},
    "L2_7": {7: {
        "v>=2": ((0, 1), {"all": _ONES2}),
        "v=1": (_ONES2, {"ndiv": _ONES2, "div": (0, 1)}),
        "v<=0": (_ONES2, {"all": _ONES2}),
    }},
    "L2_13": {13: {
        "v>0": ((0, 1), {"all": _ONES2}),
        "v<=0": (_ONES2, {"all": _ONES2}),
    }},
    "L3_9": {3: {
        "v>=3": ((0, 1, 2), {"all": _ONES3}),
        "v=2": ((0, 1, 1), {"ndiv": _ONES3, "div": (0, 0, 1)}),
        "v=1": (_ONES3, {"ndiv": _ONES3, "div": (0, 1, 1)}),
        "v<=0": (_ONES3, {"all": _ONES3}),
    }},
    "L3_25": {5: {
        "v>=1": ((0, 1, 2), {"all": _ONES3}),
        "v<=0": (_ONES3, {"all": _ONES3}),
    }},
    "T4": {2: {
        "v>=6": ((0, 1, 2, 0), {"all": _ONES4}),
        "v=5": ((0, 1, 1, 1), {"ndiv": _ONES4, "div": (0, 0, 1, 0)}),
        "v=4,1(4)": ((0, 1, 1, 1), {"ndiv": _ONES4, "div": (0, 0, 0, 1)}),
        "v=4,3(4)": ((0, 1, 1, 2), {"all": _ONES4}),
        "v=3": (_ONES4, {"ndiv": _ONES4, "div": (0, 1, 1, 1)}),
        "v<=2": (_ONES4, {"all": _ONES4}),
    }},
    "T6": {2: {
        "v>=3": ((0, 1, 2, 1, 1, 1), {"all": (0,) * 6}),
        "v=2,3(4)": ((0, 1, 1, 2, 3, 2), {"all": (0,) * 6}),
        "v=2,1(4)": ((0, 1, 1, 2, 2, 3), {"all": (0,) * 6}),
        "v<=1": ((0,) * 6, {"all": (0,) * 6}),
    }},
    "T8": {2: {
        "v>=2": ((0, 1, 2, 1, 1, 1, 1, 1), {"all": (0,) * 8}),
        "v=1,3(4)": ((0, 1, 1, 2, 2, 3, 4, 3), {"all": (0,) * 8}),
        "v=1,1(4)": ((0, 1, 1, 2, 2, 3, 3, 4), {"all": (0,) * 8}),
        "v<=0": ((0, 1, 1, 1, 1, 1, 1, 1), {"all": (0,) * 8}),
    }},
    "R4_6": {
        2: {"v2>=2": ((0, 1, 0, 1), {"all": _ONES4}),
            "v2<=1": (_ONES4, {"all": _ONES4})},
        3: {"v3>=2": ((0, 0, 1, 1), {"all": _ONES4}),
            "v3=1": ((0, 0, 1, 1), {"ndiv": _ONES4, "div": (1, 1, 0, 0)}),
            "v3<=0": (_ONES4, {"all": _ONES4})},
    },
    "R4_10": {
        2: {"v2>1": ((0, 1, 0, 1), {"all": _ONES4}),
            "v2=1": ((0, 1, 0, 1), {"ndiv": _ONES4, "div": (1, 0, 1, 0)}),
            "v2<=0": (_ONES4, {"all": _ONES4})},
        5: {"t=4(5)": ((0, 0, 1, 1), {"all": _ONES4}),
            "other": (_ONES4, {"all": _ONES4})},
    },
    "R6": {
        2: {"v2>0": ((0, 1, 0, 1, 0, 1), {"all": (0,) * 6}),
            "v2<=0": ((0,) * 6, {"all": (0,) * 6})},
        3: {"v3=0": ((0, 0, 1, 1, 2, 2), {"all": (0,) * 6}),
            "v3!=0": ((0,) * 6, {"all": (0,) * 6})},
    },
    "S8": {
        2: {"v2!=0": ((0,) * 8, {"all": (0,) * 8}),
            "v2=0,3(4)": ((0, 0, 1, 1, 1, 2, 2, 1), {"all": (0,) * 8}),
            "v2=0,1(4)": ((0, 0, 1, 1, 2, 1, 1, 2), {"all": (0,) * 8})},
        3: {"v3>=1": ((0, 1, 0, 1, 0, 1, 0, 1), {"all": (0,) * 8}),
            "v3<=0": ((0,) * 8, {"all": (0,) * 8})},
    },
}

# genus >= 1 types: no t, single branch; u(E) = ones except where noted
_UTABLE_GENUS1 = {
    "L2_11": (_ONES2, 11, (0, 1)),
    "L2_17": (_ONES2, 17, (0, 1)),
    "L2_19": (_ONES2, 19, (0, 1)),
    "L2_37": (_ONES2, 37, None),
    "L2_43": (_ONES2, 43, (0, 1)),
    "L2_67": (_ONES2, 67, (0, 1)),
    "L2_163": (_ONES2, 163, (0, 1)),
    "L4": ((0, 1, 1, 1), 3, (0, 0, 1, 1)),
    "R4_14": (_ONES4, 7, (0, 0, 1, 1)),
    "R4_15": (_ONES4, 5, (0, 0, 1, 1)),
    "R4_21": (_ONES4, 3, (0, 1, 0, 1)),
}

_PRIME_BLOCK_BRANCH = {
    ("R4_6", 2): _branch2_R4_6, ("R4_6", 3): _branch3_R4_6,
    ("R4_10", 2): _branch2_R4_10, ("R4_10", 5): _branch5_R4_10,
    ("R6", 2): _branch2_R6, ("R6", 3): _branch3_R6,
    ("S8", 2): _branch2_S8, ("S8", 3): _branch3_S8,
}


@dataclass(frozen=True)
class UVectors:
    uE: tuple
    uEd: tuple


def _check_d(d: int) -> int:
    if d == 0 or not is_squarefree(d):
        raise ValueError(f"d = {d} is not a nonzero square-free integer")
    return d


def u_vectors(kind: str, t: Optional[RatLike], d: int) -> UVectors:
    """Table pair ([u(E)], [u(E^d)]) for the branch selected by (t, d)."""
    g = graph_type(kind)
    d = _check_d(d)
    n = len(g.vertices)
    if g.genus_ge_1:
        uE_exp, p, uEd_exp = _UTABLE_GENUS1[kind]
        uE = tuple(Fraction(p) ** e for e in uE_exp)
        if uEd_exp is not None and d % p == 0:
            uEd = tuple(Fraction(p) ** e for e in uEd_exp)
        else:
            uEd = (Fraction(1),) * n
        return UVectors(uE, uEd)
    t = _check_t(kind, t)
    uE = [Fraction(1)] * n
    uEd = [Fraction(1)] * n
    for p, branches in _UTABLE[kind].items():
        key = _PRIME_BLOCK_BRANCH.get((kind, p), _BRANCH.get(kind))(t)
        uE_exp, by_class = branches[key]
        if "all" in by_class:
            uEd_exp = by_class["all"]
        else:
            uEd_exp = by_class["div" if d % p == 0 else "ndiv"]
        for i in range(n):
            uE[i] *= Fraction(p) ** uE_exp[i]
            uEd[i] *= Fraction(p) ** uEd_exp[i]
    return UVectors(tuple(uE), tuple(uEd))


# ---------------------------------------------------------------------------
# decision rows (the theorem's table)
#
# kind -> branch key -> list of (d-condition, winning vertex); d-condition
# is "all" or ("div"|"ndiv", p).

_DECISION = {
    "L2_2": {"v>=8": [("all", "E_2")],
             "high": [(("ndiv", 2), "E_2"), (("div", 2), "E_1")],
             "low": [(("ndiv", 2), "E_1"), (("div", 2), "E_2")],
             "v<=4": [("all", "E_1")]},
    "L2_3": {"v>=5": [("all", "E_3")],
             "high": [(("ndiv", 3), "E_3"), (("div", 3), "E_1")],
             "low": [(("ndiv", 3), "E_1"), (("div", 3), "E_3")],
             "v<=1": [("all", "E_1")]},
    "L2_5": {"v>=3": [("all", "E_5")],
             "v=2": [(("ndiv", 5), "E_5"), (("div", 5), "E_1")],
             "v=1": [(("ndiv", 5), "E_1"), (("div", 5), "E_5")],
             "v<=0": [("all", "E_1")]},
    "L2_7": {"v>=2": [("all", "E_7")],
             "v=1": [(("ndiv", 7), "E_1"), (("div", 7), "E_7")],
             "v<=0": [("all", "E_1")]},
    "L2_13": {"v>0": [("all", "E_13")], "v<=0": [("all", "E_1")]},
    "L3_9": {"v>=3": [("all", "E_9")],
             "v=2": [(("ndiv", 3), "E_3"), (("div", 3), "E_9")],
             "v=1": [(("ndiv", 3), "E_1"), (("div", 3), "E_3")],
             "v<=0": [("all", "E_1")]},
    "L3_25": {"v>=1": [("all", "E_25")], "v<=0": [("all", "E_1")]},
    "T4": {"v>=6": [("all", "E_4")],
           "v=5": [(("ndiv", 2), "E_2"), (("div", 2), "E_4")],
           "v=4,1(4)": [(("ndiv", 2), "E_2"), (("div", 2), "E_12")],
           "v=4,3(4)": [("all", "E_12")],
           "v=3": [(("ndiv", 2), "E_1"), (("div", 2), "E_2")],
           "v<=2": [("all", "E_1")]},
    "T6": {"v>=3": [("all", "E_12")],
           "v=2,3(4)": [("all", "E_8")],
           "v=2,1(4)": [("all", "E_22")],
           "v<=1": [("all", "E_1")]},
    "T8": {"v>=2": [("all", "E_21")],
           "v=1,3(4)": [("all", "E_81")],
           "v=1,1(4)": [("all", "E_16")],
           "v<=0": [("all", "E_2")]},
}

# multi-prime genus-0 types: keyed on the pair of per-prime branch keys
_DECISION2 = {
    "R4_6": {("v2>=2", "v3>=2"): [("all", "E_6")],
             ("v2>=2", "v3=1"): [(("ndiv", 3), "E_6"), (("div", 3), "E_2")],
             ("v2>=2", "v3<=0"): [("all", "E_2")],
             ("v2<=1", "v3>=2"): [("all", "E_3")],
             ("v2<=1", "v3=1"): [(("ndiv", 3), "E_3"), (("div", 3), "E_1")],
             ("v2<=1", "v3<=0"): [("all", "E_1")]},
    "R4_10": {("v2>1", "other"): [("all", "E_2")],
              ("v2>1", "t=4(5)"): [("all", "E_10")],
              ("v2=1", "other"): [(("ndiv", 2), "E_2"), (("div", 2), "E_1")],
              ("v2=1", "t=4(5)"): [(("ndiv", 2), "E_10"), (("div", 2), "E_5")],
              ("v2<=0", "other"): [("all", "E_1")],
              ("v2<=0", "t=4(5)"): [("all", "E_5")]},
    "R6": {("v2>0", "v3!=0"): [("all", "E_2")],
           ("v2>0", "v3=0"): [("all", "E_18")],
           ("v2<=0", "v3!=0"): [("all", "E_1")],
           ("v2<=0", "v3=0"): [("all", "E_9")]},
    "S8": {("v2!=0", "v3>=1"): [("all", "E_3")],
           ("v2=0,3(4)", "v3>=1"): [("all", "E_12")],
           ("v2=0,1(4)", "v3>=1"): [("all", "E_31")],
           ("v2!=0", "v3<=0"): [("all", "E_1")],
           ("v2=0,3(4)", "v3<=0"): [("all", "E_4")],
           ("v2=0,1(4)", "v3<=0"): [("all", "E_21")]},
}

_DECISION_GENUS1 = {
    "L2_11": [(("ndiv", 11), "E_1"), (("div", 11), "E_11")],
    "L2_17": [(("ndiv", 17), "E_1"), (("div", 17), "E_17")],
    "L2_19": [(("ndiv", 19), "E_1"), (("div", 19), "E_19")],
    "L2_37": [("all", "E_1")],
    "L2_43": [(("ndiv", 43), "E_1"), (("div", 43), "E_43")],
    "L2_67": [(("ndiv", 67), "E_1"), (("div", 67), "E_67")],
    "L2_163": [(("ndiv", 163), "E_1"), (("div", 163), "E_163")],
    "L4": [(("ndiv", 3), "E_3"), (("div", 3), "E_9")],
    "R4_14": [(("ndiv", 7), "E_1"), (("div", 7), "E_7")],
    "R4_15": [(("ndiv", 5), "E_1"), (("div", 5), "E_5")],
    "R4_21": [(("ndiv", 3), "E_1"), (("div", 3), "E_3")],
}


@dataclass(frozen=True)
class FaltingsResult:
    vertex: str
    d_condition: str
    probability: Fraction


def probability_of_branch(p: int, divisible: bool) -> Fraction:
    """Lemma-1 density of square-free d with d = 0 (p), resp. d != 0 (p)."""
    return Fraction(1, 1 + p) if divisible else Fraction(p, 1 + p)


def _d_cond_str(cond) -> str:
    if cond == "all":
        return "all"
    kind, p = cond
    return f"d=0({p})" if kind == "div" else f"d!=0({p})"


def _d_cond_prob(cond) -> Fraction:
    if cond == "all":
        return Fraction(1)
    kind, p = cond
    return probability_of_branch(p, kind == "div")


def _d_cond_match(cond, d: int) -> bool:
    if cond == "all":
        return True
    kind, p = cond
    return (d % p == 0) == (kind == "div")


def _decision_rows(kind: str, t: Optional[Fraction]):
    g = graph_type(kind)
    if g.genus_ge_1:
        return _DECISION_GENUS1[kind]
    t = _check_t(kind, t)
    if kind in _DECISION2:
        keys = tuple(_PRIME_BLOCK_BRANCH[(kind, p)](t) for p in sorted(_UTABLE[kind]))
        return _DECISION2[kind][keys]
    return _DECISION[kind][_BRANCH[kind](t)]


def faltings_by_theorem(kind: str, t: Optional[RatLike], d: int) -> FaltingsResult:
    """The decision-table row matching (type, t, d)."""
    d = _check_d(d)
    t = _check_t(kind, Fraction(t) if t is not None else None)
    for cond, vertex in _decision_rows(kind, t):
        if _d_cond_match(cond, d):
            return FaltingsResult(vertex, _d_cond_str(cond), _d_cond_prob(cond))
    raise AssertionError("decision rows not exhaustive")  # pragma: no cover


def faltings_by_volumes(kind: str, t: Optional[RatLike], d: int) -> str:
    """Re-derivation: argmax vertex of u~_i^2 u_i^2 v_i, exact arithmetic."""
    g = graph_type(kind)
    uv = u_vectors(kind, t, d)
    scores = [ue**2 * ud**2 * v for ue, ud, v in zip(uv.uE, uv.uEd, g.volumes)]
    best = max(scores)
    winners = [lbl for lbl, sc in zip(g.vertices, scores) if sc == best]
    if len(winners) != 1:
        raise TieError(f"{kind}: tie among {winners} (table-data bug)")
    return winners[0]


def prob_table(kind: str, t: Optional[RatLike]) -> list[FaltingsResult]:
    """All d-branches for a fixed (type, t); probabilities sum to 1."""
    rows = _decision_rows(kind, Fraction(t) if t is not None else None)
    out = [FaltingsResult(v, _d_cond_str(c), _d_cond_prob(c)) for c, v in rows]
    assert sum(r.probability for r in out) == 1
    return out
