"""Registry of the 24 Morita-equivalence families of non-local tame 2-blocks:
quiver, parameterized relation ideal, admissible defect-exponent range,
decomposition matrix, candidate-module recipes, and 3-tube rules.

ASCII family names (D2A, SD2B_4, Q3A_2, ...) are canonical; the classical
notation (``D(2A)``, ``SD(2B)₄(c)``, ``SD(3C)₂,₂``) is accepted as an alias.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConventionError, UsageError
from .gf import GF
from .quiver import Quiver, RelationIdeal, complete

# ---------------------------------------------------------------------------
# quivers
# ---------------------------------------------------------------------------

QUIVERS = {
    "2A": Quiver("2A", ("0", "1"),
                 (("alpha", 0, 0), ("beta", 0, 1), ("gamma", 1, 0))),
    "2B": Quiver("2B", ("0", "1"),
                 (("alpha", 0, 0), ("beta", 0, 1), ("gamma", 1, 0), ("eta", 1, 1))),
    "3A": Quiver("3A", ("0", "1", "2"),
                 (("beta", 1, 0), ("gamma", 0, 1), ("delta", 0, 2), ("eta", 2, 0))),
    "3B": Quiver("3B", ("0", "1", "2"),
                 (("alpha", 1, 1), ("beta", 1, 0), ("gamma", 0, 1),
                  ("delta", 0, 2), ("eta", 2, 0))),
    "3C": Quiver("3C", ("0", "1", "2"),
                 (("beta", 1, 0), ("gamma", 0, 1), ("rho", 0, 0),
                  ("delta", 0, 2), ("eta", 2, 0))),
    "3D": Quiver("3D", ("0", "1", "2"),
                 (("alpha", 1, 1), ("beta", 1, 0), ("gamma", 0, 1),
                  ("delta", 0, 2), ("eta", 2, 0), ("xi", 2, 2))),
    "3H": Quiver("3H", ("0", "1", "2"),
                 (("beta", 0, 1), ("gamma", 1, 0), ("delta", 1, 2),
                  ("eta", 2, 1), ("lam", 2, 0))),
    "3K": Quiver("3K", ("0", "1", "2"),
                 (("beta", 0, 1), ("gamma", 1, 0), ("delta", 1, 2),
                  ("eta", 2, 1), ("kappa", 0, 2), ("lam", 2, 0))),
}

# quiver/defect-type combinations with no blocks at all
NONEXISTENT = {
    ("D", "2A"): False, ("D", "3C"): True, ("D", "3D"): True, ("D", "3F"): True,
    ("D", "3H"): True, ("D", "3L"): True, ("D", "3Q"): True, ("D", "3R"): True,
    ("SD", "3F"): True, ("SD", "3K"): True, ("SD", "3L"): True, ("SD", "3Q"): True,
    ("SD", "3R"): True,
    ("Q", "3C"): True, ("Q", "3D"): True, ("Q", "3F"): True, ("Q", "3H"): True,
    ("Q", "3L"): True, ("Q", "3Q"): True, ("Q", "3R"): True,
}
MISSING_QUIVERS = ("3F", "3L", "3Q", "3R")


# ---------------------------------------------------------------------------
# decomposition-matrix figures: height-0 rows, the repeated height-1 row,
# extra rows of height n-2
# ---------------------------------------------------------------------------

FIGURES = {
    "fig_D2A":   ([[1, 0], [1, 0], [1, 1], [1, 1]], [2, 1], []),
    "fig_SD2A1": ([[1, 0], [1, 0], [1, 1], [1, 1]], [2, 1], [[0, 1]]),
    "fig_D2B":   ([[1, 0], [1, 0], [1, 1], [1, 1]], [0, 1], []),
    "fig_SD2B2": ([[1, 0], [1, 0], [1, 1], [1, 1]], [0, 1], [[2, 1]]),
    "fig_SD2B4": ([[1, 0], [1, 0], [0, 1], [0, 1]], [1, 1], []),
    "fig_D3A":   ([[1, 0, 0], [1, 1, 1], [1, 0, 1], [1, 1, 0]], [2, 1, 1], []),
    "fig_SD3A":  ([[1, 0, 0], [1, 1, 1], [1, 0, 1], [1, 1, 0]], [2, 1, 1], [[0, 0, 1]]),
    "fig_Q3A":   ([[1, 0, 0], [1, 1, 1], [1, 0, 1], [1, 1, 0]], [2, 1, 1],
                  [[0, 1, 0], [0, 0, 1]]),
    "fig_D3B":   ([[1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 1, 1]], [0, 1, 0], []),
    "fig_SD3B1": ([[1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 1, 1]], [0, 1, 0], [[0, 0, 1]]),
    "fig_SD3B2": ([[1, 0, 0], [1, 1, 0], [1, 1, 1], [1, 0, 1]], [0, 1, 0], [[2, 1, 1]]),
    "fig_Q3B":   ([[1, 0, 0], [1, 1, 0], [1, 1, 1], [1, 0, 1]], [0, 1, 0],
                  [[0, 0, 1], [2, 1, 1]]),
    "fig_SD3C1": ([[0, 1, 0], [1, 1, 0], [1, 0, 1], [0, 0, 1]], [1, 0, 0], [[1, 1, 1]]),
    "fig_SD3C2": ([[0, 1, 0], [1, 0, 1], [1, 1, 0], [0, 0, 1]], [1, 1, 1], [[1, 0, 0]]),
    "fig_SD3H1": ([[1, 0, 0], [1, 1, 1], [0, 1, 0], [0, 0, 1]], [0, 1, 1], [[1, 1, 0]]),
    "fig_SD3H2": ([[1, 0, 0], [0, 1, 0], [1, 1, 1], [0, 0, 1]], [1, 1, 0], [[0, 1, 1]]),
    "fig_D3K":   ([[1, 0, 0], [1, 1, 1], [0, 1, 0], [0, 0, 1]], [0, 1, 1], []),
    "fig_Q3K":   ([[1, 0, 0], [1, 1, 1], [0, 1, 0], [0, 0, 1]], [0, 1, 1],
                  [[1, 0, 1], [1, 1, 0]]),
}


# ---------------------------------------------------------------------------
# recipes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Recipe:
    """Composition data of one candidate module: radical layers, top first."""

    layers: tuple  # tuple of tuples of vertex indices

    @classmethod
    def simple(cls, v):
        return cls(((v,),))

    @classmethod
    def uniserial(cls, *factors):
        return cls(tuple((v,) for v in factors))

    @property
    def label(self):
        if len(self.layers) == 1 and len(self.layers[0]) == 1:
            return f"T{self.layers[0][0]}"
        if all(len(l) == 1 for l in self.layers):
            return "U" + "".join(str(l[0]) for l in self.layers)
        return "L" + "_".join("".join(str(v) for v in l) for l in self.layers)

    @property
    def top(self):
        return self.layers[0]

    @property
    def bottom(self):
        return self.layers[-1]

    @property
    def length(self):
        return sum(len(l) for l in self.layers)

    def vertex_multiset(self, n_vertices):
        out = [0] * n_vertices
        for l in self.layers:
            for v in l:
                out[v] += 1
        return tuple(out)


def _U(*factors):
    return Recipe.uniserial(*factors)


def _L(*layers):
    return Recipe(tuple(tuple(l) for l in layers))


# ---------------------------------------------------------------------------
# family table
# ---------------------------------------------------------------------------

@dataclass
class BlockFamily:
    name: str                 # ASCII canonical name
    paper_name: str           # classical notation
    quiver_id: str
    defect_type: str          # D / SD / Q
    n_min: int
    figure: str
    param_slots: tuple        # subset of ("c", "a", "p")
    relations: object         # callable (atoms, n, params, field) -> list[NCPoly]
    recipes_b: tuple          # Recipe list for the generic case
    recipes_q8: tuple         # Recipe list when quaternion of order 8 (n = 3)
    tube: object              # callable Recipe -> bool
    ubar_kind: str            # "stack" | "lacy" | "omega"
    realizable_as_block: bool = True

    def mo_recipes(self, n):
        if self.defect_type == "Q" and n == 3:
            return list(self.recipes_q8)
        return list(self.recipes_b)

    def tube_rule(self, recipe, n=None):
        if self.defect_type == "D":
            return True
        if self.defect_type == "Q":
            return False
        return self.tube(recipe)


def _tube_all(_r):
    return True


def _tube_none(_r):
    return False


def _tube_top_or_socle(v):
    return lambda r: r.top == (v,) or r.bottom == (v,)


def _tube_top(v):
    return lambda r: r.top == (v,)


# relation builders -- k is 2^(n-2); w is the arrow-atom dict of the family's
# quiver over the working field; params carries field codes for c, a, p

def _rel_D2A(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga = w["alpha"], w["beta"], w["gamma"]
    return [be * ga, al ** 2, (ga * be * al) ** k + (al * ga * be) ** k]


def _rel_SD2A1(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga = w["alpha"], w["beta"], w["gamma"]
    return [al ** 2 + p["c"] * (ga * be * al) ** k,
            be * ga * be + be * al * (ga * be * al) ** (k - 1),
            ga * be * ga + al * ga * (be * al * ga) ** (k - 1),
            al * (ga * be * al) ** k]


def _rel_SD2A2(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga = w["alpha"], w["beta"], w["gamma"]
    return [be * ga,
            al ** 2 + ga * be * (al * ga * be) ** (k - 1) + p["c"] * (ga * be * al) ** k,
            (ga * be * al) ** k + (al * ga * be) ** k]


def _rel_Q2A(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga = w["alpha"], w["beta"], w["gamma"]
    return [al ** 2 + ga * be * (al * ga * be) ** (k - 1) + p["c"] * (al * ga * be) ** k,
            be * ga * be + be * al * (ga * be * al) ** (k - 1),
            ga * be * ga + al * ga * (be * al * ga) ** (k - 1),
            be * al ** 2]


def _rel_D2B(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga, et = w["alpha"], w["beta"], w["gamma"], w["eta"]
    return [et * be, ga * et, be * ga, al ** 2,
            ga * be * al + al * ga * be, et ** k + be * al * ga]


def _rel_SD2B1(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga, et = w["alpha"], w["beta"], w["gamma"], w["eta"]
    return [et * be, ga * et, be * ga,
            al ** 2 + ga * be + p["c"] * (al * ga * be),
            ga * be * al + al * ga * be, et ** k + be * al * ga]


def _rel_SD2B2(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga, et = w["alpha"], w["beta"], w["gamma"], w["eta"]
    return [et * be + be * al * (ga * be * al),
            ga * et + al * ga * (be * al * ga),
            al ** 2 + p["c"] * (ga * be * al) ** 2,
            be * ga + et ** (k - 1),
            et ** 2 * be, ga * et ** 2]


def _rel_SD2B4(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga, et = w["alpha"], w["beta"], w["gamma"], w["eta"]
    return [ga * et + al * ga, be * al + et * be,
            al ** (k + 1), et ** (k + 1),
            be * al ** (k - 1), al ** (k - 1) * ga,
            ga * et ** (k - 1), et ** (k - 1) * be,
            ga * be + al ** 2,
            be * ga + et ** 2 + p["c"] * et ** k]


def _rel_Q2B1(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga, et = w["alpha"], w["beta"], w["gamma"], w["eta"]
    return [et * be + be * al * (ga * be * al),
            ga * et + al * ga * (be * al * ga),
            al ** 2 + ga * be * (al * ga * be) + p["c"] * (al * ga * be) ** 2,
            be * ga + et ** (k - 1),
            be * al ** 2]


def _rel_Q2B2(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga, et = w["alpha"], w["beta"], w["gamma"], w["eta"]

    def poly_at(x):  # p(x) * x^2 with p(0) = 1
        out = x ** 2
        for i, ci in enumerate(p["p"]):
            if i and ci:
                out = out + ci * x ** (i + 2)
        return out

    return [ga * et + al * ga, be * al + et * be,
            al ** (k + 1), et ** (k + 1),
            be * al ** (k - 1), al ** (k - 1) * ga,
            ga * be + poly_at(al),
            be * ga + poly_at(et) + p["a"] * et ** (k - 1) + p["c"] * et ** k]


def _rel_D3A(w, n, p, fld):
    k = 2 ** (n - 2)
    be, ga, de, et = w["beta"], w["gamma"], w["delta"], w["eta"]
    return [ga * be, de * et,
            (et * de * be * ga) ** k + (be * ga * et * de) ** k]


def _rel_SD3A1(w, n, p, fld):
    k = 2 ** (n - 2)
    be, ga, de, et = w["beta"], w["gamma"], w["delta"], w["eta"]
    return [ga * be,
            de * et * de + de * be * ga * (et * de * be * ga) ** (k - 1),
            et * de * et + be * ga * et * (de * be * ga * et) ** (k - 1)]


def _rel_Q3A2(w, n, p, fld):
    k = 2 ** (n - 2)
    be, ga, de, et = w["beta"], w["gamma"], w["delta"], w["eta"]
    return [be * ga * be + et * de * be * (ga * et * de * be) ** (k - 1),
            ga * be * ga + ga * et * de * (be * ga * et * de) ** (k - 1),
            de * be * ga * be,
            de * et * de + de * be * ga * (et * de * be * ga) ** (k - 1),
            et * de * et + be * ga * et * (de * be * ga * et) ** (k - 1),
            ga * et * de * et]


def _rel_D3B(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga, de, et = (w[x] for x in ("alpha", "beta", "gamma", "delta", "eta"))
    return [be * al, al * ga, ga * be, de * et,
            et * de * be * ga + be * ga * et * de,
            al ** k + ga * et * de * be]


def _rel_SD3B1(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga, de, et = (w[x] for x in ("alpha", "beta", "gamma", "delta", "eta"))
    return [be * al, al * ga, ga * be,
            de * et * de + de * be * ga,
            et * de * et + be * ga * et,
            al ** k + ga * et * de * be]


def _rel_SD3B2(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga, de, et = (w[x] for x in ("alpha", "beta", "gamma", "delta", "eta"))
    return [de * et,
            ga * be + al ** (k - 1),
            al * ga + ga * et * de * (be * ga * et * de),
            be * al + et * de * be * (ga * et * de * be)]


def _rel_Q3B(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga, de, et = (w[x] for x in ("alpha", "beta", "gamma", "delta", "eta"))
    return [ga * be + al ** (k - 1),
            al * ga + ga * et * de * (be * ga * et * de),
            be * al + et * de * be * (ga * et * de * be),
            de * et * de + de * be * ga * (et * de * be * ga),
            et * de * et + be * ga * et * (de * be * ga * et),
            be * al ** 2,
            de * et * de * be]


def _rel_SD3C21(w, n, p, fld):
    k = 2 ** (n - 2)
    be, ga, rho, de, et = (w[x] for x in ("beta", "gamma", "rho", "delta", "eta"))
    return [rho * be, de * rho, rho * et, ga * rho,
            be * ga + et * de,
            (be * ga) ** 2 + rho ** k,
            de * be * ga * be, ga * et * de * et]


def _rel_SD3C22(w, n, p, fld):
    k = 2 ** (n - 2)
    be, ga, rho, de, et = (w[x] for x in ("beta", "gamma", "rho", "delta", "eta"))
    return [rho * be, de * rho, rho * et, ga * rho,
            be * ga + et * de,
            (be * ga) ** k + rho ** 2,
            de * be * (ga * be) ** (k - 1),
            ga * et * (de * et) ** (k - 1)]


def _rel_SD3D(w, n, p, fld):
    k = 2 ** (n - 2)
    al, be, ga, de, et, xi = (w[x] for x in ("alpha", "beta", "gamma", "delta", "eta", "xi"))
    return [xi * de, et * xi, de * et,
            ga * be + al ** (k - 1),
            al * ga + ga * et * de,
            be * al + et * de * be,
            xi ** 2 + de * be * ga * et]


def _rel_SD3H1(w, n, p, fld):
    k = 2 ** (n - 2)
    be, ga, de, et, la = (w[x] for x in ("beta", "gamma", "delta", "eta", "lam"))
    return [la * de + ga * be * ga,
            be * la + et * (de * et) ** (k - 1),
            et * de * be, de * be * ga, ga * et]


def _rel_SD3H2(w, n, p, fld):
    k = 2 ** (n - 2)
    be, ga, de, et, la = (w[x] for x in ("beta", "gamma", "delta", "eta", "lam"))
    return [la * de + ga * (be * ga) ** (k - 1),
            be * la + et * de * et,
            et * de * be, de * be * ga, ga * et]


def _rel_D3K(w, n, p, fld):
    k = 2 ** (n - 2)
    be, ga, de, et, ka, la = (w[x] for x in ("beta", "gamma", "delta", "eta", "kappa", "lam"))
    return [de * be, la * de, be * la, ka * ga, et * ka, ga * et,
            ga * be + la * ka,
            ka * la + (de * et) ** k,
            (et * de) ** k + be * ga]


def _rel_Q3K(w, n, p, fld):
    k = 2 ** (n - 2)
    be, ga, de, et, ka, la = (w[x] for x in ("beta", "gamma", "delta", "eta", "kappa", "lam"))
    return [de * be + ka * la * ka,
            ga * et + la * ka * la,
            la * de + ga * be * ga,
            et * ka + be * ga * be,
            be * la + et * (de * et) ** (k - 1),
            ka * ga + de * (et * de) ** (k - 1),
            de * be * ga, ga * et * de, et * ka * la]


_R2A = (_U(0, 0, 1), _U(1, 0, 0))
_R3A = (_U(0, 1, 0, 2), _U(2, 0, 1, 0), _U(0, 2, 0, 1), _U(1, 0, 2, 0))
_R3A_Q8 = (Recipe.simple(1), Recipe.simple(2),
           _U(0, 1, 0, 2), _U(0, 2, 0, 1), _U(1, 0, 2, 0), _U(2, 0, 1, 0))
_R3K_Q8 = (_U(0, 1), _U(1, 0), _U(1, 2), _U(2, 1), _U(0, 2), _U(2, 0))

FAMILIES = {}


def _add(name, paper, quiver_id, dtype, n_min, figure, params, rel, recipes_b,
         tube, ubar_kind, recipes_q8=(), realizable=True):
    FAMILIES[name] = BlockFamily(
        name=name, paper_name=paper, quiver_id=quiver_id, defect_type=dtype,
        n_min=n_min, figure=figure, param_slots=tuple(params), relations=rel,
        recipes_b=tuple(recipes_b), recipes_q8=tuple(recipes_q8), tube=tube,
        ubar_kind=ubar_kind, realizable_as_block=realizable)


_add("D2A", "D(2A)", "2A", "D", 2, "fig_D2A", (), _rel_D2A, _R2A, _tube_all, "stack")
_add("SD2A_1", "SD(2A)₁(c)", "2A", "SD", 4, "fig_SD2A1", ("c",), _rel_SD2A1,
     _R2A, _tube_none, "stack")
_add("SD2A_2", "SD(2A)₂(c)", "2A", "SD", 4, "fig_D2A", ("c",), _rel_SD2A2,
     _R2A, _tube_all, "stack")
_add("Q2A", "Q(2A)(c)", "2A", "Q", 3, "fig_SD2A1", ("c",), _rel_Q2A,
     _R2A, _tube_none, "stack")
_add("D2B", "D(2B)", "2B", "D", 2, "fig_D2B", (), _rel_D2B,
     (Recipe.simple(1),), _tube_all, "stack")
_add("SD2B_1", "SD(2B)₁(c)", "2B", "SD", 4, "fig_D2B", ("c",), _rel_SD2B1,
     (Recipe.simple(1),), _tube_all, "stack")
_add("SD2B_2", "SD(2B)₂(c)", "2B", "SD", 4, "fig_SD2B2", ("c",), _rel_SD2B2,
     (Recipe.simple(1),), _tube_none, "stack")
_add("SD2B_4", "SD(2B)₄(c)", "2B", "SD", 4, "fig_SD2B4", ("c",), _rel_SD2B4,
     (_U(0, 1), _U(1, 0)), _tube_none, "lacy")
_add("Q2B_1", "Q(2B)₁(c)", "2B", "Q", 3, "fig_SD2B2", ("c",), _rel_Q2B1,
     (Recipe.simple(1),), _tube_none, "stack",
     recipes_q8=(Recipe.simple(1),))
_add("Q2B_2", "Q(2B)₂(p,a,c)", "2B", "Q", 3, "fig_SD2B4", ("p", "a", "c"), _rel_Q2B2,
     (_U(0, 1), _U(1, 0)), _tube_none, "lacy",
     recipes_q8=(_U(0, 1), _U(1, 0)), realizable=False)
_add("D3A_1", "D(3A)₁", "3A", "D", 2, "fig_D3A", (), _rel_D3A, _R3A, _tube_all, "stack")
_add("SD3A_1", "SD(3A)₁", "3A", "SD", 4, "fig_SD3A", (), _rel_SD3A1,
     _R3A, _tube_top_or_socle(1), "stack")
_add("Q3A_2", "Q(3A)₂", "3A", "Q", 3, "fig_Q3A", (), _rel_Q3A2,
     _R3A, _tube_none, "stack", recipes_q8=_R3A_Q8)
_add("D3B_1", "D(3B)₁", "3B", "D", 2, "fig_D3B", (), _rel_D3B,
     (Recipe.simple(1),), _tube_all, "stack")
_add("SD3B_1", "SD(3B)₁", "3B", "SD", 4, "fig_SD3B1", (), _rel_SD3B1,
     (Recipe.simple(1),), _tube_all, "stack")
_add("SD3B_2", "SD(3B)₂", "3B", "SD", 4, "fig_SD3B2", (), _rel_SD3B2,
     (Recipe.simple(1),), _tube_none, "stack")
_add("Q3B", "Q(3B)", "3B", "Q", 3, "fig_Q3B", (), _rel_Q3B,
     (Recipe.simple(1),), _tube_none, "stack",
     recipes_q8=(Recipe.simple(1), Recipe.simple(2),
                 _U(0, 1, 0, 2), _U(0, 2, 0, 1), _U(1, 0, 2, 0), _U(2, 0, 1, 0)))
_add("SD3C_21", "SD(3C)₂,₁", "3C", "SD", 4, "fig_SD3C1", (), _rel_SD3C21,
     (Recipe.simple(0),), _tube_all, "stack")
_add("SD3C_22", "SD(3C)₂,₂", "3C", "SD", 4, "fig_SD3C2", (), _rel_SD3C22,
     (_L((0,), (1, 2)), _L((1, 2), (0,)), _U(1, 0, 2), _U(2, 0, 1)),
     _tube_top_or_socle(0), "omega")
_add("SD3D", "SD(3D)", "3D", "SD", 4, "fig_SD3B1", (), _rel_SD3D,
     (Recipe.simple(1),), _tube_none, "stack")
_add("SD3H_1", "SD(3H)₁", "3H", "SD", 4, "fig_SD3H1", (), _rel_SD3H1,
     (_U(1, 2), _U(2, 1)), _tube_top(1), "stack")
_add("SD3H_2", "SD(3H)₂", "3H", "SD", 4, "fig_SD3H2", (), _rel_SD3H2,
     (_U(0, 1), _U(1, 0)), _tube_top(0), "stack")
_add("D3K", "D(3K)", "3K", "D", 2, "fig_D3K", (), _rel_D3K,
     (_U(1, 2), _U(2, 1)), _tube_all, "stack")
_add("Q3K", "Q(3K)", "3K", "Q", 3, "fig_Q3K", (), _rel_Q3K,
     (_U(1, 2), _U(2, 1)), _tube_none, "stack", recipes_q8=_R3K_Q8)

assert len(FAMILIES) == 24


# ---------------------------------------------------------------------------
# lookup
# ---------------------------------------------------------------------------

_SUBSCRIPTS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def normalize_name(name: str) -> str:
    s = name.strip().translate(_SUBSCRIPTS)
    # strip a parameter suffix such as (c) or (p,a,c)
    for suffix in ("(c)", "(p,a,c)"):
        if s.endswith(suffix):
            s = s[: -len(suffix)]
    s = s.replace("(", "").replace(")", "")
    s = s.replace(" ", "")
    s = s.replace(",", "").replace("_", "")
    return s.upper()


_ALIAS = {}
for fam in FAMILIES.values():
    _ALIAS[normalize_name(fam.name)] = fam.name
    _ALIAS[normalize_name(fam.paper_name)] = fam.name
# SD(3C)_{2,1} / SD(3C)_{2,2} normalize to SD3C21 / SD3C22 via both routes


def family(name: str) -> BlockFamily:
    key = normalize_name(name)
    if key in _ALIAS:
        return FAMILIES[_ALIAS[key]]
    bare = key.lstrip("DSQ")
    if bare in MISSING_QUIVERS or key in {"D3C", "Q3C", "D3D", "Q3D", "D3H", "Q3H", "SD3K"}:
        raise UsageError(f"no blocks realize {name!r}: that quiver/defect-type "
                         "combination does not occur")
    raise UsageError(f"unknown family {name!r}")


def list_families():
    return [FAMILIES[k] for k in sorted(FAMILIES)]


def realizable_at(name: str, n: int) -> bool:
    """Whether some block actually has this basic algebra at this exponent:
    Klein-four defect only reaches the 3A/3K dihedral families, and order-8
    quaternion defect only the three-simple quivers."""
    fam = family(name)
    if not fam.realizable_as_block or n < fam.n_min:
        return False
    if n == 2:
        return fam.name in ("D3A_1", "D3K")
    if fam.defect_type == "Q" and n == 3:
        return fam.quiver_id in ("3A", "3B", "3K")
    return True


# ---------------------------------------------------------------------------
# decomposition matrices
# ---------------------------------------------------------------------------

@dataclass
class DecompMatrix:
    family: str
    n: int
    rows: list     # full integer matrix, height-1 row repeated
    heights: list  # per-row height

    @property
    def n_simples(self):
        return len(self.rows[0])

    def cartan(self):
        D = np.array(self.rows, dtype=np.int64)
        return D.T @ D

    def height1_count(self):
        return sum(1 for h in self.heights if h == 1)


def decomposition_matrix(name: str, n: int) -> DecompMatrix:
    fam = family(name)
    if n < fam.n_min:
        raise UsageError(f"{fam.name}: n={n} below n_min={fam.n_min}")
    h0, h1, extra = FIGURES[fam.figure]
    reps = 2 ** (n - 2) - 1
    rows = [list(r) for r in h0] + [list(h1)] * reps + [list(r) for r in extra]
    heights = [0] * 4 + [1] * reps + [n - 2] * len(extra)
    return DecompMatrix(fam.name, n, rows, heights)


def cartan(name: str, n: int):
    return decomposition_matrix(name, n).cartan()


def cartan_head(name: str, n: int):
    """Cartan form of the first 4 + (2^(n-2)-1) rows only (the height-(n-2)
    tail excluded); its determinant is 2^n for every family."""
    dm = decomposition_matrix(name, n)
    keep = 4 + (2 ** (n - 2) - 1)
    D = np.array(dm.rows[:keep], dtype=np.int64)
    return D.T @ D


def elementary_divisors(mat) -> list:
    """Smith normal form diagonal over Z (Bareiss-free integer reduction)."""
    A = [list(map(int, row)) for row in np.array(mat)]
    rows, cols = len(A), len(A[0]) if A else 0
    divisors = []
    r = c = 0
    while r < rows and c < cols:
        # find smallest nonzero entry
        best = None
        for i in range(r, rows):
            for j in range(c, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        A[r], A[i0] = A[i0], A[r]
        for row in A:
            row[c], row[j0] = row[j0], row[c]
        again = False
        for i in range(rows):
            if i != r and A[i][c]:
                q = A[i][c] // A[r][c]
                for j in range(cols):
                    A[i][j] -= q * A[r][j]
                if A[i][c]:
                    again = True
        for j in range(cols):
            if j != c and A[r][j]:
                q = A[r][j] // A[r][c]
                for i in range(rows):
                    A[i][j] -= q * A[i][c]
                if A[r][j]:
                    again = True
        if again:
            continue
        divisors.append(abs(A[r][c]))
        r += 1
        c += 1
    return sorted(divisors)


# ---------------------------------------------------------------------------
# algebra construction
# ---------------------------------------------------------------------------

def default_params(fld: GF):
    return {"c": 0, "a": 1, "p": (1,)}


def build_algebra(name: str, n: int, fld: GF = None, params: dict = None,
                  check_dims: bool = True):
    """Complete the family presentation at exponent n; validates the completed
    vertex-pair dimensions against the decomposition-matrix Cartan oracle
    (this pins down the composition convention empirically)."""
    fam = family(name)
    fld = fld or GF(1)
    if n < fam.n_min:
        raise UsageError(f"{fam.name}: n={n} below n_min={fam.n_min}")
    p = default_params(fld)
    if params:
        p.update(params)
    if fam.name == "Q2B_2" and p["a"] == 0:
        raise UsageError("Q2B_2 requires a != 0")
    if p["p"][0] != 1:
        raise UsageError("polynomial parameter must have constant term 1")
    quiver = QUIVERS[fam.quiver_id]
    atoms = quiver.atoms(fld)
    gens = fam.relations(atoms, n, p, fld)
    alg = complete(quiver, RelationIdeal(gens), fld, label=f"{fam.name}[n={n}]")
    if check_dims and realizable_at(fam.name, n):
        C = cartan(name, n)
        got = np.array(alg.vertex_pair_dims(), dtype=np.int64)
        if not (np.array_equal(got, C) or np.array_equal(got, C.T)):
            raise ConventionError(
                f"{fam.name}[n={n}]: completed vertex-pair dimensions {got.tolist()} "
                f"contradict the Cartan oracle {C.tolist()}; composition convention "
                "diagnostic")
    return alg


_ALG_CACHE = {}


def algebra(name: str, n: int, fld: GF = None, params: dict = None):
    """Cached build_algebra for the default parameter set."""
    fld = fld or GF(1)
    pkey = None
    if params:
        pkey = tuple(sorted((k, tuple(v) if isinstance(v, (list, tuple)) else v)
                            for k, v in params.items()))
    key = (family(name).name, n, fld.e, pkey)
    if key not in _ALG_CACHE:
        _ALG_CACHE[key] = build_algebra(name, n, fld, params)
    return _ALG_CACHE[key]


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def family_to_json(name: str, n: int, fld: GF = None, params: dict = None,
                   include_relations: bool = True) -> dict:
    fam = family(name)
    fld = fld or GF(1)
    dm = decomposition_matrix(name, n)
    quiver = QUIVERS[fam.quiver_id]
    out = {
        "name": fam.name,
        "paper_name": fam.paper_name,
        "defect_type": fam.defect_type,
        "n": n,
        "quiver": {
            "vertices": list(quiver.vertices),
            "arrows": [{"name": a, "src": s, "tgt": t} for a, s, t in quiver.arrows],
        },
        "relations": [],
        "decomposition_matrix": [list(map(int, r)) for r in dm.rows],
        "heights": list(map(int, dm.heights)),
    }
    if include_relations:
        p = default_params(fld)
        if params:
            p.update(params)
        atoms = quiver.atoms(fld)
        out["relations"] = [str(g) for g in fam.relations(atoms, n, p, fld)]
    return out
