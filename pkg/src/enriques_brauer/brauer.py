"""Brauer groups of the known Enriques manifolds.

For an Enriques manifold ``T = X / G`` with ``G`` cyclic of order ``d`` and
``H^3(X, Z)`` torsion free, ``Br(T)`` is the kernel of the third-page
differential ``H^1(G, H^2(X, Z)) -> H^4(G, Z) = Z/d``.  That differential is
a geometric input, not something the lattice data determines, so each
family carries a :class:`DifferentialMode` saying what it is.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from . import __version__
from .constructions import FAMILIES, FamilySpec, family_module, tensor_block
from .cyclic_gmodule import cohomology
from .errors import PreconditionError
from .exact_linalg import AbelianGroupInvariants, IntMatrix, smith_diagonal


class DifferentialMode(enum.Enum):
    SURJECTIVE_ONTO_ZD = "SurjectiveOntoZd"
    ZERO = "Zero"

    @property
    def justification(self) -> str:
        return _JUSTIFICATION[self]


_JUSTIFICATION = {
    DifferentialMode.SURJECTIVE_ONTO_ZD:
        "Lemma 3.3: E_4^{4,0}(S^[n], G) = 0, so d_3^{1,2} maps onto H^4(G, Z) = Z/d",
    DifferentialMode.ZERO:
        "Lemma 3.7: d_3^{1,2}(Kum_n(A)) is 0",
}


def differential_mode(spec: FamilySpec) -> DifferentialMode:
    if spec.family == "En":
        return DifferentialMode.SURJECTIVE_ONTO_ZD
    return DifferentialMode.ZERO


@dataclass(frozen=True)
class BrauerResult:
    spec: FamilySpec
    h1: AbelianGroupInvariants
    mode: DifferentialMode
    group: AbelianGroupInvariants
    conditional: bool
    condition_note: str

    def to_json(self) -> dict:
        return {
            "family": self.spec.family,
            "param": self.spec.param,
            "H1": self.h1.to_json(),
            "mode": self.mode.value,
            "brauer": self.group.to_json(),
            "conditional": self.conditional,
            "note": self.condition_note,
        }


def _conditionality(spec: FamilySpec) -> tuple[bool, str]:
    if spec.family == "En":
        return False, "H^3(S^[n], Z) is torsion free"
    if spec.family == "Tn" and spec.param % 2 == 1:
        return False, f"H^3(Kum_{spec.n}(A), Z) is torsion free (Kummer type of even dimension parameter)"
    return True, f"assumes H^3(Kum_{spec.n}(A), Z)_tors = 0, which is not known"


def kernel_of_surjection(h1: AbelianGroupInvariants, d: int) -> AbelianGroupInvariants:
    """Kernel of any surjection ``(Z/d)^k -> Z/d``, i.e. ``(Z/d)^(k-1)``.

    For a group that is not elementary abelian of exponent ``d`` the kernel
    depends on the map, so that case is refused.
    """
    if not h1.is_elementary(d) or not h1.torsion:
        raise PreconditionError(f"kernel not determined by orders: H^1 = {h1} is not (Z/{d})^k, k ≥ 1")
    return AbelianGroupInvariants(0, h1.torsion[1:])


def brauer_group(spec: FamilySpec) -> BrauerResult:
    module = family_module(spec)
    h1 = cohomology(module, 1)
    mode = differential_mode(spec)
    if mode is DifferentialMode.SURJECTIVE_ONTO_ZD:
        group = kernel_of_surjection(h1, spec.index)
    else:
        group = h1
    conditional, note = _conditionality(spec)
    return BrauerResult(spec, h1, mode, group, conditional, note)


def format_result(result: BrauerResult) -> str:
    spec = result.spec
    label = "n" if spec.family in ("En", "Kn") else "m"
    status = "conditional" if result.conditional else "unconditional"
    return "\n".join([
        f"Family {spec.family} ({label} = {spec.param}, {spec.name}, index d = {spec.index})",
        f"H^1(G, H^2(X, Z)) = {result.h1}",
        f"d_3 mode: {result.mode.value} ({result.mode.justification})",
        f"Br = {result.group} ({status})",
        f"note: {result.condition_note}",
    ])


# ---------------------------------------------------------------------------
# Reproduction report
# ---------------------------------------------------------------------------

REPORT_FAMILIES = (
    FamilySpec("En", 3),
    FamilySpec("Kn", 3),
    FamilySpec("Tn", 1),
    FamilySpec("Rn", 1),
)

_EXPECTED = {
    "En": ("Z/2", "Theorem 4.1: Br(E_n) = Z/2 for odd n"),
    "Kn": ("(Z/2)^4", "Remark 4.3: Br(K_n) = (Z/2)^4 if H^3(Kum_n(A), Z)_tors = 0"),
    "Tn": ("(Z/3)^2", "Theorem 4.1: Br(T_{3m-1}) = (Z/3)^2 for odd m"),
    "Rn": ("(Z/2)^2", "Remark 4.3: Br(R_n) = (Z/2)^2 if H^3(Kum_n(A), Z)_tors = 0"),
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["title", "version", "families", "smith_checks"],
    "properties": {
        "title": {"type": "string"},
        "version": {"type": "string"},
        "families": {
            "type": "array",
            "minItems": 4,
            "maxItems": 4,
            "items": {
                "type": "object",
                "required": ["family", "param", "manifold", "index", "H1", "mode",
                             "brauer", "conditional", "note", "expected", "citation",
                             "matches_expected"],
                "properties": {
                    "family": {"enum": list(FAMILIES)},
                    "param": {"type": "integer", "minimum": 1},
                    "manifold": {"type": "string"},
                    "index": {"type": "integer"},
                    "H1": {"$ref": "#/$defs/group"},
                    "mode": {"enum": [m.value for m in DifferentialMode]},
                    "brauer": {"$ref": "#/$defs/group"},
                    "conditional": {"type": "boolean"},
                    "note": {"type": "string"},
                    "expected": {"type": "string"},
                    "citation": {"type": "string"},
                    "matches_expected": {"type": "boolean"},
                },
            },
        },
        "smith_checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["d", "matrix", "diagonal", "citation"],
                "properties": {
                    "d": {"type": "integer"},
                    "matrix": {"type": "array"},
                    "diagonal": {"type": "array", "items": {"type": "integer"}},
                    "citation": {"type": "string"},
                },
            },
        },
    },
    "$defs": {
        "group": {
            "type": "object",
            "required": ["free_rank", "invariant_factors"],
            "properties": {
                "free_rank": {"type": "integer", "minimum": 0},
                "invariant_factors": {"type": "array", "items": {"type": "integer", "minimum": 2}},
            },
        },
    },
}


def _compact(group: AbelianGroupInvariants) -> str:
    if group.is_trivial:
        return "0"
    if group.free_rank == 0 and len(set(group.torsion)) == 1:
        t, k = group.torsion[0], len(group.torsion)
        return f"Z/{t}" if k == 1 else f"(Z/{t})^{k}"
    return str(group)


def reproduction_report() -> dict:
    rows = []
    for spec in REPORT_FAMILIES:
        result = brauer_group(spec)
        expected, citation = _EXPECTED[spec.family]
        row = result.to_json()
        row.update(
            manifold=spec.name,
            index=spec.index,
            expected=expected,
            citation=citation,
            matches_expected=_compact(result.group) == expected,
        )
        rows.append(row)
    smith = []
    for d, cite in ((3, "Theorem 4.1 (proof): Smith diagonal (1,1,3,3)"),
                    (4, "Remark 4.3: Smith diagonal (1,1,2,2)")):
        M = IntMatrix.identity(4) - tensor_block(d)
        smith.append({"d": d, "matrix": M.to_lists(), "diagonal": list(smith_diagonal(M)),
                      "citation": cite})
    return {
        "title": "Brauer groups of the known Enriques manifolds",
        "version": __version__,
        "families": rows,
        "smith_checks": smith,
    }


def report_json(report: dict | None = None) -> str:
    return json.dumps(report or reproduction_report(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def report_markdown(report: dict | None = None) -> str:
    report = report or reproduction_report()
    lines = [
        f"# {report['title']}",
        "",
        f"version {report['version']}",
        "",
        "| family | manifold | param | d | H^1(G, H^2) | d_3 mode | Br | status | expected | citation |",
        "|---|---|---|---|---|---|---|---|---|---|",
    ]
    for row in report["families"]:
        h1 = AbelianGroupInvariants.from_json(row["H1"])
        br = AbelianGroupInvariants.from_json(row["brauer"])
        status = "conditional" if row["conditional"] else "unconditional"
        lines.append(
            f"| {row['family']} | {row['manifold']} | {row['param']} | {row['index']} | {h1} "
            f"| {row['mode']} | {br} | {status} | {row['expected']} | {row['citation']} |"
        )
    lines += ["", "## Smith normal forms of 1 - ψ on H^1(C) ⊗ H^1(C')", ""]
    for chk in report["smith_checks"]:
        diag = ", ".join(str(x) for x in chk["diagonal"])
        lines.append(f"- d = {chk['d']}: {chk['matrix']} -> ({diag}); {chk['citation']}")
    lines += ["", "## Notes", ""]
    for row in report["families"]:
        lines.append(f"- {row['manifold']}: {row['note']}")
    return "\n".join(lines) + "\n"
