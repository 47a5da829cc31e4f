import json

import jsonschema
import pytest

from enriques_brauer.brauer import (
    REPORT_SCHEMA,
    DifferentialMode,
    brauer_group,
    format_result,
    kernel_of_surjection,
    report_json,
    report_markdown,
    reproduction_report,
)
from enriques_brauer.constructions import FamilySpec
from enriques_brauer.errors import PreconditionError
from enriques_brauer.exact_linalg import AbelianGroupInvariants


def Z(d, k):
    return AbelianGroupInvariants(0, (d,) * k)


@pytest.mark.parametrize("family,param,h1,br,conditional", [
    ("En", 1, Z(2, 2), Z(2, 1), False),
    ("En", 9, Z(2, 2), Z(2, 1), False),
    ("Kn", 3, Z(2, 4), Z(2, 4), True),
    ("Kn", 7, Z(2, 4), Z(2, 4), True),
    ("Tn", 1, Z(3, 2), Z(3, 2), False),
    ("Tn", 4, Z(3, 2), Z(3, 2), True),
    ("Rn", 1, Z(2, 2), Z(2, 2), True),
    ("Rn", 3, Z(2, 2), Z(2, 2), True),
])
def test_family_table(family, param, h1, br, conditional):
    r = brauer_group(FamilySpec(family, param))
    assert r.h1 == h1 and r.group == br and r.conditional is conditional


def test_modes():
    assert brauer_group(FamilySpec("En", 3)).mode is DifferentialMode.SURJECTIVE_ONTO_ZD
    for fam in ("Kn", "Tn", "Rn"):
        spec = FamilySpec(fam, 3)
        assert brauer_group(spec).mode is DifferentialMode.ZERO
    assert DifferentialMode.ZERO.value == "Zero"
    assert DifferentialMode.SURJECTIVE_ONTO_ZD.value == "SurjectiveOntoZd"


def test_kernel_of_surjection():
    assert kernel_of_surjection(Z(2, 3), 2) == Z(2, 2)
    assert kernel_of_surjection(Z(3, 1), 3).is_trivial
    with pytest.raises(PreconditionError):
        kernel_of_surjection(AbelianGroupInvariants(0, (2, 4)), 4)
    with pytest.raises(PreconditionError):
        kernel_of_surjection(AbelianGroupInvariants(), 2)


def test_format_and_json():
    r = brauer_group(FamilySpec("En", 3))
    text = format_result(r)
    assert "Br = Z/2 (unconditional)" in text
    assert "H^1(G, H^2(X, Z)) = Z/2 ⊕ Z/2" in text
    data = r.to_json()
    assert data["brauer"] == {"free_rank": 0, "invariant_factors": [2]}
    assert data["mode"] == "SurjectiveOntoZd" and data["conditional"] is False
    assert "conditional" in format_result(brauer_group(FamilySpec("Kn", 3)))


def test_report_contents():
    report = reproduction_report()
    jsonschema.validate(report, REPORT_SCHEMA)
    assert all(row["matches_expected"] for row in report["families"])
    assert report_json() == report_json()
    assert json.loads(report_json()) == report
    md = report_markdown()
    assert md.startswith("# ") and md.count("\n| ") >= 5
    assert "(1, 1, 3, 3)" in md and "(1, 1, 2, 2)" in md
