"""Catalog validation, instantiation, and brute verification of the families."""

import pytest

from planarq import FieldMismatch, ValidationFailed, prime_ext_field
from planarq.families import (
    FamilySpec,
    ambient_field,
    brute_check_family,
    desk_verifiable,
    family_ids,
    family_report,
    instantiate_family,
    resolve_params,
    validate_family,
)


def test_catalog_has_eleven_entries():
    ids = family_ids()
    assert len(ids) == 11
    assert ids == ["T2.1", "T2.2", "T2.3", "T2.4", "T2.5", "T2.6",
                   "T3.1", "T3.2", "T3.3", "T3.4", "T3.5"]


def test_validate_t22_even_quotient():
    spec = FamilySpec("T2.2", {"p": 3, "n": 4, "k": 2})
    assert validate_family(spec) == ["n/gcd(k, n) must be odd"]


def test_validate_t26_and_t35():
    assert validate_family(FamilySpec("T2.6", {"n": 5, "k": 3})) == []
    assert validate_family(FamilySpec("T3.5", {})) == []


def test_validate_unknown_and_missing():
    assert validate_family(FamilySpec("T9.9", {})) == ["unknown family id 'T9.9'"]
    out = validate_family(FamilySpec("T2.2", {"p": 3}))
    assert any("missing parameter" in v for v in out)
    out = validate_family(FamilySpec("T3.5", {"bogus": 1}))
    assert any("unknown parameter" in v for v in out)


def test_instantiate_trinomials():
    field = prime_ext_field(3, 5)
    p23 = instantiate_family(FamilySpec("T2.3", {"n": 5}), field)
    assert p23.terms == {10: 1, 6: 1, 2: 2}
    p24 = instantiate_family(FamilySpec("T2.4", {"n": 5}), field)
    assert p24.terms == {10: 1, 6: 2, 2: 2}
    p35 = instantiate_family(FamilySpec("T3.5", {}), field)
    assert p35.terms == {2: 1, 90: 1}
    p26 = instantiate_family(FamilySpec("T2.6", {"n": 5, "k": 3}), field)
    assert p26.terms == {14: 1}


def test_instantiate_x2_anywhere():
    for p, n in ((3, 1), (7, 2), (5, 3)):
        field = prime_ext_field(p, n)
        poly = instantiate_family(FamilySpec("T2.1", {"p": p, "n": n}), field)
        assert poly.terms == {2: 1}
        assert brute_check_family(FamilySpec("T2.1", {"p": p, "n": n}), field)


def test_field_mismatch_and_validation_failed():
    field = prime_ext_field(3, 5)
    with pytest.raises(FieldMismatch):
        instantiate_family(FamilySpec("T2.3", {"n": 7}), field)
    with pytest.raises(ValidationFailed):
        instantiate_family(FamilySpec("T2.2", {"p": 3, "n": 4, "k": 2}),
                           prime_ext_field(3, 4))


def test_element_search_is_deterministic():
    spec = FamilySpec("T2.5", {"p": 3, "k": 1, "s": 4})
    field = ambient_field(spec)
    r1 = resolve_params(spec, field)
    r2 = resolve_params(spec, field)
    assert r1 == r2
    u = r1.params["u"]
    # u is the first primitive element in code order
    from planarq.families import _mult_order

    assert _mult_order(field, u) == field.order - 1
    for code in range(1, u):
        assert _mult_order(field, code) != field.order - 1


def test_supplied_element_params_are_validated():
    spec = FamilySpec("T2.5", {"p": 3, "k": 1, "s": 4, "u": 1})  # 1 is not primitive
    assert validate_family(spec) == ["u must be primitive"]
    spec = FamilySpec("T3.1", {"p": 3, "k": 1, "s": 2, "v": 2})
    assert validate_family(spec) == ["v must have multiplicative order 13"]


def test_brute_checks_small_instances():
    cases = [
        FamilySpec("T2.2", {"p": 3, "n": 3, "k": 1}),
        FamilySpec("T2.5", {"p": 3, "k": 1, "s": 4}),
        FamilySpec("T3.1", {"p": 3, "k": 1, "s": 2}),
        FamilySpec("T3.3", {"p": 3, "m": 1, "s": 2}),
        FamilySpec("T3.4", {"p": 3, "e": 1, "k": 0}),
    ]
    for spec in cases:
        assert brute_check_family(spec), spec


def test_t34_small_instances_expand_correctly():
    # k = 0 collapses to 2x^2 over F_9
    field = prime_ext_field(3, 2)
    poly = instantiate_family(FamilySpec("T3.4", {"p": 3, "e": 1, "k": 0}), field)
    assert poly.terms == {2: 2}
    # k = 1 over F_3^6 stays planar
    assert brute_check_family(FamilySpec("T3.4", {"p": 3, "e": 1, "k": 1}))


def test_t32_flagged_discrepancy():
    # the published side conditions admit p = 3, k = 1, s = 2, but no element
    # of the prescribed order yields a planar instance; the report must flag
    # the discrepancy rather than hide it
    rep = family_report(FamilySpec("T3.2", {"p": 3, "k": 1, "s": 2}))
    assert rep["violations"] == []
    assert rep["planar"] is False
    assert rep["flagged"] is True


def test_t32_good_instance_at_p5():
    # with p = 5 the mod-4 side condition holds and instances are planar
    rep = family_report(FamilySpec("T3.2", {"p": 5, "k": 1, "s": 2}))
    assert rep["violations"] == []
    assert rep["planar"] is True and rep["flagged"] is False


def test_t33_set_condition_excludes_bad_s():
    # s = 1 makes {a != 0 : a^(p^m) = -a = a^(p^s)} nonempty over F_9
    out = validate_family(FamilySpec("T3.3", {"p": 3, "m": 1, "s": 1}))
    assert any("nonempty" in v for v in out)
    assert validate_family(FamilySpec("T3.3", {"p": 3, "m": 1, "s": 2})) == []


def test_structural_only_validation_for_large_fields():
    spec = FamilySpec("T2.6", {"n": 25, "k": 7})
    assert validate_family(spec) == []
    assert not desk_verifiable(spec)
    rep = family_report(spec)
    assert rep["desk_verifiable"] is False and rep["planar"] is None


def test_b_zero_monomial_matches_family_shape(towers):
    # the B = 0 planar branch is the x^(q^2+1) monomial; the classifier and
    # the definition-level check must agree on it
    from planarq.planarity import SparsePoly, brute_is_planar, classify_pair

    t = towers[5]
    assert classify_pair(t, t.eq(0), t.eq(0)).planar
    assert brute_is_planar(SparsePoly(t.fq3, {t.q ** 2 + 1: 1}))
