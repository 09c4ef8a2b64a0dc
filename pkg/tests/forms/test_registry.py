from fractions import Fraction

import pytest

from qforms.core.qseries import QuadExtScalar
from qforms.forms.registry import (
    UnknownFormError,
    check_order,
    descriptor,
    eval_form,
    form_names,
    registry_crosschecks,
)

F = Fraction


# check the golden expansions of the level-one forms
def test_level_one_expansions():
    assert eval_form("E2", 5).coefficient_list(5) == [1, -24, -72, -96, -168]
    assert eval_form("E6", 4).coefficient_list(4) == [1, -504, -16632, -122976]
    assert eval_form("Delta", 5).coefficient_list(5) == [0, 1, -24, 252, -1472]
    assert eval_form("j", 2).leading() == (F(-1), 1)
    assert eval_form("j", 2).coefficient(0) == 744


# check A4 from its eta-root route
def test_a4_expansion():
    assert eval_form("A4", 6).coefficient_list(6) == [1, 12, -60, 768, -11004, 178200]


# check the signature 3 and 2 forms
def test_hecke_forms():
    assert eval_form("A3", 8).coefficient_list(8) == [1, 6, 0, 6, 6, 0, 0, 12]
    assert eval_form("A2", 6).coefficient_list(6) == [1, 4, 4, 0, 4, 8]
    assert eval_form("Er.3", 3).coefficient_list(3) == [1, 3, 9]
    assert eval_form("KhatEhat", 4).coefficient_list(4) == [1, 0, 8, 0]
    assert dict(eval_form("theta3", 10).terms()) == {0: 1, 1: 2, 4: 2, 9: 2}


# check C4 lives over Q(sqrt 2) and starts 2 sqrt(2) q^(1/4)
def test_c4_over_quadratic_field():
    c4 = eval_form("C4", 3)
    assert c4.d == 2
    assert c4.leading() == (F(1, 4), QuadExtScalar(0, 2, 2))


# check the Hauptmoduls and group parts
def test_hauptmoduls():
    assert eval_form("t2", 2).leading() == (F(1), 4096)
    assert eval_form("t4", 2).leading() == (F(1), 256)
    assert eval_form("gamma1.C^rho", 3).coefficient_list(3) == [0, 1728, -41472]
    assert eval_form("gamma0_2.E", 3) == eval_form("Er.4", 3)


# check Eisenstein series with characters by name
def test_character_eisenstein_names():
    e3 = eval_form("E3.1.chi-4", 3)
    assert e3.coefficient_list(3) == [1, -4, -4]
    assert descriptor("E3.1.chi-4").group == "Gamma0(4)"
    with pytest.raises(UnknownFormError):
        descriptor("E4.1.chi-4")
    with pytest.raises(UnknownFormError):
        descriptor("E3.1.chi-5")


# check the dynamic name families
def test_dynamic_names():
    assert len(descriptor("E8").routes) == 3
    assert descriptor("eta.3").order == F(1, 8)
    assert descriptor("gamma0_3.u6").weight == 6
    for bad in ("E3", "E0", "eta.0", "nope", "gamma9.E", "gamma1.u5"):
        with pytest.raises(UnknownFormError):
            descriptor(bad)


# check precision and route arguments
def test_eval_form_arguments():
    with pytest.raises(ValueError):
        eval_form("E4", 0)
    with pytest.raises(UnknownFormError):
        eval_form("E4", 5, route=7)
    assert eval_form("E4", 5, route=1) == eval_form("E4", 5)


# check the documented vocabulary resolves
def test_form_names():
    names = form_names()
    assert "KhatIhat" in names
    assert "iso_4a.C^rho" in names
    for name in names:
        assert descriptor(name).name == name


# check every route of a sample of forms agrees with the primary
def test_registry_crosschecks():
    checks = registry_crosschecks(
        10, ["A4", "B4", "C4", "A3", "B3", "C3", "A2", "B2", "C2", "Er.4", "Khat"]
    )
    assert checks
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


# check the declared orders at infinity
def test_check_order():
    for name in ("C2", "C3", "C4", "Delta", "KhatGhat"):
        check = check_order(name, 6)
        assert check is not None and check.passed, check


# check unknown names fail the crosscheck
def test_registry_crosschecks_unknown():
    with pytest.raises(UnknownFormError):
        registry_crosschecks(5, ["nope"])
