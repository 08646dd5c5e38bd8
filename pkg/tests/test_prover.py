import pytest

from conftest import DERIVABLE, NOT_DERIVABLE
from lbstar.prover import (
    BudgetExceeded,
    SearchBudget,
    count_derivability_agreement,
    is_derivable,
    prove,
)
from lbstar.syntax import Rule, check_derivation, parse_sequent, print_sequent


@pytest.mark.parametrize("s", DERIVABLE, ids=print_sequent)
def test_derivable_fixtures_get_checked_derivations(s):
    d = prove(s)
    assert d is not None
    assert d.conclusion == s
    assert check_derivation(d)


@pytest.mark.parametrize("s", NOT_DERIVABLE, ids=print_sequent)
def test_underivable_fixtures(s):
    assert prove(s) is None


def test_axiom():
    d = prove(parse_sequent("p => p"))
    assert d.rule is Rule.AXIOM and d.premises == ()


def test_left_box_is_not_applied_eagerly():
    # unpacking the box first leaves p => <>[]p, which is underivable
    s = parse_sequent("{ []p } => <>[]p")
    d = prove(s)
    assert d is not None and d.rule is Rule.DIA_R
    assert not is_derivable(parse_sequent("p => <>[]p"))


def test_budget_on_size():
    s = parse_sequent("p/p, p/p, p, p\\p, p\\p => p")
    with pytest.raises(BudgetExceeded):
        prove(s, SearchBudget(max_connectives=3))
    assert prove(s, SearchBudget(max_connectives=4)) is not None


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_connectives=0)
    with pytest.raises(ValueError):
        SearchBudget(time_limit=-1)


def test_agreement_report():
    seqs = [parse_sequent("p => p"), parse_sequent("p*q => q*p")]
    report = count_derivability_agreement(seqs, lambda s: True)
    assert report.checked == 2 and not report.ok
    assert report.disagreements[0][1:] == (False, True)
