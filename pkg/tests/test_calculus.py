import random

import pytest
from hypothesis import given, strategies as st

from podles import qalgebra as qa
from podles import calculus as cal
from podles.qalgebra import Element
from podles.scalars import QScalar, q_pow, nu


@st.composite
def elements(draw, max_total=3):
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    out = Element()
    for _ in range(draw(st.integers(1, 3))):
        cf = QScalar.from_rational(draw(st.integers(-3, 3)))
        out = out + Element.monomial(qa.random_monomial(rng, max_total), cf)
    return out


@st.composite
def sphere_elements(draw):
    gens = [qa.b_plus(), qa.b_zero(), qa.b_minus()]
    out = Element()
    for _ in range(draw(st.integers(1, 3))):
        term = qa.one()
        for i in draw(st.lists(st.integers(0, 2), max_size=3)):
            term = term * gens[i]
        out = out + term.scale(QScalar.from_rational(draw(st.integers(-2, 2))))
    return out


@given(elements(), elements())
def test_leibniz(x, y):
    assert cal.dP(x * y) == cal.dP(x) * y + x * cal.dP(y)


def test_d_of_constants_vanishes():
    assert not cal.dP(qa.one())
    assert not cal.dP(qa.as_element(q_pow(3)))


@given(elements(), elements())
def test_bimodule_associativity(x, y):
    for k in cal.BASIS:
        w = cal.omega(k)
        assert (x * w) * y == x * (w * y)
        assert (w * x) * y == w * (x * y)


@given(sphere_elements())
def test_sphere_forms_have_no_vertical_part(m):
    w = cal.dS(m)
    assert not w.component("z")
    assert not cal.sphere_form_violations(w)


def test_dS_rejects_non_invariant():
    with pytest.raises(cal.NotCoinvariant):
        cal.dS(qa.a())


def test_partial_rejects_vertical_direction():
    with pytest.raises(ValueError):
        cal.partial("z", qa.b_zero())


def test_sphere_relation_is_preserved_by_d():
    bp, b0, bm = qa.b_plus(), qa.b_zero(), qa.b_minus()
    rel = bp * bm - b0 - b0 * b0 * q_pow(-1)
    assert not rel
    lhs = cal.dS(bp) * bm + bp * cal.dS(bm)
    rhs = cal.dS(b0) + (cal.dS(b0) * b0 + b0 * cal.dS(b0)) * q_pow(-1)
    assert lhs == rhs


def test_soldering_values():
    assert cal.soldering(qa.b_plus()) == cal.omega("+")
    assert cal.soldering(qa.b_zero()) == \
        cal.omega("0") * (nu() ** 2 * q_pow(-1))
    assert cal.soldering(qa.b_minus()) == cal.omega("-") * q_pow(1)
    for name in ("b+", "b0", "b-"):
        cal.check_soldering(name)


def test_printed_identities_outside_errata_hold():
    for ident in cal.printed_identities():
        if ident.id in cal.ERRATA:
            continue
        assert not ident.residual(), ident.id


@pytest.mark.parametrize("id_", sorted(cal.ERRATA))
def test_errata_fail_verbatim_and_hold_corrected(id_):
    by_id = {i.id: i for i in cal.printed_identities()}
    assert by_id[id_].residual()
    assert by_id[id_].erratum
    assert not by_id[id_ + ".corrected"].residual()


@pytest.mark.parametrize("force_exact", [False, True])
def test_fibre_codimension_both_routes(force_exact):
    rep = cal.verify_fibre_calculus(6, force_exact=force_exact)
    assert rep.ok
    info = rep.extras["fibre_rank"]
    assert info["augmentation_dim"] - info["rank"] == 1
    assert info["route"] == ("exact" if force_exact else "numeric")


def test_exact_and_numeric_ranks_agree():
    vecs = cal.ideal_span(cal.onegens(), 3)
    window = (-5, 5)
    assert cal.quotient_rank(vecs, window)[0] == \
        cal.quotient_rank(vecs, window, force_exact=True)[0]


def test_fibre_commutation():
    ech = cal.Echelon()
    for v in cal.ideal_span(cal.onegens(), 6):
        ech.add(v)
    assert cal.fibre_relation(ech, 1) == {1: q_pow(1)}
    assert cal.fibre_relation(ech, -1) == {-1: q_pow(-1)}
