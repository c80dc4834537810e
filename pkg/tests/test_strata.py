import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planemoduli.cyclofield import CycloNum, zeta
from planemoduli.errors import (
    BadDegree,
    ConditionFailed,
    DegreeMismatch,
    OddDegree,
    PreconditionViolated,
    ReducibleForm,
    RepeatedFactor,
    UnknownSubfamily,
    WrongDivisibility,
)
from planemoduli.planecurve import BinaryForm, X, Y, Z, act, galois_form, is_automorphism, proportional
from planemoduli.projgeom import diag, monomial
from planemoduli.strata import (
    CurveFamilyInstance,
    build_C1,
    build_C1_prime,
    build_C1_prime_0,
    build_C2,
    build_C2_subfamily,
    build_example101,
    build_fermat,
    build_huggins,
    build_klein,
    build_klein_four_even,
    build_quartic_abc,
    default_example101_params,
    generic_homology_params,
    howe_action,
    huggins_G,
    index_set,
    normalize_C2,
    random_binary_form,
    random_cyclo,
    subfamily_pattern,
)

i = zeta(4)
seeds = st.integers(0, 10**9)
L5 = BinaryForm.from_roots([1, -1, 2, -2, 3])


def test_index_set_examples():
    assert index_set(1, 3, 6) == {3}
    for d in range(4, 12):
        assert index_set(2, d - 1, d) == set()
        assert index_set(1, d, d) == set()


def test_index_set_cardinality():
    for d in range(4, 21):
        for n in range(2, d + 1):
            if d % n == 0:
                assert len(index_set(1, n, d)) == d // n - 1


def test_homology_builders():
    c = build_C1(5, 5, {5: L5})
    assert c.form == Z**5 + L5.to_ternary() and c.genus == 6
    c = build_C2(5, 4, {5: L5})
    assert c.form == Z**4 * Y + L5.to_ternary()
    L3 = BinaryForm(3, {(3, 0): 1, (0, 3): 2})
    c = build_C1(6, 3, {6: BinaryForm.from_roots(range(6)), 3: L3})
    assert c.form.coefficient((3, 0, 3)) == 1 and is_automorphism(diag(1, 1, zeta(3)), c.form)
    with pytest.raises(DegreeMismatch):
        build_C1(6, 3, {6: BinaryForm.from_roots(range(6)), 3: [1, 2]})
    with pytest.raises(RepeatedFactor):
        build_C1(5, 5, {5: BinaryForm.from_roots([1, 1, 2, 3, 4])})
    with pytest.raises(WrongDivisibility):
        build_C1(6, 4, {6: BinaryForm.from_roots(range(6))})
    with pytest.raises(WrongDivisibility):
        build_C1(6, 3, {6: BinaryForm.from_roots(range(6)), 2: [1, 0, 1]})
    with pytest.raises(BadDegree):
        build_C1(3, 3, {3: BinaryForm.from_roots(range(3))})


def test_c1_prime_variants():
    with pytest.raises(ConditionFailed):
        build_C1_prime(6, 3, {6: BinaryForm.from_roots(range(6))})
    c = build_C1_prime(6, 3, {6: BinaryForm.from_roots(range(6)), 3: [1, 0, 0, 1]})
    assert c.family == "C1_prime"
    c0 = build_C1_prime_0(5, L5)
    assert c0.n == 5


def test_subfamilies():
    c = build_C2_subfamily(3, 5, 2, {"a": {3: 2}})
    assert subfamily_pattern(c.form) == 3
    c = build_C2_subfamily(4, 5, 4, {"a": {3: 2}})
    assert subfamily_pattern(c.form) == 4
    # the X^(d-1) Y pattern with no Z-terms is divisible by Y
    with pytest.raises(ReducibleForm):
        build_C2_subfamily(5, 5, 4, {"a": {3: 1, 5: 1}})
    with pytest.raises(UnknownSubfamily):
        build_C2_subfamily(6, 5, 4, {})
    with pytest.raises(UnknownSubfamily):
        build_C2_subfamily(3, 5, 4, {"a": {5: 1}})


def test_huggins():
    inst, rep = build_huggins(1, 3, [1 + i, 2 + i, 3 + i])
    assert inst.d == 6 and rep.ok
    assert is_automorphism(diag(1, 1, zeta(6)), inst.form)
    assert proportional(act(inst.base_iso, inst.form), galois_form(inst.form)) is not None
    # purely imaginary a_i make the root set invariant under inversion
    with pytest.raises(ConditionFailed) as exc:
        build_huggins(1, 3, [i, 2 * i, 3 * i])
    assert exc.value.which == "swap"
    with pytest.raises(PreconditionViolated):
        build_huggins(1, 1, [1 + i])
    with pytest.raises(ConditionFailed) as exc:
        build_huggins(1, 4, [1 + i, 2 + i, 3 + i, 4 + i])
    assert exc.value.which == "parity"
    G = huggins_G(1, [1 + i])
    assert G == BinaryForm.from_roots([1 + i]) * BinaryForm(1, {(1, 0): 1, (0, 1): 1 / (1 - i)})


def test_example101():
    a, b = default_example101_params(2, 3)
    inst = build_example101(2, 3, a, b)
    assert (inst.d, inst.n) == (12, 6)
    assert inst.base_iso == monomial((1, 0, 2), (-1, 1, zeta(24, 2)))
    assert proportional(act(inst.base_iso, inst.form), galois_form(inst.form)) is not None
    assert is_automorphism(diag(1, 1, zeta(6)), inst.form)
    bad = list(b)
    bad[1] = bad[0]
    bad[-1] = 1
    with pytest.raises(ConditionFailed):
        build_example101(2, 3, a, bad)


def test_klein_four_families():
    q = build_quartic_abc(1, 3, 5)
    assert all(is_automorphism(g, q.form) for g in (diag(1, -1, 1), diag(1, 1, -1)))
    for triple in ((2, 1, 3), (1, 2, 3), (1, 1, 3)):
        with pytest.raises(ConditionFailed):
            build_quartic_abc(*triple)
    k = build_klein_four_even(6, {(1, 1, 1): 1})
    assert k.form.coefficient((2, 2, 2)) == 1
    with pytest.raises(OddDegree):
        build_klein_four_even(5, {})


def test_howe_actions():
    image, t = howe_action("g1", (1, 2, 3))
    assert image == (2, 1, 3)
    assert t == monomial((0, 2, 1))  # [X:Z:Y]
    image, t = howe_action("g3", (1, 2, 3))
    assert image == (-1, -2, 3)
    assert t in (diag(i, 1, 1), diag(-i, 1, 1))  # [iX:Y:Z] or its inverse
    twice, _ = howe_action("g4", howe_action("g4", (1, 3, 5))[0])
    assert twice == (1, 3, 5)
    for g in ("g1", "g2", "g3", "g4"):
        image, t = howe_action(g, (1, 3, 5))
        src = build_quartic_abc(1, 3, 5).form
        dst = X**4 + Y**4 + Z**4 + (X**2 * Y**2).scale(image[0]) + (X**2 * Z**2).scale(image[1]) + (Y**2 * Z**2).scale(image[2])
        assert proportional(act(t, src), dst) is not None
        assert all(x.conductor in (1, 4) for row in t.matrix for x in row)


def test_fermat_klein():
    assert build_fermat(4).form == X**4 + Y**4 + Z**4
    assert build_klein(5).form == X * Y**4 + Y * Z**4 + Z * X**4
    with pytest.raises(BadDegree):
        build_fermat(3)


def test_instance_json_round_trip():
    a, b = default_example101_params(2, 3)
    inst = build_example101(2, 3, a, b, seed=7)
    back = CurveFamilyInstance.from_json(inst.to_json())
    assert back.form == inst.form and back.base_iso == inst.base_iso and back.params == inst.params
    assert back.to_json() == inst.to_json()


# --- properties


@given(seeds, st.sampled_from([(5, 5, 1), (6, 3, 1), (6, 2, 1), (5, 4, 2), (7, 3, 2), (7, 2, 2)]))
def test_generic_homology_instances_admit_claimed_automorphism(seed, case):
    d, n, u = case
    L = generic_homology_params(u, d, n, seed)
    inst = (build_C1 if u == 1 else build_C2)(d, n, L, seed=seed)
    assert is_automorphism(diag(1, 1, zeta(n)), inst.form)
    assert inst.form.degree == d


@given(seeds, st.sampled_from([(5, 2), (5, 4), (6, 5), (7, 3), (7, 2)]))
def test_c2_normalisation_lands_in_one_pattern(seed, case):
    d, n = case
    rng = random.Random(seed)
    L = generic_homology_params(2, d, n, seed)
    try:
        inst = build_C2(d, n, L, seed=seed)
    except ConditionFailed:
        return
    s, t, g = normalize_C2(inst.form)
    assert subfamily_pattern(g) == s
    assert proportional(act(t, inst.form), g) is not None
    assert is_automorphism(diag(1, 1, zeta(n)), g)


@given(seeds)
def test_klein_four_even_admits_both_involutions(seed):
    rng = random.Random(seed)
    d = rng.choice((4, 6, 8))
    h = d // 2
    triples = [(s, t, h - s - t) for s in range(h) for t in range(h) if 0 <= h - s - t < h]
    alphas = {tr: random_cyclo(rng) for tr in rng.sample(triples, k=min(2, len(triples)))}
    inst = build_klein_four_even(d, alphas)
    assert is_automorphism(diag(1, -1, 1), inst.form) and is_automorphism(diag(1, 1, -1), inst.form)
