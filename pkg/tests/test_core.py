import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from omlink.core import (Chirotope, CircuitSet, DomainError, FormatError, SignedSet, basis_rank,
                         chi_eval, circuits_from_chirotope, classify_partition, flip, is_acyclic,
                         parse_chirotope, validate_circuit_axioms, _eliminate_loop)
from omlink.geometry import chirotope_from_points, radon_partition, random_general_position
from omlink.reorient import reorient_circuit_set

S = SignedSet
F = frozenset

# Orientation determinants of the tetrahedron-plus-interior configuration,
# expanded by hand: +216, +36, -36, +36, -108 in lexicographic order.
TETRA_STRING = "++-+-"


def test_parse_chirotope_examples():
    chi = parse_chirotope(TETRA_STRING, 5, 4)
    assert chi.signs == (1, 1, -1, 1, -1)
    assert str(parse_chirotope("-----", 5, 4)) == "+++++"


def test_parse_chirotope_errors():
    with pytest.raises(FormatError, match="126"):
        parse_chirotope("+" * 125, 9, 4)
    with pytest.raises(FormatError, match="position 3"):
        parse_chirotope("++x+-", 5, 4)


@given(st.text(alphabet="+-", min_size=5, max_size=5))
def test_canonical_form(s):
    chi = parse_chirotope(s, 5, 4)
    assert str(chi)[0] == "+"
    assert parse_chirotope(str(chi), 5, 4) == chi
    assert parse_chirotope(flip(s), 5, 4) == chi


def test_basis_rank():
    assert basis_rank({1, 2, 3, 4}, 9) == 1
    assert basis_rank({6, 7, 8, 9}, 9) == 126
    assert basis_rank({1, 2, 3, 5}, 9) == 2
    ranks = [basis_rank(c, 9) for c in itertools.combinations(range(1, 10), 4)]
    assert ranks == list(range(1, 127))
    with pytest.raises(DomainError):
        basis_rank({1, 2, 3}, 9, 4)
    with pytest.raises(DomainError):
        basis_rank({1, 2, 3, 10}, 9)


def test_chi_eval_examples():
    chi = parse_chirotope(TETRA_STRING, 5, 4)
    assert chi_eval(chi, (1, 2, 3, 4)) == 1
    assert chi_eval(chi, (2, 1, 3, 4)) == -1
    assert chi_eval(chi, (1, 2, 4, 5)) == -1
    with pytest.raises(DomainError):
        chi_eval(chi, (1, 1, 3, 4))


@given(st.integers(0, 2**126 - 1), st.permutations(range(1, 10)))
def test_chi_eval_alternating(bits, perm):
    chi = Chirotope(9, 4, bits)
    t = tuple(perm[:4])
    swapped = (t[1], t[0]) + t[2:]
    assert chi_eval(chi, swapped) == -chi_eval(chi, t)
    cyc = (t[1], t[2], t[0], t[3])  # 3-cycle: even
    assert chi_eval(chi, cyc) == chi_eval(chi, t)


def test_circuits_from_chirotope_hand_example():
    cs = circuits_from_chirotope(parse_chirotope(TETRA_STRING, 5, 4))
    assert list(cs) == [S({5}, {1, 2, 3, 4})]


def test_circuit_count_n9():
    chi = chirotope_from_points(random_general_position(9, 0))
    cs = circuits_from_chirotope(chi)
    assert len(cs) == comb(9, 5) == 126
    for key, c in cs.circuits.items():
        assert c.underlying == key


def test_eq1_matches_radon():
    config = random_general_position(8, 11)
    cs = circuits_from_chirotope(chirotope_from_points(config))
    for c in itertools.combinations(range(1, 9), 5):
        radon = radon_partition(config.labelled(c), c).circuit
        assert cs.circuit(c) in (radon, -radon)


def test_classify_partition():
    assert classify_partition(S({5}, {1, 2, 3, 4})) == (4, 1)
    assert classify_partition(S({1, 2, 3}, {4, 5})) == (3, 2)
    assert classify_partition(S(set(), {1, 2, 3, 4, 5})) == (5, 0)


@given(st.sets(st.integers(1, 9), min_size=5, max_size=5), st.integers(0, 31))
def test_classify_partition_negation_invariant(support, bits):
    elems = sorted(support)
    pos = {e for i, e in enumerate(elems) if bits >> i & 1}
    c = S(pos, set(elems) - pos)
    assert classify_partition(c) == classify_partition(-c)


def test_signed_set_disjoint():
    with pytest.raises(DomainError):
        S({1, 2}, {2, 3})
    assert -S({1}, {2}) == S({2}, {1})
    assert S.parse(str(S({1, 2, 3}, {4, 5}))) == S({1, 2, 3}, {4, 5})


def test_validate_passes_on_derived():
    for seed in range(5):
        cs = circuits_from_chirotope(chirotope_from_points(random_general_position(9, seed)))
        assert validate_circuit_axioms(cs)


def test_validate_n5_mutation_is_still_an_oriented_matroid():
    # With one circuit there is nothing to eliminate against: moving 3 to the
    # positive side gives ({3,5},{1,2,4}), which is again a valid (and
    # realizable) matroid, so the validator must accept it.
    cs = circuits_from_chirotope(parse_chirotope(TETRA_STRING, 5, 4))
    mutated = cs.replace({1, 2, 3, 4, 5}, S({3, 5}, {1, 2, 4}))
    assert validate_circuit_axioms(mutated)
    pts = ((1, 0, 0), (-1, 1, 0), (0, 0, 2), (-1, -1, 0), (0, 0, -2))
    radon = radon_partition(pts).circuit
    assert radon in (S({3, 5}, {1, 2, 4}), S({1, 2, 4}, {3, 5}))


def test_validate_detects_n9_mutation():
    cs = circuits_from_chirotope(chirotope_from_points(random_general_position(9, 1)))
    c = cs.circuit({1, 2, 3, 4, 5})
    p, q = set(c.positive), set(c.negative)
    if 3 in q:
        q.remove(3); p.add(3)
    else:
        p.remove(3); q.add(3)
    rep = validate_circuit_axioms(cs.replace({1, 2, 3, 4, 5}, S(p, q)))
    assert not rep and rep.axiom == "weak elimination"


def test_validate_missing_and_malformed():
    rep = validate_circuit_axioms(CircuitSet(6, 4, {}))
    assert not rep and rep.axiom == "uniformity"
    cs = circuits_from_chirotope(chirotope_from_points(random_general_position(6, 2)))
    extra = CircuitSet.from_circuits(6, 4, list(cs) + [S({1, 2}, {3, 4})])
    rep = validate_circuit_axioms(extra)
    assert not rep and rep.axiom == "incomparability"
    bad_key = CircuitSet(6, 4, {**cs.table, 0b11111: (0b00011, 0b01100)})
    assert validate_circuit_axioms(bad_key).axiom == "storage"
    empty = CircuitSet(6, 4, {**cs.table, 0b11111: (0, 0)})
    assert validate_circuit_axioms(empty).axiom == "symmetry"


def test_vectorized_and_loop_elimination_agree():
    import random
    rng = random.Random(7)
    cs = circuits_from_chirotope(chirotope_from_points(random_general_position(9, 4)))
    assert bool(_eliminate_loop(cs.table, 4))
    for _ in range(40):
        table = dict(cs.table)
        for _ in range(rng.randint(1, 3)):
            key = rng.choice(sorted(table))
            e = 1 << rng.choice([i for i in range(9) if key >> i & 1])
            p, q = table[key]
            table[key] = (p ^ e, q ^ e)
        mutated = CircuitSet(9, 4, table)
        assert bool(validate_circuit_axioms(mutated)) == bool(_eliminate_loop(table, 4))


def test_is_acyclic():
    cs = circuits_from_chirotope(parse_chirotope(TETRA_STRING, 5, 4))
    assert is_acyclic(cs)
    assert not is_acyclic(reorient_circuit_set(cs, {5}))
    for seed in range(5):
        assert is_acyclic(circuits_from_chirotope(
            chirotope_from_points(random_general_position(9, seed))))


def test_symmetry_storage_is_lossless():
    cs = circuits_from_chirotope(chirotope_from_points(random_general_position(9, 5)))
    negated = CircuitSet(9, 4, {k: (q, p) for k, (p, q) in cs.table.items()})
    assert cs.same_matroid(negated)
    assert validate_circuit_axioms(negated)


def test_reoriented_chirotope_matches_reoriented_circuits():
    chi = chirotope_from_points(random_general_position(9, 6))
    a = {2, 5, 7}
    assert circuits_from_chirotope(chi.reoriented(a)).same_matroid(
        reorient_circuit_set(circuits_from_chirotope(chi), a))
