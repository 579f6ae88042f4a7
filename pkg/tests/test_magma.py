from itertools import permutations, product

import pytest

from bstruct.core.errors import DimensionMismatchError, InputError, ResourceLimitError
from bstruct.core.settings import apply_settings
from bstruct.services.magma import (
    MagmaMap,
    MagmaTable,
    are_isomorphic,
    automorphisms,
    canonical_form,
    check_associative,
    check_b_axiom,
    check_commutative,
    compose_maps,
    enumerate_b_magmas,
    idempotents,
    is_abelian_group,
    is_homomorphism,
    left_units,
    relabel,
    right_units,
)


def naive_is_b(table):
    n = len(table)
    return all(
        table[x][table[y][z]] == table[y][table[x][z]]
        for x in range(n) for y in range(n) for z in range(n)
    )


def naive_b_tables(n):
    found = []
    for flat in product(range(n), repeat=n * n):
        table = tuple(tuple(flat[r * n:(r + 1) * n]) for r in range(n))
        if naive_is_b(table):
            found.append(table)
    return sorted(found)


def naive_isomorphic(s, t):
    """直接扫描全部置换 σ，检查 σ(xy) = σ(x)σ(y)"""
    n = len(s)
    if n != len(t):
        return False
    return any(
        all(p[s[x][y]] == t[p[x]][p[y]] for x in range(n) for y in range(n))
        for p in permutations(range(n))
    )


def commuting_left_actions(n):
    """以 0 为右单位元的 b-代数：左乘映射两两交换且 L_x(0) = x"""
    maps = list(product(range(n), repeat=n))
    by_unit = [[f for f in maps if f[0] == x] for x in range(n)]

    def commute(f, g):
        return all(f[g[i]] == g[f[i]] for i in range(n))

    def extend(chosen):
        if len(chosen) == n:
            yield tuple(chosen)
            return
        for f in by_unit[len(chosen)]:
            if all(commute(f, g) for g in chosen):
                yield from extend(chosen + [f])

    return [MagmaTable(rows) for rows in extend([])]


class TestAxioms:
    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_cyclic_groups_are_b(self, n):
        t = MagmaTable.cyclic_group(n)
        assert check_b_axiom(t)
        assert check_commutative(t) and check_associative(t)
        assert is_abelian_group(t)

    def test_right_projection_is_b_left_projection_is_not(self):
        assert check_b_axiom(MagmaTable.right_projection(3))
        assert not check_b_axiom(MagmaTable.left_projection(2))

    def test_non_b_table(self):
        # 0·(1·0) = 0·1 = 1，1·(0·0) = 1·1 = 0
        t = MagmaTable([[1, 1], [0, 0]])
        assert not check_b_axiom(t)
        assert not t.validated_b

    def test_units_and_idempotents(self, z3):
        assert right_units(z3) == [0]
        assert left_units(z3) == [0]
        assert idempotents(z3) == [0]
        rp = MagmaTable.right_projection(3)
        assert right_units(rp) == []
        assert left_units(rp) == [0, 1, 2]
        assert idempotents(rp) == [0, 1, 2]

    def test_abelian_group_detection(self):
        assert not is_abelian_group(MagmaTable.right_projection(2))
        # 交换结合但无逆元
        assert not is_abelian_group(MagmaTable([[0, 0], [0, 1]]))


class TestValidation:
    def test_entry_out_of_range_reports_field(self):
        with pytest.raises(InputError) as info:
            MagmaTable([[0, 2], [1, 0]])
        assert info.value.field == "table[0][1]"

    def test_ragged_table(self):
        with pytest.raises(InputError):
            MagmaTable([[0, 1], [1]])

    def test_empty_table(self):
        with pytest.raises(InputError):
            MagmaTable([])

    def test_map_length_mismatch(self, z2, z3):
        with pytest.raises(DimensionMismatchError):
            MagmaMap(z2, z3, (0, 1, 2))


class TestMaps:
    def test_reduction_mod_two_is_homomorphism(self, z2):
        z4 = MagmaTable.cyclic_group(4)
        f = MagmaMap(z4, z2, (0, 1, 0, 1))
        assert is_homomorphism(f)
        assert f.validated_hom

    def test_swap_on_z2_is_not_homomorphism(self, z2):
        assert not is_homomorphism(MagmaMap(z2, z2, (1, 0)))

    def test_composition(self, z2):
        z4 = MagmaTable.cyclic_group(4)
        neg = MagmaMap(z4, z4, (0, 3, 2, 1))
        red = MagmaMap(z4, z2, (0, 1, 0, 1))
        composite = compose_maps(red, neg)
        assert composite.map == (0, 1, 0, 1)
        assert is_homomorphism(composite)

    def test_composition_rejects_mismatch(self, z2, z3):
        with pytest.raises(DimensionMismatchError):
            compose_maps(MagmaMap.identity(z3), MagmaMap.identity(z2))


class TestAutomorphisms:
    def test_z2_has_only_identity(self, z2):
        assert automorphisms(z2) == [(0, 1)]

    def test_z3(self, z3):
        assert automorphisms(z3) == [(0, 1, 2), (0, 2, 1)]

    def test_right_projection_is_fully_symmetric(self):
        assert len(automorphisms(MagmaTable.right_projection(3))) == 6

    @pytest.mark.parametrize("n", [2, 3])
    def test_group_closure(self, n):
        for t in enumerate_b_magmas(n, up_to_iso=True):
            auts = set(automorphisms(t))
            assert tuple(range(n)) in auts
            for f in auts:
                inverse = tuple(sorted(range(n), key=lambda x: f[x]))
                assert inverse in auts
                for g in auts:
                    assert tuple(f[g[x]] for x in range(n)) in auts

    def test_scan_limit_refuses(self, z3):
        apply_settings(AUTOMORPHISM_SCAN_LIMIT=2)
        with pytest.raises(ResourceLimitError):
            automorphisms(z3)


class TestIsomorphism:
    def test_relabel_is_isomorphic(self):
        t = MagmaTable([[1, 1, 2], [1, 1, 2], [0, 1, 2]])
        for perm in permutations(range(3)):
            assert are_isomorphic(t, relabel(t, perm))

    def test_canonical_form_is_minimal(self):
        t = MagmaTable.cyclic_group(3)
        canon = canonical_form(t)
        for perm in permutations(range(3)):
            assert canon.table <= relabel(t, perm).table

    def test_different_sizes(self, z2, z3):
        assert not are_isomorphic(z2, z3)

    def test_agrees_with_direct_permutation_scan(self, rng):
        tables = enumerate_b_magmas(3)
        picks = [tables[int(i)] for i in rng.choice(len(tables), size=30, replace=False)]
        picks += [relabel(picks[0], (2, 0, 1)), relabel(picks[1], (1, 0, 2))]
        for s in picks:
            for t in picks:
                direct = naive_isomorphic(s.table, t.table)
                assert are_isomorphic(s, t) == direct
                assert (canonical_form(s) == canonical_form(t)) == direct


class TestRightUnital:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_enumerated_right_unital_are_commutative_monoids(self, n):
        unital = [t for t in enumerate_b_magmas(n) if right_units(t)]
        assert unital
        for t in unital:
            assert check_commutative(t) and check_associative(t)

    def test_construction_matches_enumeration(self):
        expected = [t for t in enumerate_b_magmas(3) if 0 in right_units(t)]
        assert sorted(t.table for t in commuting_left_actions(3)) == [t.table for t in expected]

    def test_size_four(self):
        tables = commuting_left_actions(4)
        assert MagmaTable.cyclic_group(4) in tables
        for t in tables:
            assert check_b_axiom(t)
            assert 0 in right_units(t)
            assert check_commutative(t) and check_associative(t)


class TestEnumeration:
    def test_single_point(self):
        assert [t.table for t in enumerate_b_magmas(1)] == [((0,),)]

    @pytest.mark.parametrize("n", [2, 3])
    def test_matches_naive_scan(self, n):
        assert [t.table for t in enumerate_b_magmas(n)] == naive_b_tables(n)

    def test_up_to_iso_matches_naive_classes(self):
        classes = []
        for t in naive_b_tables(3):
            for members in classes:
                if naive_isomorphic(members[0], t):
                    members.append(t)
                    break
            else:
                classes.append([t])
        expected = sorted(min(members) for members in classes)
        assert [t.table for t in enumerate_b_magmas(3, up_to_iso=True)] == expected

    def test_worker_count_does_not_change_result(self):
        assert enumerate_b_magmas(3, threads=1) == enumerate_b_magmas(3, threads=4)

    def test_rejects_non_positive(self):
        with pytest.raises(InputError):
            enumerate_b_magmas(0)
