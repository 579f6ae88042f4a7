from itertools import permutations, product

import numpy as np
import pytest

from bstruct.core.errors import InputError, ResourceLimitError
from bstruct.core.settings import apply_settings
from bstruct.services.magma import enumerate_b_magmas
from bstruct.services.search import (
    SearchTask,
    permutation_images,
    search_b_magmas,
    search_lze,
    search_matrix_ybe,
    search_preunital,
    search_settheoretic_ybe,
)
from bstruct.services.tensorops import (
    FieldSpec,
    LegOperator,
    check_coxeter,
    check_hexagon,
    check_lze,
    compose_L,
    flip,
)


def braid_holds_on_pairs(img, n):
    """直接在三元组上比较 B₁₂B₂₃B₁₂ 与 B₂₃B₁₂B₂₃"""

    def b12(t):
        u, v = divmod(img[t[0] * n + t[1]], n)
        return (u, v, t[2])

    def b23(t):
        u, v = divmod(img[t[1] * n + t[2]], n)
        return (t[0], u, v)

    return all(b12(b23(b12(t))) == b23(b12(b23(t))) for t in product(range(n), repeat=3))


def ybe_holds_on_pairs(img, c):
    """L₁₂L₁₃L₂₃ = L₂₃L₁₃L₁₂（最右边先作用）"""

    def act(t, i, j):
        u, v = divmod(img[t[i] * c + t[j]], c)
        out = list(t)
        out[i], out[j] = u, v
        return tuple(out)

    def lhs(t):
        return act(act(act(t, 1, 2), 0, 2), 0, 1)

    def rhs(t):
        return act(act(act(t, 0, 1), 0, 2), 1, 2)

    return all(lhs(t) == rhs(t) for t in product(range(c), repeat=3))


def code_of(op):
    p = op.field.prime
    digits = [int(v) for v in op.entries.ravel()]
    return sum(d * p ** (len(digits) - 1 - e) for e, d in enumerate(digits))


class TestSetTheoretic:
    def test_single_point(self):
        result = search_settheoretic_ybe(1)
        assert [s.encoding["images"] for s in result.solutions] == [[0]]
        assert result.candidates_scanned == 1

    def test_two_points_against_direct_scan(self):
        result = search_settheoretic_ybe(2)
        expected = sorted(list(img) for img in permutations(range(4)) if braid_holds_on_pairs(img, 2))
        assert [s.encoding["images"] for s in result.solutions] == expected
        assert result.candidates_scanned == 24
        assert result.exhaustive
        assert [0, 2, 1, 3] in expected
        assert [0, 1, 2, 3] in expected

    def test_pairs_encoding(self):
        result = search_settheoretic_ybe(2)
        flip_solution = next(s for s in result.solutions if s.encoding["images"] == [0, 2, 1, 3])
        assert flip_solution.encoding["pairs"] == [[0, 0], [1, 0], [0, 1], [1, 1]]
        assert flip_solution.operators["B"] == flip(2, 2, FieldSpec(2))

    def test_refuses_large_sets(self):
        with pytest.raises(ResourceLimitError):
            search_settheoretic_ybe(4)


class TestMatrix:
    @pytest.fixture(scope="class")
    def f2_result(self):
        return search_matrix_ybe(FieldSpec(2), dim=2)

    def test_contains_identity_and_flip(self, f2_result):
        f2 = FieldSpec(2)
        codes = [s.encoding["code"] for s in f2_result.solutions]
        assert codes == sorted(codes)
        assert code_of(LegOperator.identity(f2, (2, 2))) in codes
        assert code_of(flip(2, 2, f2)) in codes
        assert f2_result.candidates_scanned == 2 ** 16

    def test_solutions_give_braid_actions(self, f2_result):
        for solution in f2_result.solutions[:10]:
            B = solution.operators["B"]
            assert code_of(B) == solution.encoding["code"]
            assert check_coxeter(B, 4)

    def test_non_solutions_fail(self, f2_result, rng):
        f2 = FieldSpec(2)
        found = {s.encoding["code"] for s in f2_result.solutions}
        checked = 0
        for code in rng.integers(0, 2 ** 16, size=400):
            code = int(code)
            if code in found:
                continue
            digits = [(code >> (15 - e)) & 1 for e in range(16)]
            op = LegOperator(f2, (2, 2), [digits[i * 4:(i + 1) * 4] for i in range(4)])
            if op.is_invertible():
                assert not check_hexagon(op)
                checked += 1
        assert checked > 0

    def test_refusals(self):
        with pytest.raises(InputError):
            search_matrix_ybe(FieldSpec.rationals())
        with pytest.raises(ResourceLimitError):
            search_matrix_ybe(FieldSpec(2), dim=3)


class TestPreunital:
    @pytest.mark.parametrize("prime", [2, 5, 7])
    def test_only_trivial_pair(self, prime):
        result = search_preunital(FieldSpec(prime))
        assert [s.encoding for s in result.solutions] == [{"B": 1, "C": 1}]
        assert result.candidates_scanned == (prime - 1) ** 2


class TestLZE:
    def test_trivial_dimensions(self):
        result = search_lze(FieldSpec(2), c=1, b=1)
        assert result.count == 1
        assert result.solutions[0].encoding == {"L": [0], "Z": [0]}

    def test_c2_b1_against_direct_scan(self):
        result = search_lze(FieldSpec(2), c=2, b=1)
        expected = sorted(list(img) for img in permutations(range(4)) if ybe_holds_on_pairs(img, 2))
        assert [s.encoding["L"] for s in result.solutions] == expected
        assert result.candidates_scanned == 1 + 24

    def test_c1_b2(self):
        result = search_lze(FieldSpec(2), c=1, b=2)
        encodings = [s.encoding for s in result.solutions]
        assert {"L": [0, 1], "Z": list(range(8))} in encodings
        assert encodings == sorted(encodings, key=lambda e: (e["Z"], e["L"]))
        for solution in result.solutions[:5]:
            assert check_lze(solution.operators["L"], solution.operators["Z"])

    def test_composition_stays_a_solution(self):
        result = search_lze(FieldSpec(2), c=2, b=1)
        Z = result.solutions[0].operators["Z"]
        ls = [s.operators["L"] for s in result.solutions[:4]]
        for L in ls:
            for L2 in ls:
                assert check_lze(compose_L(L, L2), Z)

    def test_composition_with_shared_nontrivial_z(self):
        result = search_lze(FieldSpec(2), c=1, b=2)
        by_z = {}
        for s in result.solutions:
            by_z.setdefault(tuple(s.encoding["Z"]), []).append(s)
        for group in list(by_z.values())[:6]:
            Z = group[0].operators["Z"]
            for first in group:
                for second in group:
                    assert check_lze(compose_L(first.operators["L"], second.operators["L"]), Z)

    def test_fixed_z(self):
        f2 = FieldSpec(2)
        result = search_lze(f2, c=2, b=2, z=LegOperator.identity(f2, (2, 2, 2)))
        assert result.restriction.endswith("with fixed Z")
        assert {"L": list(range(8)), "Z": list(range(8))} in [s.encoding for s in result.solutions]

    def test_fixed_z_must_be_permutation(self):
        f2, f5 = FieldSpec(2), FieldSpec(5)
        with pytest.raises(InputError):
            search_lze(f2, c=1, b=2, z=LegOperator.identity(f2, (1, 1, 1)))
        with pytest.raises(InputError):
            search_lze(f5, c=1, b=1, z=LegOperator.scalar(f5, 2, (1, 1, 1)))

    def test_cap_counts_found_tetrahedron_solutions(self):
        # 8! 个 Z 候选在上限内；RLLL 部分只按实际的 Z 个数计
        apply_settings(SEARCH_CANDIDATE_CAP=60_000)
        result = search_lze(FieldSpec(2), c=1, b=2)
        z_count = len({tuple(s.encoding["Z"]) for s in result.solutions})
        assert result.candidates_scanned == 40_320 + 2 * z_count

    def test_cap_refuses_before_tetrahedron_scan(self):
        apply_settings(SEARCH_CANDIDATE_CAP=1_000)
        with pytest.raises(ResourceLimitError):
            search_lze(FieldSpec(2), c=1, b=2)

    @pytest.mark.parametrize("c,b", [(1, 2), (2, 1)])
    def test_solutions_closed_under_basis_relabelling(self, c, b):
        f2 = FieldSpec(2)
        result = search_lze(f2, c=c, b=b)
        found = {(tuple(s.encoding["L"]), tuple(s.encoding["Z"])) for s in result.solutions}
        for g, h in product(permutations(range(c)), permutations(range(b))):
            G = LegOperator.permutation(f2, g, (c,))
            H = LegOperator.permutation(f2, h, (b,))
            on_l = G.tensor(G).tensor(H)
            on_z = H.tensor(H).tensor(H)
            for s in result.solutions:
                L = on_l @ s.operators["L"] @ on_l.inverse()
                Z = on_z @ s.operators["Z"] @ on_z.inverse()
                assert (tuple(permutation_images(L)), tuple(permutation_images(Z))) in found

    def test_worker_count_does_not_change_output(self):
        single = search_lze(FieldSpec(2), c=1, b=2, threads=1)
        pooled = search_lze(FieldSpec(2), c=1, b=2, threads=4)
        assert [s.encoding for s in single.solutions] == [s.encoding for s in pooled.solutions]
        assert single.candidates_scanned == pooled.candidates_scanned


class TestMisc:
    def test_b_magma_search(self):
        result = search_b_magmas(2, up_to_iso=False)
        assert result.count == len(enumerate_b_magmas(2))
        assert result.candidates_scanned == 16
        assert result.summary()["count"] == result.count

    def test_unknown_kind(self):
        with pytest.raises(InputError):
            SearchTask("graph_coloring")

    def test_permutation_images(self):
        f2 = FieldSpec(2)
        assert permutation_images(flip(2, 2, f2)) == [0, 2, 1, 3]
        assert permutation_images(LegOperator(f2, (2,), [[1, 1], [0, 1]])) is None
        assert permutation_images(LegOperator(FieldSpec(5), (2,), np.array([[2, 0], [0, 1]]))) is None
