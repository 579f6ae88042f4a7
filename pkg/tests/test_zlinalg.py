from fractions import Fraction
from itertools import product

import pytest

from bstruct.core.errors import DimensionMismatchError, InputError
from bstruct.services.zlinalg import (
    AbelianGroup,
    ExactMatrix,
    Ring,
    determinant,
    howell_form,
    kernel_mod,
    quotient_invariants,
    smith_normal_form,
    solve_in_span,
    verify_smith,
)


def span_mod(rows, m):
    """行生成的 Z/m 子模（暴力闭包）"""
    width = len(rows[0])
    found = {(0,) * width}
    frontier = list(found)
    while frontier:
        nxt = []
        for v in frontier:
            for r in rows:
                w = tuple((a + b) % m for a, b in zip(v, r))
                if w not in found:
                    found.add(w)
                    nxt.append(w)
        frontier = nxt
    return found


class TestGroups:
    def test_element_reduction(self):
        g = AbelianGroup((2, 0))
        e = g.element((3, -5))
        assert e.coords == (1, -5)
        assert (e + e).coords == (0, -10)
        assert (-e).coords == (1, 5)

    def test_order(self):
        assert AbelianGroup((2, 3)).order == 6
        assert AbelianGroup((2, 0)).order is None
        assert len(list(AbelianGroup((2, 2)).elements())) == 4

    def test_negative_modulus(self):
        with pytest.raises(InputError):
            AbelianGroup((-1,))

    def test_ring_mod_zero_is_integers(self):
        assert Ring.mod(0) == Ring.integers()
        assert Ring.mod(4).label == "Z/4"


class TestSmith:
    M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]

    def test_known_invariants(self):
        form = smith_normal_form(ExactMatrix(self.M))
        assert form.invariants == [2, 6, 12]
        verify_smith(ExactMatrix(self.M), form)

    def test_product_identity(self):
        M = ExactMatrix(self.M)
        form = smith_normal_form(M)
        assert form.U @ M @ form.V == form.D
        assert abs(determinant(form.U)) == 1
        assert abs(determinant(form.V)) == 1

    def test_rectangular_and_rank_deficient(self):
        M = ExactMatrix([[1, 2, 3], [2, 4, 6]])
        form = smith_normal_form(M)
        assert form.rank == 1
        assert form.diagonal == [1, 0]

    def test_determinant(self):
        assert determinant(ExactMatrix(self.M)) == -144
        assert determinant(ExactMatrix([[0, 1], [1, 0]])) == -1
        assert determinant(ExactMatrix([[1, 2], [2, 4]])) == 0


class TestHowell:
    def test_single_row_mod_four(self):
        H = howell_form(ExactMatrix([[2]], Ring.mod(4)))
        assert H.to_rows() == [[2]]

    def test_span_is_preserved(self):
        rows = [[2, 1, 0], [0, 2, 2], [1, 3, 1]]
        H = howell_form(ExactMatrix(rows, Ring.mod(4)))
        assert span_mod(H.to_rows(), 4) == span_mod(rows, 4)

    @pytest.mark.parametrize("m,shape", [(6, (3, 4)), (8, (4, 3)), (12, (5, 3)), (6, (4, 4))])
    def test_idempotent_and_span_preserving(self, rng, m, shape):
        rows = rng.integers(0, m, size=shape).tolist()
        H = howell_form(ExactMatrix(rows, Ring.mod(m)))
        assert howell_form(H).to_rows() == H.to_rows()
        assert span_mod(H.to_rows(), m) == span_mod(rows, m)

    def test_rejects_integers(self):
        with pytest.raises(InputError):
            howell_form(ExactMatrix([[2]]))


class TestSolve:
    def test_mod_solvable_and_not(self):
        M = ExactMatrix([[2]], Ring.mod(4))
        assert solve_in_span(M, [2]) is not None
        assert solve_in_span(M, [1]) is None

    def test_mod_exhaustive_agreement(self):
        rows = [[2, 1], [0, 2]]
        M = ExactMatrix(rows, Ring.mod(4))
        reachable = span_mod(rows, 4)
        for v in product(range(4), repeat=2):
            x = solve_in_span(M, list(v))
            assert (x is not None) == (v in reachable)

    def test_random_four_by_four_mod_six(self, rng):
        for _ in range(2):
            rows = rng.integers(0, 6, size=(4, 4)).tolist()
            M = ExactMatrix(rows, Ring.mod(6))
            reachable = span_mod(rows, 6)
            for v in product(range(6), repeat=4):
                x = solve_in_span(M, list(v))
                assert (x is not None) == (v in reachable)
                if x is not None:
                    back = [sum(int(x[i]) * rows[i][j] for i in range(4)) % 6 for j in range(4)]
                    assert tuple(back) == v

    def test_integers(self):
        M = ExactMatrix([[2, 0], [0, 3]])
        assert solve_in_span(M, [4, 9]) == [2, 3]
        assert solve_in_span(M, [1, 0]) is None

    def test_rationals(self):
        M = ExactMatrix([[2, 0], [0, 3]], Ring.rationals())
        assert solve_in_span(M, [1, 1]) == [Fraction(1, 2), Fraction(1, 3)]
        singular = ExactMatrix([[1, 1], [2, 2]], Ring.rationals())
        assert solve_in_span(singular, [1, 0]) is None

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            solve_in_span(ExactMatrix([[1, 0]]), [1])


class TestKernelAndQuotient:
    def test_kernel_mod_four(self):
        K = kernel_mod(ExactMatrix([[2]]), 4)
        assert span_mod(K.to_rows(), 4) == {(0,), (2,)}

    def test_kernel_mod_exhaustive(self):
        M = ExactMatrix([[1, 2], [3, 0], [1, 0]])
        m = 6
        expected = {
            x for x in product(range(m), repeat=3)
            if all(sum(x[i] * M.data[i, j] for i in range(3)) % m == 0 for j in range(2))
        }
        assert span_mod(kernel_mod(M, m).to_rows(), m) == expected

    def test_cyclic_kernel_trivial_image(self):
        q = quotient_invariants(ExactMatrix([[1]]), ExactMatrix([], cols=1), AbelianGroup((2,)))
        assert q.invariants == [2]

    def test_integer_quotient(self):
        q = quotient_invariants(ExactMatrix([[1]]), ExactMatrix([[2]]), AbelianGroup((0,)))
        assert q.invariants == [2]
        assert q.coordinates([3]) == (1,)

    def test_rank_two_over_z4_matches_coset_count(self):
        kernel = [[1, 0], [0, 1]]
        image = [[2, 0]]
        q = quotient_invariants(ExactMatrix(kernel), ExactMatrix(image), AbelianGroup((4,)))
        cosets = len(span_mod(kernel, 4)) // len(span_mod(image, 4))
        assert q.order == cosets == 8
        assert sorted(q.invariants) == [2, 4]

    def test_coordinates_respect_cosets(self):
        q = quotient_invariants(ExactMatrix([[1, 0], [0, 1]]), ExactMatrix([[2, 0]]), AbelianGroup((4,)))
        assert q.coordinates([2, 0]) == tuple(0 for _ in q.invariants)
        assert q.coordinates([1, 1]) == q.coordinates([3, 1])
        assert q.coordinates([1, 1]) != q.coordinates([1, 2])
        for rep in q.representatives:
            assert any(c != 0 for c in q.coordinates(rep))
