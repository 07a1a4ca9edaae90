import pytest

from maxdet.bounds import barba_bound_sq, bound_for, ew_bound, hadamard_bound_sq
from maxdet.circulant import CirculantPair, paf
from maxdet.constructions import border_gram_det, two_circulant_border
from maxdet.linalg import ZMatrix, det_exact, gram
from maxdet.search import (
    InfeasibleOrder,
    block_arrangement_partition,
    circulant_pair_search,
    exhaustive_maxdet,
    gamma_oracle,
    gamma_search,
    naive_maxdet,
    pairs_by_class,
    row_sum_classes,
)
from maxdet.verify import verify

MAXDETS = {1: 1, 2: 2, 3: 4, 4: 16, 5: 48, 6: 160}


class TestExhaustive:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_values(self, n):
        result = exhaustive_maxdet(n)
        assert result.max_det == MAXDETS[n]
        assert result.witnesses
        for W in result.witnesses:
            assert abs(det_exact(W)) == result.max_det
            assert W.row(0) == (1,) * n

    @pytest.mark.parametrize("n", range(1, 6))
    def test_against_naive(self, n):
        assert exhaustive_maxdet(n).max_det == naive_maxdet(n)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_pruning_is_exact(self, n):
        a, b = exhaustive_maxdet(n, prune=True), exhaustive_maxdet(n, prune=False)
        assert a.max_det == b.max_det
        assert a.nodes_visited <= b.nodes_visited

    @pytest.mark.slow
    def test_order_seven_unpruned(self):
        pruned, full = exhaustive_maxdet(7), exhaustive_maxdet(7, prune=False)
        assert pruned.max_det == full.max_det == 576
        assert pruned.nodes_visited < full.nodes_visited

    def test_against_bounds(self):
        assert MAXDETS[4] ** 2 == hadamard_bound_sq(4)
        assert MAXDETS[5] ** 2 == barba_bound_sq(5)
        assert MAXDETS[6] == ew_bound(6)
        assert MAXDETS[3] ** 2 < barba_bound_sq(3)

    def test_range(self):
        with pytest.raises(ValueError):
            exhaustive_maxdet(8)
        with pytest.raises(ValueError):
            exhaustive_maxdet(0)
        with pytest.raises(ValueError):
            naive_maxdet(6)


class TestPairs:
    def test_trivial(self):
        assert CirculantPair((1,), (1,)) in circulant_pair_search(1, "all")
        assert all(p.is_valid() for p in circulant_pair_search(1, "all"))

    def test_classes(self):
        assert (7, 1) in row_sum_classes(13) and (-5, 5) in row_sum_classes(13)
        for k in range(1, 16):
            for r, s in row_sum_classes(k):
                assert r * r + s * s == 4 * k - 2

    @pytest.mark.parametrize("k", [1, 3, 5, 7, 9, 13, 15])
    def test_pairs_valid(self, k):
        for pair in circulant_pair_search(k):
            assert pair.is_valid()
            R, S = pair.R(), pair.S()
            J = ZMatrix([[1] * k for _ in range(k)])
            assert R @ R.T + S @ S.T == ZMatrix.scalar(k, 2 * k - 2) + J * 2

    def test_k13_classes(self):
        labels = {tuple(sorted((abs(p.r), abs(p.s)), reverse=True)) for p in circulant_pair_search(13)}
        assert (7, 1) in labels

    def test_k15_classes(self):
        labels = {tuple(sorted((abs(p.r), abs(p.s)), reverse=True)) for p in circulant_pair_search(15)}
        assert (7, 3) in labels

    def test_infeasible(self):
        with pytest.raises(InfeasibleOrder) as info:
            circulant_pair_search(8)
        assert "30" in info.value.witness
        for k in range(2, 16, 2):
            with pytest.raises(InfeasibleOrder):
                circulant_pair_search(k)
        with pytest.raises(InfeasibleOrder):
            circulant_pair_search(11)

    def test_cap(self):
        with pytest.raises(ValueError):
            circulant_pair_search(17)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            circulant_pair_search(3, "some")

    def test_sorted_and_first_per_class(self):
        first = circulant_pair_search(9)
        every = circulant_pair_search(9, "all")
        assert every == sorted(every)
        groups = pairs_by_class(every)
        assert first == sorted(min(g) for g in groups.values())

    def test_all_against_brute_force(self):
        import itertools

        k = 5
        rows = list(itertools.product((1, -1), repeat=k))
        expected = sorted(
            (a, b) for a in rows for b in rows
            if all(x + y == 2 for x, y in zip(paf(a), paf(b)))
        )
        found = [(p.first_row_R, p.first_row_S) for p in circulant_pair_search(k, "all")]
        assert found == expected

    def test_deterministic_across_workers(self):
        a = circulant_pair_search(13, "all")
        b = circulant_pair_search(13, "all", workers=3)
        assert a == b

    @pytest.mark.parametrize("k", [3, 5, 7, 13])
    def test_assembled_pairs_verify(self, k):
        for pair in circulant_pair_search(k):
            c = two_circulant_border(pair)
            r = verify(c.matrix, c)
            assert r.det_sq == border_gram_det(k, c.certificate.parameters["r"])
            assert r.det_sq == det_exact(gram(c.matrix))


class TestGamma:
    @pytest.mark.parametrize("n, values", [(7, [7, 48, 320, 2048, 12288]), (11, [11, 120, 1296, 13824, 145152])])
    def test_growth(self, n, values):
        got = [gamma_oracle(n, m) for m in range(1, 6)]
        assert got == values
        assert got[0] == n and got[1] == n * n - 1
        for a, b in zip(got, got[1:]):
            assert b > (n - 3) * a

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_block_arrangement_attains(self, m):
        result = gamma_search(7, m, (-5, -1, 3))
        assert result.value == gamma_oracle(7, m)
        assert any(block_arrangement_partition(A) is not None for A in result.argmax)

    def test_wide_set_at_five(self):
        wide = gamma_search(7, 5, (-5, -1, 3))
        assert wide.value == 25344
        assert all(block_arrangement_partition(A) is None for A in wide.argmax)
        definite = gamma_search(7, 5, (-5, -1, 3), positive_definite=True)
        assert definite.value == 12288
        assert any(block_arrangement_partition(A) is not None for A in definite.argmax)

    def test_entry_set_checked(self):
        with pytest.raises(ValueError):
            gamma_oracle(7, 3, (-1, 1))
        with pytest.raises(ValueError):
            gamma_oracle(7, 3, (-9, 3))

    def test_guard(self):
        with pytest.raises(ValueError):
            gamma_oracle(11, 8, (-9, -5, -1, 3, 7))

    def test_partition_reader(self):
        from maxdet.constructions import block_arrangement

        assert block_arrangement_partition(block_arrangement(7, (3, 1, 1))).parts == (3, 1, 1)
        assert block_arrangement_partition(ZMatrix([[7, 3, 3], [3, 7, -1], [3, -1, 7]])) is None
