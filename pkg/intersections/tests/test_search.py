import itertools
from collections import defaultdict

from django.test import SimpleTestCase, override_settings

from intersections.invariants import Multidegree, sullivan_data
from intersections.records import collision_report_record, dumps
from intersections.search import (
    EnumerationLimitExceeded,
    SearchSpec,
    SearchSpecError,
    enumerate_multidegrees,
    find_collisions,
    order_key,
    sd_digest,
    verify_pair,
)


def naive_space(max_degree, max_k):
    """Todos los multigrados canónicos con a lo sumo max_k grados en 2..max_degree."""
    found = {()}
    for size in range(1, max_k + 1):
        for degrees in itertools.product(range(2, max_degree + 1), repeat=size):
            found.add(tuple(sorted(degrees, reverse=True)))
    return found


def naive_collisions(n, max_degree, max_k):
    groups = defaultdict(list)
    for degrees in naive_space(max_degree, max_k):
        md = Multidegree(degrees or (1,))
        groups[sullivan_data(n, md)].append(degrees)
    return {
        frozenset(pair)
        for members in groups.values()
        for pair in itertools.combinations(members, 2)
    }


class SearchSpecTests(SimpleTestCase):

    def test_validation(self):
        with self.assertRaises(SearchSpecError):
            SearchSpec(n=2, max_degree=4)
        with self.assertRaises(SearchSpecError):
            SearchSpec(n=4)
        with self.assertRaises(SearchSpecError):
            SearchSpec(n=4, max_degree=4, max_k=0)
        with self.assertRaises(SearchSpecError):
            SearchSpec(n=4, max_degree=4, shard_count=0)

    def test_target_caps_degrees(self):
        self.assertEqual(SearchSpec(n=4, total_degree_target=8).degree_cap, 8)
        self.assertEqual(SearchSpec(n=4, max_degree=3, total_degree_target=8).degree_cap, 3)


class EnumerationTests(SimpleTestCase):

    def test_matches_naive_generator(self):
        for max_degree in range(1, 7):
            for max_k in range(1, 4):
                spec = SearchSpec(n=4, max_degree=max_degree, max_k=max_k)
                enumerated = [md.canonical_degrees for md in enumerate_multidegrees(spec)]
                with self.subTest(max_degree=max_degree, max_k=max_k):
                    self.assertEqual(len(enumerated), len(set(enumerated)))
                    self.assertEqual(set(enumerated), naive_space(max_degree, max_k))
                    self.assertEqual(enumerated, sorted(enumerated, key=order_key))

    def test_total_degree_target(self):
        spec = SearchSpec(n=4, total_degree_target=8, max_k=3)
        self.assertEqual([md.label for md in enumerate_multidegrees(spec)], ["8", "4,2", "2^3"])
        spec = SearchSpec(n=3, total_degree_target=12, max_k=2)
        self.assertEqual([md.label for md in enumerate_multidegrees(spec)], ["12", "6,2", "4,3"])
        spec = SearchSpec(n=3, total_degree_target=1, max_k=2)
        self.assertEqual([md.label for md in enumerate_multidegrees(spec)], ["1"])

    def test_shards_partition_the_space(self):
        spec = SearchSpec(n=4, max_degree=6, max_k=3, shard_count=3)
        full = list(enumerate_multidegrees(spec))
        parts = [list(enumerate_multidegrees(spec, shard)) for shard in range(3)]
        merged = [md for part in parts for md in part]
        self.assertEqual(len(merged), len(full))
        self.assertEqual(set(merged), set(full))

    def test_limit(self):
        spec = SearchSpec(n=4, max_degree=6, max_k=3, limit=5)
        with self.assertRaises(EnumerationLimitExceeded) as ctx:
            list(enumerate_multidegrees(spec))
        self.assertEqual(ctx.exception.limit, 5)
        self.assertEqual(ctx.exception.enumerated, 6)


class FindCollisionsTests(SimpleTestCase):

    def test_matches_brute_force(self):
        for n, max_degree, max_k in ((4, 6, 3), (3, 5, 3), (5, 6, 2)):
            report = find_collisions(SearchSpec(n=n, max_degree=max_degree, max_k=max_k))
            found = {frozenset((p.a.canonical_degrees, p.b.canonical_degrees)) for p in report.pairs}
            with self.subTest(n=n, max_degree=max_degree, max_k=max_k):
                self.assertEqual(found, naive_collisions(n, max_degree, max_k))
                self.assertEqual(report.enumerated, len(naive_space(max_degree, max_k)))

    def test_pairs_reverify(self):
        report = find_collisions(SearchSpec(n=3, total_degree_target=64, max_k=6))
        for pair in report.pairs:
            with self.subTest(a=pair.a, b=pair.b):
                self.assertNotEqual(pair.a, pair.b)
                self.assertTrue(verify_pair(3, pair.a, pair.b).equal)

    def test_deterministic_across_shard_counts(self):
        outputs = set()
        for shards in (1, 2, 8):
            report = find_collisions(SearchSpec(n=3, max_degree=4, max_k=2, shard_count=shards))
            outputs.add(dumps(collision_report_record(report, include_multidegrees=True)))
        self.assertEqual(len(outputs), 1)

    def test_constant_digest_does_not_change_result(self):
        spec = SearchSpec(n=4, max_degree=6, max_k=3)
        default = find_collisions(spec)
        constant = find_collisions(spec, digest=lambda sd: "x")
        self.assertEqual(default.pairs, constant.pairs)
        self.assertGreaterEqual(constant.comparisons, default.comparisons)

    def test_digest_is_stable(self):
        sd = sullivan_data(4, Multidegree((3, 2)))
        self.assertEqual(sd_digest(sd), sd_digest(sullivan_data(4, Multidegree((2, 3, 1)))))
        self.assertEqual(len(sd_digest(sd)), 64)

    def test_verify_pair(self):
        check = verify_pair(4, Multidegree((1,)), Multidegree((2,)))
        self.assertFalse(check.equal)
        self.assertEqual(check.first.euler, 5)

    def test_guard(self):
        with self.assertRaises(EnumerationLimitExceeded):
            find_collisions(SearchSpec(n=4, max_degree=6, max_k=3, shard_count=2, limit=10))

    @override_settings(INTERSECTIONS={'SEARCH_LIMIT': 3})
    def test_guard_from_settings(self):
        with self.assertRaises(EnumerationLimitExceeded):
            find_collisions(SearchSpec(n=4, max_degree=6, max_k=2))

    @override_settings(INTERSECTIONS={'SEARCH_EXECUTOR': 'process', 'SEARCH_WORKERS': 2})
    def test_process_executor(self):
        spec = SearchSpec(n=3, max_degree=4, max_k=2, shard_count=2)
        report = find_collisions(spec)
        self.assertEqual(report.enumerated, len(naive_space(4, 2)))
