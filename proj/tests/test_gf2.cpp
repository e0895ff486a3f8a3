#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oracles.hpp"
#include "specnorm/error.hpp"
#include "specnorm/gf2.hpp"

using namespace specnorm;
using testutil::elements;

TEST_CASE("ambient bounds") {
    CHECK_THROWS_AS(Ambient(0), InvalidArgument);
    CHECK_THROWS_AS(Ambient(25), InvalidArgument);
    const Ambient a(3);
    CHECK(a.size() == 8);
    CHECK(a.mask() == 7);
    CHECK_NOTHROW(a.check(7));
    CHECK_THROWS_AS(a.check(8), InvalidArgument);
    CHECK_THROWS_AS(rref_span(a, {0b1000}), InvalidArgument);
}

TEST_CASE("rref_span examples") {
    const Ambient a(3);
    const Subgroup empty = rref_span(a, std::vector<Point>{});
    CHECK(empty.dim() == 0);
    CHECK(empty == Subgroup::trivial(a));

    const Subgroup dup = rref_span(a, {0b011, 0b011});
    CHECK(dup.dim() == 1);
    CHECK(std::vector<Point>(dup.basis().begin(), dup.basis().end()) == std::vector<Point>{0b011});

    const Subgroup three = rref_span(a, {0b011, 0b101, 0b110});
    CHECK(three.dim() == 2);
    // Pivots at the highest bit, cleared elsewhere, sorted descending.
    CHECK(std::vector<Point>(three.basis().begin(), three.basis().end()) ==
          std::vector<Point>{0b101, 0b011});
}

TEST_CASE("contains examples") {
    const Ambient a(3);
    CHECK(contains(Subgroup::trivial(a), 0));
    CHECK(contains(rref_span(a, {0b011}), 0b011));
    CHECK_FALSE(contains(rref_span(a, {0b011}), 0b001));
}

TEST_CASE("annihilator examples") {
    const Ambient a(3);
    CHECK(annihilator(Subgroup::full(a)) == Subgroup::trivial(a));
    CHECK(annihilator(Subgroup::trivial(a)) == Subgroup::full(a));
    const Subgroup h = rref_span(a, {0b011, 0b100});
    CHECK(annihilator(annihilator(h)) == h);
    CHECK(elements(annihilator(h)) == oracle::annihilator(3, elements(h)));
}

TEST_CASE("intersect examples") {
    const Ambient a(3);
    const Subgroup h1 = rref_span(a, {0b011, 0b100});
    const Subgroup h2 = rref_span(a, {0b011, 0b101});
    CHECK(intersect(h1, h1) == h1);
    CHECK(intersect(h1, Subgroup::full(a)) == h1);
    const Subgroup i = intersect(h1, h2);
    CHECK(elements(i) == oracle::intersect(elements(h1), elements(h2)));
    CHECK(i.contains(0b011));
}

TEST_CASE("enumerate examples") {
    const Ambient a(3);
    CHECK(enumerate(Subgroup::trivial(a)) == std::vector<Point>{0});
    CHECK(elements(rref_span(a, {0b011})) == std::vector<Point>{0b000, 0b011});
    const auto e = elements(rref_span(a, {0b011, 0b100}));
    CHECK(e.size() == 4);
    CHECK(e == oracle::closure({0b011, 0b100}));
}

TEST_CASE("random subgroups satisfy the structural laws") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng(11, i);
        const int n = rng.between(1, 9);
        const Ambient a(n);
        std::vector<Point> g1, g2;
        for (int k = rng.between(0, n); k > 0; --k) g1.push_back(static_cast<Point>(rng.below(a.size())));
        for (int k = rng.between(0, n); k > 0; --k) g2.push_back(static_cast<Point>(rng.below(a.size())));
        const Subgroup h1 = rref_span(a, g1);
        const Subgroup h2 = rref_span(a, g2);
        const auto e1 = elements(h1);

        CHECK(e1 == oracle::closure(g1));
        CHECK(rref_span(a, enumerate(h1)) == h1);
        CHECK(h1.dim() + annihilator(h1).dim() == n);
        CHECK(h1.size() * annihilator(h1).size() == a.size());
        CHECK(annihilator(annihilator(h1)) == h1);
        CHECK(elements(annihilator(h1)) == oracle::annihilator(n, e1));

        const Subgroup i12 = intersect(h1, h2);
        CHECK(elements(i12) == oracle::intersect(e1, elements(h2)));
        CHECK(intersect(h2, h1) == i12);
        CHECK(intersect(h1, h1) == h1);
        const Subgroup h3 = rref_span(a, {static_cast<Point>(rng.below(a.size()))});
        CHECK(intersect(intersect(h1, h2), h3) == intersect(h1, intersect(h2, h3)));

        const Subgroup big = extend(h1, static_cast<Point>(rng.below(a.size())));
        CHECK(h1.is_subgroup_of(big));
        CHECK(annihilator(big).is_subgroup_of(annihilator(h1)));

        // Coset representatives: reduce(x) is the smallest word of x + H.
        const Point x = static_cast<Point>(rng.below(a.size()));
        Point smallest = a.mask();
        for (Point e : e1) smallest = std::min(smallest, x ^ e);
        CHECK(h1.reduce(x) == smallest);
    }
}

TEST_CASE("canonical basis is unique per set") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng(12, i);
        const Ambient a(6);
        std::vector<Point> g;
        for (int k = rng.between(1, 5); k > 0; --k) g.push_back(static_cast<Point>(rng.below(a.size())));
        const Subgroup h = rref_span(a, g);
        auto shuffled = enumerate(h);
        std::reverse(shuffled.begin(), shuffled.end());
        CHECK(rref_span(a, shuffled) == h);
        const auto b = h.basis();
        CHECK(std::is_sorted(b.begin(), b.end(), std::greater<>()));
        for (Point w : b) {
            for (Point v : b) {
                if (v != w) CHECK((v >> pivot_of(w) & 1) == 0);
            }
        }
    }
}

TEST_CASE("subgroup enumeration by dimension matches the Gaussian binomial") {
    // [4 choose k]_2 = 1, 15, 35, 15, 1
    const Ambient a(4);
    const int expected[] = {1, 15, 35, 15, 1};
    for (int k = 0; k <= 4; ++k) {
        int count = 0;
        std::set<std::vector<Point>> seen;
        for_each_subgroup_of_dim(a, k, [&](const Subgroup& h) {
            CHECK(h.dim() == k);
            seen.insert(std::vector<Point>(h.basis().begin(), h.basis().end()));
            ++count;
        });
        CHECK(count == expected[k]);
        CHECK(seen.size() == static_cast<std::size_t>(count));
    }
}

TEST_CASE("canonical order puts larger subgroups first") {
    const Ambient a(3);
    const Subgroup small = rref_span(a, {0b001});
    const Subgroup large = rref_span(a, {0b001, 0b010});
    CHECK(canonical_order(large, small) < 0);
    CHECK(canonical_order(small, small) == 0);
}

TEST_CASE("hex round trip") {
    CHECK(to_hex(0) == "0x0");
    CHECK(to_hex(0xab) == "0xab");
    CHECK(parse_hex("0x1f") == 0x1f);
    CHECK(parse_hex("0X1F") == 0x1f);
    CHECK(parse_hex("1f") == 0x1f);
    CHECK_THROWS_AS(parse_hex("0xzz"), InvalidArgument);
    CHECK_THROWS_AS(parse_hex("0x"), InvalidArgument);
}
