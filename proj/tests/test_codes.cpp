#include <doctest.h>

#include <lidx/codes.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

using namespace lidx;

TEST_CASE("code construction validates input") {
    CHECK_THROWS_AS(make_linear_code(1, 2, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_linear_code(5, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_linear_code(5, 2, {{1, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(make_linear_code(5, 2, {{1, -1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_linear_code(5, 2, {{1, 2, 3}}), std::invalid_argument);
}

TEST_CASE("enumeration of small cyclic codes") {
    Codebook book = enumerate(make_linear_code(3, 2, {{1, 1}}));
    CHECK(book.words == Mat{{0, 0}, {1, 1}, {2, 2}});
    CHECK(book.cardinality() == 3);
    CHECK(book.contains({2, 2}));
    CHECK(!book.contains({1, 2}));
    CHECK(book.index_of({1, 1}) == 1);
    CHECK(book.index_of({1, 0}) == -1);

    // generator of additive order 3 mod 6
    Codebook mod6 = enumerate(make_linear_code(6, 2, {{2, 4}}));
    CHECK(mod6.words == Mat{{0, 0}, {2, 4}, {4, 2}});

    Codebook zero = enumerate(zero_code(7, 3));
    CHECK(zero.words == Mat{{0, 0, 0}});
}

TEST_CASE("dependent generators do not inflate the word set") {
    // (2,4,1) == 2*(1,2,3) mod 5, so the span stays one-dimensional.
    Codebook book = enumerate(make_linear_code(5, 3, {{1, 2, 3}, {2, 4, 1}, {0, 0, 0}}));
    CHECK(book.cardinality() == 5);

    Codebook planar = enumerate(make_linear_code(5, 3, {{1, 2, 3}, {0, 1, 0}}));
    CHECK(planar.cardinality() == 25);
}

TEST_CASE("streaming visits the zero word first and covers the book") {
    LinearCode code = make_linear_code(4, 3, {{1, 1, 0}, {0, 2, 1}});
    std::map<Vec, int> seen;
    bool first = true;
    for_each_codeword(code, [&](const Vec& w) {
        if (first) {
            CHECK(w == Vec{0, 0, 0});
            first = false;
        }
        ++seen[w];
    });
    Codebook book = enumerate(code);
    CHECK(static_cast<Int>(seen.size()) == book.cardinality());
    CHECK(seen.at({0, 0, 0}) == 1);
    for (const Vec& w : book.words) CHECK(seen.count(w) == 1);
}

TEST_CASE("additive orders") {
    CHECK(additive_order({1, 1}, 3) == 3);
    CHECK(additive_order({2, 4}, 6) == 3);
    CHECK(additive_order({0, 0}, 6) == 1);
    CHECK(additive_order({3}, 6) == 2);
}

TEST_CASE("centered representatives live in (-q/2, q/2]") {
    CHECK(centered(0, 19) == 0);
    CHECK(centered(9, 19) == 9);
    CHECK(centered(10, 19) == -9);
    CHECK(centered(7, 14) == 7);
    CHECK(centered(8, 14) == -6);
    CHECK(centered(1, 2) == 1);
    CHECK(centered(Vec{0, 13, 14}, 15) == Vec{0, -2, -1});
    CHECK_THROWS_AS(centered(15, 15), std::invalid_argument);
    CHECK_THROWS_AS(centered(-1, 15), std::invalid_argument);
}

TEST_CASE("componentwise reduction accepts arbitrary integers") {
    CHECK(reduce_mod({-1, 13, 14}, 3) == Vec{2, 1, 2});
    CHECK(reduce_mod({13, 14, 14}, 11) == Vec{2, 3, 3});
}

TEST_CASE("minimum distance of a rank-1 code whose generator norm equals q") {
    // every nonzero word has centered norm divisible by 19, hence >= 19
    LinearCode code = make_linear_code(19, 4, {{4, 1, 1, 1}});
    CHECK(min_distance_streamed(code).sq == 19);
    CHECK(min_euclidean_distance(enumerate(code)).sq == 19);
}

TEST_CASE("minimum distance of the zero code is unbounded") {
    MinDistance d = min_distance_streamed(zero_code(5, 2));
    CHECK(d.sq == kUnboundedSq);
    CHECK(std::isinf(d.value));
}

TEST_CASE("streamed and enumerated minimum distances agree on random codes") {
    std::mt19937_64 rng(0x5eed010);
    for (int trial = 0; trial < 30; ++trial) {
        Int q = 2 + static_cast<Int>(rng() % 14);
        int n = 1 + static_cast<int>(rng() % 3);
        int rows = 1 + static_cast<int>(rng() % 2);
        Mat gens(rows, Vec(n));
        for (auto& row : gens)
            for (auto& e : row) e = static_cast<Int>(rng() % q);
        LinearCode code = make_linear_code(q, n, gens);
        MinDistance streamed = min_distance_streamed(code);
        MinDistance booked = min_euclidean_distance(enumerate(code));
        CHECK(streamed.sq == booked.sq);
    }
}

TEST_CASE("rank over the prime field") {
    CHECK(rank_over_prime_field(make_linear_code(5, 3, {{1, 2, 3}, {2, 4, 1}})) == 1);
    CHECK(rank_over_prime_field(make_linear_code(5, 3, {{1, 2, 3}, {0, 1, 4}})) == 2);
    CHECK(rank_over_prime_field(zero_code(7, 2)) == 0);
    CHECK(rank_over_prime_field(make_linear_code(2, 4, {{1, 1, 1, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}})) == 2);
    CHECK_THROWS_AS(rank_over_prime_field(make_linear_code(6, 2, {{1, 1}})), std::invalid_argument);
}

TEST_CASE("cartesian power stacks block-diagonal generators") {
    LinearCode base = make_linear_code(5, 2, {{1, 2}});
    LinearCode squared = cartesian_power(base, 2);
    CHECK(squared.length == 4);
    CHECK(squared.generators == Mat{{1, 2, 0, 0}, {0, 0, 1, 2}});

    Codebook book = enumerate(squared);
    Codebook base_book = enumerate(base);
    REQUIRE(book.cardinality() == 25);
    for (const Vec& u : base_book.words)
        for (const Vec& v : base_book.words)
            CHECK(book.contains({u[0], u[1], v[0], v[1]}));

    CHECK(cartesian_power(base, 1).generators == base.generators);
    CHECK_THROWS_AS(cartesian_power(base, 0), std::invalid_argument);
}

TEST_CASE("enumeration respects the work cap") {
    Caps caps;
    caps.codebook_max_words = 10;
    LinearCode code = make_linear_code(13, 2, {{1, 0}, {0, 1}});
    CHECK_THROWS_AS(enumerate(code, caps), resource_error);
}
