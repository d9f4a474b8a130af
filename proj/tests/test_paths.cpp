#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "specdec/paths.hpp"

using namespace specdec;

TEST_CASE("local energy matrix of the model") {
    // corners of the (l+1) x (l+1) table, any l
    for (int l = 1; l <= 4; ++l) {
        CHECK(local_energy(l, l, l) == l);
        CHECK(local_energy(l, -l, l) == 0);
        CHECK(local_energy(-l, -l, l) == l);
        CHECK(local_energy(-l, l, l) == l);
    }
    // row structure at l = 3: H(s, .) over s' = 3,1,-1,-3
    CHECK(local_energy(3, 3, 3) == 3);
    CHECK(local_energy(3, 1, 3) == 2);
    CHECK(local_energy(3, -1, 3) == 1);
    CHECK(local_energy(3, -3, 3) == 0);
    CHECK(local_energy(1, -3, 3) == 1);
    CHECK(local_energy(-1, 1, 3) == 2);

    CHECK_THROWS_AS(local_energy(2, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(local_energy(5, 1, 3), std::invalid_argument);
}

TEST_CASE("nearest-neighbour property is automatic") {
    for (int l = 1; l <= 4; ++l) {
        ModelParams m(l);
        for (int s1 : m.spin_alphabet())
            for (int s2 : m.spin_alphabet())
                for (int s3 : m.spin_alphabet())
                    CHECK(local_energy(s1, s2, l) + local_energy(s2, s3, l) >= l);
    }
}

TEST_CASE("ground state data") {
    ModelParams m(3);
    CHECK(m.conformal_weight(0) == Rational());
    CHECK(m.conformal_weight(1) == Rational(3, 20));
    CHECK(m.conformal_weight(3) == Rational(15, 20));
    for (int k = 0; k <= 3; ++k) {
        FinitePath ground(3, k, {});
        CHECK(ground.window().empty());
        CHECK(weight(ground) == k);
        CHECK(energy(ground) == 0);
        SpinConfig s = path_to_spins(ground);
        CHECK(s.window().empty());
        CHECK(s.spin(1) == 3 - 2 * k);
        CHECK(s.spin(2) == -(3 - 2 * k));
        for (long long i = 1; i <= 6; ++i)
            CHECK(local_energy(s.spin(i), s.spin(i + 1), 3) == m.ground_energy_at(k, i));
    }
}

TEST_CASE("window (3,0) at l=3 k=1") {
    FinitePath p(3, 1, {3, 0});
    CHECK(weight(p) == 3);
    SpinConfig s = path_to_spins(p);
    CHECK(s.window() == std::vector<int>{-3, 1});
    CHECK(spins_to_path(s) == p);
    // h = (3, 2) then ground
    CHECK(local_energy_window(p) == std::vector<int>{3, 2});
    CHECK(energy(p) == 2);
}

TEST_CASE("canonical form strips ground pairs") {
    FinitePath p(3, 1, {3, 0, 1, 2});  // trailing (1,2) is the ground pair
    CHECK(p.window() == std::vector<int>{3, 0});
    FinitePath q(3, 1, {1, 2, 1, 2});
    CHECK(q.window().empty());
    // odd-length input is padded with the ground continuation, then stripped
    FinitePath r(3, 1, {3, 0, 1});
    CHECK(r.window() == std::vector<int>{3, 0});
}

TEST_CASE("invalid windows are rejected") {
    CHECK_THROWS_AS(FinitePath(3, 1, {2, 0}), std::invalid_argument);   // step 2 not a spin
    CHECK_THROWS_AS(FinitePath(3, 1, {8, 0}), std::invalid_argument);   // step 8
    CHECK_THROWS_AS(FinitePath(3, 4, {}), std::invalid_argument);       // k out of range
    CHECK_THROWS_AS(SpinConfig(3, 1, {2}), std::invalid_argument);      // parity
}

TEST_CASE("round trip over enumerated paths") {
    for (int l = 1; l <= 3; ++l) {
        for (int k = 0; k <= l; ++k) {
            for (const FinitePath& p : enumerate_paths(l, k, 4)) {
                CHECK(spins_to_path(path_to_spins(p)) == p);
            }
        }
    }
}

TEST_CASE("enumeration basics") {
    auto only_ground = enumerate_paths(1, 0, 0);
    REQUIRE(only_ground.size() == 1);
    CHECK(only_ground[0].window().empty());

    // energy is nonnegative; the zero-energy stratum is the ground fiber,
    // k+1 paths whose weights run over k, k-2, ..., -k, with the ground
    // path the unique one of weight k
    for (int l = 1; l <= 3; ++l) {
        for (int k = 0; k <= l; ++k) {
            std::multiset<int> zero_weights;
            for (const FinitePath& p : enumerate_paths(l, k, 3)) {
                long long e = energy(p);
                CHECK(e >= 0);
                if (e == 0) {
                    zero_weights.insert(weight(p));
                    if (weight(p) == k) CHECK(p.window().empty());
                }
            }
            std::multiset<int> expect;
            for (int w = -k; w <= k; w += 2) expect.insert(w);
            CHECK(zero_weights == expect);
        }
    }
}

TEST_CASE("enumeration is stable under window growth") {
    for (int l = 1; l <= 3; ++l) {
        for (int k = 0; k <= l; ++k) {
            long long e_max = 5;
            EnumLimits base;
            base.window = static_cast<int>(2 * (e_max + l + 2));
            EnumLimits wider = base;
            wider.window += 2;
            auto a = enumerate_paths(l, k, e_max, base);
            auto b = enumerate_paths(l, k, e_max, wider);
            CHECK(a == b);
        }
    }
}

TEST_CASE("weights carry the boundary parity") {
    for (int l = 1; l <= 3; ++l) {
        for (int k = 0; k <= l; ++k) {
            for (const FinitePath& p : enumerate_paths(l, k, 5)) {
                CHECK(((weight(p) - k) % 2 + 2) % 2 == 0);
            }
        }
    }
}

TEST_CASE("deterministic order and the resource cap") {
    auto a = enumerate_paths(2, 1, 5);
    auto b = enumerate_paths(2, 1, 5);
    CHECK(a == b);
    std::set<std::vector<int>> windows;
    for (const FinitePath& p : a) windows.insert(p.window());
    CHECK(windows.size() == a.size());

    EnumLimits tiny;
    tiny.max_paths = 3;
    CHECK_THROWS_AS(enumerate_paths(2, 1, 5, tiny), resource_cap_exceeded);
}
