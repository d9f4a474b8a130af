#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "specdec/spectral.hpp"

using namespace specdec;

namespace {

// Fixtures from the two worked level-3 decodings (boundary k = 1).
const std::vector<int> kWindowA = {1, 2, 1, 2, 2, 1, 3, 0, 3, 2,
                                   1, 2, 3, 0, 3, 1, 2, 3, 0, 3};
const std::vector<int> kWindowB = {0, 3, 1, 2, 1, 3, 0, 3, 1, 2, 1,
                                   2, 1, 2, 2, 1, 2, 1, 3, 0, 3};

long long closed_form_zero_diagram_energy(int l, int k, const std::vector<int>& h_sharp) {
    // J even:  sum i l_i + (J/2) k       - J(J+2)/4 l
    // J odd:   sum i l_i - ((J+1)/2) k   - (J+1)(J-1)/4 l
    int J = static_cast<int>(h_sharp.size()) - 1;
    long long s = 0;
    for (int i = 1; i <= J; ++i) s += static_cast<long long>(i) * h_sharp[static_cast<std::size_t>(i - 1)];
    if (J % 2 == 0) return s + (J / 2) * static_cast<long long>(k) -
                           static_cast<long long>(J) * (J + 2) / 4 * l;
    return s - ((J + 1) / 2) * static_cast<long long>(k) -
           static_cast<long long>(J + 1) * (J - 1) / 4 * l;
}

}  // namespace

TEST_CASE("spectrum canonical form and invariants") {
    // ground spectrum has empty window for every k
    for (int k = 0; k <= 3; ++k) {
        Spectrum g(3, k, {});
        CHECK(g.window().empty());
        CHECK(g.at(1) == k);
        CHECK(g.at(2) == 3 - k);
        Spectrum g2(3, k, {k, 3 - k, k, 3 - k});
        CHECK(g2 == g);
    }
    CHECK_THROWS_AS(Spectrum(3, 1, {0, 0}), std::invalid_argument);   // 0+0 < l
    CHECK_THROWS_AS(Spectrum(3, 1, {4}), std::invalid_argument);      // out of 0..l
    CHECK_THROWS_AS(Spectrum(3, 1, {1, 2, 0}), std::invalid_argument);  // seam 0 + 2 < 3
}

TEST_CASE("block parse of the worked decodings") {
    Spectrum ha(3, 1, kWindowA);
    CHECK(ha.window() == kWindowA);  // already canonical
    BlockDecomposition da = parse_blocks(ha);
    CHECK(da.M == 20);
    CHECK(da.J == 4);
    CHECK(da.h_sharp == std::vector<int>{3, 2, 3, 3, 1});
    // the bars in the worked display split odd blocks into initial + runs;
    // by the adjacent-sum rule (3,0,3) is one elementary block
    std::vector<Block> expect_a = {{1, 4}, {2, 2}, {3, 3}, {2, 3}, {3, 3}, {1, 2}, {3, 3}};
    CHECK(da.blocks == expect_a);
    CHECK(blocks_to_spectrum(da) == ha);

    Spectrum hb(3, 1, kWindowB);
    BlockDecomposition db = parse_blocks(hb);
    CHECK(db.M == 21);
    CHECK(db.J == 3);
    CHECK(db.h_sharp == std::vector<int>{1, 3, 3, 2});
    std::vector<Block> expect_b = {{0, 2}, {1, 3}, {3, 3}, {1, 6}, {2, 4}, {3, 3}};
    CHECK(db.blocks == expect_b);
    CHECK(blocks_to_spectrum(db) == hb);

    // ground: no finite blocks
    BlockDecomposition dg = parse_blocks(Spectrum(3, 1, {}));
    CHECK(dg.blocks.empty());
    CHECK(dg.J == 0);
    CHECK(dg.M == 0);
    CHECK(dg.h_sharp == std::vector<int>{1});
}

TEST_CASE("decode of the worked examples") {
    SpectralKey a = decode(Spectrum(3, 1, kWindowA));
    CHECK(a.length() == 11);
    CHECK(a.a.multiplicities() == std::vector<int>{0, 2, 1, 1, 0, 1, 0, 1, 1, 0, 1});
    CHECK(a.r.values() == std::vector<int>{0, 1, 2, 3, 2, 1, 2, 3, 2, 1, 0, 1});
    CHECK(a.a.partition() == std::vector<long long>{8, 7, 7, 6, 5, 5, 4, 4, 3, 2, 0});
    // |a| equals the box count of the partition
    long long lam_sum = 0;
    for (long long x : a.a.partition()) lam_sum += x;
    CHECK(a.a.box_count() == lam_sum);
    CHECK(a.a.box_count() == 51);
    CHECK(degree(a.r) == 12);

    SpectralKey b = decode(Spectrum(3, 1, kWindowB));
    CHECK(b.length() == 7);
    CHECK(b.a.multiplicities() == std::vector<int>{1, 1, 1, 3, 2, 1, 0});
    CHECK(b.r.values() == std::vector<int>{0, 1, 0, 1, 2, 3, 2, 1});
    CHECK(b.a.partition() == std::vector<long long>{9, 9, 8, 6, 3, 2, 1});
    CHECK(b.a.box_count() == 38);

    // ground decodes to the straight ascent with the zero diagram
    for (int l = 1; l <= 3; ++l) {
        for (int k = 0; k <= l; ++k) {
            SpectralKey g = decode(Spectrum(l, k, {}));
            CHECK(g.length() == k);
            CHECK(g.a == YoungDiagram::zero(k));
            for (int i = 0; i <= k; ++i) CHECK(g.r.at(i) == i);
        }
    }
}

TEST_CASE("encode inverts decode on the worked examples") {
    Spectrum ha(3, 1, kWindowA);
    CHECK(encode(decode(ha)) == ha);
    Spectrum hb(3, 1, kWindowB);
    CHECK(encode(decode(hb)) == hb);

    // the level-3 fiber key of the six-path example; the canonical window is
    // (1,2,2) of length M = 3, the following 2 being the tail initial
    SpectralKey key(RestrictedPath(3, {0, 1, 2, 1}), YoungDiagram({0, 1, 0}));
    Spectrum h = encode(key);
    CHECK(h.window() == std::vector<int>{1, 2, 2});
    CHECK(h.at(4) == 2);
    CHECK(h.at(5) == 1);
    CHECK(decode(h) == key);

    // straight-ascent key encodes to the ground spectrum
    SpectralKey g(RestrictedPath(1, {0, 1}), YoungDiagram({0}));
    CHECK(encode(g) == Spectrum(1, 1, {}));
}

TEST_CASE("bijection on a key grid and on path spectra") {
    for (int l = 1; l <= 3; ++l) {
        for (int k = 0; k <= l; ++k) {
            for (int N = k; N <= 6; N += 2) {
                for (const RestrictedPath& r : enumerate_restricted_paths(l, k, N)) {
                    for (const YoungDiagram& a : enumerate_young(N, 6)) {
                        SpectralKey key(r, a);
                        CHECK(decode(encode(key)) == key);
                    }
                }
            }
            for (const FinitePath& p : enumerate_paths(l, k, 5)) {
                Spectrum h = spectrum_of(p);
                CHECK(encode(decode(h)) == h);
            }
        }
    }
}

TEST_CASE("degree of restricted paths") {
    CHECK(degree(RestrictedPath(3, {0, 1, 2, 3})) == 0);
    CHECK(degree(RestrictedPath(3, {0, 1, 2, 1})) == 1);
    CHECK(degree(RestrictedPath(3, {0, 1, 0, 1})) == 2);
    CHECK(degree(RestrictedPath(3, {0})) == 0);
    // both degree routes agree everywhere in a small grid
    for (int l = 1; l <= 4; ++l)
        for (int k = 0; k <= l; ++k)
            for (int N = k; N <= 8; N += 2)
                for (const RestrictedPath& r : enumerate_restricted_paths(l, k, N))
                    CHECK(degree(r) == degree_via_energy_function(r));
}

TEST_CASE("beta composition") {
    CHECK(beta_partition(YoungDiagram::zero(5)) == std::vector<int>{5});
    CHECK(beta_partition(YoungDiagram({0, 1, 0})) == std::vector<int>{1, 2});
    CHECK(beta_partition(YoungDiagram({0, 1, 0, 1, 0, 0, 1, 0, 0})) ==
          std::vector<int>{1, 2, 3, 3});
    // a_1 is excluded
    CHECK(beta_partition(YoungDiagram({4, 0, 0})) == std::vector<int>{3});
    // components are positive and sum to N
    for (const YoungDiagram& a : enumerate_young(6, 8)) {
        int total = 0;
        for (int b : beta_partition(a)) {
            CHECK(b > 0);
            total += b;
        }
        CHECK(total == 6);
    }
}

TEST_CASE("restricted path enumeration") {
    auto r31 = enumerate_restricted_paths(3, 1, 3);
    REQUIRE(r31.size() == 2);
    CHECK(r31[0].values() == std::vector<int>{0, 1, 0, 1});
    CHECK(r31[1].values() == std::vector<int>{0, 1, 2, 1});

    for (int l = 1; l <= 3; ++l)
        for (int k = 0; k <= l; ++k)
            CHECK(enumerate_restricted_paths(l, k, k).size() == 1);

    auto r10 = enumerate_restricted_paths(1, 0, 2);
    REQUIRE(r10.size() == 1);
    CHECK(r10[0].values() == std::vector<int>{0, 1, 0});

    CHECK(enumerate_restricted_paths(3, 1, 2).empty());  // parity
    CHECK(enumerate_restricted_paths(3, 2, 0).empty());  // too short
}

TEST_CASE("diagram enumeration against a direct filter") {
    CHECK(enumerate_young(1, 0).size() == 1);
    CHECK(enumerate_young(1, 2).size() == 3);
    std::vector<std::vector<int>> expect22 = {{0, 0}, {0, 1}, {0, 2}, {1, 0}};
    std::vector<std::vector<int>> got;
    for (const YoungDiagram& a : enumerate_young(2, 2)) got.push_back(a.multiplicities());
    CHECK(got == expect22);

    // brute filter oracle at N = 3, size <= 5
    std::set<std::vector<int>> brute;
    for (int a1 = 0; a1 <= 5; ++a1)
        for (int a2 = 0; a2 <= 5; ++a2)
            for (int a3 = 0; a3 <= 5; ++a3)
                if (3 * a1 + 2 * a2 + a3 <= 5) brute.insert({a1, a2, a3});
    std::set<std::vector<int>> enumd;
    for (const YoungDiagram& a : enumerate_young(3, 5)) {
        CHECK(a.box_count() <= 5);
        enumd.insert(a.multiplicities());
    }
    CHECK(brute == enumd);
}

TEST_CASE("energy equals degree plus box count on every enumerated path") {
    for (int l = 1; l <= 3; ++l) {
        for (int k = 0; k <= l; ++k) {
            for (const FinitePath& p : enumerate_paths(l, k, 5)) {
                SpectralKey key = decode(spectrum_of(p));
                CHECK(energy(p) == degree(key.r) + key.a.box_count());
            }
        }
    }
}

TEST_CASE("interlacing and M = J + 2 sum a_i on parsed spectra") {
    for (int l = 1; l <= 3; ++l) {
        for (int k = 0; k <= l; ++k) {
            for (const FinitePath& p : enumerate_paths(l, k, 5)) {
                Spectrum h = spectrum_of(p);
                BlockDecomposition d = parse_blocks(h);
                // adjacent block initials interlace per the parity of the
                // left block's length
                std::vector<Block> seq = d.blocks;
                seq.push_back(Block{d.tail_initial, 1});
                for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
                    if (seq[i].length % 2 == 0)
                        CHECK(seq[i + 1].initial > seq[i].initial);
                    else
                        CHECK(seq[i + 1].initial > l - seq[i].initial);
                }
                SpectralKey key = decode(h);
                long long asum = 0;
                for (int v : key.a.multiplicities()) asum += v;
                CHECK(d.M == d.J + 2 * asum);
            }
        }
    }
}

TEST_CASE("zero-diagram fibers match the closed-form energy") {
    for (int l = 1; l <= 3; ++l) {
        for (int k = 0; k <= l; ++k) {
            for (const auto& [key, paths] : fibers(l, k, 6)) {
                if (key.a.box_count() != 0) continue;
                Spectrum h = encode(key);
                BlockDecomposition d = parse_blocks(h);
                long long expect = closed_form_zero_diagram_energy(l, k, d.h_sharp);
                for (const FinitePath& p : paths) CHECK(energy(p) == expect);
            }
        }
    }
}

TEST_CASE("decode/encode round trip on random admissible spectra") {
    // random walks through the admissible region reach far higher energies
    // than the enumerated paths do
    std::mt19937 rng(2024);
    int built = 0;
    while (built < 2000) {
        int l = 1 + static_cast<int>(rng() % 4);
        int k = static_cast<int>(rng() % (l + 1));
        std::size_t len = rng() % 30;
        std::vector<int> w;
        int prev = -1;
        for (std::size_t i = 0; i < len; ++i) {
            int lo = prev < 0 ? 0 : l - prev;
            int v = lo + static_cast<int>(rng() % (l - lo + 1));
            w.push_back(v);
            prev = v;
        }
        try {
            Spectrum h(l, k, w);
            ++built;
            SpectralKey key = decode(h);
            CHECK(encode(key) == h);
            CHECK(decode(encode(key)) == key);
        } catch (const std::invalid_argument&) {
            // seam into the tail failed; draw again
        }
    }
}

TEST_CASE("the six-path fiber") {
    SpectralKey key(RestrictedPath(3, {0, 1, 2, 1}), YoungDiagram({0, 1, 0}));
    auto fib = fibers(3, 1, 3);
    auto it = fib.find(key);
    REQUIRE(it != fib.end());
    REQUIRE(it->second.size() == 6);
    std::set<std::vector<int>> spin_windows;
    for (const FinitePath& p : it->second) spin_windows.insert(path_to_spins(p).window());
    std::set<std::vector<int>> expect = {{3, -1, 1, 1},  {3, -1, -1, 1}, {3, -1, -1, -1},
                                         {1, -1, 1, 1},  {1, -1, -1, 1}, {1, -1, -1, -1}};
    CHECK(spin_windows == expect);
    for (const FinitePath& p : it->second) CHECK(energy(p) == 3);
}
