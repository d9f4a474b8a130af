#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specdec/io.hpp"

using namespace specdec;

TEST_CASE("bivariate JSON form is pinned byte for byte") {
    BivariateSeries b(4, Rational(3, 20));
    b.add_term(3, 0, 1);
    b.add_term(3, 2, 2);
    b.add_term(1, 1, 1);
    b.add_term(-2, 0, -1);
    CHECK(to_json(b).dump() ==
          R"({"delta_prefactor":[3,20],"terms":[{"z":3,"q":0,"c":1},{"z":3,"q":2,"c":2},)"
          R"({"z":1,"q":1,"c":1},{"z":-2,"q":0,"c":-1}]})");
    CHECK(to_canonical_text(b) == "z^3*(1 + 2q^2) + z^1*(q) + z^-2*(-1)");

    BivariateSeries zero(4);
    CHECK(to_json(zero).dump() == R"({"delta_prefactor":[0,1],"terms":[]})");
    CHECK(to_canonical_text(zero) == "0");
}

TEST_CASE("path, spin, spectrum, and key JSON round trips") {
    FinitePath p(3, 1, {3, 0});
    CHECK(to_json(p).dump() == R"({"l":3,"k":1,"window":[3,0]})");
    CHECK(path_from_json(to_json(p)) == p);

    SpinConfig s = path_to_spins(p);
    CHECK(to_json(s).dump() == R"({"l":3,"k":1,"spins":[-3,1]})");
    CHECK(spins_from_json(to_json(s)) == s);

    Spectrum h = spectrum_of(p);
    CHECK(to_json(h).dump() == R"({"l":3,"k":1,"h":[3]})");
    CHECK(spectrum_from_json(to_json(h)) == h);

    SpectralKey key = decode(h);
    CHECK(to_json(key).dump() == R"({"N":5,"r":[0,1,2,3,2,1],"a":[0,0,0,0,0]})");
    CHECK(key_from_json(to_json(key), 3) == key);

    ordered_json bad = to_json(key);
    bad["N"] = 7;
    CHECK_THROWS_AS(key_from_json(bad, 3), std::invalid_argument);
}

TEST_CASE("serialization is deterministic across repeated dumps") {
    BivariateSeries ch = closed_form_fiber_character(
        SpectralKey(RestrictedPath(3, {0, 1, 2, 1}), YoungDiagram({0, 1, 0})), 6);
    std::string once = to_json(ch).dump();
    for (int i = 0; i < 5; ++i) CHECK(to_json(ch).dump() == once);
}
