// End-to-end checks of the command line tool: input forms, round trips,
// method agreement, exit codes, format and environment overrides.
// Usage: test_cli <path-to-cli>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;
std::string cli;
fs::path workdir;

void expect(bool cond, const std::string& what) {
    if (!cond) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

int run(const std::string& args, const std::string& stdin_body = "") {
    fs::path in = workdir / "stdin.json";
    std::ofstream(in) << stdin_body;
    std::string cmd = "\"" + cli + "\" " + args + " < " + in.string();
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <cli>\n";
        return 1;
    }
    cli = argv[1];
    workdir = fs::temp_directory_path() / "specdec_cli_test";
    fs::create_directories(workdir);
    fs::path out = workdir / "out";

    const std::string spectrum_a =
        R"({"l":3,"k":1,"h":[1,2,1,2,2,1,3,0,3,2,1,2,3,0,3,1,2,3,0,3]})";

    // decode a spectrum
    expect(run("decode --in - --out " + out.string(), spectrum_a) == 0, "decode runs");
    json rep = json::parse(slurp(out));
    expect(rep["N"] == 11, "decode N");
    expect(rep["a"] == json::parse("[0,2,1,1,0,1,0,1,1,0,1]"), "decode a");
    expect(rep["h_sharp"] == json::parse("[3,2,3,3,1]"), "decode h_sharp");
    expect(rep["d"] == 12 && rep["size"] == 51, "decode statistics");

    // the decode report feeds encode; the reproduced h is byte-identical
    expect(run("encode --l 3 --in - --out " + out.string(), rep.dump()) == 0, "encode runs");
    json enc = json::parse(slurp(out));
    expect(enc["h"] == rep["h"], "encode reproduces h");
    expect(enc["r"] == rep["r"] && enc["a"] == rep["a"], "encode echoes the key");

    // path and spin-configuration inputs decode identically
    expect(run("decode --in - --out " + out.string(),
               R"({"l":3,"k":1,"window":[3,0]})") == 0,
           "decode path input");
    json from_path = json::parse(slurp(out));
    expect(run("decode --in - --out " + out.string(),
               R"({"l":3,"k":1,"spins":[-3,1]})") == 0,
           "decode spin input");
    json from_spins = json::parse(slurp(out));
    expect(from_path == from_spins, "path and spin inputs agree");
    expect(from_path["N"] == 5 && from_path["d"] == 2 &&
               from_path["h"] == json::parse("[3]"),
           "decode of the (3,0) window");

    // character methods agree
    json series[4];
    const char* methods[] = {"brute_force", "bosonic", "rsos", "factorized"};
    for (int i = 0; i < 4; ++i) {
        expect(run(std::string("character --l 2 --k 1 --qmax 5 --method ") + methods[i] +
                       " --out " + out.string()) == 0,
               std::string("character ") + methods[i]);
        series[i] = json::parse(slurp(out))["series"];
    }
    expect(series[0] == series[1] && series[0] == series[2] && series[0] == series[3],
           "character methods agree");
    expect(series[0]["delta_prefactor"] == json::parse("[3,16]"), "delta prefactor 3/16");

    // decompose: the six-path fiber row and the totals row
    expect(run("decompose --l 3 --k 1 --emax 3 --out " + out.string()) == 0, "decompose");
    json table = json::parse(slurp(out));
    bool found = false;
    for (const auto& row : table["rows"]) {
        if (row["r"] == json::parse("[0,1,2,1]") && row["a"] == json::parse("[0,1,0]")) {
            found = true;
            expect(row["fiber_count"] == 6, "six-path fiber count");
            expect(row["beta"] == json::parse("[1,2]"), "six-path beta");
            expect(row["fiber_z_character"] == "z^3 + 2z^1 + 2z^-1 + z^-3",
                   "six-path z-character");
        }
    }
    expect(found, "six-path fiber row present");
    expect(run("character --l 3 --k 1 --qmax 3 --method factorized --out " +
               out.string()) == 0,
           "character for totals");
    expect(json::parse(slurp(out))["series"] == table["total_character"],
           "decompose totals equal the factorized character");

    // TSV shapes
    expect(run("decompose --l 2 --k 0 --emax 2 --format tsv --out " + out.string()) == 0,
           "decompose tsv");
    std::string tsv = slurp(out);
    expect(tsv.rfind("# k=0\nN\tr\ta\td\tsize\tbeta\tfiber_count\tfiber_z_character"
                     "\tcharacter\n",
                     0) == 0,
           "decompose tsv header");
    expect(tsv.find("\nTOTAL\t") != std::string::npos, "decompose tsv totals row");

    // E_max = 0 leaves only the ground fiber
    expect(run("decompose --l 1 --k 0 --emax 0 --out " + out.string()) == 0,
           "decompose ground only");
    json ground_table = json::parse(slurp(out));
    expect(ground_table["rows"].size() == 1 &&
               ground_table["rows"][0]["fiber_count"] == 1 &&
               ground_table["rows"][0]["d"] == 0 && ground_table["rows"][0]["size"] == 0,
           "single ground row");

    // omitting --k runs every boundary label
    expect(run("decompose --l 1 --emax 1 --out " + out.string()) == 0, "decompose all k");
    json all_k = json::parse(slurp(out));
    expect(all_k["per_k"].size() == 2 && all_k["per_k"][0]["k"] == 0 &&
               all_k["per_k"][1]["k"] == 1,
           "decompose per-k reports");
    expect(run("character --l 1 --qmax 2 --out " + out.string()) == 0, "character all k");
    expect(json::parse(slurp(out))["per_k"].size() == 2, "character per-k reports");

    // environment variable override of a flag
    {
        std::string cmd = "SPECDEC_FORMAT=tsv \"" + cli + "\" decode --in - --out " +
                          out.string() + " < " + (workdir / "stdin.json").string();
        std::ofstream(workdir / "stdin.json") << spectrum_a;
        int rc = std::system(cmd.c_str());
        expect(WIFEXITED(rc) && WEXITSTATUS(rc) == 0, "env override run");
        expect(slurp(out).rfind("l\tk\tN\t", 0) == 0, "env override applies tsv");
    }

    // verification suites are invokable and report
    expect(run("verify lemma4.5 --l 2 --out " + out.string()) == 0, "verify lemma4.5");
    expect(slurp(out).find("status=PASS") != std::string::npos, "verify reports PASS");
    expect(run("verify d-equivalence --l 2 --nmax 6 --out " + out.string()) == 0,
           "verify d-equivalence");

    // exit codes: invalid input and resource cap
    expect(run("decode --in -", R"({"nonsense":true})") == 2, "invalid input exits 2");
    expect(run("decode --in -", "not json at all") == 2, "parse error exits 2");
    expect(run("decompose --l 2 --k 1 --emax 5 --max-paths 10") == 3,
           "resource cap exits 3");
    expect(run("verify no-such-suite") == 2, "unknown suite exits 2");

    std::error_code ec;
    fs::remove_all(workdir, ec);
    if (failures) {
        std::cerr << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::printf("all CLI checks passed\n");
    return 0;
}
