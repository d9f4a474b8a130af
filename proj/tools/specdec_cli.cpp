// Batch front end: decode/encode spectra, decompose a path space into
// fibers, compute characters by several routes, and run the verification
// suites. All output is deterministic for a fixed input, whatever the
// worker count.
//
// Exit codes: 0 success / all checks pass, 1 verification counterexample,
// 2 invalid input, 3 resource cap exceeded.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "specdec/io.hpp"
#include "specdec/parallel.hpp"
#include "specdec/verify.hpp"

using namespace specdec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitResourceCap = 3;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::invalid_argument("cannot open output file: " + path);
    f << body;
}

struct KeyReport {
    int l = 0;
    int k = 0;
    std::vector<int> h;
    int N = 0;
    std::vector<int> r;
    std::vector<int> a;
    std::vector<int> h_sharp;
    long long d = 0;
    long long size = 0;
    std::vector<int> beta;
};

KeyReport report_for(const Spectrum& h) {
    KeyReport rep;
    rep.l = h.level();
    rep.k = h.boundary();
    rep.h = h.window();
    SpectralKey key = decode(h);
    rep.N = key.length();
    rep.r = key.r.values();
    rep.a = key.a.multiplicities();
    rep.h_sharp = parse_blocks(h).h_sharp;
    rep.d = degree(key.r);
    rep.size = key.a.box_count();
    rep.beta = beta_partition(key.a);
    return rep;
}

std::string render_key_report(const KeyReport& rep, const std::string& format) {
    if (format == "tsv") {
        std::ostringstream os;
        os << "l\tk\tN\tr\ta\th_sharp\td\tsize\tbeta\th\n";
        os << rep.l << '\t' << rep.k << '\t' << rep.N << '\t' << join_ints(rep.r) << '\t'
           << join_ints(rep.a) << '\t' << join_ints(rep.h_sharp) << '\t' << rep.d << '\t'
           << rep.size << '\t' << join_ints(rep.beta) << '\t' << join_ints(rep.h) << '\n';
        return os.str();
    }
    ordered_json j{{"l", rep.l},       {"k", rep.k},         {"N", rep.N},
                   {"r", rep.r},       {"a", rep.a},         {"h_sharp", rep.h_sharp},
                   {"d", rep.d},       {"size", rep.size},   {"beta", rep.beta},
                   {"h", rep.h}};
    return j.dump(2) + "\n";
}

int cmd_decode(const std::string& in, const std::string& format, const std::string& out) {
    ordered_json j = ordered_json::parse(read_input(in));
    Spectrum h = [&]() -> Spectrum {
        if (j.contains("h")) return spectrum_from_json(j);
        if (j.contains("window")) return spectrum_of(path_from_json(j));
        if (j.contains("spins")) return spectrum_of(spins_to_path(spins_from_json(j)));
        throw std::invalid_argument("input JSON needs one of: h, window, spins");
    }();
    write_output(out, render_key_report(report_for(h), format));
    return kExitOk;
}

int cmd_encode(int l, const std::string& in, const std::string& format,
               const std::string& out) {
    ordered_json j = ordered_json::parse(read_input(in));
    SpectralKey key = key_from_json(j, l);
    Spectrum h = encode(key);
    write_output(out, render_key_report(report_for(h), format));
    return kExitOk;
}

struct Rendered {
    ordered_json json;
    std::string tsv;
};

Rendered decompose_report(int l, int k, long long e_max, int jobs, long long max_paths) {
    EnumLimits lim;
    lim.max_paths = max_paths;
    auto fib = fibers(l, k, e_max, lim);
    std::vector<const std::pair<const SpectralKey, std::vector<FinitePath>>*> items;
    for (const auto& kv : fib) items.push_back(&kv);

    int order = static_cast<int>(e_max);
    struct Row {
        ordered_json json;
        std::string tsv;
        BivariateSeries character;
        Row() : character(BivariateSeries::zero(0)) {}
    };
    std::vector<Row> rows = parallel_map<Row>(
        static_cast<long long>(items.size()), jobs, [&](long long i) {
            const auto& [key, paths] = *items[static_cast<std::size_t>(i)];
            Row row;
            ZLaurent zchar;
            for (const FinitePath& p : paths) zchar.add_term(weight(p), 1);
            row.character = closed_form_fiber_character(key, order);
            long long d = degree(key.r);
            long long size = key.a.box_count();
            std::vector<int> beta = beta_partition(key.a);
            row.json = ordered_json{{"N", key.length()},
                                    {"r", key.r.values()},
                                    {"a", key.a.multiplicities()},
                                    {"d", d},
                                    {"size", size},
                                    {"beta", beta},
                                    {"fiber_count", paths.size()},
                                    {"fiber_z_character", zchar.str()},
                                    {"character", to_json(row.character)}};
            std::ostringstream os;
            os << key.length() << '\t' << join_ints(key.r.values()) << '\t'
               << join_ints(key.a.multiplicities()) << '\t' << d << '\t' << size << '\t'
               << join_ints(beta) << '\t' << paths.size() << '\t' << zchar.str() << '\t'
               << to_canonical_text(row.character);
            row.tsv = os.str();
            return row;
        });

    BivariateSeries total =
        BivariateSeries::zero(order, ModelParams(l).conformal_weight(k));
    for (const Row& row : rows) total += row.character;

    Rendered r;
    {
        std::ostringstream os;
        os << "# k=" << k << '\n';
        os << "N\tr\ta\td\tsize\tbeta\tfiber_count\tfiber_z_character\tcharacter\n";
        for (const Row& row : rows) os << row.tsv << '\n';
        os << "TOTAL\t\t\t\t\t\t\t\t" << to_canonical_text(total) << '\n';
        r.tsv = os.str();
    }
    ordered_json rows_json = ordered_json::array();
    for (const Row& row : rows) rows_json.push_back(row.json);
    r.json = ordered_json{{"l", l},
                          {"k", k},
                          {"e_max", e_max},
                          {"rows", std::move(rows_json)},
                          {"total_character", to_json(total)},
                          {"total_character_text", to_canonical_text(total)}};
    return r;
}

int cmd_decompose(int l, int k, long long e_max, int jobs, long long max_paths,
                  const std::string& format, const std::string& out) {
    std::vector<int> ks;
    if (k >= 0) {
        ks.push_back(k);
    } else {
        for (int i = 0; i <= l; ++i) ks.push_back(i);
    }
    std::vector<Rendered> reports;
    for (int ki : ks) reports.push_back(decompose_report(l, ki, e_max, jobs, max_paths));
    if (format == "tsv") {
        std::string body;
        for (const Rendered& r : reports) body += r.tsv;
        write_output(out, body);
    } else if (reports.size() == 1) {
        write_output(out, reports[0].json.dump(2) + "\n");
    } else {
        ordered_json per_k = ordered_json::array();
        for (Rendered& r : reports) per_k.push_back(std::move(r.json));
        ordered_json j{{"l", l}, {"e_max", e_max}, {"per_k", std::move(per_k)}};
        write_output(out, j.dump(2) + "\n");
    }
    return kExitOk;
}

Rendered character_report(int l, int k, int q_order, const std::string& method,
                          long long max_paths) {
    BivariateSeries ch = [&]() {
        if (method == "brute_force") {
            EnumLimits lim;
            lim.max_paths = max_paths;
            return brute_force_character(l, k, q_order, lim);
        }
        if (method == "factorized") return character_from_keys(l, k, q_order);
        if (method == "bosonic") return full_character(l, k, q_order, f_method::bosonic);
        if (method == "rsos") return full_character(l, k, q_order, f_method::rsos);
        throw std::invalid_argument("unknown method: " + method);
    }();
    Rendered r;
    {
        std::ostringstream os;
        os << "# l=" << l << " k=" << k << " qmax=" << q_order << " method=" << method
           << " delta_prefactor=" << ch.delta().str() << "\n";
        os << "z\tq\tc\n";
        const auto& terms = ch.terms();
        for (auto it = terms.rbegin(); it != terms.rend(); ++it)
            for (auto [qe, c] : it->second.terms())
                os << it->first << '\t' << qe << '\t' << c << '\n';
        r.tsv = os.str();
    }
    r.json = ordered_json{{"l", l},
                          {"k", k},
                          {"q_order", q_order},
                          {"method", method},
                          {"series", to_json(ch)},
                          {"text", to_canonical_text(ch)}};
    return r;
}

int cmd_character(int l, int k, int q_order, const std::string& method, int jobs,
                  long long max_paths, const std::string& format, const std::string& out) {
    std::vector<int> ks;
    if (k >= 0) {
        ks.push_back(k);
    } else {
        for (int i = 0; i <= l; ++i) ks.push_back(i);
    }
    std::vector<Rendered> reports = parallel_map<Rendered>(
        static_cast<long long>(ks.size()), jobs, [&](long long i) {
            return character_report(l, ks[static_cast<std::size_t>(i)], q_order, method,
                                    max_paths);
        });
    if (format == "tsv") {
        std::string body;
        for (const Rendered& r : reports) body += r.tsv;
        write_output(out, body);
    } else if (reports.size() == 1) {
        write_output(out, reports[0].json.dump(2) + "\n");
    } else {
        ordered_json per_k = ordered_json::array();
        for (Rendered& r : reports) per_k.push_back(std::move(r.json));
        ordered_json j{{"l", l}, {"q_order", q_order}, {"method", method},
                       {"per_k", std::move(per_k)}};
        write_output(out, j.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opt, const std::string& out) {
    std::vector<std::string> names =
        suite == "all" ? all_suites() : std::vector<std::string>{suite};
    std::ostringstream os;
    bool ok = true;
    for (const std::string& name : names) {
        CheckResult res = run_suite(name, opt);
        ok = ok && res.pass;
        os << "suite=" << res.name << " status=" << (res.pass ? "PASS" : "FAIL")
           << " instances=" << res.instances << " millis=" << static_cast<long long>(res.millis);
        if (!res.detail.empty()) os << " detail=" << res.detail;
        os << "\n";
    }
    write_output(out, os.str());
    return ok ? kExitOk : kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral decomposition of the level-l vertex model path space"};
    app.require_subcommand(1);

    auto add_env = [](CLI::Option* o, const std::string& name) {
        o->envname("SPECDEC_" + name);
        return o;
    };

    std::string in = "-", out, format = "json", method = "bosonic", suite = "all";
    int l = 1, k = 0, q_order = 8, n_max = -1, jobs = 1;
    long long e_max = 6, max_paths = 10'000'000;
    bool all_k = false;

    auto add_common = [&](CLI::App* c, bool needs_k) {
        add_env(c->add_option("--l", l, "level"), "L")->check(CLI::PositiveNumber);
        if (needs_k) add_env(c->add_option("--k", k, "boundary label (0..l)"), "K");
        add_env(c->add_option("--format", format, "json|tsv"), "FORMAT")
            ->check(CLI::IsMember({"json", "tsv"}));
        add_env(c->add_option("--out", out, "output file (default stdout)"), "OUT");
        add_env(c->add_option("--jobs", jobs, "worker count"), "JOBS")
            ->check(CLI::PositiveNumber);
        add_env(c->add_option("--max-paths", max_paths, "enumeration cap"), "MAX_PATHS");
    };

    CLI::App* dec = app.add_subcommand(
        "decode", "decode a spectrum (or path, or spin configuration) into its key");
    add_common(dec, false);
    add_env(dec->add_option("--in", in, "input JSON file, - for stdin"), "IN");

    CLI::App* enc = app.add_subcommand("encode", "rebuild the spectrum of a key");
    add_common(enc, false);
    add_env(enc->add_option("--in", in, "key JSON file, - for stdin"), "IN");

    CLI::App* dcp = app.add_subcommand(
        "decompose", "full fiber table of the path space below an energy bound");
    add_common(dcp, true);
    add_env(dcp->add_option("--emax", e_max, "energy bound"), "EMAX");

    CLI::App* chr = app.add_subcommand("character", "character of the path space");
    add_common(chr, true);
    add_env(chr->add_option("--qmax", q_order, "q truncation order"), "QMAX");
    add_env(chr->add_option("--method", method,
                            "brute_force|factorized|bosonic|rsos"),
            "METHOD")
        ->check(CLI::IsMember({"brute_force", "factorized", "bosonic", "rsos"}));

    CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
    add_common(ver, true);
    ver->add_option("suite", suite,
                    "prop2.2|thm3.5|prop4.1|thm4.2|lemma4.5|lemma4.6|prop5.2|prop5.3|"
                    "fermionic|thm2.1|d-equivalence|all");
    add_env(ver->add_option("--emax", e_max, "energy bound"), "EMAX");
    add_env(ver->add_option("--nmax", n_max, "length bound"), "NMAX");
    add_env(ver->add_option("--qmax", q_order, "q truncation order"), "QMAX");
    ver->add_flag("--all-k", all_k, "ignore --k, run every boundary label");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dec->parsed()) return cmd_decode(in, format, out);
        if (enc->parsed()) return cmd_encode(l, in, format, out);
        if (dcp->parsed())
            return cmd_decompose(l, dcp->count("--k") ? k : -1, e_max, jobs, max_paths,
                                 format, out);
        if (chr->parsed())
            return cmd_character(l, chr->count("--k") ? k : -1, q_order, method, jobs,
                                 max_paths, format, out);
        if (ver->parsed()) {
            VerifyOptions opt;
            if (ver->count("--l")) opt.levels = {l};
            opt.k = (ver->count("--k") && !all_k) ? k : -1;
            if (ver->count("--emax")) opt.e_max = e_max;
            if (ver->count("--nmax")) opt.n_max = n_max;
            if (ver->count("--qmax")) opt.q_order = q_order;
            opt.jobs = jobs;
            opt.max_paths = max_paths;
            return cmd_verify(suite, opt, out);
        }
    } catch (const resource_cap_exceeded& ex) {
        std::cerr << "resource cap: " << ex.what() << "\n";
        return kExitResourceCap;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
