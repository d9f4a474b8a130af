#pragma once

// Verification suites for the model's identities. Each suite runs an
// exhaustive check over a bounded domain and reports pass/fail together
// with the first counterexample found.

#include <chrono>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "specdec/characters.hpp"
#include "specdec/io.hpp"
#include "specdec/parallel.hpp"

namespace specdec {

struct CheckResult {
    std::string name;
    bool pass = true;
    long long instances = 0;
    double millis = 0;
    std::string detail;
};

struct VerifyOptions {
    std::vector<int> levels;  // empty = suite default
    int k = -1;               // -1 = all boundary labels
    long long e_max = -1;     // -1 = suite default
    int n_max = -1;
    int q_order = -1;
    int jobs = 1;
    long long max_paths = 10'000'000;
};

namespace detail {

class timer {
public:
    timer() : start_(std::chrono::steady_clock::now()) {}
    double millis() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline std::vector<int> levels_or(const VerifyOptions& o, std::vector<int> fallback) {
    return o.levels.empty() ? fallback : o.levels;
}

inline std::vector<int> boundaries(const VerifyOptions& o, int l) {
    if (o.k >= 0) return {o.k};
    std::vector<int> ks;
    for (int k = 0; k <= l; ++k) ks.push_back(k);
    return ks;
}

inline EnumLimits limits_of(const VerifyOptions& o) {
    EnumLimits lim;
    lim.max_paths = o.max_paths;
    return lim;
}

/// All keys with d(r) + |a| <= e_max, i.e. the expected fiber index set.
inline std::vector<SpectralKey> expected_keys(int l, int k, long long e_max) {
    std::vector<SpectralKey> keys;
    for (int N = k;; N += 2) {
        if (N > k + 2 * static_cast<int>(e_max) + 64)
            throw std::logic_error("expected_keys: runaway N");
        long long best = -1;
        std::vector<RestrictedPath> rs = enumerate_restricted_paths(l, k, N);
        for (const RestrictedPath& r : rs) {
            long long d = degree(r);
            if (best < 0 || d < best) best = d;
        }
        if (best < 0 || best > e_max) break;
        for (const RestrictedPath& r : rs) {
            long long d = degree(r);
            if (d > e_max) continue;
            for (const YoungDiagram& a : enumerate_young(N, e_max - d))
                keys.emplace_back(r, a);
        }
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

inline ZLaurent weight_sum(const std::vector<FinitePath>& fiber) {
    ZLaurent s;
    for (const FinitePath& p : fiber) s.add_term(weight(p), 1);
    return s;
}

}  // namespace detail

/// Every enumerated path has a spectrum satisfying the nearest-neighbour and
/// boundary conditions, and its energy is nonnegative, zero only on the
/// ground state.
inline CheckResult verify_prop22(const VerifyOptions& opt = {}) {
    detail::timer t;
    CheckResult res;
    res.name = "prop2.2";
    long long e_max = opt.e_max < 0 ? 8 : opt.e_max;
    for (int l : detail::levels_or(opt, {1, 2, 3})) {
        for (int k : detail::boundaries(opt, l)) {
            for (const FinitePath& p : enumerate_paths(l, k, e_max, detail::limits_of(opt))) {
                ++res.instances;
                try {
                    Spectrum h = spectrum_of(p);
                    long long e = energy(p);
                    if (e < 0) throw std::runtime_error("negative energy");
                    // zero energy happens exactly on the ground fiber; the
                    // ground path is its unique member of weight k
                    if (e == 0 && weight(p) == k && !p.window().empty())
                        throw std::runtime_error("nonground path of zero energy and weight k");
                    (void)h;
                } catch (const std::exception& ex) {
                    res.pass = false;
                    res.detail = "l=" + std::to_string(l) + " k=" + std::to_string(k) +
                                 " path=" + to_json(p).dump() + ": " + ex.what();
                    res.millis = t.millis();
                    return res;
                }
            }
        }
    }
    res.millis = t.millis();
    return res;
}

/// decode is a bijection: decode(encode(key)) = key over a key grid, and
/// encode(decode(h)) = h over all spectra of enumerated paths.
inline CheckResult verify_thm35(const VerifyOptions& opt = {}) {
    detail::timer t;
    CheckResult res;
    res.name = "thm3.5";
    int n_max = opt.n_max < 0 ? 10 : opt.n_max;
    long long a_max = 10;
    long long e_max = opt.e_max < 0 ? 6 : opt.e_max;
    for (int l : detail::levels_or(opt, {1, 2, 3})) {
        for (int k : detail::boundaries(opt, l)) {
            for (int N = k; N <= n_max; N += 2) {
                for (const RestrictedPath& r : enumerate_restricted_paths(l, k, N)) {
                    for (const YoungDiagram& a : enumerate_young(N, a_max)) {
                        ++res.instances;
                        SpectralKey key(r, a);
                        SpectralKey back = decode(encode(key));
                        if (!(back == key)) {
                            res.pass = false;
                            res.detail = "decode(encode(.)) != id at l=" + std::to_string(l) +
                                         " key=" + to_json(key).dump();
                            res.millis = t.millis();
                            return res;
                        }
                    }
                }
            }
            for (const FinitePath& p : enumerate_paths(l, k, e_max, detail::limits_of(opt))) {
                ++res.instances;
                Spectrum h = spectrum_of(p);
                Spectrum back = encode(decode(h));
                if (!(back == h)) {
                    res.pass = false;
                    res.detail = "encode(decode(.)) != id at path " + to_json(p).dump();
                    res.millis = t.millis();
                    return res;
                }
            }
        }
    }
    res.millis = t.millis();
    return res;
}

/// E(p) = d(r) + |a| on every fiber, and the fiber index set is exactly
/// { keys with d + |a| <= E_max }.
inline CheckResult verify_prop41(const VerifyOptions& opt = {}) {
    detail::timer t;
    CheckResult res;
    res.name = "prop4.1";
    long long e_max = opt.e_max < 0 ? 8 : opt.e_max;
    for (int l : detail::levels_or(opt, {1, 2, 3})) {
        for (int k : detail::boundaries(opt, l)) {
            auto fib = fibers(l, k, e_max, detail::limits_of(opt));
            std::vector<SpectralKey> present;
            for (const auto& [key, paths] : fib) {
                present.push_back(key);
                long long want = degree(key.r) + key.a.box_count();
                for (const FinitePath& p : paths) {
                    ++res.instances;
                    if (energy(p) != want) {
                        res.pass = false;
                        res.detail = "E != d + |a| at " + to_json(p).dump() +
                                     " key=" + to_json(key).dump();
                        res.millis = t.millis();
                        return res;
                    }
                }
            }
            std::vector<SpectralKey> expect = detail::expected_keys(l, k, e_max);
            if (present != expect) {
                res.pass = false;
                res.detail = "fiber key set mismatch at l=" + std::to_string(l) +
                             " k=" + std::to_string(k) + " (" +
                             std::to_string(present.size()) + " present vs " +
                             std::to_string(expect.size()) + " expected)";
                res.millis = t.millis();
                return res;
            }
        }
    }
    res.millis = t.millis();
    return res;
}

/// Each fiber's z-character equals both the beta product and the transfer
/// matrix evaluation.
inline CheckResult verify_thm42(const VerifyOptions& opt = {}) {
    detail::timer t;
    CheckResult res;
    res.name = "thm4.2";
    long long e_max = opt.e_max < 0 ? 8 : opt.e_max;
    for (int l : detail::levels_or(opt, {1, 2, 3})) {
        for (int k : detail::boundaries(opt, l)) {
            auto fib = fibers(l, k, e_max, detail::limits_of(opt));
            std::vector<const std::pair<const SpectralKey, std::vector<FinitePath>>*> items;
            for (const auto& kv : fib) items.push_back(&kv);
            std::vector<std::string> fails =
                parallel_map<std::string>(static_cast<long long>(items.size()), opt.jobs,
                                          [&](long long i) -> std::string {
                    const auto& [key, paths] = *items[static_cast<std::size_t>(i)];
                    ZLaurent direct = detail::weight_sum(paths);
                    ZLaurent closed = fiber_z_character_closed(key);
                    ZLaurent via_T = fiber_z_character(key);
                    if (!(direct == closed) || !(direct == via_T))
                        return "fiber character mismatch at key " + to_json(key).dump();
                    return {};
                });
            res.instances += static_cast<long long>(items.size());
            for (const std::string& f : fails) {
                if (!f.empty()) {
                    res.pass = false;
                    res.detail = f + " (l=" + std::to_string(l) + " k=" + std::to_string(k) + ")";
                    res.millis = t.millis();
                    return res;
                }
            }
        }
    }
    res.millis = t.millis();
    return res;
}

/// (M_a M_{l-a})^n = V_a H_{l-a}.
inline CheckResult verify_lemma45(const VerifyOptions& opt = {}) {
    detail::timer t;
    CheckResult res;
    res.name = "lemma4.5";
    int n_max = opt.n_max < 0 ? 3 : opt.n_max;
    for (int l : detail::levels_or(opt, {1, 2, 3, 4})) {
        for (int a = 0; a <= l; ++a) {
            for (int n = 1; n <= n_max; ++n) {
                ++res.instances;
                if (!check_lemma_45(a, n, l)) {
                    res.pass = false;
                    res.detail = "l=" + std::to_string(l) + " a=" + std::to_string(a) +
                                 " n=" + std::to_string(n);
                    res.millis = t.millis();
                    return res;
                }
            }
        }
    }
    res.millis = t.millis();
    return res;
}

/// Diagrams with equal beta give equal F, tested over all diagrams of depth
/// <= n_max with entries <= 2 against every admissible restricted path.
inline CheckResult verify_lemma46(const VerifyOptions& opt = {}) {
    detail::timer t;
    CheckResult res;
    res.name = "lemma4.6";
    int n_max = opt.n_max < 0 ? 6 : opt.n_max;
    for (int l : detail::levels_or(opt, {3})) {
        for (int N = 0; N <= n_max; ++N) {
            std::vector<YoungDiagram> diagrams;
            {
                std::vector<int> a(static_cast<std::size_t>(N), 0);
                auto rec = [&](auto&& self, int i) -> void {
                    if (i > N) {
                        diagrams.emplace_back(a);
                        return;
                    }
                    for (int v = 0; v <= 2; ++v) {
                        a[static_cast<std::size_t>(i - 1)] = v;
                        self(self, i + 1);
                    }
                };
                rec(rec, 1);
            }
            for (int k : detail::boundaries(opt, l)) {
                if (N < k || (N - k) % 2 != 0) continue;
                for (const RestrictedPath& r : enumerate_restricted_paths(l, k, N)) {
                    std::map<std::vector<int>, ZLaurent> by_beta;
                    for (const YoungDiagram& a : diagrams) {
                        ++res.instances;
                        SpectralKey key(r, a);
                        ZLaurent f = fiber_F(key);
                        auto [it, fresh] = by_beta.try_emplace(beta_partition(a), f);
                        if (!fresh && !(it->second == f)) {
                            res.pass = false;
                            res.detail = "F differs within a beta class at key " +
                                         to_json(key).dump();
                            res.millis = t.millis();
                            return res;
                        }
                    }
                }
            }
        }
    }
    res.millis = t.millis();
    return res;
}

/// G_N: definition = closed form = recursion, and the Rogers-Szego
/// polynomial matches its alternate summation form.
inline CheckResult verify_prop52(const VerifyOptions& opt = {}) {
    detail::timer t;
    CheckResult res;
    res.name = "prop5.2";
    int n_max = opt.n_max < 0 ? 8 : opt.n_max;
    int order = opt.q_order < 0 ? 12 : opt.q_order;
    for (int N = 0; N <= n_max; ++N) {
        ++res.instances;
        BivariateSeries closed = G_closed(N, order);
        BivariateSeries rec = G_recursive(N, order);
        BivariateSeries def = G_definition(N, order);
        BivariateSeries via_rs = rogers_szego(N, order).times(
            series_invert(q_pochhammer(N, order)));
        if (!(closed == rec) || !(closed == def) || !(closed == via_rs)) {
            res.pass = false;
            res.detail = "G_" + std::to_string(N) + " routes disagree at order " +
                         std::to_string(order);
            res.millis = t.millis();
            return res;
        }
    }
    res.millis = t.millis();
    return res;
}

/// F_{N,k}: path sum = alternating sum = RSOS recursion, exactly.
inline CheckResult verify_prop53(const VerifyOptions& opt = {}) {
    detail::timer t;
    CheckResult res;
    res.name = "prop5.3";
    int n_max = opt.n_max < 0 ? 10 : opt.n_max;
    for (int l : detail::levels_or(opt, {1, 2, 3, 4})) {
        for (int k : detail::boundaries(opt, l)) {
            for (int N = k; N <= n_max; N += 2) {
                ++res.instances;
                int order = N * (N + 1) / 2 + 2;
                QSeries path = F_path_sum(N, k, l, order);
                QSeries bos = F_bosonic(N, k, l, order);
                QSeries rsos = F_rsos(N, k, l, order);
                if (!(path == bos) || !(path == rsos)) {
                    res.pass = false;
                    res.detail = "F routes disagree at l=" + std::to_string(l) +
                                 " k=" + std::to_string(k) + " N=" + std::to_string(N) +
                                 ": path=" + path.str() + " bosonic=" + bos.str() +
                                 " rsos=" + rsos.str();
                    res.millis = t.millis();
                    return res;
                }
            }
        }
    }
    res.millis = t.millis();
    return res;
}

/// The positive fermionic sum matches the path sum after one global q-power
/// per (k,l); the constants are reported.
inline CheckResult verify_fermionic(const VerifyOptions& opt = {}) {
    detail::timer t;
    CheckResult res;
    res.name = "fermionic";
    int n_max = opt.n_max < 0 ? 8 : opt.n_max;
    std::ostringstream report;
    for (int l : detail::levels_or(opt, {1, 2, 3})) {
        for (int k : detail::boundaries(opt, l)) {
            std::optional<Rational> extra;
            for (int N = k; N <= n_max; N += 2) {
                ++res.instances;
                int order = N * (N + 1) / 2 + 8;
                FermionicResult fr = F_fermionic(N, k, l, order);
                QSeries path = F_path_sum(N, k, l, order);
                if (!fr.representable || !(fr.value == path)) {
                    res.pass = false;
                    res.detail = "fermionic mismatch at l=" + std::to_string(l) +
                                 " k=" + std::to_string(k) + " N=" + std::to_string(N) +
                                 (fr.note.empty() ? "" : " (" + fr.note + ")");
                    res.millis = t.millis();
                    return res;
                }
                if (path.is_zero()) continue;
                if (!extra) {
                    extra = fr.extra;
                } else if (!(*extra == fr.extra)) {
                    res.pass = false;
                    res.detail = "normalization not constant in N at l=" + std::to_string(l) +
                                 " k=" + std::to_string(k) + " N=" + std::to_string(N) +
                                 ": " + extra->str() + " vs " + fr.extra.str();
                    res.millis = t.millis();
                    return res;
                }
            }
            if (extra)
                report << "l=" << l << " k=" << k
                       << " offset_vs_nominal=" << extra->str() << "; ";
        }
    }
    res.detail = report.str();
    res.millis = t.millis();
    return res;
}

/// The assembled F*G character equals exhaustive enumeration, coefficient by
/// coefficient, prefactor included.
inline CheckResult verify_thm21(const VerifyOptions& opt = {}) {
    detail::timer t;
    CheckResult res;
    res.name = "thm2.1";
    int order = opt.q_order < 0 ? 8 : opt.q_order;
    for (int l : detail::levels_or(opt, {1, 2, 3})) {
        std::vector<int> ks = detail::boundaries(opt, l);
        std::vector<std::string> fails = parallel_map<std::string>(
            static_cast<long long>(ks.size()), opt.jobs, [&](long long i) -> std::string {
                int k = ks[static_cast<std::size_t>(i)];
                BivariateSeries brute = brute_force_character(l, k, order, detail::limits_of(opt));
                BivariateSeries assembled = full_character(l, k, order);
                if (!(brute == assembled))
                    return "character mismatch at l=" + std::to_string(l) +
                           " k=" + std::to_string(k) + " order " + std::to_string(order);
                BivariateSeries keysum = character_from_keys(l, k, order);
                if (!(brute == keysum))
                    return "key-sum character mismatch at l=" + std::to_string(l) +
                           " k=" + std::to_string(k);
                return {};
            });
        res.instances += static_cast<long long>(ks.size());
        for (const std::string& f : fails) {
            if (!f.empty()) {
                res.pass = false;
                res.detail = f;
                res.millis = t.millis();
                return res;
            }
        }
    }
    res.millis = t.millis();
    return res;
}

/// The two definitions of the degree of a restricted path agree.
inline CheckResult verify_d_equivalence(const VerifyOptions& opt = {}) {
    detail::timer t;
    CheckResult res;
    res.name = "d-equivalence";
    int n_max = opt.n_max < 0 ? 10 : opt.n_max;
    for (int l : detail::levels_or(opt, {1, 2, 3, 4})) {
        for (int k : detail::boundaries(opt, l)) {
            for (int N = k; N <= n_max; N += 2) {
                for (const RestrictedPath& r : enumerate_restricted_paths(l, k, N)) {
                    ++res.instances;
                    if (degree(r) != degree_via_energy_function(r)) {
                        res.pass = false;
                        res.detail = "degree mismatch at r=" + join_ints(r.values());
                        res.millis = t.millis();
                        return res;
                    }
                }
            }
        }
    }
    res.millis = t.millis();
    return res;
}

inline CheckResult run_suite(const std::string& name, const VerifyOptions& opt = {}) {
    if (name == "prop2.2") return verify_prop22(opt);
    if (name == "thm3.5") return verify_thm35(opt);
    if (name == "prop4.1") return verify_prop41(opt);
    if (name == "thm4.2") return verify_thm42(opt);
    if (name == "lemma4.5") return verify_lemma45(opt);
    if (name == "lemma4.6") return verify_lemma46(opt);
    if (name == "prop5.2") return verify_prop52(opt);
    if (name == "prop5.3") return verify_prop53(opt);
    if (name == "fermionic") return verify_fermionic(opt);
    if (name == "thm2.1") return verify_thm21(opt);
    if (name == "d-equivalence") return verify_d_equivalence(opt);
    throw std::invalid_argument("unknown verification suite: " + name);
}

inline std::vector<std::string> all_suites() {
    return {"prop2.2", "thm3.5",  "prop4.1",   "thm4.2",  "lemma4.5",     "lemma4.6",
            "prop5.2", "prop5.3", "fermionic", "thm2.1",  "d-equivalence"};
}

}  // namespace specdec
