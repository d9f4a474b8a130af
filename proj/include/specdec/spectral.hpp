#pragma once

// Spectrum of the path space under the local energy functions, elementary
// block parsing, and the decoding bijection onto restricted paths x Young
// diagrams, together with the statistics d(r), |a| and beta(a).

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "specdec/paths.hpp"

namespace specdec {

/// A local-energy sequence with finite deviation from h^(k): entries equal
/// h^(k) = (k, l-k, k, ...) position by position beyond the stored window.
/// Invariants are the ones characterizing achievable spectra: values in
/// 0..l and adjacent sums >= l, including across the seam into the tail.
class Spectrum {
public:
    Spectrum(int l, int k, std::vector<int> window)
        : params_(l), k_(k), window_(std::move(window)) {
        params_.require_boundary(k_);
        canonicalize();
        validate();
    }

    int level() const { return params_.level; }
    int boundary() const { return k_; }
    const std::vector<int>& window() const { return window_; }
    long long window_length() const { return static_cast<long long>(window_.size()); }

    int at(long long i) const {
        if (i < 1) throw std::invalid_argument("spectrum positions are 1-based");
        if (i <= window_length()) return window_[static_cast<std::size_t>(i - 1)];
        return params_.ground_energy_at(k_, i);
    }

    bool operator==(const Spectrum&) const = default;

private:
    void canonicalize() {
        while (!window_.empty() &&
               window_.back() == params_.ground_energy_at(k_, window_length())) {
            window_.pop_back();
        }
    }

    void validate() const {
        for (long long i = 1; i <= window_length(); ++i) {
            if (window_[static_cast<std::size_t>(i - 1)] < 0 ||
                window_[static_cast<std::size_t>(i - 1)] > params_.level)
                throw std::invalid_argument("spectrum entry outside 0..l");
        }
        for (long long i = 1; i <= window_length(); ++i) {
            if (at(i) + at(i + 1) < params_.level)
                throw std::invalid_argument("nearest-neighbour condition h_i + h_{i+1} >= l violated");
        }
    }

    ModelParams params_;
    int k_;
    std::vector<int> window_;
};

inline Spectrum spectrum_of(const FinitePath& p) {
    return Spectrum(p.level(), p.boundary(), local_energy_window(p));
}

/// One finite elementary block: a maximal segment whose adjacent entries sum
/// to exactly l, recorded as (initial value, length).
struct Block {
    int initial = 0;
    long long length = 0;
    bool operator==(const Block&) const = default;
};

/// Segmentation of a spectrum into elementary blocks plus the infinite tail
/// block. M is the position where the tail block starts, minus one; J counts
/// the finite blocks of odd length; h_sharp = (l_1, ..., l_J, l_{J+1}).
struct BlockDecomposition {
    int level = 0;
    int k = 0;
    std::vector<Block> blocks;
    int tail_initial = 0;  // l_{J+1}
    long long M = 0;
    int J = 0;
    std::vector<int> h_sharp;
};

inline BlockDecomposition parse_blocks(const Spectrum& h) {
    ModelParams m(h.level());
    BlockDecomposition d;
    d.level = h.level();
    d.k = h.boundary();
    d.M = h.window_length();
    d.tail_initial = m.ground_energy_at(h.boundary(), d.M + 1);

    long long i = 1;
    while (i <= d.M) {
        long long j = i;
        while (j < d.M && h.at(j) + h.at(j + 1) == h.level()) ++j;
        d.blocks.push_back(Block{h.at(i), j - i + 1});
        i = j + 1;
    }
    for (const Block& b : d.blocks) {
        if (b.length % 2 != 0) {
            ++d.J;
            d.h_sharp.push_back(b.initial);
        }
    }
    d.h_sharp.push_back(d.tail_initial);
    if ((d.M - d.J) % 2 != 0)
        throw std::logic_error("block parse: M and J have different parities");
    return d;
}

/// Rebuild the spectrum window from its block decomposition.
inline Spectrum blocks_to_spectrum(const BlockDecomposition& d) {
    std::vector<int> w;
    for (const Block& b : d.blocks) {
        int v = b.initial;
        for (long long t = 0; t < b.length; ++t) {
            w.push_back(t % 2 == 0 ? v : d.level - v);
        }
    }
    return Spectrum(d.level, d.k, std::move(w));
}

/// Level-l restricted path: r_0 = 0, r_N = k, steps of +-1 inside 0..l.
class RestrictedPath {
public:
    RestrictedPath(int l, std::vector<int> seq) : level_(l), seq_(std::move(seq)) {
        if (l < 1) throw std::invalid_argument("level must be >= 1");
        if (seq_.empty() || seq_.front() != 0)
            throw std::invalid_argument("restricted path must start at 0");
        for (std::size_t i = 0; i < seq_.size(); ++i) {
            if (seq_[i] < 0 || seq_[i] > l)
                throw std::invalid_argument("restricted path leaves 0..l");
            if (i > 0 && std::abs(seq_[i] - seq_[i - 1]) != 1)
                throw std::invalid_argument("restricted path step is not +-1");
        }
    }

    int level() const { return level_; }
    int length() const { return static_cast<int>(seq_.size()) - 1; }  // N
    int endpoint() const { return seq_.back(); }                      // k
    const std::vector<int>& values() const { return seq_; }
    int at(int i) const { return seq_.at(static_cast<std::size_t>(i)); }

    /// Positions 0 < t_1 < ... < t_J < N of the strict turning points.
    std::vector<int> extrema_positions() const {
        std::vector<int> t;
        for (int i = 1; i < length(); ++i) {
            if ((at(i) > at(i - 1)) != (at(i + 1) > at(i))) t.push_back(i);
        }
        return t;
    }

    bool operator==(const RestrictedPath&) const = default;

private:
    int level_;
    std::vector<int> seq_;
};

/// d(r): each local maximum at position t contributes N - t.
inline long long degree(const RestrictedPath& r) {
    int N = r.length();
    long long d = 0;
    long long n = 0;
    for (int i = 2; i <= N; ++i) {
        if (r.at(i - 2) == r.at(i) && r.at(i) < r.at(i - 1)) ++n;
        d += n;
    }
    return d;
}

/// d(r) recomputed as a configuration-sum energy: position j from the far
/// end contributes j when the step pair there is (up, down).
inline long long degree_via_energy_function(const RestrictedPath& r) {
    int N = r.length();
    long long d = 0;
    for (int j = 1; j <= N - 1; ++j) {
        int first = r.at(N - j) - r.at(N + 1 - j);
        int second = r.at(N - 1 - j) - r.at(N - j);
        if (first > 0 && second < 0) d += j;
    }
    return d;
}

/// Young diagram of depth N in multiplicity form a = (a_1, ..., a_N); the
/// partition view is lambda_j = sum_{i <= N+1-j} a_i.
class YoungDiagram {
public:
    explicit YoungDiagram(std::vector<int> a) : a_(std::move(a)) {
        for (int v : a_)
            if (v < 0) throw std::invalid_argument("diagram multiplicities must be >= 0");
    }

    static YoungDiagram zero(int depth) {
        return YoungDiagram(std::vector<int>(static_cast<std::size_t>(depth), 0));
    }

    int depth() const { return static_cast<int>(a_.size()); }  // N
    const std::vector<int>& multiplicities() const { return a_; }
    int at(int i) const { return a_.at(static_cast<std::size_t>(i - 1)); }  // a_i, 1-based

    std::vector<long long> partition() const {
        int N = depth();
        std::vector<long long> lambda(static_cast<std::size_t>(N), 0);
        long long run = 0;
        for (int i = 1; i <= N; ++i) {
            run += at(i);
            lambda[static_cast<std::size_t>(N - i)] = run;
        }
        return lambda;
    }

    /// |a| = sum_i (N+1-i) a_i, the number of boxes.
    long long box_count() const {
        long long s = 0;
        for (int i = 1; i <= depth(); ++i)
            s += static_cast<long long>(depth() + 1 - i) * at(i);
        return s;
    }

    bool operator==(const YoungDiagram&) const = default;

private:
    std::vector<int> a_;
};

/// Ordered composition of N attached to a diagram: with beta_1 < ... <
/// beta_{s-1} the positions of the nonzero entries among a_2..a_N, the parts
/// are the consecutive gaps (beta_1 - 1, beta_2 - beta_1, ..., N+1 - beta_{s-1}).
/// The zero diagram (and any diagram whose only nonzero entry is a_1) maps
/// to (N). a_1 is deliberately excluded.
inline std::vector<int> beta_partition(const YoungDiagram& a) {
    int N = a.depth();
    if (N == 0) return {};
    std::vector<int> parts;
    int prev = 1;  // beta_0 = 1
    for (int i = 2; i <= N; ++i) {
        if (a.at(i) != 0) {
            parts.push_back(i - prev);
            prev = i;
        }
    }
    parts.push_back(N + 1 - prev);
    return parts;
}

struct SpectralKey {
    RestrictedPath r;
    YoungDiagram a;

    SpectralKey(RestrictedPath rp, YoungDiagram ad) : r(std::move(rp)), a(std::move(ad)) {
        if (r.length() != a.depth())
            throw std::invalid_argument("restricted path and diagram have different N");
    }

    int level() const { return r.level(); }
    int boundary() const { return r.endpoint(); }
    int length() const { return r.length(); }

    bool operator==(const SpectralKey&) const = default;

    friend bool operator<(const SpectralKey& x, const SpectralKey& y) {
        if (x.length() != y.length()) return x.length() < y.length();
        if (x.r.values() != y.r.values()) return x.r.values() < y.r.values();
        return x.a.multiplicities() < y.a.multiplicities();
    }
};

namespace detail {

/// Group boundaries 0 = t_0 < t_1 < ... < t_{J+1} = N derived from the block
/// initials l_0 = l, l_1, ..., l_{J+1}.
inline std::vector<long long> group_boundaries(int level, const std::vector<int>& h_sharp) {
    std::vector<long long> t{0};
    int prev = level;  // l_0
    for (std::size_t i = 0; i < h_sharp.size(); ++i) {
        long long step = h_sharp[i] - level + prev;
        // Interior boundaries are strict; the final group is empty exactly
        // for the pure ground state at k = 0.
        if (step < 1 && i + 1 < h_sharp.size()) throw std::logic_error("non-increasing group boundary");
        if (step < 0) throw std::logic_error("negative group boundary step");
        t.push_back(t.back() + step);
        prev = h_sharp[i];
    }
    return t;
}

}  // namespace detail

/// Decode a spectrum into its key (r(h), a(h)).
inline SpectralKey decode(const Spectrum& h) {
    const int l = h.level();
    const int k = h.boundary();
    BlockDecomposition d = parse_blocks(h);

    std::vector<long long> t = detail::group_boundaries(l, d.h_sharp);
    const int J = d.J;
    const long long N = t.back();

    // a(h): run multiplicities. Group j covers a-indices t_j+1 .. t_{j+1},
    // holding the runs [[l - l_j]], [[l - l_j + 1]], ..., [[l_{j+1} - 1]].
    std::vector<int> a(static_cast<std::size_t>(N), 0);
    int group = 0;
    int floor_value = 0;  // l - l_0
    int last_value = -1;
    for (const Block& b : d.blocks) {
        if (b.length % 2 == 0) {
            int v = b.initial;
            if (v < floor_value || (group > 0 && v == floor_value) || v <= last_value)
                throw std::logic_error("even block initial breaks the interlacing");
            long long idx = t[static_cast<std::size_t>(group)] + (v - floor_value) + 1;
            if (idx < 1 || idx > t[static_cast<std::size_t>(group + 1)])
                throw std::logic_error("run index outside its group");
            a[static_cast<std::size_t>(idx - 1)] = static_cast<int>(b.length / 2);
            last_value = v;
        } else {
            int li = b.initial;
            ++group;
            if (li != d.h_sharp[static_cast<std::size_t>(group - 1)])
                throw std::logic_error("odd block initial disagrees with h_sharp");
            floor_value = l - li;
            last_value = floor_value - 1;
            long long c = (b.length - 1) / 2;
            long long idx = t[static_cast<std::size_t>(group)] + 1;
            if (idx <= N) {
                a[static_cast<std::size_t>(idx - 1)] = static_cast<int>(c);
            } else if (c != 0) {
                throw std::logic_error("trailing pairs after the last group");
            }
        }
    }
    if (group != J) throw std::logic_error("odd block count disagrees with J");

    // r(h): piecewise monotone through the extrema (l_1, l-l_2, l_3, ...)
    // located at t_1, ..., t_J, ending at k.
    std::vector<int> r(static_cast<std::size_t>(N) + 1, 0);
    int value = 0;
    long long pos = 0;
    for (int i = 1; i <= J + 1; ++i) {
        int li = d.h_sharp[static_cast<std::size_t>(i - 1)];
        int target;
        if (i == J + 1) {
            target = (J % 2 == 0) ? li : l - li;
        } else {
            target = (i % 2 != 0) ? li : l - li;
        }
        int dir = target > value ? 1 : -1;
        while (value != target) {
            value += dir;
            ++pos;
            r[static_cast<std::size_t>(pos)] = value;
        }
        if (pos != t[static_cast<std::size_t>(i)])
            throw std::logic_error("extremum landed at the wrong position");
    }
    if (value != k) throw std::logic_error("restricted path does not end at k");

    return SpectralKey(RestrictedPath(l, std::move(r)),
                       YoungDiagram(std::move(a)));
}

/// Inverse of decode: assemble the spectrum window from the key.
inline Spectrum encode(const SpectralKey& key) {
    const int l = key.level();
    const int k = key.boundary();
    const int N = key.length();
    const RestrictedPath& r = key.r;

    std::vector<int> tpos = r.extrema_positions();
    const int J = static_cast<int>(tpos.size());

    std::vector<int> h_sharp;
    for (int i = 1; i <= J; ++i) {
        int e = r.at(tpos[static_cast<std::size_t>(i - 1)]);
        h_sharp.push_back(i % 2 != 0 ? e : l - e);
    }
    h_sharp.push_back(J % 2 == 0 ? k : l - k);

    std::vector<long long> t = detail::group_boundaries(l, h_sharp);
    if (t.back() != N) throw std::logic_error("encode: group boundaries do not sum to N");

    std::vector<int> w;
    for (int j = 0; j <= J; ++j) {
        int lj = (j == 0) ? l : h_sharp[static_cast<std::size_t>(j - 1)];
        int floor_value = l - lj;
        long long count = t[static_cast<std::size_t>(j + 1)] - t[static_cast<std::size_t>(j)];
        for (long long s = 0; s < count; ++s) {
            int v = floor_value + static_cast<int>(s);
            int mult = key.a.at(static_cast<int>(t[static_cast<std::size_t>(j)] + s + 1));
            for (int rep = 0; rep < mult; ++rep) {
                w.push_back(v);
                w.push_back(l - v);
            }
        }
        if (j < J) w.push_back(h_sharp[static_cast<std::size_t>(j)]);
    }
    return Spectrum(l, k, std::move(w));
}

/// All level-l restricted paths of length N from 0 to k, lexicographic.
inline std::vector<RestrictedPath> enumerate_restricted_paths(int l, int k, int N) {
    ModelParams m(l);
    m.require_boundary(k);
    std::vector<RestrictedPath> out;
    if (N < 0 || N < k || (N - k) % 2 != 0) return out;
    std::vector<int> seq{0};
    auto rec = [&](auto&& self, int i, int value) -> void {
        if (i == N) {
            if (value == k) out.emplace_back(l, seq);
            return;
        }
        int remaining = N - i;
        for (int step : {-1, +1}) {
            int v = value + step;
            if (v < 0 || v > l) continue;
            if (std::abs(k - v) > remaining - 1) continue;
            seq.push_back(v);
            self(self, i + 1, v);
            seq.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

/// All diagrams of depth N with |a| <= size_max, lexicographic in a.
inline std::vector<YoungDiagram> enumerate_young(int N, long long size_max) {
    if (N < 0) throw std::invalid_argument("depth must be >= 0");
    std::vector<YoungDiagram> out;
    std::vector<int> a(static_cast<std::size_t>(N), 0);
    auto rec = [&](auto&& self, int i, long long budget) -> void {
        if (i > N) {
            out.emplace_back(a);
            return;
        }
        long long w = N + 1 - i;
        for (long long v = 0; v * w <= budget; ++v) {
            a[static_cast<std::size_t>(i - 1)] = static_cast<int>(v);
            self(self, i + 1, budget - v * w);
        }
        a[static_cast<std::size_t>(i - 1)] = 0;
    };
    rec(rec, 1, size_max);
    return out;
}

/// Group all paths with E <= e_max by their decoded key.
inline std::map<SpectralKey, std::vector<FinitePath>> fibers(int l, int k, long long e_max,
                                                             EnumLimits limits = {}) {
    std::map<SpectralKey, std::vector<FinitePath>> out;
    for (FinitePath& p : enumerate_paths(l, k, e_max, limits)) {
        SpectralKey key = decode(spectrum_of(p));
        out.try_emplace(key).first->second.push_back(std::move(p));
    }
    return out;
}

}  // namespace specdec
