#pragma once

// Path space P(k) of the level-l vertex model: spins, local energies, total
// energy, sl_2 weight, and exhaustive enumeration below an energy bound.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "specdec/qz.hpp"

namespace specdec {

class resource_cap_exceeded : public std::runtime_error {
public:
    explicit resource_cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Level-l model data. Spins live in S = {l, l-2, ..., -l}; boundary labels
/// k = 0..l select the ground state p^(k) = (k, l-k, k, l-k, ...).
struct ModelParams {
    int level;

    explicit ModelParams(int l) : level(l) {
        if (l < 1) throw std::invalid_argument("level must be >= 1");
    }

    std::vector<int> spin_alphabet() const {
        std::vector<int> s;
        for (int v = level; v >= -level; v -= 2) s.push_back(v);
        return s;
    }

    bool is_spin(int s) const {
        return s >= -level && s <= level && (s - level) % 2 == 0;
    }

    void require_boundary(int k) const {
        if (k < 0 || k > level) throw std::invalid_argument("boundary label k out of 0..l");
    }

    /// Conformal weight Delta(k) = k(k+2) / (4(l+2)) as an exact rational.
    Rational conformal_weight(int k) const {
        require_boundary(k);
        return Rational(static_cast<long long>(k) * (k + 2), 4LL * (level + 2));
    }

    // i is 1-based throughout, matching positions along the path.
    int ground_path_at(int k, long long i) const { return (i % 2 != 0) ? k : level - k; }
    int ground_spin_at(int k, long long i) const {
        int v = level - 2 * k;
        return (i % 2 != 0) ? v : -v;
    }
    int ground_energy_at(int k, long long i) const { return (i % 2 != 0) ? k : level - k; }

    bool operator==(const ModelParams&) const = default;
};

/// Local energy H(s, s'): (s'+l)/2 when s+s' >= 0, else (l-s)/2.
inline int local_energy(int s, int s_next, int level) {
    ModelParams m(level);
    if (!m.is_spin(s) || !m.is_spin(s_next))
        throw std::invalid_argument("local_energy: argument not in the spin alphabet");
    if (s + s_next >= 0) return (s_next + level) / 2;
    return (level - s) / 2;
}

/// A path agreeing with the ground state p^(k) beyond a finite window
/// (p_1, ..., p_T). Canonical form keeps T even and minimal.
class FinitePath {
public:
    FinitePath(int l, int k, std::vector<int> window)
        : params_(l), k_(k), window_(std::move(window)) {
        params_.require_boundary(k_);
        if (window_.size() % 2 != 0)
            window_.push_back(params_.ground_path_at(k_, static_cast<long long>(window_.size()) + 1));
        validate();
        canonicalize();
    }

    int level() const { return params_.level; }
    int boundary() const { return k_; }
    const std::vector<int>& window() const { return window_; }
    long long window_length() const { return static_cast<long long>(window_.size()); }

    int height(long long i) const {
        if (i < 1) throw std::invalid_argument("path positions are 1-based");
        if (i <= window_length()) return window_[static_cast<std::size_t>(i - 1)];
        return params_.ground_path_at(k_, i);
    }

    int spin(long long i) const { return height(i + 1) - height(i); }

    bool operator==(const FinitePath&) const = default;

private:
    void validate() const {
        long long T = window_length();
        for (long long i = 1; i <= T; ++i) {
            int s = height(i) - height(i + 1);
            if (!params_.is_spin(s))
                throw std::invalid_argument("path step outside the spin alphabet");
        }
    }

    void canonicalize() {
        while (window_.size() >= 2) {
            long long T = window_length();
            if (window_[static_cast<std::size_t>(T - 1)] == params_.ground_path_at(k_, T) &&
                window_[static_cast<std::size_t>(T - 2)] == params_.ground_path_at(k_, T - 1)) {
                window_.pop_back();
                window_.pop_back();
            } else {
                break;
            }
        }
    }

    ModelParams params_;
    int k_;
    std::vector<int> window_;
};

/// Spin image of a path: s_i = p_{i+1} - p_i, with the alternating ground
/// tail (l-2k, -(l-2k), ...) beyond the window.
class SpinConfig {
public:
    SpinConfig(int l, int k, std::vector<int> window)
        : params_(l), k_(k), window_(std::move(window)) {
        params_.require_boundary(k_);
        if (window_.size() % 2 != 0)
            window_.push_back(params_.ground_spin_at(k_, static_cast<long long>(window_.size()) + 1));
        for (int s : window_)
            if (!params_.is_spin(s))
                throw std::invalid_argument("spin outside the alphabet");
        canonicalize();
    }

    int level() const { return params_.level; }
    int boundary() const { return k_; }
    const std::vector<int>& window() const { return window_; }
    long long window_length() const { return static_cast<long long>(window_.size()); }

    int spin(long long i) const {
        if (i < 1) throw std::invalid_argument("spin positions are 1-based");
        if (i <= window_length()) return window_[static_cast<std::size_t>(i - 1)];
        return params_.ground_spin_at(k_, i);
    }

    bool operator==(const SpinConfig&) const = default;

private:
    void canonicalize() {
        while (window_.size() >= 2) {
            long long T = window_length();
            if (window_[static_cast<std::size_t>(T - 1)] == params_.ground_spin_at(k_, T) &&
                window_[static_cast<std::size_t>(T - 2)] == params_.ground_spin_at(k_, T - 1)) {
                window_.pop_back();
                window_.pop_back();
            } else {
                break;
            }
        }
    }

    ModelParams params_;
    int k_;
    std::vector<int> window_;
};

inline SpinConfig path_to_spins(const FinitePath& p) {
    std::vector<int> s;
    for (long long i = 1; i <= p.window_length(); ++i) s.push_back(p.spin(i));
    return SpinConfig(p.level(), p.boundary(), std::move(s));
}

inline FinitePath spins_to_path(const SpinConfig& s) {
    ModelParams m(s.level());
    long long T = s.window_length();
    std::vector<int> p(static_cast<std::size_t>(T));
    int next = m.ground_path_at(s.boundary(), T + 1);
    for (long long i = T; i >= 1; --i) {
        next -= s.spin(i);
        p[static_cast<std::size_t>(i - 1)] = next;
    }
    return FinitePath(s.level(), s.boundary(), std::move(p));
}

/// Local energies h_i = H(s_i, s_{i+1}) for i = 1..T; beyond the window the
/// sequence equals h^(k) = (k, l-k, k, ...) position by position.
inline std::vector<int> local_energy_window(const FinitePath& p) {
    std::vector<int> h;
    for (long long i = 1; i <= p.window_length(); ++i)
        h.push_back(local_energy(p.spin(i), p.spin(i + 1), p.level()));
    return h;
}

/// E(p) = sum_i i (h_i - h_i^(k)); finite because deviations vanish beyond
/// the window.
inline long long energy(const FinitePath& p) {
    ModelParams m(p.level());
    std::vector<int> h = local_energy_window(p);
    long long e = 0;
    for (long long i = 1; i <= static_cast<long long>(h.size()); ++i)
        e += i * (h[static_cast<std::size_t>(i - 1)] - m.ground_energy_at(p.boundary(), i));
    return e;
}

/// Wt(p) = p_1.
inline int weight(const FinitePath& p) { return p.height(1); }

struct EnumLimits {
    long long max_paths = 10'000'000;
    int window = 0;  // 0 = automatic: 2 (E_max + l + 2)
};

/// All paths in P(k) with E(p) <= e_max, ordered lexicographically by
/// (window length, spin window).
///
/// The search runs over spin windows right-to-left inside a bounded window W.
/// Writing T_i = sum_{j>=i} (h_j - h_j^(k)), the nearest-neighbour property
/// of H gives T_i >= 0 for every suffix, and E = sum_i T_i, so the partial
/// energy accumulated from the right never decreases; pruning on it is exact.
/// Completeness in W is checked by the window-stabilization invariant
/// (enumerations at W and W+2 must agree), see the tests.
inline std::vector<FinitePath> enumerate_paths(int l, int k, long long e_max,
                                               EnumLimits limits = {}) {
    ModelParams m(l);
    m.require_boundary(k);
    if (e_max < 0) throw std::invalid_argument("enumerate_paths needs E_max >= 0");
    int W = limits.window > 0 ? limits.window : static_cast<int>(2 * (e_max + l + 2));
    if (W % 2 != 0) ++W;

    std::vector<int> alphabet = m.spin_alphabet();
    std::vector<int> spins(static_cast<std::size_t>(W));
    std::vector<FinitePath> out;

    // states[i] = spin s_{i+1} used when computing h_i = H(s_i, s_{i+1})
    auto rec = [&](auto&& self, int i, int s_next, long long tail_sum,
                   long long energy_acc) -> void {
        if (i == 0) {
            std::vector<int> p(static_cast<std::size_t>(W));
            int next = m.ground_path_at(k, W + 1);
            for (int j = W; j >= 1; --j) {
                next -= spins[static_cast<std::size_t>(j - 1)];
                p[static_cast<std::size_t>(j - 1)] = next;
            }
            out.emplace_back(l, k, std::move(p));
            if (static_cast<long long>(out.size()) > limits.max_paths)
                throw resource_cap_exceeded("enumerate_paths: path cap exceeded");
            return;
        }
        for (int s : alphabet) {
            int h = local_energy(s, s_next, l);
            long long t = tail_sum + (h - m.ground_energy_at(k, i));
            if (t < 0) throw std::logic_error("suffix deviation sum went negative");
            long long e = energy_acc + t;
            if (e > e_max) continue;
            spins[static_cast<std::size_t>(i - 1)] = s;
            self(self, i - 1, s, t, e);
        }
    };
    rec(rec, W, m.ground_spin_at(k, W + 1), 0, 0);

    std::sort(out.begin(), out.end(), [](const FinitePath& a, const FinitePath& b) {
        if (a.window_length() != b.window_length())
            return a.window_length() < b.window_length();
        std::vector<int> sa, sb;
        for (long long i = 1; i <= a.window_length(); ++i) sa.push_back(a.spin(i));
        for (long long i = 1; i <= b.window_length(); ++i) sb.push_back(b.spin(i));
        return sa < sb;
    });
    return out;
}

}  // namespace specdec
