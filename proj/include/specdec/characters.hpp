#pragma once

// Character machinery: the diagram generating function G_N (definition,
// closed form, recursion, Rogers-Szego), the restricted-path generating
// function F_{N,k} (path sum, alternating sum, RSOS recursion, fermionic
// sum), and the assembled characters of the path space.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "specdec/transfer.hpp"

namespace specdec {

/// G_N by its definition: sum over diagrams of depth N of q^{|a|} prod chi_b,
/// truncated to |a| <= order.
inline BivariateSeries G_definition(int N, int order) {
    BivariateSeries g = BivariateSeries::zero(order);
    for (const YoungDiagram& a : enumerate_young(N, order)) {
        ZLaurent prod = ZLaurent::one();
        for (int b : beta_partition(a)) prod *= chi(b);
        g += BivariateSeries::from_z(prod, order).times_q_power(static_cast<int>(a.box_count()));
    }
    return g;
}

/// Rogers-Szego polynomial H_N(q,z) = sum_n [N over n] z^{N-2n} via the
/// three-term recursion H_N = (z + z^{-1}) H_{N-1} - (1 - q^{N-1}) H_{N-2}.
inline BivariateSeries rogers_szego(int N, int order) {
    if (N < 0) throw std::invalid_argument("rogers_szego needs N >= 0");
    BivariateSeries prev = BivariateSeries::from_q(QSeries::one(order));  // H_0
    if (N == 0) return prev;
    ZLaurent zpzi = chi(1);  // z + z^{-1}
    BivariateSeries cur = BivariateSeries::from_z(zpzi, order);  // H_1
    for (int n = 2; n <= N; ++n) {
        QSeries f = QSeries::one(order);
        f.add_term(n - 1, -1);  // 1 - q^{n-1}
        BivariateSeries next = cur.times(zpzi) - prev.times(f);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Closed form G_N = (1/(q)_N) sum_n [N over n] z^{N-2n}.
inline BivariateSeries G_closed(int N, int order) {
    QSeries inv = series_invert(q_pochhammer(N, order));
    BivariateSeries g = BivariateSeries::zero(order);
    for (int n = 0; n <= N; ++n)
        g.add_z_term(N - 2 * n, q_binomial(N, n, order) * inv);
    return g;
}

/// G_N by the recursion G_N = sum_{b=1}^N q^{N-b} chi_b G_{N-b} / (1 - q^N).
/// The exponent is N-b: peeling the last part b off a composition of N
/// leaves partial sums totalling N-b.
inline BivariateSeries G_recursive(int N, int order) {
    if (N < 0) throw std::invalid_argument("G_recursive needs N >= 0");
    std::vector<BivariateSeries> g;
    g.push_back(BivariateSeries::from_q(QSeries::one(order)));
    for (int n = 1; n <= N; ++n) {
        BivariateSeries acc = BivariateSeries::zero(order);
        for (int b = 1; b <= n; ++b)
            acc += g[static_cast<std::size_t>(n - b)].times(chi(b)).times_q_power(n - b);
        QSeries denom = QSeries::one(order);
        denom.add_term(n, -1);  // 1 - q^n
        g.push_back(acc.times(series_invert(denom)));
    }
    return g.back();
}

/// F_{N,k} as the definitional sum over restricted paths of q^{d(r)}.
inline QSeries F_path_sum(int N, int k, int l, int order) {
    QSeries f = QSeries::zero(order);
    for (const RestrictedPath& r : enumerate_restricted_paths(l, k, N)) {
        long long d = degree(r);
        if (d <= order) f.add_term(static_cast<int>(d), 1);
    }
    return f;
}

/// F_{N,k} as the alternating sum
///   sum_j { q^{j(k+1)+j^2(l+2)} [N over (N-k-2j(l+2))/2]
///         - q^{-j(k+1)+j^2(l+2)} [N over (N+k+2-2j(l+2))/2] }.
/// Only finitely many j have a binomial argument inside [0, N].
inline QSeries F_bosonic(int N, int k, int l, int order) {
    QSeries f = QSeries::zero(order);
    long long span = 2LL * N + k + 2;
    long long jmax = span / (2LL * (l + 2)) + 1;
    for (long long j = -jmax; j <= jmax; ++j) {
        long long shift = 2 * j * (l + 2);
        QSeries plus = q_binomial_twice(N, N - k - shift, order);
        QSeries minus = q_binomial_twice(N, N + k + 2 - shift, order);
        long long e_plus = j * (k + 1) + j * j * (l + 2);
        long long e_minus = -j * (k + 1) + j * j * (l + 2);
        if (!plus.is_zero() && e_plus <= order)
            f += plus.times_q_power(static_cast<int>(e_plus));
        if (!minus.is_zero() && e_minus <= order)
            f -= minus.times_q_power(static_cast<int>(e_minus));
    }
    return f;
}

/// F_{N,k} by the level-l RSOS corner recursion. State (n, n+1) or (n, n-1)
/// with n on 0..l; length N+1 values are built from length N by
///   F_{N+1}(m,n,n+1) = F_N(m,n-1,n) + F_N(m,n+1,n)
///   F_{N+1}(m,n,n-1) = q^{N+1} F_N(m,n-1,n) + F_N(m,n+1,n)
/// with F_N(m,-1,0) = F_N(m,l+1,l) = 0, seeded at N = 1 by
///   F_1(m,n,n+1) = 1 at n = m -+ 1, F_1(m,n,n-1) = q^{(n-m+1)/2} there.
/// The answer is F_N(k,0,1).
inline QSeries F_rsos(int N, int k, int l, int order) {
    if (N < 1) {
        QSeries f = QSeries::zero(order);
        if (N == 0 && k == 0) f.add_term(0, 1);
        return f;
    }
    const int m = k;
    // up[n] = F(m, n, n+1) for n in 0..l-1; down[n] = F(m, n, n-1) for n in 1..l
    std::vector<QSeries> up(static_cast<std::size_t>(l + 1), QSeries::zero(order));
    std::vector<QSeries> down(static_cast<std::size_t>(l + 1), QSeries::zero(order));
    for (int n = 0; n <= l; ++n) {
        if (n == m - 1 || n == m + 1) {
            if (n + 1 <= l) up[static_cast<std::size_t>(n)].add_term(0, 1);
            if (n - 1 >= 0)
                down[static_cast<std::size_t>(n)].add_term((n - m + 1) / 2, 1);
        }
    }
    for (int len = 2; len <= N; ++len) {
        std::vector<QSeries> up2(static_cast<std::size_t>(l + 1), QSeries::zero(order));
        std::vector<QSeries> down2(static_cast<std::size_t>(l + 1), QSeries::zero(order));
        for (int n = 0; n <= l; ++n) {
            // F_len(m, n, n+1) = F_{len-1}(m, n-1, n) + F_{len-1}(m, n+1, n)
            if (n + 1 <= l) {
                QSeries v = QSeries::zero(order);
                if (n - 1 >= 0) v += up[static_cast<std::size_t>(n - 1)];
                v += down[static_cast<std::size_t>(n + 1)];
                up2[static_cast<std::size_t>(n)] = v;
            }
            // F_len(m, n, n-1) = q^len F_{len-1}(m, n-1, n) + F_{len-1}(m, n+1, n)
            if (n - 1 >= 0) {
                QSeries v = QSeries::zero(order);
                if (len <= order) v += up[static_cast<std::size_t>(n - 1)].times_q_power(len);
                if (n + 1 <= l) v += down[static_cast<std::size_t>(n + 1)];
                down2[static_cast<std::size_t>(n)] = v;
            }
        }
        up = std::move(up2);
        down = std::move(down2);
    }
    return up[0];
}

/// Outcome of the fermionic evaluation. `normalization` is the q-power
/// applied to the raw positive sum; `extra` is its offset against the
/// nominal -(k + N^2)/4, expected to vanish and required to be constant in
/// N for fixed (k, l).
struct FermionicResult {
    bool representable = false;
    QSeries value;
    Rational normalization;
    Rational extra;
    std::string note;

    explicit FermionicResult(int order) : value(QSeries::zero(order)) {}
};

/// F_{N,k} as the positive q-binomial sum over (m_2, ..., m_l) with
/// m_1 = N, m_{l+1} = 0, parity of m_i fixed to odd exactly when i <= k and
/// i = k (mod 2), weight q^{(1/2)(N^2 + sum m_i^2 - N m_2 - sum m_i m_{i+1})}
/// and factors [ (m_{i-1} + m_{i+1} + delta_{i,k+1})/2 over m_i ].
/// Exponents are tracked in quarter units; the applied normalization aligns
/// the lowest term with the path sum and is reported exactly.
inline FermionicResult F_fermionic(int N, int k, int l, int order) {
    FermionicResult res(order);
    if (N < k || (N - k) % 2 != 0) {
        res.representable = true;
        res.note = "empty";
        return res;
    }

    // quarter-exponent -> coefficient of the raw sum (all terms positive)
    std::map<long long, coeff_t> raw;
    std::vector<long long> m(static_cast<std::size_t>(l + 2), 0);
    m[1] = N;
    m[static_cast<std::size_t>(l + 1)] = 0;

    // Each m_i ranges over its parity class up to a cap the quadratic form
    // makes safe for the requested order: consecutive differences beyond
    // sqrt(4*order + k) already push the exponent past it.
    long long cap = 0;
    {
        long long s = 1;
        while (s * s < 4LL * order + k + 1) ++s;
        cap = static_cast<long long>(l) * s + N + 2;
    }
    auto walk = [&](auto&& self, int i) -> void {
        if (i > l) {
            long long quad = static_cast<long long>(N) * N;
            for (int t = 2; t <= l; ++t) quad += m[static_cast<std::size_t>(t)] * m[static_cast<std::size_t>(t)];
            for (int t = 1; t <= l - 1; ++t)
                quad -= m[static_cast<std::size_t>(t)] * m[static_cast<std::size_t>(t + 1)];
            QSeries prod = QSeries::one(order);
            for (int t = 2; t <= l; ++t) {
                long long twice_upper = m[static_cast<std::size_t>(t - 1)] +
                                        m[static_cast<std::size_t>(t + 1)] +
                                        (t == k + 1 ? 1 : 0);
                prod = prod * q_binomial_twice_both(twice_upper, 2 * m[static_cast<std::size_t>(t)], order);
                if (prod.is_zero()) return;
            }
            for (auto [e, c] : prod.terms()) {
                long long quarter = 2 * quad + 4LL * e;
                auto it = raw.find(quarter);
                if (it == raw.end())
                    raw.emplace(quarter, c);
                else {
                    it->second = checked_add(it->second, c);
                    if (it->second == 0) raw.erase(it);
                }
            }
            return;
        }
        bool odd = (i <= k && (k - i) % 2 == 0);
        for (long long v = odd ? 1 : 0; v <= cap; v += 2) {
            m[static_cast<std::size_t>(i)] = v;
            self(self, i + 1);
        }
        m[static_cast<std::size_t>(i)] = 0;
    };
    walk(walk, 2);

    if (raw.empty()) {
        res.note = "raw sum vanished";
        return res;
    }

    QSeries path = F_path_sum(N, k, l, order);
    if (path.is_zero() || !path.min_degree()) {
        res.note = "path sum vanished";
        return res;
    }

    long long claimed_quarters = -(static_cast<long long>(k) + static_cast<long long>(N) * N);
    long long min_quarter = raw.begin()->first;
    long long extra_quarters =
        4LL * *path.min_degree() - (min_quarter + claimed_quarters);
    long long total_shift = claimed_quarters + extra_quarters;

    res.normalization = Rational(total_shift, 4);
    res.extra = Rational(extra_quarters, 4);

    QSeries value = QSeries::zero(order);
    for (auto [quarter, c] : raw) {
        long long shifted = quarter + total_shift;
        if (shifted < 0 || shifted % 4 != 0) {
            res.note = "no constant q-power yields integer exponents";
            return res;
        }
        long long e = shifted / 4;
        if (e <= order) value.add_term(static_cast<int>(e), c);
    }
    res.value = value;
    res.representable = true;
    return res;
}

/// Smallest q-degree present, or one past the order for a zero truncation.
inline int min_degree_or_past(const QSeries& s) {
    auto d = s.min_degree();
    return d ? *d : s.order() + 1;
}

enum class f_method { path_sum, bosonic, rsos };

inline QSeries F_by_method(f_method m, int N, int k, int l, int order) {
    switch (m) {
        case f_method::path_sum: return F_path_sum(N, k, l, order);
        case f_method::bosonic: return F_bosonic(N, k, l, order);
        case f_method::rsos: return F_rsos(N, k, l, order);
    }
    throw std::logic_error("unknown F method");
}

/// ch of the path space assembled as q^{Delta(k)} sum_N F_{N,k} G_N, with N
/// running over k, k+2, ... until the lowest degree of F exceeds the order
/// (checked to be nondecreasing, and confirmed one step past the cutoff).
inline BivariateSeries full_character(int l, int k, int order,
                                      f_method method = f_method::bosonic) {
    ModelParams params(l);
    params.require_boundary(k);
    BivariateSeries acc = BivariateSeries::zero(order, params.conformal_weight(k));
    int last_min = 0;
    int zero_streak = 0;
    for (int N = k;; N += 2) {
        if (N > k + 2 * order + 64)
            throw std::logic_error("character tail failed to leave the truncation window");
        QSeries f = F_by_method(method, N, k, l, order);
        int md = min_degree_or_past(f);
        if (md < last_min)
            throw std::logic_error("lowest F degree decreased while summing the character");
        last_min = md;
        if (f.is_zero()) {
            if (++zero_streak >= 2) break;
            continue;
        }
        zero_streak = 0;
        BivariateSeries term = G_closed(N, order).times(f);
        term.set_delta(params.conformal_weight(k));
        acc += term;
    }
    return acc;
}

/// ch of the path space summed key by key with the closed fiber characters:
/// q^{Delta(k)} sum over keys of q^{d + |a|} prod chi_{b_i}.
inline BivariateSeries character_from_keys(int l, int k, int order) {
    ModelParams params(l);
    params.require_boundary(k);
    BivariateSeries acc = BivariateSeries::zero(order, params.conformal_weight(k));
    int last_min = 0;
    int zero_streak = 0;
    for (int N = k;; N += 2) {
        if (N > k + 2 * order + 64)
            throw std::logic_error("character tail failed to leave the truncation window");
        long long best = -1;
        std::vector<RestrictedPath> rs = enumerate_restricted_paths(l, k, N);
        for (const RestrictedPath& r : rs) {
            long long d = degree(r);
            if (best < 0 || d < best) best = d;
        }
        if (best < 0) throw std::logic_error("no restricted paths of admissible length");
        if (static_cast<long long>(last_min) > best)
            throw std::logic_error("lowest degree decreased while summing the character");
        last_min = static_cast<int>(best > order ? order + 1 : best);
        if (best > order) {
            if (++zero_streak >= 2) break;
            continue;
        }
        zero_streak = 0;
        for (const RestrictedPath& r : rs) {
            long long d = degree(r);
            if (d > order) continue;
            for (const YoungDiagram& a : enumerate_young(N, order - d)) {
                SpectralKey key(r, a);
                acc += closed_form_fiber_character(key, order);
            }
        }
    }
    return acc;
}

/// ch of the path space by exhaustive enumeration: q^{Delta(k)} sum over all
/// paths with E <= order of q^{E} z^{Wt}. The normative oracle.
inline BivariateSeries brute_force_character(int l, int k, int order, EnumLimits limits = {}) {
    ModelParams params(l);
    params.require_boundary(k);
    BivariateSeries acc = BivariateSeries::zero(order, params.conformal_weight(k));
    for (const FinitePath& p : enumerate_paths(l, k, order, limits)) {
        long long e = energy(p);
        if (e <= order) acc.add_term(weight(p), static_cast<int>(e), 1);
    }
    return acc;
}

}  // namespace specdec
