#pragma once

// Degeneracy of the spectrum via incidence matrices: the M_a / H_a / V_a
// family, the transfer product T(r,a), the fiber generating function
// F(r,a;z), its factorized and closed product forms, and the fiber
// z-character.

#include <stdexcept>
#include <vector>

#include "specdec/spectral.hpp"

namespace specdec {

/// Dense (l+1) x (l+1) matrix over Laurent polynomials in z. Row/column
/// index i (1-based) stands for the spin l + 2 - 2i.
class ZMatrix {
public:
    explicit ZMatrix(int dim) : dim_(dim), e_(static_cast<std::size_t>(dim) * dim) {
        if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    }

    int dim() const { return dim_; }

    ZLaurent& at(int i, int j) { return e_[index(i, j)]; }
    const ZLaurent& at(int i, int j) const { return e_[index(i, j)]; }

    friend ZMatrix operator*(const ZMatrix& a, const ZMatrix& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
        ZMatrix r(a.dim_);
        for (int i = 1; i <= a.dim_; ++i)
            for (int k = 1; k <= a.dim_; ++k) {
                const ZLaurent& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 1; j <= a.dim_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) += aik * b.at(k, j);
                }
            }
        return r;
    }

    ZMatrix times(const ZLaurent& s) const {
        ZMatrix r(dim_);
        for (std::size_t n = 0; n < e_.size(); ++n) r.e_[n] = e_[n] * s;
        return r;
    }

    /// Positions of the nonzero entries.
    std::vector<std::pair<int, int>> support() const {
        std::vector<std::pair<int, int>> s;
        for (int i = 1; i <= dim_; ++i)
            for (int j = 1; j <= dim_; ++j)
                if (!at(i, j).is_zero()) s.emplace_back(i, j);
        return s;
    }

    bool operator==(const ZMatrix&) const = default;

private:
    std::size_t index(int i, int j) const {
        if (i < 1 || i > dim_ || j < 1 || j > dim_)
            throw std::out_of_range("matrix index");
        return static_cast<std::size_t>(i - 1) * dim_ + (j - 1);
    }

    int dim_;
    std::vector<ZLaurent> e_;
};

/// Incidence matrix M_a: nonzero exactly where the local energy of the
/// (row spin, column spin) pair equals a, and every nonzero entry in row i
/// is the monomial z^{l+2-2i}. Concretely that is column l-a+1 filled with
/// z^l, z^{l-2}, ..., z^{l-2a} down to row a+1, plus row a+1 filled with
/// z^{l-2a} from column l-a+1 rightwards.
inline ZMatrix incidence_M(int a, int l) {
    if (a < 0 || a > l) throw std::invalid_argument("incidence index out of 0..l");
    ZMatrix r(l + 1);
    for (int i = 1; i <= l + 1; ++i) {
        for (int j = 1; j <= l + 1; ++j) {
            if (local_energy(l + 2 - 2 * i, l + 2 - 2 * j, l) == a)
                r.at(i, j) = ZLaurent::monomial(1, l + 2 - 2 * i);
        }
    }
    return r;
}

/// H_a: the single row a+1 of M_a.
inline ZMatrix incidence_H(int a, int l) {
    if (a < 0 || a > l) throw std::invalid_argument("incidence index out of 0..l");
    ZMatrix r(l + 1);
    for (int j = l - a + 1; j <= l + 1; ++j)
        r.at(a + 1, j) = ZLaurent::monomial(1, l - 2 * a);
    return r;
}

/// V_a: the single column l-a+1 of M_a.
inline ZMatrix incidence_V(int a, int l) {
    if (a < 0 || a > l) throw std::invalid_argument("incidence index out of 0..l");
    ZMatrix r(l + 1);
    for (int i = 1; i <= a + 1; ++i)
        r.at(i, l - a + 1) = ZLaurent::monomial(1, l + 2 - 2 * i);
    return r;
}

/// (M_a M_{l-a})^n = V_a H_{l-a}.
inline bool check_lemma_45(int a, int n, int l) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    ZMatrix lhs = incidence_M(a, l) * incidence_M(l - a, l);
    ZMatrix power = lhs;
    for (int i = 1; i < n; ++i) power = power * lhs;
    return power == incidence_V(a, l) * incidence_H(l - a, l);
}

namespace detail {

/// The h-window of the key expanded to exactly M = J + 2 sum a_i entries.
inline std::vector<int> window_of_key(const SpectralKey& key) {
    Spectrum h = encode(key);
    long long M = 0;
    for (int v : key.a.multiplicities()) M += 2LL * v;
    M += static_cast<long long>(key.r.extrema_positions().size());
    if (h.window_length() != M)
        throw std::logic_error("canonical spectrum window length differs from M");
    std::vector<int> w;
    for (long long i = 1; i <= M; ++i) w.push_back(h.at(i));
    return w;
}

inline int tail_initial_of_key(const SpectralKey& key) {
    int J = static_cast<int>(key.r.extrema_positions().size());
    int k = key.boundary();
    return J % 2 == 0 ? k : key.level() - k;
}

}  // namespace detail

/// T(r,a) = z^l H_l M_{h_1} ... M_{h_M} V_{l_{J+1}}: a single nonzero entry
/// at (l+1, l - l_{J+1} + 1) whose value is F(r,a;z).
inline ZMatrix transfer_matrix(const SpectralKey& key) {
    const int l = key.level();
    ZMatrix t = incidence_H(l, l).times(ZLaurent::monomial(1, l));
    for (int hi : detail::window_of_key(key)) t = t * incidence_M(hi, l);
    return t * incidence_V(detail::tail_initial_of_key(key), l);
}

/// F(r,a;z), the generating function over the fiber's spin configurations of
/// z^{s_1 + ... + s_{M+1}}, read off the transfer product.
inline ZLaurent fiber_F(const SpectralKey& key) {
    const int l = key.level();
    ZMatrix t = transfer_matrix(key);
    int col = l - detail::tail_initial_of_key(key) + 1;
    auto sup = t.support();
    if (sup.size() > 1 || (sup.size() == 1 && sup[0] != std::make_pair(l + 1, col)))
        throw std::logic_error("transfer product is not a single matrix unit");
    return t.at(l + 1, col);
}

/// Same function computed without the bordering row: the column sum of
/// M_{h_1} ... M_{h_M} M_{l_{J+1}} at column l - l_{J+1} + 1.
inline ZLaurent fiber_F_column_sum(const SpectralKey& key) {
    const int l = key.level();
    std::vector<int> w = detail::window_of_key(key);
    w.push_back(detail::tail_initial_of_key(key));
    ZMatrix prod = incidence_M(w.front(), l);
    for (std::size_t i = 1; i < w.size(); ++i) prod = prod * incidence_M(w[i], l);
    int col = l - w.back() + 1;
    ZLaurent sum;
    for (int i = 1; i <= l + 1; ++i) sum += prod.at(i, col);
    return sum;
}

/// Sum of z^{Wt(p)} over the fiber: z^{l - l_{J+1}} F(r,a;z^{-1}).
inline ZLaurent fiber_z_character(const SpectralKey& key) {
    int shift = key.level() - detail::tail_initial_of_key(key);
    return fiber_F(key).substitute_z_inverse().times_z_power(shift);
}

/// The same character in closed form: prod_i chi_{b_i}(z) over the parts of
/// beta(a).
inline ZLaurent fiber_z_character_closed(const SpectralKey& key) {
    ZLaurent r = ZLaurent::one();
    for (int b : beta_partition(key.a)) r *= chi(b);
    return r;
}

/// q^{d(r) + |a|} prod chi_{b_i}(z), with the conformal weight prefactor
/// carried as metadata.
inline BivariateSeries closed_form_fiber_character(const SpectralKey& key, int order) {
    ModelParams m(key.level());
    long long e = degree(key.r) + key.a.box_count();
    BivariateSeries r = BivariateSeries::from_z(fiber_z_character_closed(key), order,
                                                m.conformal_weight(key.boundary()));
    if (e > order) return BivariateSeries::zero(order, m.conformal_weight(key.boundary()));
    return r.times_q_power(static_cast<int>(e));
}

namespace detail {

/// Data for the factorized form: the diagram reduced to a_1 = 0 and
/// multiplicities clipped to one, the positions beta_i, the group index m_i
/// of each beta_i among the extremal positions, and the heights h'_i.
struct Factorization {
    std::vector<int> beta;     // beta_1 .. beta_{s-1}
    std::vector<int> m;        // m_1 .. m_{s-1}, group index of each beta_i
    std::vector<int> h_prime;  // h'_0 .. h'_s
    int s = 1;
};

inline Factorization factorization_data(const SpectralKey& key) {
    const RestrictedPath& r = key.r;
    const int l = key.level();
    const int N = r.length();
    std::vector<int> tpos = r.extrema_positions();
    const int J = static_cast<int>(tpos.size());

    Factorization f;
    for (int i = 2; i <= N; ++i)
        if (key.a.at(i) != 0) f.beta.push_back(i);
    f.s = static_cast<int>(f.beta.size()) + 1;

    f.h_prime.push_back(0);  // h'_0
    for (int b : f.beta) {
        // group j of index b: t_j < b <= t_{j+1}
        int j = 0;
        while (j < J && tpos[static_cast<std::size_t>(j)] < b) ++j;
        f.m.push_back(j);
        int height = r.at(b - 1);
        f.h_prime.push_back(j % 2 == 0 ? height : l - height);
    }
    f.h_prime.push_back(tail_initial_of_key(key));  // h'_s = l_{J+1}
    return f;
}

}  // namespace detail

/// Reduce a diagram to the representative with a_1 = 0 and entries in {0,1};
/// beta (hence F) is unchanged.
inline YoungDiagram reduced_diagram(const YoungDiagram& a) {
    std::vector<int> v = a.multiplicities();
    if (!v.empty()) v[0] = 0;
    for (std::size_t i = 1; i < v.size(); ++i) v[i] = v[i] > 0 ? 1 : 0;
    return YoungDiagram(std::move(v));
}

/// T(r,a) as the grouped product
/// z^l (H_l M... V_{h'_1})(H_{l-h'_1} M... V_{h'_2}) ... where the factor S_i
/// carries the odd-block letters with group index in (m_{i-1}, m_i]. The
/// grouping presumes single pairs, so the diagram is reduced first; the
/// result is unchanged since consecutive equal pair powers collapse.
inline ZMatrix transfer_matrix_factorized(const SpectralKey& key_in) {
    SpectralKey key(key_in.r, reduced_diagram(key_in.a));
    const int l = key.level();
    const RestrictedPath& r = key.r;
    std::vector<int> tpos = r.extrema_positions();
    const int J = static_cast<int>(tpos.size());

    std::vector<int> h_sharp;  // l_1 .. l_J
    for (int i = 1; i <= J; ++i) {
        int e = r.at(tpos[static_cast<std::size_t>(i - 1)]);
        h_sharp.push_back(i % 2 != 0 ? e : l - e);
    }

    detail::Factorization f = detail::factorization_data(key);
    std::vector<int> m_bounds = f.m;
    m_bounds.push_back(J);  // m_s = J

    ZMatrix t = ZMatrix(l + 1);
    bool started = false;
    int prev_group = 0;
    for (int i = 1; i <= f.s; ++i) {
        ZMatrix factor = incidence_H(l - f.h_prime[static_cast<std::size_t>(i - 1)], l);
        for (int j = prev_group + 1; j <= m_bounds[static_cast<std::size_t>(i - 1)]; ++j)
            factor = factor * incidence_M(h_sharp[static_cast<std::size_t>(j - 1)], l);
        factor = factor * incidence_V(f.h_prime[static_cast<std::size_t>(i)], l);
        t = started ? t * factor : factor;
        started = true;
        prev_group = m_bounds[static_cast<std::size_t>(i - 1)];
    }
    return t.times(ZLaurent::monomial(1, l));
}

/// T(r,a) assembled from the evaluated factors
/// S_i = z^{h'_{i-1} - h'_i} chi_{beta_i - beta_{i-1}}(z) E_{l-h'_{i-1}+1, l-h'_i+1}.
inline ZMatrix transfer_matrix_closed(const SpectralKey& key) {
    const int l = key.level();
    const int N = key.length();
    detail::Factorization f = detail::factorization_data(key);

    ZLaurent value = ZLaurent::monomial(1, l);
    int prev_beta = 1;  // beta_0
    for (int i = 1; i <= f.s; ++i) {
        int beta_i = (i == f.s) ? N + 1 : f.beta[static_cast<std::size_t>(i - 1)];
        int dh = f.h_prime[static_cast<std::size_t>(i - 1)] - f.h_prime[static_cast<std::size_t>(i)];
        value *= chi(beta_i - prev_beta);
        value *= ZLaurent::monomial(1, dh);
        prev_beta = beta_i;
    }
    ZMatrix t(l + 1);
    t.at(l - f.h_prime.front() + 1, l - f.h_prime.back() + 1) = value;
    return t;
}

}  // namespace specdec
