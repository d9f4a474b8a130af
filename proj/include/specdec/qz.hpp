#pragma once

// Exact arithmetic in the character ring: Laurent polynomials in z whose
// coefficients are integer power series in q truncated at a fixed order D.
// Coefficients are checked 64-bit integers; overflow raises, never wraps.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specdec {

using coeff_t = std::int64_t;

class arithmetic_overflow : public std::runtime_error {
public:
    arithmetic_overflow() : std::runtime_error("integer coefficient overflow") {}
};

class order_mismatch : public std::invalid_argument {
public:
    order_mismatch()
        : std::invalid_argument("mixing series with different truncation orders") {}
};

inline coeff_t checked_add(coeff_t a, coeff_t b) {
    coeff_t r;
    if (__builtin_add_overflow(a, b, &r)) throw arithmetic_overflow{};
    return r;
}

inline coeff_t checked_mul(coeff_t a, coeff_t b) {
    coeff_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw arithmetic_overflow{};
    return r;
}

/// Exact rational with normalized sign and gcd; carries fractional q-exponent
/// prefactors that are never folded into integer exponents.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                        checked_mul(a.den, b.den));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(checked_add(checked_mul(a.num, b.den), -checked_mul(b.num, a.den)),
                        checked_mul(a.den, b.den));
    }
    friend bool operator==(const Rational&, const Rational&) = default;

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

/// Integer power series in q truncated at order D: exponents 0..D are exact,
/// anything above is dropped. Canonical sparse form, no zero coefficients.
class QSeries {
public:
    explicit QSeries(int order) : order_(order) {
        if (order < 0) throw std::invalid_argument("negative truncation order");
    }

    static QSeries zero(int order) { return QSeries(order); }

    static QSeries one(int order) { return monomial(1, 0, order); }

    static QSeries monomial(coeff_t c, int q_exp, int order) {
        QSeries s(order);
        s.add_term(q_exp, c);
        return s;
    }

    int order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<int, coeff_t>& terms() const { return terms_; }

    coeff_t coeff(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? 0 : it->second;
    }

    /// Lowest exponent with nonzero coefficient; empty for the zero series.
    std::optional<int> min_degree() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first;
    }

    std::optional<int> max_degree() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.rbegin()->first;
    }

    QSeries& add_term(int e, coeff_t c) {
        if (e < 0) throw std::invalid_argument("negative q exponent");
        if (c == 0 || e > order_) return *this;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = checked_add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
        return *this;
    }

    QSeries& operator+=(const QSeries& o) {
        require_same_order(o);
        for (auto [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    QSeries& operator-=(const QSeries& o) {
        require_same_order(o);
        for (auto [e, c] : o.terms_) add_term(e, checked_mul(c, -1));
        return *this;
    }

    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }

    QSeries operator-() const {
        QSeries r(order_);
        for (auto [e, c] : terms_) r.terms_.emplace(e, checked_mul(c, -1));
        return r;
    }

    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        a.require_same_order(b);
        QSeries r(a.order_);
        for (auto [ea, ca] : a.terms_) {
            if (ea > a.order_) continue;
            for (auto [eb, cb] : b.terms_) {
                if (ea + eb > a.order_) break;
                r.add_term(ea + eb, checked_mul(ca, cb));
            }
        }
        return r;
    }

    QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

    QSeries times(coeff_t c) const {
        QSeries r(order_);
        if (c == 0) return r;
        for (auto [e, k] : terms_) r.terms_.emplace(e, checked_mul(k, c));
        return r;
    }

    /// Multiply by q^d. d < 0 requires every term to stay at exponent >= 0.
    QSeries times_q_power(int d) const {
        QSeries r(order_);
        for (auto [e, c] : terms_) {
            if (e + d < 0)
                throw std::invalid_argument("q-power shift below q^0");
            r.add_term(e + d, c);
        }
        return r;
    }

    /// Lower the truncation order (raising it would fabricate precision).
    QSeries truncated(int new_order) const {
        if (new_order > order_)
            throw std::invalid_argument("cannot raise truncation order");
        QSeries r(new_order);
        for (auto [e, c] : terms_) {
            if (e <= new_order) r.terms_.emplace(e, c);
        }
        return r;
    }

    /// Value at q = 1 (sum of stored coefficients). Meaningful when the series
    /// is an exact polynomial within the truncation order.
    coeff_t eval_at_one() const {
        coeff_t s = 0;
        for (auto [e, c] : terms_) s = checked_add(s, c);
        return s;
    }

    bool operator==(const QSeries&) const = default;

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto [e, c] : terms_) {
            coeff_t a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            if (e == 0) {
                os << a;
            } else {
                if (a != 1) os << a;
                os << "q";
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

private:
    void require_same_order(const QSeries& o) const {
        if (order_ != o.order_) throw order_mismatch{};
    }

    int order_;
    std::map<int, coeff_t> terms_;
};

/// (q)_n = prod_{i=1}^{n} (1 - q^i), truncated at the given order.
inline QSeries q_pochhammer(int n, int order) {
    if (n < 0) throw std::invalid_argument("q_pochhammer needs n >= 0");
    QSeries r = QSeries::one(order);
    for (int i = 1; i <= n; ++i) {
        QSeries f = QSeries::one(order);
        f.add_term(i, -1);
        r = r * f;
    }
    return r;
}

enum class half_arg_policy { return_zero, error };

/// Gaussian binomial [N over n]_q as a truncated polynomial. Out-of-range n
/// gives 0; the alternating sums in the character formulas rely on that.
inline QSeries q_binomial(long long N, long long n, int order) {
    if (N < 0) throw std::invalid_argument("q_binomial needs N >= 0");
    if (n < 0 || n > N) return QSeries::zero(order);
    // Pascal recursion [N n] = [N-1 n-1] + q^n [N-1 n], row by row.
    if (n > N - n) n = N - n;
    std::vector<QSeries> row(static_cast<std::size_t>(n) + 1, QSeries::one(order));
    for (long long i = 1; i <= N; ++i) {
        long long top = std::min<long long>(n, i - 1);
        for (long long j = top; j >= 1; --j) {
            row[static_cast<std::size_t>(j)] =
                row[static_cast<std::size_t>(j - 1)] +
                row[static_cast<std::size_t>(j)].times_q_power(static_cast<int>(j));
        }
        if (i <= n) row[static_cast<std::size_t>(i)] = QSeries::one(order);
    }
    return row[static_cast<std::size_t>(n)];
}

/// [N over x]_q with x given as 2x; a half-integer lower argument vanishes
/// (or raises, when asked to flag misuse).
inline QSeries q_binomial_twice(long long N, long long twice_n, int order,
                                half_arg_policy policy = half_arg_policy::return_zero) {
    if (twice_n % 2 != 0) {
        if (policy == half_arg_policy::error)
            throw std::invalid_argument("half-integer q-binomial argument");
        return QSeries::zero(order);
    }
    return q_binomial(N, twice_n / 2, order);
}

/// Both arguments doubled; either one half-integer makes the value 0.
inline QSeries q_binomial_twice_both(long long twice_N, long long twice_n, int order,
                                     half_arg_policy policy = half_arg_policy::return_zero) {
    if (twice_N % 2 != 0 || twice_n % 2 != 0) {
        if (policy == half_arg_policy::error)
            throw std::invalid_argument("half-integer q-binomial argument");
        return QSeries::zero(order);
    }
    if (twice_N < 0) return QSeries::zero(order);
    return q_binomial(twice_N / 2, twice_n / 2, order);
}

/// Multiplicative inverse mod q^{D+1}; the constant term must be a unit.
inline QSeries series_invert(const QSeries& s) {
    coeff_t c0 = s.coeff(0);
    if (c0 != 1 && c0 != -1)
        throw std::invalid_argument("series_invert: constant term must be +1 or -1");
    int D = s.order();
    std::vector<coeff_t> t(static_cast<std::size_t>(D) + 1, 0);
    t[0] = c0;
    for (int n = 1; n <= D; ++n) {
        coeff_t acc = 0;
        for (int j = 1; j <= n; ++j)
            acc = checked_add(acc, checked_mul(s.coeff(j), t[static_cast<std::size_t>(n - j)]));
        t[static_cast<std::size_t>(n)] = checked_mul(-c0, acc);
    }
    QSeries r(D);
    for (int n = 0; n <= D; ++n) r.add_term(n, t[static_cast<std::size_t>(n)]);
    return r;
}

/// Laurent polynomial in z over the integers, canonical sparse form.
class ZLaurent {
public:
    ZLaurent() = default;

    static ZLaurent zero() { return ZLaurent{}; }
    static ZLaurent one() { return monomial(1, 0); }

    static ZLaurent monomial(coeff_t c, int z_exp) {
        ZLaurent r;
        r.add_term(z_exp, c);
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, coeff_t>& terms() const { return terms_; }

    coeff_t coeff(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? 0 : it->second;
    }

    ZLaurent& add_term(int e, coeff_t c) {
        if (c == 0) return *this;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = checked_add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
        return *this;
    }

    ZLaurent& operator+=(const ZLaurent& o) {
        for (auto [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    ZLaurent& operator-=(const ZLaurent& o) {
        for (auto [e, c] : o.terms_) add_term(e, checked_mul(c, -1));
        return *this;
    }
    friend ZLaurent operator+(ZLaurent a, const ZLaurent& b) { return a += b; }
    friend ZLaurent operator-(ZLaurent a, const ZLaurent& b) { return a -= b; }

    ZLaurent operator-() const {
        ZLaurent r;
        for (auto [e, c] : terms_) r.terms_.emplace(e, checked_mul(c, -1));
        return r;
    }

    friend ZLaurent operator*(const ZLaurent& a, const ZLaurent& b) {
        ZLaurent r;
        for (auto [ea, ca] : a.terms_)
            for (auto [eb, cb] : b.terms_) r.add_term(ea + eb, checked_mul(ca, cb));
        return r;
    }
    ZLaurent& operator*=(const ZLaurent& o) { return *this = *this * o; }

    ZLaurent times(coeff_t c) const {
        ZLaurent r;
        if (c == 0) return r;
        for (auto [e, k] : terms_) r.terms_.emplace(e, checked_mul(k, c));
        return r;
    }

    ZLaurent times_z_power(int d) const {
        ZLaurent r;
        for (auto [e, c] : terms_) r.terms_.emplace(e + d, c);
        return r;
    }

    /// z -> z^{-1}
    ZLaurent substitute_z_inverse() const {
        ZLaurent r;
        for (auto [e, c] : terms_) r.terms_.emplace(-e, c);
        return r;
    }

    coeff_t eval_at_one() const {
        coeff_t s = 0;
        for (auto [e, c] : terms_) s = checked_add(s, c);
        return s;
    }

    bool operator==(const ZLaurent&) const = default;

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // z-exponents descending
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            coeff_t a = it->second;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            if (it->first == 0) {
                os << a;
            } else {
                if (a != 1) os << a;
                os << "z^" << it->first;
            }
            first = false;
        }
        return os.str();
    }

private:
    std::map<int, coeff_t> terms_;
};

/// chi_b(z) = z^b + z^{b-2} + ... + z^{-b}, the character of the
/// (b+1)-dimensional irreducible sl_2 module.
inline ZLaurent chi(int b) {
    if (b < 0) throw std::invalid_argument("chi needs b >= 0");
    ZLaurent r;
    for (int e = -b; e <= b; e += 2) r.add_term(e, 1);
    return r;
}

/// Laurent polynomial in z with QSeries coefficients, all sharing one
/// truncation order. A fractional global q-exponent prefactor is carried as
/// exact-rational metadata, never folded into the integer exponents.
class BivariateSeries {
public:
    explicit BivariateSeries(int order, Rational delta = Rational())
        : order_(order), delta_(delta) {
        if (order < 0) throw std::invalid_argument("negative truncation order");
    }

    static BivariateSeries zero(int order, Rational delta = Rational()) {
        return BivariateSeries(order, delta);
    }

    static BivariateSeries from_q(const QSeries& s, Rational delta = Rational()) {
        BivariateSeries r(s.order(), delta);
        if (!s.is_zero()) r.terms_.emplace(0, s);
        return r;
    }

    static BivariateSeries from_z(const ZLaurent& z, int order,
                                  Rational delta = Rational()) {
        BivariateSeries r(order, delta);
        for (auto [e, c] : z.terms()) r.add_term(e, 0, c);
        return r;
    }

    int order() const { return order_; }
    const Rational& delta() const { return delta_; }
    void set_delta(Rational d) { delta_ = d; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<int, QSeries>& terms() const { return terms_; }

    QSeries z_coefficient(int z_exp) const {
        auto it = terms_.find(z_exp);
        return it == terms_.end() ? QSeries::zero(order_) : it->second;
    }

    /// Coefficient of q^j as a Laurent polynomial in z.
    ZLaurent q_coefficient(int q_exp) const {
        ZLaurent r;
        for (const auto& [ze, qs] : terms_) r.add_term(ze, qs.coeff(q_exp));
        return r;
    }

    BivariateSeries& add_term(int z_exp, int q_exp, coeff_t c) {
        if (c == 0 || q_exp > order_) return *this;
        auto it = terms_.find(z_exp);
        if (it == terms_.end()) it = terms_.emplace(z_exp, QSeries::zero(order_)).first;
        it->second.add_term(q_exp, c);
        if (it->second.is_zero()) terms_.erase(it);
        return *this;
    }

    BivariateSeries& add_z_term(int z_exp, const QSeries& s) {
        if (s.order() != order_) throw order_mismatch{};
        if (s.is_zero()) return *this;
        auto it = terms_.find(z_exp);
        if (it == terms_.end()) {
            terms_.emplace(z_exp, s);
        } else {
            it->second += s;
            if (it->second.is_zero()) terms_.erase(it);
        }
        return *this;
    }

    BivariateSeries& operator+=(const BivariateSeries& o) {
        require_compatible(o);
        for (const auto& [e, s] : o.terms_) add_z_term(e, s);
        return *this;
    }
    BivariateSeries& operator-=(const BivariateSeries& o) {
        require_compatible(o);
        for (const auto& [e, s] : o.terms_) add_z_term(e, -s);
        return *this;
    }
    friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries& b) {
        return a += b;
    }
    friend BivariateSeries operator-(BivariateSeries a, const BivariateSeries& b) {
        return a -= b;
    }

    friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
        if (a.order_ != b.order_) throw order_mismatch{};
        BivariateSeries r(a.order_, a.delta_ + b.delta_);
        for (const auto& [ea, sa] : a.terms_)
            for (const auto& [eb, sb] : b.terms_) r.add_z_term(ea + eb, sa * sb);
        return r;
    }

    BivariateSeries times(const QSeries& s) const {
        if (s.order() != order_) throw order_mismatch{};
        BivariateSeries r(order_, delta_);
        for (const auto& [e, t] : terms_) r.add_z_term(e, t * s);
        return r;
    }

    BivariateSeries times(const ZLaurent& z) const {
        BivariateSeries r(order_, delta_);
        for (auto [ez, c] : z.terms())
            for (const auto& [e, t] : terms_) r.add_z_term(e + ez, t.times(c));
        return r;
    }

    BivariateSeries times_q_power(int d) const {
        BivariateSeries r(order_, delta_);
        for (const auto& [e, t] : terms_) r.add_z_term(e, t.times_q_power(d));
        return r;
    }

    BivariateSeries times_z_power(int d) const {
        BivariateSeries r(order_, delta_);
        for (const auto& [e, t] : terms_) r.terms_.emplace(e + d, t);
        return r;
    }

    BivariateSeries substitute_z_inverse() const {
        BivariateSeries r(order_, delta_);
        for (const auto& [e, t] : terms_) r.terms_.emplace(-e, t);
        return r;
    }

    BivariateSeries truncated(int new_order) const {
        BivariateSeries r(new_order, delta_);
        for (const auto& [e, t] : terms_) {
            QSeries cut = t.truncated(new_order);
            if (!cut.is_zero()) r.terms_.emplace(e, cut);
        }
        return r;
    }

    QSeries eval_z_at_one() const {
        QSeries s = QSeries::zero(order_);
        for (const auto& [e, t] : terms_) s += t;
        return s;
    }

    /// Keep only z-exponents in [z_min, z_max]; any nonzero term outside the
    /// window is an error, never a silent drop.
    BivariateSeries restrict_z(int z_min, int z_max) const {
        BivariateSeries r(order_, delta_);
        for (const auto& [e, t] : terms_) {
            if (e < z_min || e > z_max)
                throw std::invalid_argument("nonzero term outside declared z-window");
            r.terms_.emplace(e, t);
        }
        return r;
    }

    bool operator==(const BivariateSeries&) const = default;

private:
    void require_compatible(const BivariateSeries& o) const {
        if (order_ != o.order_) throw order_mismatch{};
        if (!(delta_ == o.delta_))
            throw std::invalid_argument("adding series with different q-exponent prefactors");
    }

    int order_;
    Rational delta_;
    std::map<int, QSeries> terms_;
};

/// Canonical text form: terms sorted by z-exponent descending, q ascending
/// inside each coefficient, e.g. "z^3*(1 + 2q^2) + z^1*(q)".
inline std::string to_canonical_text(const BivariateSeries& b) {
    if (b.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto& terms = b.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        if (!first) os << " + ";
        os << "z^" << it->first << "*(" << it->second.str() << ")";
        first = false;
    }
    return os.str();
}

}  // namespace specdec
