#pragma once

// Exact bivariate polynomial algebra over Gaussian rationals.
//
// Everything in this header uses arbitrary-precision rational arithmetic;
// no floating point. It generates physicists' Hermite polynomials and
// associated Laguerre polynomials, builds both sides of the LG->HG
// polynomial identity, and decomposes any polynomial exactly over the
// Hermite-product basis {H_a(x) H_b(y)}. The decomposition is the
// brute-force oracle that the floating-point conversion matrices are
// checked against.

#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "homsim/mode_index.hpp"

namespace homsim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int j = 1; j <= k; ++j) {
        r *= (n - k + j);
        r /= j;
    }
    return r;
}

/// (2m-1)!! with the empty product (m=0) equal to 1.
inline BigInt odd_double_factorial(int m) {
    BigInt r = 1;
    for (int j = 1; j <= m; ++j) r *= (2 * j - 1);
    return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Complex number with exact rational real and imaginary parts.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(int r) : re(r) {}  // NOLINT

    bool is_zero() const { return re == 0 && im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational operator-() const { return {-re, -im}; }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
        return a += b;
    }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
        return a -= b;
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational d = b.re * b.re + b.im * b.im;
        if (d == 0) throw std::domain_error("GaussianRational: division by zero");
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    Complex to_complex() const { return {to_double(re), to_double(im)}; }

    std::string str() const {
        if (im == 0) return re.str();
        if (re == 0) return im.str() + "i";
        return "(" + re.str() + (im < 0 ? "" : "+") + im.str() + "i)";
    }
};

/// (sign*i)^k for sign in {+1,-1}, exact.
inline GaussianRational imaginary_unit_pow(int sign, int k) {
    int s = sign < 0 ? -1 : 1;
    switch (((k % 4) + 4) % 4) {
        case 0: return {1};
        case 1: return {Rational(0), Rational(s)};
        case 2: return {-1};
        default: return {Rational(0), Rational(-s)};
    }
}

namespace detail {

// Graded lexicographic monomial order, x before y; the map's last element
// is the leading term.
struct GradedLexLess {
    bool operator()(const std::pair<int, int>& a, const std::pair<int, int>& b) const noexcept {
        int da = a.first + a.second, db = b.first + b.second;
        if (da != db) return da < db;
        return a.first < b.first;
    }
};

}  // namespace detail

/// Sparse exact polynomial in x and y: sum of c_ij x^i y^j.
/// Zero coefficients are never stored; exponents are non-negative.
class BiPoly {
public:
    using Exponents = std::pair<int, int>;
    using TermMap = std::map<Exponents, GaussianRational, detail::GradedLexLess>;

    BiPoly() = default;

    static BiPoly constant(GaussianRational c) {
        BiPoly p;
        p.add_term(0, 0, std::move(c));
        return p;
    }
    static BiPoly variable_x() {
        BiPoly p;
        p.add_term(1, 0, 1);
        return p;
    }
    static BiPoly variable_y() {
        BiPoly p;
        p.add_term(0, 1, 1);
        return p;
    }

    void add_term(int i, int j, GaussianRational c) {
        if (i < 0 || j < 0) throw std::invalid_argument("BiPoly: negative exponent");
        if (c.is_zero()) return;
        auto key = Exponents{i, j};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int total_degree() const {
        if (terms_.empty()) return -1;
        auto& lead = *terms_.rbegin();
        return lead.first.first + lead.first.second;
    }

    GaussianRational coefficient(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? GaussianRational{} : it->second;
    }

    BiPoly& operator+=(const BiPoly& o) {
        for (auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) {
        for (auto& [e, c] : o.terms_) add_term(e.first, e.second, -c);
        return *this;
    }
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly r;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_)
                r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
        return r;
    }
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

    friend BiPoly operator*(const BiPoly& a, const GaussianRational& s) {
        BiPoly r;
        if (s.is_zero()) return r;
        for (auto& [e, c] : a.terms_) r.terms_.emplace(e, c * s);
        return r;
    }
    friend BiPoly operator*(const GaussianRational& s, const BiPoly& a) { return a * s; }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

    BiPoly pow(int e) const {
        if (e < 0) throw std::invalid_argument("BiPoly::pow: negative exponent");
        BiPoly r = constant(1);
        for (int k = 0; k < e; ++k) r *= *this;
        return r;
    }

    std::complex<double> eval(std::complex<double> x, std::complex<double> y) const {
        std::complex<double> acc = 0.0;
        for (auto& [e, c] : terms_) {
            std::complex<double> t = c.to_complex();
            for (int k = 0; k < e.first; ++k) t *= x;
            for (int k = 0; k < e.second; ++k) t *= y;
            acc += t;
        }
        return acc;
    }

    /// Canonical rendering, leading term first, for stable test diffs.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) out << " + ";
            first = false;
            out << it->second.str();
            if (it->first.first > 0) {
                out << "*x";
                if (it->first.first > 1) out << "^" << it->first.first;
            }
            if (it->first.second > 0) {
                out << "*y";
                if (it->first.second > 1) out << "^" << it->first.second;
            }
        }
        return out.str();
    }

private:
    TermMap terms_;
};

/// Dense univariate polynomial, coeffs[k] multiplying t^k.
using UniPoly = std::vector<Rational>;

/// Physicists' Hermite polynomial H_n via the three-term recurrence
/// H_0 = 1, H_1 = 2t, H_{k+1} = 2t H_k - 2k H_{k-1}. Integer coefficients.
inline UniPoly hermite(int n) {
    if (n < 0) throw std::invalid_argument("hermite: negative degree");
    UniPoly prev{Rational(1)};
    if (n == 0) return prev;
    UniPoly cur{Rational(0), Rational(2)};
    for (int k = 1; k < n; ++k) {
        UniPoly next(k + 2, Rational(0));
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2 * k * prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Associated Laguerre polynomial L_p^a via the closed form
/// sum_k (-1)^k C(p+a, p-k) t^k / k!. Exact rational coefficients.
inline UniPoly laguerre(int p, int a) {
    if (p < 0 || a < 0) throw std::invalid_argument("laguerre: negative index");
    UniPoly coeffs(p + 1, Rational(0));
    for (int k = 0; k <= p; ++k) {
        Rational c(binomial(p + a, p - k), factorial(k));
        coeffs[k] = (k % 2 == 0) ? c : -c;
    }
    return coeffs;
}

namespace detail {

inline BiPoly univariate_in_x(const UniPoly& u) {
    BiPoly p;
    for (std::size_t k = 0; k < u.size(); ++k) p.add_term(static_cast<int>(k), 0, u[k]);
    return p;
}

inline BiPoly univariate_in_y(const UniPoly& u) {
    BiPoly p;
    for (std::size_t k = 0; k < u.size(); ++k) p.add_term(0, static_cast<int>(k), u[k]);
    return p;
}

// u(x^2 + y^2), expanded.
inline BiPoly substitute_radius_squared(const UniPoly& u) {
    BiPoly r2;
    r2.add_term(2, 0, 1);
    r2.add_term(0, 2, 1);
    BiPoly acc;
    BiPoly power = BiPoly::constant(1);
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] != 0) acc += power * GaussianRational(u[k]);
        if (k + 1 < u.size()) power *= r2;
    }
    return acc;
}

inline BiPoly hermite_product(int a, int b) {
    return univariate_in_x(hermite(a)) * univariate_in_y(hermite(b));
}

}  // namespace detail

/// Left-hand side of the LG->HG identity:
/// (-1)^{p+|l|} 2^{2p+|l|} p! (x +- iy)^{|l|} L_p^{|l|}(x^2+y^2),
/// with the plus sign for ell >= 0 and minus for ell < 0.
inline BiPoly lhs_eq1(int p, int ell) {
    if (p < 0) throw std::invalid_argument("lhs_eq1: negative radial index");
    const int abs_ell = std::abs(ell);
    BigInt magnitude = factorial(p) << (2 * p + abs_ell);
    Rational prefactor{(p + abs_ell) % 2 == 0 ? magnitude : -magnitude};

    BiPoly axial;
    axial.add_term(1, 0, 1);
    axial.add_term(0, 1, GaussianRational(Rational(0), Rational(ell >= 0 ? 1 : -1)));

    return GaussianRational(prefactor) * axial.pow(abs_ell) *
           detail::substitute_radius_squared(laguerre(p, abs_ell));
}

/// Right-hand side of the identity:
/// sum_{m=0}^{p} sum_{n=0}^{|l|} C(p,m) C(|l|,n) (-+ i)^{|l|+n}
///   H_{2m+n}(x) H_{2p+|l|-2m-n}(y),
/// where the unit is -i for ell >= 0 and +i for ell < 0.
inline BiPoly rhs_eq1(int p, int ell) {
    if (p < 0) throw std::invalid_argument("rhs_eq1: negative radial index");
    const int abs_ell = std::abs(ell);
    const int unit_sign = ell >= 0 ? -1 : 1;
    BiPoly acc;
    for (int m = 0; m <= p; ++m) {
        for (int n = 0; n <= abs_ell; ++n) {
            GaussianRational coeff =
                GaussianRational(Rational(binomial(p, m) * binomial(abs_ell, n))) *
                imaginary_unit_pow(unit_sign, abs_ell + n);
            acc += coeff * detail::hermite_product(2 * m + n, 2 * p + abs_ell - 2 * m - n);
        }
    }
    return acc;
}

/// True iff both sides of the identity agree exactly for this (p, ell).
inline bool eq1_identity_check(int p, int ell) {
    return (lhs_eq1(p, ell) - rhs_eq1(p, ell)).is_zero();
}

/// Exact expansion of poly over the Hermite-product basis {H_a(x) H_b(y)}
/// by leading-term elimination: the leading monomial x^a y^b can only come
/// from H_a(x) H_b(y) (leading coefficient 2^{a+b}), so subtracting the
/// matching multiple strictly reduces the leading monomial. Terminates with
/// poly == sum result[(a,b)] H_a(x) H_b(y), exactly.
inline std::map<HGIndex, GaussianRational> hermite_project(const BiPoly& poly) {
    std::map<HGIndex, GaussianRational> result;
    BiPoly rest = poly;
    while (!rest.is_zero()) {
        const auto& [exponents, coeff] = *rest.terms().rbegin();
        const auto [a, b] = exponents;
        GaussianRational weight = coeff / GaussianRational(Rational(BigInt(1) << (a + b)));
        result[HGIndex{a, b}] = weight;
        rest -= weight * detail::hermite_product(a, b);
    }
    return result;
}

/// Inverse of hermite_project: sum coeffs[(a,b)] H_a(x) H_b(y).
inline BiPoly hermite_synthesize(const std::map<HGIndex, GaussianRational>& coeffs) {
    BiPoly acc;
    for (const auto& [mode, c] : coeffs) acc += c * detail::hermite_product(mode.m, mode.n);
    return acc;
}

/// Gaussian moment: integral of t^k e^{-t^2} dt over the real line, in
/// units of sqrt(pi). Zero for odd k; (2m-1)!!/2^m for k = 2m.
inline Rational gauss_moment(int k) {
    if (k < 0) throw std::invalid_argument("gauss_moment: negative power");
    if (k % 2 == 1) return 0;
    int m = k / 2;
    return Rational(odd_double_factorial(m), BigInt(1) << m);
}

/// Gaussian-weighted inner product <f, g> = integral of conj(f) g e^{-x^2-y^2},
/// in units of pi. Exact; used as an independent cross-check of
/// hermite_project (coefficient of H_a H_b equals <H_a H_b, poly> / (2^{a+b} a! b!)).
inline GaussianRational gauss_inner2d(const BiPoly& f, const BiPoly& g) {
    GaussianRational acc;
    for (const auto& [ef, cf] : f.terms()) {
        for (const auto& [eg, cg] : g.terms()) {
            Rational moment = gauss_moment(ef.first + eg.first) * gauss_moment(ef.second + eg.second);
            if (moment != 0) acc += cf.conj() * cg * GaussianRational(moment);
        }
    }
    return acc;
}

}  // namespace homsim
