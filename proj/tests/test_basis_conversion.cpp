#include <cmath>
#include <complex>

#include <catch2/catch_amalgamated.hpp>

#include "homsim/basis_conversion.hpp"
#include "homsim/poly_oracle.hpp"

using namespace homsim;

namespace {

constexpr double kTol = 1e-12;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

bool close(Complex a, Complex b, double tol = kTol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("ground mode maps to ground mode") {
    const auto coeffs = lg_to_hg_coeffs(LGIndex{0, 0});
    REQUIRE(coeffs.size() == 1);
    REQUIRE(close(coeffs.at(HGIndex{0, 0}), Complex(1.0)));

    const auto back = hg_to_lg_coeffs(HGIndex{0, 0});
    REQUIRE(back.size() == 1);
    REQUIRE(close(back.at(LGIndex{0, 0}), Complex(1.0)));
}

TEST_CASE("LG(0,1) expansion") {
    const auto coeffs = lg_to_hg_coeffs(LGIndex{0, 1});
    REQUIRE(coeffs.size() == 2);
    REQUIRE(close(coeffs.at(HGIndex{1, 0}), Complex(kInvSqrt2)));
    REQUIRE(close(coeffs.at(HGIndex{0, 1}), Complex(0.0, kInvSqrt2)));
}

TEST_CASE("LG(0,2) expansion: quarter-half-quarter with quadrature center") {
    const auto coeffs = lg_to_hg_coeffs(LGIndex{0, 2});
    REQUIRE(coeffs.size() == 3);
    REQUIRE(close(coeffs.at(HGIndex{2, 0}), Complex(0.5)));
    REQUIRE(close(coeffs.at(HGIndex{1, 1}), Complex(0.0, kInvSqrt2)));
    REQUIRE(close(coeffs.at(HGIndex{0, 2}), Complex(-0.5)));
}

TEST_CASE("LG(1,0) expansion: equal split over HG(2,0) and HG(0,2)") {
    const auto coeffs = lg_to_hg_coeffs(LGIndex{1, 0});
    REQUIRE(coeffs.size() == 2);
    REQUIRE(close(coeffs.at(HGIndex{2, 0}), Complex(kInvSqrt2)));
    REQUIRE(close(coeffs.at(HGIndex{0, 2}), Complex(kInvSqrt2)));
    REQUIRE(coeffs.count(HGIndex{1, 1}) == 0);
}

TEST_CASE("order-1 matrix has all entries of magnitude 1/sqrt(2)") {
    const auto& m = conversion_matrix(1);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            REQUIRE(std::abs(std::abs(m.u(r, c)) - kInvSqrt2) < kTol);
}

TEST_CASE("conversion matrices are unitary up to order 10") {
    for (int n = 0; n <= 10; ++n) {
        const auto& m = conversion_matrix(n);
        const double err =
            (m.u.adjoint() * m.u - Eigen::MatrixXcd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff();
        REQUIRE(err < kTol);
    }
}

TEST_CASE("phase convention: the HG(N,0) row entry is real and non-negative") {
    for (int n = 0; n <= 8; ++n) {
        const auto& m = conversion_matrix(n);
        for (int c = 0; c <= n; ++c) {
            REQUIRE(std::abs(m.u(0, c).imag()) < kTol);
            REQUIRE(m.u(0, c).real() > -kTol);
        }
    }
}

TEST_CASE("expansions stay within one mode order") {
    for (int n = 0; n <= 6; ++n) {
        for (const auto& lg : lg_modes_of_order(n)) {
            double total = 0.0;
            for (const auto& [hg, amp] : lg_to_hg_coeffs(lg)) {
                REQUIRE(order(hg) == n);
                total += std::norm(amp);
            }
            REQUIRE(std::abs(total - 1.0) < kTol);
        }
        for (const auto& hg : hg_modes_of_order(n)) {
            double total = 0.0;
            for (const auto& [lg, amp] : hg_to_lg_coeffs(hg)) {
                REQUIRE(order(lg) == n);
                total += std::norm(amp);
            }
            REQUIRE(std::abs(total - 1.0) < kTol);
        }
    }
}

TEST_CASE("opposite-ell expansions are entrywise conjugates") {
    for (int p = 0; p <= 3; ++p) {
        for (int ell = 1; ell <= 3; ++ell) {
            const auto plus = lg_to_hg_coeffs(LGIndex{p, ell});
            const auto minus = lg_to_hg_coeffs(LGIndex{p, -ell});
            REQUIRE(plus.size() == minus.size());
            for (const auto& [hg, amp] : plus)
                REQUIRE(close(minus.at(hg), std::conj(amp)));
        }
    }
}

TEST_CASE("matrix entry ratios agree with the exact oracle through order 8") {
    for (int n = 0; n <= 8; ++n) {
        const auto& m = conversion_matrix(n);
        const auto columns = lg_modes_of_order(n);
        for (int c = 0; c <= n; ++c) {
            const auto raw = hermite_project(lhs_eq1(columns[c].p, columns[c].ell));
            // anchor on HG(N,0), always present with raw coefficient (-1)^{|ell|}
            const GaussianRational raw_anchor = raw.at(HGIndex{n, 0});
            const double anchor_norm =
                std::sqrt(hermite_product_norm_sq(n, 0).convert_to<double>());
            for (const auto& [hg, coeff] : raw) {
                const Complex exact_ratio =
                    (coeff / raw_anchor).to_complex() *
                    (std::sqrt(hermite_product_norm_sq(hg.m, hg.n).convert_to<double>()) /
                     anchor_norm);
                const Complex matrix_ratio = m.u(index_in_order(hg), c) / m.u(0, c);
                REQUIRE(std::abs(matrix_ratio - exact_ratio) <=
                        1e-12 * std::max(1.0, std::abs(exact_ratio)));
            }
            // entries not in the raw map are structural zeros
            for (int r = 0; r <= n; ++r) {
                if (raw.count(hg_modes_of_order(n)[r]) == 0)
                    REQUIRE(std::abs(m.u(r, c)) < kTol);
            }
        }
    }
}

TEST_CASE("HG(1,1) splits over LG(0,+-2) only") {
    const auto coeffs = hg_to_lg_coeffs(HGIndex{1, 1});
    REQUIRE(coeffs.size() == 2);
    REQUIRE(close(coeffs.at(LGIndex{0, 2}), Complex(0.0, -kInvSqrt2)));
    REQUIRE(close(coeffs.at(LGIndex{0, -2}), Complex(0.0, kInvSqrt2)));
    REQUIRE(coeffs.count(LGIndex{1, 0}) == 0);
}

TEST_CASE("rejects invalid mode labels") {
    REQUIRE_THROWS_AS(lg_to_hg_coeffs(LGIndex{-1, 0}), std::invalid_argument);
    REQUIRE_THROWS_AS(hg_to_lg_coeffs(HGIndex{-1, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(conversion_matrix(-3), std::invalid_argument);
}
