#pragma once

// Normalized unitary change of basis between LG and HG mode amplitudes.
//
// Basis conversion mixes modes only within one mode order N. The order-N
// matrix is derived from the exact polynomial identity: the raw Hermite
// coefficients of an LG mode polynomial are reweighted by the Gaussian
// norm of each Hermite product, sqrt(2^{a+b} a! b!), normalized to a unit
// column, and phase-fixed so the HG(N,0) entry is real and non-negative.
// Matrices are built once per order and cached.

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

#include "homsim/mode_index.hpp"
#include "homsim/poly_oracle.hpp"

namespace homsim {

inline constexpr double kConversionTol = 1e-12;

/// Squared Gaussian norm of H_a(x) H_b(y), 2^{a+b} a! b!, up to the common
/// factor of pi that cancels in normalization.
inline BigInt hermite_product_norm_sq(int a, int b) {
    return (factorial(a) * factorial(b)) << (a + b);
}

/// Per-order unitary. Rows follow hg_modes_of_order(N), columns
/// lg_modes_of_order(N); entry (r,c) is the amplitude of HG mode r in the
/// normalized expansion of LG mode c.
struct ConversionMatrix {
    int order = 0;
    Eigen::MatrixXcd u;
};

namespace detail {

inline Eigen::VectorXcd normalized_lg_column(LGIndex mode) {
    const int n = order(mode);
    const auto raw = hermite_project(lhs_eq1(mode.p, mode.ell));

    Eigen::VectorXcd column = Eigen::VectorXcd::Zero(n + 1);
    for (const auto& [hg, coeff] : raw) {
        if (order(hg) != n)
            throw std::logic_error("basis_conversion: projection left the mode order");
        double weight = std::sqrt(hermite_product_norm_sq(hg.m, hg.n).convert_to<double>());
        column(index_in_order(hg)) = coeff.to_complex() * weight;
    }
    column.normalize();

    // HG(N,0) sits in row 0 and its raw coefficient is (-1)^{|ell|}, never
    // zero, so the global phase is well defined.
    Complex anchor = column(0);
    if (std::abs(anchor) < 1e-15)
        throw std::logic_error("basis_conversion: vanishing HG(N,0) component");
    column *= std::conj(anchor) / std::abs(anchor);
    column(0) = Complex(std::abs(column(0)), 0.0);
    return column;
}

}  // namespace detail

/// The order-N conversion matrix, built on first use and cached.
/// Concurrent lookups are serialized; the returned reference stays valid.
inline const ConversionMatrix& conversion_matrix(int n) {
    if (n < 0) throw std::invalid_argument("conversion_matrix: negative order");
    static std::map<int, ConversionMatrix> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    ConversionMatrix m;
    m.order = n;
    m.u.resize(n + 1, n + 1);
    auto columns = lg_modes_of_order(n);
    for (int c = 0; c <= n; ++c) m.u.col(c) = detail::normalized_lg_column(columns[c]);

    double unitarity_error =
        (m.u.adjoint() * m.u - Eigen::MatrixXcd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff();
    if (unitarity_error > kConversionTol)
        throw std::logic_error("basis_conversion: matrix failed the unitarity check");
    return cache.emplace(n, std::move(m)).first->second;
}

/// Normalized expansion of an LG mode over HG modes of the same order.
/// Structural zeros are omitted from the map.
inline std::map<HGIndex, Complex> lg_to_hg_coeffs(LGIndex mode) {
    if (mode.p < 0) throw std::invalid_argument("lg_to_hg_coeffs: negative radial index");
    const int n = order(mode);
    const auto& matrix = conversion_matrix(n);
    const auto rows = hg_modes_of_order(n);
    const int col = index_in_order(mode);

    std::map<HGIndex, Complex> coeffs;
    for (int r = 0; r <= n; ++r) {
        Complex amp = matrix.u(r, col);
        if (std::abs(amp) > 1e-14) coeffs[rows[r]] = amp;
    }
    return coeffs;
}

/// Expansion of an HG mode over LG modes of the same order (a row of the
/// conjugate transpose of the order matrix).
inline std::map<LGIndex, Complex> hg_to_lg_coeffs(HGIndex mode) {
    if (mode.m < 0 || mode.n < 0)
        throw std::invalid_argument("hg_to_lg_coeffs: negative order");
    const int n = order(mode);
    const auto& matrix = conversion_matrix(n);
    const auto columns = lg_modes_of_order(n);
    const int row = index_in_order(mode);

    std::map<LGIndex, Complex> coeffs;
    for (int c = 0; c <= n; ++c) {
        Complex amp = std::conj(matrix.u(row, c));
        if (std::abs(amp) > 1e-14) coeffs[columns[c]] = amp;
    }
    return coeffs;
}

}  // namespace homsim
