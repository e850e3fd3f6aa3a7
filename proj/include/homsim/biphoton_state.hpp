#pragma once

// Two-photon spatial-mode states and the operations the interference
// analysis needs: Bell and SPDC constructors, the path-exchange operator,
// local (per-photon) unitaries, LG<->HG basis changes, and symmetry
// classification.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "homsim/basis_conversion.hpp"
#include "homsim/mode_index.hpp"

namespace homsim {

/// Amplitudes below this magnitude are dropped from sparse states.
inline constexpr double kAmplitudeFloor = 1e-14;
/// Tolerance for calling a state an exchange eigenstate. Looser than the
/// arithmetic tolerance so round-off over basis changes never flips a class.
inline constexpr double kSymmetryClassTol = 1e-9;

using ModePair = std::pair<ModeId, ModeId>;

/// Pure two-photon state: sparse complex amplitudes over ordered mode
/// pairs (photon A, photon B), all in one basis. Constructors and
/// operations keep the state normalized to 1 within 1e-12.
struct TwoPhotonState {
    Basis basis = Basis::LG;
    std::map<ModePair, Complex> amplitudes;

    Complex amplitude(const ModeId& a, const ModeId& b) const {
        auto it = amplitudes.find({a, b});
        return it == amplitudes.end() ? Complex(0.0) : it->second;
    }
};

inline double norm(const TwoPhotonState& state) {
    double sum = 0.0;
    for (const auto& [pair, amp] : state.amplitudes) sum += std::norm(amp);
    return std::sqrt(sum);
}

namespace detail {

inline void set_amplitude(TwoPhotonState& state, const ModeId& a, const ModeId& b, Complex amp) {
    if (std::abs(amp) < kAmplitudeFloor) return;
    state.amplitudes[{a, b}] += amp;
    if (std::abs(state.amplitudes[{a, b}]) < kAmplitudeFloor) state.amplitudes.erase({a, b});
}

inline void prune(TwoPhotonState& state) {
    for (auto it = state.amplitudes.begin(); it != state.amplitudes.end();) {
        if (std::abs(it->second) < kAmplitudeFloor)
            it = state.amplitudes.erase(it);
        else
            ++it;
    }
}

inline void check_basis(const TwoPhotonState& state, Basis expected, const char* who) {
    if (state.basis != expected)
        throw std::invalid_argument(std::string(who) + ": state is in the wrong basis");
}

}  // namespace detail

/// (|L_p^l>_A |L_q^-l>_B + |L_p^-l>_A |L_q^l>_B) / sqrt(2).
inline TwoPhotonState bell_plus(int p, int q, int ell) {
    if (ell < 1)
        throw std::invalid_argument("bell_plus: requires ell >= 1 (the two terms coincide at ell = 0)");
    if (p < 0 || q < 0) throw std::invalid_argument("bell_plus: negative radial index");
    TwoPhotonState state;
    state.basis = Basis::LG;
    const double r = 1.0 / std::sqrt(2.0);
    state.amplitudes[{LGIndex{p, ell}, LGIndex{q, -ell}}] = r;
    state.amplitudes[{LGIndex{p, -ell}, LGIndex{q, ell}}] = r;
    return state;
}

/// As bell_plus with a relative minus sign on the second term.
inline TwoPhotonState bell_minus(int p, int q, int ell) {
    if (ell < 1)
        throw std::invalid_argument("bell_minus: requires ell >= 1 (the two terms coincide at ell = 0)");
    if (p < 0 || q < 0) throw std::invalid_argument("bell_minus: negative radial index");
    TwoPhotonState state;
    state.basis = Basis::LG;
    const double r = 1.0 / std::sqrt(2.0);
    state.amplitudes[{LGIndex{p, ell}, LGIndex{q, -ell}}] = r;
    state.amplitudes[{LGIndex{p, -ell}, LGIndex{q, ell}}] = -r;
    return state;
}

/// One term of the down-conversion spectrum. ell >= 0: the entry stands
/// for the symmetrized +-ell Bell pair (a plain product term at ell = 0),
/// and for the unordered radial pair {p,q}: both radial orderings enter
/// with the same weight, which is what makes the summed state an exact
/// +1 eigenstate of path exchange.
struct SpdcSpectrum {
    struct Entry {
        int p = 0;
        int q = 0;
        int ell = 0;
        Complex alpha{0.0};
    };
    std::vector<Entry> entries;
};

/// Normalized SPDC state: sum of alpha_{p,q;l} Psi+_{p,q;l}.
inline TwoPhotonState spdc_state(const SpdcSpectrum& spectrum) {
    TwoPhotonState state;
    state.basis = Basis::LG;
    bool any = false;
    for (const auto& entry : spectrum.entries) {
        if (entry.p < 0 || entry.q < 0)
            throw std::invalid_argument("spdc_state: negative radial index in spectrum");
        if (entry.ell < 0)
            throw std::invalid_argument("spdc_state: spectrum entries use ell >= 0");
        if (std::abs(entry.alpha) == 0.0) continue;
        any = true;
        const double r = 1.0 / std::sqrt(2.0);
        std::vector<std::pair<int, int>> radial_pairs{{entry.p, entry.q}};
        if (entry.p != entry.q) radial_pairs.push_back({entry.q, entry.p});
        for (auto [p, q] : radial_pairs) {
            if (entry.ell == 0) {
                detail::set_amplitude(state, LGIndex{p, 0}, LGIndex{q, 0}, entry.alpha);
            } else {
                detail::set_amplitude(state, LGIndex{p, entry.ell}, LGIndex{q, -entry.ell},
                                      entry.alpha * r);
                detail::set_amplitude(state, LGIndex{p, -entry.ell}, LGIndex{q, entry.ell},
                                      entry.alpha * r);
            }
        }
    }
    if (!any) throw std::invalid_argument("spdc_state: empty spectrum");
    double scale = norm(state);
    if (scale < kAmplitudeFloor)
        throw std::invalid_argument("spdc_state: spectrum cancels to the zero state");
    for (auto& [pair, amp] : state.amplitudes) amp /= scale;
    return state;
}

/// Path-exchange operator X: amplitude of (a,b) becomes the input
/// amplitude of (b,a).
inline TwoPhotonState exchange(const TwoPhotonState& state) {
    TwoPhotonState swapped;
    swapped.basis = state.basis;
    for (const auto& [pair, amp] : state.amplitudes)
        swapped.amplitudes[{pair.second, pair.first}] = amp;
    return swapped;
}

enum class Symmetry { Symmetric, Antisymmetric, Mixed };

inline const char* to_string(Symmetry s) {
    switch (s) {
        case Symmetry::Symmetric: return "Symmetric";
        case Symmetry::Antisymmetric: return "Antisymmetric";
        default: return "Mixed";
    }
}

struct SymmetryClass {
    Symmetry value = Symmetry::Mixed;
    double deviation = 0.0;  // distance from the nearest exchange eigenspace
};

/// Classifies a state against the +-1 eigenspaces of path exchange.
inline SymmetryClass symmetry_classify(const TwoPhotonState& state) {
    const TwoPhotonState swapped = exchange(state);
    double dist_sym_sq = 0.0;   // ||s - Xs||^2
    double dist_anti_sq = 0.0;  // ||s + Xs||^2
    std::map<ModePair, char> support;
    for (const auto& [pair, amp] : state.amplitudes) support[pair] = 1;
    for (const auto& [pair, amp] : swapped.amplitudes) support[pair] = 1;
    for (const auto& [pair, unused] : support) {
        Complex c = state.amplitude(pair.first, pair.second);
        Complex x = swapped.amplitude(pair.first, pair.second);
        dist_sym_sq += std::norm(c - x);
        dist_anti_sq += std::norm(c + x);
    }
    const double dist_sym = std::sqrt(dist_sym_sq);
    const double dist_anti = std::sqrt(dist_anti_sq);

    SymmetryClass result;
    result.deviation = 0.5 * std::min(dist_sym, dist_anti);
    if (dist_sym <= kSymmetryClassTol)
        result.value = Symmetry::Symmetric;
    else if (dist_anti <= kSymmetryClassTol)
        result.value = Symmetry::Antisymmetric;
    else
        result.value = Symmetry::Mixed;
    return result;
}

/// Block-diagonal single-photon unitary: one complex square matrix per
/// mode order, acting on the canonical mode list of that order.
class LocalUnitary {
public:
    LocalUnitary() = default;

    static LocalUnitary identity() {
        LocalUnitary u;
        u.identity_ = true;
        return u;
    }

    void set_block(int mode_order, Eigen::MatrixXcd block) {
        if (mode_order < 0) throw std::invalid_argument("LocalUnitary: negative mode order");
        const int dim = mode_order + 1;
        if (block.rows() != dim || block.cols() != dim)
            throw std::invalid_argument("LocalUnitary: block size must be order + 1");
        double err = (block.adjoint() * block - Eigen::MatrixXcd::Identity(dim, dim))
                         .cwiseAbs()
                         .maxCoeff();
        if (err > kConversionTol)
            throw std::invalid_argument("LocalUnitary: block is not unitary to 1e-12");
        blocks_[mode_order] = std::move(block);
    }

    bool has_block(int mode_order) const {
        return identity_ || blocks_.count(mode_order) > 0;
    }

    Eigen::MatrixXcd block(int mode_order) const {
        auto it = blocks_.find(mode_order);
        if (it != blocks_.end()) return it->second;
        if (identity_) return Eigen::MatrixXcd::Identity(mode_order + 1, mode_order + 1);
        throw std::invalid_argument("LocalUnitary: no block for mode order " +
                                    std::to_string(mode_order));
    }

    bool is_identity() const { return identity_ && blocks_.empty(); }

private:
    bool identity_ = false;
    std::map<int, Eigen::MatrixXcd> blocks_;
};

namespace detail {

// Shared kernel for (U_A x U_B)-style maps, including basis changes: each
// photon's amplitudes are transformed order-block by order-block, with
// rows of the per-order matrix indexed by the canonical mode list of the
// output basis.
inline TwoPhotonState two_sided_transform(
    const TwoPhotonState& state, Basis out_basis,
    const std::function<Eigen::MatrixXcd(int)>& matrix_a,
    const std::function<Eigen::MatrixXcd(int)>& matrix_b) {
    TwoPhotonState out;
    out.basis = out_basis;
    std::map<int, std::vector<ModeId>> out_modes;
    auto modes_for = [&](int n) -> const std::vector<ModeId>& {
        auto it = out_modes.find(n);
        if (it == out_modes.end()) it = out_modes.emplace(n, modes_of_order(out_basis, n)).first;
        return it->second;
    };
    std::map<int, Eigen::MatrixXcd> blocks_a, blocks_b;
    auto block_for = [](std::map<int, Eigen::MatrixXcd>& cache,
                        const std::function<Eigen::MatrixXcd(int)>& provider,
                        int n) -> const Eigen::MatrixXcd& {
        auto it = cache.find(n);
        if (it == cache.end()) it = cache.emplace(n, provider(n)).first;
        return it->second;
    };

    for (const auto& [pair, amp] : state.amplitudes) {
        const int na = order(pair.first);
        const int nb = order(pair.second);
        const Eigen::MatrixXcd& ua = block_for(blocks_a, matrix_a, na);
        const Eigen::MatrixXcd& ub = block_for(blocks_b, matrix_b, nb);
        const int col_a = index_in_order(pair.first);
        const int col_b = index_in_order(pair.second);
        const auto& modes_a = modes_for(na);
        const auto& modes_b = modes_for(nb);
        for (int r = 0; r <= na; ++r) {
            const Complex fa = ua(r, col_a);
            if (std::abs(fa) < kAmplitudeFloor) continue;
            for (int s = 0; s <= nb; ++s) {
                const Complex fb = ub(s, col_b);
                if (std::abs(fb) < kAmplitudeFloor) continue;
                out.amplitudes[{modes_a[r], modes_b[s]}] += amp * fa * fb;
            }
        }
    }
    prune(out);
    return out;
}

}  // namespace detail

/// (U_A x U_B) |s>. Requires a block for every mode order occupied on the
/// respective photon; norm is preserved to 1e-12.
inline TwoPhotonState apply_local(const TwoPhotonState& state, const LocalUnitary& u_a,
                                  const LocalUnitary& u_b) {
    for (const auto& [pair, amp] : state.amplitudes) {
        if (!u_a.has_block(order(pair.first)))
            throw std::invalid_argument("apply_local: photon A has no unitary block for order " +
                                        std::to_string(order(pair.first)));
        if (!u_b.has_block(order(pair.second)))
            throw std::invalid_argument("apply_local: photon B has no unitary block for order " +
                                        std::to_string(order(pair.second)));
    }
    return detail::two_sided_transform(
        state, state.basis, [&](int n) { return u_a.block(n); },
        [&](int n) { return u_b.block(n); });
}

/// Converts an LG-basis state to the HG basis, same conversion unitary on
/// both photons.
inline TwoPhotonState to_hg(const TwoPhotonState& state) {
    detail::check_basis(state, Basis::LG, "to_hg");
    auto block = [](int n) { return conversion_matrix(n).u; };
    return detail::two_sided_transform(state, Basis::HG, block, block);
}

/// Converts an HG-basis state back to the LG basis.
inline TwoPhotonState to_lg(const TwoPhotonState& state) {
    detail::check_basis(state, Basis::HG, "to_lg");
    auto block = [](int n) { return Eigen::MatrixXcd(conversion_matrix(n).u.adjoint()); };
    return detail::two_sided_transform(state, Basis::LG, block, block);
}

/// Inner product <a|b>. Both states must be in the same basis.
inline Complex overlap(const TwoPhotonState& a, const TwoPhotonState& b) {
    if (a.basis != b.basis) throw std::invalid_argument("overlap: basis mismatch");
    Complex acc = 0.0;
    const auto& small = a.amplitudes.size() <= b.amplitudes.size() ? a : b;
    const auto& large = a.amplitudes.size() <= b.amplitudes.size() ? b : a;
    for (const auto& [pair, amp] : small.amplitudes) {
        auto it = large.amplitudes.find(pair);
        if (it == large.amplitudes.end()) continue;
        // conj always applies to a's amplitude
        Complex ca = (&small == &a) ? amp : it->second;
        Complex cb = (&small == &a) ? it->second : amp;
        acc += std::conj(ca) * cb;
    }
    return acc;
}

}  // namespace homsim
