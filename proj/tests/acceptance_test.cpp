// Acceptance suite: one pass/fail line per criterion, exit code equals the
// number of failures. Tolerances are pinned in the checks themselves.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "homsim/basis_conversion.hpp"
#include "homsim/biphoton_state.hpp"
#include "homsim/experiment.hpp"
#include "homsim/interferometer.hpp"
#include "homsim/poly_oracle.hpp"
#include "test_helpers.hpp"

using namespace homsim;

namespace {

using JointRaw = std::map<std::pair<HGIndex, HGIndex>, GaussianRational>;

JointRaw joint_bell_raw(int sign) {
    const auto u = hermite_project(lhs_eq1(0, 2));
    const auto v = hermite_project(lhs_eq1(0, -2));
    JointRaw joint;
    for (const auto& [ma, ca] : u)
        for (const auto& [mb, cb] : v) joint[{ma, mb}] += ca * cb;
    for (const auto& [ma, ca] : v)
        for (const auto& [mb, cb] : u) {
            if (sign > 0)
                joint[{ma, mb}] += ca * cb;
            else
                joint[{ma, mb}] -= ca * cb;
        }
    for (auto it = joint.begin(); it != joint.end();) {
        if (it->second.is_zero())
            it = joint.erase(it);
        else
            ++it;
    }
    return joint;
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool criterion_eq1_identity() {
    for (int p = 0; p <= 4; ++p)
        for (int ell = -4; ell <= 4; ++ell)
            if (!eq1_identity_check(p, ell)) return false;
    return true;
}

bool criterion_eq6_vector() {
    const auto joint = joint_bell_raw(+1);
    const HGIndex h20{2, 0}, h11{1, 1}, h02{0, 2};
    // one overall constant t fixes every entry
    if (joint.count({h02, h02}) == 0) return false;
    const GaussianRational t = joint.at({h02, h02}) / GaussianRational(2);
    if (t.is_zero()) return false;
    const JointRaw expected = {
        {{h02, h02}, GaussianRational(2) * t},  {{h11, h11}, GaussianRational(8) * t},
        {{h20, h20}, GaussianRational(2) * t},  {{h20, h02}, GaussianRational(-2) * t},
        {{h02, h20}, GaussianRational(-2) * t},
    };
    return joint == expected;
}

bool criterion_eq7_vector() {
    const auto joint = joint_bell_raw(-1);
    const HGIndex h20{2, 0}, h11{1, 1}, h02{0, 2};
    if (joint.count({h02, h11}) == 0) return false;
    const GaussianRational four_i{Rational(0), Rational(4)};
    const GaussianRational t = joint.at({h02, h11}) / four_i;
    if (t.is_zero()) return false;
    const JointRaw expected = {
        {{h02, h11}, four_i * t},
        {{h11, h02}, -four_i * t},
        {{h11, h20}, four_i * t},
        {{h20, h11}, -four_i * t},
    };
    return joint == expected;
}

bool criterion_unitarity_roundtrip() {
    for (int n = 0; n <= 10; ++n) {
        const auto& m = conversion_matrix(n);
        const double err =
            (m.u.adjoint() * m.u - Eigen::MatrixXcd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff();
        if (err > 1e-12) return false;
    }
    std::mt19937_64 rng(811);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = testing::random_state(Basis::LG, 10, 8, rng);
        const auto back = to_lg(to_hg(s));
        std::map<ModePair, char> keys;
        for (const auto& [pair, amp] : s.amplitudes) keys[pair] = 1;
        for (const auto& [pair, amp] : back.amplitudes) keys[pair] = 1;
        for (const auto& [pair, unused] : keys) {
            if (std::abs(s.amplitude(pair.first, pair.second) -
                         back.amplitude(pair.first, pair.second)) > 1e-12)
                return false;
        }
    }
    return true;
}

bool criterion_symmetry_preservation() {
    std::mt19937_64 rng(905);
    std::vector<LocalUnitary> unitaries;
    for (int k = 0; k < 20; ++k) unitaries.push_back(testing::random_local_unitary(4, rng));

    for (int k = 0; k < 100; ++k) {
        TwoPhotonState s = testing::random_state(Basis::LG, 4, 6, rng);
        if (k % 3 == 1) s = testing::project_symmetry(s, +1);
        if (k % 3 == 2) s = testing::project_symmetry(s, -1);
        const Symmetry reference = symmetry_classify(s).value;
        for (const auto& u : unitaries) {
            if (symmetry_classify(apply_local(s, u, u)).value != reference) return false;
        }
        const auto hg = to_hg(s);
        if (symmetry_classify(hg).value != reference) return false;
        if (symmetry_classify(to_lg(hg)).value != reference) return false;
    }
    return true;
}

bool criterion_fig2() {
    const auto interfering = scan_grid(preset_config("fig2"));
    if (interfering.counts.maxCoeff() >= 1e-12) return false;

    RunConfig dist_config = preset_config("fig2");
    dist_config.interference = InterferenceMode::Distinguishable;
    const auto dist = scan_grid(dist_config);
    const auto state = detail::prepared_state(dist_config);
    bool any = false;
    for (std::size_t r = 0; r < dist.rows.size(); ++r) {
        for (std::size_t c = 0; c < dist.cols.size(); ++c) {
            const double support =
                std::norm(state.amplitude(dist.rows[r], dist.cols[c])) +
                std::norm(state.amplitude(dist.cols[c], dist.rows[r]));
            const double cell =
                dist.counts(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (support > 1e-20) {
                if (!(cell > 0.0)) return false;
                any = true;
            }
        }
    }
    return any;
}

bool criterion_fig3() {
    RunConfig config = preset_config("fig3");
    const auto interfering = scan_grid(config);
    config.interference = InterferenceMode::Distinguishable;
    const auto dist = scan_grid(config);

    bool any_doubled = false;
    for (Eigen::Index r = 0; r < interfering.counts.rows(); ++r) {
        for (Eigen::Index c = 0; c < interfering.counts.cols(); ++c) {
            const double base = dist.counts(r, c);
            const double cell = interfering.counts(r, c);
            const bool odd_fed =
                base > 1e-15 && order(interfering.rows[static_cast<std::size_t>(r)]) % 2 == 1;
            if (odd_fed) {
                if (std::abs(cell - 2.0 * base) > 1e-9 * 2.0 * base) return false;
                any_doubled = true;
            } else {
                if (cell >= 1e-12) return false;
            }
        }
    }
    return any_doubled;
}

bool criterion_dove_algebra() {
    const double quarter = M_PI / 4.0;
    for (int ell : {1, 3}) {
        const auto dove = dove_pair_unitary(quarter, ell);
        const auto mapped = apply_local(bell_plus(0, 0, ell), LocalUnitary::identity(), dove);
        if (std::abs(std::abs(overlap(mapped, bell_minus(0, 0, ell))) - 1.0) > 1e-12) return false;
    }
    for (int ell : {2, 4}) {
        const auto dove = dove_pair_unitary(quarter, ell);
        const auto mapped = apply_local(bell_plus(0, 0, ell), LocalUnitary::identity(), dove);
        if (std::abs(std::abs(overlap(mapped, bell_plus(0, 0, ell))) - 1.0) > 1e-12) return false;
    }
    return true;
}

bool criterion_dip() {
    const auto state = bell_minus(0, 0, 1);
    const ModeId u{LGIndex{0, 1}}, v{LGIndex{0, -1}};
    const double tau_c = coherence_time_from_filter(710e-9, 10e-9);

    if (std::abs(coincidence_with_delay(state, u, v, {0.0, tau_c}).probability - 0.5) > 1e-12)
        return false;
    for (double tau : {10.0 * tau_c, -12.0 * tau_c, 40.0 * tau_c}) {
        if (std::abs(coincidence_with_delay(state, u, v, {tau, tau_c}).probability - 0.25) > 1e-12)
            return false;
    }
    if (std::abs(coincidence_with_delay(state, u, v, {tau_c * std::sqrt(std::log(2.0)), tau_c})
                     .probability -
                 0.375) > 1e-12)
        return false;

    double previous = 0.5;
    for (int k = 1; k <= 100; ++k) {
        const double p =
            coincidence_with_delay(state, u, v, {0.1 * k * tau_c, tau_c}).probability;
        if (p > previous + 1e-12) return false;
        previous = p;
    }
    return true;
}

bool criterion_determinism() {
    for (const std::string preset : {"fig2", "fig3"}) {
        for (bool distinguishable : {false, true}) {
            RunConfig config = preset_config(preset);
            if (distinguishable) config.interference = InterferenceMode::Distinguishable;
            const std::string path_a = "acceptance_" + preset + "_a.csv";
            const std::string path_b = "acceptance_" + preset + "_b.csv";
            write_grid_csv(scan_grid(config), path_a);
            write_grid_csv(scan_grid(config), path_b);
            const bool same = read_bytes(path_a) == read_bytes(path_b);
            std::remove(path_a.c_str());
            std::remove(path_b.c_str());
            if (!same) return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        std::function<bool()> run;
        double budget_seconds;
    };
    const Criterion criteria[] = {
        {1, "polynomial identity, exact, p <= 4 and |ell| <= 4", criterion_eq1_identity, 5.0},
        {2, "symmetric Bell decomposition ratios 2:8:2:-2:-2", criterion_eq6_vector, 0.0},
        {3, "antisymmetric Bell decomposition 4i(+1,-1,+1,-1)", criterion_eq7_vector, 0.0},
        {4, "conversion unitarity and round trips to 1e-12, N <= 10", criterion_unitarity_roundtrip,
         0.0},
        {5, "symmetry class invariant under shared unitaries and basis change",
         criterion_symmetry_preservation, 0.0},
        {6, "parallel prisms: interfering grid zero, baseline grid on support", criterion_fig2,
         10.0},
        {7, "45-degree prisms: cells zero or exactly doubled by ell parity", criterion_fig3, 0.0},
        {8, "Dove pair at 45 degrees maps odd-ell Bell states to their partners",
         criterion_dove_algebra, 0.0},
        {9, "HOM dip values 1/2, 3/8, 1/4 and monotone envelope", criterion_dip, 0.0},
        {10, "byte-identical CSV output across repeated runs", criterion_determinism, 0.0},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        bool ok = false;
        std::string note;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = criterion.run();
        } catch (const std::exception& e) {
            ok = false;
            note = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && criterion.budget_seconds > 0.0 && elapsed > criterion.budget_seconds) {
            ok = false;
            note = "exceeded the runtime budget";
        }
        std::printf("%s  %2d. %s (%.2fs)\n", ok ? "PASS" : "FAIL", criterion.number,
                    criterion.name, elapsed);
        if (!ok) {
            ++failures;
            if (!note.empty()) std::printf("      %s\n", note.c_str());
        }
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
