#pragma once

// Measurement campaigns: joint coincidence grids over a set of detection
// modes, HOM dip traces against path delay, and small rendering/CSV/PGM
// output helpers. Grids hold expected counts (probability x pair rate x
// integration time); optional Poisson sampling adds reproducible shot
// noise for display purposes only.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "homsim/biphoton_state.hpp"
#include "homsim/interferometer.hpp"
#include "homsim/mode_index.hpp"

namespace homsim {

/// Invalid run configuration; carries the offending field name.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("config field \"" + field + "\": " + message),
          field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class InterferenceMode { Interfering, Distinguishable, DelayScan };

struct RunConfig {
    SpdcSpectrum spectrum;
    double dove_theta_degrees = 0.0;
    Basis detection_basis = Basis::HG;
    int max_index = 4;  // grid bound on each mode index
    InterferenceMode interference = InterferenceMode::Interfering;
    std::vector<double> delays;  // seconds; required for delay scans
    double pair_rate = 1.0;      // simulated pairs per second
    double integration_time = 1.0;  // seconds
    double coherence_time = coherence_time_from_filter(710e-9, 10e-9);
    std::optional<std::uint64_t> poisson_seed;  // shot noise; off by default
};

/// Stand-in OAM spectrum used by the presets: a monotone-decaying set of
/// weights on ell = 1..4, p = q = 0.
inline SpdcSpectrum demo_spectrum() {
    SpdcSpectrum s;
    s.entries = {{0, 0, 1, Complex(0.45)},
                 {0, 0, 2, Complex(0.30)},
                 {0, 0, 3, Complex(0.15)},
                 {0, 0, 4, Complex(0.10)}};
    return s;
}

/// Named presets: "fig2" (Dove prisms parallel) and "fig3" (at 45
/// degrees), both measuring HG-mode grids with indices up to 4.
inline RunConfig preset_config(const std::string& name) {
    RunConfig config;
    config.spectrum = demo_spectrum();
    config.detection_basis = Basis::HG;
    config.max_index = 4;
    config.interference = InterferenceMode::Interfering;
    if (name == "fig2") {
        config.dove_theta_degrees = 0.0;
    } else if (name == "fig3") {
        config.dove_theta_degrees = 45.0;
    } else {
        throw ConfigError("preset", "unknown preset \"" + name + "\" (expected fig2 or fig3)");
    }
    return config;
}

inline void validate_config(const RunConfig& config) {
    bool any = false;
    for (const auto& e : config.spectrum.entries) {
        if (e.p < 0 || e.q < 0) throw ConfigError("spectrum", "radial indices must be >= 0");
        if (e.ell < 0) throw ConfigError("spectrum", "ell must be >= 0");
        if (std::abs(e.alpha) > 0.0) any = true;
    }
    if (!any) throw ConfigError("spectrum", "empty spectrum");
    if (config.max_index < 0) throw ConfigError("max_index", "must be >= 0");
    if (!(config.pair_rate > 0.0)) throw ConfigError("pair_rate", "must be positive");
    if (!(config.integration_time > 0.0))
        throw ConfigError("integration_time", "must be positive");
    if (!(config.coherence_time > 0.0)) throw ConfigError("coherence_time", "must be positive");
    if (config.interference == InterferenceMode::DelayScan && config.delays.empty())
        throw ConfigError("delays", "delay_scan requires a non-empty delay list");
}

/// Detection modes scanned by one detector: every mode with both indices
/// bounded by max_index, in a fixed deterministic order.
inline std::vector<ModeId> detection_modes(Basis basis, int max_index) {
    std::vector<ModeId> modes;
    if (basis == Basis::HG) {
        for (int m = 0; m <= max_index; ++m)
            for (int n = 0; n <= max_index; ++n) modes.emplace_back(HGIndex{m, n});
    } else {
        for (int p = 0; p <= max_index; ++p)
            for (int ell = max_index; ell >= -max_index; --ell)
                modes.emplace_back(LGIndex{p, ell});
    }
    return modes;
}

struct CoincidenceGrid {
    std::vector<ModeId> rows;  // detector C projections
    std::vector<ModeId> cols;  // detector D projections
    Eigen::MatrixXd counts;    // expected (or sampled) coincidence counts
};

struct DipTrace {
    ModePair mode_pair;
    std::vector<std::pair<double, double>> points;  // (delay seconds, counts)
};

namespace detail {

/// Source state after the Dove pair (path B) and conversion to the
/// detection basis.
inline TwoPhotonState prepared_state(const RunConfig& config) {
    validate_config(config);
    TwoPhotonState state = spdc_state(config.spectrum);
    const double theta = config.dove_theta_degrees * M_PI / 180.0;
    int max_order = 0;
    for (const auto& [pair, amp] : state.amplitudes)
        max_order = std::max({max_order, order(pair.first), order(pair.second)});
    state = apply_local(state, LocalUnitary::identity(), dove_pair_unitary(theta, max_order));
    if (config.detection_basis == Basis::HG) state = to_hg(state);
    return state;
}

}  // namespace detail

/// Scans every ordered pair of detection modes and fills the coincidence
/// grid for the configured interference setting.
inline CoincidenceGrid scan_grid(const RunConfig& config) {
    if (config.interference == InterferenceMode::DelayScan)
        throw ConfigError("interference", "delay_scan is not a grid mode; use scan_dip");
    const TwoPhotonState state = detail::prepared_state(config);
    const double scale = config.pair_rate * config.integration_time;

    CoincidenceGrid grid;
    grid.rows = detection_modes(config.detection_basis, config.max_index);
    grid.cols = grid.rows;
    grid.counts.resize(static_cast<Eigen::Index>(grid.rows.size()),
                       static_cast<Eigen::Index>(grid.cols.size()));
    for (std::size_t r = 0; r < grid.rows.size(); ++r) {
        for (std::size_t c = 0; c < grid.cols.size(); ++c) {
            const double p =
                config.interference == InterferenceMode::Interfering
                    ? coincidence_interfering(state, grid.rows[r], grid.cols[c]).probability
                    : coincidence_distinguishable(state, grid.rows[r], grid.cols[c]).probability;
            grid.counts(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = p * scale;
        }
    }

    if (config.poisson_seed) {
        std::mt19937_64 rng(*config.poisson_seed);
        for (Eigen::Index r = 0; r < grid.counts.rows(); ++r) {
            for (Eigen::Index c = 0; c < grid.counts.cols(); ++c) {
                const double mean = grid.counts(r, c);
                if (mean > 0.0) {
                    std::poisson_distribution<long long> draw(mean);
                    grid.counts(r, c) = static_cast<double>(draw(rng));
                }
            }
        }
    }
    return grid;
}

/// HOM dip trace: coincidence counts for one ordered detection pair as the
/// path delay sweeps through the configured list.
inline DipTrace scan_dip(const RunConfig& config, const ModeId& u, const ModeId& v) {
    if (config.delays.empty())
        throw ConfigError("delays", "dip scan requires a non-empty delay list");
    const TwoPhotonState state = detail::prepared_state(config);
    if (basis_of(u) != state.basis || basis_of(v) != state.basis)
        throw ConfigError("detection_basis", "dip modes do not match the detection basis");
    const double scale = config.pair_rate * config.integration_time;

    DipTrace trace;
    trace.mode_pair = {u, v};
    std::vector<double> delays = config.delays;
    std::sort(delays.begin(), delays.end());
    trace.points.reserve(delays.size());
    for (double tau : delays) {
        const double p =
            coincidence_with_delay(state, u, v, DelaySetting{tau, config.coherence_time})
                .probability;
        trace.points.emplace_back(tau, p * scale);
    }
    return trace;
}

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, top row first
};

namespace detail {

inline double hermite_value(int n, double x) {
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace detail

/// Intensity image of a single mode, |polynomial x Gaussian envelope|^2 on
/// a square grid spanning [-extent, extent] in waist units, peak scaled to
/// full range. Purely a documentation aid.
inline Image render_mode(const ModeId& mode, int grid_size, double extent) {
    if (grid_size < 8) throw std::invalid_argument("render_mode: grid_size must be >= 8");
    if (!(extent > 0.0)) throw std::invalid_argument("render_mode: extent must be positive");

    Image image;
    image.width = grid_size;
    image.height = grid_size;
    image.pixels.assign(static_cast<std::size_t>(grid_size) * grid_size, 0);

    std::optional<BiPoly> lg_poly;
    if (basis_of(mode) == Basis::LG) {
        const auto lg = std::get<LGIndex>(mode);
        lg_poly = lhs_eq1(lg.p, lg.ell);
    }

    std::vector<double> intensity(image.pixels.size(), 0.0);
    double peak = 0.0;
    const double step = 2.0 * extent / (grid_size - 1);
    for (int row = 0; row < grid_size; ++row) {
        const double y = extent - row * step;
        for (int col = 0; col < grid_size; ++col) {
            const double x = -extent + col * step;
            const double envelope = std::exp(-0.5 * (x * x + y * y));
            double value;
            if (lg_poly) {
                value = std::abs(lg_poly->eval(Complex(x), Complex(y))) * envelope;
            } else {
                const auto hg = std::get<HGIndex>(mode);
                value = std::abs(detail::hermite_value(hg.m, x) * detail::hermite_value(hg.n, y)) *
                        envelope;
            }
            const double cell = value * value;
            intensity[static_cast<std::size_t>(row) * grid_size + col] = cell;
            peak = std::max(peak, cell);
        }
    }
    if (peak > 0.0) {
        for (std::size_t k = 0; k < intensity.size(); ++k)
            image.pixels[k] = static_cast<std::uint8_t>(std::lround(255.0 * intensity[k] / peak));
    }
    return image;
}

namespace detail {

inline std::string format_count(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

// Mode names contain commas, so they are always written as quoted fields.
inline std::string csv_quote(const std::string& field) { return "\"" + field + "\""; }

inline std::ofstream open_for_write(const std::string& path, const char* who) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(std::string(who) + ": cannot open \"" + path +
                                 "\": " + std::strerror(errno));
    return out;
}

}  // namespace detail

inline std::string grid_to_csv(const CoincidenceGrid& grid) {
    std::string out = "modeC";
    for (const auto& mode : grid.cols) out += "," + detail::csv_quote(format_mode(mode));
    out += "\n";
    for (std::size_t r = 0; r < grid.rows.size(); ++r) {
        out += detail::csv_quote(format_mode(grid.rows[r]));
        for (std::size_t c = 0; c < grid.cols.size(); ++c)
            out += "," + detail::format_count(
                             grid.counts(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
        out += "\n";
    }
    return out;
}

inline std::string trace_to_csv(const DipTrace& trace) {
    std::string out = "delay_s,counts\n";
    for (const auto& [delay, count] : trace.points)
        out += detail::format_count(delay) + "," + detail::format_count(count) + "\n";
    return out;
}

inline void write_grid_csv(const CoincidenceGrid& grid, const std::string& path) {
    auto out = detail::open_for_write(path, "write_grid_csv");
    out << grid_to_csv(grid);
    if (!out) throw std::runtime_error("write_grid_csv: failed writing \"" + path + "\"");
}

inline void write_trace_csv(const DipTrace& trace, const std::string& path) {
    auto out = detail::open_for_write(path, "write_trace_csv");
    out << trace_to_csv(trace);
    if (!out) throw std::runtime_error("write_trace_csv: failed writing \"" + path + "\"");
}

/// Binary 8-bit portable graymap.
inline void write_pgm(const Image& image, const std::string& path) {
    auto out = detail::open_for_write(path, "write_pgm");
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw std::runtime_error("write_pgm: failed writing \"" + path + "\"");
}

}  // namespace homsim
