// homsim — command-line front end for the two-photon interference
// simulator: mode-basis conversion, coincidence grid scans, HOM dip
// traces, state inspection and mode rendering.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "homsim/basis_conversion.hpp"
#include "homsim/biphoton_state.hpp"
#include "homsim/experiment.hpp"
#include "homsim/json_io.hpp"
#include "homsim/mode_index.hpp"

namespace {

std::string format_amplitude(homsim::Complex c) {
    double re = c.real() == 0.0 ? 0.0 : c.real();
    double im = c.imag() == 0.0 ? 0.0 : c.imag();
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", re, im);
    return buf;
}

void emit(const std::string& text, const std::string& out_path, const char* who) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error(std::string(who) + ": cannot open \"" + out_path + "\"");
    out << text;
}

int run_convert(const std::string& mode_text, bool as_json) {
    const homsim::ModeId mode = homsim::parse_mode(mode_text);
    homsim::Json terms = homsim::Json::array();
    std::string lines;
    if (homsim::basis_of(mode) == homsim::Basis::LG) {
        const auto lg = std::get<homsim::LGIndex>(mode);
        const auto coeffs = homsim::lg_to_hg_coeffs(lg);
        for (auto hg : homsim::hg_modes_of_order(homsim::order(lg))) {
            auto it = coeffs.find(hg);
            if (it == coeffs.end()) continue;
            lines += homsim::format_mode(hg) + ": " + format_amplitude(it->second) + "\n";
            terms.push_back({{"mode", homsim::format_mode(hg)},
                             {"re", it->second.real()},
                             {"im", it->second.imag()}});
        }
        if (as_json) {
            homsim::Json doc{{"input_mode", homsim::format_mode(mode)},
                             {"basis", "HG"},
                             {"terms", terms}};
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << lines;
        }
    } else {
        const auto hg = std::get<homsim::HGIndex>(mode);
        const auto coeffs = homsim::hg_to_lg_coeffs(hg);
        for (auto lg : homsim::lg_modes_of_order(homsim::order(hg))) {
            auto it = coeffs.find(lg);
            if (it == coeffs.end()) continue;
            lines += homsim::format_mode(lg) + ": " + format_amplitude(it->second) + "\n";
            terms.push_back({{"mode", homsim::format_mode(lg)},
                             {"re", it->second.real()},
                             {"im", it->second.imag()}});
        }
        if (as_json) {
            homsim::Json doc{{"input_mode", homsim::format_mode(mode)},
                             {"basis", "LG"},
                             {"terms", terms}};
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << lines;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon Hong-Ou-Mandel interference simulator for LG/HG spatial modes"};
    app.require_subcommand(1);

    // convert
    std::string convert_mode;
    bool convert_json = false;
    auto* convert = app.add_subcommand("convert", "Expand a mode in the other basis");
    convert->add_option("mode", convert_mode, "Mode label, e.g. LG(0,-2) or HG(1,1)")->required();
    convert->add_flag("--json", convert_json, "Emit a structured JSON document");

    // grid
    std::string grid_config, grid_out;
    bool grid_distinguishable = false;
    std::optional<std::uint64_t> grid_seed;
    auto* grid = app.add_subcommand("grid", "Scan a joint coincidence grid");
    grid->add_option("--config", grid_config, "Run configuration JSON file")->required();
    grid->add_option("--out", grid_out, "Output CSV path (defaults to stdout)");
    grid->add_flag("--distinguishable", grid_distinguishable,
                   "Force the no-interference (unequal path length) case");
    grid->add_option("--poisson-seed", grid_seed,
                     "Replace expected counts with seeded Poisson draws");

    // dip
    std::string dip_config, dip_mode_c, dip_mode_d, dip_out;
    auto* dip = app.add_subcommand("dip", "Trace coincidences against path delay");
    dip->add_option("--config", dip_config, "Run configuration JSON file (needs delays)")
        ->required();
    dip->add_option("--modeC", dip_mode_c, "Detector C projection mode")->required();
    dip->add_option("--modeD", dip_mode_d, "Detector D projection mode")->required();
    dip->add_option("--out", dip_out, "Output CSV path (defaults to stdout)");

    // render
    std::string render_mode_text, render_out;
    int render_size = 256;
    double render_extent = 4.0;
    auto* render = app.add_subcommand("render", "Render a mode intensity image");
    render->add_option("mode", render_mode_text, "Mode label")->required();
    render->add_option("--size", render_size, "Image width/height in pixels (>= 8)");
    render->add_option("--out", render_out, "Output PGM path")->required();
    render->add_option("--extent", render_extent, "Half-width of the field of view, waist units");

    // state
    std::string state_in, state_out, state_to;
    bool state_renormalize = false, state_json = false;
    auto* state_cmd = app.add_subcommand("state", "Inspect or convert a serialized state");
    state_cmd->add_option("--in", state_in, "State JSON file")->required();
    state_cmd->add_flag("--renormalize", state_renormalize,
                        "Accept and rescale a non-normalized state");
    state_cmd->add_option("--to", state_to, "Convert to this basis (LG or HG)")
        ->check(CLI::IsMember({"LG", "HG"}));
    state_cmd->add_flag("--json", state_json, "Print the full state document");
    state_cmd->add_option("--out", state_out, "Write the (converted) state document here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*convert) return run_convert(convert_mode, convert_json);

        if (*grid) {
            homsim::RunConfig config = homsim::config_from_file(grid_config);
            if (grid_distinguishable)
                config.interference = homsim::InterferenceMode::Distinguishable;
            config.poisson_seed = grid_seed;
            emit(homsim::grid_to_csv(homsim::scan_grid(config)), grid_out, "grid");
            return 0;
        }

        if (*dip) {
            homsim::RunConfig config = homsim::config_from_file(dip_config);
            const auto u = homsim::parse_mode(dip_mode_c);
            const auto v = homsim::parse_mode(dip_mode_d);
            emit(homsim::trace_to_csv(homsim::scan_dip(config, u, v)), dip_out, "dip");
            return 0;
        }

        if (*render) {
            const auto mode = homsim::parse_mode(render_mode_text);
            homsim::write_pgm(homsim::render_mode(mode, render_size, render_extent), render_out);
            return 0;
        }

        if (*state_cmd) {
            std::ifstream in(state_in);
            if (!in) throw std::runtime_error("state: cannot open \"" + state_in + "\"");
            homsim::Json doc;
            in >> doc;
            auto state = homsim::state_from_json(doc, state_renormalize);
            if (state_to == "HG" && state.basis == homsim::Basis::LG) state = homsim::to_hg(state);
            if (state_to == "LG" && state.basis == homsim::Basis::HG) state = homsim::to_lg(state);
            if (state_json) {
                std::cout << homsim::state_to_json(state).dump(2) << "\n";
            } else {
                const auto symmetry = homsim::symmetry_classify(state);
                std::cout << "basis: " << (state.basis == homsim::Basis::LG ? "LG" : "HG") << "\n"
                          << "terms: " << state.amplitudes.size() << "\n"
                          << "norm: " << homsim::norm(state) << "\n"
                          << "symmetry: " << homsim::to_string(symmetry.value)
                          << " (deviation " << symmetry.deviation << ")\n";
            }
            if (!state_out.empty())
                emit(homsim::state_to_json(state).dump(2) + "\n", state_out, "state");
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
