#pragma once

// JSON forms of run configurations and two-photon states.
//
// Config documents mirror RunConfig field by field; a "preset" key loads
// fig2/fig3 first and the remaining keys override it. State documents are
// {basis, terms: [{modeA, modeB, re, im}]} with the canonical mode text
// forms.

#include <cmath>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "homsim/biphoton_state.hpp"
#include "homsim/experiment.hpp"
#include "homsim/mode_index.hpp"

namespace homsim {

using Json = nlohmann::json;

namespace detail {

inline double number_field(const Json& j, const std::string& key) {
    if (!j.at(key).is_number()) throw ConfigError(key, "expected a number");
    return j.at(key).get<double>();
}

inline int int_field(const Json& j, const std::string& key) {
    if (!j.at(key).is_number_integer()) throw ConfigError(key, "expected an integer");
    return j.at(key).get<int>();
}

}  // namespace detail

inline Json spectrum_to_json(const SpdcSpectrum& spectrum) {
    Json entries = Json::array();
    for (const auto& e : spectrum.entries) {
        entries.push_back({{"p", e.p},
                           {"q", e.q},
                           {"ell", e.ell},
                           {"re", e.alpha.real()},
                           {"im", e.alpha.imag()}});
    }
    return entries;
}

inline SpdcSpectrum spectrum_from_json(const Json& j) {
    if (!j.is_array()) throw ConfigError("spectrum", "expected an array of entries");
    SpdcSpectrum spectrum;
    for (const auto& item : j) {
        if (!item.is_object()) throw ConfigError("spectrum", "entries must be objects");
        SpdcSpectrum::Entry entry;
        for (const auto& [key, value] : item.items()) {
            if (key == "p") entry.p = detail::int_field(item, "p");
            else if (key == "q") entry.q = detail::int_field(item, "q");
            else if (key == "ell") entry.ell = detail::int_field(item, "ell");
            else if (key == "re" || key == "im") continue;  // read below
            else throw ConfigError("spectrum", "unknown entry key \"" + key + "\"");
        }
        double re = item.contains("re") ? detail::number_field(item, "re") : 0.0;
        double im = item.contains("im") ? detail::number_field(item, "im") : 0.0;
        entry.alpha = Complex(re, im);
        spectrum.entries.push_back(entry);
    }
    return spectrum;
}

inline RunConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
    RunConfig config;
    if (j.contains("preset")) {
        if (!j.at("preset").is_string()) throw ConfigError("preset", "expected a string");
        config = preset_config(j.at("preset").get<std::string>());
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "preset") {
            continue;
        } else if (key == "spectrum") {
            config.spectrum = spectrum_from_json(value);
        } else if (key == "dove_theta_degrees") {
            config.dove_theta_degrees = detail::number_field(j, key);
        } else if (key == "detection_basis") {
            if (!value.is_string()) throw ConfigError(key, "expected \"LG\" or \"HG\"");
            const auto name = value.get<std::string>();
            if (name == "LG") config.detection_basis = Basis::LG;
            else if (name == "HG") config.detection_basis = Basis::HG;
            else throw ConfigError(key, "expected \"LG\" or \"HG\"");
        } else if (key == "max_index") {
            config.max_index = detail::int_field(j, key);
        } else if (key == "interference") {
            if (!value.is_string())
                throw ConfigError(key, "expected interfering, distinguishable or delay_scan");
            const auto name = value.get<std::string>();
            if (name == "interfering") config.interference = InterferenceMode::Interfering;
            else if (name == "distinguishable")
                config.interference = InterferenceMode::Distinguishable;
            else if (name == "delay_scan") config.interference = InterferenceMode::DelayScan;
            else throw ConfigError(key, "expected interfering, distinguishable or delay_scan");
        } else if (key == "delays") {
            if (!value.is_array()) throw ConfigError(key, "expected an array of seconds");
            config.delays.clear();
            for (const auto& d : value) {
                if (!d.is_number()) throw ConfigError(key, "delays must be numbers");
                config.delays.push_back(d.get<double>());
            }
        } else if (key == "pair_rate") {
            config.pair_rate = detail::number_field(j, key);
        } else if (key == "integration_time") {
            config.integration_time = detail::number_field(j, key);
        } else if (key == "coherence_time_s") {
            config.coherence_time = detail::number_field(j, key);
        } else {
            throw ConfigError(key, "unknown config key");
        }
    }
    if (config.spectrum.entries.empty() && !j.contains("preset"))
        throw ConfigError("spectrum", "missing (supply a spectrum or a preset)");
    validate_config(config);
    return config;
}

inline RunConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open \"" + path + "\"");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ConfigError("config", "invalid JSON in \"" + path + "\": " + e.what());
    }
    return config_from_json(j);
}

inline Json state_to_json(const TwoPhotonState& state) {
    Json terms = Json::array();
    for (const auto& [pair, amp] : state.amplitudes) {
        terms.push_back({{"modeA", format_mode(pair.first)},
                         {"modeB", format_mode(pair.second)},
                         {"re", amp.real()},
                         {"im", amp.imag()}});
    }
    return Json{{"basis", state.basis == Basis::LG ? "LG" : "HG"}, {"terms", terms}};
}

/// Reads a state document. A state whose norm is off by more than 1e-9 is
/// rejected unless renormalize is set, in which case it is rescaled.
inline TwoPhotonState state_from_json(const Json& j, bool renormalize = false) {
    if (!j.is_object() || !j.contains("basis") || !j.contains("terms"))
        throw std::invalid_argument("state document requires basis and terms");
    const auto basis_name = j.at("basis").get<std::string>();
    TwoPhotonState state;
    if (basis_name == "LG") state.basis = Basis::LG;
    else if (basis_name == "HG") state.basis = Basis::HG;
    else throw std::invalid_argument("state basis must be LG or HG");

    for (const auto& term : j.at("terms")) {
        ModeId a = parse_mode(term.at("modeA").get<std::string>());
        ModeId b = parse_mode(term.at("modeB").get<std::string>());
        if (basis_of(a) != state.basis || basis_of(b) != state.basis)
            throw std::invalid_argument("state term mode does not match the declared basis");
        Complex amp(term.value("re", 0.0), term.value("im", 0.0));
        if (std::abs(amp) >= kAmplitudeFloor) state.amplitudes[{a, b}] += amp;
    }

    const double n = norm(state);
    if (std::abs(n - 1.0) > 1e-9) {
        if (!renormalize)
            throw std::invalid_argument(
                "state is not normalized (norm = " + std::to_string(n) +
                "); pass --renormalize to rescale");
        if (n < kAmplitudeFloor) throw std::invalid_argument("state has zero norm");
        for (auto& [pair, amp] : state.amplitudes) amp /= n;
    }
    detail::prune(state);
    return state;
}

}  // namespace homsim
