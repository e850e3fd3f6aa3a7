#pragma once

#include <charconv>
#include <compare>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace homsim {

/// Laguerre-Gauss mode label: radial index p >= 0 and azimuthal (OAM) index ell.
struct LGIndex {
    int p = 0;
    int ell = 0;
    friend auto operator<=>(const LGIndex&, const LGIndex&) = default;
};

/// Hermite-Gauss mode label: Cartesian orders m (x) and n (y), both >= 0.
struct HGIndex {
    int m = 0;
    int n = 0;
    friend auto operator<=>(const HGIndex&, const HGIndex&) = default;
};

enum class Basis { LG, HG };

/// A mode label in either basis.
using ModeId = std::variant<LGIndex, HGIndex>;

inline int order(LGIndex mode) { return 2 * mode.p + std::abs(mode.ell); }
inline int order(HGIndex mode) { return mode.m + mode.n; }
inline int order(const ModeId& mode) {
    return std::visit([](auto m) { return order(m); }, mode);
}

inline Basis basis_of(const ModeId& mode) {
    return std::holds_alternative<LGIndex>(mode) ? Basis::LG : Basis::HG;
}

/// The N+1 LG modes with 2p+|ell| = N, ell descending (ell = N, N-2, ..., -N).
inline std::vector<LGIndex> lg_modes_of_order(int n) {
    if (n < 0) throw std::invalid_argument("lg_modes_of_order: negative order");
    std::vector<LGIndex> modes;
    modes.reserve(n + 1);
    for (int ell = n; ell >= -n; ell -= 2) {
        modes.push_back(LGIndex{(n - std::abs(ell)) / 2, ell});
    }
    return modes;
}

/// The N+1 HG modes with m+n = N, m descending.
inline std::vector<HGIndex> hg_modes_of_order(int n) {
    if (n < 0) throw std::invalid_argument("hg_modes_of_order: negative order");
    std::vector<HGIndex> modes;
    modes.reserve(n + 1);
    for (int m = n; m >= 0; --m) {
        modes.push_back(HGIndex{m, n - m});
    }
    return modes;
}

inline std::vector<ModeId> modes_of_order(Basis basis, int n) {
    std::vector<ModeId> modes;
    modes.reserve(n + 1);
    if (basis == Basis::LG) {
        for (auto m : lg_modes_of_order(n)) modes.emplace_back(m);
    } else {
        for (auto m : hg_modes_of_order(n)) modes.emplace_back(m);
    }
    return modes;
}

// Position of a mode within the canonical list of its own order.
inline int index_in_order(LGIndex mode) { return (order(mode) - mode.ell) / 2; }
inline int index_in_order(HGIndex mode) { return order(mode) - mode.m; }
inline int index_in_order(const ModeId& mode) {
    return std::visit([](auto m) { return index_in_order(m); }, mode);
}

inline std::string format_mode(LGIndex mode) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "LG(%d,%d)", mode.p, mode.ell);
    return buf;
}

inline std::string format_mode(HGIndex mode) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "HG(%d,%d)", mode.m, mode.n);
    return buf;
}

inline std::string format_mode(const ModeId& mode) {
    return std::visit([](auto m) { return format_mode(m); }, mode);
}

namespace detail {

// Strict integer scan; accepts an optional leading minus sign only.
inline bool scan_int(std::string_view text, std::size_t& pos, int& out) {
    std::size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    const char* first = text.data() + start;
    const char* last = text.data() + pos;
    auto [end, err] = std::from_chars(first, last, out);
    return err == std::errc() && end == last && last != first;
}

}  // namespace detail

/// Parses the canonical text forms "LG(p,ell)" and "HG(m,n)".
/// Round-trips format_mode exactly; anything else is rejected.
inline ModeId parse_mode(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);

    auto fail = [&]() -> ModeId {
        throw std::invalid_argument("parse_mode: expected LG(p,ell) or HG(m,n), got \"" +
                                    std::string(text) + "\"");
    };
    if (text.size() < 7) return fail();
    bool is_lg = text.substr(0, 3) == "LG(";
    bool is_hg = text.substr(0, 3) == "HG(";
    if (!is_lg && !is_hg) return fail();

    std::size_t pos = 3;
    int first = 0, second = 0;
    if (!detail::scan_int(text, pos, first)) return fail();
    if (pos >= text.size() || text[pos] != ',') return fail();
    ++pos;
    if (!detail::scan_int(text, pos, second)) return fail();
    if (pos != text.size() - 1 || text[pos] != ')') return fail();

    if (is_lg) {
        if (first < 0) throw std::invalid_argument("parse_mode: LG radial index must be >= 0");
        return LGIndex{first, second};
    }
    if (first < 0 || second < 0)
        throw std::invalid_argument("parse_mode: HG orders must be >= 0");
    return HGIndex{first, second};
}

}  // namespace homsim
