#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace ampfsi {

enum class Scheme { AMP, TP, ATP };

inline constexpr std::array<Scheme, 3> kAllSchemes{Scheme::AMP, Scheme::TP, Scheme::ATP};

constexpr std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::AMP: return "AMP";
        case Scheme::TP: return "TP";
        case Scheme::ATP: return "ATP";
    }
    return "?";
}

inline std::optional<Scheme> parse_scheme(std::string_view name) {
    for (Scheme s : kAllSchemes)
        if (to_string(s) == name) return s;
    return std::nullopt;
}

enum class Verdict { Stable, Unstable, Marginal };

constexpr std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Unstable: return "unstable";
        case Verdict::Marginal: return "marginal";
    }
    return "?";
}

}  // namespace ampfsi
