#pragma once

#include "fraczeta/zeta.hpp"

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fraczeta {

/// Parses a complex scalar written as "re", "imi", or "re+imi" with no
/// spaces: "2", "1.5+3i", "0.5-4.2i", "3i", "-1e-3+2.5e-1i".  Throws
/// std::invalid_argument on anything else.
std::complex<double> parse_complex(const std::string& text);

/// FNV-1a 64-bit hash; used to fingerprint resolved run configurations.
std::uint64_t fnv1a64(std::string_view text);

/// Lower-case hex, zero-padded to 16 digits.
std::string hex64(std::uint64_t value);

/// Pole structure as JSON.  Exact rational real parts are serialized as
/// "p/q" strings alongside the float fields; lattice families are
/// materialized member-by-member within |Im s| <= imWindow, and a flat
/// "poles" array repeats the windowed poles sorted for direct consumption.
nlohmann::ordered_json poleset_to_json(const PoleSet& ps, double imWindow);

/// Windowed poles as CSV ("re,im,order,res_re,res_im" rows; full double
/// precision), preceded by one '#' comment line per entry of `comments`.
std::string poleset_to_csv(const PoleSet& ps, double imWindow,
                           const std::vector<std::string>& comments = {});

} // namespace fraczeta
