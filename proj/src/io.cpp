#include "fraczeta/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace fraczeta {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Consumes one floating-point literal from text[pos...]; returns false when
/// none starts there.
bool eat_double(const std::string& text, size_t& pos, double& out) {
    const char* start = text.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start) return false;
    pos += (size_t)(end - start);
    out = v;
    return true;
}

nlohmann::ordered_json pole_to_json(const Pole& p) {
    return nlohmann::ordered_json{{"re", p.re.value()},
                                  {"reExact", p.re.str()},
                                  {"im", p.im},
                                  {"n", p.n},
                                  {"order", p.order},
                                  {"residue",
                                   {{"re", p.residue.real()}, {"im", p.residue.imag()}}}};
}

} // namespace

std::complex<double> parse_complex(const std::string& text) {
    size_t pos = 0;
    double first = 0.0;
    if (!eat_double(text, pos, first))
        throw std::invalid_argument("cannot parse complex number \"" + text +
                                    "\"; expected forms: 2, 1.5+3i, -4i");
    if (pos == text.size()) return {first, 0.0};
    if (text[pos] == 'i' && pos + 1 == text.size()) return {0.0, first};

    double second = 0.0;
    if (!eat_double(text, pos, second) || pos + 1 != text.size() || text[pos] != 'i')
        throw std::invalid_argument("cannot parse complex number \"" + text +
                                    "\"; expected forms: 2, 1.5+3i, -4i");
    return {first, second};
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)value);
    return buf;
}

nlohmann::ordered_json poleset_to_json(const PoleSet& ps, double imWindow) {
    nlohmann::ordered_json j;
    j["imWindow"] = imWindow;

    auto& iso = j["isolated"] = nlohmann::ordered_json::array();
    for (const Pole& p : ps.isolated) iso.push_back(pole_to_json(p));

    auto& fams = j["families"] = nlohmann::ordered_json::array();
    for (const LatticeFamily& f : ps.families) {
        nlohmann::ordered_json fj;
        fj["realPart"] = f.realPart.value();
        fj["realPartExact"] = f.realPart.str();
        fj["spacing"] = f.spacing;
        auto& members = fj["members"] = nlohmann::ordered_json::array();
        const int nMax = (int)(imWindow / f.spacing);
        for (int n = -nMax; n <= nMax; ++n)
            if (f.isPole(n)) members.push_back(pole_to_json(f.member(n)));
        fams.push_back(std::move(fj));
    }

    auto& rem = j["removable"] = nlohmann::ordered_json::array();
    for (const Rational& r : ps.removable)
        rem.push_back(nlohmann::ordered_json{{"re", r.value()}, {"reExact", r.str()}});
    auto& can = j["cancelled"] = nlohmann::ordered_json::array();
    for (const Rational& r : ps.cancelled)
        can.push_back(nlohmann::ordered_json{{"re", r.value()}, {"reExact", r.str()}});

    auto& flat = j["poles"] = nlohmann::ordered_json::array();
    for (const Pole& p : ps.enumerate(imWindow)) flat.push_back(pole_to_json(p));
    return j;
}

std::string poleset_to_csv(const PoleSet& ps, double imWindow,
                           const std::vector<std::string>& comments) {
    std::string out;
    for (const std::string& c : comments) out += "# " + c + "\n";
    out += "re,im,order,res_re,res_im\n";
    for (const Pole& p : ps.enumerate(imWindow)) {
        out += fmt17(p.re.value()) + "," + fmt17(p.im) + "," + std::to_string(p.order) + "," +
               fmt17(p.residue.real()) + "," + fmt17(p.residue.imag()) + "\n";
    }
    return out;
}

} // namespace fraczeta
