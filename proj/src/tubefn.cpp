#include "fraczeta/tubefn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fraczeta {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double evalTerms(const std::vector<PowerTerm>& terms, double t, double growthPow) {
    double s = 0.0;
    for (const auto& tm : terms)
        s += tm.c * (growthPow < 0 ? 1.0 : std::pow(tm.m, growthPow)) * std::pow(t, tm.alpha.value());
    return s;
}

} // namespace

int ScaleBandFamily::bandOf(double t) const {
    if (!(t > 0.0)) return -1;
    // Solve rhoLo*b^-k < t <= rhoHi*b^-k; k grows as t shrinks.
    const double kReal = std::log(rhoHi / t) / std::log(base);
    int k = (int)std::floor(kReal);
    // Guard against floating rounding at boundaries: test k-1, k, k+1.
    for (int kk = std::max(k0, k - 1); kk <= k + 1; ++kk) {
        if (kk < k0) continue;
        if (t > bandLo(kk) && t <= bandHi(kk)) return kk;
    }
    return -1;
}

double evaluate_tube(const TubeFunction& tf, double t, Side side) {
    if (!(t > 0.0) || !(t <= tf.delta))
        throw std::domain_error("evaluate_tube: t must lie in (0, delta], got t=" + fmt(t) +
                                " with delta=" + fmt(tf.delta));
    double v = evalTerms(tf.terminal, t, -1.0);
    for (const auto& fam : tf.ladders) {
        int k;
        if (side == Side::Auto) {
            k = fam.bandOf(t);
        } else {
            // At an exact boundary, Below selects the band with t as its top
            // (the half-open default) and Above the band with t as its bottom.
            k = -1;
            const int kGuess = (int)std::floor(std::log(fam.rhoHi / t) / std::log(fam.base));
            for (int kk = std::max(fam.k0, kGuess - 2); kk <= kGuess + 2; ++kk) {
                const bool in = (side == Side::Below)
                                    ? (t > fam.bandLo(kk) && t <= fam.bandHi(kk))
                                    : (t >= fam.bandLo(kk) && t < fam.bandHi(kk));
                if (in) { k = kk; break; }
            }
        }
        if (k < fam.k0) continue;
        for (const auto& tm : fam.terms)
            v += tm.c * std::pow(tm.m, (double)k) * std::pow(t, tm.alpha.value());
    }
    for (const auto& p : tf.pieces) {
        bool in = (side == Side::Above) ? (t >= p.lo && t < p.hi)
                                        : (t > p.lo && t <= p.hi);
        if (in) v += evalTerms(p.terms, t, -1.0);
    }
    return v;
}

TubeValidation validate_tube(const TubeFunction& tf, double tol) {
    TubeValidation res;
    auto fail = [&](const std::string& msg) { res.ok = false; res.errors.push_back(msg); };

    if (!(tf.delta > 0.0)) fail("delta must be positive");
    for (const auto& fam : tf.ladders) {
        if (!(fam.base > 1.0)) fail("family base must exceed 1");
        if (!(fam.rhoLo > 0.0) || !(fam.rhoLo < fam.rhoHi))
            fail("family requires 0 < rhoLo < rhoHi");
        if (fam.rhoHi > fam.base * fam.rhoLo * (1.0 + 1e-12))
            fail("family requires rhoHi <= base*rhoLo (bands of one family must not overlap)");
        if (fam.bandHi(fam.k0) > tf.delta * (1.0 + 1e-12))
            fail("family band k0 extends above delta");
        for (const auto& tm : fam.terms)
            if (!(tm.m > 0.0)) fail("growth factor must be positive");
    }
    for (const auto& p : tf.pieces) {
        if (!(p.lo >= 0.0) || !(p.lo < p.hi)) fail("piece requires 0 <= lo < hi");
        if (p.hi > tf.delta * (1.0 + 1e-12)) fail("piece extends above delta");
    }
    if (!res.ok) return res;

    // Collect boundary points down to a floor and check two-sided continuity.
    const double floorT = tf.delta * 1e-7;
    std::vector<double> bounds;
    for (const auto& fam : tf.ladders) {
        for (int k = fam.k0; fam.bandHi(k) > floorT && k < fam.k0 + 64; ++k) {
            bounds.push_back(fam.bandHi(k));
            bounds.push_back(fam.bandLo(k));
        }
    }
    for (const auto& p : tf.pieces) { bounds.push_back(p.lo); bounds.push_back(p.hi); }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
    for (double b : bounds) {
        if (!(b > floorT) || !(b < tf.delta * (1.0 - 1e-15))) continue;
        const double below = evaluate_tube(tf, b, Side::Below);
        const double above = evaluate_tube(tf, b, Side::Above);
        const double scale = std::max({std::abs(below), std::abs(above), 1e-300});
        if (std::abs(below - above) > tol * scale)
            fail("discontinuity at t=" + fmt(b) + ": below=" + fmt(below) + " above=" + fmt(above));
    }

    // Sample on a log grid: values must be nonnegative and nondecreasing.
    const int nGrid = 600;
    double prev = -1.0;
    for (int i = 0; i <= nGrid; ++i) {
        const double t = tf.delta * std::pow(1e-6, 1.0 - (double)i / nGrid);
        const double v = evaluate_tube(tf, t);
        if (v < -tol) fail("negative tube volume at t=" + fmt(t));
        if (prev >= 0.0 && v + tol * std::max(1.0, std::abs(v)) < prev)
            fail("tube volume decreases between samples near t=" + fmt(t));
        prev = v;
    }

    // Coverage gaps between a family's bands (rhoHi < base*rhoLo) are legal
    // but worth surfacing, since the profile there comes from other parts.
    for (const auto& fam : tf.ladders)
        if (fam.rhoHi < fam.base * fam.rhoLo * (1.0 - 1e-12))
            res.warnings.push_back("family with base " + fmt(fam.base) +
                                   " leaves gaps between its bands");
    return res;
}

TubeFunction with_delta(const TubeFunction& tf, double newDelta) {
    if (!(newDelta > 0.0) || newDelta > tf.delta * (1.0 + 1e-15))
        throw std::domain_error("with_delta: newDelta must lie in (0, delta]");
    TubeFunction out;
    out.delta = newDelta;
    out.terminal = tf.terminal;
    out.pieces = tf.pieces;
    // Drop or trim explicit pieces above the new cutoff.
    std::vector<BandPiece> kept;
    for (auto& p : out.pieces) {
        if (p.lo >= newDelta) continue;
        p.hi = std::min(p.hi, newDelta);
        kept.push_back(p);
    }
    out.pieces = std::move(kept);

    for (const auto& fam : tf.ladders) {
        // First band fully at or below the new cutoff.
        int k = fam.k0;
        while (fam.bandHi(k) > newDelta * (1.0 + 1e-12)) ++k;
        ScaleBandFamily nf = fam;
        nf.k0 = k;
        out.ladders.push_back(nf);
        // A band sliced by newDelta contributes its surviving lower part as an
        // explicit piece with absolute coefficients c*m^kCut.
        if (k > fam.k0) {
            const int kCut = k - 1;
            if (fam.bandLo(kCut) < newDelta * (1.0 - 1e-12)) {
                BandPiece piece;
                piece.lo = fam.bandLo(kCut);
                piece.hi = newDelta;
                for (const auto& tm : fam.terms) {
                    PowerTerm pt = tm;
                    pt.c = tm.c * std::pow(tm.m, (double)kCut);
                    pt.m = 1.0;
                    piece.terms.push_back(pt);
                }
                out.pieces.push_back(piece);
            }
        }
    }
    return out;
}

namespace {

nlohmann::ordered_json termToJson(const PowerTerm& tm) {
    nlohmann::ordered_json j;
    j["c"] = tm.c;
    j["alpha"] = tm.alpha.str();
    j["m"] = tm.m;
    return j;
}

PowerTerm termFromJson(const nlohmann::json& j) {
    PowerTerm tm;
    tm.c = j.at("c").get<double>();
    tm.alpha = Rational::parse(j.at("alpha").get<std::string>());
    tm.m = j.value("m", 1.0);
    return tm;
}

} // namespace

nlohmann::ordered_json tube_to_json(const TubeFunction& tf) {
    nlohmann::ordered_json j;
    j["delta"] = tf.delta;
    j["terminal"] = nlohmann::ordered_json::array();
    for (const auto& tm : tf.terminal) j["terminal"].push_back(termToJson(tm));
    j["ladders"] = nlohmann::ordered_json::array();
    for (const auto& fam : tf.ladders) {
        nlohmann::ordered_json f;
        f["base"] = fam.base;
        f["rhoHi"] = fam.rhoHi;
        f["rhoLo"] = fam.rhoLo;
        f["k0"] = fam.k0;
        f["terms"] = nlohmann::ordered_json::array();
        for (const auto& tm : fam.terms) f["terms"].push_back(termToJson(tm));
        j["ladders"].push_back(f);
    }
    j["pieces"] = nlohmann::ordered_json::array();
    for (const auto& p : tf.pieces) {
        nlohmann::ordered_json f;
        f["lo"] = p.lo;
        f["hi"] = p.hi;
        f["terms"] = nlohmann::ordered_json::array();
        for (const auto& tm : p.terms) f["terms"].push_back(termToJson(tm));
        j["pieces"].push_back(f);
    }
    return j;
}

TubeFunction tube_from_json(const nlohmann::json& j) {
    TubeFunction tf;
    tf.delta = j.at("delta").get<double>();
    if (j.contains("terminal"))
        for (const auto& t : j["terminal"]) tf.terminal.push_back(termFromJson(t));
    if (j.contains("ladders"))
        for (const auto& f : j["ladders"]) {
            ScaleBandFamily fam;
            fam.base = f.at("base").get<double>();
            fam.rhoHi = f.at("rhoHi").get<double>();
            fam.rhoLo = f.at("rhoLo").get<double>();
            fam.k0 = f.at("k0").get<int>();
            for (const auto& t : f.at("terms")) fam.terms.push_back(termFromJson(t));
            tf.ladders.push_back(fam);
        }
    if (j.contains("pieces"))
        for (const auto& f : j["pieces"]) {
            BandPiece p;
            p.lo = f.at("lo").get<double>();
            p.hi = f.at("hi").get<double>();
            for (const auto& t : f.at("terms")) p.terms.push_back(termFromJson(t));
            tf.pieces.push_back(p);
        }
    return tf;
}

} // namespace fraczeta
