#include "fraczeta/verify.hpp"

#include "fraczeta/contour.hpp"
#include "fraczeta/estimate.hpp"
#include "fraczeta/rng.hpp"
#include "fraczeta/spaces.hpp"
#include "fraczeta/tubefn.hpp"
#include "fraczeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <sstream>

namespace fraczeta {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Track the worst relative discrepancy seen so far.
struct Worst {
    double value = 0.0;
    std::string where;
    void note(double v, const std::string& w) {
        if (v > value) {
            value = v;
            where = w;
        }
    }
};

} // namespace

void to_json(nlohmann::json& j, const CheckResult& r) {
    j = nlohmann::json{{"check", r.checkName},     {"entry", r.entryName},
                       {"passed", r.passed},       {"observed", r.observed},
                       {"expected", r.expected},   {"tolerance", r.tolerance},
                       {"details", r.details}};
}

CheckResult check_eq1(const CatalogEntry& e, std::uint64_t seed) {
    CheckResult res;
    res.checkName = "distance-tube-identity";
    res.entryName = e.name;
    res.tolerance = 1e-10;

    const double Q = e.Q.value();
    const double delta = e.tube.delta;
    const double measure = evaluate_tube(e.tube, delta);
    const MeromorphicZeta tz = continue_tube_zeta(e.tube, e.Q);
    const MeromorphicZeta dz = to_distance_zeta(tz, measure);
    const PoleSet ps = poles(tz);
    const double D = principal_dimensions(ps).D.value();

    // A set of positive measure puts a tube pole at s = Q itself; the
    // (Q - s) factor converts it into the finite offset -res(Z_t, Q).
    std::complex<double> resAtQ = 0.0;
    for (const Pole& p : ps.isolated)
        if (p.re == e.Q && p.im == 0.0) resAtQ += p.residue;
    for (const LatticeFamily& fam : ps.families)
        if (fam.realPart == e.Q && fam.isPole(0)) resAtQ += fam.memberResidue(0);

    Worst worst;
    try {
        for (int k = 0; k < 20; ++k) {
            const std::complex<double> s(D + 0.5 + 3.0 * uniform01(seed, k, 0),
                                         20.0 * uniform01(seed, k, 1) - 10.0);
            const std::complex<double> lhs = eval_zeta(dz, s);
            const std::complex<double> rhs =
                std::pow(delta, s - Q) * measure + (Q - s) * eval_zeta(tz, s);
            worst.note(std::abs(lhs - rhs) / (1.0 + std::abs(lhs)),
                       "s=(" + fmt(s.real()) + "," + fmt(s.imag()) + ")");
        }
        const std::complex<double> atQ = eval_zeta(dz, {Q, 0.0});
        worst.note(std::abs(atQ - (measure - resAtQ)) / (1.0 + measure), "s=Q");
    } catch (const std::exception& ex) {
        res.passed = false;
        res.observed = std::numeric_limits<double>::infinity();
        res.details = std::string("evaluation failed: ") + ex.what();
        return res;
    }

    res.observed = worst.value;
    res.passed = worst.value <= res.tolerance;
    res.details = "worst relative identity gap " + fmt(worst.value) + " at " + worst.where;
    return res;
}

CheckResult check_residue_relations(const CatalogEntry& e, std::uint64_t seed,
                                    const MinkowskiEstimate* minkowski) {
    CheckResult res;
    res.checkName = "residue-scaling";
    res.entryName = e.name;
    res.tolerance = 1e-12;

    const double Q = e.Q.value();
    const double measure = evaluate_tube(e.tube, e.tube.delta);
    const MeromorphicZeta tz = continue_tube_zeta(e.tube, e.Q);
    const MeromorphicZeta dz = to_distance_zeta(tz, measure);
    const PoleSet ps = poles(tz);

    Worst worst;
    auto compareAt = [&](std::complex<double> p, const char* tag) {
        if (std::abs(p - std::complex<double>(Q, 0.0)) < 1e-12) return;  // removed in Z_d
        const std::complex<double> rt = residue(tz, p);
        const std::complex<double> rd = residue(dz, p);
        const std::complex<double> want = (std::complex<double>(Q, 0.0) - p) * rt;
        worst.note(std::abs(rd - want) / (1.0 + std::abs(rd)), tag);
    };

    try {
        for (const Pole& p : ps.isolated)
            compareAt({p.re.value(), p.im}, "isolated");
        for (const LatticeFamily& fam : ps.families)
            for (int n = -2; n <= 2; ++n)
                if (fam.isPole(n))
                    compareAt({fam.realPart.value(), fam.spacing * n}, "lattice");

        if (e.name == "heisenberg-segment") {
            // worked reference: res(Z_t, 2) = pi, res(Z_d, 2) = 2 pi
            worst.note(std::abs(residue(tz, {2.0, 0.0}) - M_PI) / M_PI, "res(Zt,2)=pi");
            worst.note(std::abs(residue(dz, {2.0, 0.0}) - 2.0 * M_PI) / (2.0 * M_PI),
                       "res(Zd,2)=2pi");

            // Monte Carlo content bracket at dimension 2: |A_t|/t^2 -> pi.
            const MMSpace heis = make_space("heisenberg");
            const PointSet seg = make_set(heis, {{"set", "t-axis-segment"}});
            const double t = 3e-3;
            const auto data =
                mc_tube_volume(heis, seg, {t}, 1000000, seed ^ 0xC0FFEEull,
                               ExecPolicy::serial);
            const double content = data.volume[0] / (t * t);
            const double band = 3.0 * data.sigma[0] / (t * t);
            if (std::abs(content - M_PI) > band) {
                res.passed = false;
                res.observed = std::abs(content - M_PI);
                res.expected = M_PI;
                res.tolerance = band;
                res.details = "Monte Carlo content " + fmt(content) +
                              " misses pi beyond 3 sigma (" + fmt(band) + ")";
                return res;
            }
        }

        // Contour-confirm the closed form at the leading real pole: a circle
        // one third of the gap to the nearest other pole keeps clearance.
        const auto windowed = ps.enumerate(12.0);
        const Pole* lead = nullptr;
        for (const Pole& p : windowed)
            if (p.im == 0.0 && (!lead || p.re.value() > lead->re.value())) lead = &p;
        if (lead) {
            const std::complex<double> c(lead->re.value(), 0.0);
            double nearest = std::numeric_limits<double>::infinity();
            for (const Pole& q : windowed) {
                const double d = std::abs(std::complex<double>(q.re.value(), q.im) - c);
                if (d > 1e-12) nearest = std::min(nearest, d);
            }
            const double radius = std::min(0.25, nearest / 3.0);
            const std::complex<double> sym = residue(tz, c);
            const std::complex<double> num = circle_residue(tz, c, radius);
            const double gap = std::abs(sym - num) / (1.0 + std::abs(sym));
            if (gap > 1e-8) {
                res.passed = false;
                res.observed = gap;
                res.tolerance = 1e-8;
                res.details = "contour residue at " + fmt(c.real()) +
                              " disagrees with the closed form";
                return res;
            }
        }

        // Optional Minkowski-content bracket: over the fitted window the
        // empirical contents must straddle res(Z_t, D), with a 10% allowance
        // because finite-window contents only approach the lim inf/sup.
        if (minkowski) {
            const auto pd = principal_dimensions(ps);
            if (pd.realPoleAtD && pd.D < e.Q) {
                const double rD = residue(tz, {pd.D.value(), 0.0}).real();
                const double lo = 0.9 * minkowski->contentLower;
                const double hi = 1.1 * minkowski->contentUpper;
                if (!(lo <= rD && rD <= hi)) {
                    res.passed = false;
                    res.observed = rD;
                    res.expected = 0.5 * (lo + hi);
                    res.details = "residue at D outside the content bracket [" + fmt(lo) +
                                  ", " + fmt(hi) + "] measured over t in [" +
                                  fmt(minkowski->fitTMin) + ", " + fmt(minkowski->fitTMax) +
                                  "]";
                    return res;
                }
            }
        }
    } catch (const std::exception& ex) {
        res.passed = false;
        res.observed = std::numeric_limits<double>::infinity();
        res.details = std::string("residue computation failed: ") + ex.what();
        return res;
    }

    res.observed = worst.value;
    res.passed = worst.value <= res.tolerance;
    res.details = "worst relative residue gap " + fmt(worst.value) +
                  (worst.where.empty() ? "" : " at " + worst.where);
    return res;
}

CheckResult check_harvey_polking(double gamma, std::uint64_t seed) {
    CheckResult res;
    res.checkName = "singular-integral-dichotomy";
    res.entryName = "";
    const bool expectDivergent = gamma > 0.5;  // threshold Q - D = 1/2
    res.expected = expectDivergent ? 1.0 : 0.0;

    const MMSpace interval = make_space("euclid-interval");
    const PointSet cantor = make_set(interval, {{"set", "quarter-cantor"}});
    const std::complex<double> s(1.0 - gamma, 0.0);

    const std::uint64_t sizes[3] = {50000, 200000, 800000};
    double value[3], se[3];
    bool flagged[3];
    for (int i = 0; i < 3; ++i) {
        const auto est = mc_distance_zeta(interval, cantor, 0.25, s, sizes[i], seed + 1 + i,
                                          ExecPolicy::serial);
        value[i] = est.value.real();
        se[i] = est.standardError;
        flagged[i] = est.divergenceSuspected;
    }

    // A divergent integrand leaves every run flagged AND the three values
    // scattered (the running mean of an infinite integral never settles).
    // A convergent one just left of the threshold still has infinite
    // variance, so isolated flags appear; its values nevertheless agree.
    const double z12 = (value[1] - value[0]) / std::hypot(se[0], se[1]);
    const double z23 = (value[2] - value[1]) / std::hypot(se[1], se[2]);
    const double vLo = std::min({value[0], value[1], value[2]});
    const double vHi = std::max({value[0], value[1], value[2]});
    const double spread = vLo > 0.0 ? vHi / vLo : std::numeric_limits<double>::infinity();
    const bool allFlagged = flagged[0] && flagged[1] && flagged[2];
    const bool divergent = (allFlagged && spread > 1.2) || (z12 > 3.0 && z23 > 3.0);
    res.observed = spread;
    res.tolerance = 1.2;

    bool pass = divergent == expectDivergent;
    std::string extra;
    if (gamma == -1.0) {
        // bounded integrand with a known exact value: the distance integral
        // at s = 2 over the ratio-1/4 Cantor set's 1/4-neighborhood is 15/112
        const double exact = 15.0 / 112.0;
        if (std::abs(value[2] - exact) > 3.0 * se[2]) {
            pass = false;
            extra = "; exact-value cross-check at 15/112 failed";
        } else {
            extra = "; matches exact value 15/112 within 3 sigma";
        }
    }

    res.passed = pass;
    std::ostringstream os;
    os << "gamma " << fmt(gamma) << ": estimates " << fmt(value[0]) << " / " << fmt(value[1])
       << " / " << fmt(value[2]) << ", spread " << fmt(spread) << "x, flags "
       << flagged[0] << flagged[1] << flagged[2] << ", growth z " << fmt(z12) << ", "
       << fmt(z23) << " -> " << (divergent ? "divergent" : "finite") << extra;
    res.details = os.str();
    return res;
}

CheckResult check_delta_independence(const CatalogEntry& e) {
    CheckResult res;
    res.checkName = "cutoff-independence";
    res.entryName = e.name;
    res.tolerance = 1e-9;

    const MeromorphicZeta base = continue_tube_zeta(e.tube, e.Q);
    const auto basePoles = poles(base).enumerate(12.0);

    Worst worst;
    try {
        for (double factor : {2.0, 4.0}) {
            const TubeFunction shrunk = with_delta(e.tube, e.tube.delta / factor);
            const MeromorphicZeta z2 = continue_tube_zeta(shrunk, e.Q);
            const auto p2 = poles(z2).enumerate(12.0);
            if (p2.size() != basePoles.size()) {
                res.passed = false;
                res.observed = (double)p2.size();
                res.expected = (double)basePoles.size();
                res.details = "pole count changed when the cutoff shrank by " + fmt(factor);
                return res;
            }
            for (size_t i = 0; i < p2.size(); ++i) {
                if (basePoles[i].re != p2[i].re || basePoles[i].n != p2[i].n ||
                    std::abs(basePoles[i].im - p2[i].im) > 1e-12 *
                        std::max(1.0, std::abs(basePoles[i].im))) {
                    res.passed = false;
                    res.observed = std::numeric_limits<double>::infinity();
                    res.details = "pole locations changed when the cutoff shrank by " +
                                  fmt(factor);
                    return res;
                }
                worst.note(std::abs(basePoles[i].residue - p2[i].residue) /
                               (1.0 + std::abs(basePoles[i].residue)),
                           "factor " + fmt(factor));
            }
        }
    } catch (const std::exception& ex) {
        res.passed = false;
        res.observed = std::numeric_limits<double>::infinity();
        res.details = std::string("rebuild failed: ") + ex.what();
        return res;
    }

    res.observed = worst.value;
    res.passed = worst.value <= res.tolerance;
    res.details = "worst relative residue drift " + fmt(worst.value) + " over " +
                  fmt((double)basePoles.size()) + " windowed poles";
    return res;
}

CheckResult check_reflection_and_abscissa(const CatalogEntry& e, std::uint64_t seed) {
    CheckResult res;
    res.checkName = "conjugate-symmetry-and-abscissa";
    res.entryName = e.name;
    res.tolerance = 1e-12;

    const MeromorphicZeta tz = continue_tube_zeta(e.tube, e.Q);
    const PoleSet ps = poles(tz);
    const double D = principal_dimensions(ps).D.value();

    Worst worst;
    // Reflection on values: Z(conj s) = conj(Z(s)), and Z real at real s.
    for (int k = 0; k < 20; ++k) {
        const std::complex<double> s(D + 0.5 + 3.0 * uniform01(seed, k, 0),
                                     0.1 + 9.9 * uniform01(seed, k, 1));
        const std::complex<double> up = eval_zeta(tz, s);
        const std::complex<double> down = eval_zeta(tz, std::conj(s));
        worst.note(std::abs(down - std::conj(up)) / (1.0 + std::abs(up)), "value reflection");
        const std::complex<double> onAxis = eval_zeta(tz, {s.real(), 0.0});
        worst.note(std::abs(onAxis.imag()) / (1.0 + std::abs(onAxis)), "real axis");
    }
    for (const Pole& p : ps.isolated) {
        worst.note(std::abs(p.im), "isolated pole off the real axis");
        worst.note(std::abs(p.residue.imag()) / (1.0 + std::abs(p.residue)),
                   "complex residue at a real pole");
    }
    for (const LatticeFamily& fam : ps.families) {
        if (fam.isPole(0))
            worst.note(std::abs(fam.memberResidue(0).imag()) /
                           (1.0 + std::abs(fam.memberResidue(0))),
                       "complex residue at the real lattice member");
        for (int n = 1; n <= 3; ++n) {
            if (!fam.isPole(n) && !fam.isPole(-n)) continue;
            const std::complex<double> up = fam.memberResidue(n);
            const std::complex<double> down = fam.memberResidue(-n);
            worst.note(std::abs(down - std::conj(up)) / (1.0 + std::abs(up)),
                       "member " + std::to_string(n));
        }
    }

    const bool abscissaOk = D >= 0.0;

    res.observed = worst.value;
    res.expected = D;
    res.passed = worst.value <= res.tolerance && abscissaOk;
    res.details = "worst conjugate-symmetry gap " + fmt(worst.value) + "; abscissa " + fmt(D) +
                  (abscissaOk ? " >= 0" : " < 0 (impossible for a nonempty compact set)");
    return res;
}

std::vector<CheckResult> run_verification_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    for (const CatalogEntry& e : catalog()) {
        out.push_back(check_eq1(e, seed));
        out.push_back(check_residue_relations(e, seed));
        out.push_back(check_delta_independence(e));
        out.push_back(check_reflection_and_abscissa(e, seed));
    }
    for (double gamma : {0.3, 0.7, -1.0}) out.push_back(check_harvey_polking(gamma, seed));
    return out;
}

} // namespace fraczeta
