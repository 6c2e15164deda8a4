#include "fraczeta/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fraczeta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kBlock = 4096;  ///< samples per reduction block

/// Compensated accumulator: per-block partial sums are themselves summed in
/// block order, so results do not depend on thread count or scheduling.
struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Least-squares fit of y against x; returns {slope, intercept, rSquared}.
struct LineFit {
    double slope = 0.0, intercept = 0.0, r2 = 1.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    if (sxx <= 0.0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

const SampleWindow window_for(const MMSpace& space, const PointSet& setA, double tMax) {
    if (setA.windowFor) return setA.windowFor(tMax);
    SampleWindow w;
    w.sample = space.sample;
    w.measure = space.totalMeasure;
    return w;
}

} // namespace

// ==========================================================================
// Empirical tube data
// ==========================================================================

void EmpiricalTubeData::validate() const {
    if (t.empty() || t.size() != volume.size() || t.size() != sigma.size())
        throw std::invalid_argument("tube data arrays are empty or of mismatched lengths");
    for (size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0)) throw std::invalid_argument("tube radii must be positive");
        if (i && !(t[i] > t[i - 1]))
            throw std::invalid_argument("tube radii must be strictly increasing");
        if (!(volume[i] >= 0.0) || !(sigma[i] >= 0.0))
            throw std::invalid_argument("tube volumes and standard errors must be nonnegative");
    }
    if (!(delta >= t.back() * (1.0 - 1e-12)))
        throw std::invalid_argument("delta must cover the largest tube radius");
    for (size_t i = 1; i < t.size(); ++i)
        if (volume[i] < volume[i - 1] - 3.0 * (sigma[i] + sigma[i - 1]) - 1e-300)
            throw std::invalid_argument(
                "tube volumes decrease by more than the noise allows at t = " + fmt17(t[i]));
}

std::vector<double> log_spaced_grid(double tMin, double tMax, int perDecade) {
    if (!(tMin > 0.0) || !(tMax > tMin))
        throw std::invalid_argument("log grid needs 0 < tMin < tMax");
    if (perDecade < 1) throw std::invalid_argument("log grid needs at least 1 point per decade");
    const double decades = std::log10(tMax / tMin);
    const int n = std::max(2, (int)std::lround(decades * perDecade) + 1);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = tMin * std::pow(tMax / tMin, (double)i / (n - 1));
    g.front() = tMin;
    g.back() = tMax;
    return g;
}

EmpiricalTubeData mc_tube_volume(const MMSpace& space, const PointSet& setA,
                                 const std::vector<double>& tGrid, std::uint64_t nSamples,
                                 std::uint64_t seed, ExecPolicy policy) {
    if (tGrid.empty()) throw std::invalid_argument("tube volume needs a nonempty radius grid");
    for (size_t i = 0; i < tGrid.size(); ++i) {
        if (!(tGrid[i] > 0.0))
            throw std::invalid_argument("tube radius grid entries must be positive");
        if (i && !(tGrid[i] > tGrid[i - 1]))
            throw std::invalid_argument("tube radius grid must be strictly increasing");
    }
    if (nSamples == 0) throw std::invalid_argument("tube volume needs at least one sample");

    const SampleWindow win = window_for(space, setA, tGrid.back());
    if (!win.sample) throw std::invalid_argument("sampling window has no sampler");

    const size_t nT = tGrid.size();
    const std::uint64_t nBlocks = (nSamples + kBlock - 1) / kBlock;
    // One bin per grid entry: bin j counts samples whose distance first fits
    // inside tGrid[j]; suffix sums then give hits per radius in one pass.
    std::vector<std::vector<std::uint64_t>> blockBins(nBlocks);

    auto doBlock = [&](std::uint64_t b) {
        std::vector<std::uint64_t> bins(nT + 1, 0);
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi = std::min(nSamples, lo + kBlock);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Point x = win.sample(seed, i);
            const double d = setA.distanceTo(x);
            const size_t j =
                std::lower_bound(tGrid.begin(), tGrid.end(), d) - tGrid.begin();
            ++bins[j];  // d <= tGrid[j] (j == nT: beyond every radius)
        }
        blockBins[b] = std::move(bins);
    };

    if (policy == ExecPolicy::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long b = 0; b < (long long)nBlocks; ++b) doBlock((std::uint64_t)b);
    } else {
        for (std::uint64_t b = 0; b < nBlocks; ++b) doBlock(b);
    }

    std::vector<std::uint64_t> bins(nT + 1, 0);
    for (const auto& bb : blockBins)
        for (size_t j = 0; j <= nT; ++j) bins[j] += bb[j];

    EmpiricalTubeData data;
    data.t = tGrid;
    data.volume.resize(nT);
    data.sigma.resize(nT);
    data.Q = space.Q;
    data.delta = tGrid.back();
    data.sampleCount = nSamples;
    data.seed = seed;
    std::uint64_t cum = 0;
    for (size_t j = 0; j < nT; ++j) {
        cum += bins[j];
        const double p = (double)cum / (double)nSamples;
        data.volume[j] = win.measure * p;
        data.sigma[j] = win.measure * std::sqrt(std::max(0.0, p * (1.0 - p) / (double)nSamples));
    }
    data.validate();
    return data;
}

EmpiricalTubeData sample_tube_function(const TubeFunction& tf, double Q,
                                       const std::vector<double>& tGrid) {
    if (tGrid.empty()) throw std::invalid_argument("tube sampling needs a nonempty grid");
    EmpiricalTubeData data;
    data.t = tGrid;
    data.volume.reserve(tGrid.size());
    data.sigma.assign(tGrid.size(), 0.0);
    data.Q = Q;
    data.delta = tf.delta;
    for (double t : tGrid) data.volume.push_back(evaluate_tube(tf, t));
    data.validate();
    return data;
}

void write_tube_csv(std::ostream& os, const EmpiricalTubeData& data) {
    os << "# Q " << fmt17(data.Q) << "\n";
    os << "# delta " << fmt17(data.delta) << "\n";
    os << "# samples " << data.sampleCount << "\n";
    os << "# seed " << data.seed << "\n";
    os << "t,volume,stderr\n";
    for (size_t i = 0; i < data.t.size(); ++i)
        os << fmt17(data.t[i]) << "," << fmt17(data.volume[i]) << "," << fmt17(data.sigma[i])
           << "\n";
}

EmpiricalTubeData read_tube_csv(std::istream& is) {
    EmpiricalTubeData data;
    std::string line;
    bool sawHeader = false;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        if (line.back() == '\r') line.pop_back();
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            if (key == "Q") ls >> data.Q;
            else if (key == "delta") ls >> data.delta;
            else if (key == "samples") ls >> data.sampleCount;
            else if (key == "seed") ls >> data.seed;
            continue;
        }
        if (!sawHeader) {
            if (line != "t,volume,stderr")
                throw std::invalid_argument("tube CSV must start with header t,volume,stderr");
            sawHeader = true;
            continue;
        }
        double t, v, se;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &v, &se) != 3)
            throw std::invalid_argument("malformed tube CSV row: " + line);
        data.t.push_back(t);
        data.volume.push_back(v);
        data.sigma.push_back(se);
    }
    if (!sawHeader) throw std::invalid_argument("tube CSV has no header row");
    if (data.delta <= 0.0 && !data.t.empty()) data.delta = data.t.back();
    data.validate();
    return data;
}

// ==========================================================================
// Minkowski dimension / content
// ==========================================================================

MinkowskiEstimate estimate_minkowski(const EmpiricalTubeData& data) {
    data.validate();
    std::vector<double> lt, lv;
    for (size_t i = 0; i < data.t.size(); ++i) {
        if (data.volume[i] > 0.0) {
            lt.push_back(std::log10(data.t[i]));
            lv.push_back(std::log10(data.volume[i]));
        }
    }
    if (lt.size() < 10)
        throw std::invalid_argument(
            "dimension fit needs at least 10 positive-volume points; use more samples or a "
            "grid reaching larger radii");
    if (lt.back() - lt.front() < 2.0 - 1e-9)
        throw std::invalid_argument(
            "dimension fit needs the grid to span at least two decades; reduce tMin or raise "
            "tMax");

    const LineFit global = fit_line(lt, lv);
    const double D = data.Q - global.slope;

    MinkowskiEstimate est;
    est.rSquared = global.r2;
    est.dimLower = D;
    est.dimUpper = D;
    est.fitTMin = std::pow(10.0, lt.front());
    est.fitTMax = std::pow(10.0, lt.back());

    // Sliding decade-wide windows bound the local slope spread.
    for (size_t i = 0; i < lt.size(); ++i) {
        const double uLo = lt[i];
        if (uLo + 1.0 > lt.back() + 1e-9) break;
        std::vector<double> wx, wy;
        for (size_t j = i; j < lt.size() && lt[j] <= uLo + 1.0 + 1e-12; ++j) {
            wx.push_back(lt[j]);
            wy.push_back(lv[j]);
        }
        if (wx.size() < 5) continue;
        const double Dw = data.Q - fit_line(wx, wy).slope;
        est.dimLower = std::min(est.dimLower, Dw);
        est.dimUpper = std::max(est.dimUpper, Dw);
    }

    est.contentLower = kInf;
    est.contentUpper = 0.0;
    for (size_t i = 0; i < data.t.size(); ++i) {
        if (!(data.volume[i] > 0.0)) continue;
        const double c = data.volume[i] / std::pow(data.t[i], data.Q - D);
        est.contentLower = std::min(est.contentLower, c);
        est.contentUpper = std::max(est.contentUpper, c);
    }
    return est;
}

void to_json(nlohmann::json& j, const MinkowskiEstimate& m) {
    j = nlohmann::json{{"dimLower", m.dimLower},       {"dimUpper", m.dimUpper},
                       {"contentLower", m.contentLower}, {"contentUpper", m.contentUpper},
                       {"fitTMin", m.fitTMin},         {"fitTMax", m.fitTMax},
                       {"rSquared", m.rSquared}};
}

// ==========================================================================
// Log-periodic oscillation detection
// ==========================================================================

namespace {

void fft_radix2(std::vector<std::complex<double>>& a) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / (double)len;
        const std::complex<double> wBase(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wBase;
            }
        }
    }
}

} // namespace

OscillationReport detect_log_periodicity(const EmpiricalTubeData& data, double D) {
    data.validate();
    std::vector<double> u, y;
    for (size_t i = data.t.size(); i-- > 0;) {  // t increasing -> u = -log t increasing reversed
        if (!(data.volume[i] > 0.0)) continue;
        u.push_back(-std::log(data.t[i]));
        y.push_back(std::log(data.volume[i]) + (data.Q - D) * (-std::log(data.t[i])));
    }
    if (u.size() < 16)
        throw std::invalid_argument(
            "oscillation detection needs at least 16 positive-volume points");
    // u must be increasing; t was strictly increasing so this holds.
    const size_t N = 1024;
    const double uLo = u.front(), uHi = u.back();
    if (!(uHi > uLo)) throw std::invalid_argument("degenerate radius range");
    const double du = (uHi - uLo) / (double)(N - 1);

    // Linear resample onto the uniform grid.
    std::vector<double> g(N);
    size_t seg = 0;
    for (size_t k = 0; k < N; ++k) {
        const double uk = uLo + du * (double)k;
        while (seg + 2 < u.size() && u[seg + 1] < uk) ++seg;
        const double w = (uk - u[seg]) / (u[seg + 1] - u[seg]);
        g[k] = y[seg] + (y[seg + 1] - y[seg]) * std::clamp(w, 0.0, 1.0);
    }

    // Detrend (kills any leftover power-law drift from an imperfect D).
    {
        std::vector<double> xs(N);
        for (size_t k = 0; k < N; ++k) xs[k] = (double)k;
        const LineFit trend = fit_line(xs, g);
        for (size_t k = 0; k < N; ++k) g[k] -= trend.intercept + trend.slope * (double)k;
    }

    // Hann window, then the magnitude spectrum.
    std::vector<std::complex<double>> spec(N);
    for (size_t k = 0; k < N; ++k) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * M_PI * (double)k / (double)(N - 1));
        spec[k] = g[k] * w;
    }
    fft_radix2(spec);

    // Only frequencies completing at least three cycles over the data count,
    // and only frequencies the original sampling can resolve (at least four
    // data points per cycle) -- beyond that the interpolant has no content
    // and the noise median would be meaningless.
    const size_t kMin = 3;
    const size_t kMax = std::min(N / 2 - 1, std::max(kMin, (u.size() - 1) / 4));
    std::vector<double> mags;
    size_t kPeak = kMin;
    double peak = -1.0;
    for (size_t k = kMin; k <= kMax; ++k) {
        const double m = std::abs(spec[k]);
        mags.push_back(m);
        if (m > peak) {
            peak = m;
            kPeak = k;
        }
    }
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    const double median = mags[mags.size() / 2];

    // Parabolic refinement of the peak bin on the log-magnitude.
    double kRef = (double)kPeak;
    {
        const double a = std::abs(spec[kPeak - 1]);
        const double b = std::abs(spec[kPeak]);
        const double c = std::abs(spec[kPeak + 1]);
        if (a > 0.0 && b > 0.0 && c > 0.0) {
            const double la = std::log(a), lb = std::log(b), lc = std::log(c);
            const double denom = la - 2.0 * lb + lc;
            if (denom < 0.0) {
                const double corr = 0.5 * (la - lc) / denom;
                kRef += std::clamp(corr, -0.5, 0.5);
            }
        }
    }

    OscillationReport rep;
    rep.period = (double)N * du / kRef;
    rep.imagSpacing = 2.0 * M_PI / rep.period;
    // Hann coherent gain is 1/2: a pure sinusoid of amplitude A gives a DFT
    // line of magnitude A*N/4.
    rep.amplitude = 4.0 * peak / (double)N;
    const double ratio = median > 0.0 ? peak / median : (peak > 0.0 ? kInf : 0.0);
    rep.confidence = ratio / (ratio + 2.0);  // 0.6 exactly at a 3x peak
    // A maximum at the edge of the searched band is what slow drift or
    // correlated noise produces, not a resolved spectral line.
    if (kPeak == kMin || kPeak == kMax) rep.confidence = std::min(rep.confidence, 0.5);
    return rep;
}

void to_json(nlohmann::json& j, const OscillationReport& r) {
    j = nlohmann::json{{"period", r.period},
                       {"amplitude", r.amplitude},
                       {"imagSpacing", r.imagSpacing},
                       {"confidence", r.confidence}};
}

// ==========================================================================
// Tube zeta quadrature
// ==========================================================================

namespace {

/// phi(z) = (e^z - 1)/z and psi(z) = (e^z (z - 1) + 1)/z^2, stable near 0.
std::complex<double> phi_fn(std::complex<double> z) {
    if (std::abs(z) < 0.5) {
        std::complex<double> sum = 1.0, term = 1.0;
        for (int k = 1; k < 24; ++k) {
            term *= z / (double)(k + 1);
            sum += term;
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

std::complex<double> psi_fn(std::complex<double> z) {
    if (std::abs(z) < 0.5) {
        // sum_{k>=0} z^k (k+1)/(k+2)!
        std::complex<double> sum = 0.0, zk = 1.0;
        double fact = 2.0;  // (k+2)! running
        for (int k = 0; k < 24; ++k) {
            sum += zk * ((double)(k + 1) / fact);
            zk *= z;
            fact *= (double)(k + 3);
        }
        return sum;
    }
    return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
}

/// Exact integral of (a + b (u - u1)) e^{kappa u} over [u1, u2].
std::complex<double> linexp_integral(double a, double b, double u1, double u2,
                                     std::complex<double> kappa) {
    const double W = u2 - u1;
    const std::complex<double> zW = kappa * W;
    const std::complex<double> scale = std::exp(kappa * u1);
    return scale * (a * W * phi_fn(zW) + b * W * W * psi_fn(zW));
}

struct Envelope {
    double C = 0.0;  ///< |A_t| <= C t^{Q - d} over the fitted range
    double d = 0.0;
};

Envelope fit_envelope(const EmpiricalTubeData& data) {
    std::vector<double> lt, lv;
    for (size_t i = 0; i < data.t.size(); ++i)
        if (data.volume[i] > 0.0) {
            lt.push_back(std::log(data.t[i]));
            lv.push_back(std::log(data.volume[i]));
        }
    if (lt.size() < 4)
        throw std::invalid_argument("zeta quadrature needs at least 4 positive-volume points");
    const LineFit f = fit_line(lt, lv);
    Envelope env;
    env.d = data.Q - f.slope;
    for (size_t i = 0; i < data.t.size(); ++i)
        if (data.volume[i] > 0.0)
            env.C = std::max(env.C, data.volume[i] / std::pow(data.t[i], data.Q - env.d));
    return env;
}

QuadratureResult finish_quadrature(std::complex<double> value, const Envelope& env,
                                   std::complex<double> s, double tMin) {
    QuadratureResult res;
    res.value = value;
    const double gap = s.real() - env.d;
    if (gap > 1e-9) {
        res.truncationBound = env.C * std::pow(tMin, gap) / gap;
    } else {
        res.truncationBound = kInf;
        res.warning = "Re s = " + fmt17(s.real()) + " is at or below the fitted dimension " +
                      fmt17(env.d) + "; the tail integral over (0, tMin) diverges";
    }
    return res;
}

} // namespace

QuadratureResult tube_zeta_quadrature(const EmpiricalTubeData& data, std::complex<double> s,
                                      double tMin) {
    data.validate();
    if (!(tMin > 0.0)) throw std::invalid_argument("tMin must be positive");
    if (tMin < data.t.front() * (1.0 - 1e-12))
        throw std::invalid_argument("tMin lies below the sampled radius range");
    if (!(tMin < data.delta))
        throw std::invalid_argument("tMin must stay below delta");
    const Envelope env = fit_envelope(data);

    // The interpolant is linear in u = log t between data points, so each
    // segment integrates in closed form against e^{(s-Q) u}.
    const std::complex<double> kappa = std::complex<double>(s.real() - data.Q, s.imag());
    std::complex<double> total = 0.0;
    for (size_t i = 0; i + 1 < data.t.size(); ++i) {
        double uA = std::log(data.t[i]);
        double uB = std::log(data.t[i + 1]);
        const double vA = data.volume[i], vB = data.volume[i + 1];
        const double slope = (vB - vA) / (uB - uA);
        double a = vA;
        if (data.t[i + 1] <= tMin) continue;
        if (data.t[i] < tMin) {
            const double uT = std::log(tMin);
            a = vA + slope * (uT - uA);
            uA = uT;
        }
        total += linexp_integral(a, slope, uA, uB, kappa);
    }
    return finish_quadrature(total, env, s, tMin);
}

QuadratureResult tube_zeta_quadrature(const TubeFunction& tf, double Q, std::complex<double> s,
                                      double tMin) {
    if (!(tMin > 0.0) || !(tMin < tf.delta))
        throw std::invalid_argument("tMin must lie in (0, delta)");

    // Collect the breakpoints where the piecewise power form can kink.
    std::vector<double> brk = {tMin, tf.delta};
    for (const auto& fam : tf.ladders) {
        for (int k = fam.k0;; ++k) {
            const double lo = fam.bandLo(k), hi = fam.bandHi(k);
            if (hi <= tMin) break;
            if (lo < tf.delta && lo > tMin) brk.push_back(lo);
            if (hi < tf.delta && hi > tMin) brk.push_back(hi);
            if (lo <= 0.0) break;
        }
    }
    for (const auto& p : tf.pieces) {
        if (p.lo > tMin && p.lo < tf.delta) brk.push_back(p.lo);
        if (p.hi > tMin && p.hi < tf.delta) brk.push_back(p.hi);
    }
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-15 * b; }),
              brk.end());

    // Simpson in u = log t on each smooth segment.
    const std::complex<double> kappa = std::complex<double>(s.real() - Q, s.imag());
    std::complex<double> total = 0.0;
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
        const double uA = std::log(brk[i]), uB = std::log(brk[i + 1]);
        const int n = std::max(16, (int)std::ceil((uB - uA) / std::log(10.0) * 256.0)) & ~1;
        const double h = (uB - uA) / n;
        std::complex<double> sum = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double u = uA + h * k;
            const double t = std::exp(u);
            // The left endpoint of a segment belongs to the band above it
            // under the half-open convention; force the limit from above.
            const double v = evaluate_tube(tf, std::min(t, tf.delta),
                                           k == 0 ? Side::Above : Side::Auto);
            const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            sum += w * std::exp(kappa * u) * v;
        }
        total += sum * (h / 3.0);
    }

    // Envelope for the truncation bound, fitted on a dense exact sample.
    const Envelope env =
        fit_envelope(sample_tube_function(tf, Q, log_spaced_grid(tMin, tf.delta, 64)));
    return finish_quadrature(total, env, s, tMin);
}

// ==========================================================================
// Monte Carlo zeta estimates
// ==========================================================================

namespace {

struct ZetaBlock {
    Kahan re, im, abs2;
    double maxAbs2 = 0.0;
    std::uint64_t hits = 0;
};

ZetaEstimate mc_zeta_kernel(const SampleWindow& win, const PointSet& setA,
                            const std::function<bool(const Point&, double)>& keep,
                            std::complex<double> s, double Q, std::uint64_t nSamples,
                            std::uint64_t seed, ExecPolicy policy) {
    if (nSamples == 0) throw std::invalid_argument("zeta estimate needs at least one sample");
    if (!win.sample) throw std::invalid_argument("sampling window has no sampler");
    const std::complex<double> kappa = std::complex<double>(s.real() - Q, s.imag());

    const std::uint64_t nBlocks = (nSamples + kBlock - 1) / kBlock;
    std::vector<ZetaBlock> blocks(nBlocks);

    auto doBlock = [&](std::uint64_t b) {
        ZetaBlock zb;
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi = std::min(nSamples, lo + kBlock);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Point x = win.sample(seed, i);
            const double d = setA.distanceTo(x);
            if (!keep(x, d)) continue;
            std::complex<double> w;
            if (d > 0.0) {
                w = std::exp(kappa * std::log(d));
            } else if (kappa.real() > 0.0) {
                w = 0.0;  // d^kappa -> 0
            } else if (kappa == std::complex<double>(0.0, 0.0)) {
                w = 1.0;
            } else {
                continue;  // singular sample on the set itself; measure zero
            }
            ++zb.hits;
            zb.re.add(w.real());
            zb.im.add(w.imag());
            zb.abs2.add(std::norm(w));
            zb.maxAbs2 = std::max(zb.maxAbs2, std::norm(w));
        }
        blocks[b] = zb;
    };

    if (policy == ExecPolicy::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long b = 0; b < (long long)nBlocks; ++b) doBlock((std::uint64_t)b);
    } else {
        for (std::uint64_t b = 0; b < nBlocks; ++b) doBlock(b);
    }

    // Ordered cross-block reduction; also capture the first-quarter variance
    // to spot estimates whose variance keeps growing with the sample count.
    auto aggregate = [&](std::uint64_t upToBlock) {
        Kahan re, im, abs2;
        std::uint64_t hits = 0;
        for (std::uint64_t b = 0; b < upToBlock; ++b) {
            re.add(blocks[b].re.s);
            im.add(blocks[b].im.s);
            abs2.add(blocks[b].abs2.s);
            hits += blocks[b].hits;
        }
        const std::uint64_t n = std::min(nSamples, upToBlock * kBlock);
        struct Agg {
            std::complex<double> mean;
            double var;
            std::uint64_t hits, n;
        };
        Agg a;
        a.n = n;
        a.hits = hits;
        a.mean = n ? std::complex<double>(re.s / (double)n, im.s / (double)n)
                   : std::complex<double>(0.0, 0.0);
        a.var = n ? std::max(0.0, abs2.s / (double)n - std::norm(a.mean)) : 0.0;
        return a;
    };

    const auto quarter = aggregate(std::max<std::uint64_t>(1, nBlocks / 4));
    const auto full = aggregate(nBlocks);
    double maxAbs2 = 0.0, sumAbs2 = 0.0;
    for (const auto& zb : blocks) {
        maxAbs2 = std::max(maxAbs2, zb.maxAbs2);
        sumAbs2 += zb.abs2.s;
    }

    ZetaEstimate est;
    est.value = win.measure * full.mean;
    est.standardError = win.measure * std::sqrt(full.var / (double)full.n);
    est.samplesUsed = nSamples;
    if (full.hits == 0) {
        est.warning = "no samples landed in the integration region";
    } else if (quarter.n < full.n && quarter.var > 0.0 && full.var > 2.0 * quarter.var) {
        // The sample variance keeps growing with the sample count: the
        // defining integral has a non-integrable singularity at the set.
        est.divergenceSuspected = true;
    } else if (full.hits > 1000 && maxAbs2 > 0.3 * sumAbs2) {
        // One sample carries most of the second moment: heavy-tailed
        // integrand, the error bar cannot be trusted.
        est.divergenceSuspected = true;
    } else if (quarter.var == 0.0 && full.var > 0.0 && full.hits > 16) {
        est.divergenceSuspected = true;
    }
    return est;
}

} // namespace

ZetaEstimate mc_distance_zeta(const MMSpace& space, const PointSet& setA, double delta,
                              std::complex<double> s, std::uint64_t nSamples, std::uint64_t seed,
                              ExecPolicy policy) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    const SampleWindow win = window_for(space, setA, delta);
    return mc_zeta_kernel(
        win, setA, [delta](const Point&, double d) { return d <= delta; }, s, space.Q, nSamples,
        seed, policy);
}

ZetaEstimate relative_zeta(const MMSpace& space, const PointSet& setA, const Region& region,
                           std::complex<double> s, std::uint64_t nSamples, std::uint64_t seed,
                           ExecPolicy policy) {
    if (!region.contains) throw std::invalid_argument("region has no membership predicate");
    SampleWindow win = region.window;
    if (!win.sample) {
        win.sample = space.sample;
        win.measure = space.totalMeasure;
    }
    return mc_zeta_kernel(win, setA, region.contains, s, space.Q, nSamples, seed, policy);
}

} // namespace fraczeta
