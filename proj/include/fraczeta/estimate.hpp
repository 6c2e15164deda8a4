#pragma once

#include "fraczeta/spaces.hpp"
#include "fraczeta/tubefn.hpp"

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fraczeta {

/// Execution policy for the Monte Carlo kernels.  Both paths produce
/// bit-identical results: work is split into fixed-size sample blocks whose
/// partial results are reduced in block order, and the sample streams are
/// counter-based, so thread count and scheduling never touch the numbers.
/// The serial path is the reference implementation; the parallel path runs
/// the block loop under OpenMP when available.
enum class ExecPolicy { serial, parallel };

// --------------------------------------------------------------------------
// Empirical tube volumes
// --------------------------------------------------------------------------

/// Monte Carlo (or exactly sampled) tube volume data: |A_t| against t.
struct EmpiricalTubeData {
    std::vector<double> t;       ///< strictly increasing, positive
    std::vector<double> volume;  ///< nondecreasing (within noise)
    std::vector<double> sigma;   ///< one standard error per point (0 = exact)
    double Q = 1.0;              ///< ambient volume-scaling exponent
    double delta = 1.0;          ///< largest tube radius covered
    std::uint64_t sampleCount = 0;  ///< 0 = exact evaluation
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless t is strictly increasing and
    /// positive, sizes match, delta >= t.back(), and volumes are
    /// nondecreasing within 3 standard errors.
    void validate() const;
};

/// Estimates |A_t| for every t in tGrid with one shared sample pass: samples
/// are drawn from the set's tight window when it has one (the space's window
/// otherwise), each sample's distance to the set is computed once, and every
/// grid entry counts the samples within its radius.  Standard errors are
/// binomial.  Throws std::invalid_argument for an empty/unsorted/nonpositive
/// grid or zero samples.
EmpiricalTubeData mc_tube_volume(const MMSpace& space, const PointSet& setA,
                                 const std::vector<double>& tGrid, std::uint64_t nSamples,
                                 std::uint64_t seed, ExecPolicy policy = ExecPolicy::parallel);

/// Evaluates an exact tube profile on a grid (sigma = 0, sampleCount = 0).
/// Grid entries must lie in (0, tf.delta].
EmpiricalTubeData sample_tube_function(const TubeFunction& tf, double Q,
                                       const std::vector<double>& tGrid);

/// Log-spaced grid from tMin to tMax inclusive with `perDecade` points per
/// decade (at least 2 points total).
std::vector<double> log_spaced_grid(double tMin, double tMax, int perDecade = 64);

/// CSV round-trip: header line "t,volume,stderr", one row per point, full
/// precision; Q/delta/samples/seed ride along as "# key value" comment lines.
void write_tube_csv(std::ostream& os, const EmpiricalTubeData& data);
EmpiricalTubeData read_tube_csv(std::istream& is);

// --------------------------------------------------------------------------
// Minkowski dimension / content estimation
// --------------------------------------------------------------------------

struct MinkowskiEstimate {
    double dimLower = 0.0;      ///< inf of windowed slope estimates of D
    double dimUpper = 0.0;      ///< sup of windowed slope estimates of D
    double contentLower = 0.0;  ///< inf of v / t^{Q-D} over the fit window
    double contentUpper = 0.0;  ///< sup of v / t^{Q-D} over the fit window
    double fitTMin = 0.0;       ///< fit window actually used
    double fitTMax = 0.0;
    double rSquared = 0.0;      ///< of the global log-log fit
};

/// Fits log |A_t| ~ (Q - D) log t.  The global least-squares slope gives the
/// central D (used for the contents); sliding decade-wide windows give the
/// dimLower/dimUpper spread.  Requires at least 10 usable (positive-volume)
/// points spanning at least two decades; throws std::invalid_argument
/// otherwise, suggesting a wider grid or more samples.
MinkowskiEstimate estimate_minkowski(const EmpiricalTubeData& data);

void to_json(nlohmann::json& j, const MinkowskiEstimate& m);

// --------------------------------------------------------------------------
// Log-periodic oscillation detection
// --------------------------------------------------------------------------

struct OscillationReport {
    double period = 0.0;       ///< in u = -log t; > 0
    double amplitude = 0.0;    ///< of the dominant oscillation in log |A_t|
    double imagSpacing = 0.0;  ///< 2*pi / period: implied pole spacing
    double confidence = 0.0;   ///< 0..1; >= 0.6 means a clear spectral peak
};

/// Looks for log-periodic oscillation in the residual u -> log(v / t^{Q-D})
/// at u = -log t: resamples the residual onto a uniform u-grid, detrends,
/// and scans the DFT magnitude spectrum over frequencies completing at least
/// three cycles.  A peak above 3x the median spectral magnitude counts as
/// confident; with no clear peak the amplitude is ~0 and confidence low.
/// Requires at least 16 usable points; throws std::invalid_argument
/// otherwise.
OscillationReport detect_log_periodicity(const EmpiricalTubeData& data, double D);

void to_json(nlohmann::json& j, const OscillationReport& r);

// --------------------------------------------------------------------------
// Zeta-function quadrature and Monte Carlo estimates
// --------------------------------------------------------------------------

struct QuadratureResult {
    std::complex<double> value{0.0, 0.0};  ///< integral over [tMin, delta]
    double truncationBound = 0.0;  ///< bound on the omitted integral over (0, tMin)
    std::string warning;           ///< nonempty when Re s is at or below the fitted D
};

/// Integral of t^{s-Q-1} |A_t| over [tMin, data.delta] by Simpson quadrature
/// in log t on the piecewise-linear interpolant of the data.  The truncation
/// bound comes from the fitted envelope |A_t| <= C t^{Q-d}: the omitted tail
/// contributes at most C tMin^{Re s - d} / (Re s - d).  For Re s at or below
/// the fitted dimension the tail diverges: the bound is infinite and a
/// warning is set.  Requires 0 < tMin within the sampled range.
QuadratureResult tube_zeta_quadrature(const EmpiricalTubeData& data, std::complex<double> s,
                                      double tMin);

/// Same integral against an exact tube profile: the integrand is evaluated
/// directly and integrated segment by segment between band boundaries, so
/// only smooth pieces meet the Simpson rule.
QuadratureResult tube_zeta_quadrature(const TubeFunction& tf, double Q, std::complex<double> s,
                                      double tMin);

struct ZetaEstimate {
    std::complex<double> value{0.0, 0.0};
    double standardError = 0.0;      ///< of |value|, from the sample variance
    bool divergenceSuspected = false;  ///< sample variance keeps growing with n
    std::uint64_t samplesUsed = 0;
    std::string warning;             ///< e.g. empty region
};

/// Monte Carlo estimate of the distance zeta integral over the tube A_delta:
/// window measure times the mean of 1{d <= delta} d^{s-Q} over window
/// samples.  Samples falling exactly on the set (d = 0) are skipped when the
/// integrand is singular there.  The divergence heuristic compares the
/// per-sample variance over the first quarter of the stream against the full
/// stream: growth beyond 2x flags the integral as divergence-suspected.
ZetaEstimate mc_distance_zeta(const MMSpace& space, const PointSet& setA, double delta,
                              std::complex<double> s, std::uint64_t nSamples, std::uint64_t seed,
                              ExecPolicy policy = ExecPolicy::parallel);

/// Integration region for relative zeta functions: a membership predicate
/// over (point, distance-to-set) plus the window to sample it from.
struct Region {
    std::string name;
    std::function<bool(const Point&, double dToSet)> contains;
    SampleWindow window;
};

/// Monte Carlo estimate of the relative zeta integral over a region: window
/// measure times the mean of 1{x in region} d^{s-Q}.  An empty region (no
/// hits) yields value 0 with a warning.
ZetaEstimate relative_zeta(const MMSpace& space, const PointSet& setA, const Region& region,
                           std::complex<double> s, std::uint64_t nSamples, std::uint64_t seed,
                           ExecPolicy policy = ExecPolicy::parallel);

} // namespace fraczeta
