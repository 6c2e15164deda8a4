#pragma once

#include "fraczeta/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace fraczeta {

/// One power-law term c * m^k * t^alpha.  On a scale-band family the factor
/// m^k couples the coefficient to the band index k; for terminal terms the
/// growth factor is ignored (treated as 1).
struct PowerTerm {
    double c = 0.0;       ///< coefficient
    Rational alpha;       ///< exact exponent of t
    double m = 1.0;       ///< per-band growth factor (lattice terms only)
};

/// A geometric ladder of bands [rhoLo*b^-k, rhoHi*b^-k], k = k0, k0+1, ...,
/// carrying the same power terms on every band with coefficients scaled by
/// m^k.  Requires b > 1 and 0 < rhoLo < rhoHi <= b*rhoLo so the bands of one
/// family are pairwise disjoint.  Band membership is half-open: t belongs to
/// band k when rhoLo*b^-k < t <= rhoHi*b^-k.
struct ScaleBandFamily {
    double base = 2.0;
    double rhoHi = 1.0;
    double rhoLo = 0.5;
    int k0 = 0;
    std::vector<PowerTerm> terms;

    double bandLo(int k) const { return rhoLo * std::pow(base, -(double)k); }
    double bandHi(int k) const { return rhoHi * std::pow(base, -(double)k); }

    /// Index of the band containing t (half-open (lo, hi]), or -1 if t lies
    /// outside every band of this family (in a gap, or above band k0).
    int bandOf(double t) const;
};

/// An explicit single band [lo, hi] with its own terms.  Used to represent
/// the finitely many partial bands produced when a tube function is rebuilt
/// with a smaller cutoff that slices through a ladder band.
struct BandPiece {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<PowerTerm> terms;  ///< growth factors ignored (coefficients are absolute)
};

/// A tube volume profile t -> |A_t| on (0, delta] in piecewise power form:
/// a sum of terminal terms valid on all of (0, delta], plus any number of
/// scale-band ladders, plus explicit single-band pieces.
struct TubeFunction {
    double delta = 1.0;
    std::vector<PowerTerm> terminal;
    std::vector<ScaleBandFamily> ladders;
    std::vector<BandPiece> pieces;
};

/// Which side of a band boundary to evaluate on.  Auto follows the half-open
/// band convention (lo, hi]; Below/Above force the limit from below/above,
/// which validate_tube uses to check continuity across boundaries.
enum class Side { Auto, Below, Above };

/// Evaluates the tube profile at t in (0, delta].  Throws std::domain_error
/// outside that range.
double evaluate_tube(const TubeFunction& tf, double t, Side side = Side::Auto);

/// Diagnostics from validate_tube.
struct TubeValidation {
    bool ok = true;
    std::vector<std::string> errors;    ///< violations (structure, continuity, monotonicity, sign)
    std::vector<std::string> warnings;  ///< informational (e.g. coverage gaps between families)
};

/// Structural and geometric sanity checks: base > 1, band shape constraints,
/// per-family band disjointness, continuity across all band boundaries down
/// to a small floor (relative tolerance tol), nonnegativity and monotone
/// nondecrease sampled on a log grid.  Gaps in band coverage are reported as
/// warnings only, since terminal terms may carry the profile there.
TubeValidation validate_tube(const TubeFunction& tf, double tol = 1e-9);

/// Rebuilds the profile with a smaller cutoff newDelta <= delta: terminal
/// terms are kept, ladders are re-anchored at the first band at or below
/// newDelta, and a sliced ladder band becomes an explicit BandPiece.  The
/// represented function is unchanged on (0, newDelta].
TubeFunction with_delta(const TubeFunction& tf, double newDelta);

/// JSON (de)serialization of the piecewise power form.  Exponents are
/// rendered exactly as "p/q" strings.
nlohmann::ordered_json tube_to_json(const TubeFunction& tf);
TubeFunction tube_from_json(const nlohmann::json& j);

} // namespace fraczeta
