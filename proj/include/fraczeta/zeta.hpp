#pragma once

#include "fraczeta/rational.hpp"
#include "fraczeta/tubefn.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraczeta {

using ComplexD = std::complex<double>;

/// Thrown when a residue is requested at a point that is not a pole.
struct NotAPoleError : std::domain_error {
    explicit NotAPoleError(const std::string& msg) : std::domain_error(msg) {}
};

/// Thrown when a pole of order >= 2 is encountered where only simple poles
/// are supported.  In the piecewise power algebra coincident poles merge by
/// adding residues and never raise the order, so this fires only on data
/// constructed outside that algebra.
struct UnsupportedPoleOrderError : std::domain_error {
    explicit UnsupportedPoleOrderError(const std::string& msg) : std::domain_error(msg) {}
};

/// Thrown when evaluating the continued function too close to a pole.
struct EvalNearPoleError : std::domain_error {
    explicit EvalNearPoleError(const std::string& msg) : std::domain_error(msg) {}
};

/// Continuation of one terminal power term: c * deltaEff^w / w with
/// w = s - sigma.  Simple pole at s = sigma with residue c.
struct SimpleZetaTerm {
    double c = 0.0;
    Rational sigma;
    double deltaEff = 1.0;
};

/// Continuation of one ladder term, geometrically resummed:
///   c * g(w) * q^k0 / (1 - q),  q = m * base^-w,  g(w) = (hi^w - lo^w)/w,
/// with w = s - sigma.  Poles where q = 1: the vertical lattice
/// s = sigma + log_base(m) + i * 2*pi*n / log(base).
///
/// logBm certifies log_base(m) as an exact rational so the lattice's real
/// part is exact.  cycJ > 0 marks the stable rewrite used when m = 1 and
/// base = (hi/lo)^cycJ, which removes the spurious 0/0 the raw form has at
/// members whose index is a multiple of cycJ.
struct LatticeZetaTerm {
    double c = 0.0;
    Rational sigma;
    double rhoHi = 1.0;
    double rhoLo = 0.5;
    double base = 2.0;
    double m = 1.0;
    int k0 = 0;
    Rational logBm;   ///< exact log_base(m)
    int cycJ = 0;     ///< 0 = raw form; j >= 1 = cyclotomic-stable form
};

/// Continuation of one explicit band's term: c * (hi^w - lo^w)/w, entire.
struct EntireBandTerm {
    double c = 0.0;
    Rational sigma;
    double lo = 0.0;
    double hi = 1.0;
};

/// A meromorphic function in closed form: either a tube zeta (the Mellin-type
/// transform of a tube volume profile) or the associated distance zeta
///   Z_d(s) = delta^{s-Q} * |A_delta| + (Q - s) * Z_t(s).
struct MeromorphicZeta {
    enum class Kind { Tube, Distance };
    Kind kind = Kind::Tube;
    Rational QRat;
    double Q = 0.0;
    double delta = 1.0;
    double measureAtDelta = 0.0;  ///< |A_delta| (used by the Distance kind)
    std::vector<SimpleZetaTerm> simple;
    std::vector<LatticeZetaTerm> lattice;
    std::vector<EntireBandTerm> entire;
};

/// One pole: location re + i*im (re exact), lattice index n (0 for isolated
/// poles), order (always 1 in this algebra) and residue.
struct Pole {
    Rational re;
    double im = 0.0;
    int n = 0;
    int order = 1;
    ComplexD residue;
};

/// A vertical lattice of poles s = realPart + i * spacing * n, n in Z, with
/// residues computable per member without enumerating the family.
class LatticeFamily {
public:
    Rational realPart;
    double spacing = 0.0;

    /// Residue at member n; exactly 0 when that member is not actually a pole
    /// (its per-term contributions vanish or cancel).
    ComplexD memberResidue(int n) const;

    /// The member as a Pole.  Throws NotAPoleError when memberResidue(n) = 0.
    Pole member(int n) const;

    /// True when memberResidue(n) != 0.
    bool isPole(int n) const;

    // Implementation data: contributions of individual lattice terms whose
    // pole lattice lands on this family, plus any simple-pole mass folded
    // into the n = 0 member, and the scaling applied for the distance kind.
    struct TermRef {
        double c;
        double hi, lo;
        double base;
        Rational wStarRe;  ///< exact real part of w* for this term (log_base m)
        double sigma;      ///< term's own sigma as double (w = s - sigma)
    };
    std::vector<TermRef> terms;
    ComplexD foldedSimple = 0.0;   ///< merged isolated residues at n = 0
    bool distanceScaled = false;   ///< scale residues by (Q - s*) per member
    double QForScale = 0.0;
    bool dropN0 = false;           ///< n = 0 member removed (distance kind at s = Q)
};

/// The full pole structure of a MeromorphicZeta: finitely many isolated
/// poles, finitely many vertical lattices (never enumerated except through
/// an explicit window), plus the locations where individual terms have
/// removable singularities and the total is analytic, and locations where
/// residues of distinct terms cancelled exactly.
struct PoleSet {
    std::vector<Pole> isolated;             ///< sorted by increasing re
    std::vector<LatticeFamily> families;    ///< sorted by increasing realPart
    std::vector<Rational> removable;        ///< analytic points of individual-term 0/0 form
    std::vector<Rational> cancelled;        ///< would-be poles with exactly cancelling residues

    /// All poles with |Im s| <= imMax, families enumerated, sorted by
    /// decreasing re then increasing im.
    std::vector<Pole> enumerate(double imMax) const;
};

/// Meromorphically continues the tube volume profile's zeta transform
///   Z_t(s) = Int_0^delta t^{s-Q-1} |A_t| dt
/// to the whole plane, in closed form.  Every ladder growth factor must
/// satisfy m = base^{p/q} exactly (q <= 24); otherwise the pole lattice has
/// no exact rational real part and the function throws std::domain_error.
MeromorphicZeta continue_tube_zeta(const TubeFunction& tf, const Rational& Q);

/// The distance zeta associated with a tube zeta:
///   Z_d(s) = delta^{s-Q} |A_delta| + (Q - s) Z_t(s).
/// measureAtDelta is passed explicitly so a zero tube profile still yields a
/// valid (entire) distance zeta.
MeromorphicZeta to_distance_zeta(const MeromorphicZeta& tubeZeta, double measureAtDelta);

/// Computes the pole structure (exact locations, simple-pole residues,
/// removable and cancelled locations).
PoleSet poles(const MeromorphicZeta& z);

/// Evaluates the continuation at s.  Throws EvalNearPoleError when s lies
/// within proximityTol of a pole.
ComplexD eval_zeta(const MeromorphicZeta& z, ComplexD s, double proximityTol = 1e-12);

/// Derivative of the continuation at s (same proximity guard).
ComplexD eval_zeta_deriv(const MeromorphicZeta& z, ComplexD s, double proximityTol = 1e-12);

/// Overloads taking a precomputed pole set, for callers evaluating in a tight
/// loop (a proximityTol of 0 disables the guard entirely).
ComplexD eval_zeta(const MeromorphicZeta& z, ComplexD s, double proximityTol, const PoleSet& ps);
ComplexD eval_zeta_deriv(const MeromorphicZeta& z, ComplexD s, double proximityTol,
                         const PoleSet& ps);

/// Residue at s0, which must match a pole location to within matchTol.
/// Throws NotAPoleError otherwise (with a diagnostic naming the nearest
/// removable/cancelled location when applicable) and UnsupportedPoleOrderError
/// for poles of order >= 2.
ComplexD residue(const MeromorphicZeta& z, ComplexD s0, double matchTol = 1e-9);

/// The complex-dimension headline: D = max Re over all poles, whether the
/// critical line carries a lattice (oscillatory geometry) and its spacing,
/// and the residue at the real pole D when it is one.
struct PrincipalDimensions {
    Rational D;
    bool hasFamily = false;
    double spacing = 0.0;
    bool realPoleAtD = false;
    ComplexD residueAtD = 0.0;
};
PrincipalDimensions principal_dimensions(const PoleSet& ps);

} // namespace fraczeta
