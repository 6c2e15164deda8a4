#include "fraczeta/catalog.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace fraczeta {

namespace {

constexpr double kPi = 3.14159265358979323846;

using C = std::complex<double>;

/// theta_n = pi*n/log 2, the imaginary spacing unit shared by every base-4
/// lattice in the catalog (4^{-i theta} = 1 there).
double theta(int n) { return kPi * (double)n / std::log(2.0); }

std::vector<CatalogEntry> buildCatalog() {
    const double V1 = heisenberg_unit_ball_volume();
    const double log4 = std::log(4.0);
    std::vector<CatalogEntry> out;

    // ---- Point in the first Heisenberg group -------------------------------
    {
        CatalogEntry e;
        e.name = "heisenberg-point";
        e.space = "first Heisenberg group with gauge metric (Q = 4)";
        e.set = "a single point";
        e.Q = Rational(4);
        e.tube.delta = 1.0;
        e.tube.terminal = {{V1, Rational(4), 1.0}};
        e.notes = "Tube volume is the gauge-ball volume V1*t^4 (V1 computed by "
                  "quadrature of the horizontal slice area).  Single simple pole "
                  "at s = 0 with residue V1.";
        e.expectedIsolated = {{Rational(0), V1}};
        out.push_back(std::move(e));
    }

    // ---- Horizontal unit segment in the Heisenberg group -------------------
    {
        CatalogEntry e;
        e.name = "heisenberg-segment";
        e.space = "first Heisenberg group with gauge metric (Q = 4)";
        e.set = "horizontal unit segment {(x,0,0) : 0 <= x <= 1}";
        e.Q = Rational(4);
        e.tube.delta = 1.0;
        e.tube.terminal = {{kPi, Rational(2), 1.0}, {V1, Rational(4), 1.0}};
        e.notes = "Tube volume pi*t^2 + V1*t^4: a cylinder of gauge cross-section "
                  "area pi*t^2 along the segment plus two half-balls at the ends.  "
                  "Simple poles at s = 2 (residue pi) and s = 0 (residue V1); the "
                  "pole at 2 gives Minkowski dimension 2 for a curve of length 1.";
        e.expectedIsolated = {{Rational(0), V1}, {Rational(2), kPi}};
        out.push_back(std::move(e));
    }

    // ---- Point in the Laakso-type space ------------------------------------
    {
        CatalogEntry e;
        e.name = "laakso-point";
        e.space = "Laakso-type space of dimension 3/2 (quarter-Cantor fibers over [0,1])";
        e.set = "a single point (base coordinate 0, fiber coordinate 0)";
        e.Q = Rational(3, 2);
        e.tube.delta = 0.25;
        {
            ScaleBandFamily U;  // upper half-bands (4^-k/2, 4^-k]
            U.base = 4.0; U.rhoHi = 1.0; U.rhoLo = 0.5; U.k0 = 1;
            U.terms = {{4.0, Rational(1), 0.5}};
            ScaleBandFamily L;  // lower half-bands (4^-k-1, 4^-k/2]
            L.base = 4.0; L.rhoHi = 0.5; L.rhoLo = 0.25; L.k0 = 1;
            L.terms = {{6.0, Rational(1), 0.5}, {-1.0, Rational(0), 0.125}};
            e.tube.ladders = {U, L};
        }
        e.notes = "Ball volume around a point, exact per scale band: on the upper "
                  "half of each scale the ball grows linearly through one Cantor "
                  "level, on the lower half it picks up the next level.  All poles "
                  "lie on the single vertical lattice s = i*pi*n/log 2.";
        e.expectedFamilies.push_back(
            {Rational(0), kPi / std::log(2.0), [log4](int n) -> C {
                 const double eps = (n % 2 == 0) ? 1.0 : -1.0;
                 const C w1(-0.5, theta(n)), w3(-1.5, theta(n));
                 return (8.0 - 2.0 * std::sqrt(2.0) * eps) / (w1 * w3 * log4);
             }});
        out.push_back(std::move(e));
    }

    // ---- Cantor fiber in the Laakso-type space -----------------------------
    {
        CatalogEntry e;
        e.name = "laakso-cantor-fiber";
        e.space = "Laakso-type space of dimension 3/2 (quarter-Cantor fibers over [0,1])";
        e.set = "one whole vertical fiber (a quarter-Cantor set of heights, base coordinate 0)";
        e.Q = Rational(3, 2);
        e.tube.delta = 0.25;
        {
            ScaleBandFamily U;  // upper half-bands
            U.base = 4.0; U.rhoHi = 1.0; U.rhoLo = 0.5; U.k0 = 1;
            U.terms = {{4.0, Rational(1), 1.0}, {-4.0, Rational(1), 0.5}, {2.0, Rational(0), 0.25}};
            ScaleBandFamily L;  // lower half-bands
            L.base = 4.0; L.rhoHi = 0.5; L.rhoLo = 0.25; L.k0 = 1;
            L.terms = {{6.0, Rational(1), 1.0}, {-6.0, Rational(1), 0.5},
                       {1.0, Rational(0), 0.25}, {1.0, Rational(0), 0.125}};
            ScaleBandFamily R;  // full bands, entering two scales down
            R.base = 4.0; R.rhoHi = 1.0; R.rhoLo = 0.25; R.k0 = 2;
            R.terms = {{16.0 / 3.0, Rational(1), 1.0}, {-4.0 / 3.0, Rational(0), 0.25}};
            ScaleBandFamily M;  // full bands: sqrt-growth of the cross-scale piece
            M.base = 4.0; M.rhoHi = 1.0; M.rhoLo = 0.25; M.k0 = 1;
            M.terms = {{3.0, Rational(1, 2), 0.5}, {-1.0, Rational(0), 0.25}, {-2.0, Rational(1), 1.0}};
            e.tube.ladders = {U, L, R, M};
        }
        e.notes = "Tube volume of a full Cantor fiber, exact per scale band.  Two "
                  "vertical lattices of simple poles: Re s = 1/2 (the fiber's own "
                  "dimension, measured additively along the base direction) and "
                  "Re s = 0, both with spacing pi/log 2.";
        e.expectedFamilies.push_back(
            {Rational(1, 2), kPi / std::log(2.0), [log4](int n) -> C {
                 if (n == 0) return C(25.0 / 3.0 + 3.0 / log4, 0.0);
                 const double eps = (n % 2 == 0) ? 1.0 : -1.0;
                 const double th = theta(n);
                 const C iT(0.0, th);
                 return (-2.0 * (1.0 - eps) / iT - 3.0 / C(-0.5, th) +
                         (5.0 - 2.0 * eps) / C(-1.0, th)) / log4;
             }});
        e.expectedFamilies.push_back(
            {Rational(0), kPi / std::log(2.0), [log4](int n) -> C {
                 const double eps = (n % 2 == 0) ? 1.0 : -1.0;
                 const C w1(-0.5, theta(n)), w3(-1.5, theta(n));
                 return -(8.0 - 2.0 * std::sqrt(2.0) * eps) / (w1 * w3 * log4);
             }});
        out.push_back(std::move(e));
    }

    // ---- Geodesic segment in the Laakso-type diamond graph -----------------
    {
        CatalogEntry e;
        e.name = "laakso-graph-geodesic";
        e.space = "diamond-substitution metric graph with uniform measure (Q = 2)";
        e.set = "sub-segment [1/4, 1/2] of an all-upper geodesic between the end vertices";
        e.Q = Rational(2);
        e.tube.delta = 0.25;
        e.tube.terminal = {{1.5, Rational(2), 1.0}, {1.0, Rational(1), 1.0}};
        {
            ScaleBandFamily G;
            G.base = 4.0; G.rhoHi = 1.0; G.rhoLo = 0.25; G.k0 = 1;
            G.terms = {{0.25, Rational(2), 2.0}, {0.125, Rational(1), 0.5}};
            e.tube.ladders = {G};
        }
        e.notes = "Band-k tube volume (3/2 + 2^{k-2}) t^2 + (1 + 2^{-k-3}) t: the "
                  "quadratic part doubles per scale as new parallel branches enter "
                  "the tube, the linear part halves.  Isolated simple poles at "
                  "s = 0 and s = 1 plus a vertical lattice on Re s = 1/2.";
        e.expectedIsolated = {{Rational(0), 1.5}, {Rational(1), 1.0}};
        e.expectedFamilies.push_back(
            {Rational(1, 2), kPi / std::log(2.0), [log4](int n) -> C {
                 const double th = theta(n);
                 return C(1.0 / (8.0 * log4 * (th * th + 0.25)), 0.0);
             }});
        out.push_back(std::move(e));
    }

    // ---- Sub-interval of the patchwork interval ----------------------------
    {
        CatalogEntry e;
        e.name = "patchwork-interval";
        e.space = "patchwork interval: snowflaked (exponent 1/2) on [0,1/4], euclidean on [1/4,1] (Q = 2)";
        e.set = "sub-interval [1/8, 1/2] straddling the regularity change";
        e.Q = Rational(2);
        e.tube.delta = 0.25;
        e.tube.terminal = {{2.0, Rational(2), 1.0}, {0.25, Rational(1), 1.0}, {0.25, Rational(0), 1.0}};
        e.notes = "Tube volume 2t^2 + t/4 + 1/4: the constant is the measure of the "
                  "set itself, the linear growth comes from the euclidean side, the "
                  "quadratic growth from the snowflaked side where a metric ball of "
                  "radius t has length t^2.  Simple poles at s = 2, 1, 0.";
        e.expectedIsolated = {{Rational(0), 2.0}, {Rational(1), 0.25}, {Rational(2), 0.25}};
        out.push_back(std::move(e));
    }

    // ---- Patchwork square, sup base metric ---------------------------------
    {
        CatalogEntry e;
        e.name = "patchwork-square-linf";
        e.space = "patchwork square over the sup metric: quadrant exponents 1/3, 1/2, 1/2, 1 (Q = 6)";
        e.set = "quadrant boundary cross {x = 1/2} union {y = 1/2}";
        e.Q = Rational(6);
        e.tube.delta = 0.25;
        e.tube.terminal = {{0.25, Rational(0), 1.0}, {1.0, Rational(4), 1.0},
                           {2.0, Rational(5), 1.0}, {-1.0, Rational(6), 1.0}};
        e.notes = "Tube volume 1/4 + t^4 + 2t^5 - t^6 under the sup base metric: "
                  "the cross itself has measure 1/4 (its euclidean-quadrant part), "
                  "and each quadrant adds a strip of width t^{1/p} with its own "
                  "volume exponent.  Simple poles at s = 6, 2, 1, 0.";
        e.expectedIsolated = {{Rational(0), -1.0}, {Rational(1), 2.0},
                              {Rational(2), 1.0}, {Rational(6), 0.25}};
        out.push_back(std::move(e));
    }

    // ---- Patchwork square, taxicab base metric -----------------------------
    {
        CatalogEntry e;
        e.name = "patchwork-square-l1";
        e.space = "patchwork square over the taxicab metric: quadrant exponents 1/3, 1/2, 1/2, 1 (Q = 6)";
        e.set = "quadrant boundary cross {x = 1/2} union {y = 1/2}";
        e.Q = Rational(6);
        e.tube.delta = 0.25;
        e.tube.terminal = {{0.25, Rational(0), 1.0}, {1.0, Rational(4), 1.0},
                           {1.0, Rational(5), 1.0}, {-1.0, Rational(6), 1.0},
                           {3.0, Rational(7), 1.0}, {-1.0, Rational(8), 1.0}};
        e.notes = "Tube volume 1/4 + t^4 + t^5 - t^6 + 3t^7 - t^8 under the taxicab "
                  "base metric; diagonal corner regions contribute the higher-order "
                  "terms, pushing two poles to negative real parts.  Simple poles "
                  "at s = 6, 2, 1, 0, -1, -2.";
        e.expectedIsolated = {{Rational(-2), -1.0}, {Rational(-1), 3.0}, {Rational(0), -1.0},
                              {Rational(1), 1.0}, {Rational(2), 1.0}, {Rational(6), 0.25}};
        out.push_back(std::move(e));
    }

    return out;
}

} // namespace

double heisenberg_unit_ball_volume() {
    // |B(0,1)| for the gauge ((x^2+y^2)^2 + t^2)^{1/4}: horizontal slices are
    // discs of area pi*sqrt(1-t^2), so V1 = Int_{-1}^{1} pi*sqrt(1-t^2) dt.
    // Substituting t = sin u gives the smooth integrand pi*cos^2 u on
    // [-pi/2, pi/2], integrated here by composite Simpson.
    static const double v = [] {
        const int n = 1 << 14;  // even
        const double a = -kPi / 2.0, b = kPi / 2.0, h = (b - a) / n;
        auto f = [](double u) { const double c = std::cos(u); return kPi * c * c; };
        double s = f(a) + f(b);
        for (int i = 1; i < n; ++i) s += f(a + h * i) * ((i % 2) ? 4.0 : 2.0);
        return s * h / 3.0;
    }();
    return v;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = buildCatalog();
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    std::string known;
    for (const auto& e : catalog()) {
        if (!known.empty()) known += ", ";
        known += e.name;
    }
    throw std::out_of_range("unknown catalog entry '" + name + "'; known entries: " + known);
}

} // namespace fraczeta
