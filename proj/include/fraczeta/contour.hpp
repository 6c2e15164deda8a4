#pragma once

#include "fraczeta/zeta.hpp"

#include <complex>
#include <string>
#include <vector>

namespace fraczeta {

/// Thrown when a contour cannot be placed far enough from poles to give a
/// numerically trustworthy integral.
struct ContourInstabilityError : std::domain_error {
    explicit ContourInstabilityError(const std::string& msg) : std::domain_error(msg) {}
};

/// Winding number (1/2*pi*i) * Int Z'/Z over the rectangle boundary with
/// corners (reLo, imLo) and (reHi, imHi), counterclockwise: the number of
/// zeros minus poles enclosed (counted with multiplicity).  Integrated edge
/// by edge with adaptive Simpson using the closed-form derivative.  Throws
/// ContourInstabilityError if the result is further than 0.05 from an
/// integer after retries, and std::domain_error when a pole lies on (or
/// within minClearance of) the boundary.
double winding_number(const MeromorphicZeta& z, double reLo, double reHi, double imLo,
                      double imHi, double minClearance = 1e-6);

/// Residue by a small circle: (1/2*pi*i) * Int Z(s) ds around center with the
/// given radius, by the trapezoid rule with doubling until the value settles
/// to 1e-10 (exponentially convergent for analytic integrands).  The circle
/// must stay clear of all other poles.
ComplexD circle_residue(const MeromorphicZeta& z, ComplexD center, double radius);

/// One numerically confirmed pole.
struct ConfirmedPole {
    ComplexD location;
    ComplexD symbolicResidue;
    ComplexD numericResidue;
    double residueError = 0.0;  ///< |numeric - symbolic|
    int enclosedCount = 1;      ///< poles counted by the winding rectangle
};

/// Independently confirms the symbolic pole set against the closed-form
/// evaluator: every isolated pole and the lattice members with |n| <=
/// familyMembers get (a) a winding-number count of -1 on a small rectangle
/// and (b) a circle-integral residue compared against the symbolic one.
/// Throws ContourInstabilityError when no admissible rectangle exists.
std::vector<ConfirmedPole> confirm_poles_numeric(const MeromorphicZeta& z,
                                                 int familyMembers = 3,
                                                 double tol = 1e-8);

} // namespace fraczeta
