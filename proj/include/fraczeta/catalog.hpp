#pragma once

#include "fraczeta/rational.hpp"
#include "fraczeta/tubefn.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace fraczeta {

/// Reference data attached to a catalog entry: an isolated simple pole of the
/// tube zeta function with its residue.
struct ExpectedIsolatedPole {
    Rational re;
    double residue;
};

/// Reference data for a vertical lattice of poles re + i*spacing*n, n in Z,
/// with a closed-form residue per member.
struct ExpectedFamily {
    Rational re;
    double spacing;
    std::function<std::complex<double>(int)> memberResidue;
};

/// A worked example: an exact tube volume profile for a named subset of a
/// named ambient space, together with its dimension parameter Q and the
/// expected pole data of its tube zeta function.
struct CatalogEntry {
    std::string name;
    std::string space;        ///< human-readable ambient space description
    std::string set;          ///< human-readable subset description
    Rational Q;               ///< ambient volume-scaling exponent
    TubeFunction tube;
    std::string notes;        ///< derivation/encoding remarks
    std::vector<ExpectedIsolatedPole> expectedIsolated;
    std::vector<ExpectedFamily> expectedFamilies;
};

/// All built-in worked examples, in a fixed order.
const std::vector<CatalogEntry>& catalog();

/// Looks up an entry by name; throws std::out_of_range listing the valid
/// names when the name is unknown.
const CatalogEntry& catalog_entry(const std::string& name);

/// The exact volume of the unit gauge ball in the first Heisenberg group
/// (computed once by quadrature of the horizontal slice area).
double heisenberg_unit_ball_volume();

} // namespace fraczeta
