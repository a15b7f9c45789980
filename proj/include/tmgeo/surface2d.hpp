#pragma once

#include "tmgeo/tangent_bundle.hpp"

namespace tmgeo {

struct SurfaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical frame on the tangent bundle of a surface at (x, v), v != 0:
// xi the canonical vertical field, eta the unit vertical orthogonal to it
// (rotation by the oriented volume form), and their horizontal partners.
// k is the sectional-type curvature function, f1 and f2 the torsion
// components T(v, eta) = f1 v + f2 eta (f1 scale-invariant in the fiber,
// f2 homogeneous of degree one).
struct SurfaceFrame {
    double c = 0;  // |v|
    double k = 0, f1 = 0, f2 = 0;
    Vec xi, eta, xih, etah; // chart components (4-vectors)
};

SurfaceFrame surface_frame(const Scenario& s, const TMPoint& p);

// Largest residual over the sixteen closed-form covariant derivatives of the
// frame fields.  Frame-field derivatives are central differences of the exact
// frame formulas; the connection itself is exact.
double surface_table_residual(const Scenario& s, const TMPoint& p);

// [xi_h, eta_h] against -c^2 k eta - f1 xi_h - f2 eta_h.
double surface_bracket_residual(const Scenario& s, const TMPoint& p);

// Scale behavior of the frame invariants between v and 2v.
double surface_scale_residual(const Scenario& s, const TMPoint& p);

struct EinsteinResult {
    Mat ricci;
    double defect;      // max |Ric - (tr Ric / 4) G|
    double scalar_eq;   // c^2 eta_h(f1) - xi_h(f2) - c^2 f1^2 - f2^2
};
// Ricci of the bundle metric via one Richardson finite-difference layer on
// the exactly assembled connection coefficients.  The scalar equation uses
// base-direction derivatives of f1, f2 at frozen fiber argument.
EinsteinResult einstein_defect(const Scenario& s, const TMPoint& p);

} // namespace tmgeo
