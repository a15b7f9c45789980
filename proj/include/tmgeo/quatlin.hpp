#pragma once

#include "tmgeo/tensors.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace tmgeo {

struct QuatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Quaternion {
    double w = 0, x = 0, y = 0, z = 0;

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
};

Quaternion quat_mul(const Quaternion& p, const Quaternion& q);

// Three anti-commuting orthogonal complex structures on R^{4n} with K = IJ,
// together with the inner product they are compatible with.
struct QTriple {
    Mat I, J, K;
    Mat g;

    int dim() const { return static_cast<int>(I.rows()); }
};

// Right multiplication by unit quaternions on H^n = R^{4n} (coordinates
// grouped (w,x,y,z) per quaternion slot), with K completed as the product IJ
// so the triple algebra holds.
QTriple standard_triple(int n);

// omega(X,Y) = <SX, Y>.  Rejects S that is not a g-orthogonal complex
// structure (tolerance 1e-8).
Mat two_form_of(const Mat& S, const Mat& g);

// The 4-form omega_I^2 + omega_J^2 + omega_K^2 in the shuffle wedge
// convention, plus the rescaling whose value on an orthonormal frame of a
// quaternionic line is exactly 4.
struct KrainesForm {
    AltForm raw;
    AltForm normalized; // (2/3) * raw
};
KrainesForm kraines(const QTriple& t);

struct GnResult {
    bool member;
    double residual; // max distance between transported and recomputed line projectors
};
// Does A map every quaternionic line onto a quaternionic line?
// Throws QuatError unless A is a g-isometry within 1e-8.
GnResult in_Gn(const Mat& A, const QTriple& t);

// max over basis 4-tuples of |Omega(A.,A.,A.,A.) - Omega|, normalized form.
double isotropy_check(const Mat& A, const QTriple& t);

struct LineLemmaResult {
    double det;            // determinant of the 3x3 coefficient matrix
    double max_z_norm;     // largest component orthogonal to the line of Y
    double omega_value;    // normalized Kraines form on (Y, Y1, Y2, Y3)
    double identity_residual; // |omega_value - 4 det|
    bool identity_holds;   // identity_residual <= 1e-8 (exact when max_z_norm = 0)
};
// Expands each Yj over (IY, JY, KY) plus an orthogonal remainder Zj.
// Throws QuatError unless (Y, Y1, Y2, Y3) is orthonormal within 1e-8.
LineLemmaResult line_lemma_check(const Vec& Y, const Vec& Y1, const Vec& Y2, const Vec& Y3,
                                 const QTriple& t);

// Samples an isometry of R^{4n} preserving quaternionic lines: exp(a)exp(b)
// with a in the span of the triple and b commuting with all of it.
Mat sample_line_preserving(int n, std::mt19937_64& rng);

// Generic special-orthogonal sample exp(skew).
Mat sample_generic_isometry(int dim, std::mt19937_64& rng);

// Four-dimensional cross-product algebra: X1*X2 for the product determined
// by the unit element U, metric g and orientation 4-form vol = orient *
// sqrt(det g) * (coordinate determinant).  Norm-multiplicative.
Vec dim4_product(const Vec& U, const Vec& X1, const Vec& X2, const Mat& g, double orient);

struct Dim4OmegaResult {
    Mat omega;              // 2-form of left multiplication by v
    double formula_residual; // against U-flat ^ v-flat + its Hodge dual
};
Dim4OmegaResult dim4_omega(const Vec& U, const Vec& v, const Mat& g, double orient);

} // namespace tmgeo
