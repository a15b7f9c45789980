#pragma once

#include "tmgeo/scenario.hpp"
#include "tmgeo/tensors.hpp"

#include <array>

namespace tmgeo {

// Everything the tangent-bundle assembly needs at one chart point: the metric
// with two derivative orders, the realized connection with one, its torsion
// and curvature, and the complex-structure data when present.  The connection
// stored here already reflects the scenario's construction mode.
//
// Index conventions: Gam[i](a,j) = coefficient of the derivative in direction
// i of the j-th coordinate field along e_a; dGam[p][i] its x^p-derivative.
// Tlow(i,j,l) = <T(e_i,e_j), e_l>; R[i][j] is the curvature endomorphism
// R(e_i,e_j) with R[i][j](l,k) its (l,k) matrix entry.
struct BaseData {
    int m = 0;
    Vec x;
    Mat g, ginv;
    std::vector<Mat> dg, dginv;
    std::vector<std::vector<Mat>> ddg;

    std::vector<Mat> GamLC;
    std::vector<std::vector<Mat>> dGamLC;
    std::vector<Mat> Gam;
    std::vector<std::vector<Mat>> dGam;

    T3 Tup;  // (k,i,j) realized torsion components
    T3 Tlow; // (i,j,l)
    std::vector<T3> dTlow;

    std::vector<std::vector<Mat>> R;

    bool has_acs = false;
    Mat J;
    std::vector<Mat> dJ;
    std::vector<std::vector<Mat>> ddJ;

    bool has_triple = false;
    std::array<Mat, 3> Jt;
    std::array<std::vector<Mat>, 3> dJt;

    Mat curv(const Vec& u, const Vec& w) const; // R(u,w) endomorphism
    double tlow(const Vec& u, const Vec& w, const Vec& z) const;
};

// Evaluates the scenario's geometry at x, constructing the connection per the
// scenario mode (plain Levi-Civita, prescribed torsion, structure-preserving
// correction, or triple-averaging).
BaseData base_at(const Scenario& s, const Vec& x);

// Same point data with the mode forced, for comparing constructions.
BaseData base_at_mode(const Scenario& s, const Vec& x, ConnectionMode mode);

// Christoffel symbols of g alone.
std::vector<Mat> levi_civita(const Scenario& s, const Vec& x);

// Residual of D g = 0 for the realized connection.
double metric_compat_residual(const BaseData& b);

// Residual of the realized connection preserving J: max_i |dJ_i + [Gam_i, J]|.
double hermitian_residual(const BaseData& b);

// Cyclic sum of the curvature over its three lower slots (zero for a
// torsion-free connection).
double first_bianchi_residual(const BaseData& b);

struct TorsionParts {
    T3 vectorial, skew3, remainder; // lowered components
    Vec trace_vector;               // the generating vector of the vectorial part
};
// Splits a lowered torsion tensor into its vectorial part, its full
// antisymmetrization and the orthogonal remainder.  The three parts are
// g-orthogonal projections summing back to the input.
TorsionParts torsion_decompose(const T3& Tlow, const Mat& g, const Mat& ginv);

// g-induced inner product of two lowered torsion-type tensors.
double torsion_inner(const T3& a, const T3& b, const Mat& ginv);

struct TorsionTypeResult {
    double mixed_max; // largest mixed-type component w.r.t. J
    double skew3_max; // largest component of the full antisymmetrization
};
// Pure-type test of a torsion tensor against an almost complex structure:
// both outputs vanish exactly when T has no mixed components and no totally
// skew part.
TorsionTypeResult torsion_J_type(const T3& Tlow, const Mat& J);

struct CurvatureHoloResult {
    double block_w;     // max |R(u,v)w| over holomorphic u,v,w
    double block_wbar;  // max |R(u,v) conj(w)|
};
// Curvature blocks on the eigenbasis of J; the two obstructions to
// integrability of the lifted structures.
CurvatureHoloResult curvature_holo_components(const BaseData& b);

// The lowered input-torsion tensor of the scenario's prescribed T at x
// (independent of the realized connection; zero grid when absent).
T3 input_torsion_lowered(const Scenario& s, const Vec& x, const Mat& g);

} // namespace tmgeo
