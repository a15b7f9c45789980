#pragma once

#include "tmgeo/base_manifold.hpp"
#include "tmgeo/quatlin.hpp"

namespace tmgeo {

struct TMPoint {
    Vec x, v;
};

// The tangent bundle of an m-manifold at one point of TM, in the induced
// chart (x^1..x^m, v^1..v^m).  Directions 0..m-1 are the base coordinates,
// m..2m-1 the fiber coordinates.  F's columns are the adapted frame
// (horizontal lifts, then verticals); G is the induced metric making the
// splitting orthogonal with the base metric on both factors.
struct TMData {
    BaseData b;
    Vec v;
    int m = 0, n = 0; // n = 2m

    Mat C;                  // C(a,i) = Gam[i](a,.) v
    std::vector<Mat> dC;    // all 2m chart derivatives
    Mat F, Finv;
    std::vector<Mat> dF, dFinv;
    Mat G, Ginv;
    std::vector<Mat> dG;

    std::vector<Mat> Gt;    // assembled connection, Gt[A].col(B) = nabla_A (d/dB)
    std::vector<Mat> Gstar; // the pull-back-connection part alone
    double tau_max = 0.0;   // largest torsion-term component produced in assembly
};

TMData tm_at(const Scenario& s, const TMPoint& p);

// Brute-force route: the explicit induced-metric components and their exact
// derivatives, then the classical Christoffel formula on R^{2m}.  Shares only
// the base jets with the structural assembly.
std::vector<Mat> tm_oracle(const BaseData& b, const Vec& v);

double oracle_agreement(const TMData& t);

// max_A |d G_A - Gt_A^t G - G Gt_A|.
double tm_metric_residual(const TMData& t);
double tm_torsion_residual(const TMData& t);

// Vertical part of [H_i, H_j] against -R(e_i,e_j)v.
double horizontal_bracket_residual(const TMData& t);

// Pull-back derivative of the canonical vertical field along horizontal lifts.
double xi_parallel_residual(const TMData& t);

enum class StructureKind { I, Jplus, Jminus, K };

// A structure on TM in chart components with its exact chart derivatives.
struct EndoChart {
    Mat S;
    std::vector<Mat> dS;
};

EndoChart structure_chart(const TMData& t, StructureKind kind);

// Member of the two-parameter family: a0 I + a1 I1 + a2 I2 + a3 I3 for unit
// a in R^4, where Iq flips the sign of the q-th base structure on verticals.
EndoChart family_chart(const TMData& t, const Vec& a4);

// Composition S1 S2 with chart derivatives (used for triple completion).
EndoChart endo_product(const EndoChart& A, const EndoChart& B);

double nijenhuis_max(const TMData& t, const EndoChart& S);

// max component of nabla S for the assembled connection.
double nabla_endo_max(const TMData& t, const EndoChart& S);

// Pull-back-connection derivative of the structure, evaluated in the adapted
// frame (exact; zero for the canonical structure on any base).
double dstar_residual(const TMData& t, StructureKind kind);

Mat two_form(const TMData& t, const EndoChart& S); // omega(X,Y) = G(SX, Y)

// Coefficient exterior derivative of omega_S; values on basis triples.
AltForm d_two_form(const TMData& t, const EndoChart& S);

struct KrainesTM {
    AltForm omega4;     // shuffle-convention 4-form of the triple
    double d5_max;      // largest component of its exterior derivative
    AltForm d5;
};
KrainesTM kraines_tm(const TMData& t, const EndoChart& S1, const EndoChart& S2,
                     const EndoChart& S3);

struct QkDefect {
    double alpha_antisym_max; // violation of alpha^t = -alpha
    double L_max;             // largest component orthogonal to the triple span
    double fit_c;             // best-fit constant in d Omega = c * sum omega_i ^ lambda_i
    double fit_residual;
};
QkDefect qk_defect(const TMData& t, const EndoChart& S1, const EndoChart& S2,
                   const EndoChart& S3);

// The triple (I, J-, K) induced by the base structure.
std::array<EndoChart, 3> canonical_triple(const TMData& t);

// FAMILY triple for a Stiefel pair: (I_a, I_b, I_a I_b).
std::array<EndoChart, 3> family_triple(const TMData& t, const Vec& a4, const Vec& b4);

} // namespace tmgeo
