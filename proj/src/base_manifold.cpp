#include "tmgeo/base_manifold.hpp"

#include "tmgeo/obata.hpp"

#include <complex>

namespace tmgeo {

namespace {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

double max_abs(const Mat& A) { return A.cwiseAbs().maxCoeff(); }

// Value, gradient and hessian of every entry of an m x m expression grid.
struct GridJets {
    Mat val;
    std::vector<Mat> d;                // d[p](i,j) = del_p entry(i,j)
    std::vector<std::vector<Mat>> dd;  // dd[p][q]
};

GridJets grid_jets(const ExprGrid& grid, const Vec& x, int m) {
    GridJets out;
    out.val = Mat::Zero(m, m);
    out.d.assign(m, Mat::Zero(m, m));
    out.dd.assign(m, std::vector<Mat>(m, Mat::Zero(m, m)));
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            if (const Expr* e = grid.at({i, j})) {
                Jet2 jet = e->eval_jet(x);
                out.val(i, j) = jet.v;
                for (int p = 0; p < m; p++) {
                    out.d[p](i, j) = jet.g(p);
                    for (int q = 0; q < m; q++) out.dd[p][q](i, j) = jet.h(p, q);
                }
            }
    return out;
}

// Contorsion coefficients from a lowered torsion tensor:
// Ct(i,j,l) = (T(i,j,l) - T(j,l,i) + T(l,i,j)) / 2.
T3 contorsion_lowered(const T3& Tl) {
    int m = Tl.n();
    T3 Ct(m);
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            for (int l = 0; l < m; l++)
                Ct(i, j, l) = 0.5 * (Tl(i, j, l) - Tl(j, l, i) + Tl(l, i, j));
    return Ct;
}

// Raises the last slot: C[i](k,j) = ginv(k,l) Ct(i,j,l).
std::vector<Mat> raise_last(const T3& Ct, const Mat& ginv) {
    int m = Ct.n();
    std::vector<Mat> out(m, Mat::Zero(m, m));
    for (int i = 0; i < m; i++)
        for (int k = 0; k < m; k++)
            for (int j = 0; j < m; j++) {
                double acc = 0.0;
                for (int l = 0; l < m; l++) acc += ginv(k, l) * Ct(i, j, l);
                out[i](k, j) = acc;
            }
    return out;
}

// Connection coefficients and first derivatives obtained by adding the
// contorsion of the prescribed torsion to an existing pair (Gam, dGam).
void add_contorsion(const Scenario& s, const Vec& x, const Mat& g, const std::vector<Mat>& dg,
                    const Mat& ginv, const std::vector<Mat>& dginv, std::vector<Mat>& Gam,
                    std::vector<std::vector<Mat>>& dGam) {
    int m = s.m;

    // Jets of the prescribed upper-index components.
    T3 Tin(m);
    std::vector<T3> dTin(m, T3(m));
    for (int k = 0; k < m; k++)
        for (int i = 0; i < m; i++)
            for (int j = 0; j < m; j++)
                if (const Expr* e = s.T.at({k, i, j})) {
                    Jet2 jet = e->eval_jet(x);
                    Tin(k, i, j) = jet.v;
                    for (int p = 0; p < m; p++) dTin[p](k, i, j) = jet.g(p);
                }

    T3 Tl(m);
    std::vector<T3> dTl(m, T3(m));
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            for (int l = 0; l < m; l++) {
                double acc = 0.0;
                for (int k = 0; k < m; k++) acc += g(k, l) * Tin(k, i, j);
                Tl(i, j, l) = acc;
                for (int p = 0; p < m; p++) {
                    double dacc = 0.0;
                    for (int k = 0; k < m; k++)
                        dacc += dg[p](k, l) * Tin(k, i, j) + g(k, l) * dTin[p](k, i, j);
                    dTl[p](i, j, l) = dacc;
                }
            }

    T3 Ct = contorsion_lowered(Tl);
    std::vector<Mat> C = raise_last(Ct, ginv);
    for (int i = 0; i < m; i++) Gam[i] += C[i];

    for (int p = 0; p < m; p++) {
        T3 dCt = contorsion_lowered(dTl[p]);
        std::vector<Mat> lower_part = raise_last(dCt, ginv);
        std::vector<Mat> metric_part = raise_last(Ct, dginv[p]);
        for (int i = 0; i < m; i++) dGam[p][i] += lower_part[i] + metric_part[i];
    }
}

EndoJets endo_jets_of(const GridJets& j, int m) {
    EndoJets e;
    e.E = j.val;
    e.dE = j.d;
    e.ddE.assign(m, std::vector<Mat>(m));
    for (int p = 0; p < m; p++)
        for (int q = 0; q < m; q++) e.ddE[p][q] = j.dd[p][q];
    return e;
}

} // namespace

Mat BaseData::curv(const Vec& u, const Vec& w) const {
    Mat out = Mat::Zero(m, m);
    for (int i = 0; i < m; i++) {
        if (u(i) == 0.0) continue;
        for (int j = 0; j < m; j++)
            if (w(j) != 0.0) out += u(i) * w(j) * R[i][j];
    }
    return out;
}

double BaseData::tlow(const Vec& u, const Vec& w, const Vec& z) const {
    double acc = 0.0;
    for (int i = 0; i < m; i++) {
        if (u(i) == 0.0) continue;
        for (int j = 0; j < m; j++) {
            if (w(j) == 0.0) continue;
            for (int l = 0; l < m; l++) acc += u(i) * w(j) * z(l) * Tlow(i, j, l);
        }
    }
    return acc;
}

BaseData base_at_mode(const Scenario& s, const Vec& x, ConnectionMode mode) {
    BaseData b;
    b.m = s.m;
    b.x = x;
    int m = s.m;

    GridJets gj = grid_jets(s.g, x, m);
    b.g = gj.val;
    b.dg = gj.d;
    b.ddg = gj.dd;
    b.ginv = b.g.inverse();
    b.dginv.resize(m);
    for (int p = 0; p < m; p++) b.dginv[p] = -b.ginv * b.dg[p] * b.ginv;

    // Levi-Civita part: Gam[i] = ginv * Glow[i] with
    // Glow[i](b,j) = (dg[i](b,j) + dg[j](b,i) - dg[b](i,j)) / 2.
    std::vector<Mat> Glow(m, Mat::Zero(m, m));
    for (int i = 0; i < m; i++)
        for (int bb = 0; bb < m; bb++)
            for (int j = 0; j < m; j++)
                Glow[i](bb, j) = 0.5 * (b.dg[i](bb, j) + b.dg[j](bb, i) - b.dg[bb](i, j));
    b.GamLC.resize(m);
    for (int i = 0; i < m; i++) b.GamLC[i] = b.ginv * Glow[i];

    b.dGamLC.assign(m, std::vector<Mat>(m));
    for (int p = 0; p < m; p++)
        for (int i = 0; i < m; i++) {
            Mat dGlow(m, m);
            for (int bb = 0; bb < m; bb++)
                for (int j = 0; j < m; j++)
                    dGlow(bb, j) = 0.5 * (b.ddg[p][i](bb, j) + b.ddg[p][j](bb, i) -
                                          b.ddg[p][bb](i, j));
            b.dGamLC[p][i] = b.dginv[p] * Glow[i] + b.ginv * dGlow;
        }

    if (s.has_acs) {
        b.has_acs = true;
        GridJets jj = grid_jets(s.J, x, m);
        b.J = jj.val;
        b.dJ = jj.d;
        b.ddJ = jj.dd;
    }
    std::array<GridJets, 3> tj;
    if (s.has_triple) {
        b.has_triple = true;
        for (int q = 0; q < 3; q++) {
            tj[q] = grid_jets(s.triple[q], x, m);
            b.Jt[q] = tj[q].val;
            b.dJt[q] = tj[q].d;
        }
    }

    b.Gam = b.GamLC;
    b.dGam = b.dGamLC;

    switch (mode) {
        case ConnectionMode::LeviCivita:
            break;
        case ConnectionMode::Torsioned:
            add_contorsion(s, x, b.g, b.dg, b.ginv, b.dginv, b.Gam, b.dGam);
            break;
        case ConnectionMode::Hermitianized: {
            if (!s.has_acs) throw ScenarioError("structure-preserving mode needs J");
            if (s.has_torsion) add_contorsion(s, x, b.g, b.dg, b.ginv, b.dginv, b.Gam, b.dGam);
            // Gam gets the correction B_i = (1/2)(D_i J) J which kills the
            // J-derivative while staying metric.
            std::vector<Mat> DJ(m), B(m);
            for (int i = 0; i < m; i++) {
                DJ[i] = b.dJ[i] + b.Gam[i] * b.J - b.J * b.Gam[i];
                B[i] = 0.5 * DJ[i] * b.J;
            }
            for (int p = 0; p < m; p++)
                for (int i = 0; i < m; i++) {
                    Mat dDJ = b.ddJ[p][i] + b.dGam[p][i] * b.J + b.Gam[i] * b.dJ[p] -
                              b.dJ[p] * b.Gam[i] - b.J * b.dGam[p][i];
                    b.dGam[p][i] += 0.5 * (dDJ * b.J + DJ[i] * b.dJ[p]);
                }
            for (int i = 0; i < m; i++) b.Gam[i] += B[i];
            break;
        }
        case ConnectionMode::Obata: {
            if (!s.has_triple) throw ScenarioError("triple-averaging mode needs J1,J2,J3");
            std::array<EndoJets, 3> triple;
            for (int q = 0; q < 3; q++) triple[q] = endo_jets_of(tj[q], m);
            ObataConnection oc = obata_connection(b.GamLC, b.dGamLC, triple, b.g);
            b.Gam = oc.Gam;
            b.dGam = oc.dGam;
            break;
        }
    }

    // Realized torsion with one derivative order.
    b.Tup = T3(m);
    b.Tlow = T3(m);
    b.dTlow.assign(m, T3(m));
    for (int k = 0; k < m; k++)
        for (int i = 0; i < m; i++)
            for (int j = 0; j < m; j++) b.Tup(k, i, j) = b.Gam[i](k, j) - b.Gam[j](k, i);
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            for (int l = 0; l < m; l++) {
                double acc = 0.0;
                for (int k = 0; k < m; k++) acc += b.g(k, l) * b.Tup(k, i, j);
                b.Tlow(i, j, l) = acc;
                for (int p = 0; p < m; p++) {
                    double dacc = 0.0;
                    for (int k = 0; k < m; k++) {
                        double dTup = b.dGam[p][i](k, j) - b.dGam[p][j](k, i);
                        dacc += b.dg[p](k, l) * b.Tup(k, i, j) + b.g(k, l) * dTup;
                    }
                    b.dTlow[p](i, j, l) = dacc;
                }
            }

    b.R.assign(m, std::vector<Mat>(m));
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            b.R[i][j] = b.dGam[i][j] - b.dGam[j][i] + b.Gam[i] * b.Gam[j] - b.Gam[j] * b.Gam[i];

    return b;
}

BaseData base_at(const Scenario& s, const Vec& x) { return base_at_mode(s, x, s.mode); }

std::vector<Mat> levi_civita(const Scenario& s, const Vec& x) {
    return base_at_mode(s, x, ConnectionMode::LeviCivita).GamLC;
}

double metric_compat_residual(const BaseData& b) {
    double worst = 0.0;
    for (int i = 0; i < b.m; i++)
        worst = std::max(worst,
                         max_abs(b.dg[i] - b.Gam[i].transpose() * b.g - b.g * b.Gam[i]));
    return worst;
}

double hermitian_residual(const BaseData& b) {
    double worst = 0.0;
    for (int i = 0; i < b.m; i++)
        worst = std::max(worst, max_abs(b.dJ[i] + b.Gam[i] * b.J - b.J * b.Gam[i]));
    return worst;
}

double first_bianchi_residual(const BaseData& b) {
    double worst = 0.0;
    for (int i = 0; i < b.m; i++)
        for (int j = 0; j < b.m; j++)
            for (int k = 0; k < b.m; k++)
                for (int l = 0; l < b.m; l++)
                    worst = std::max(worst, std::abs(b.R[i][j](l, k) + b.R[j][k](l, i) +
                                                     b.R[k][i](l, j)));
    return worst;
}

TorsionParts torsion_decompose(const T3& Tl, const Mat& g, const Mat& ginv) {
    int m = Tl.n();
    if (m < 2) throw std::invalid_argument("torsion decomposition needs m >= 2");
    TorsionParts out;

    Vec t = Vec::Zero(m);
    for (int j = 0; j < m; j++)
        for (int i = 0; i < m; i++)
            for (int l = 0; l < m; l++) t(j) += ginv(i, l) * Tl(j, i, l);

    out.vectorial = T3(m);
    out.skew3 = T3(m);
    out.remainder = T3(m);
    double scale = 1.0 / (m - 1);
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            for (int l = 0; l < m; l++) {
                out.vectorial(i, j, l) = scale * (t(i) * g(j, l) - t(j) * g(i, l));
                out.skew3(i, j, l) = (Tl(i, j, l) + Tl(j, l, i) + Tl(l, i, j)) / 3.0;
                out.remainder(i, j, l) =
                    Tl(i, j, l) - out.vectorial(i, j, l) - out.skew3(i, j, l);
            }
    out.trace_vector = scale * (ginv * t);
    return out;
}

double torsion_inner(const T3& a, const T3& b, const Mat& ginv) {
    int m = a.n();
    // Raise all three slots of a, then contract componentwise with b.
    T3 r1(m), r2(m), r3(m);
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            for (int l = 0; l < m; l++) {
                double acc = 0.0;
                for (int p = 0; p < m; p++) acc += ginv(i, p) * a(p, j, l);
                r1(i, j, l) = acc;
            }
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            for (int l = 0; l < m; l++) {
                double acc = 0.0;
                for (int p = 0; p < m; p++) acc += ginv(j, p) * r1(i, p, l);
                r2(i, j, l) = acc;
            }
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            for (int l = 0; l < m; l++) {
                double acc = 0.0;
                for (int p = 0; p < m; p++) acc += ginv(l, p) * r2(i, j, p);
                r3(i, j, l) = acc;
            }
    double total = 0.0;
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            for (int l = 0; l < m; l++) total += r3(i, j, l) * b(i, j, l);
    return total;
}

TorsionTypeResult torsion_J_type(const T3& Tl, const Mat& J) {
    int m = Tl.n();
    std::complex<double> iu(0.0, 1.0);
    CMat P = 0.5 * (CMat::Identity(m, m) - iu * J.cast<std::complex<double>>());
    CMat Pb = P.conjugate();

    auto pattern_max = [&](const CMat& Q1, const CMat& Q2, const CMat& Q3) {
        // Staged contraction of Tl with the three slot projectors.
        std::vector<CMat> U(m, CMat::Zero(m, m)); // U[l](a,j) = sum_i Tl(i,j,l) Q1(i,a)
        for (int l = 0; l < m; l++)
            for (int a = 0; a < m; a++)
                for (int j = 0; j < m; j++) {
                    std::complex<double> acc = 0.0;
                    for (int i = 0; i < m; i++) acc += Tl(i, j, l) * Q1(i, a);
                    U[l](a, j) = acc;
                }
        double worst = 0.0;
        for (int a = 0; a < m; a++)
            for (int bcol = 0; bcol < m; bcol++)
                for (int c = 0; c < m; c++) {
                    std::complex<double> acc = 0.0;
                    for (int j = 0; j < m; j++)
                        for (int l = 0; l < m; l++)
                            acc += U[l](a, j) * Q2(j, bcol) * Q3(l, c);
                    worst = std::max(worst, std::abs(acc));
                }
        return worst;
    };

    TorsionTypeResult out;
    out.mixed_max = std::max({pattern_max(P, P, Pb), pattern_max(P, Pb, P), pattern_max(Pb, P, P)});
    out.skew3_max = 0.0;
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            for (int l = 0; l < m; l++)
                out.skew3_max = std::max(
                    out.skew3_max, std::abs(Tl(i, j, l) + Tl(j, l, i) + Tl(l, i, j)) / 3.0);
    return out;
}

CurvatureHoloResult curvature_holo_components(const BaseData& b) {
    int m = b.m;
    std::complex<double> iu(0.0, 1.0);
    CMat P = 0.5 * (CMat::Identity(m, m) - iu * b.J.cast<std::complex<double>>());
    CMat Pb = P.conjugate();

    CurvatureHoloResult out{0.0, 0.0};
    for (int a = 0; a < m; a++)
        for (int bcol = 0; bcol < m; bcol++) {
            CMat Rab = CMat::Zero(m, m);
            for (int i = 0; i < m; i++)
                for (int j = 0; j < m; j++)
                    Rab += P(i, a) * P(j, bcol) * b.R[i][j].cast<std::complex<double>>();
            for (int c = 0; c < m; c++) {
                out.block_w = std::max(out.block_w, (Rab * P.col(c)).cwiseAbs().maxCoeff());
                out.block_wbar =
                    std::max(out.block_wbar, (Rab * Pb.col(c)).cwiseAbs().maxCoeff());
            }
        }
    return out;
}

T3 input_torsion_lowered(const Scenario& s, const Vec& x, const Mat& g) {
    int m = s.m;
    T3 Tl(m);
    for (int k = 0; k < m; k++)
        for (int i = 0; i < m; i++)
            for (int j = 0; j < m; j++)
                if (const Expr* e = s.T.at({k, i, j})) {
                    double val = e->eval(x);
                    for (int l = 0; l < m; l++) Tl(i, j, l) += g(k, l) * val;
                }
    return Tl;
}

} // namespace tmgeo
