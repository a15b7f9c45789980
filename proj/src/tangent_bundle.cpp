#include "tmgeo/tangent_bundle.hpp"

namespace tmgeo {

namespace {

double max_abs(const Mat& A) { return A.cwiseAbs().maxCoeff(); }

// Adapted-frame matrix of a lifted structure together with its base-direction
// derivatives (fiber derivatives of the frame matrices vanish).
void adapted_structure(const TMData& t, StructureKind kind, Mat& S_ad, std::vector<Mat>& dS_ad) {
    int m = t.m, n = t.n;
    const BaseData& b = t.b;
    S_ad = Mat::Zero(n, n);
    dS_ad.assign(n, Mat::Zero(n, n));
    switch (kind) {
        case StructureKind::I:
            S_ad.block(m, 0, m, m) = Mat::Identity(m, m);
            S_ad.block(0, m, m, m) = -Mat::Identity(m, m);
            break;
        case StructureKind::Jplus:
        case StructureKind::Jminus: {
            double sign = kind == StructureKind::Jplus ? 1.0 : -1.0;
            S_ad.block(0, 0, m, m) = b.J;
            S_ad.block(m, m, m, m) = sign * b.J;
            for (int p = 0; p < m; p++) {
                dS_ad[p].block(0, 0, m, m) = b.dJ[p];
                dS_ad[p].block(m, m, m, m) = sign * b.dJ[p];
            }
            break;
        }
        case StructureKind::K:
            S_ad.block(0, m, m, m) = b.J;
            S_ad.block(m, 0, m, m) = b.J;
            for (int p = 0; p < m; p++) {
                dS_ad[p].block(0, m, m, m) = b.dJ[p];
                dS_ad[p].block(m, 0, m, m) = b.dJ[p];
            }
            break;
    }
}

EndoChart to_chart(const TMData& t, const Mat& S_ad, const std::vector<Mat>& dS_ad) {
    EndoChart out;
    out.S = t.F * S_ad * t.Finv;
    out.dS.resize(t.n);
    for (int A = 0; A < t.n; A++)
        out.dS[A] = t.dF[A] * S_ad * t.Finv + t.F * dS_ad[A] * t.Finv + t.F * S_ad * t.dFinv[A];
    return out;
}

AltForm mat_to_alt(const Mat& w) { return two_form_to_alt(w); }

} // namespace

TMData tm_at(const Scenario& s, const TMPoint& p) {
    TMData t;
    t.b = base_at(s, p.x);
    t.v = p.v;
    t.m = s.m;
    t.n = 2 * s.m;
    const BaseData& b = t.b;
    int m = t.m, n = t.n;
    const Vec& v = t.v;

    t.C = Mat::Zero(m, m);
    for (int i = 0; i < m; i++) t.C.col(i) = b.Gam[i] * v;
    t.dC.assign(n, Mat::Zero(m, m));
    for (int pdir = 0; pdir < m; pdir++)
        for (int i = 0; i < m; i++) t.dC[pdir].col(i) = b.dGam[pdir][i] * v;
    for (int pdir = 0; pdir < m; pdir++)
        for (int i = 0; i < m; i++) t.dC[m + pdir].col(i) = b.Gam[i].col(pdir);

    t.F = Mat::Identity(n, n);
    t.F.block(m, 0, m, m) = -t.C;
    t.Finv = Mat::Identity(n, n);
    t.Finv.block(m, 0, m, m) = t.C;
    t.dF.assign(n, Mat::Zero(n, n));
    t.dFinv.assign(n, Mat::Zero(n, n));
    for (int A = 0; A < n; A++) {
        t.dF[A].block(m, 0, m, m) = -t.dC[A];
        t.dFinv[A].block(m, 0, m, m) = t.dC[A];
    }

    Mat Ga = Mat::Zero(n, n);
    Ga.block(0, 0, m, m) = b.g;
    Ga.block(m, m, m, m) = b.g;
    t.G = t.Finv.transpose() * Ga * t.Finv;
    t.Ginv = t.G.inverse();
    t.dG.assign(n, Mat::Zero(n, n));
    for (int A = 0; A < n; A++) {
        Mat dGa = Mat::Zero(n, n);
        if (A < m) {
            dGa.block(0, 0, m, m) = b.dg[A];
            dGa.block(m, m, m, m) = b.dg[A];
        }
        t.dG[A] = t.dFinv[A].transpose() * Ga * t.Finv + t.Finv.transpose() * dGa * t.Finv +
                  t.Finv.transpose() * Ga * t.dFinv[A];
    }

    // Pull-back connection on chart fields.  The (x_i, x_j) derivative needs
    // explicit per-pair products: the fiber argument rides along, so the
    // coefficient derivative acts on Gam[j] v as well.
    t.Gstar.assign(n, Mat::Zero(n, n));
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            Vec h = b.Gam[i].col(j);
            Vec w = b.dGam[i][j] * v + b.Gam[i] * (b.Gam[j] * v);
            t.Gstar[i].col(j).head(m) = h;
            t.Gstar[i].col(j).tail(m) = w - t.C * h;
            t.Gstar[i].col(m + j).tail(m) = b.Gam[i].col(j);
            t.Gstar[m + i].col(j).tail(m) = b.Gam[j].col(i);
        }
    }

    std::vector<std::vector<Vec>> grv(m, std::vector<Vec>(m));
    for (int i = 0; i < m; i++)
        for (int l = 0; l < m; l++) grv[i][l] = b.g * (b.R[i][l] * v);

    t.Gt = t.Gstar;
    t.tau_max = 0.0;
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            // Both slots of base type: curvature twist, symmetrized
            // curvature correction and the torsion average all contribute.
            Vec add_h = Vec::Zero(m);
            Vec add_v = -0.5 * (b.R[i][j] * v);
            Vec rhs(m), tvec(m);
            for (int l = 0; l < m; l++) {
                rhs(l) = 0.5 * (grv[i][l].dot(t.C.col(j)) + grv[j][l].dot(t.C.col(i)));
                tvec(l) = 0.5 * (b.Tlow(j, i, l) - b.Tlow(l, i, j) + b.Tlow(j, l, i));
            }
            Vec tau = b.ginv * tvec;
            t.tau_max = std::max(t.tau_max, tau.cwiseAbs().maxCoeff());
            add_h += b.ginv * rhs + tau;
            t.Gt[i].col(j).head(m) += add_h;
            t.Gt[i].col(j).tail(m) += add_v - t.C * add_h;

            // One slot vertical: only the symmetrized correction survives.
            Vec rhs_xv(m), rhs_vx(m);
            for (int l = 0; l < m; l++) {
                rhs_xv(l) = 0.5 * grv[i][l](j);
                rhs_vx(l) = 0.5 * grv[j][l](i);
            }
            Vec h_xv = b.ginv * rhs_xv;
            t.Gt[i].col(m + j).head(m) += h_xv;
            t.Gt[i].col(m + j).tail(m) += -t.C * h_xv;
            Vec h_vx = b.ginv * rhs_vx;
            t.Gt[m + i].col(j).head(m) += h_vx;
            t.Gt[m + i].col(j).tail(m) += -t.C * h_vx;
        }
    }
    return t;
}

std::vector<Mat> tm_oracle(const BaseData& b, const Vec& v) {
    int m = b.m, n = 2 * m;

    Mat C = Mat::Zero(m, m);
    for (int i = 0; i < m; i++) C.col(i) = b.Gam[i] * v;

    Mat Gfull = Mat::Zero(n, n);
    Gfull.block(0, 0, m, m) = b.g + C.transpose() * b.g * C;
    Gfull.block(0, m, m, m) = C.transpose() * b.g;
    Gfull.block(m, 0, m, m) = b.g * C;
    Gfull.block(m, m, m, m) = b.g;
    Mat Ginv = Gfull.inverse();

    std::vector<Mat> dG(n, Mat::Zero(n, n));
    for (int p = 0; p < m; p++) {
        Mat dCp = Mat::Zero(m, m);
        for (int i = 0; i < m; i++) dCp.col(i) = b.dGam[p][i] * v;
        Mat xx = b.dg[p] + dCp.transpose() * b.g * C + C.transpose() * b.dg[p] * C +
                 C.transpose() * b.g * dCp;
        Mat xv = dCp.transpose() * b.g + C.transpose() * b.dg[p];
        dG[p].block(0, 0, m, m) = xx;
        dG[p].block(0, m, m, m) = xv;
        dG[p].block(m, 0, m, m) = xv.transpose();
        dG[p].block(m, m, m, m) = b.dg[p];
    }
    for (int p = 0; p < m; p++) {
        Mat dCv = Mat::Zero(m, m);
        for (int i = 0; i < m; i++) dCv.col(i) = b.Gam[i].col(p);
        Mat xx = dCv.transpose() * b.g * C + C.transpose() * b.g * dCv;
        Mat xv = dCv.transpose() * b.g;
        dG[m + p].block(0, 0, m, m) = xx;
        dG[m + p].block(0, m, m, m) = xv;
        dG[m + p].block(m, 0, m, m) = xv.transpose();
    }

    std::vector<Mat> orc(n);
    for (int i = 0; i < n; i++) {
        Mat low(n, n);
        for (int D = 0; D < n; D++)
            for (int j = 0; j < n; j++)
                low(D, j) = 0.5 * (dG[i](D, j) + dG[j](D, i) - dG[D](i, j));
        orc[i] = Ginv * low;
    }
    return orc;
}

double oracle_agreement(const TMData& t) {
    std::vector<Mat> orc = tm_oracle(t.b, t.v);
    double worst = 0.0;
    for (int A = 0; A < t.n; A++) worst = std::max(worst, max_abs(t.Gt[A] - orc[A]));
    return worst;
}

double tm_metric_residual(const TMData& t) {
    double worst = 0.0;
    for (int A = 0; A < t.n; A++)
        worst = std::max(
            worst, max_abs(t.dG[A] - t.Gt[A].transpose() * t.G - t.G * t.Gt[A]));
    return worst;
}

double tm_torsion_residual(const TMData& t) {
    double worst = 0.0;
    for (int A = 0; A < t.n; A++)
        for (int B = A + 1; B < t.n; B++)
            worst = std::max(
                worst, (t.Gt[A].col(B) - t.Gt[B].col(A)).cwiseAbs().maxCoeff());
    return worst;
}

double horizontal_bracket_residual(const TMData& t) {
    int m = t.m;
    double worst = 0.0;
    for (int i = 0; i < m; i++)
        for (int j = i + 1; j < m; j++) {
            Vec br = -t.dC[i].col(j) + t.dC[j].col(i);
            for (int p = 0; p < m; p++)
                br += t.C(p, i) * t.dC[m + p].col(j) - t.C(p, j) * t.dC[m + p].col(i);
            worst = std::max(worst, (br + t.b.R[i][j] * t.v).cwiseAbs().maxCoeff());
        }
    return worst;
}

double xi_parallel_residual(const TMData& t) {
    int m = t.m;
    Vec xic = Vec::Zero(t.n);
    xic.tail(m) = t.v;
    double worst = 0.0;
    for (int i = 0; i < m; i++) {
        Vec val = t.Gstar[i] * xic;
        for (int p = 0; p < m; p++) {
            Vec vert = Vec::Zero(t.n);
            vert(m + p) = 1.0;
            val -= t.C(p, i) * (vert + t.Gstar[m + p] * xic);
        }
        worst = std::max(worst, val.cwiseAbs().maxCoeff());
    }
    return worst;
}

EndoChart structure_chart(const TMData& t, StructureKind kind) {
    Mat S_ad;
    std::vector<Mat> dS_ad;
    adapted_structure(t, kind, S_ad, dS_ad);
    return to_chart(t, S_ad, dS_ad);
}

EndoChart family_chart(const TMData& t, const Vec& a4) {
    if (!t.b.has_triple) throw std::invalid_argument("family structures need a base triple");
    int m = t.m, n = t.n;
    Mat S_ad = Mat::Zero(n, n);
    std::vector<Mat> dS_ad(n, Mat::Zero(n, n));
    S_ad.block(m, 0, m, m) = a4(0) * Mat::Identity(m, m);
    S_ad.block(0, m, m, m) = -a4(0) * Mat::Identity(m, m);
    for (int q = 0; q < 3; q++) {
        S_ad.block(0, 0, m, m) += a4(q + 1) * t.b.Jt[q];
        S_ad.block(m, m, m, m) -= a4(q + 1) * t.b.Jt[q];
        for (int p = 0; p < m; p++) {
            dS_ad[p].block(0, 0, m, m) += a4(q + 1) * t.b.dJt[q][p];
            dS_ad[p].block(m, m, m, m) -= a4(q + 1) * t.b.dJt[q][p];
        }
    }
    return to_chart(t, S_ad, dS_ad);
}

EndoChart endo_product(const EndoChart& A, const EndoChart& B) {
    EndoChart out;
    out.S = A.S * B.S;
    out.dS.resize(A.dS.size());
    for (size_t X = 0; X < A.dS.size(); X++) out.dS[X] = A.dS[X] * B.S + A.S * B.dS[X];
    return out;
}

double nijenhuis_max(const TMData& t, const EndoChart& S) {
    int n = t.n;
    double worst = 0.0;
    for (int D = 0; D < n; D++)
        for (int A = 0; A < n; A++)
            for (int B = A + 1; B < n; B++) {
                double acc = 0.0;
                for (int Cc = 0; Cc < n; Cc++)
                    acc += S.S(Cc, A) * S.dS[Cc](D, B) - S.S(Cc, B) * S.dS[Cc](D, A) +
                           S.S(D, Cc) * (S.dS[B](Cc, A) - S.dS[A](Cc, B));
                worst = std::max(worst, std::abs(acc));
            }
    return worst;
}

double nabla_endo_max(const TMData& t, const EndoChart& S) {
    double worst = 0.0;
    for (int A = 0; A < t.n; A++)
        worst = std::max(worst, max_abs(S.dS[A] + t.Gt[A] * S.S - S.S * t.Gt[A]));
    return worst;
}

double dstar_residual(const TMData& t, StructureKind kind) {
    Mat S_ad;
    std::vector<Mat> dS_ad;
    adapted_structure(t, kind, S_ad, dS_ad);
    int m = t.m;
    double worst = 0.0;
    for (int A = 0; A < m; A++) {
        Mat Ghat = Mat::Zero(t.n, t.n);
        Ghat.block(0, 0, m, m) = t.b.Gam[A];
        Ghat.block(m, m, m, m) = t.b.Gam[A];
        worst = std::max(worst, max_abs(dS_ad[A] + Ghat * S_ad - S_ad * Ghat));
    }
    return worst;
}

Mat two_form(const TMData& t, const EndoChart& S) { return S.S.transpose() * t.G; }

AltForm d_two_form(const TMData& t, const EndoChart& S) {
    int n = t.n;
    std::vector<Mat> dw(n);
    for (int A = 0; A < n; A++)
        dw[A] = S.dS[A].transpose() * t.G + S.S.transpose() * t.dG[A];
    AltForm out(n, 3);
    for (size_t idx = 0; idx < out.size(); idx++) {
        const auto& c = out.combo(idx);
        out[idx] = dw[c[0]](c[1], c[2]) - dw[c[1]](c[0], c[2]) + dw[c[2]](c[0], c[1]);
    }
    return out;
}

KrainesTM kraines_tm(const TMData& t, const EndoChart& S1, const EndoChart& S2,
                     const EndoChart& S3) {
    int n = t.n;
    const EndoChart* S[3] = {&S1, &S2, &S3};

    std::array<AltForm, 3> w;
    for (int i = 0; i < 3; i++) w[i] = mat_to_alt(S[i]->S.transpose() * t.G);

    KrainesTM out;
    out.omega4 = AltForm(n, 4);
    for (int i = 0; i < 3; i++) out.omega4 += wedge(w[i], w[i]);

    std::vector<AltForm> dOmega(n);
    for (int A = 0; A < n; A++) {
        dOmega[A] = AltForm(n, 4);
        for (int i = 0; i < 3; i++) {
            Mat dwm = S[i]->dS[A].transpose() * t.G + S[i]->S.transpose() * t.dG[A];
            dOmega[A] += 2.0 * wedge(mat_to_alt(dwm), w[i]);
        }
    }

    out.d5 = AltForm(n, 5);
    for (size_t idx = 0; idx < out.d5.size(); idx++) {
        const auto& c = out.d5.combo(idx);
        uint32_t full = 0;
        for (int val : c) full |= (1u << val);
        double acc = 0.0;
        for (size_t tpos = 0; tpos < c.size(); tpos++) {
            double term = dOmega[c[tpos]].by_mask(full & ~(1u << c[tpos]));
            acc += (tpos % 2 == 0) ? term : -term;
        }
        out.d5[idx] = acc;
    }
    out.d5_max = out.d5.max_abs();
    return out;
}

QkDefect qk_defect(const TMData& t, const EndoChart& S1, const EndoChart& S2,
                   const EndoChart& S3) {
    int n = t.n;
    const EndoChart* S[3] = {&S1, &S2, &S3};

    auto inner = [&](const Mat& X, const Mat& Y) {
        return (t.Ginv * X.transpose() * t.G * Y).trace() / n;
    };

    QkDefect out{0.0, 0.0, 0.0, 0.0};

    std::array<std::vector<Mat>, 3> L;
    std::vector<Mat> alpha(n, Mat::Zero(3, 3));
    for (int A = 0; A < n; A++) {
        std::array<Mat, 3> nab;
        for (int i = 0; i < 3; i++)
            nab[i] = S[i]->dS[A] + t.Gt[A] * S[i]->S - S[i]->S * t.Gt[A];
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++) alpha[A](j, i) = inner(nab[i], S[j]->S);
        out.alpha_antisym_max =
            std::max(out.alpha_antisym_max, max_abs(alpha[A] + alpha[A].transpose()));
        for (int i = 0; i < 3; i++) {
            Mat Li = nab[i];
            for (int j = 0; j < 3; j++) Li -= alpha[A](j, i) * S[j]->S;
            out.L_max = std::max(out.L_max, max_abs(Li));
            L[i].push_back(Li);
        }
    }

    std::array<AltForm, 3> lambda;
    for (int i = 0; i < 3; i++) {
        std::vector<Mat> M(n);
        for (int A = 0; A < n; A++) M[A] = L[i][A].transpose() * t.G;
        lambda[i] = AltForm(n, 3);
        for (size_t idx = 0; idx < lambda[i].size(); idx++) {
            const auto& c = lambda[i].combo(idx);
            lambda[i][idx] =
                M[c[0]](c[1], c[2]) + M[c[1]](c[2], c[0]) + M[c[2]](c[0], c[1]);
        }
    }

    AltForm W5(n, 5);
    for (int i = 0; i < 3; i++) {
        AltForm wi = mat_to_alt(S[i]->S.transpose() * t.G);
        W5 += wedge(wi, lambda[i]);
    }

    AltForm d5 = kraines_tm(t, S1, S2, S3).d5;
    double dot = 0.0, nw = 0.0;
    for (size_t k = 0; k < W5.size(); k++) {
        dot += d5[k] * W5[k];
        nw += W5[k] * W5[k];
    }
    out.fit_c = nw < 1e-24 ? 0.0 : dot / nw;
    double res = 0.0;
    for (size_t k = 0; k < W5.size(); k++)
        res = std::max(res, std::abs(d5[k] - out.fit_c * W5[k]));
    out.fit_residual = res;
    return out;
}

std::array<EndoChart, 3> canonical_triple(const TMData& t) {
    if (!t.b.has_acs) throw std::invalid_argument("canonical triple needs a base structure");
    return {structure_chart(t, StructureKind::I), structure_chart(t, StructureKind::Jminus),
            structure_chart(t, StructureKind::K)};
}

std::array<EndoChart, 3> family_triple(const TMData& t, const Vec& a4, const Vec& b4) {
    EndoChart A = family_chart(t, a4);
    EndoChart B = family_chart(t, b4);
    EndoChart C = endo_product(A, B);
    return {A, B, C};
}

} // namespace tmgeo
