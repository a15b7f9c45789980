#include "tmgeo/obata.hpp"

namespace tmgeo {

namespace {

double max_abs(const Mat& A) { return A.cwiseAbs().maxCoeff(); }

Mat nabla_endo(const std::vector<Mat>& Gam, const EndoJets& E, int i) {
    return E.dE[i] + Gam[i] * E.E - E.E * Gam[i];
}

} // namespace

Mat a_of_endo(const std::vector<Mat>& Gam, const EndoJets& E, const Mat& g, int direction) {
    int m = static_cast<int>(E.E.rows());
    if (max_abs(E.E * E.E + Mat::Identity(m, m)) > 1e-8)
        throw ObataError("endomorphism does not square to -identity");

    Mat nab = nabla_endo(Gam, E, direction);
    Mat A = nab * E.E;
    if (max_abs(A * E.E - E.E * A + 2.0 * nab) > 1e-8)
        throw ObataError("bracket identity [A_E, E] = -2 nabla E fails");
    if (max_abs(A.transpose() * g + g * A) > 1e-8)
        throw ObataError("A_E is not skew with respect to g");
    return A;
}

ObataConnection obata_connection(const std::vector<Mat>& Gam,
                                 const std::vector<std::vector<Mat>>& dGam,
                                 const std::array<EndoJets, 3>& triple, const Mat& g) {
    int m = static_cast<int>(g.rows());
    ObataConnection out;
    out.Gam = Gam;
    out.dGam = dGam;

    for (int q = 0; q < 3; q++) {
        const EndoJets& E = triple[q];
        for (int i = 0; i < m; i++) {
            out.Gam[i] += 0.25 * a_of_endo(Gam, E, g, i);
            Mat nab = nabla_endo(Gam, E, i);
            for (int p = 0; p < m; p++) {
                Mat dnab = E.ddE[p][i] + dGam[p][i] * E.E + Gam[i] * E.dE[p] -
                           E.dE[p] * Gam[i] - E.E * dGam[p][i];
                out.dGam[p][i] += 0.25 * (dnab * E.E + nab * E.dE[p]);
            }
        }
    }
    return out;
}

} // namespace tmgeo
