#include "tmgeo/quatlin.hpp"

#include "tmgeo/rand.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace tmgeo {

namespace {

double max_abs(const Mat& A) { return A.cwiseAbs().maxCoeff(); }

void require_isometry(const Mat& A, const Mat& g) {
    if (max_abs(A.transpose() * g * A - g) > 1e-8)
        throw QuatError("matrix is not a g-isometry");
}

// g-orthogonal projector onto the column span of B.
Mat span_projector(const Mat& B, const Mat& g) {
    Mat gram = B.transpose() * g * B;
    return B * gram.ldlt().solve(B.transpose() * g);
}

Mat quaternionic_line_basis(const Vec& X, const QTriple& t) {
    Mat B(t.dim(), 4);
    B.col(0) = X;
    B.col(1) = t.I * X;
    B.col(2) = t.J * X;
    B.col(3) = t.K * X;
    return B;
}

double det4_columns(const Vec& c0, const Vec& c1, const Vec& c2, const Vec& c3) {
    Mat M(4, 4);
    M.col(0) = c0;
    M.col(1) = c1;
    M.col(2) = c2;
    M.col(3) = c3;
    return M.determinant();
}

} // namespace

Quaternion quat_mul(const Quaternion& p, const Quaternion& q) {
    return {
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    };
}

QTriple standard_triple(int n) {
    if (n < 1) throw QuatError("standard_triple needs n >= 1");
    const int d = 4 * n;
    Mat I = Mat::Zero(d, d), J = Mat::Zero(d, d);
    // Per quaternion slot (w,x,y,z): columns are the images of the slot basis
    // under right multiplication by i and by j.
    for (int s = 0; s < n; s++) {
        int o = 4 * s;
        I(o + 1, o + 0) = 1;  // 1 -> i
        I(o + 0, o + 1) = -1; // i -> -1
        I(o + 3, o + 2) = -1; // j -> -k
        I(o + 2, o + 3) = 1;  // k -> j
        J(o + 2, o + 0) = 1;  // 1 -> j
        J(o + 3, o + 1) = 1;  // i -> k
        J(o + 0, o + 2) = -1; // j -> -1
        J(o + 1, o + 3) = -1; // k -> -i
    }
    QTriple t;
    t.I = I;
    t.J = J;
    t.K = I * J;
    t.g = Mat::Identity(d, d);
    return t;
}

Mat two_form_of(const Mat& S, const Mat& g) {
    if (max_abs(S * S + Mat::Identity(S.rows(), S.cols())) > 1e-8)
        throw QuatError("endomorphism does not square to -identity");
    if (max_abs(S.transpose() * g * S - g) > 1e-8)
        throw QuatError("endomorphism is not g-orthogonal");
    return S.transpose() * g;
}

KrainesForm kraines(const QTriple& t) {
    AltForm total(t.dim(), 4);
    for (const Mat* S : {&t.I, &t.J, &t.K}) {
        AltForm w = two_form_to_alt(two_form_of(*S, t.g));
        total += wedge(w, w);
    }
    KrainesForm out;
    out.raw = total;
    out.normalized = (2.0 / 3.0) * total;
    return out;
}

GnResult in_Gn(const Mat& A, const QTriple& t) {
    require_isometry(A, t.g);
    const int d = t.dim();
    Mat ginv_At_g = t.g.ldlt().solve(A.transpose() * t.g); // A^{-1} for a g-isometry
    double worst = 0.0;
    for (int b = 0; b < d; b++) {
        Vec X = Vec::Zero(d);
        X(b) = 1.0;
        Mat P = span_projector(quaternionic_line_basis(X, t), t.g);
        Mat Pimg = span_projector(quaternionic_line_basis(A * X, t), t.g);
        worst = std::max(worst, max_abs(A * P * ginv_At_g - Pimg));
    }
    return {worst < 1e-8, worst};
}

double isotropy_check(const Mat& A, const QTriple& t) {
    require_isometry(A, t.g);
    const int d = t.dim();
    AltForm omega = kraines(t).normalized;
    std::vector<Vec> cols(4);
    double worst = 0.0;
    for (size_t idx = 0; idx < omega.size(); idx++) {
        const auto& c = omega.combo(idx);
        for (int s = 0; s < 4; s++) cols[s] = A.col(c[s]);
        worst = std::max(worst, std::abs(omega.eval(cols) - omega[idx]));
    }
    return worst;
}

LineLemmaResult line_lemma_check(const Vec& Y, const Vec& Y1, const Vec& Y2, const Vec& Y3,
                                 const QTriple& t) {
    const Mat& g = t.g;
    Mat F(t.dim(), 4);
    F.col(0) = Y;
    F.col(1) = Y1;
    F.col(2) = Y2;
    F.col(3) = Y3;
    if (max_abs(F.transpose() * g * F - Mat::Identity(4, 4)) > 1e-8)
        throw QuatError("frame is not orthonormal");

    Vec IY = t.I * Y, JY = t.J * Y, KY = t.K * Y;
    Mat coeff(3, 3);
    double max_z = 0.0;
    const Vec* Ys[3] = {&Y1, &Y2, &Y3};
    for (int j = 0; j < 3; j++) {
        double a = Ys[j]->dot(g * IY);
        double b = Ys[j]->dot(g * JY);
        double c = Ys[j]->dot(g * KY);
        coeff(j, 0) = a;
        coeff(j, 1) = b;
        coeff(j, 2) = c;
        Vec Z = *Ys[j] - a * IY - b * JY - c * KY - Ys[j]->dot(g * Y) * Y;
        max_z = std::max(max_z, std::sqrt(Z.dot(g * Z)));
    }

    AltForm omega = kraines(t).normalized;
    double value = omega.eval({Y, Y1, Y2, Y3});
    double det = coeff.determinant();
    double residual = std::abs(value - 4.0 * det);
    return {det, max_z, value, residual, residual <= 1e-8};
}

Mat sample_line_preserving(int n, std::mt19937_64& rng) {
    QTriple t = standard_triple(n);
    const int d = 4 * n;

    Mat a = normal_sample(rng) * 0.5 * t.I + normal_sample(rng) * 0.5 * t.J +
            normal_sample(rng) * 0.5 * t.K;

    // Skew matrices commuting with the whole triple ([B,I] = [B,J] = 0
    // suffices): solve the linear commutation equations over the skew basis.
    std::vector<std::pair<int, int>> skew_basis;
    for (int p = 0; p < d; p++)
        for (int q = p + 1; q < d; q++) skew_basis.emplace_back(p, q);
    const int nb = static_cast<int>(skew_basis.size());
    Mat constraints(2 * d * d, nb);
    for (int col = 0; col < nb; col++) {
        Mat B = Mat::Zero(d, d);
        B(skew_basis[col].first, skew_basis[col].second) = 1.0;
        B(skew_basis[col].second, skew_basis[col].first) = -1.0;
        Mat c1 = B * t.I - t.I * B;
        Mat c2 = B * t.J - t.J * B;
        for (int i = 0; i < d; i++)
            for (int j = 0; j < d; j++) {
                constraints(i * d + j, col) = c1(i, j);
                constraints(d * d + i * d + j, col) = c2(i, j);
            }
    }
    Eigen::JacobiSVD<Mat> svd(constraints, Eigen::ComputeThinV);
    Mat V = svd.matrixV();
    Vec sv = svd.singularValues();
    Mat b_mat = Mat::Zero(d, d);
    for (int k = 0; k < nb; k++) {
        if (k < sv.size() && sv(k) > 1e-10) continue;
        double c = normal_sample(rng) * 0.5;
        for (int col = 0; col < nb; col++) {
            double w = V(col, k) * c;
            b_mat(skew_basis[col].first, skew_basis[col].second) += w;
            b_mat(skew_basis[col].second, skew_basis[col].first) -= w;
        }
    }

    return (Mat(a.exp()) * Mat(b_mat.exp())).eval();
}

Mat sample_generic_isometry(int dim, std::mt19937_64& rng) {
    Mat B = Mat::Zero(dim, dim);
    for (int p = 0; p < dim; p++)
        for (int q = p + 1; q < dim; q++) {
            double v = normal_sample(rng) * 0.4;
            B(p, q) = v;
            B(q, p) = -v;
        }
    return Mat(B.exp());
}

Vec dim4_product(const Vec& U, const Vec& X1, const Vec& X2, const Mat& g, double orient) {
    if (std::abs(U.dot(g * U) - 1.0) > 1e-8) throw QuatError("unit element is not g-unit");
    double l1 = X1.dot(g * U), l2 = X2.dot(g * U);
    Vec A1 = X1 - l1 * U, A2 = X2 - l2 * U;

    double volume_scale = orient * std::sqrt(g.determinant());
    Vec rhs(4);
    for (int l = 0; l < 4; l++) {
        Vec el = Vec::Zero(4);
        el(l) = 1.0;
        rhs(l) = volume_scale * det4_columns(U, A1, A2, el);
    }
    Vec cross = g.ldlt().solve(rhs);

    return (l1 * l2 - A1.dot(g * A2)) * U + l1 * A2 + l2 * A1 + cross;
}

Dim4OmegaResult dim4_omega(const Vec& U, const Vec& v, const Mat& g, double orient) {
    if (std::abs(U.dot(g * U) - 1.0) > 1e-8 || std::abs(v.dot(g * v) - 1.0) > 1e-8 ||
        std::abs(U.dot(g * v)) > 1e-8)
        throw QuatError("need orthonormal U, v");

    Mat M(4, 4);
    for (int b = 0; b < 4; b++) {
        Vec eb = Vec::Zero(4);
        eb(b) = 1.0;
        M.col(b) = dim4_product(U, v, eb, g, orient);
    }
    Mat omega = two_form_of(M, g);

    Vec Uf = g * U, vf = g * v;
    Mat beta = Uf * vf.transpose() - vf * Uf.transpose();
    Mat ginv = g.inverse();
    Mat beta_up = ginv * beta * ginv;
    double volume_scale = orient * std::sqrt(g.determinant());
    Mat star = Mat::Zero(4, 4);
    int eps[4];
    for (eps[0] = 0; eps[0] < 4; eps[0]++)
        for (eps[1] = 0; eps[1] < 4; eps[1]++)
            for (eps[2] = 0; eps[2] < 4; eps[2]++)
                for (eps[3] = 0; eps[3] < 4; eps[3]++) {
                    int i = eps[0], j = eps[1], k = eps[2], l = eps[3];
                    if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
                    int perm[4] = {i, j, k, l};
                    int sign = 1;
                    for (int p = 0; p < 4; p++)
                        for (int q = p + 1; q < 4; q++)
                            if (perm[p] > perm[q]) sign = -sign;
                    star(k, l) += 0.5 * beta_up(i, j) * volume_scale * sign;
                }
    Mat formula = beta + star;
    return {omega, max_abs(omega - formula)};
}

} // namespace tmgeo
