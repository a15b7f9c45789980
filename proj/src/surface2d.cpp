#include "tmgeo/surface2d.hpp"

namespace tmgeo {

namespace {

Vec frame_member(const SurfaceFrame& f, int which) {
    switch (which) {
        case 0: return f.xi;
        case 1: return f.eta;
        case 2: return f.xih;
        default: return f.etah;
    }
}

// Derivative of the frame field `which` along the chart direction dir at p,
// plus the connection term, i.e. the covariant derivative of the field.
Vec covariant_frame_derivative(const Scenario& s, const TMPoint& p, const TMData& t,
                               const Vec& dir, int which) {
    const double h = 1e-6;
    TMPoint plus{p.x + h * dir.head(2), p.v + h * dir.tail(2)};
    TMPoint minus{p.x - h * dir.head(2), p.v - h * dir.tail(2)};
    Vec w_plus = frame_member(surface_frame(s, plus), which);
    Vec w_minus = frame_member(surface_frame(s, minus), which);
    Vec out = (w_plus - w_minus) / (2.0 * h);
    Vec w0 = frame_member(surface_frame(s, p), which);
    for (int A = 0; A < 4; A++) out += dir(A) * (t.Gt[A] * w0);
    return out;
}

} // namespace

SurfaceFrame surface_frame(const Scenario& s, const TMPoint& p) {
    if (s.m != 2) throw SurfaceError("surface frame needs a 2-dimensional base");
    BaseData b = base_at(s, p.x);

    SurfaceFrame f;
    f.c = std::sqrt(p.v.dot(b.g * p.v));
    if (f.c < 1e-10) throw SurfaceError("surface frame needs a nonzero fiber point");
    Vec u = p.v / f.c;

    Mat vol(2, 2);
    double root = std::sqrt(b.g.determinant());
    vol << 0.0, root, -root, 0.0;
    Mat Jrot = -b.ginv * vol;
    Vec eta_u = Jrot * u;

    Mat C(2, 2);
    for (int i = 0; i < 2; i++) C.col(i) = b.Gam[i] * p.v;

    auto lift = [&](const Vec& w) {
        Vec out(4);
        out.head(2) = w;
        out.tail(2) = -C * w;
        return out;
    };
    auto vertical = [](const Vec& w) {
        Vec out = Vec::Zero(4);
        out.tail(2) = w;
        return out;
    };

    f.xi = vertical(p.v);
    f.eta = vertical(eta_u);
    f.xih = lift(p.v);
    f.etah = lift(eta_u);

    f.k = (b.curv(u, eta_u) * u).dot(b.g * eta_u);
    f.f1 = b.tlow(p.v, eta_u, p.v) / (f.c * f.c);
    f.f2 = b.tlow(p.v, eta_u, eta_u);
    return f;
}

double surface_table_residual(const Scenario& s, const TMPoint& p) {
    TMData t = tm_at(s, p);
    SurfaceFrame f = surface_frame(s, p);
    double c2 = f.c * f.c;
    Vec zero = Vec::Zero(4);

    // Closed-form covariant derivatives, rows indexed by the differentiation
    // direction (xi, eta, xih, etah), columns by the field.
    Vec table[4][4] = {
        {f.xi, zero, f.xih, zero},
        {f.eta, -f.xi / c2, (1.0 + f.k * c2 / 2.0) * f.etah,
         -(1.0 / c2 + f.k / 2.0) * f.xih},
        {zero, (f.k / 2.0) * c2 * f.etah, f.f1 * c2 * f.etah,
         -(f.k / 2.0) * c2 * f.eta - f.f1 * f.xih},
        {zero, -(f.k / 2.0) * f.xih, (f.k / 2.0) * c2 * f.eta + f.f2 * f.etah,
         -(f.f2 / c2) * f.xih},
    };

    double worst = 0.0;
    for (int U = 0; U < 4; U++)
        for (int W = 0; W < 4; W++) {
            Vec got = covariant_frame_derivative(s, p, t, frame_member(f, U), W);
            worst = std::max(worst, (got - table[U][W]).cwiseAbs().maxCoeff());
        }
    return worst;
}

double surface_bracket_residual(const Scenario& s, const TMPoint& p) {
    const double h = 1e-6;
    SurfaceFrame f = surface_frame(s, p);

    auto fd = [&](const Vec& dir, int which) {
        TMPoint plus{p.x + h * dir.head(2), p.v + h * dir.tail(2)};
        TMPoint minus{p.x - h * dir.head(2), p.v - h * dir.tail(2)};
        return Vec((frame_member(surface_frame(s, plus), which) -
                    frame_member(surface_frame(s, minus), which)) /
                   (2.0 * h));
    };

    Vec bracket = fd(f.xih, 3) - fd(f.etah, 2);
    Vec target = -f.c * f.c * f.k * f.eta - f.f1 * f.xih - f.f2 * f.etah;
    return (bracket - target).cwiseAbs().maxCoeff();
}

double surface_scale_residual(const Scenario& s, const TMPoint& p) {
    SurfaceFrame fa = surface_frame(s, p);
    SurfaceFrame fb = surface_frame(s, {p.x, 2.0 * p.v});
    return std::abs(fa.k - fb.k) + std::abs(fa.f1 - fb.f1) +
           std::abs(fb.f2 - 2.0 * fa.f2);
}

EinsteinResult einstein_defect(const Scenario& s, const TMPoint& p) {
    TMData t0 = tm_at(s, p);
    const int n = 4;

    // One Richardson layer over central differences of the assembled
    // coefficients.
    auto central = [&](int P, double h) {
        Vec dx = Vec::Zero(2), dv = Vec::Zero(2);
        if (P < 2)
            dx(P) = h;
        else
            dv(P - 2) = h;
        TMData tp = tm_at(s, {p.x + dx, p.v + dv});
        TMData tm = tm_at(s, {p.x - dx, p.v - dv});
        std::vector<Mat> out(n);
        for (int A = 0; A < n; A++) out[A] = (tp.Gt[A] - tm.Gt[A]) / (2.0 * h);
        return out;
    };

    const double h = 1e-4;
    std::vector<std::vector<Mat>> dGt(n);
    for (int P = 0; P < n; P++) {
        std::vector<Mat> coarse = central(P, h);
        std::vector<Mat> fine = central(P, h / 2.0);
        dGt[P].resize(n);
        for (int A = 0; A < n; A++) dGt[P][A] = (4.0 * fine[A] - coarse[A]) / 3.0;
    }

    Vec q = Vec::Zero(n);
    for (int D = 0; D < n; D++)
        for (int Cc = 0; Cc < n; Cc++) q(D) += t0.Gt[Cc](Cc, D);

    EinsteinResult out;
    out.ricci = Mat::Zero(n, n);
    for (int A = 0; A < n; A++)
        for (int B = 0; B < n; B++) {
            double val = 0.0;
            for (int Cc = 0; Cc < n; Cc++) {
                val += dGt[Cc][A](Cc, B) - dGt[A][Cc](Cc, B);
                val -= (t0.Gt[A] * t0.Gt[Cc])(Cc, B);
            }
            for (int D = 0; D < n; D++) val += t0.Gt[A](D, B) * q(D);
            out.ricci(A, B) = val;
        }

    double tr = 0.0;
    for (int A = 0; A < n; A++)
        for (int B = 0; B < n; B++) tr += t0.Ginv(A, B) * out.ricci(A, B);
    out.defect = (out.ricci - (tr / 4.0) * t0.G).cwiseAbs().maxCoeff();

    // Base-direction derivatives of the torsion functions at frozen fiber.
    SurfaceFrame f = surface_frame(s, p);
    const double hs = 1e-5;
    Vec df1(2), df2(2);
    for (int i = 0; i < 2; i++) {
        Vec dx = Vec::Zero(2);
        dx(i) = hs;
        SurfaceFrame fp = surface_frame(s, {p.x + dx, p.v});
        SurfaceFrame fm = surface_frame(s, {p.x - dx, p.v});
        df1(i) = (fp.f1 - fm.f1) / (2.0 * hs);
        df2(i) = (fp.f2 - fm.f2) / (2.0 * hs);
    }
    Vec eta_u = f.etah.head(2);
    double c2 = f.c * f.c;
    out.scalar_eq = c2 * eta_u.dot(df1) - p.v.dot(df2) - c2 * f.f1 * f.f1 - f.f2 * f.f2;
    return out;
}

} // namespace tmgeo
