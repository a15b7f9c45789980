#include "doctest.h"

#include "tmgeo/quatlin.hpp"
#include "tmgeo/rand.hpp"

#include <random>

using namespace tmgeo;

namespace {

double mmax(const Mat& A) { return A.cwiseAbs().maxCoeff(); }

Vec basis8(int i) {
    Vec e = Vec::Zero(8);
    e(i) = 1.0;
    return e;
}

} // namespace

TEST_CASE("quaternion multiplication follows the Hamilton table") {
    Quaternion one{1, 0, 0, 0}, i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};

    auto eq = [](const Quaternion& a, const Quaternion& b) {
        return std::abs(a.w - b.w) + std::abs(a.x - b.x) + std::abs(a.y - b.y) +
                   std::abs(a.z - b.z) <
               1e-15;
    };

    CHECK(eq(quat_mul(i, j), k));
    CHECK(eq(quat_mul(j, k), i));
    CHECK(eq(quat_mul(k, i), j));
    CHECK(eq(quat_mul(j, i), Quaternion{0, 0, 0, -1}));
    CHECK(eq(quat_mul(i, i), Quaternion{-1, 0, 0, 0}));

    // (1 + i)(1 + j) = 1 + i + j + k
    Quaternion p{1, 1, 0, 0}, q{1, 0, 1, 0};
    CHECK(eq(quat_mul(p, q), Quaternion{1, 1, 1, 1}));

    // norm multiplicativity on random pairs
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; trial++) {
        Quaternion a{normal_sample(rng), normal_sample(rng), normal_sample(rng),
                     normal_sample(rng)};
        Quaternion b{normal_sample(rng), normal_sample(rng), normal_sample(rng),
                     normal_sample(rng)};
        CHECK(quat_mul(a, b).norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-12));
    }
}

TEST_CASE("standard triple algebra") {
    QTriple t = standard_triple(2);
    Mat id = Mat::Identity(8, 8);

    CHECK(mmax(t.I * t.I + id) == 0.0);
    CHECK(mmax(t.J * t.J + id) == 0.0);
    CHECK(mmax(t.K * t.K + id) == 0.0);
    CHECK(mmax(t.I * t.J - t.K) == 0.0);
    CHECK(mmax(t.J * t.I + t.K) == 0.0);
    CHECK(mmax(t.I * t.J + t.J * t.I) == 0.0);
    CHECK(mmax(t.I.transpose() * t.I - id) == 0.0);

    // each two-form has one unit entry per row
    Mat w = two_form_of(t.I, t.g);
    CHECK(w.norm() == doctest::Approx(std::sqrt(8.0)));
    CHECK(mmax(w + w.transpose()) == 0.0);

    CHECK_THROWS_AS(two_form_of(2.0 * t.I, t.g), QuatError);
    CHECK_THROWS_AS(two_form_of(id, t.g), QuatError);
}

TEST_CASE("four-form values on a quaternionic line frame") {
    QTriple t = standard_triple(2);
    KrainesForm kf = kraines(t);

    Vec Y = basis8(0);
    std::vector<Vec> frame = {Y, t.I * Y, t.J * Y, t.K * Y};
    CHECK(kf.raw.eval(frame) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(kf.normalized.eval(frame) == doctest::Approx(4.0).epsilon(1e-14));

    // the same in the second line of H^2
    Vec Y2 = basis8(4);
    std::vector<Vec> frame2 = {Y2, t.I * Y2, t.J * Y2, t.K * Y2};
    CHECK(kf.normalized.eval(frame2) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("line lemma on adapted frames") {
    QTriple t = standard_triple(2);
    Vec Y = basis8(0);

    SUBCASE("identity basis") {
        LineLemmaResult r = line_lemma_check(Y, t.I * Y, t.J * Y, t.K * Y, t);
        CHECK(r.det == doctest::Approx(1.0));
        CHECK(r.max_z_norm < 1e-14);
        CHECK(r.omega_value == doctest::Approx(4.0));
        CHECK(r.identity_holds);
    }

    SUBCASE("odd permutation flips the sign") {
        LineLemmaResult r = line_lemma_check(Y, t.J * Y, t.I * Y, t.K * Y, t);
        CHECK(r.det == doctest::Approx(-1.0));
        CHECK(r.omega_value == doctest::Approx(-4.0));
        CHECK(r.identity_holds);
    }

    SUBCASE("random rotated in-line frames") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 25; trial++) {
            Vec Yr(8);
            for (int i = 0; i < 8; i++) Yr(i) = normal_sample(rng);
            Yr.normalize();
            Mat B(8, 3);
            B.col(0) = t.I * Yr;
            B.col(1) = t.J * Yr;
            B.col(2) = t.K * Yr;
            Mat raw(3, 3);
            for (int i = 0; i < 9; i++) raw(i / 3, i % 3) = normal_sample(rng);
            Mat Q = Eigen::HouseholderQR<Mat>(raw).householderQ();
            LineLemmaResult r =
                line_lemma_check(Yr, B * Q.col(0), B * Q.col(1), B * Q.col(2), t);
            CHECK(r.max_z_norm < 1e-12);
            CHECK(r.identity_residual < 1e-12);
        }
    }

    SUBCASE("frames spanning two lines leave the identity regime") {
        // (e, Ie, f, If) with f in the second line: determinant 0 yet the
        // form does not vanish, and the result reports the escape.
        Vec f = basis8(4);
        LineLemmaResult r = line_lemma_check(Y, t.I * Y, f, t.I * f, t);
        CHECK(r.det == doctest::Approx(0.0));
        CHECK(r.max_z_norm == doctest::Approx(1.0));
        CHECK(r.omega_value == doctest::Approx(4.0 / 3.0));
        CHECK_FALSE(r.identity_holds);
    }

    SUBCASE("rejects non-orthonormal input") {
        CHECK_THROWS_AS(line_lemma_check(Y, Y, t.J * Y, t.K * Y, t), QuatError);
    }
}

TEST_CASE("line preservation and form isotropy") {
    QTriple t = standard_triple(2);
    std::mt19937_64 rng(23);

    for (int trial = 0; trial < 5; trial++) {
        Mat A = sample_line_preserving(2, rng);
        GnResult gn = in_Gn(A, t);
        CHECK(gn.member);
        CHECK(gn.residual < 1e-10);
        CHECK(isotropy_check(A, t) < 1e-10);
    }

    for (int trial = 0; trial < 5; trial++) {
        Mat A = sample_generic_isometry(8, rng);
        GnResult gn = in_Gn(A, t);
        CHECK_FALSE(gn.member);
        CHECK(gn.residual > 1e-3);
        CHECK(isotropy_check(A, t) > 1e-3);
    }
}

TEST_CASE("four-dimensional cross-product algebra") {
    Mat id4 = Mat::Identity(4, 4);
    Vec U = Vec::Zero(4);
    U(0) = 1.0;

    SUBCASE("reproduces quaternion multiplication for the flat unit") {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 20; trial++) {
            Vec a(4), b(4);
            for (int i = 0; i < 4; i++) {
                a(i) = normal_sample(rng);
                b(i) = normal_sample(rng);
            }
            Vec prod = dim4_product(U, a, b, id4, 1.0);
            Quaternion qa{a(0), a(1), a(2), a(3)}, qb{b(0), b(1), b(2), b(3)};
            Quaternion qc = quat_mul(qa, qb);
            CHECK(std::abs(prod(0) - qc.w) < 1e-13);
            CHECK(std::abs(prod(1) - qc.x) < 1e-13);
            CHECK(std::abs(prod(2) - qc.y) < 1e-13);
            CHECK(std::abs(prod(3) - qc.z) < 1e-13);
        }
    }

    SUBCASE("left multiplication gives a self-dual form") {
        Vec v = Vec::Zero(4);
        v(1) = 1.0;
        Dim4OmegaResult r = dim4_omega(U, v, id4, 1.0);
        CHECK(r.formula_residual < 1e-12);
        // omega = e0 ^ e1 + e2 ^ e3
        CHECK(r.omega(0, 1) == doctest::Approx(1.0));
        CHECK(r.omega(2, 3) == doctest::Approx(1.0));
        CHECK(r.omega(0, 2) == doctest::Approx(0.0));
        CHECK(r.omega(1, 3) == doctest::Approx(0.0));
    }

    SUBCASE("holds for a rescaled metric with the matching unit") {
        Mat g = 4.0 * id4;
        Vec Ug = 0.5 * U;
        Vec vg = Vec::Zero(4);
        vg(1) = 0.5;
        Dim4OmegaResult r = dim4_omega(Ug, vg, g, 1.0);
        CHECK(r.formula_residual < 1e-10);
    }

    SUBCASE("norm multiplicativity for a generic metric") {
        std::mt19937_64 rng(37);
        Mat B(4, 4);
        for (int i = 0; i < 16; i++) B(i / 4, i % 4) = normal_sample(rng);
        Mat g = B.transpose() * B + 0.5 * id4;
        Vec U0(4);
        for (int i = 0; i < 4; i++) U0(i) = normal_sample(rng);
        U0 /= std::sqrt(U0.dot(g * U0));
        for (int trial = 0; trial < 10; trial++) {
            Vec a(4), b(4);
            for (int i = 0; i < 4; i++) {
                a(i) = normal_sample(rng);
                b(i) = normal_sample(rng);
            }
            Vec prod = dim4_product(U0, a, b, g, 1.0);
            double na = a.dot(g * a), nb = b.dot(g * b), np = prod.dot(g * prod);
            CHECK(np == doctest::Approx(na * nb).epsilon(1e-10));
        }
    }
}
