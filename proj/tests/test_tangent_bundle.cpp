#include "doctest.h"

#include "tmgeo/rand.hpp"
#include "tmgeo/runner.hpp"
#include "tmgeo/tangent_bundle.hpp"

#include <random>

using namespace tmgeo;

namespace {

double mmax(const Mat& A) { return A.cwiseAbs().maxCoeff(); }

TMPoint point_of(std::initializer_list<double> xs, std::initializer_list<double> vs) {
    TMPoint p;
    p.x = Vec(static_cast<int>(xs.size()));
    p.v = Vec(static_cast<int>(vs.size()));
    int i = 0;
    for (double v : xs) p.x(i++) = v;
    i = 0;
    for (double v : vs) p.v(i++) = v;
    return p;
}

} // namespace

TEST_CASE("zero fiber point carries the block metric") {
    const Scenario* s = find_builtin("s2_round");
    REQUIRE(s != nullptr);
    TMPoint p = point_of({1.1, 2.0}, {0.0, 0.0});
    TMData t = tm_at(*s, p);

    BaseData b = base_at(*s, p.x);
    CHECK(mmax(t.G.block(0, 0, 2, 2) - b.g) < 1e-15);
    CHECK(mmax(t.G.block(2, 2, 2, 2) - b.g) < 1e-15);
    CHECK(mmax(t.G.block(0, 2, 2, 2)) < 1e-15);
    CHECK(mmax(t.C) < 1e-15);
}

TEST_CASE("flat base gives a flat bundle") {
    const Scenario* s = find_builtin("flat_torus_2");
    REQUIRE(s != nullptr);
    TMData t = tm_at(*s, point_of({0.3, -0.8}, {1.2, 0.4}));
    for (int A = 0; A < 4; A++) CHECK(mmax(t.Gt[A]) == 0.0);
    CHECK(oracle_agreement(t) == 0.0);
    CHECK(mmax(t.G - Mat::Identity(4, 4)) == 0.0);
}

TEST_CASE("assembly against the brute-force route off the flat case") {
    const Scenario* hyp = find_builtin("hyperbolic_plane");
    const Scenario* s2 = find_builtin("s2_round");
    REQUIRE(hyp != nullptr);
    REQUIRE(s2 != nullptr);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; trial++) {
        TMPoint p;
        p.x = Vec(2);
        p.v = Vec(2);
        p.x << 2 * uniform01(rng) - 1, 0.5 + 2 * uniform01(rng);
        p.v << normal_sample(rng), normal_sample(rng);
        TMData t = tm_at(*hyp, p);
        CHECK(oracle_agreement(t) < 1e-9);
        CHECK(tm_metric_residual(t) < 1e-10);
        CHECK(tm_torsion_residual(t) < 1e-10);

        p.x << 0.4 + 2 * uniform01(rng), 0.2 + 5 * uniform01(rng);
        TMData u = tm_at(*s2, p);
        CHECK(oracle_agreement(u) < 1e-9);
        CHECK(horizontal_bracket_residual(u) < 1e-10);
        CHECK(xi_parallel_residual(u) < 1e-10);
    }
}

TEST_CASE("structure algebra in the induced chart") {
    const Scenario* s = find_builtin("s2_round");
    REQUIRE(s != nullptr);
    TMData t = tm_at(*s, point_of({0.9, 1.4}, {0.8, -0.3}));
    Mat id = Mat::Identity(4, 4);

    EndoChart I = structure_chart(t, StructureKind::I);
    EndoChart Jp = structure_chart(t, StructureKind::Jplus);
    EndoChart Jm = structure_chart(t, StructureKind::Jminus);
    EndoChart K = structure_chart(t, StructureKind::K);

    for (const EndoChart* S : {&I, &Jp, &Jm, &K}) {
        CHECK(mmax(S->S * S->S + id) < 1e-12);
        CHECK(mmax(S->S.transpose() * t.G * S->S - t.G) < 1e-12);
        // two-form antisymmetry
        Mat w = two_form(t, *S);
        CHECK(mmax(w + w.transpose()) < 1e-12);
    }

    // triple relations: K is the product and anticommutes with both factors
    CHECK(mmax(I.S * Jm.S - K.S) < 1e-13);
    CHECK(mmax(I.S * Jm.S + Jm.S * I.S) < 1e-13);
    CHECK(mmax(K.S * I.S - Jm.S) < 1e-13);

    // product derivative agrees with the direct chart construction
    EndoChart KfromProduct = endo_product(I, Jm);
    CHECK(mmax(K.S - KfromProduct.S) < 1e-13);
    for (int A = 0; A < 4; A++) CHECK(mmax(K.dS[A] - KfromProduct.dS[A]) < 1e-11);
}

TEST_CASE("exact form derivative matches finite differences") {
    const Scenario* s = find_builtin("s2_round");
    REQUIRE(s != nullptr);
    TMPoint p = point_of({1.2, 0.7}, {0.5, 0.9});

    TMData t = tm_at(*s, p);
    EndoChart Jm = structure_chart(t, StructureKind::Jminus);
    AltForm dw = d_two_form(t, Jm);
    CHECK(dw.max_abs() > 1e-3); // the form is not closed here

    const double h = 1e-6;
    auto omega_at = [&](int dir, double step) {
        TMPoint q = p;
        if (dir < 2)
            q.x(dir) += step;
        else
            q.v(dir - 2) += step;
        TMData td = tm_at(*s, q);
        return two_form(td, structure_chart(td, StructureKind::Jminus));
    };

    for (size_t idx = 0; idx < dw.size(); idx++) {
        const std::vector<int>& c = dw.combo(idx);
        auto fd_term = [&](int dir, int b, int d) {
            Mat wp = omega_at(dir, h), wm = omega_at(dir, -h);
            return (wp(b, d) - wm(b, d)) / (2 * h);
        };
        double fd = fd_term(c[0], c[1], c[2]) - fd_term(c[1], c[0], c[2]) +
                    fd_term(c[2], c[0], c[1]);
        CHECK(dw[idx] == doctest::Approx(fd).epsilon(5e-6));
    }
}

TEST_CASE("pull-back derivative of the structures") {
    const Scenario* s2 = find_builtin("s2_round");
    const Scenario* skew = find_builtin("flat_c2_skew_torsion");
    REQUIRE(s2 != nullptr);
    REQUIRE(skew != nullptr);

    TMData t = tm_at(*s2, point_of({0.8, 2.2}, {0.6, 0.2}));
    CHECK(dstar_residual(t, StructureKind::I) < 1e-13);
    // the plain surface connection preserves the rotation structure
    CHECK(dstar_residual(t, StructureKind::Jminus) < 1e-13);
    CHECK(dstar_residual(t, StructureKind::K) < 1e-13);

    // with unpreserved base structure the lifted ones stop being parallel
    TMData u = tm_at(*skew, point_of({0.1, 0.2, -0.4, 0.3}, {0.5, 0.1, -0.2, 0.8}));
    CHECK(dstar_residual(u, StructureKind::I) < 1e-13);
    CHECK(dstar_residual(u, StructureKind::Jminus) > 1e-2);
}

TEST_CASE("structure family over a quaternionic base") {
    const Scenario* s = find_builtin("r8_quaternionic_flat");
    REQUIRE(s != nullptr);
    TMPoint p;
    p.x = Vec::Zero(8);
    p.v = Vec::Zero(8);
    p.x << 0.1, -0.3, 0.2, 0.5, -0.1, 0.4, 0.0, 0.3;
    p.v << 1.0, 0.2, 0.0, -0.4, 0.3, 0.0, 0.1, 0.2;
    TMData t = tm_at(*s, p);
    Mat id = Mat::Identity(16, 16);

    Vec e0 = Vec::Zero(4);
    e0(0) = 1.0;
    EndoChart F0 = family_chart(t, e0);
    EndoChart I = structure_chart(t, StructureKind::I);
    CHECK(mmax(F0.S - I.S) < 1e-14);

    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 5; trial++) {
        Vec a(4);
        for (int i = 0; i < 4; i++) a(i) = normal_sample(rng);
        a.normalize();
        EndoChart S = family_chart(t, a);
        CHECK(mmax(S.S * S.S + id) < 1e-12);
        CHECK(mmax(S.S.transpose() * t.G * S.S - t.G) < 1e-12);
    }

    // triple built from an orthonormal pair closes under composition
    Vec a = Vec::Zero(4), b = Vec::Zero(4);
    a(1) = 1.0;
    b(2) = 1.0;
    auto triple = family_triple(t, a, b);
    CHECK(mmax(triple[0].S * triple[1].S - triple[2].S) < 1e-13);
    CHECK(mmax(triple[2].S * triple[2].S + id) < 1e-12);
}

TEST_CASE("four-form of the canonical triple") {
    const Scenario* s = find_builtin("r8_quaternionic_flat");
    REQUIRE(s != nullptr);
    TMPoint p;
    p.x = Vec::Zero(8);
    p.v = Vec::Zero(8);
    p.v(0) = 0.7;
    p.v(5) = -0.2;
    TMData t = tm_at(*s, p);

    auto tr = canonical_triple(t);
    KrainesTM k = kraines_tm(t, tr[0], tr[1], tr[2]);
    CHECK(k.omega4.max_abs() > 0.5);
    CHECK(k.d5_max < 1e-12);

    QkDefect q = qk_defect(t, tr[0], tr[1], tr[2]);
    CHECK(q.alpha_antisym_max < 1e-12);
    CHECK(q.L_max < 1e-12);
}

TEST_CASE("triple requests fail without the needed data") {
    const Scenario* s = find_builtin("flat_torus_2");
    REQUIRE(s != nullptr);
    TMData t = tm_at(*s, point_of({0.1, 0.2}, {0.5, 0.5}));
    CHECK_THROWS_AS(canonical_triple(t), std::invalid_argument);
    Vec a = Vec::Zero(4), b = Vec::Zero(4);
    a(0) = 1.0;
    b(1) = 1.0;
    CHECK_THROWS_AS(family_triple(t, a, b), std::invalid_argument);
}
