#include "tmgeo/runner.hpp"

#include "tmgeo/rand.hpp"
#include "tmgeo/surface2d.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <limits>
#include <sstream>

namespace tmgeo {

namespace {

double max_abs(const Mat& A) { return A.cwiseAbs().maxCoeff(); }

using PointFn = std::function<double(const Scenario&, const TMPoint&)>;

// Residual aggregated over every sample point.
CheckOutcome per_point(const Scenario& s, const std::vector<TMPoint>& pts, const PointFn& f) {
    CheckOutcome o;
    o.points = static_cast<int>(pts.size());
    o.min_res = std::numeric_limits<double>::infinity();
    for (const TMPoint& p : pts) {
        double r = f(s, p);
        o.max_res = std::max(o.max_res, r);
        o.min_res = std::min(o.min_res, r);
    }
    if (pts.empty()) o.min_res = 0.0;
    return o;
}

PointFn on_tm(double (*f)(const TMData&)) {
    return [f](const Scenario& s, const TMPoint& p) { return f(tm_at(s, p)); };
}

PointFn on_structure(StructureKind kind, double (*f)(const TMData&, const EndoChart&)) {
    return [kind, f](const Scenario& s, const TMPoint& p) {
        TMData t = tm_at(s, p);
        return f(t, structure_chart(t, kind));
    };
}

PointFn on_dstar(StructureKind kind) {
    return [kind](const Scenario& s, const TMPoint& p) {
        return dstar_residual(tm_at(s, p), kind);
    };
}

double domega_of(const TMData& t, const EndoChart& S) { return d_two_form(t, S).max_abs(); }

double base_structure_derivative(const BaseData& b, const std::vector<Mat>& Gam) {
    double worst = 0.0;
    for (int q = 0; q < 3; q++)
        for (int i = 0; i < b.m; i++)
            worst = std::max(worst, max_abs(b.dJt[q][i] + Gam[i] * b.Jt[q] -
                                            b.Jt[q] * Gam[i]));
    return worst;
}

// Orthonormal pair in R^4 for the family checks.
void stiefel_pair(std::mt19937_64& rng, Vec& a, Vec& b) {
    while (true) {
        a = Vec(4);
        b = Vec(4);
        for (int i = 0; i < 4; i++) {
            a(i) = normal_sample(rng);
            b(i) = normal_sample(rng);
        }
        if (a.norm() < 1e-6) continue;
        a.normalize();
        b -= b.dot(a) * a;
        if (b.norm() < 1e-6) continue;
        b.normalize();
        return;
    }
}

double family_algebra_residual(const TMData& t, const Vec& a, const Vec& b) {
    auto triple = family_triple(t, a, b);
    int n = t.n;
    Mat id = Mat::Identity(n, n);
    double worst = 0.0;
    for (const EndoChart& S : triple) {
        worst = std::max(worst, max_abs(S.S * S.S + id));
        worst = std::max(worst, max_abs(S.S.transpose() * t.G * S.S - t.G));
    }
    worst = std::max(worst, max_abs(triple[0].S * triple[1].S + triple[1].S * triple[0].S));
    return worst;
}

CheckOutcome quatlin_outcome(int count, const std::function<double(std::mt19937_64&)>& draw,
                             std::mt19937_64& rng) {
    CheckOutcome o;
    o.points = count;
    o.min_res = std::numeric_limits<double>::infinity();
    for (int k = 0; k < count; k++) {
        double r = draw(rng);
        o.max_res = std::max(o.max_res, r);
        o.min_res = std::min(o.min_res, r);
    }
    return o;
}

uint64_t id_hash(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<CheckDef> build_registry() {
    std::vector<CheckDef> reg;
    auto add = [&reg](CheckDef def) { reg.push_back(std::move(def)); };

    auto simple = [](std::string id, std::string claim, bool above, double thr, PointFn fn,
                     bool acs = false, bool triple = false, bool surface = false) {
        CheckDef d;
        d.id = std::move(id);
        d.claim = std::move(claim);
        d.default_above = above;
        d.default_threshold = thr;
        d.needs_acs = acs;
        d.needs_triple = triple;
        d.needs_surface = surface;
        PointFn f = std::move(fn);
        d.fn = [f](const Scenario& s, const std::vector<TMPoint>& pts, std::mt19937_64&) {
            return per_point(s, pts, f);
        };
        return d;
    };

    add(simple("oracle_agreement",
               "Structural assembly of the bundle connection matches brute-force Christoffel "
               "symbols of the induced metric",
               false, 1e-6, on_tm(&oracle_agreement)));
    add(simple("tm_metric_compat",
               "The assembled bundle connection is compatible with the induced metric", false,
               1e-8, on_tm(&tm_metric_residual)));
    add(simple("tm_torsion_free",
               "The assembled bundle connection is symmetric in its lower indices", false, 1e-8,
               on_tm(&tm_torsion_residual)));
    add(simple("tau_zero",
               "The torsion-average term of the assembly vanishes when the base connection is "
               "torsion-free",
               false, 1e-10,
               [](const Scenario& s, const TMPoint& p) { return tm_at(s, p).tau_max; }));

    {
        CheckDef d;
        d.id = "tau_nonzero";
        d.claim = "The torsion-average term is active wherever the base torsion is present";
        d.default_above = true;
        d.default_threshold = 1e-6;
        d.fn = [](const Scenario& s, const std::vector<TMPoint>& pts, std::mt19937_64&) {
            CheckOutcome o;
            o.min_res = std::numeric_limits<double>::infinity();
            int skipped = 0;
            for (const TMPoint& p : pts) {
                TMData t = tm_at(s, p);
                if (t.b.Tup.max_abs() <= 1e-3) {
                    skipped++;
                    continue;
                }
                o.points++;
                o.max_res = std::max(o.max_res, t.tau_max);
                o.min_res = std::min(o.min_res, t.tau_max);
            }
            if (o.points == 0) o.min_res = 0.0;
            if (skipped > 0)
                o.note = std::to_string(skipped) + " points below the torsion floor skipped";
            return o;
        };
        add(std::move(d));
    }

    add(simple("horizontal_bracket",
               "Vertical parts of horizontal-lift brackets equal minus the curvature applied "
               "to the fiber point",
               false, 1e-8, on_tm(&horizontal_bracket_residual)));
    add(simple("xi_parallel",
               "The canonical vertical field is parallel along horizontal directions for the "
               "pull-back connection",
               false, 1e-10, on_tm(&xi_parallel_residual)));

    add(simple("nijenhuis_I", "Integrability tensor of the canonical bundle structure", false,
               1e-9, on_structure(StructureKind::I, &nijenhuis_max)));
    add(simple("domega_I",
               "Exterior derivative of the fundamental two-form of the canonical bundle "
               "structure",
               false, 1e-8, on_structure(StructureKind::I, &domega_of)));
    add(simple("nabla_I",
               "Covariant derivative of the canonical structure under the assembled "
               "connection",
               false, 1e-8, on_structure(StructureKind::I, &nabla_endo_max)));
    add(simple("dstar_parallel_I",
               "The pull-back connection parallelizes the canonical structure", false, 1e-10,
               on_dstar(StructureKind::I)));
    add(simple("dstar_parallel_J",
               "The pull-back connection parallelizes the lifted base structure exactly when "
               "the base connection preserves it",
               false, 1e-8, on_dstar(StructureKind::Jminus), true));

    add(simple("nijenhuis_Jplus",
               "Integrability tensor of the lift with aligned fiber sign", false, 1e-8,
               on_structure(StructureKind::Jplus, &nijenhuis_max), true));
    add(simple("nijenhuis_Jminus",
               "Integrability tensor of the lift with opposite fiber sign", false, 1e-8,
               on_structure(StructureKind::Jminus, &nijenhuis_max), true));
    add(simple("nijenhuis_K", "Integrability tensor of the product structure", false, 1e-8,
               on_structure(StructureKind::K, &nijenhuis_max), true));
    add(simple("domega_Jplus",
               "Exterior derivative of the fundamental two-form of the aligned lift", false,
               1e-8, on_structure(StructureKind::Jplus, &domega_of), true));
    add(simple("domega_Jminus",
               "Exterior derivative of the fundamental two-form of the opposite lift", false,
               1e-8, on_structure(StructureKind::Jminus, &domega_of), true));
    add(simple("domega_K",
               "Exterior derivative of the fundamental two-form of the product structure",
               false, 1e-8, on_structure(StructureKind::K, &domega_of), true));

    add(simple("torsion_J_type",
               "Mixed-type and totally skew components of the prescribed torsion relative to "
               "the base structure",
               false, 1e-7,
               [](const Scenario& s, const TMPoint& p) {
                   BaseData b = base_at(s, p.x);
                   TorsionTypeResult r =
                       torsion_J_type(input_torsion_lowered(s, p.x, b.g), b.J);
                   return std::max(r.mixed_max, r.skew3_max);
               },
               true));
    add(simple("curvature_holo_Jplus",
               "Curvature block obstructing integrability of the aligned lift", false, 1e-9,
               [](const Scenario& s, const TMPoint& p) {
                   return curvature_holo_components(base_at(s, p.x)).block_wbar;
               },
               true));
    add(simple("curvature_holo_Jminus",
               "Curvature block obstructing integrability of the opposite lift", false, 1e-9,
               [](const Scenario& s, const TMPoint& p) {
                   return curvature_holo_components(base_at(s, p.x)).block_w;
               },
               true));

    add(simple("d_kraines",
               "Exterior derivative of the fundamental four-form of the induced triple", false,
               1e-7,
               [](const Scenario& s, const TMPoint& p) {
                   TMData t = tm_at(s, p);
                   auto tr = canonical_triple(t);
                   return kraines_tm(t, tr[0], tr[1], tr[2]).d5_max;
               },
               true));
    add(simple("qk_defect_L",
               "Component of the triple's covariant derivative outside the span of the triple",
               false, 1e-7,
               [](const Scenario& s, const TMPoint& p) {
                   TMData t = tm_at(s, p);
                   auto tr = canonical_triple(t);
                   return qk_defect(t, tr[0], tr[1], tr[2]).L_max;
               },
               true));
    add(simple("qk_alpha_antisym",
               "The connection one-forms induced on the triple span are antisymmetric", false,
               1e-8,
               [](const Scenario& s, const TMPoint& p) {
                   TMData t = tm_at(s, p);
                   auto tr = canonical_triple(t);
                   return qk_defect(t, tr[0], tr[1], tr[2]).alpha_antisym_max;
               },
               true));

    {
        CheckDef d;
        d.id = "qk_dOmega_fit";
        d.claim = "The four-form derivative is a constant multiple of the defect five-form";
        d.default_threshold = 1e-8;
        d.needs_acs = true;
        d.fn = [](const Scenario& s, const std::vector<TMPoint>& pts, std::mt19937_64&) {
            CheckOutcome o;
            o.points = static_cast<int>(pts.size());
            o.min_res = std::numeric_limits<double>::infinity();
            double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
            for (const TMPoint& p : pts) {
                TMData t = tm_at(s, p);
                auto tr = canonical_triple(t);
                QkDefect q = qk_defect(t, tr[0], tr[1], tr[2]);
                o.max_res = std::max(o.max_res, q.fit_residual);
                o.min_res = std::min(o.min_res, q.fit_residual);
                cmin = std::min(cmin, q.fit_c);
                cmax = std::max(cmax, q.fit_c);
            }
            if (pts.empty()) {
                o.min_res = 0.0;
            } else {
                char buf[80];
                std::snprintf(buf, sizeof(buf), "fitted constant in [%.6g, %.6g]", cmin, cmax);
                o.note = buf;
            }
            return o;
        };
        add(std::move(d));
    }

    {
        CheckDef d;
        d.id = "family_anticommute";
        d.claim = "Sampled members of the structure family anticommute, square to minus the "
                  "identity and respect the metric";
        d.default_threshold = 1e-10;
        d.needs_triple = true;
        d.fn = [](const Scenario& s, const std::vector<TMPoint>& pts, std::mt19937_64& rng) {
            CheckOutcome o;
            o.points = static_cast<int>(pts.size());
            o.min_res = std::numeric_limits<double>::infinity();
            for (const TMPoint& p : pts) {
                TMData t = tm_at(s, p);
                Vec a, b;
                stiefel_pair(rng, a, b);
                double r = family_algebra_residual(t, a, b);
                o.max_res = std::max(o.max_res, r);
                o.min_res = std::min(o.min_res, r);
            }
            if (pts.empty()) o.min_res = 0.0;
            return o;
        };
        add(std::move(d));
    }
    {
        CheckDef d;
        d.id = "family_dkraines";
        d.claim = "Exterior derivative of the four-form of a sampled family pair";
        d.default_threshold = 1e-6;
        d.needs_triple = true;
        d.fn = [](const Scenario& s, const std::vector<TMPoint>& pts, std::mt19937_64& rng) {
            CheckOutcome o;
            o.points = static_cast<int>(pts.size());
            o.min_res = std::numeric_limits<double>::infinity();
            for (const TMPoint& p : pts) {
                TMData t = tm_at(s, p);
                Vec a, b;
                stiefel_pair(rng, a, b);
                auto tr = family_triple(t, a, b);
                double r = kraines_tm(t, tr[0], tr[1], tr[2]).d5_max;
                o.max_res = std::max(o.max_res, r);
                o.min_res = std::min(o.min_res, r);
            }
            if (pts.empty()) o.min_res = 0.0;
            return o;
        };
        add(std::move(d));
    }

    add(simple("obata_parallel",
               "The triple-averaged connection parallelizes all three structures", false, 1e-8,
               [](const Scenario& s, const TMPoint& p) {
                   BaseData b = base_at(s, p.x);
                   return base_structure_derivative(b, b.Gam);
               },
               false, true));
    add(simple("obata_metric", "The triple-averaged connection remains metric", false, 1e-8,
               [](const Scenario& s, const TMPoint& p) {
                   return metric_compat_residual(base_at(s, p.x));
               },
               false, true));
    add(simple("obata_lc_nonparallel",
               "The plain metric connection fails to parallelize the triple", true, 1e-3,
               [](const Scenario& s, const TMPoint& p) {
                   BaseData b = base_at_mode(s, p.x, ConnectionMode::LeviCivita);
                   return base_structure_derivative(b, b.GamLC);
               },
               false, true));

    add(simple("hermitian_DJ", "The realized base connection preserves the base structure",
               false, 1e-8,
               [](const Scenario& s, const TMPoint& p) {
                   return hermitian_residual(base_at(s, p.x));
               },
               true));
    add(simple("realized_torsion_zero",
               "The realized torsion vanishes after the structure-preserving correction", false,
               1e-10,
               [](const Scenario& s, const TMPoint& p) {
                   return base_at(s, p.x).Tup.max_abs();
               }));

    add(simple("surface_table",
               "The sixteen closed-form covariant derivatives of the canonical surface frame",
               false, 1e-7, &surface_table_residual, false, false, true));
    add(simple("surface_bracket", "Bracket of the two horizontal surface frame fields", false,
               1e-7, &surface_bracket_residual, false, false, true));
    add(simple("surface_scale", "Fiber-scaling behavior of the surface frame invariants",
               false, 1e-8, &surface_scale_residual, false, false, true));
    add(simple("einstein_flat", "The bundle metric over a flat base is Ricci-flat", false, 1e-5,
               [](const Scenario& s, const TMPoint& p) { return einstein_defect(s, p).defect; },
               false, false, true));
    add(simple("einstein_defect",
               "Deviation of the bundle Ricci tensor from a multiple of the metric", true, 1e-3,
               [](const Scenario& s, const TMPoint& p) { return einstein_defect(s, p).defect; },
               false, false, true));
    add(simple("scalar_eq_zero", "The scalar torsion equation evaluates to zero", false, 1e-6,
               [](const Scenario& s, const TMPoint& p) {
                   return std::abs(einstein_defect(s, p).scalar_eq);
               },
               false, false, true));
    add(simple("scalar_eq_f2",
               "The scalar torsion equation reduces to minus the square of the second torsion "
               "function",
               false, 1e-5,
               [](const Scenario& s, const TMPoint& p) {
                   double f2 = surface_frame(s, p).f2;
                   return std::abs(einstein_defect(s, p).scalar_eq + f2 * f2);
               },
               false, false, true));

    {
        CheckDef d;
        d.id = "quatlin_isotropy_group";
        d.claim = "Sampled line-preserving isometries fix the normalized four-form";
        d.default_threshold = 1e-10;
        d.fn = [](const Scenario&, const std::vector<TMPoint>&, std::mt19937_64& rng) {
            QTriple qt = standard_triple(2);
            return quatlin_outcome(
                100, [&qt](std::mt19937_64& r) {
                    return isotropy_check(sample_line_preserving(2, r), qt);
                },
                rng);
        };
        add(std::move(d));
    }
    {
        CheckDef d;
        d.id = "quatlin_isotropy_generic";
        d.claim = "Sampled generic isometries move the normalized four-form";
        d.default_above = true;
        d.default_threshold = 1e-3;
        d.fn = [](const Scenario&, const std::vector<TMPoint>&, std::mt19937_64& rng) {
            QTriple qt = standard_triple(2);
            return quatlin_outcome(
                100, [&qt](std::mt19937_64& r) {
                    return isotropy_check(sample_generic_isometry(8, r), qt);
                },
                rng);
        };
        add(std::move(d));
    }
    {
        CheckDef d;
        d.id = "quatlin_line_lemma";
        d.claim = "On frames adapted to a quaternionic line the normalized four-form equals "
                  "four times the coefficient determinant";
        d.default_threshold = 1e-8;
        d.fn = [](const Scenario&, const std::vector<TMPoint>&, std::mt19937_64& rng) {
            QTriple qt = standard_triple(2);
            return quatlin_outcome(
                100,
                [&qt](std::mt19937_64& r) {
                    Vec Y(8);
                    do {
                        for (int i = 0; i < 8; i++) Y(i) = normal_sample(r);
                    } while (Y.norm() < 1e-6);
                    Y.normalize();
                    Mat raw(3, 3);
                    for (int i = 0; i < 3; i++)
                        for (int j = 0; j < 3; j++) raw(i, j) = normal_sample(r);
                    Mat Q = Eigen::HouseholderQR<Mat>(raw).householderQ();
                    Mat basis(8, 3);
                    basis.col(0) = qt.I * Y;
                    basis.col(1) = qt.J * Y;
                    basis.col(2) = qt.K * Y;
                    Vec Y1 = basis * Q.col(0), Y2 = basis * Q.col(1), Y3 = basis * Q.col(2);
                    return line_lemma_check(Y, Y1, Y2, Y3, qt).identity_residual;
                },
                rng);
        };
        add(std::move(d));
    }

    {
        CheckDef d;
        d.id = "torsion_decompose_props";
        d.claim = "The three torsion components are orthogonal idempotent projections that "
                  "resum to the input";
        d.default_threshold = 1e-12;
        d.fn = [](const Scenario& s, const std::vector<TMPoint>&, std::mt19937_64& rng) {
            CheckOutcome o;
            o.points = 100;
            o.min_res = std::numeric_limits<double>::infinity();
            int m = s.m;
            for (int trial = 0; trial < 100; trial++) {
                Vec x(m);
                for (int i = 0; i < m; i++)
                    x(i) = s.box[i].first +
                           (s.box[i].second - s.box[i].first) * uniform01(rng);
                BaseData b = base_at(s, x);

                T3 T(m);
                for (int i = 0; i < m; i++)
                    for (int j = i + 1; j < m; j++)
                        for (int l = 0; l < m; l++) {
                            double val = normal_sample(rng);
                            T(i, j, l) = val;
                            T(j, i, l) = -val;
                        }

                TorsionParts parts = torsion_decompose(T, b.g, b.ginv);
                double r = (T - (parts.vectorial + parts.skew3 + parts.remainder)).max_abs();
                r = std::max(r, std::abs(torsion_inner(parts.vectorial, parts.skew3, b.ginv)));
                r = std::max(r,
                             std::abs(torsion_inner(parts.vectorial, parts.remainder, b.ginv)));
                r = std::max(r, std::abs(torsion_inner(parts.skew3, parts.remainder, b.ginv)));

                TorsionParts again = torsion_decompose(parts.vectorial, b.g, b.ginv);
                r = std::max(r, (again.vectorial - parts.vectorial).max_abs());
                r = std::max(r, again.skew3.max_abs());
                r = std::max(r, again.remainder.max_abs());
                again = torsion_decompose(parts.skew3, b.g, b.ginv);
                r = std::max(r, (again.skew3 - parts.skew3).max_abs());
                r = std::max(r, again.vectorial.max_abs());
                r = std::max(r, again.remainder.max_abs());
                again = torsion_decompose(parts.remainder, b.g, b.ginv);
                r = std::max(r, (again.remainder - parts.remainder).max_abs());
                r = std::max(r, again.vectorial.max_abs());
                r = std::max(r, again.skew3.max_abs());

                o.max_res = std::max(o.max_res, r);
                o.min_res = std::min(o.min_res, r);
            }
            return o;
        };
        add(std::move(d));
    }

    return reg;
}

bool applicable(const CheckDef& d, const Scenario& s) {
    if (d.needs_acs && !s.has_acs) return false;
    if (d.needs_triple && !s.has_triple) return false;
    if (d.needs_surface && s.m != 2) return false;
    return true;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

} // namespace

const std::vector<CheckDef>& check_registry() {
    static const std::vector<CheckDef> reg = build_registry();
    return reg;
}

const CheckDef* find_check(const std::string& id) {
    for (const CheckDef& d : check_registry())
        if (d.id == id) return &d;
    return nullptr;
}

std::vector<TMPoint> sample_points(const Scenario& s, int count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<TMPoint> pts;
    pts.reserve(count);
    for (int k = 0; k < count; k++) {
        TMPoint p;
        p.x = Vec(s.m);
        for (int i = 0; i < s.m; i++)
            p.x(i) = s.box[i].first + (s.box[i].second - s.box[i].first) * uniform01(rng);
        double radius = 0.1 + 1.9 * uniform01(rng);
        if (s.fiber_dir) {
            p.v = radius * s.fiber_dir->normalized();
        } else {
            Vec dir(s.m);
            do {
                for (int i = 0; i < s.m; i++) dir(i) = normal_sample(rng);
            } while (dir.norm() < 1e-9);
            p.v = radius * dir.normalized();
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

Report run_scenario(const Scenario& s, const std::vector<std::string>& filter,
                    int samples_override, std::optional<uint64_t> seed_override,
                    double tol_scale) {
    auto t_start = std::chrono::steady_clock::now();

    Report r;
    r.scenario = s.name;
    r.samples = samples_override > 0 ? samples_override : s.samples;
    r.seed = seed_override ? *seed_override : s.seed;
    r.version = tool_version();

    std::vector<CheckSpec> todo;
    if (!filter.empty()) {
        for (const std::string& id : filter) {
            const CheckDef* def = find_check(id);
            if (!def) throw ScenarioError("unknown check id: " + id);
            auto it = std::find_if(s.checks.begin(), s.checks.end(),
                                   [&](const CheckSpec& c) { return c.id == id; });
            todo.push_back(it != s.checks.end()
                               ? *it
                               : CheckSpec{id, def->default_above, def->default_threshold});
        }
    } else if (!s.checks.empty()) {
        todo = s.checks;
    } else {
        for (const CheckDef& def : check_registry())
            if (applicable(def, s))
                todo.push_back({def.id, def.default_above, def.default_threshold});
    }

    std::vector<TMPoint> pts = sample_points(s, r.samples, r.seed);

    for (const CheckSpec& spec : todo) {
        const CheckDef* def = find_check(spec.id);
        if (!def) throw ScenarioError("unknown check id: " + spec.id);
        if (!applicable(*def, s))
            throw ScenarioError("check " + spec.id + " is not applicable to scenario " +
                                s.name);
        // Per-check generator, so results do not depend on which other checks run.
        std::mt19937_64 rng(r.seed ^ id_hash(def->id));
        CheckOutcome o = def->fn(s, pts, rng);

        CheckResult res;
        res.id = spec.id;
        res.claim = def->claim;
        res.points = o.points;
        res.above = spec.above;
        res.threshold = spec.threshold * tol_scale;
        res.residual = spec.above ? o.min_res : o.max_res;
        res.pass = spec.above ? res.residual > res.threshold : res.residual <= res.threshold;
        res.note = o.note;
        r.all_pass = r.all_pass && res.pass;
        r.checks.push_back(std::move(res));
    }

    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return r;
}

std::string format_text(const Report& r) {
    std::ostringstream out;
    out << "scenario: " << r.scenario << "\n";
    out << "samples: " << r.samples << "   seed: " << r.seed << "   tool: " << r.version
        << "\n\n";
    for (const CheckResult& c : r.checks) {
        char line[256];
        std::snprintf(line, sizeof(line), "[%s] %-24s %s residual %.3e (require %s %.1e, %d points)",
                      c.pass ? "PASS" : "FAIL", c.id.c_str(), c.above ? "min" : "max",
                      c.residual, c.above ? ">" : "<=", c.threshold, c.points);
        out << line << "\n        " << c.claim << "\n";
        if (!c.note.empty()) out << "        note: " << c.note << "\n";
    }
    char tail[128];
    std::snprintf(tail, sizeof(tail), "\nresult: %s (%zu checks, %.2f s)",
                  r.all_pass ? "PASS" : "FAIL", r.checks.size(), r.wall_seconds);
    out << tail << "\n";
    return out.str();
}

std::string format_json(const Report& r) {
    std::ostringstream out;
    out << "{\"scenario\":\"" << json_escape(r.scenario) << "\",";
    out << "\"seed\":" << r.seed << ",";
    out << "\"samples\":" << r.samples << ",";
    out << "\"version\":\"" << json_escape(r.version) << "\",";
    out << "\"all_pass\":" << (r.all_pass ? "true" : "false") << ",";
    out << "\"checks\":[";
    for (size_t i = 0; i < r.checks.size(); i++) {
        const CheckResult& c = r.checks[i];
        if (i) out << ",";
        out << "{\"id\":\"" << json_escape(c.id) << "\",";
        out << "\"claim\":\"" << json_escape(c.claim) << "\",";
        out << "\"points\":" << c.points << ",";
        out << "\"residual\":" << fmt_double(c.residual) << ",";
        out << "\"threshold\":" << fmt_double(c.threshold) << ",";
        out << "\"direction\":\"" << (c.above ? "above" : "below") << "\",";
        out << "\"pass\":" << (c.pass ? "true" : "false") << ",";
        out << "\"note\":\"" << json_escape(c.note) << "\"}";
    }
    out << "]}";
    return out.str();
}

} // namespace tmgeo
