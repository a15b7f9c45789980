#include "tmgeo/runner.hpp"

namespace tmgeo {

namespace {

const char* kFlatTorus = R"(
name = flat_torus_2
m = 2
box x1 = 0 .. 6.283185307179586
box x2 = 0 .. 6.283185307179586
mode = lc
g 1 1 = 1
g 2 2 = 1
check oracle_agreement below 1e-6
check tm_metric_compat below 1e-8
check tm_torsion_free below 1e-8
check tau_zero below 1e-10
check horizontal_bracket below 1e-8
check xi_parallel below 1e-10
check nijenhuis_I below 1e-9
check domega_I below 1e-8
check nabla_I below 1e-8
check dstar_parallel_I below 1e-10
check surface_table below 1e-7
check surface_bracket below 1e-7
check surface_scale below 1e-8
check einstein_flat below 1e-5
check scalar_eq_zero below 1e-6
)";

const char* kFlatC1 = R"(
name = flat_c1_kahler
m = 2
box x1 = -1 .. 1
box x2 = -1 .. 1
mode = lc
g 1 1 = 1
g 2 2 = 1
J 1 2 = -1
J 2 1 = 1
check oracle_agreement below 1e-6
check tm_metric_compat below 1e-8
check tm_torsion_free below 1e-8
check tau_zero below 1e-10
check nijenhuis_I below 1e-9
check domega_I below 1e-8
check nabla_I below 1e-8
check nijenhuis_Jplus below 1e-8
check nijenhuis_Jminus below 1e-8
check domega_Jplus below 1e-8
check domega_Jminus below 1e-8
check nijenhuis_K below 1e-8
check domega_K below 1e-8
check hermitian_DJ below 1e-8
check dstar_parallel_I below 1e-10
check dstar_parallel_J below 1e-10
check qk_defect_L below 1e-7
check qk_alpha_antisym below 1e-8
)";

const char* kFlatC2 = R"(
name = flat_c2_kahler
m = 4
box x1 = -1 .. 1
box x2 = -1 .. 1
box x3 = -1 .. 1
box x4 = -1 .. 1
mode = lc
g 1 1 = 1
g 2 2 = 1
g 3 3 = 1
g 4 4 = 1
J 1 2 = -1
J 2 1 = 1
J 3 4 = -1
J 4 3 = 1
check oracle_agreement below 1e-6
check tm_metric_compat below 1e-8
check tm_torsion_free below 1e-8
check tau_zero below 1e-10
check nijenhuis_I below 1e-9
check domega_I below 1e-8
check nijenhuis_Jplus below 1e-8
check nijenhuis_Jminus below 1e-8
check domega_Jplus below 1e-8
check domega_Jminus below 1e-8
check nijenhuis_K below 1e-8
check domega_K below 1e-8
check hermitian_DJ below 1e-8
check dstar_parallel_I below 1e-10
check dstar_parallel_J below 1e-10
check curvature_holo_Jplus below 1e-9
check curvature_holo_Jminus below 1e-9
check d_kraines below 1e-7
check qk_defect_L below 1e-7
check qk_alpha_antisym below 1e-8
check qk_dOmega_fit below 1e-8
check torsion_decompose_props below 1e-12
)";

const char* kR3Skew = R"(
name = flat_r3_skew_torsion
m = 3
box x1 = -1 .. 1
box x2 = -1 .. 1
box x3 = -1 .. 1
mode = torsioned
g 1 1 = 1
g 2 2 = 1
g 3 3 = 1
T 1 2 3 = 1
T 1 3 2 = -1
T 2 3 1 = 1
T 2 1 3 = -1
T 3 1 2 = 1
T 3 2 1 = -1
check oracle_agreement below 1e-6
check tm_metric_compat below 1e-8
check tm_torsion_free below 1e-8
check tau_nonzero above 1e-6
check horizontal_bracket below 1e-8
check xi_parallel below 1e-10
check domega_I above 1e-4
check nijenhuis_I above 1e-3
check dstar_parallel_I below 1e-10
)";

const char* kType30 = R"(
name = flat_c2_type30_torsion
m = 4
box x1 = -1 .. 1
box x2 = -1 .. 1
box x3 = -1 .. 1
box x4 = -1 .. 1
mode = hermitianized
g 1 1 = 1
g 2 2 = 1
g 3 3 = 1
g 4 4 = 1
J 1 2 = -1
J 2 1 = 1
J 3 4 = -1
J 4 3 = 1
T 1 1 3 = 2
T 1 3 1 = -2
T 1 2 4 = -2
T 1 4 2 = 2
T 2 1 4 = -2
T 2 4 1 = 2
T 2 2 3 = -2
T 2 3 2 = 2
check oracle_agreement below 1e-6
check tm_metric_compat below 1e-8
check tm_torsion_free below 1e-8
check torsion_J_type below 1e-7
check realized_torsion_zero below 1e-10
check tau_zero below 1e-10
check hermitian_DJ below 1e-8
check domega_Jplus below 1e-7
check domega_Jminus below 1e-7
check nijenhuis_Jplus below 1e-8
check nijenhuis_Jminus below 1e-8
check domega_K below 1e-8
check nijenhuis_K below 1e-8
check d_kraines below 1e-7
check dstar_parallel_J below 1e-10
check qk_defect_L below 1e-7
)";

const char* kS2 = R"(
name = s2_round
m = 2
box x1 = 0.3 .. 2.84
box x2 = 0.1 .. 6.18
mode = lc
g 1 1 = 1
g 2 2 = sin(x1)^2
J 1 2 = -sin(x1)
J 2 1 = 1/sin(x1)
check oracle_agreement below 1e-6
check tm_metric_compat below 1e-8
check tm_torsion_free below 1e-8
check tau_zero below 1e-10
check horizontal_bracket below 1e-8
check xi_parallel below 1e-10
check domega_I below 1e-8
check nijenhuis_I above 1e-3
check nabla_I above 1e-3
check dstar_parallel_I below 1e-10
check dstar_parallel_J below 1e-8
check hermitian_DJ below 1e-8
check domega_K below 1e-8
check nijenhuis_K above 1e-3
check domega_Jplus above 1e-3
check domega_Jminus above 1e-3
check nijenhuis_Jplus below 1e-8
check nijenhuis_Jminus below 1e-8
check curvature_holo_Jplus below 1e-9
check curvature_holo_Jminus below 1e-9
check surface_table below 1e-7
check surface_bracket below 1e-7
check surface_scale below 1e-8
check einstein_defect above 1e-3
check scalar_eq_zero below 1e-6
)";

const char* kHyperbolic = R"(
name = hyperbolic_plane
m = 2
box x1 = -1 .. 1
box x2 = 0.5 .. 2
mode = lc
g 1 1 = 1/x2^2
g 2 2 = 1/x2^2
J 1 2 = -1
J 2 1 = 1
check oracle_agreement below 1e-6
check tm_metric_compat below 1e-8
check tm_torsion_free below 1e-8
check tau_zero below 1e-10
check horizontal_bracket below 1e-8
check xi_parallel below 1e-10
check domega_I below 1e-8
check nijenhuis_I above 1e-3
check nabla_I above 1e-3
check dstar_parallel_I below 1e-10
check dstar_parallel_J below 1e-8
check hermitian_DJ below 1e-8
check domega_K below 1e-8
check nijenhuis_K above 1e-3
check domega_Jplus above 1e-3
check domega_Jminus above 1e-3
check nijenhuis_Jplus below 1e-8
check nijenhuis_Jminus below 1e-8
check surface_table below 1e-7
check surface_bracket below 1e-7
check surface_scale below 1e-8
check einstein_defect above 1e-3
check scalar_eq_zero below 1e-6
)";

const char* kObata = R"(
name = r4_conformal_obata
m = 4
box x1 = -0.4 .. 0.4
box x2 = -0.4 .. 0.4
box x3 = -0.4 .. 0.4
box x4 = -0.4 .. 0.4
mode = obata
g 1 1 = exp(2*x1*x2)
g 2 2 = exp(2*x1*x2)
g 3 3 = exp(2*x1*x2)
g 4 4 = exp(2*x1*x2)
J1 1 2 = -1
J1 2 1 = 1
J1 3 4 = -1
J1 4 3 = 1
J2 1 3 = -1
J2 2 4 = 1
J2 3 1 = 1
J2 4 2 = -1
J3 1 4 = -1
J3 2 3 = -1
J3 3 2 = 1
J3 4 1 = 1
J 1 2 = -1
J 2 1 = 1
J 3 4 = -1
J 4 3 = 1
check oracle_agreement below 1e-6
check tm_metric_compat below 1e-8
check tm_torsion_free below 1e-8
check obata_parallel below 1e-8
check obata_metric below 1e-8
check obata_lc_nonparallel above 1e-3
check tau_nonzero above 1e-6
check family_anticommute below 1e-10
check dstar_parallel_J below 1e-8
)";

const char* kR8 = R"(
name = r8_quaternionic_flat
m = 8
box x1 = -1 .. 1
box x2 = -1 .. 1
box x3 = -1 .. 1
box x4 = -1 .. 1
box x5 = -1 .. 1
box x6 = -1 .. 1
box x7 = -1 .. 1
box x8 = -1 .. 1
mode = lc
g 1 1 = 1
g 2 2 = 1
g 3 3 = 1
g 4 4 = 1
g 5 5 = 1
g 6 6 = 1
g 7 7 = 1
g 8 8 = 1
J1 1 2 = -1
J1 2 1 = 1
J1 3 4 = -1
J1 4 3 = 1
J1 5 6 = -1
J1 6 5 = 1
J1 7 8 = -1
J1 8 7 = 1
J2 1 3 = -1
J2 2 4 = 1
J2 3 1 = 1
J2 4 2 = -1
J2 5 7 = -1
J2 6 8 = 1
J2 7 5 = 1
J2 8 6 = -1
J3 1 4 = -1
J3 2 3 = -1
J3 3 2 = 1
J3 4 1 = 1
J3 5 8 = -1
J3 6 7 = -1
J3 7 6 = 1
J3 8 5 = 1
J 1 2 = -1
J 2 1 = 1
J 3 4 = -1
J 4 3 = 1
J 5 6 = -1
J 6 5 = 1
J 7 8 = -1
J 8 7 = 1
check oracle_agreement below 1e-6
check tm_metric_compat below 1e-8
check tm_torsion_free below 1e-8
check tau_zero below 1e-10
check family_anticommute below 1e-10
check family_dkraines below 1e-6
check dstar_parallel_J below 1e-10
check d_kraines below 1e-7
check qk_defect_L below 1e-7
check qk_alpha_antisym below 1e-8
check quatlin_isotropy_group below 1e-10
check quatlin_isotropy_generic above 1e-3
check quatlin_line_lemma below 1e-8
)";

const char* kF2 = R"(
name = surface_torsion_f2
m = 2
box x1 = -1 .. 1
box x2 = -1 .. 1
mode = torsioned
g 1 1 = 1
g 2 2 = 1
T 2 1 2 = 0.7
T 2 2 1 = -0.7
fiber_dir = 1 0
check oracle_agreement below 1e-6
check tm_metric_compat below 1e-8
check tm_torsion_free below 1e-8
check tau_nonzero above 1e-6
check domega_I above 1e-4
check dstar_parallel_I below 1e-10
check surface_table below 1e-7
check surface_bracket below 1e-7
check surface_scale below 1e-8
check einstein_flat below 1e-5
check scalar_eq_f2 below 1e-5
)";

const char* kC2Skew = R"(
name = flat_c2_skew_torsion
m = 4
box x1 = -1 .. 1
box x2 = -1 .. 1
box x3 = -1 .. 1
box x4 = -1 .. 1
mode = torsioned
g 1 1 = 1
g 2 2 = 1
g 3 3 = 1
g 4 4 = 1
J 1 2 = -1
J 2 1 = 1
J 3 4 = -1
J 4 3 = 1
T 3 1 2 = 0.8
T 3 2 1 = -0.8
T 2 1 3 = -0.8
T 2 3 1 = 0.8
T 1 2 3 = 0.8
T 1 3 2 = -0.8
T 4 2 3 = -0.3
T 4 3 2 = 0.3
T 3 2 4 = 0.3
T 3 4 2 = -0.3
T 2 3 4 = -0.3
T 2 4 3 = 0.3
check oracle_agreement below 1e-6
check tm_metric_compat below 1e-8
check tm_torsion_free below 1e-8
check tau_nonzero above 1e-6
check torsion_J_type above 1e-3
check domega_I above 1e-4
check domega_Jplus above 1e-4
check domega_Jminus above 1e-4
check domega_K above 1e-4
check nijenhuis_Jplus above 1e-3
check nijenhuis_Jminus above 1e-3
check nijenhuis_K above 1e-3
check d_kraines above 1e-4
check qk_defect_L above 1e-4
check qk_alpha_antisym below 1e-8
check qk_dOmega_fit below 1e-8
check torsion_decompose_props below 1e-12
)";

} // namespace

const std::vector<Scenario>& builtin_scenarios() {
    static const std::vector<Scenario> all = [] {
        std::vector<Scenario> out;
        for (const char* text : {kFlatTorus, kFlatC1, kFlatC2, kR3Skew, kType30, kS2,
                                 kHyperbolic, kObata, kR8, kF2, kC2Skew}) {
            Scenario s = parse_scenario(text, "builtin");
            validate_scenario(s);
            out.push_back(std::move(s));
        }
        return out;
    }();
    return all;
}

const Scenario* find_builtin(const std::string& name) {
    for (const Scenario& s : builtin_scenarios())
        if (s.name == name) return &s;
    return nullptr;
}

} // namespace tmgeo
