#include "tmgeo/scenario.hpp"

#include "tmgeo/base_manifold.hpp"

#include <Eigen/Cholesky>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace tmgeo {

void ExprGrid::init(const std::vector<int>& d) {
    dims = d;
    size_t total = 1;
    for (int x : d) total *= static_cast<size_t>(x);
    cells.assign(total, Expr());
    given.assign(total, false);
}

size_t ExprGrid::flat(const std::vector<int>& idx) const {
    size_t f = 0;
    for (size_t i = 0; i < dims.size(); i++) f = f * dims[i] + idx[i];
    return f;
}

bool ExprGrid::has(const std::vector<int>& idx) const { return given[flat(idx)]; }

const Expr* ExprGrid::at(const std::vector<int>& idx) const {
    size_t f = flat(idx);
    return given[f] ? &cells[f] : nullptr;
}

void ExprGrid::set(const std::vector<int>& idx, Expr e) {
    size_t f = flat(idx);
    cells[f] = std::move(e);
    given[f] = true;
}

bool ExprGrid::any() const {
    for (bool b : given)
        if (b) return true;
    return false;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw ScenarioError(origin + ":" + std::to_string(line) + ": " + msg);
}

int parse_index(const std::string& tok, int m, const std::string& origin, int line) {
    try {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 1 || v > m) throw std::invalid_argument("range");
        return v - 1;
    } catch (...) {
        fail(origin, line, "bad index '" + tok + "' (want 1.." + std::to_string(m) + ")");
    }
}

double parse_number(const std::string& tok, const std::string& origin, int line) {
    try {
        size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trail");
        return v;
    } catch (...) {
        fail(origin, line, "bad number '" + tok + "'");
    }
}

Expr parse_cell(const std::string& src, int m, const std::string& origin, int line) {
    try {
        return parse_expr(src, m);
    } catch (const ExprError& e) {
        fail(origin, line, "expression error at offset " + std::to_string(e.offset) + ": " + e.what());
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string point_str(const Vec& x) {
    std::string s = "(";
    for (int i = 0; i < x.size(); i++) {
        if (i) s += ", ";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "x%d=%.6g", i + 1, x(i));
        s += buf;
    }
    return s + ")";
}

void save_grid(std::ostringstream& out, const std::string& key, const ExprGrid& grid) {
    if (grid.dims.empty()) return;
    std::vector<int> idx(grid.dims.size(), 0);
    while (true) {
        if (grid.has(idx)) {
            out << key;
            for (int v : idx) out << " " << (v + 1);
            out << " = " << grid.at(idx)->source() << "\n";
        }
        int d = static_cast<int>(idx.size()) - 1;
        while (d >= 0 && ++idx[d] == grid.dims[d]) idx[d--] = 0;
        if (d < 0) break;
    }
}

} // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    Scenario s;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool grids_ready = false;

    auto need_m = [&](int line) {
        if (s.m <= 0) fail(origin, line, "dimension m must be set before this line");
        if (!grids_ready) {
            s.box.resize(s.m, {0.0, 1.0});
            s.g.init({s.m, s.m});
            s.T.init({s.m, s.m, s.m});
            s.J.init({s.m, s.m});
            for (auto& t : s.triple) t.init({s.m, s.m});
            grids_ready = true;
        }
    };

    while (std::getline(in, raw)) {
        lineno++;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.rfind("check", 0) == 0 && line.find('=') == std::string::npos) {
            auto toks = split_ws(line);
            if (toks.size() != 4 || (toks[2] != "below" && toks[2] != "above"))
                fail(origin, lineno, "want: check <id> below|above <threshold>");
            CheckSpec c;
            c.id = toks[1];
            c.above = toks[2] == "above";
            c.threshold = parse_number(toks[3], origin, lineno);
            s.checks.push_back(c);
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
        std::string key_part = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        auto keys = split_ws(key_part);
        if (keys.empty()) fail(origin, lineno, "empty key");
        const std::string& k = keys[0];

        if (k == "name") {
            s.name = value;
        } else if (k == "m") {
            s.m = static_cast<int>(parse_number(value, origin, lineno));
            if (s.m < 1 || s.m > 16) fail(origin, lineno, "m out of range");
        } else if (k == "box") {
            need_m(lineno);
            if (keys.size() != 2 || keys[1].size() < 2 || keys[1][0] != 'x')
                fail(origin, lineno, "want: box xN = lo .. hi");
            int ci = parse_index(keys[1].substr(1), s.m, origin, lineno);
            size_t dots = value.find("..");
            if (dots == std::string::npos) fail(origin, lineno, "want: box xN = lo .. hi");
            double lo = parse_number(trim(value.substr(0, dots)), origin, lineno);
            double hi = parse_number(trim(value.substr(dots + 2)), origin, lineno);
            if (!(lo < hi)) fail(origin, lineno, "box interval is empty");
            s.box[ci] = {lo, hi};
        } else if (k == "mode") {
            if (value == "lc")
                s.mode = ConnectionMode::LeviCivita;
            else if (value == "torsioned")
                s.mode = ConnectionMode::Torsioned;
            else if (value == "hermitianized")
                s.mode = ConnectionMode::Hermitianized;
            else if (value == "obata")
                s.mode = ConnectionMode::Obata;
            else
                fail(origin, lineno, "unknown mode '" + value + "'");
        } else if (k == "g") {
            need_m(lineno);
            if (keys.size() != 3) fail(origin, lineno, "want: g i j = expr");
            int i = parse_index(keys[1], s.m, origin, lineno);
            int j = parse_index(keys[2], s.m, origin, lineno);
            s.g.set({i, j}, parse_cell(value, s.m, origin, lineno));
        } else if (k == "T") {
            need_m(lineno);
            if (keys.size() != 4) fail(origin, lineno, "want: T k i j = expr");
            int kk = parse_index(keys[1], s.m, origin, lineno);
            int i = parse_index(keys[2], s.m, origin, lineno);
            int j = parse_index(keys[3], s.m, origin, lineno);
            s.T.set({kk, i, j}, parse_cell(value, s.m, origin, lineno));
            s.has_torsion = true;
        } else if (k == "J" || k == "J1" || k == "J2" || k == "J3") {
            need_m(lineno);
            if (keys.size() != 3) fail(origin, lineno, "want: " + k + " i j = expr");
            int i = parse_index(keys[1], s.m, origin, lineno);
            int j = parse_index(keys[2], s.m, origin, lineno);
            Expr e = parse_cell(value, s.m, origin, lineno);
            if (k == "J") {
                s.J.set({i, j}, std::move(e));
                s.has_acs = true;
            } else {
                s.triple[k[1] - '1'].set({i, j}, std::move(e));
                s.has_triple = true;
            }
        } else if (k == "fiber_dir") {
            need_m(lineno);
            auto toks = split_ws(value);
            if (static_cast<int>(toks.size()) != s.m)
                fail(origin, lineno, "fiber_dir needs m components");
            Vec d(s.m);
            for (int i = 0; i < s.m; i++) d(i) = parse_number(toks[i], origin, lineno);
            if (d.norm() < 1e-12) fail(origin, lineno, "fiber_dir must be nonzero");
            s.fiber_dir = d;
        } else if (k == "samples") {
            s.samples = static_cast<int>(parse_number(value, origin, lineno));
            if (s.samples < 1) fail(origin, lineno, "samples must be positive");
        } else if (k == "seed") {
            s.seed = static_cast<uint64_t>(parse_number(value, origin, lineno));
        } else {
            fail(origin, lineno, "unknown key '" + k + "'");
        }
    }

    if (s.m <= 0) throw ScenarioError(origin + ": dimension m missing");
    if (!grids_ready) throw ScenarioError(origin + ": no geometric data");
    if (!s.g.any()) throw ScenarioError(origin + ": metric entries missing");
    if (s.name.empty()) s.name = origin;

    // Mirror metric entries given on one side of the diagonal only.
    for (int i = 0; i < s.m; i++)
        for (int j = 0; j < s.m; j++)
            if (s.g.has({i, j}) && !s.g.has({j, i})) {
                Expr copy = *s.g.at({i, j});
                s.g.set({j, i}, std::move(copy));
            }

    if (s.mode == ConnectionMode::Torsioned && !s.has_torsion)
        throw ScenarioError(origin + ": mode torsioned needs torsion components");
    if (s.mode == ConnectionMode::Hermitianized && !s.has_acs)
        throw ScenarioError(origin + ": mode hermitianized needs J");
    if (s.mode == ConnectionMode::Obata && !s.has_triple)
        throw ScenarioError(origin + ": mode obata needs a J1,J2,J3 triple");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Scenario s = parse_scenario(buf.str(), path);
    validate_scenario(s);
    return s;
}

std::string save_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "name = " << s.name << "\n";
    out << "m = " << s.m << "\n";
    for (int i = 0; i < s.m; i++)
        out << "box x" << (i + 1) << " = " << fmt(s.box[i].first) << " .. "
            << fmt(s.box[i].second) << "\n";
    const char* mode = "lc";
    if (s.mode == ConnectionMode::Torsioned) mode = "torsioned";
    if (s.mode == ConnectionMode::Hermitianized) mode = "hermitianized";
    if (s.mode == ConnectionMode::Obata) mode = "obata";
    out << "mode = " << mode << "\n";
    save_grid(out, "g", s.g);
    save_grid(out, "T", s.T);
    save_grid(out, "J", s.J);
    for (int q = 0; q < 3; q++) save_grid(out, "J" + std::to_string(q + 1), s.triple[q]);
    if (s.fiber_dir) {
        out << "fiber_dir =";
        for (int i = 0; i < s.m; i++) out << " " << fmt((*s.fiber_dir)(i));
        out << "\n";
    }
    out << "samples = " << s.samples << "\n";
    out << "seed = " << s.seed << "\n";
    for (const auto& c : s.checks)
        out << "check " << c.id << " " << (c.above ? "above" : "below") << " "
            << fmt(c.threshold) << "\n";
    return out.str();
}

namespace {

Mat eval_grid_matrix(const ExprGrid& grid, const Vec& x, int m) {
    Mat M = Mat::Zero(m, m);
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            if (const Expr* e = grid.at({i, j})) M(i, j) = e->eval(x);
    return M;
}

} // namespace

void validate_scenario(const Scenario& s) {
    std::mt19937_64 rng(12345);
    auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

    for (int pt = 0; pt < 16; pt++) {
        Vec x(s.m);
        for (int i = 0; i < s.m; i++)
            x(i) = s.box[i].first + (s.box[i].second - s.box[i].first) * uniform();

        Mat g = eval_grid_matrix(s.g, x, s.m);
        if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10)
            throw ScenarioError("metric not symmetric at " + point_str(x));
        Eigen::LLT<Mat> llt(g);
        if (llt.info() != Eigen::Success)
            throw ScenarioError("metric not positive definite at " + point_str(x));

        if (s.has_torsion) {
            for (int k = 0; k < s.m; k++)
                for (int i = 0; i < s.m; i++)
                    for (int j = 0; j < s.m; j++) {
                        double a = s.T.at({k, i, j}) ? s.T.at({k, i, j})->eval(x) : 0.0;
                        double b = s.T.at({k, j, i}) ? s.T.at({k, j, i})->eval(x) : 0.0;
                        if (std::abs(a + b) > 1e-10)
                            throw ScenarioError("torsion not antisymmetric in its lower indices at " +
                                                point_str(x));
                    }
        }

        auto check_acs = [&](const ExprGrid& grid, const std::string& label) {
            Mat J = eval_grid_matrix(grid, x, s.m);
            Mat sq = J * J + Mat::Identity(s.m, s.m);
            if (sq.cwiseAbs().maxCoeff() > 1e-8)
                throw ScenarioError(label + " squared is not -identity at " + point_str(x) +
                                    " (residual " + fmt(sq.cwiseAbs().maxCoeff()) + ")");
            Mat orth = J.transpose() * g * J - g;
            if (orth.cwiseAbs().maxCoeff() > 1e-8)
                throw ScenarioError(label + " is not g-orthogonal at " + point_str(x));
            return J;
        };

        if (s.has_acs) check_acs(s.J, "J");
        if (s.has_triple) {
            Mat J1 = check_acs(s.triple[0], "J1");
            Mat J2 = check_acs(s.triple[1], "J2");
            Mat J3 = check_acs(s.triple[2], "J3");
            if ((J1 * J2 - J3).cwiseAbs().maxCoeff() > 1e-8)
                throw ScenarioError("triple does not satisfy J1 J2 = J3 at " + point_str(x));
            if ((J1 * J2 + J2 * J1).cwiseAbs().maxCoeff() > 1e-8)
                throw ScenarioError("J1 and J2 do not anticommute at " + point_str(x));
        }
    }

    if (s.fiber_dir && static_cast<int>(s.fiber_dir->size()) != s.m)
        throw ScenarioError("fiber_dir dimension mismatch");
}

} // namespace tmgeo
