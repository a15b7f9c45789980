#pragma once

#include "tmgeo/jet.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace tmgeo {

// Dense rank-3 array with uniform dimension n.
class T3 {
public:
    T3() = default;
    explicit T3(int n) : n_(n), d_(static_cast<size_t>(n) * n * n, 0.0) {}

    double& operator()(int i, int j, int k) { return d_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
    double operator()(int i, int j, int k) const { return d_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }

    int n() const { return n_; }

    double max_abs() const {
        double m = 0.0;
        for (double v : d_) m = std::max(m, std::abs(v));
        return m;
    }

    T3& operator+=(const T3& o) {
        for (size_t i = 0; i < d_.size(); i++) d_[i] += o.d_[i];
        return *this;
    }
    T3& operator-=(const T3& o) {
        for (size_t i = 0; i < d_.size(); i++) d_[i] -= o.d_[i];
        return *this;
    }
    T3& operator*=(double s) {
        for (double& v : d_) v *= s;
        return *this;
    }

private:
    int n_ = 0;
    std::vector<double> d_;
};

inline T3 operator+(T3 a, const T3& b) { a += b; return a; }
inline T3 operator-(T3 a, const T3& b) { a -= b; return a; }
inline T3 operator*(double s, T3 a) { a *= s; return a; }

// Lexicographically ordered k-element subsets of {0..n-1}.
inline std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> c(k);
    for (int i = 0; i < k; i++) c[i] = i;
    while (true) {
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i) i--;
        if (i < 0) break;
        c[i]++;
        for (int j = i + 1; j < k; j++) c[j] = c[j - 1] + 1;
    }
    return out;
}

// Alternating k-form on R^n.  Components are the values of the form on the
// sorted basis k-tuples; evaluation on arbitrary vectors expands in minors.
// The wedge product below uses the shuffle (determinant) convention, under
// which (omega ^ omega)(a,b,c,d) = 2[w(ab)w(cd) - w(ac)w(bd) + w(ad)w(bc)]
// for a 2-form omega.
class AltForm {
public:
    AltForm() = default;
    AltForm(int n, int k) : n_(n), k_(k), combos_(combinations(n, k)), c_(combos_.size(), 0.0) {
        for (size_t idx = 0; idx < combos_.size(); idx++) {
            uint32_t mask = 0;
            for (int v : combos_[idx]) mask |= (1u << v);
            index_[mask] = idx;
        }
    }

    int n() const { return n_; }
    int k() const { return k_; }
    size_t size() const { return c_.size(); }

    double& operator[](size_t idx) { return c_[idx]; }
    double operator[](size_t idx) const { return c_[idx]; }
    const std::vector<int>& combo(size_t idx) const { return combos_[idx]; }

    // Value on a sorted index set given as a bitmask.
    double by_mask(uint32_t mask) const {
        auto it = index_.find(mask);
        return it == index_.end() ? 0.0 : c_[it->second];
    }

    // Value on basis vectors in arbitrary order (0 on repeated indices).
    double value(const std::vector<int>& idx) const {
        std::vector<int> s = idx;
        int sign = 1;
        for (size_t i = 0; i + 1 < s.size(); i++)
            for (size_t j = 0; j + 1 < s.size() - i; j++)
                if (s[j] > s[j + 1]) {
                    std::swap(s[j], s[j + 1]);
                    sign = -sign;
                }
        uint32_t mask = 0;
        for (size_t i = 0; i < s.size(); i++) {
            if (i + 1 < s.size() && s[i] == s[i + 1]) return 0.0;
            mask |= (1u << s[i]);
        }
        return sign * by_mask(mask);
    }

    double eval(const std::vector<Vec>& vectors) const {
        Mat minor(k_, k_);
        double total = 0.0;
        for (size_t idx = 0; idx < combos_.size(); idx++) {
            if (c_[idx] == 0.0) continue;
            for (int r = 0; r < k_; r++)
                for (int col = 0; col < k_; col++) minor(r, col) = vectors[col](combos_[idx][r]);
            total += c_[idx] * minor.determinant();
        }
        return total;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    AltForm& operator+=(const AltForm& o) {
        for (size_t i = 0; i < c_.size(); i++) c_[i] += o.c_[i];
        return *this;
    }
    AltForm& operator*=(double s) {
        for (double& v : c_) v *= s;
        return *this;
    }

private:
    int n_ = 0, k_ = 0;
    std::vector<std::vector<int>> combos_;
    std::vector<double> c_;
    std::unordered_map<uint32_t, size_t> index_;
};

inline AltForm operator*(double s, AltForm a) { a *= s; return a; }

// Shuffle-convention wedge product.
inline AltForm wedge(const AltForm& a, const AltForm& b) {
    AltForm out(a.n(), a.k() + b.k());
    const auto subsets = combinations(a.k() + b.k(), a.k());
    for (size_t idx = 0; idx < out.size(); idx++) {
        const std::vector<int>& combo = out.combo(idx);
        double total = 0.0;
        for (const auto& pos : subsets) {
            uint32_t maskA = 0, maskB = 0;
            int sign = 1;
            size_t pi = 0;
            for (int p = 0; p < a.k() + b.k(); p++) {
                if (pi < pos.size() && pos[pi] == p) {
                    maskA |= (1u << combo[p]);
                    if ((static_cast<int>(pi) - p) % 2 != 0) sign = -sign;
                    pi++;
                } else {
                    maskB |= (1u << combo[p]);
                }
            }
            total += sign * a.by_mask(maskA) * b.by_mask(maskB);
        }
        out[idx] = total;
    }
    return out;
}

// The 2-form with matrix of values omega(i,j) as an AltForm.
inline AltForm two_form_to_alt(const Mat& omega) {
    AltForm out(static_cast<int>(omega.rows()), 2);
    for (size_t idx = 0; idx < out.size(); idx++) {
        const auto& c = out.combo(idx);
        out[idx] = omega(c[0], c[1]);
    }
    return out;
}

} // namespace tmgeo
