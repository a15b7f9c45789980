#pragma once

#include "tmgeo/tensors.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace tmgeo {

struct ObataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Point jets of an endomorphism field: value, first and second x-derivatives.
struct EndoJets {
    Mat E;
    std::vector<Mat> dE;
    std::vector<std::vector<Mat>> ddE; // empty when second derivatives unused
};

// A_E(direction) = (nabla_direction E) E for the connection with coefficient
// matrices Gam.  Checks E^2 = -Id and the bracket identity [A_E, E] =
// -2 nabla E; verifies A_E is skew w.r.t. g.  Throws ObataError on violation.
Mat a_of_endo(const std::vector<Mat>& Gam, const EndoJets& E, const Mat& g, int direction);

struct ObataConnection {
    std::vector<Mat> Gam;
    std::vector<std::vector<Mat>> dGam;
};

// D = nabla + (1/4)(A_I + A_J + A_K) for the given triple, with coefficient
// derivatives assembled by the product rule (second derivatives of the triple
// required).  The result parallelizes all three structures and stays metric.
ObataConnection obata_connection(const std::vector<Mat>& Gam,
                                 const std::vector<std::vector<Mat>>& dGam,
                                 const std::array<EndoJets, 3>& triple, const Mat& g);

} // namespace tmgeo
