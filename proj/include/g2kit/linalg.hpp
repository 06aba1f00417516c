#pragma once

#include <Eigen/Dense>

#include "g2kit/errors.hpp"

namespace g2kit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kSpdEigenFloor = 1e-14;

// Symmetric positive-definite 3x3 matrix. Symmetry is enforced on
// construction; positivity is checked through the eigenvalue floor.
struct SPD3 {
  Mat3 m;

  explicit SPD3(const Mat3& a, const char* what = "SPD3") : m(0.5 * (a + a.transpose())) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= kSpdEigenFloor * std::max(1.0, es.eigenvalues().maxCoeff()))
      throw DependentGenerators(std::string(what) + ": matrix not positive definite");
  }
};

// B with B^{-2} = A, via symmetric eigendecomposition.
inline SPD3 spd_invsqrt(const SPD3& a) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(a.m);
  Vec3 w = es.eigenvalues();
  Mat3 b = es.eigenvectors() * w.cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().transpose();
  return SPD3(b, "spd_invsqrt");
}

inline Mat adjugate(const Mat& m) { return m.determinant() * m.inverse(); }
inline Mat3 adjugate3(const Mat3& m) { return m.determinant() * m.inverse(); }

inline bool is_positive_definite(const Mat& s, double floor = kSpdEigenFloor) {
  Eigen::SelfAdjointEigenSolver<Mat> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > floor * std::max(1.0, std::abs(es.eigenvalues().maxCoeff()));
}

}  // namespace g2kit
