#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace lidskii {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double pi = 3.14159265358979323846;

}  // namespace lidskii
