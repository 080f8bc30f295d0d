#pragma once

#include <Eigen/Dense>

namespace fracdeg {

using Scalar = double;

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using Points2 = Eigen::Matrix2Xd;

}  // namespace fracdeg
