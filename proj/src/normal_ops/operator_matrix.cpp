#include "bdmfio/normal_ops/operator_matrix.hpp"

#include "bdmfio/common.hpp"

namespace bdmfio::normal_ops {

using halfline::HalfLineBasis;
using halfline::LineVector;
using halfline::Side;

LineVector OperatorMatrix::apply(const LineVector& u) const {
  if (u.side != domain)
    throw CheckError("op.side_mismatch",
                     "vector side does not match the operator domain");
  Eigen::VectorXcd c = u.coeff;
  if (c.size() != mat.cols()) {
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(mat.cols());
    r.head(std::min<int>(c.size(), mat.cols())) =
        c.head(std::min<int>(c.size(), mat.cols()));
    c = r;
  }
  LineVector out;
  out.side = codomain;
  out.rep = halfline::Rep::Space;
  out.basis_n = static_cast<int>(mat.rows());
  out.coeff = mat * c;
  return out;
}

double OperatorMatrix::op_norm() const {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

OperatorMatrix OperatorMatrix::normalized(double lambda) const {
  const auto& bd = HalfLineBasis::get(static_cast<int>(mat.cols()));
  const auto& bc = HalfLineBasis::get(static_cast<int>(mat.rows()));
  OperatorMatrix out = *this;
  out.mat = bc.dilation_matrix(1.0 / lambda) * mat * bd.dilation_matrix(lambda);
  out.dilation_normalized = true;
  return out;
}

double sobolev_op_norm(const Eigen::MatrixXcd& mat, int s_out, int s_in) {
  auto factor = [](int s, int n) {
    const auto& b = HalfLineBasis::get(n);
    Eigen::MatrixXd G = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd Dk = Eigen::MatrixXd::Identity(n, n);
    for (int r = 1; r <= s; ++r) {
      Dk = b.deriv_matrix() * Dk;
      G += Dk.transpose() * Dk;
    }
    return Eigen::MatrixXd(Eigen::LLT<Eigen::MatrixXd>(G).matrixL().transpose());
  };
  const Eigen::MatrixXd So = factor(s_out, static_cast<int>(mat.rows()));
  const Eigen::MatrixXd Si = factor(s_in, static_cast<int>(mat.cols()));
  const Eigen::MatrixXcd W =
      So * mat * Si.triangularView<Eigen::Upper>().solve(
                     Eigen::MatrixXd::Identity(mat.cols(), mat.cols()));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(W);
  return svd.singularValues()(0);
}

}  // namespace bdmfio::normal_ops
