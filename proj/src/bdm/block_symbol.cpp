#include "bdmfio/bdm/block_symbol.hpp"

#include <cmath>

#include "bdmfio/halfline/laguerre.hpp"

namespace bdmfio::bdm {

using halfline::HalfLineBasis;

Eigen::RowVectorXcd jet_row(int j, int N) {
  const auto& basis = HalfLineBasis::get(N);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Ones(N);
  for (int r = 0; r < j; ++r) row = row * basis.deriv_matrix();
  return std::sqrt(2.0) * row.cast<cplx>();
}

Eigen::MatrixXcd rank_truncate(const Eigen::MatrixXcd& m, int rank) {
  if (m.size() == 0 || rank >= std::min(m.rows(), m.cols())) return m;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const int r = std::min<int>(rank, sv.size());
  return svd.matrixU().leftCols(r) * sv.head(r).asDiagonal() *
         svd.matrixV().leftCols(r).adjoint();
}

Eigen::MatrixXcd scale_matrix(double f, int N) {
  if (!(f > 0.0)) throw CheckError("bdm.scale", "phase scale must be positive");
  // u(fx) = f^{−1/2}·(κ_f u)(x) and κ_f is assembled exactly.
  return (HalfLineBasis::get(N).dilation_matrix(f) / std::sqrt(f))
      .cast<cplx>();
}

std::vector<cplx> normal_poly_part(const symbols::ScalarSymbol& a, double xp,
                                   double xip) {
  const int p =
      std::max(0, static_cast<int>(std::floor(a.order + 1e-9)));
  const int q = 8;  // extra negative powers absorbing the Laurent remainder
  const int cols = p + q + 1;
  const int half = cols + 3;  // dyadic samples per side
  Eigen::MatrixXcd V(2 * half, cols);
  Eigen::VectorXcd rhs(2 * half);
  int row = 0;
  for (int side = -1; side <= 1; side += 2) {
    double xi = 64.0 * side;
    for (int k = 0; k < half; ++k, xi *= 2.0) {
      const double t = xi / 1024.0;  // balance the column scales
      for (int r = p; r >= -q; --r)
        V(row, p - r) = std::pow(t, r);  // column for power ξ^r in t units
      rhs(row) = a.amplitude(xp, 0.0, xip, xi);
      ++row;
    }
  }
  Eigen::VectorXcd c = V.colPivHouseholderQr().solve(rhs);
  double scale = 1e-14;
  for (int r = 0; r <= p; ++r)
    scale = std::max(scale, std::abs(c(p - r)) / std::pow(1024.0, r));
  std::vector<cplx> poly(p + 1, cplx(0.0));
  bool any = false;
  for (int r = 0; r <= p; ++r) {
    const cplx coeff = c(p - r) / std::pow(1024.0, r);  // undo t-scaling
    if (std::abs(coeff) > 1e-10 * std::max(1.0, scale)) {
      poly[r] = coeff;
      any = true;
    }
  }
  if (!any) return {};
  while (poly.size() > 1 && poly.back() == cplx(0.0)) poly.pop_back();
  return poly;
}

symbols::ScalarSymbol decaying_part(const symbols::ScalarSymbol& a,
                                    const std::vector<cplx>& poly) {
  symbols::ScalarSymbol a0;
  a0.order = -1.0;  // generic Laurent remainder decay
  auto amp = a.amplitude;
  a0.amplitude = [amp, poly](double xp, double xn, double xip,
                             double xin) -> cplx {
    cplx v = amp(xp, xn, xip, xin);
    double pw = 1.0;
    for (const cplx& cj : poly) {
      v -= cj * pw;
      pw *= xin;
    }
    return v;
  };
  return a0;
}

Eigen::MatrixXcd BdMBlockSymbol::interior_matrix() const {
  const int N = modes;
  if (!interior.present) return Eigen::MatrixXcd::Zero(N, N);
  if (interior.matrix) return *interior.matrix;
  const double f = interior.phase_scale;
  if (interior.multiplication) {
    // u ↦ a(x_n)·u(f x_n): multiplication matrix times the scale matrix.
    const auto& basis = HalfLineBasis::get(N);
    Eigen::MatrixXcd M(N, N);
    for (int k = 0; k < N; ++k) {
      Eigen::VectorXcd col(basis.quad_size());
      for (int i = 0; i < basis.quad_size(); ++i)
        col(i) = interior.symbol.amplitude(xp, basis.nodes()[i], xip, 0.0) *
                 basis.value_matrix()(i, k);
      M.col(k) = basis.project(col);
    }
    if (f == 1.0) return M;
    return M * scale_matrix(f, N);
  }
  const auto ph = f == 1.0 ? normal_ops::NormalPhase::linear_phase()
                           : normal_ops::NormalPhase::scaled(f);
  return normal_ops::truncated_op(interior.symbol, ph, xp, xip, N).mat;
}

Eigen::MatrixXcd BdMBlockSymbol::green_matrix() const {
  const int N = modes;
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(N, N);
  if (green.regular.size() != 0) g += green.regular;
  for (int j = 0; j < static_cast<int>(green.jet_cols.size()); ++j)
    if (green.jet_cols[j].size() != 0)
      g += green.jet_cols[j] * jet_row(j, N);
  return g;
}

normal_ops::OperatorMatrix BdMBlockSymbol::upper_left() const {
  normal_ops::OperatorMatrix op;
  op.mat = interior_matrix() + green_matrix();
  op.xp = xp;
  op.xip = xip;
  op.order = order;
  return op;
}

Eigen::RowVectorXcd BdMBlockSymbol::lower_left() const {
  const int N = modes;
  Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(N);
  if (trace.regular.size() != 0) t += trace.regular;
  for (int j = 0; j < static_cast<int>(trace.jet_weights.size()); ++j)
    if (trace.jet_weights[j] != cplx(0.0))
      t += trace.jet_weights[j] * jet_row(j, N);
  return t;
}

Eigen::VectorXcd BdMBlockSymbol::upper_right() const {
  if (potential.size() != 0) return potential;
  return Eigen::VectorXcd::Zero(modes);
}

Eigen::MatrixXcd BdMBlockSymbol::total_matrix() const {
  const int N = modes;
  Eigen::MatrixXcd T(N + 1, N + 1);
  T.topLeftCorner(N, N) = interior_matrix() + green_matrix();
  T.topRightCorner(N, 1) = upper_right();
  T.bottomLeftCorner(1, N) = lower_left();
  T(N, N) = scalar;
  return T;
}

BdMBlockSymbol assemble_block(const BlockParts& parts, double order, int type,
                              const ChartRefs& charts, double xp, double xip,
                              int modes) {
  const int bound =
      std::max(0, static_cast<int>(std::ceil(order - 1e-9)));
  if (type < 0 || type > bound)
    throw CheckError("bdm.type_bound_violated",
                     "type " + std::to_string(type) + " exceeds max{ceil(m),0} = " +
                         std::to_string(bound));
  if (static_cast<int>(parts.green.jet_cols.size()) > type ||
      static_cast<int>(parts.trace.jet_weights.size()) > type)
    throw CheckError("bdm.type_bound_violated",
                     "jet parts exceed the declared type");
  if (parts.interior.present && parts.interior.symbol.order > order + 1e-9)
    throw CheckError("bdm.order_mismatch",
                     "interior symbol order exceeds the block order");
  if (parts.green.regular.size() != 0 &&
      (parts.green.regular.rows() != modes ||
       parts.green.regular.cols() != modes))
    throw CheckError("bdm.order_mismatch", "green part size mismatch");

  BdMBlockSymbol blk;
  blk.interior = parts.interior;
  blk.green = parts.green;
  blk.potential = parts.potential;
  blk.trace = parts.trace;
  blk.scalar = parts.scalar;
  blk.order = order;
  blk.type = type;
  blk.charts = charts;
  blk.xp = xp;
  blk.xip = xip;
  blk.modes = modes;
  if (blk.interior.present && blk.interior.poly.empty() &&
      !blk.interior.multiplication)
    blk.interior.poly = normal_poly_part(blk.interior.symbol, xp, xip);
  if (blk.green.regular.size() != 0)
    blk.green.regular = rank_truncate(blk.green.regular, blk.green.max_rank);
  return blk;
}

}  // namespace bdmfio::bdm
