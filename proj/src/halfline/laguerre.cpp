#include "bdmfio/halfline/laguerre.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace bdmfio::halfline {
namespace {

// Laguerre functions ℓ_k(u) = e^{−u/2} L_k(u), k = 0..kmax, bounded for all
// u ≥ 0 (the recurrence inherits the L_k three-term relation).  The seed
// e^{−u/2} underflows for the far nodes of large rules (u ≳ 1400) even
// though ℓ_k near the turning point k ≈ u/4 is O(1), so the recurrence runs
// on 2^shift-scaled values, unwinding the shift as the functions grow.
void laguerre_functions(double u, int kmax, double* ell) {
  constexpr double kLn2 = 0.6931471805599453;
  int shift = 0;
  double arg = -0.5 * u;
  if (arg < -700.0) {
    shift = static_cast<int>((-700.0 - arg) / kLn2) + 1;
    arg += shift * kLn2;
  }
  double lm = 0.0, l0 = std::exp(arg);
  for (int k = 0; k <= kmax; ++k) {
    ell[k] = std::ldexp(l0, -shift);
    double l1 = ((2.0 * k + 1.0 - u) * l0 - k * lm) / (k + 1.0);
    if (std::abs(l1) > 1e250 && shift > 0) {
      const int down = std::min(shift, 830);  // 2^830 ≈ 1e250
      l1 = std::ldexp(l1, -down);
      l0 = std::ldexp(l0, -down);
      shift -= down;
    }
    lm = l0;
    l0 = l1;
  }
}

// Gauss-Laguerre rule (weight e^{−u} on ℝ₊) with the e^{u} factor folded in,
// so ∫₀^∞ g(u) du ≈ Σ ŵ_i g(u_i) is exact for g = e^{−u}·poly(deg ≤ 2M−1).
// Eigenvalues of the Jacobi matrix seed the nodes; each node is then Newton
// polished as a root of ℓ_M, and the weights use the stable Christoffel sum
// ŵ_i = e^{u_i} w_i = 1/Σ_{k<M} ℓ_k(u_i)² — all in bounded arithmetic, so
// the far-tail weights stay accurate where eigenvector components underflow.
void gauss_laguerre_modified(int M, std::vector<double>& u,
                             std::vector<double>& w_mod) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(M, M);
  for (int i = 0; i < M; ++i) {
    J(i, i) = 2.0 * i + 1.0;
    if (i + 1 < M) {
      J(i, i + 1) = J(i + 1, i) = static_cast<double>(i + 1);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  u.resize(M);
  w_mod.resize(M);
  std::vector<double> ell(M + 1);
  for (int i = 0; i < M; ++i) {
    double ui = es.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      laguerre_functions(ui, M, ell.data());
      // ℓ_M′ = M(ℓ_M − ℓ_{M−1})/u − ℓ_M/2 (from u L_M′ = M(L_M − L_{M−1}))
      const double dlm =
          M * (ell[M] - ell[M - 1]) / ui - 0.5 * ell[M];
      const double step = ell[M] / dlm;
      ui -= step;
      if (std::abs(step) < 1e-15 * ui) break;
    }
    laguerre_functions(ui, M, ell.data());
    double s = 0.0;
    for (int k = 0; k < M; ++k) s += ell[k] * ell[k];
    u[i] = ui;
    w_mod[i] = 1.0 / s;
  }
}

std::map<int, std::unique_ptr<HalfLineBasis>>& cache() {
  static std::map<int, std::unique_ptr<HalfLineBasis>> c;
  return c;
}
std::mutex cache_mutex;

}  // namespace

const HalfLineBasis& HalfLineBasis::get(int N) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& c = cache();
  auto it = c.find(N);
  if (it == c.end())
    it = c.emplace(N, std::unique_ptr<HalfLineBasis>(new HalfLineBasis(N)))
             .first;
  return *it->second;
}

HalfLineBasis::HalfLineBasis(int N) : N_(N) {
  // Quadrature exact for products of two basis elements (degree 2N−2 in the
  // u = 2x variable) with margin for smooth non-polynomial integrands.
  const int M = std::max(5 * N / 2, N + 32);
  std::vector<double> u, wm;
  gauss_laguerre_modified(M, u, wm);
  nodes_.resize(M);
  weights_.resize(M);
  for (int i = 0; i < M; ++i) {
    nodes_[i] = 0.5 * u[i];
    weights_[i] = 0.5 * wm[i];
  }
  values_.resize(M, N);
  std::vector<double> row(N);
  for (int i = 0; i < M; ++i) {
    eval_basis(nodes_[i], row.data());
    for (int k = 0; k < N; ++k) values_(i, k) = row[k];
  }
  deriv_ = Eigen::MatrixXd::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    deriv_(k, k) = -1.0;
    for (int j = 0; j < k; ++j) deriv_(j, k) = -2.0;
  }
}

void HalfLineBasis::eval_basis(double x, double* out) const {
  // ℓ_k(u) = e^{−u/2} L_k(u) via the bounded recurrence
  // (k+1)ℓ_{k+1} = (2k+1−u)ℓ_k − k ℓ_{k−1};  φ_k(x) = √2 ℓ_k(2x).
  const double u = 2.0 * x;
  const double s2 = std::sqrt(2.0);
  double lm = 0.0, l0 = std::exp(-0.5 * u);
  for (int k = 0; k < N_; ++k) {
    out[k] = s2 * l0;
    const double l1 = ((2.0 * k + 1.0 - u) * l0 - k * lm) / (k + 1.0);
    lm = l0;
    l0 = l1;
  }
}

Eigen::MatrixXd HalfLineBasis::gram() const {
  Eigen::MatrixXd W =
      Eigen::Map<const Eigen::VectorXd>(weights_.data(), weights_.size())
          .asDiagonal();
  return values_.transpose() * W * values_;
}

Eigen::VectorXcd HalfLineBasis::project(
    const Eigen::VectorXcd& node_values) const {
  Eigen::VectorXcd weighted = node_values;
  for (int i = 0; i < quad_size(); ++i) weighted(i) *= weights_[i];
  return values_.transpose().cast<cplx>() * weighted;
}

cplx HalfLineBasis::eval(const Eigen::VectorXcd& coeff, double x) const {
  std::vector<double> row(N_);
  eval_basis(x, row.data());
  cplx s = 0.0;
  for (int k = 0; k < N_; ++k) s += coeff(k) * row[k];
  return s;
}

cplx HalfLineBasis::jet(const Eigen::VectorXcd& coeff, int j) const {
  Eigen::VectorXcd c = coeff;
  for (int r = 0; r < j; ++r) c = deriv_.cast<cplx>() * c;
  return std::sqrt(2.0) * c.sum();  // φ_k(0) = √2 for every k
}

Eigen::MatrixXd HalfLineBasis::dilation_matrix(double lambda) const {
  if (!(lambda > 0.0)) throw CheckError("dilate.scale", "λ must be positive");
  // entries ⟨κ_λ φ_j, φ_k⟩ = (1/2π) λ^{−1/2} ∫ φ̂_j(ξ/λ) conj(φ̂_k(ξ)) dξ on
  // the Fourier side.  The circle substitution ξ = tan(θ/2) makes the
  // integrand a smooth periodic function whose Fourier coefficients decay
  // like μ^{|n|}, μ = |λ−1|/(λ+1) (poles of φ̂_j(ξ/λ) sit at |w| = μ^{±1}),
  // so the midpoint trapezoid rule converges geometrically.  The physical-
  // side Gauss rule loses digits once λ ≳ 4: κ_λ φ_j outruns the node layout.
  const double mu = std::abs(lambda - 1.0) / (lambda + 1.0);
  int M = 2 * N_ + 64;
  if (mu > 1e-12) M += static_cast<int>(40.0 / -std::log(mu));
  const double rt = 1.0 / std::sqrt(lambda);
  Eigen::MatrixXcd A(M, N_), B(M, N_);
  for (int m = 0; m < M; ++m) {
    const double th = -kPi + (m + 0.5) * kTwoPi / M;
    const double xi = std::tan(0.5 * th);
    cplx va = ft_plus_first(xi / lambda);
    const cplx ra = ft_plus_ratio(xi / lambda);
    // conj(φ̂_k(ξ)) · dξ/dθ = √2 (−1)^k e^{i(k+1/2)θ} / (2 cos(θ/2))
    cplx vb = std::sqrt(0.5) * std::exp(kI * (0.5 * th)) / std::cos(0.5 * th);
    const cplx rb = -std::exp(kI * th);
    for (int j = 0; j < N_; ++j) {
      A(m, j) = va;
      B(m, j) = vb;
      va *= ra;
      vb *= rb;
    }
  }
  return ((rt / M) * (B.transpose() * A)).real();
}

cplx HalfLineBasis::ft_plus(int k, double xi) {
  cplx v = ft_plus_first(xi);
  const cplx r = ft_plus_ratio(xi);
  for (int j = 0; j < k; ++j) v *= r;
  return v;
}

cplx HalfLineBasis::ft_minus(int k, double xi) {
  cplx v = ft_minus_first(xi);
  const cplx r = ft_minus_ratio(xi);
  for (int j = 0; j < k; ++j) v *= r;
  return v;
}

cplx HalfLineBasis::ft_plus_coeff(const Eigen::VectorXcd& coeff, double xi) {
  cplx v = ft_plus_first(xi);
  const cplx r = ft_plus_ratio(xi);
  cplx s = 0.0;
  for (int k = 0; k < coeff.size(); ++k) {
    s += coeff(k) * v;
    v *= r;
  }
  return s;
}

cplx HalfLineBasis::ft_minus_coeff(const Eigen::VectorXcd& coeff, double xi) {
  cplx v = ft_minus_first(xi);
  const cplx r = ft_minus_ratio(xi);
  cplx s = 0.0;
  for (int k = 0; k < coeff.size(); ++k) {
    s += coeff(k) * v;
    v *= r;
  }
  return s;
}

}  // namespace bdmfio::halfline
