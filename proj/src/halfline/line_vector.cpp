#include "bdmfio/halfline/line_vector.hpp"

#include <cmath>
#include <functional>

namespace bdmfio::halfline {

namespace {
const HalfLineBasis& basis_of(const LineVector& u) {
  return HalfLineBasis::get(u.basis_n);
}
double weight_w(double x) {
  const double t = 1.0 + std::abs(x);
  return 1.0 / (t * t);
}
}  // namespace

LineVector LineVector::plus_from_coeff(Eigen::VectorXcd c) {
  LineVector u;
  u.side = Side::Plus;
  u.basis_n = static_cast<int>(c.size());
  u.coeff = std::move(c);
  return u;
}

LineVector LineVector::minus_from_coeff(Eigen::VectorXcd c) {
  LineVector u;
  u.side = Side::Minus;
  u.basis_n = static_cast<int>(c.size());
  u.coeff = std::move(c);
  return u;
}

LineVector LineVector::plus_from_function(
    const std::function<cplx(double)>& f, int N) {
  const auto& b = HalfLineBasis::get(N);
  Eigen::VectorXcd vals(b.quad_size());
  for (int i = 0; i < b.quad_size(); ++i) vals(i) = f(b.nodes()[i]);
  return plus_from_coeff(b.project(vals));
}

LineVector LineVector::full_from_function(
    const std::function<cplx(double)>& f) {
  const auto& g = FourierGrid::standard();
  LineVector u;
  u.side = Side::Full;
  u.rep = Rep::Space;
  u.samples.resize(g.size());
  for (int k = 0; k < g.size(); ++k) u.samples[k] = f(g.x(k));
  return u;
}

cplx LineVector::eval(double x) const {
  if (side == Side::Plus) return basis_of(*this).eval(coeff, x);
  if (side == Side::Minus) return basis_of(*this).eval(coeff, -x);
  const auto& g = FourierGrid::standard();
  const double t = x / g.dx() + g.size() / 2;
  const int k = static_cast<int>(std::floor(t));
  if (k < 0 || k + 1 >= g.size()) return 0.0;
  const double frac = t - k;
  return samples[k] * (1.0 - frac) + samples[k + 1] * frac;
}

cplx LineVector::jet(int j) const {
  if (side == Side::Plus) return basis_of(*this).jet(coeff, j);
  if (side == Side::Minus) {
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    return sgn * basis_of(*this).jet(coeff, j);
  }
  throw CheckError("jet.side", "jets require a half-line vector");
}

cplx LineVector::ft_extension(double xi) const {
  if (side == Side::Plus) return HalfLineBasis::ft_plus_coeff(coeff, xi);
  if (side == Side::Minus) return HalfLineBasis::ft_minus_coeff(coeff, xi);
  throw CheckError("transform.side", "ft_extension requires a half-line vector");
}

LineVector LineVector::derivative() const {
  if (side == Side::Full)
    throw CheckError("derivative.side", "spectral derivative is half-line only");
  const auto& b = basis_of(*this);
  Eigen::VectorXcd dc = b.deriv_matrix().cast<cplx>() * coeff;
  if (side == Side::Minus) dc = -dc;  // d/dx of u(−x) mirrors the sign
  LineVector out = *this;
  out.coeff = std::move(dc);
  return out;
}

LineVector extend_restrict(const LineVector& u, ExtendRestrict op) {
  const auto& g = FourierGrid::standard();
  switch (op) {
    case ExtendRestrict::EPlus: {
      if (u.side != Side::Plus)
        throw CheckError("extend.side_mismatch", "e+ needs a plus-side vector");
      LineVector out;
      out.side = Side::Full;
      out.rep = Rep::Space;
      out.samples.assign(g.size(), 0.0);
      for (int k = 0; k < g.size(); ++k) {
        const double x = g.x(k);
        if (x > 0.0)
          out.samples[k] = u.eval(x);
        else if (x == 0.0)
          out.samples[k] = 0.5 * u.eval(0.0);  // jump midpoint convention
      }
      return out;
    }
    case ExtendRestrict::EMinus: {
      if (u.side != Side::Minus)
        throw CheckError("extend.side_mismatch", "e− needs a minus-side vector");
      LineVector out;
      out.side = Side::Full;
      out.rep = Rep::Space;
      out.samples.assign(g.size(), 0.0);
      for (int k = 0; k < g.size(); ++k) {
        const double x = g.x(k);
        if (x < 0.0)
          out.samples[k] = u.eval(x);
        else if (x == 0.0)
          out.samples[k] = 0.5 * u.eval(0.0);
      }
      return out;
    }
    case ExtendRestrict::RPlus:
    case ExtendRestrict::RMinus: {
      if (u.side != Side::Full || u.rep != Rep::Space)
        throw CheckError("restrict.side_mismatch",
                         "r± needs a full-line space-domain vector");
      const bool plus = (op == ExtendRestrict::RPlus);
      const int N = 64;
      const auto& b = HalfLineBasis::get(N);
      const double h = g.dx();
      const int k0 = g.size() / 2;  // index of x = 0
      // Evaluate the grid data at the half-line quadrature nodes by cubic
      // interpolation using strictly one-sided samples (x > 0 only for r⁺),
      // so a jump at 0 — and everything on the other side — never leaks in.
      // Nodes beyond the grid edge read as 0 (grid data is truncated there).
      const int last = k0 - 2;  // one-sided samples j = 1..k0−2 from x = 0
      Eigen::VectorXcd vals(b.quad_size());
      for (int i = 0; i < b.quad_size(); ++i) {
        const double x = b.nodes()[i];
        const double t = x / h;  // node in one-sided sample units
        if (t > last) {
          vals(i) = 0.0;
          continue;
        }
        // 4-point stencil j0..j0+3 clamped to [1, last−3] (extrapolates
        // toward 0 for nodes below the first sample)
        int j0 = static_cast<int>(std::floor(t)) - 1;
        j0 = std::max(1, std::min(j0, last - 3));
        cplx acc = 0.0;
        for (int a = 0; a < 4; ++a) {
          const int ja = j0 + a;
          double lag = 1.0;
          for (int bq = 0; bq < 4; ++bq) {
            if (bq == a) continue;
            lag *= (t - (j0 + bq)) / static_cast<double>(ja - (j0 + bq));
          }
          const int idx = plus ? k0 + ja : k0 - ja;
          acc += lag * u.samples[idx];
        }
        vals(i) = acc;
      }
      LineVector out;
      out.side = plus ? Side::Plus : Side::Minus;
      out.basis_n = N;
      out.coeff = b.project(vals);
      return out;
    }
  }
  throw CheckError("extend_restrict.op", "unknown operation");
}

LineVector transform(const LineVector& u, bool forward) {
  if (u.side != Side::Full)
    throw CheckError("transform.side", "transform needs a full-line vector");
  const auto& g = FourierGrid::standard();
  LineVector out = u;
  if (forward) {
    if (u.rep != Rep::Space)
      throw CheckError("transform.rep", "forward expects space-domain samples");
    out.samples = g.forward(u.samples);
    out.rep = Rep::Frequency;
  } else {
    if (u.rep != Rep::Frequency)
      throw CheckError("transform.rep", "inverse expects frequency samples");
    out.samples = g.inverse(u.samples);
    out.rep = Rep::Space;
  }
  return out;
}

LineVector dilate(const LineVector& u, double lambda) {
  if (!(lambda > 0.0))
    throw CheckError("dilate.scale", "λ must be positive");
  const double rt = std::sqrt(lambda);
  if (u.side == Side::Full) {
    if (u.rep != Rep::Space)
      throw CheckError("dilate.rep", "dilate full-line vectors in space domain");
    LineVector out = u;
    const auto& g = FourierGrid::standard();
    for (int k = 0; k < g.size(); ++k)
      out.samples[k] = rt * u.eval(lambda * g.x(k));
    return out;
  }
  const auto& b = basis_of(u);
  Eigen::VectorXcd vals(b.quad_size());
  for (int i = 0; i < b.quad_size(); ++i) {
    const double x = b.nodes()[i];
    vals(i) = rt * (u.side == Side::Plus ? b.eval(u.coeff, lambda * x)
                                         : b.eval(u.coeff, lambda * x));
  }
  LineVector out = u;
  out.coeff = b.project(vals);
  return out;
}

double measure(const LineVector& u, const MeasureSpec& spec) {
  const auto& g = FourierGrid::standard();
  switch (spec.kind) {
    case MeasureKind::L2: {
      if (u.side != Side::Full) return u.coeff.norm();
      double s = 0.0;
      for (const cplx& v : u.samples) s += std::norm(v);
      const double cell = (u.rep == Rep::Space) ? g.dx() : g.dxi() / kTwoPi;
      return std::sqrt(s * cell);
    }
    case MeasureKind::L2w: {
      if (u.side == Side::Full) {
        if (u.rep != Rep::Space)
          throw CheckError("measure.rep", "L2w needs space-domain samples");
        double s = 0.0;
        for (int k = 0; k < g.size(); ++k)
          s += weight_w(g.x(k)) * std::norm(u.samples[k]) * g.dx();
        return std::sqrt(s);
      }
      const auto& b = basis_of(u);
      double s = 0.0;
      for (int i = 0; i < b.quad_size(); ++i) {
        const double x = b.nodes()[i];
        s += b.weights()[i] * weight_w(x) * std::norm(b.eval(u.coeff, x));
      }
      return std::sqrt(s);
    }
    case MeasureKind::Hs: {
      if (u.side == Side::Full) {
        if (u.rep != Rep::Space)
          throw CheckError("measure.rep", "H(s1,s2) needs space samples");
        // Λ^{s1} on the frequency side, then ⟨x⟩^{s2} weight.
        std::vector<cplx> hat = g.forward(u.samples);
        for (int j = 0; j < g.size(); ++j)
          hat[j] *= std::pow(japanese_bracket(g.xi(j)), spec.s1);
        std::vector<cplx> back = g.inverse(hat);
        double s = 0.0;
        for (int k = 0; k < g.size(); ++k)
          s += std::pow(japanese_bracket(g.x(k)), 2.0 * spec.s2) *
               std::norm(back[k]) * g.dx();
        return std::sqrt(s);
      }
      // Interior half-line Sobolev: integer s1, equivalent norm
      // Σ_{j≤s1} ‖⟨x⟩^{s2} u^{(j)}‖²_{L²(ℝ₊)}.
      const int s1 = static_cast<int>(spec.s1);
      if (s1 < 0 || std::abs(spec.s1 - s1) > 1e-12)
        throw CheckError("measure.order", "half-line H^s needs integer s ≥ 0");
      if (s1 > u.basis_n / 4)
        throw CheckError("measure.under_resolved",
                         "requested Sobolev order exceeds N/4 guideline");
      const auto& b = basis_of(u);
      double total = 0.0;
      LineVector d = u;
      for (int j = 0; j <= s1; ++j) {
        for (int i = 0; i < b.quad_size(); ++i) {
          const double x = b.nodes()[i];
          total += b.weights()[i] *
                   std::pow(japanese_bracket(x), 2.0 * spec.s2) *
                   std::norm(b.eval(d.coeff, x));
        }
        if (j < s1) d = d.derivative();
      }
      return std::sqrt(total);
    }
    case MeasureKind::SchwartzSeminorm: {
      if (u.side == Side::Full)
        throw CheckError("measure.side", "seminorms are half-line measures");
      const auto& b = basis_of(u);
      LineVector d = u;
      for (int j = 0; j < spec.gamma; ++j) d = d.derivative();
      double sup = 0.0;
      for (int i = 0; i < b.quad_size(); ++i) {
        const double x = b.nodes()[i];
        sup = std::max(sup, std::pow(x, spec.delta) *
                                std::abs(b.eval(d.coeff, x)));
      }
      return sup;
    }
    case MeasureKind::Jet:
      return std::abs(u.jet(spec.jet_order));
  }
  throw CheckError("measure.kind", "unknown measure");
}

cplx DualVector::pair(const LineVector& u) const {
  cplx s = 0.0;
  if (regular) {
    const auto& b = HalfLineBasis::get(regular->basis_n);
    for (int i = 0; i < b.quad_size(); ++i) {
      const double x = b.nodes()[i];
      s += b.weights()[i] * regular->eval(x) * u.eval(x);
    }
  }
  for (const auto& [j, w] : atoms) {
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    s += w * sgn * u.jet(j);
  }
  return s;
}

cplx DualVector::ft_singular(double xi) const {
  cplx s = 0.0;
  for (const auto& [j, w] : atoms) s += w * std::pow(kI * xi, j);
  return s;
}

DualVector delta_rep(int j) {
  if (j < 0 || j > 8)
    throw CheckError("delta.jet_cap", "Dirac derivative order outside 0..8");
  DualVector d;
  d.atoms.emplace_back(j, cplx{1.0, 0.0});
  return d;
}

}  // namespace bdmfio::halfline
