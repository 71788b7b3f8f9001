#include "g2t/coflow.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "g2t/catalog.hpp"
#include "g2t/errors.hpp"
#include "g2t/exterior.hpp"
#include "g2t/g2.hpp"
#include "g2t/io.hpp"
#include "g2t/metric.hpp"

namespace g2t {

namespace {

Eigen::MatrixXd span_matrix(const std::vector<KForm>& span) {
  if (span.empty()) throw Error(ErrorKind::InvalidParameters, "empty span");
  const int n = span.front().dim(), k = span.front().degree();
  Eigen::MatrixXd S(static_cast<Eigen::Index>(basis_masks(n, k).size()), static_cast<Eigen::Index>(span.size()));
  for (std::size_t i = 0; i < span.size(); ++i) {
    if (span[i].dim() != n || span[i].degree() != k)
      throw Error(ErrorKind::DegreeMismatch, "span elements must share dimension and degree");
    S.col(static_cast<Eigen::Index>(i)) = span[i].to_vector();
  }
  return S;
}

// Least-squares coordinates; residual measured in coefficient norm.
Eigen::VectorXd project(const std::vector<KForm>& span, const KForm& f, double tol) {
  const Eigen::MatrixXd S = span_matrix(span);
  const Eigen::VectorXd v = f.to_vector();
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(S);
  if (qr.rank() < S.cols()) throw Error(ErrorKind::InvalidParameters, "span elements are linearly dependent");
  const Eigen::VectorXd c = qr.solve(v);
  const double res = (S * c - v).norm();
  if (res > tol * (1.0 + v.norm())) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "span not closed (residual %.3g)", res);
    throw Error(ErrorKind::SpanNotClosed, buf);
  }
  return c;
}

int reference_sign(const FlowProblem& p) {
  const int s = four_form_sign(assemble(p, p.psi0));
  if (s == 0) throw Error(ErrorKind::NotStable, "initial 4-form is degenerate");
  return s;
}

Metric flow_metric(const FlowProblem& p, const KForm& psi, int ref_sign) {
  if (four_form_sign(psi) != ref_sign) throw Error(ErrorKind::OrientationFlip, "det B changed sign along the flow");
  try {
    return metric_from_4form(psi, initial_orientation(p));
  } catch (const Error& e) {
    // A degenerate 4-form is where definiteness is lost.
    if (e.kind() == ErrorKind::NotStable) throw Error(ErrorKind::NotDefinite, "4-form became degenerate");
    throw;
  }
}

Eigen::VectorXd rhs_with(const FlowProblem& p, const Eigen::VectorXd& c, int ref_sign) {
  const KForm psi = assemble(p, c);
  const Metric m = flow_metric(p, psi, ref_sign);
  return project(p.span, hodge_laplacian(p.alg, m, psi), p.tol_closure);
}

Eigen::VectorXd rk4_step(const FlowProblem& p, const Eigen::VectorXd& c, double h, int ref_sign) {
  const Eigen::VectorXd k1 = rhs_with(p, c, ref_sign);
  const Eigen::VectorXd k2 = rhs_with(p, c + 0.5 * h * k1, ref_sign);
  const Eigen::VectorXd k3 = rhs_with(p, c + 0.5 * h * k2, ref_sign);
  const Eigen::VectorXd k4 = rhs_with(p, c + h * k3, ref_sign);
  return c + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double sub_volume(const Eigen::MatrixXd& g, const std::vector<int>& idx) {
  if (idx.empty()) return 0.0;
  Eigen::MatrixXd sub(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) {
      if (idx[a] < 1 || idx[a] > g.rows() || idx[b] < 1 || idx[b] > g.rows())
        throw Error(ErrorKind::IndexOutOfRange, "volume monitor index");
      sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = g(idx[a] - 1, idx[b] - 1);
    }
  return std::sqrt(std::max(0.0, sub.determinant()));
}

}  // namespace

KForm assemble(const FlowProblem& p, const Eigen::VectorXd& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != p.span.size())
    throw Error(ErrorKind::DimensionMismatch, "coefficient vector does not match the span");
  const Eigen::MatrixXd S = span_matrix(p.span);
  return KForm::from_vector(p.span.front().dim(), p.span.front().degree(), S * coeffs);
}

Eigen::VectorXd span_coordinates(const std::vector<KForm>& span, const KForm& psi, double tol) {
  return project(span, psi, tol);
}

int initial_orientation(const FlowProblem& p) { return p.orientation < 0 ? -1 : 1; }

Eigen::VectorXd rhs(const FlowProblem& p, const Eigen::VectorXd& coeffs) {
  return rhs_with(p, coeffs, reference_sign(p));
}

FlowMonitors monitors(const FlowProblem& p, const Eigen::VectorXd& coeffs) {
  const KForm psi = assemble(p, coeffs);
  const Metric m = flow_metric(p, psi, reference_sign(p));
  KForm phi = hodge_star(m, psi);
  phi.prune(kDropTol);
  const G2Structure s = G2Structure::make(p.alg, phi);
  const G2Torsion t = torsion(s);
  FlowMonitors out;
  out.tau0 = t.tau0;
  out.theta = t.theta;
  out.T = t.T;
  out.lee_norm = norm(s.metric, t.theta);
  out.torsion_norm = norm(s.metric, t.T);
  out.dT_norm = norm(s.metric, d(p.alg, t.T));
  out.tau2_norm = norm(s.metric, t.tau2);
  out.det_g = s.metric.g.determinant();
  out.vol_assoc = sub_volume(s.metric.g, p.assoc);
  out.vol_coassoc = sub_volume(s.metric.g, p.coassoc);
  return out;
}

std::vector<FlowState> integrate(const FlowProblem& p) {
  if (!(p.dt > 0.0)) throw Error(ErrorKind::InvalidParameters, "dt must be positive");
  const int ref_sign = reference_sign(p);
  const double span_t = std::abs(p.t_end);
  const long steps = std::max(1L, static_cast<long>(std::ceil(span_t / p.dt - 1e-9)));
  const double h = p.t_end / static_cast<double>(steps);

  std::vector<FlowState> out;
  Eigen::VectorXd c = p.psi0;
  out.push_back({0.0, c, monitors(p, c)});
  for (long i = 1; i <= steps; ++i) {
    Eigen::VectorXd next = rk4_step(p, c, h, ref_sign);
    if (p.check_every > 0 && (i % p.check_every == 0 || i == 1)) {
      const Eigen::VectorXd half = rk4_step(p, rk4_step(p, c, 0.5 * h, ref_sign), 0.5 * h, ref_sign);
      const double est = (next - half).cwiseAbs().maxCoeff();
      if (est > p.step_tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "local error %.3g at t = %.6g", est, h * static_cast<double>(i));
        throw Error(ErrorKind::StepTooLarge, buf);
      }
      next = half;
    }
    c = next;
    const double t = (i == steps) ? p.t_end : h * static_cast<double>(i);
    if (i == steps || (p.sample_every > 0 && i % p.sample_every == 0)) out.push_back({t, c, monitors(p, c)});
  }
  return out;
}

std::string flow_csv(const std::vector<FlowState>& states, std::size_t span_size) {
  std::ostringstream os;
  os << "t";
  for (std::size_t k = 1; k <= span_size; ++k) os << ",c" << k;
  os << ",tau0,lee_norm,torsion_norm,dT_norm,det_g,vol_assoc,vol_coassoc\n";
  char buf[32];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
    os << buf;
  };
  for (const auto& s : states) {
    put(s.t);
    for (Eigen::Index k = 0; k < s.coeffs.size(); ++k) os << ',', put(s.coeffs(k));
    const auto& m = s.monitors;
    for (double x : {m.tau0, m.lee_norm, m.torsion_norm, m.dT_norm, m.det_g, m.vol_assoc, m.vol_coassoc})
      os << ',', put(x);
    os << '\n';
  }
  return os.str();
}

void write_flow_csv(const std::string& path, const std::vector<FlowState>& states, std::size_t span_size) {
  write_file_atomic(path, flow_csv(states, span_size));
}

FlowProblem coflow_example(int which, double t_end, double dt) {
  if (which != 1 && which != 2) throw Error(ErrorKind::InvalidParameters, "coflow examples are 1 and 2");
  const CatalogEntry e = builtin(which == 1 ? "su2_r4" : "su2su2_r");
  FlowProblem p;
  p.alg = e.alg;
  p.span = e.spans.at("coflow");
  p.psi0 = span_coordinates(p.span, e.forms.at(which == 1 ? "psi" : "psi0"));
  p.t_end = t_end;
  p.dt = dt;
  return p;
}

}  // namespace g2t
