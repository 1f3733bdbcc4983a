#include "hdx/spectral.hpp"

#include "hdx/error.hpp"
#include "hdx/fixtures.hpp"
#include "hdx/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace hdx {

WalkMatrix::WalkMatrix(const SimplicialComplex& x) {
  const std::size_t nv = x.vertex_count();
  if (x.dim() < 1 || x.faces(1).size() == 0) throw StructuralError("walk needs a complex with edges");
  if (auto c = x.component_count(); c != 1)
    throw StructuralError("1-skeleton is disconnected (" + std::to_string(c) + " components)");
  const auto& edges = x.faces(1);
  degree_.assign(nv, 0);
  start_.assign(nv + 1, 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto f = edges.face(e);
    ++start_[f[0] + 1];
    ++start_[f[1] + 1];
  }
  for (std::size_t v = 0; v < nv; ++v) start_[v + 1] += start_[v];
  nbr_.resize(start_.back());
  count_.resize(start_.back());
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto f = edges.face(e);
    const std::uint64_t c = edges.containing(e);
    nbr_[fill[f[0]]] = f[1];
    count_[fill[f[0]]++] = c;
    nbr_[fill[f[1]]] = f[0];
    count_[fill[f[1]]++] = c;
    degree_[f[0]] += c;
    degree_[f[1]] += c;
  }
}

Eigen::MatrixXd WalkMatrix::transition() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t u = 0; u < size(); ++u)
    for (std::size_t q = start_[u]; q < start_[u + 1]; ++q)
      p(u, nbr_[q]) = static_cast<double>(count_[q]) / static_cast<double>(degree_[u]);
  return p;
}

Eigen::MatrixXd WalkMatrix::symmetrized() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t u = 0; u < size(); ++u)
    for (std::size_t q = start_[u]; q < start_[u + 1]; ++q)
      s(u, nbr_[q]) = static_cast<double>(count_[q]) /
                      std::sqrt(static_cast<double>(degree_[u]) * static_cast<double>(degree_[nbr_[q]]));
  return s;
}

void WalkMatrix::apply_symmetrized(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  y.setZero(static_cast<Eigen::Index>(size()));
  for (std::size_t u = 0; u < size(); ++u) {
    double acc = 0;
    for (std::size_t q = start_[u]; q < start_[u + 1]; ++q)
      acc += static_cast<double>(count_[q]) * x[nbr_[q]] / std::sqrt(static_cast<double>(degree_[nbr_[q]]));
    y[u] = acc / std::sqrt(static_cast<double>(degree_[u]));
  }
}

Eigen::VectorXd WalkMatrix::top_vector() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(size()));
  for (std::size_t u = 0; u < size(); ++u) v[u] = std::sqrt(static_cast<double>(degree_[u]));
  return v.normalized();
}

std::vector<double> walk_spectrum(const WalkMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.symmetrized(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed", 0);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

namespace {

EigenResult lanczos_second(const WalkMatrix& m, double tol) {
  const auto n = static_cast<Eigen::Index>(m.size());
  const Eigen::VectorXd top = m.top_vector();
  const Eigen::Index max_steps = std::min<Eigen::Index>(n - 1, 2000);
  Eigen::MatrixXd basis(n, max_steps + 1);
  std::vector<double> alpha, beta;
  // Deterministic start vector orthogonal to the top eigenvector.
  Eigen::VectorXd q(n);
  for (Eigen::Index k = 0; k < n; ++k) q[k] = 1.0 + 0.5 * std::sin(1.0 + 7.0 * static_cast<double>(k));
  q -= top.dot(q) * top;
  q.normalize();
  basis.col(0) = q;
  Eigen::VectorXd w;
  EigenResult out;
  out.method = EigenMethod::iterative;
  for (Eigen::Index j = 0; j < max_steps; ++j) {
    m.apply_symmetrized(basis.col(j), w);
    alpha.push_back(basis.col(j).dot(w));
    // Full reorthogonalization, twice, against the top vector and the basis.
    for (int pass = 0; pass < 2; ++pass) {
      w -= top.dot(w) * top;
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    }
    double b = w.norm();
    const Eigen::Index k = j + 1;
    if (k % 10 == 0 || b < 1e-12 || k == max_steps) {
      Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
      Eigen::VectorXd sub = Eigen::Map<Eigen::VectorXd>(beta.data(), k - 1);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const Eigen::Index last = k - 1;
      out.value = es.eigenvalues()[last];
      out.residual = std::abs(b * es.eigenvectors()(k - 1, last));
      out.iterations = static_cast<std::size_t>(k);
      if (out.residual < tol || b < 1e-12) return out;
    }
    if (b < 1e-12) break;
    beta.push_back(b);
    basis.col(j + 1) = w / b;
  }
  if (out.residual >= tol) throw NumericalError("Lanczos did not converge", out.residual);
  return out;
}

} // namespace

EigenResult second_eigenvalue(const WalkMatrix& m, EigenMethod method, std::size_t dense_limit, double tol) {
  if (m.size() < 2) throw ParameterError("second eigenvalue needs at least two vertices");
  if (method == EigenMethod::automatic) method = m.size() <= dense_limit ? EigenMethod::dense : EigenMethod::iterative;
  if (method == EigenMethod::iterative && m.size() > 2) return lanczos_second(m, tol);
  auto ev = walk_spectrum(m);
  EigenResult r;
  r.value = ev[ev.size() - 2];
  r.method = EigenMethod::dense;
  return r;
}

namespace {

LinkSpectrum spectrum_entry(const SimplicialComplex& c, std::vector<Vertex> face, std::string label) {
  LinkSpectrum e;
  e.face = std::move(face);
  e.label = std::move(label);
  e.vertices = c.vertex_count();
  e.components = c.component_count();
  if (e.components == 1) e.second = second_eigenvalue(WalkMatrix(c)).value;
  return e;
}

LocalSpectralReport finish(std::vector<LinkSpectrum> links, double threshold, double tolerance) {
  LocalSpectralReport r;
  r.links = std::move(links);
  r.threshold = threshold;
  r.tolerance = tolerance;
  bool all_connected = true;
  for (const auto& l : r.links) {
    if (!l.second) {
      all_connected = false;
      continue;
    }
    if (!r.max_second || *l.second > *r.max_second) r.max_second = l.second;
  }
  r.pass = all_connected && r.max_second && *r.max_second <= threshold + tolerance;
  return r;
}

std::string face_label(const std::vector<Vertex>& f) {
  std::string s = "{";
  for (std::size_t q = 0; q < f.size(); ++q) s += (q ? "," : "") + std::to_string(f[q]);
  return s + "}";
}

} // namespace

LocalSpectralReport local_spectral_report(const SimplicialComplex& x, double threshold, double tolerance,
                                          unsigned workers) {
  std::vector<std::vector<Vertex>> faces{{}};
  for (int k = 0; k <= x.dim() - 2; ++k)
    for (std::size_t i = 0; i < x.faces(k).size(); ++i) {
      auto f = x.faces(k).face(i);
      faces.emplace_back(f.begin(), f.end());
    }
  std::vector<LinkSpectrum> links(faces.size());
  parallel_for(faces.size(), workers, [&](std::size_t i) {
    Link l = link(x, faces[i]);
    links[i] = spectrum_entry(l.complex, faces[i], face_label(faces[i]));
  });
  return finish(std::move(links), threshold, tolerance);
}

LocalSpectralReport ko_link_report(std::uint32_t n, std::uint32_t p, std::uint32_t s, std::uint32_t d,
                                   double threshold, double tolerance, std::uint64_t cap, unsigned workers) {
  if (n < 2) throw ParameterError("vertex links have edges only for n >= 2");
  auto ks = ko_subgroups(n, p, s, d, cap);
  std::vector<LinkSpectrum> links(n + 1);
  parallel_for(n + 1, workers, [&](std::size_t i) {
    auto cc = vertex_link(ks, i);
    links[i] = spectrum_entry(cc.complex, {}, "K_" + std::to_string(i));
  });
  return finish(std::move(links), threshold, tolerance);
}

} // namespace hdx
