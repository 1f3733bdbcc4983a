#pragma once

// Weighted random walks on 1-skeletons and their second eigenvalues.

#include "hdx/complex.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace hdx {

/// Transition matrix of the walk moving along an edge with probability
/// proportional to its weight. Stored sparsely with integer edge counts, so
/// exact checks stay possible.
class WalkMatrix {
public:
  /// StructuralError if the 1-skeleton is disconnected or has no edges.
  explicit WalkMatrix(const SimplicialComplex& x);

  std::size_t size() const noexcept { return degree_.size(); }
  /// Sum of incident edge counts; proportional to the stationary measure.
  std::uint64_t degree(Vertex v) const { return degree_[v]; }
  Eigen::MatrixXd transition() const;
  /// D^1/2 P D^-1/2, symmetric with the same spectrum as P.
  Eigen::MatrixXd symmetrized() const;
  /// y = S x for the symmetrized matrix.
  void apply_symmetrized(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  /// sqrt of the stationary distribution: the top eigenvector of S.
  Eigen::VectorXd top_vector() const;

private:
  std::vector<std::uint64_t> degree_;
  std::vector<std::size_t> start_;
  std::vector<Vertex> nbr_;
  std::vector<std::uint64_t> count_;
};

enum class EigenMethod { automatic, dense, iterative };

struct EigenResult {
  double value = 0;
  double residual = 0;
  EigenMethod method = EigenMethod::dense;
  std::size_t iterations = 0;
};

/// Second largest eigenvalue. Dense: symmetric eigensolver. Iterative:
/// Lanczos with full reorthogonalization against the top eigenvector,
/// certified by its Ritz residual (NumericalError above tol).
/// automatic picks dense up to dense_limit vertices.
EigenResult second_eigenvalue(const WalkMatrix& m, EigenMethod method = EigenMethod::automatic,
                              std::size_t dense_limit = 3000, double tol = 1e-9);

/// All eigenvalues, ascending (dense).
std::vector<double> walk_spectrum(const WalkMatrix& m);

struct LinkSpectrum {
  std::vector<Vertex> face;  // empty for the complex itself
  std::string label;
  std::size_t vertices = 0;
  std::size_t components = 0;
  std::optional<double> second;  // none when disconnected
};

struct LocalSpectralReport {
  std::vector<LinkSpectrum> links;
  double threshold = 0;
  double tolerance = 0;
  std::optional<double> max_second;
  bool pass = false;  // every link connected and max_second <= threshold + tolerance
};

/// Links of every face of dimension -1..dim-2 (their 1-skeletons are walks).
LocalSpectralReport local_spectral_report(const SimplicialComplex& x, double threshold, double tolerance = 1e-6,
                                          unsigned workers = 0);

/// Vertex links CC(K_i, {K_i n K_j}) of the complex built from
/// SL_{n+1}(F_p[t]/t^s) and K_0..K_n; the group itself is never enumerated.
LocalSpectralReport ko_link_report(std::uint32_t n, std::uint32_t p, std::uint32_t s, std::uint32_t d,
                                   double threshold, double tolerance = 1e-6, std::uint64_t cap = 1ull << 26,
                                   unsigned workers = 0);

} // namespace hdx
