#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include "decwave/dec.hpp"
#include "decwave/dual_metrics.hpp"
#include "decwave/error.hpp"
#include "decwave/media.hpp"
#include "decwave/mesh.hpp"
#include "decwave/source.hpp"

namespace decwave {

enum class Scheme { Explicit, Implicit, SemiImplicit };
enum class Boundary { Natural, DirichletZero };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::Explicit: return "explicit";
    case Scheme::Implicit: return "implicit";
    case Scheme::SemiImplicit: return "semi_implicit";
  }
  return "?";
}

inline const char* to_string(Boundary b) { return b == Boundary::DirichletZero ? "dirichlet_zero" : "natural"; }

inline std::optional<Scheme> parse_scheme(std::string_view s) {
  if (s == "explicit") return Scheme::Explicit;
  if (s == "implicit") return Scheme::Implicit;
  if (s == "semi_implicit") return Scheme::SemiImplicit;
  return std::nullopt;
}

inline std::optional<Boundary> parse_boundary(std::string_view s) {
  if (s == "natural") return Boundary::Natural;
  if (s == "dirichlet_zero") return Boundary::DirichletZero;
  return std::nullopt;
}

struct LinearSolveConfig {
  double tolerance = 1e-10;
  /// Defaults to 10 x vertex count when unset.
  std::optional<std::size_t> max_iterations;

  void validate() const {
    if (!(tolerance > 0.0 && tolerance < 1.0)) throw Error("linear solver tolerance must lie in (0, 1)");
    if (max_iterations && *max_iterations < 1) throw Error("linear solver needs at least one iteration");
  }
};

/// Pressure history of a running simulation.
///
/// `history[k]` holds the field at time level n-1-k, i.e. `history[0]` is the
/// most recent field and corresponds to time `step_index * dt`. A step writes
/// level n into a scratch buffer and rotates it to the front.
struct SolverState {
  std::size_t step_index = 0;
  std::array<Field, 4> history;
  double dt = 0.0;
  Scheme scheme = Scheme::Explicit;
  Boundary boundary = Boundary::Natural;
  std::vector<std::size_t> boundary_vertices;
  /// A step whose max |p| exceeds this aborts with DivergenceError.
  double divergence_limit = std::numeric_limits<double>::infinity();
  Field scratch;

  std::size_t vertex_count() const { return static_cast<std::size_t>(history[0].size()); }
  Field& latest() { return history[0]; }
  const Field& latest() const { return history[0]; }
  double time() const { return static_cast<double>(step_index) * dt; }
};

inline SolverState init_state(const SimplicialMesh& mesh, double dt, Scheme scheme, Boundary boundary) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("time step must be positive and finite");
  SolverState s;
  s.dt = dt;
  s.scheme = scheme;
  s.boundary = boundary;
  const auto n = static_cast<Eigen::Index>(mesh.vertex_count());
  for (auto& level : s.history) level = Field::Zero(n);
  s.scratch = Field::Zero(n);
  s.boundary_vertices = mesh.boundary_vertices();
  return s;
}

/// L p^{n-1} at one vertex split into coefficient * p^n + known.
struct LSplit {
  double unknown_coefficient = 0.0;
  double known = 0.0;
};

inline LSplit nonlinear_rhs_L(const SolverState& state, const MaterialField& media, std::size_t v) {
  const MaterialParams& m = media[v];
  const auto i = static_cast<Eigen::Index>(v);
  const double p1 = state.history[0][i];
  const double p2 = state.history[1][i];
  const double p3 = state.history[2][i];
  const double p4 = state.history[3][i];
  const double dt = state.dt;
  const double c2 = m.c0 * m.c0;
  const double c4 = c2 * c2;
  const double inv_cdt2 = 1.0 / (c2 * dt * dt);

  LSplit out;
  out.unknown_coefficient = inv_cdt2;
  out.known = -(2.0 * p1 - p2) * inv_cdt2 - m.delta / (c4 * dt * dt * dt) * (p1 - 3.0 * p2 + 3.0 * p3 - p4) -
              m.beta / (m.rho0 * c4 * dt * dt) * (p1 * p1 - 2.0 * p2 * p2 + p3 * p3);
  return out;
}

/// Adds (additive) or writes (hard) the source signal at time t into the latest level.
inline void inject_source(SolverState& state, const SourceSpec& spec, double t) {
  const double s = source_signal(t, spec);
  for (std::size_t v : spec.vertices) {
    double& value = state.history[0][static_cast<Eigen::Index>(v)];
    value = spec.mode == SourceMode::Hard ? s : value + s;
  }
}

namespace detail {

inline void require_scheme(const SolverState& state, Scheme expected) {
  if (state.scheme != expected)
    throw Error(std::string("state is configured for the ") + to_string(state.scheme) + " scheme, not " +
                to_string(expected));
}

// Applies the boundary policy to state.scratch, checks it, and makes it the latest level.
inline void commit_step(SolverState& state) {
  Field& next = state.scratch;
  if (state.boundary == Boundary::DirichletZero)
    for (std::size_t v : state.boundary_vertices) next[static_cast<Eigen::Index>(v)] = 0.0;

  const std::size_t step = state.step_index + 1;
  if (!next.allFinite()) throw DivergenceError("non-finite pressure", step);
  const double peak = next.size() ? next.cwiseAbs().maxCoeff() : 0.0;
  if (peak > state.divergence_limit)
    throw DivergenceError("max |p| = " + std::to_string(peak) + " exceeds divergence limit", step);

  std::swap(state.history[3], next);
  std::rotate(state.history.begin(), state.history.begin() + 3, state.history.end());
  state.step_index = step;
}

}  // namespace detail

/// Explicit scheme: Laplacian at level n-1, solved pointwise for p^n.
inline void step_explicit(SolverState& state, const LaplacianOperator& laplacian, const MaterialField& media) {
  detail::require_scheme(state, Scheme::Explicit);
  const Field lap = laplacian.apply(state.history[0]);
  Field& next = state.scratch;
  for (Eigen::Index i = 0; i < lap.size(); ++i) {
    const LSplit l = nonlinear_rhs_L(state, media, static_cast<std::size_t>(i));
    next[i] = (lap[i] - l.known) / l.unknown_coefficient;
  }
  detail::commit_step(state);
}

/// Semi-implicit scheme: neighbors at level n-1, center at level n; one scalar equation per vertex.
inline void step_semi_implicit(SolverState& state, const LaplacianOperator& laplacian, const MaterialField& media) {
  detail::require_scheme(state, Scheme::SemiImplicit);
  const Field& prev = state.history[0];
  const Field lap = laplacian.apply(prev);
  const auto& m = laplacian.matrix.matrix();
  Field& next = state.scratch;
  for (Eigen::Index i = 0; i < lap.size(); ++i) {
    // Sum of neighbor weights over the dual area, i.e. minus the diagonal.
    const double center = -m.coeff(i, i);
    const double neighbors = lap[i] + center * prev[i];
    const LSplit l = nonlinear_rhs_L(state, media, static_cast<std::size_t>(i));
    const double denom = center + l.unknown_coefficient;
    if (denom == 0.0) throw Error("semi-implicit update has zero coefficient at vertex " + std::to_string(i));
    next[i] = (neighbors - l.known) / denom;
  }
  detail::commit_step(state);
}

/// Implicit scheme: solves (Laplacian - C) p^n = known for the whole field.
///
/// Rows are scaled by the dual areas so the system matrix
/// star0 (C - Laplacian) is symmetric positive definite; it is assembled once
/// for a fixed time step and solved by preconditioned conjugate gradients.
class ImplicitSystem {
 public:
  ImplicitSystem(const LaplacianOperator& laplacian, const DualMetrics& metrics, const MaterialField& media,
                 double dt, LinearSolveConfig cfg = {})
      : dt_(dt), cfg_(cfg) {
    cfg_.validate();
    const auto n = laplacian.size();
    if (static_cast<std::size_t>(n) != metrics.dual_area.size() || media.size() != metrics.dual_area.size())
      throw Error("implicit system inputs disagree on vertex count");
    area_.resize(n);
    for (Eigen::Index v = 0; v < n; ++v) area_[v] = metrics.dual_area[static_cast<std::size_t>(v)];

    std::vector<Eigen::Triplet<double>> trips;
    const auto& lap = laplacian.matrix.matrix();
    trips.reserve(static_cast<std::size_t>(2 * lap.nonZeros() + n));
    for (Eigen::Index r = 0; r < lap.outerSize(); ++r) {
      for (SparseOperator::Matrix::InnerIterator it(lap, r); it; ++it) {
        const double a = -0.5 * area_[r] * it.value();
        trips.emplace_back(r, it.col(), a);
        trips.emplace_back(it.col(), r, a);
      }
      const double c0 = media[static_cast<std::size_t>(r)].c0;
      trips.emplace_back(r, r, area_[r] / (c0 * c0 * dt * dt));
    }
    system_.resize(n, n);
    system_.setFromTriplets(trips.begin(), trips.end());
    cg_.setTolerance(cfg_.tolerance);
    cg_.setMaxIterations(static_cast<Eigen::Index>(cfg_.max_iterations.value_or(10 * static_cast<std::size_t>(n))));
    cg_.compute(system_);
  }

  void step(SolverState& state, const MaterialField& media) {
    detail::require_scheme(state, Scheme::Implicit);
    if (state.dt != dt_) throw Error("implicit system was assembled for a different time step");
    const auto n = area_.size();
    Field rhs(n);
    for (Eigen::Index v = 0; v < n; ++v)
      rhs[v] = -area_[v] * nonlinear_rhs_L(state, media, static_cast<std::size_t>(v)).known;
    const Field guess = 2.0 * state.history[0] - state.history[1];
    state.scratch = cg_.solveWithGuess(rhs, guess);
    last_iterations_ = static_cast<std::size_t>(cg_.iterations());
    last_residual_ = cg_.error();
    if (cg_.info() != Eigen::Success)
      throw SolverFailure("conjugate gradients did not converge at step " + std::to_string(state.step_index + 1),
                          last_residual_);
    detail::commit_step(state);
  }

  std::size_t last_iterations() const { return last_iterations_; }
  double last_residual() const { return last_residual_; }
  const Eigen::SparseMatrix<double>& system() const { return system_; }

 private:
  double dt_;
  LinearSolveConfig cfg_;
  Eigen::VectorXd area_;
  Eigen::SparseMatrix<double> system_;
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg_;
  std::size_t last_iterations_ = 0;
  double last_residual_ = 0.0;
};

/// One implicit step; assembles a fresh system. Use ImplicitSystem directly when stepping repeatedly.
inline void step_implicit(SolverState& state, const LaplacianOperator& laplacian, const DualMetrics& metrics,
                          const MaterialField& media, const LinearSolveConfig& cfg = {}) {
  ImplicitSystem system(laplacian, metrics, media, state.dt, cfg);
  system.step(state, media);
}

/// Largest dt for which the linear explicit update is stable:
/// min over vertices of sqrt(2 dual_area / sum(dual/primal)) / c0.
inline double stable_dt(const SimplicialMesh& mesh, const DualMetrics& metrics, const MaterialField& media) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    double weight = 0.0;
    for (std::size_t e : mesh.vertex_edges()[v]) weight += metrics.dual_edge_length[e] / metrics.primal_edge_length[e];
    if (weight <= 0.0) continue;
    if (!(metrics.dual_area[v] > 0.0))
      throw AssemblyError("vertex " + std::to_string(v) + " has nonpositive dual area");
    best = std::min(best, std::sqrt(2.0 * metrics.dual_area[v] / weight) / media[v].c0);
  }
  if (!std::isfinite(best)) throw Error("no vertex has wave coupling; stability bound undefined");
  return best;
}

/// Binds the operators one scheme needs and advances a state by single steps.
class Stepper {
 public:
  Stepper(const LaplacianOperator& laplacian, const DualMetrics& metrics, const MaterialField& media, double dt,
          Scheme scheme, const LinearSolveConfig& cfg = {})
      : laplacian_(laplacian), media_(media), scheme_(scheme) {
    if (scheme == Scheme::Implicit) implicit_.emplace(laplacian, metrics, media, dt, cfg);
  }

  void step(SolverState& state) {
    switch (scheme_) {
      case Scheme::Explicit: step_explicit(state, laplacian_, media_); break;
      case Scheme::SemiImplicit: step_semi_implicit(state, laplacian_, media_); break;
      case Scheme::Implicit: implicit_->step(state, media_); break;
    }
  }

  Scheme scheme() const { return scheme_; }

 private:
  const LaplacianOperator& laplacian_;
  const MaterialField& media_;
  Scheme scheme_;
  std::optional<ImplicitSystem> implicit_;
};

}  // namespace decwave
