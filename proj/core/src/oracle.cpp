#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

#include "vws/error.hpp"
#include "vws/evolve.hpp"

namespace vws {

namespace {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// (exp(z T) - 1) / z, continuous at z = 0.
cplx phi1_times_T(cplx z, double T) {
  cplx w = z * T;
  if (std::abs(w) < 1e-5) return T * (1.0 + w / 2.0 + w * w / 6.0);
  return (std::exp(w) - 1.0) / z;
}

Vector to_vector(const Field& u) {
  Vector v(Eigen::Index(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) v[Eigen::Index(i)] = u[i];
  return v;
}

}  // namespace

Field dense_oracle(const EvolutionProblem& prob, OracleMethod method) {
  validate(prob);
  const GridSpec& g = prob.cs.grid;
  require(g.points <= (g.dim == 1 ? kOracleMax1D : kOracleMax2D), "dense oracle: grid too large");
  require(prob.forcing.time == Forcing::Time::constant, "dense oracle: forcing must be constant in time");
  const auto size = Eigen::Index(g.size());

  // Generator i(A + B + V), column by column.
  SpatialOperator op(prob.cs);
  Matrix G(size, size);
  Field e(g), col(g);
  for (Eigen::Index c = 0; c < size; ++c) {
    std::fill(e.values().begin(), e.values().end(), cplx(0.0));
    e[std::size_t(c)] = 1.0;
    op.apply(e.values(), col.values());
    for (Eigen::Index r = 0; r < size; ++r) G(r, c) = cplx(0.0, 1.0) * col[std::size_t(r)];
  }
  Vector u0 = to_vector(prob.u0);
  Vector ig = prob.forcing.shape ? Vector(cplx(0.0, 1.0) * to_vector(*prob.forcing.shape)) : Vector::Zero(size);
  const double T = prob.T;

  Eigen::ComplexEigenSolver<Matrix> eig;
  if (method == OracleMethod::automatic) eig.compute(G);
  if (method == OracleMethod::automatic && eig.info() == Eigen::Success) {
    const Matrix& V = eig.eigenvectors();
    Eigen::PartialPivLU<Matrix> lu(V);
    const Vector& lambda = eig.eigenvalues();
    Matrix recon = V * lambda.asDiagonal() * lu.inverse();
    double scale = std::max(G.norm(), 1.0);
    double cond_estimate = V.norm() * lu.inverse().norm();
    if ((recon - G).norm() <= 1e-10 * scale && cond_estimate < 1e8) {
      Vector a = lu.solve(u0);
      Vector b = lu.solve(ig);
      Vector out(size);
      for (Eigen::Index k = 0; k < size; ++k) out[k] = std::exp(lambda[k] * T) * a[k] + phi1_times_T(lambda[k], T) * b[k];
      Vector u = V * out;
      Field result(g);
      for (Eigen::Index i = 0; i < size; ++i) result[std::size_t(i)] = u[i];
      require_finite(result, "dense oracle");
      return result;
    }
  }

  // Augmented system d/dt [u; 1] = [[G, ig], [0, 0]] [u; 1].
  Matrix aug = Matrix::Zero(size + 1, size + 1);
  aug.topLeftCorner(size, size) = G * T;
  aug.topRightCorner(size, 1) = ig * T;
  Matrix ex = aug.exp();
  Vector start(size + 1);
  start.head(size) = u0;
  start[size] = 1.0;
  Vector u = (ex * start).head(size);
  Field result(g);
  for (Eigen::Index i = 0; i < size; ++i) result[std::size_t(i)] = u[i];
  require_finite(result, "dense oracle");
  return result;
}

}  // namespace vws
