#include "ffsim/riccati.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace ffsim {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

namespace {

void check_shapes(const MatrixXd& a, const MatrixXd& b, const MatrixXd& q, const MatrixXd& r) {
  const auto n = a.rows();
  if (a.cols() != n || b.rows() != n || q.rows() != n || q.cols() != n || r.rows() != b.cols() ||
      r.cols() != b.cols()) {
    throw RiccatiError("solve_care: inconsistent matrix dimensions");
  }
}

MatrixXd symmetrize(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

bool is_stabilizable(const MatrixXd& a, const MatrixXd& b, double tol) {
  const auto n = a.rows();
  Eigen::EigenSolver<MatrixXd> es(a);
  const double scale = std::max({1.0, a.norm(), b.norm()});
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> lambda = es.eigenvalues()[i];
    if (lambda.real() < -tol * scale) continue;
    MatrixXcd pbh(n, n + b.cols());
    pbh.leftCols(n) = a.cast<std::complex<double>>() -
                      lambda * MatrixXcd::Identity(n, n);
    pbh.rightCols(b.cols()) = b.cast<std::complex<double>>();
    Eigen::JacobiSVD<MatrixXcd> svd(pbh);
    if (svd.singularValues()(n - 1) < tol * scale) return false;
  }
  return true;
}

MatrixXd solve_lyapunov(const MatrixXd& a, const MatrixXd& q) {
  const auto n = a.rows();
  const MatrixXd id = MatrixXd::Identity(n, n);
  MatrixXd kron(n * n, n * n);
  // vec(A'X) = (I kron A') vec X, vec(XA) = (A' kron I) vec X
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      kron.block(i * n, j * n, n, n) = id(i, j) * a.transpose() + a(j, i) * id;
    }
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(q.data(), n * n);
  const Eigen::VectorXd x = kron.fullPivLu().solve(rhs);
  return symmetrize(Eigen::Map<const MatrixXd>(x.data(), n, n));
}

double care_residual(const MatrixXd& a, const MatrixXd& b, const MatrixXd& q, const MatrixXd& r,
                     const MatrixXd& p) {
  const MatrixXd res =
      a.transpose() * p + p * a - p * b * r.ldlt().solve(b.transpose()) * p + q;
  return res.cwiseAbs().maxCoeff();
}

CareSolution solve_care(const MatrixXd& a, const MatrixXd& b, const MatrixXd& q,
                        const MatrixXd& r) {
  check_shapes(a, b, q, r);
  const auto n = a.rows();
  Eigen::SelfAdjointEigenSolver<MatrixXd> r_eig(symmetrize(r));
  if (!(r_eig.eigenvalues().minCoeff() > 0.0)) {
    throw RiccatiError("solve_care: R must be positive definite");
  }
  if (!is_stabilizable(a, b)) throw RiccatiError("solve_care: (A, B) is not stabilizable");

  const MatrixXd g = b * r.ldlt().solve(b.transpose());
  MatrixXd h(2 * n, 2 * n);
  h << a, -g, -q, -a.transpose();

  Eigen::ComplexEigenSolver<MatrixXd> hes(h);
  if (hes.info() != Eigen::Success) throw RiccatiError("solve_care: Hamiltonian eigensolver failed");
  const double h_scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> stable;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    const double re = hes.eigenvalues()[i].real();
    if (std::abs(re) < 1e-13 * h_scale) {
      throw RiccatiError("solve_care: Hamiltonian has eigenvalues on the imaginary axis");
    }
    if (re < 0.0) stable.push_back(i);
  }
  if (static_cast<Eigen::Index>(stable.size()) != n) {
    throw RiccatiError("solve_care: no stable invariant subspace of dimension n");
  }
  MatrixXcd basis(2 * n, n);
  for (Eigen::Index k = 0; k < n; ++k) basis.col(k) = hes.eigenvectors().col(stable[k]);
  const MatrixXcd x1 = basis.topRows(n);
  const MatrixXcd x2 = basis.bottomRows(n);
  MatrixXd p = symmetrize((x2 * x1.fullPivLu().inverse()).real());

  CareSolution sol;
  double residual = care_residual(a, b, q, r, p);
  // Kleinman-Newton refinement: each iterate solves a Lyapunov equation for
  // the closed loop of the previous gain.
  for (int it = 0; it < 50; ++it) {
    const MatrixXd k = r.ldlt().solve(b.transpose() * p);
    const MatrixXd ac = a - b * k;
    const MatrixXd next = solve_lyapunov(ac, q + k.transpose() * r * k);
    const double next_residual = care_residual(a, b, q, r, next);
    if (!next.allFinite() || next_residual >= residual) break;
    p = next;
    residual = next_residual;
    sol.newton_iterations = it + 1;
  }

  sol.p = p;
  sol.gain = r.ldlt().solve(b.transpose() * p);
  sol.residual = residual;
  return sol;
}

}  // namespace ffsim
