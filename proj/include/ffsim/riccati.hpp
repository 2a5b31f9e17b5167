#pragma once

#include <stdexcept>

#include <Eigen/Dense>

namespace ffsim {

class RiccatiError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CareSolution {
  Eigen::MatrixXd p;         // stabilizing solution
  Eigen::MatrixXd gain;      // R^-1 B^T P
  double residual = 0.0;     // max-abs entry of A'P + PA - PBR^-1B'P + Q
  int newton_iterations = 0;
};

/// Solves A'P + PA - P B R^-1 B' P + Q = 0 for the stabilizing P.
///
/// Initial guess from the stable invariant subspace of the Hamiltonian
/// matrix, then Kleinman-Newton refinement. Throws RiccatiError if (A, B) is
/// not stabilizable, R is not positive definite, or the Hamiltonian has
/// eigenvalues on the imaginary axis.
CareSolution solve_care(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                        const Eigen::MatrixXd& q, const Eigen::MatrixXd& r);

double care_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& q,
                     const Eigen::MatrixXd& r, const Eigen::MatrixXd& p);

/// PBH test on the closed right half plane.
bool is_stabilizable(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-9);

/// Solves A'X + XA + Q = 0 through the Kronecker form.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q);

}  // namespace ffsim
