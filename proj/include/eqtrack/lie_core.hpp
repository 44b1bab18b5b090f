#pragma once

// Matrix Lie group primitives: algebra/coalgebra coordinates in a
// Frobenius-orthonormal basis, exponential, adjoint and coadjoint operators.

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqtrack {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when an argument violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when the integrator cannot return a state to the group.
class StepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultMembershipTol = 1e-9;

struct GroupElement {
  Matrix mat;
};

/// Element of the Lie algebra, stored as coordinates in the group's basis.
struct AlgebraVec {
  Vector coords;
};

/// Element of the dual of the Lie algebra, stored in the dual basis.
struct CoalgebraVec {
  Vector coords;
};

// ---------------------------------------------------------------------------
// R^3 helpers
// ---------------------------------------------------------------------------

/// Skew map with hat(v) * u == v.cross(u).
Eigen::Matrix3d hat(const Eigen::Vector3d& v);

/// Inverse of hat. Throws PreconditionError when S is not skew to 1e-10.
Eigen::Vector3d vee(const Eigen::Matrix3d& S);

/// tr(A^T B). Throws PreconditionError on shape mismatch.
double frobenius(const Matrix& A, const Matrix& B);

/// exp(hat(w)) by the Rodrigues formula.
Eigen::Matrix3d rodrigues(const Eigen::Vector3d& w);

/// exp(A) by scaling and squaring with a degree-13 Pade approximant.
Matrix expm_pade13(const Matrix& A);

/// Closest orthogonal matrix with positive determinant (polar factor).
/// Throws StepError if A is singular or not finite.
Matrix nearest_rotation(const Matrix& A);

// ---------------------------------------------------------------------------
// Group description
// ---------------------------------------------------------------------------

/// A matrix Lie group given by an orthonormal basis of its algebra plus
/// group-specific membership, exponential and retraction routines.
class GroupDescription {
 public:
  using DistanceFn = std::function<double(const Matrix&)>;
  using MatrixMap = std::function<Matrix(const Matrix&)>;

  struct Hooks {
    /// Distance-like measure of how far a matrix is from the group;
    /// +infinity for matrices on the wrong component.
    DistanceFn distance;
    /// Closed-form exponential; empty means the generic Pade routine.
    MatrixMap exp;
    /// Map a near-group matrix back onto the group.
    MatrixMap retract;
  };

  GroupDescription(std::string name, int dim_matrix, std::vector<Matrix> basis,
                   Hooks hooks, double membership_tol = kDefaultMembershipTol);

  /// SO(3) with basis hat(e_i)/sqrt(2).
  static const GroupDescription& so3();
  /// SO(n), n >= 2, with basis (e_i e_j^T - e_j e_i^T)/sqrt(2), i < j.
  static GroupDescription special_orthogonal(int n);
  /// SE(3) as 4x4 homogeneous matrices.
  static const GroupDescription& se3();

  const std::string& name() const { return name_; }
  int dim_matrix() const { return m_; }
  int dim_algebra() const { return static_cast<int>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }
  double membership_tol() const { return tol_; }

  // Membership ---------------------------------------------------------------
  double distance(const Matrix& A) const { return hooks_.distance(A); }
  bool contains(const Matrix& A) const;
  /// Wrap A, throwing PreconditionError when it is not on the group.
  GroupElement element(const Matrix& A) const;
  GroupElement identity() const;
  GroupElement inverse(const GroupElement& X) const;
  GroupElement compose(const GroupElement& A, const GroupElement& B) const;
  GroupElement retract(const Matrix& A) const;

  // Algebra ------------------------------------------------------------------
  Matrix to_matrix(const AlgebraVec& u) const;
  /// Frobenius-orthogonal projection onto the algebra.
  AlgebraVec project(const Matrix& A) const;
  AlgebraVec zero_algebra() const;
  CoalgebraVec zero_coalgebra() const;
  GroupElement exp(const AlgebraVec& u) const;

  /// Pairing P(u) of a coalgebra element with an algebra element.
  static double pair(const CoalgebraVec& p, const AlgebraVec& u) {
    return p.coords.dot(u.coords);
  }

  // Adjoint operators ----------------------------------------------------------
  /// Matrix of Ad_X in basis coordinates.
  Matrix adjoint_matrix(const GroupElement& X) const;
  /// Matrix of ad_u in basis coordinates.
  Matrix ad_matrix(const AlgebraVec& u) const;

  AlgebraVec adjoint(const GroupElement& X, const AlgebraVec& u) const;
  CoalgebraVec co_adjoint(const GroupElement& X, const CoalgebraVec& p) const;
  AlgebraVec ad(const AlgebraVec& u, const AlgebraVec& v) const;
  CoalgebraVec co_ad(const AlgebraVec& u, const CoalgebraVec& p) const;

 private:
  void check_dim(const Vector& v, const char* what) const;

  std::string name_;
  int m_;
  std::vector<Matrix> basis_;
  Hooks hooks_;
  double tol_;
};

}  // namespace eqtrack
