#include "eqtrack/lie_core.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace eqtrack {

Eigen::Matrix3d hat(const Eigen::Vector3d& v) {
  Eigen::Matrix3d S;
  S << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return S;
}

Eigen::Vector3d vee(const Eigen::Matrix3d& S) {
  if ((S + S.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw PreconditionError("vee: matrix is not skew-symmetric");
  }
  return {0.5 * (S(2, 1) - S(1, 2)), 0.5 * (S(0, 2) - S(2, 0)),
          0.5 * (S(1, 0) - S(0, 1))};
}

double frobenius(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw PreconditionError("frobenius: shape mismatch");
  }
  return A.cwiseProduct(B).sum();
}

Eigen::Matrix3d rodrigues(const Eigen::Vector3d& w) {
  const double theta2 = w.squaredNorm();
  const double theta = std::sqrt(theta2);
  double a;
  double b;
  if (theta < 1e-4) {
    a = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0;
    b = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Eigen::Matrix3d W = hat(w);
  return Eigen::Matrix3d::Identity() + a * W + b * W * W;
}

Matrix expm_pade13(const Matrix& A) {
  // Higham (2005) coefficients and scaling threshold for the [13/13] approximant.
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = A.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > theta13) {
    s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const Matrix As = A / std::ldexp(1.0, s);
  const Matrix I = Matrix::Identity(A.rows(), A.cols());
  const Matrix A2 = As * As;
  const Matrix A4 = A2 * A2;
  const Matrix A6 = A4 * A2;

  const Matrix U =
      As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 +
            b[5] * A4 + b[3] * A2 + b[1] * I);
  const Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
                   b[4] * A4 + b[2] * A2 + b[0] * I;

  Matrix R = (V - U).partialPivLu().solve(V + U);
  for (int k = 0; k < s; ++k) R = R * R;
  return R;
}

Matrix nearest_rotation(const Matrix& A) {
  if (!A.allFinite()) throw StepError("retraction: non-finite matrix");
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-12 * std::max(1.0, sv(0))) {
    throw StepError("retraction: singular polar factor");
  }
  Matrix R = svd.matrixU() * svd.matrixV().transpose();
  if (R.determinant() <= 0.0) {
    throw StepError("retraction: polar factor has negative determinant");
  }
  return R;
}

// ---------------------------------------------------------------------------

namespace {

double orthogonal_distance(const Matrix& A) {
  if (A.rows() != A.cols() || !A.allFinite()) {
    return std::numeric_limits<double>::infinity();
  }
  if (A.determinant() <= 0.0) return std::numeric_limits<double>::infinity();
  return (A.transpose() * A - Matrix::Identity(A.rows(), A.cols())).norm();
}

std::vector<Matrix> so3_basis() {
  std::vector<Matrix> basis;
  for (int i = 0; i < 3; ++i) {
    basis.emplace_back(hat(Eigen::Vector3d::Unit(i)) / std::sqrt(2.0));
  }
  return basis;
}

}  // namespace

GroupDescription::GroupDescription(std::string name, int dim_matrix,
                                   std::vector<Matrix> basis, Hooks hooks,
                                   double membership_tol)
    : name_(std::move(name)),
      m_(dim_matrix),
      basis_(std::move(basis)),
      hooks_(std::move(hooks)),
      tol_(membership_tol) {
  if (m_ <= 0 || basis_.empty()) {
    throw PreconditionError("GroupDescription: empty group");
  }
  if (!hooks_.distance || !hooks_.retract) {
    throw PreconditionError("GroupDescription: distance and retract required");
  }
  for (const auto& E : basis_) {
    if (E.rows() != m_ || E.cols() != m_) {
      throw PreconditionError("GroupDescription: basis matrix has wrong shape");
    }
  }
  const int n = dim_algebra();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(frobenius(basis_[i], basis_[j]) - expected) > 1e-12) {
        throw PreconditionError("GroupDescription: basis is not orthonormal");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Matrix bracket = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      const Matrix residual = bracket - to_matrix(project(bracket));
      if (residual.norm() > 1e-12) {
        std::ostringstream msg;
        msg << "GroupDescription: basis not closed under bracket [E" << i
            << ", E" << j << "]";
        throw PreconditionError(msg.str());
      }
    }
  }
}

const GroupDescription& GroupDescription::so3() {
  static const GroupDescription group = [] {
    Hooks hooks;
    hooks.distance = orthogonal_distance;
    hooks.exp = [](const Matrix& W) -> Matrix {
      const Eigen::Matrix3d S = W;
      return rodrigues({S(2, 1), S(0, 2), S(1, 0)});
    };
    hooks.retract = nearest_rotation;
    return GroupDescription("SO(3)", 3, so3_basis(), std::move(hooks));
  }();
  return group;
}

GroupDescription GroupDescription::special_orthogonal(int n) {
  if (n < 2) throw PreconditionError("special_orthogonal: n must be >= 2");
  if (n == 3) return so3();
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Matrix E = Matrix::Zero(n, n);
      E(j, i) = 1.0 / std::sqrt(2.0);
      E(i, j) = -1.0 / std::sqrt(2.0);
      basis.push_back(std::move(E));
    }
  }
  Hooks hooks;
  hooks.distance = orthogonal_distance;
  hooks.retract = nearest_rotation;
  return GroupDescription("SO(" + std::to_string(n) + ")", n, std::move(basis),
                          std::move(hooks));
}

const GroupDescription& GroupDescription::se3() {
  static const GroupDescription group = [] {
    std::vector<Matrix> basis;
    for (const auto& E3 : so3_basis()) {
      Matrix E = Matrix::Zero(4, 4);
      E.topLeftCorner<3, 3>() = E3;
      basis.push_back(std::move(E));
    }
    for (int i = 0; i < 3; ++i) {
      Matrix E = Matrix::Zero(4, 4);
      E(i, 3) = 1.0;
      basis.push_back(std::move(E));
    }
    Hooks hooks;
    hooks.distance = [](const Matrix& A) {
      if (A.rows() != 4 || A.cols() != 4 || !A.allFinite()) {
        return std::numeric_limits<double>::infinity();
      }
      Eigen::RowVector4d bottom(0.0, 0.0, 0.0, 1.0);
      return orthogonal_distance(A.topLeftCorner(3, 3)) +
             (A.row(3) - bottom).norm();
    };
    hooks.retract = [](const Matrix& A) -> Matrix {
      Matrix T = Matrix::Identity(4, 4);
      T.topLeftCorner(3, 3) = nearest_rotation(A.topLeftCorner(3, 3));
      T.topRightCorner(3, 1) = A.topRightCorner(3, 1);
      if (!T.allFinite()) throw StepError("retraction: non-finite matrix");
      return T;
    };
    return GroupDescription("SE(3)", 4, std::move(basis), std::move(hooks));
  }();
  return group;
}

// ---------------------------------------------------------------------------

bool GroupDescription::contains(const Matrix& A) const {
  return A.rows() == m_ && A.cols() == m_ && distance(A) < tol_;
}

GroupElement GroupDescription::element(const Matrix& A) const {
  if (!contains(A)) {
    std::ostringstream msg;
    msg << name_ << ": matrix is not a group element (distance "
        << (A.rows() == m_ && A.cols() == m_ ? distance(A)
                                            : std::numeric_limits<double>::infinity())
        << ")";
    throw PreconditionError(msg.str());
  }
  return GroupElement{A};
}

GroupElement GroupDescription::identity() const {
  return GroupElement{Matrix::Identity(m_, m_)};
}

GroupElement GroupDescription::inverse(const GroupElement& X) const {
  return GroupElement{X.mat.inverse()};
}

GroupElement GroupDescription::compose(const GroupElement& A,
                                       const GroupElement& B) const {
  return GroupElement{A.mat * B.mat};
}

GroupElement GroupDescription::retract(const Matrix& A) const {
  if (A.rows() != m_ || A.cols() != m_) {
    throw PreconditionError("retract: wrong matrix shape");
  }
  return GroupElement{hooks_.retract(A)};
}

void GroupDescription::check_dim(const Vector& v, const char* what) const {
  if (v.size() != dim_algebra()) {
    std::ostringstream msg;
    msg << name_ << ": " << what << " has " << v.size()
        << " coordinates, expected " << dim_algebra();
    throw PreconditionError(msg.str());
  }
}

Matrix GroupDescription::to_matrix(const AlgebraVec& u) const {
  check_dim(u.coords, "algebra vector");
  Matrix M = Matrix::Zero(m_, m_);
  for (int i = 0; i < dim_algebra(); ++i) M += u.coords(i) * basis_[i];
  return M;
}

AlgebraVec GroupDescription::project(const Matrix& A) const {
  if (A.rows() != m_ || A.cols() != m_) {
    throw PreconditionError("project: wrong matrix shape");
  }
  Vector c(dim_algebra());
  for (int i = 0; i < dim_algebra(); ++i) c(i) = frobenius(basis_[i], A);
  return {c};
}

AlgebraVec GroupDescription::zero_algebra() const {
  return {Vector::Zero(dim_algebra())};
}

CoalgebraVec GroupDescription::zero_coalgebra() const {
  return {Vector::Zero(dim_algebra())};
}

GroupElement GroupDescription::exp(const AlgebraVec& u) const {
  const Matrix M = to_matrix(u);
  return GroupElement{hooks_.exp ? hooks_.exp(M) : expm_pade13(M)};
}

Matrix GroupDescription::adjoint_matrix(const GroupElement& X) const {
  const Matrix Xinv = X.mat.inverse();
  Matrix Ad(dim_algebra(), dim_algebra());
  for (int j = 0; j < dim_algebra(); ++j) {
    Ad.col(j) = project(X.mat * basis_[j] * Xinv).coords;
  }
  return Ad;
}

Matrix GroupDescription::ad_matrix(const AlgebraVec& u) const {
  const Matrix U = to_matrix(u);
  Matrix ad(dim_algebra(), dim_algebra());
  for (int j = 0; j < dim_algebra(); ++j) {
    ad.col(j) = project(U * basis_[j] - basis_[j] * U).coords;
  }
  return ad;
}

AlgebraVec GroupDescription::adjoint(const GroupElement& X,
                                     const AlgebraVec& u) const {
  return project(X.mat * to_matrix(u) * X.mat.inverse());
}

CoalgebraVec GroupDescription::co_adjoint(const GroupElement& X,
                                          const CoalgebraVec& p) const {
  check_dim(p.coords, "coalgebra vector");
  return {adjoint_matrix(X).transpose() * p.coords};
}

AlgebraVec GroupDescription::ad(const AlgebraVec& u, const AlgebraVec& v) const {
  const Matrix U = to_matrix(u);
  const Matrix V = to_matrix(v);
  return project(U * V - V * U);
}

CoalgebraVec GroupDescription::co_ad(const AlgebraVec& u,
                                     const CoalgebraVec& p) const {
  check_dim(p.coords, "coalgebra vector");
  return {ad_matrix(u).transpose() * p.coords};
}

}  // namespace eqtrack
