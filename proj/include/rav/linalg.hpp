#ifndef RAV_LINALG_HPP
#define RAV_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "rav/rng.hpp"

namespace rav {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

constexpr double kUnitaryTol = 1e-10;

// Dense unitary on n qubits (dim = 2^n), validated on construction.
class UnitaryOp {
  public:
    explicit UnitaryOp(Matrix m, bool validate = true);

    static UnitaryOp identity(Eigen::Index dim);

    const Matrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    int num_qubits() const;

    UnitaryOp adjoint() const { return UnitaryOp(m_.adjoint(), false); }

  private:
    Matrix m_;
};

class PureState {
  public:
    explicit PureState(Vector amps, bool validate = true);

    static PureState basis_state(Eigen::Index dim, Eigen::Index index);

    const Vector& amplitudes() const { return a_; }
    Eigen::Index dim() const { return a_.size(); }

  private:
    Vector a_;
};

class OutcomeDistribution {
  public:
    // Entries in [-1e-12, ...] are clamped to 0; probabilities must sum to 1.
    explicit OutcomeDistribution(RealVector probs, bool validate = true);

    static OutcomeDistribution uniform(Eigen::Index dim);

    const RealVector& probs() const { return p_; }
    double operator()(Eigen::Index x) const { return p_(x); }
    Eigen::Index dim() const { return p_.size(); }

  private:
    RealVector p_;
};

class HermitianOp {
  public:
    explicit HermitianOp(Matrix m, bool validate = true);

    const Matrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    Matrix m_;
};

// Lifts a 1- or 2-qubit gate onto `targets` of an n-qubit register.
// Convention: qubit 0 is the most-significant bit of the basis index.
UnitaryOp embed_gate(const UnitaryOp& gate, const std::vector<int>& targets,
                     int n_qubits);

// |Tr(V^dag U)|, in [0, dim].
double hs_distance(const UnitaryOp& u, const UnitaryOp& v);

// e^{iHt} by Hermitian eigendecomposition.
UnitaryOp exp_i_hermitian(const HermitianOp& h, double t);

OutcomeDistribution measurement_probs(const PureState& state);

// One multinomial sample of K shots.
Eigen::VectorXi sample_counts(const OutcomeDistribution& dist, int shots,
                              SeededRng& rng);

// Single outcome draw by inverse CDF.
Eigen::Index sample_outcome(const OutcomeDistribution& dist, SeededRng& rng);

// Haar-measure random unitary on n qubits (Ginibre + QR with phase fix).
UnitaryOp haar_random_unitary(int n_qubits, SeededRng& rng);

}  // namespace rav

#endif
