#include "rav/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace rav {

namespace {

bool is_power_of_two(Eigen::Index x) { return x > 0 && (x & (x - 1)) == 0; }

}  // namespace

UnitaryOp::UnitaryOp(Matrix m, bool validate) : m_(std::move(m)) {
    if (!validate)
        return;
    if (m_.rows() != m_.cols() || !is_power_of_two(m_.rows()))
        throw std::invalid_argument("UnitaryOp: dim must be a power of two");
    const Matrix g = m_ * m_.adjoint() - Matrix::Identity(m_.rows(), m_.cols());
    if (g.cwiseAbs().maxCoeff() > kUnitaryTol)
        throw std::invalid_argument("UnitaryOp: matrix is not unitary");
}

UnitaryOp UnitaryOp::identity(Eigen::Index dim) {
    return UnitaryOp(Matrix::Identity(dim, dim), false);
}

int UnitaryOp::num_qubits() const {
    int n = 0;
    for (Eigen::Index d = dim(); d > 1; d >>= 1)
        ++n;
    return n;
}

PureState::PureState(Vector amps, bool validate) : a_(std::move(amps)) {
    if (validate && std::abs(a_.squaredNorm() - 1.0) > 1e-10)
        throw std::invalid_argument("PureState: not normalized");
}

PureState PureState::basis_state(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim)
        throw std::invalid_argument("basis_state: index out of range");
    Vector a = Vector::Zero(dim);
    a(index) = 1.0;
    return PureState(std::move(a), false);
}

OutcomeDistribution::OutcomeDistribution(RealVector probs, bool validate)
    : p_(std::move(probs)) {
    for (Eigen::Index i = 0; i < p_.size(); ++i) {
        if (p_(i) < 0.0) {
            if (validate && p_(i) < -1e-12)
                throw std::invalid_argument(
                    "OutcomeDistribution: negative probability");
            p_(i) = 0.0;
        }
    }
    if (validate && std::abs(p_.sum() - 1.0) > 1e-10)
        throw std::invalid_argument("OutcomeDistribution: does not sum to 1");
}

OutcomeDistribution OutcomeDistribution::uniform(Eigen::Index dim) {
    return OutcomeDistribution(
        RealVector::Constant(dim, 1.0 / static_cast<double>(dim)), false);
}

HermitianOp::HermitianOp(Matrix m, bool validate) : m_(std::move(m)) {
    if (validate && (m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("HermitianOp: matrix is not Hermitian");
}

UnitaryOp embed_gate(const UnitaryOp& gate, const std::vector<int>& targets,
                     int n_qubits) {
    const int k = static_cast<int>(targets.size());
    if (k < 1 || k > 2)
        throw std::invalid_argument("embed_gate: 1 or 2 targets required");
    if (gate.dim() != (Eigen::Index{1} << k))
        throw std::invalid_argument("embed_gate: gate dim does not match arity");
    for (int i = 0; i < k; ++i) {
        if (targets[i] < 0 || targets[i] >= n_qubits)
            throw std::invalid_argument("embed_gate: target out of range");
        for (int j = i + 1; j < k; ++j)
            if (targets[i] == targets[j])
                throw std::invalid_argument("embed_gate: duplicate target");
    }

    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    // Qubit q occupies bit (n-1-q): qubit 0 is the most-significant bit.
    std::vector<Eigen::Index> tbit(k);
    for (int i = 0; i < k; ++i)
        tbit[i] = Eigen::Index{1} << (n_qubits - 1 - targets[i]);

    Matrix out = Matrix::Zero(dim, dim);
    const Eigen::Index sub = Eigen::Index{1} << k;
    for (Eigen::Index rest = 0; rest < dim; ++rest) {
        bool clear = true;
        for (int i = 0; i < k; ++i)
            if (rest & tbit[i])
                clear = false;
        if (!clear)
            continue;
        for (Eigen::Index a = 0; a < sub; ++a) {
            Eigen::Index row = rest;
            for (int i = 0; i < k; ++i)
                if (a & (Eigen::Index{1} << (k - 1 - i)))
                    row |= tbit[i];
            for (Eigen::Index b = 0; b < sub; ++b) {
                Eigen::Index col = rest;
                for (int i = 0; i < k; ++i)
                    if (b & (Eigen::Index{1} << (k - 1 - i)))
                        col |= tbit[i];
                out(row, col) = gate.matrix()(a, b);
            }
        }
    }
    return UnitaryOp(std::move(out), false);
}

double hs_distance(const UnitaryOp& u, const UnitaryOp& v) {
    if (u.dim() != v.dim())
        throw std::invalid_argument("hs_distance: dimension mismatch");
    return std::abs((v.matrix().adjoint() * u.matrix()).trace());
}

UnitaryOp exp_i_hermitian(const HermitianOp& h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("exp_i_hermitian: eigendecomposition failed");
    const Eigen::Index d = h.dim();
    Vector phases(d);
    for (Eigen::Index i = 0; i < d; ++i)
        phases(i) = std::exp(Complex(0.0, es.eigenvalues()(i) * t));
    Matrix u = es.eigenvectors() * phases.asDiagonal() *
               es.eigenvectors().adjoint();
    return UnitaryOp(std::move(u), false);
}

OutcomeDistribution measurement_probs(const PureState& state) {
    return OutcomeDistribution(state.amplitudes().cwiseAbs2(), false);
}

Eigen::Index sample_outcome(const OutcomeDistribution& dist, SeededRng& rng) {
    const double r = rng.uniform();
    double acc = 0.0;
    const Eigen::Index n = dist.dim();
    for (Eigen::Index i = 0; i < n; ++i) {
        acc += dist(i);
        if (r < acc)
            return i;
    }
    return n - 1;
}

Eigen::VectorXi sample_counts(const OutcomeDistribution& dist, int shots,
                              SeededRng& rng) {
    if (shots < 1)
        throw std::invalid_argument("sample_counts: shots must be >= 1");
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(dist.dim());
    for (int s = 0; s < shots; ++s)
        counts(sample_outcome(dist, rng)) += 1;
    return counts;
}

UnitaryOp haar_random_unitary(int n_qubits, SeededRng& rng) {
    if (n_qubits < 1)
        throw std::invalid_argument("haar_random_unitary: n_qubits >= 1");
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            g(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the gauge so the distribution is exactly Haar.
    for (Eigen::Index i = 0; i < dim; ++i) {
        Complex d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return UnitaryOp(std::move(q), false);
}

}  // namespace rav
