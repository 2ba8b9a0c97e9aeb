#pragma once

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <vector>

#include "seppoly/partitions.hpp"

namespace seppoly {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest supported total Hilbert-space dimension.
inline constexpr long kMaxTotalDim = 64;

/// Party count up to which compute_profile enumerates all partitions.
inline constexpr int kProfilePartyGuard = 5;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kWitnessTol = 1e-9;
inline constexpr double kDefaultPptTol = 1e-9;
inline constexpr double kDefaultPurityTol = 1e-8;

/// Kronecker product, party 0 as the leftmost (most significant) factor.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b.derived();
    return out;
}

/// Per-party local dimensions of a tensor factorization.
class HilbertSpec {
  public:
    explicit HilbertSpec(std::vector<int> local_dims);
    static HilbertSpec qubits(int parties);

    int party_count() const { return static_cast<int>(dims_.size()); }
    long total_dim() const { return total_; }
    int dim_of_party(int party) const;
    long dim_of(const Block& block) const;

    const std::vector<int>& local_dims() const { return dims_; }
    bool operator==(const HilbertSpec&) const = default;

  private:
    std::vector<int> dims_;
    long total_ = 1;
};

/// A normalized state vector over a tensor factorization.
class PureState {
  public:
    PureState(Vector amplitudes, HilbertSpec spec);

    const Vector& amplitudes() const { return amps_; }
    const HilbertSpec& spec() const { return spec_; }

  private:
    Vector amps_;
    HilbertSpec spec_;
};

/// A Hermitian, positive-semidefinite, unit-trace operator over a tensor
/// factorization.
class DensityMatrix {
  public:
    DensityMatrix(Matrix matrix, HilbertSpec spec);
    static DensityMatrix pure(const PureState& psi);
    static DensityMatrix maximally_mixed(HilbertSpec spec);

    const Matrix& matrix() const { return m_; }
    const HilbertSpec& spec() const { return spec_; }
    double purity() const { return (m_ * m_).trace().real(); }

  private:
    Matrix m_;
    HilbertSpec spec_;
};

/// One convex term of a witnessed ensemble: a weight and one density-matrix
/// factor per partition block (in the partition's canonical block order).
struct EnsembleTerm {
    double weight = 0.0;
    std::vector<Matrix> factors;
};

/// A constructive certificate that a state is separable with respect to its
/// partition: rho = sum_a p_a (x)_i rho^a_i.
struct WitnessedEnsemble {
    Partition partition;
    HilbertSpec spec;
    std::vector<EnsembleTerm> terms;
};

struct SeparabilityVerdict {
    enum class Kind { SeparableCertified, EntangledCertified, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<Partition> witness_partition;  // SeparableCertified: certifying ensemble's partition
    std::optional<Block> npt_side;               // EntangledCertified: NPT cut
    double npt_eigenvalue = 0.0;
};

std::string to_string(SeparabilityVerdict::Kind k);

/// Three-valued separability map over all partitions of the party set,
/// summarized by the antichain of certified-separable maxima.
struct SeparabilityProfile {
    std::vector<std::pair<Partition, SeparabilityVerdict>> verdicts;  // enumeration order
    PartitionAntichain certified_maximal;
    std::vector<Partition> unknown;

    const SeparabilityVerdict& verdict_for(const Partition& s) const;
};

/// Kronecker product of pure states in party order, renormalized.
/// Throws DimMismatch on an empty factor list, GuardExceeded past kMaxTotalDim.
PureState tensor_pure(const std::vector<PureState>& factors);

/// Reassembles a witnessed ensemble into its density matrix, embedding each
/// block factor at the block's tensor positions.
/// Throws DimMismatch, WeightError.
DensityMatrix assemble(const WitnessedEnsemble& e);

/// Reduced state on the kept parties.  Throws EmptyKeepSet, IndexOutOfRange.
DensityMatrix partial_trace(const DensityMatrix& rho, const Block& keep);

/// Transpose of the tensor indices in `side`.  The result is Hermitian with
/// unit trace but need not be positive.  Throws BadSubset.
Matrix partial_transpose(const DensityMatrix& rho, const Block& side);

/// Minimum eigenvalue of the partial transpose across the given cut.
double min_pt_eigenvalue(const DensityMatrix& rho, const Block& side);

/// True iff the partial transpose across (side, complement) has an
/// eigenvalue below -tol.
bool is_npt(const DensityMatrix& rho, const Block& side, double tol = kDefaultPptTol);

/// The unique finest partition over whose blocks the state factorizes,
/// found by a smallest-first search on reduced-state purity.
Partition pure_factorization(const PureState& psi, double tol = kDefaultPurityTol);

/// Number of operator Schmidt coefficients of a two-party unitary above tol;
/// 1 means the gate is a product A (x) B.  Throws NotUnitary.
int operator_schmidt_rank(const Matrix& u, int dim_a, int dim_b, double tol = kDefaultPptTol);

/// Decides sigma-separability of rho with the available certificates:
/// a witness whose partition refines s certifies separable, an NPT cut
/// coarsening s certifies entangled, anything else is Unknown.
/// Throws WitnessMismatch when a witness does not reassemble to rho.
SeparabilityVerdict sigma_verdict(const DensityMatrix& rho, const Partition& s,
                                  const std::vector<WitnessedEnsemble>& witnesses,
                                  double ppt_tol = kDefaultPptTol);

struct ProfileOptions {
    double ppt_tol = kDefaultPptTol;
    double purity_tol = kDefaultPurityTol;
};

/// Verdicts for every partition of the party set, with closure enforced and
/// checked: separable propagates to coarser partitions, entangled to finer.
/// Throws GuardExceeded for more than kProfilePartyGuard parties,
/// InconsistentCertificates when certificates collide.
SeparabilityProfile compute_profile(const DensityMatrix& rho,
                                    const std::vector<WitnessedEnsemble>& witnesses,
                                    const ProfileOptions& opts = {});

// Named states used by the CLI families and the test fixtures.
PureState ghz_state(int parties, int dim = 2);
PureState w_state(int parties);
PureState bell_state(int which = 0);  // 0..3: phi+, phi-, psi+, psi-
PureState haar_random_state(const HilbertSpec& spec, std::mt19937_64& rng);

}  // namespace seppoly
