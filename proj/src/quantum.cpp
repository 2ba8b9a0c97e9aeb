#include "seppoly/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace seppoly {

namespace {

// Party 0 is the most significant tensor index: stride[i] = prod of dims of
// parties after i.
std::vector<long> strides_of(const HilbertSpec& spec) {
    const int n = spec.party_count();
    std::vector<long> st(n, 1);
    for (int i = n - 2; i >= 0; --i) st[i] = st[i + 1] * spec.dim_of_party(i + 1);
    return st;
}

int digit_of(long index, int party, const std::vector<long>& strides, const HilbertSpec& spec) {
    return static_cast<int>((index / strides[party]) % spec.dim_of_party(party));
}

// Index of the digits of `block`'s parties within a space made of just those
// parties (ascending order, first member most significant).
long block_local_index(long index, const Block& block, const std::vector<long>& strides,
                       const HilbertSpec& spec) {
    long local = 0;
    for (int m : block.members()) local = local * spec.dim_of_party(m) + digit_of(index, m, strides, spec);
    return local;
}

void require_parties_in_range(const Block& b, int n, const char* what) {
    if (!b.is_subset_of(Block::full(n)))
        throw IndexOutOfRange(std::string(what) + " " + b.to_string() + " outside the party set");
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

void require_state_matrix(const Matrix& m, long dim, const char* what) {
    if (m.rows() != dim || m.cols() != dim)
        throw DimMismatch(std::string(what) + " has size " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected " + std::to_string(dim));
    if (max_abs_diff(m, m.adjoint()) > kHermitianTol)
        throw InvariantError(std::string(what) + " is not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > kTraceTol || std::abs(m.trace().imag()) > kTraceTol)
        throw InvariantError(std::string(what) + " does not have unit trace");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
        throw InvariantError(std::string(what) + " is not positive semidefinite");
}

// Tensor factors placed at the positions of the partition's blocks,
// party order restored by digit bookkeeping.
Matrix embed_block_product(const HilbertSpec& spec, const Partition& part,
                           const std::vector<Matrix>& factors) {
    const long dim = spec.total_dim();
    const auto strides = strides_of(spec);
    Matrix out(dim, dim);
    for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c) {
            Complex v{1.0, 0.0};
            for (std::size_t k = 0; k < factors.size(); ++k) {
                const Block& b = part.blocks()[k];
                v *= factors[k](block_local_index(r, b, strides, spec),
                                block_local_index(c, b, strides, spec));
                if (v == Complex{0.0, 0.0}) break;
            }
            out(r, c) = v;
        }
    return out;
}

}  // namespace

HilbertSpec::HilbertSpec(std::vector<int> local_dims) : dims_(std::move(local_dims)) {
    if (dims_.empty()) throw DimMismatch("at least one party required");
    for (int d : dims_) {
        if (d < 2) throw DimMismatch("local dimension must be at least 2, got " + std::to_string(d));
        total_ *= d;
        if (total_ > kMaxTotalDim)
            throw GuardExceeded("total dimension exceeds " + std::to_string(kMaxTotalDim));
    }
    PartySet guard(party_count());
}

HilbertSpec HilbertSpec::qubits(int parties) { return HilbertSpec(std::vector<int>(parties, 2)); }

int HilbertSpec::dim_of_party(int party) const {
    if (party < 0 || party >= party_count())
        throw IndexOutOfRange("party " + std::to_string(party) + " out of range");
    return dims_[party];
}

long HilbertSpec::dim_of(const Block& block) const {
    long d = 1;
    for (int m : block.members()) d *= dim_of_party(m);
    return d;
}

PureState::PureState(Vector amplitudes, HilbertSpec spec) : amps_(std::move(amplitudes)), spec_(std::move(spec)) {
    if (amps_.size() != spec_.total_dim())
        throw DimMismatch("amplitude vector has length " + std::to_string(amps_.size()) +
                          ", expected " + std::to_string(spec_.total_dim()));
    if (std::abs(amps_.squaredNorm() - 1.0) > kHermitianTol)
        throw InvariantError("state vector is not normalized");
}

DensityMatrix::DensityMatrix(Matrix matrix, HilbertSpec spec) : m_(std::move(matrix)), spec_(std::move(spec)) {
    require_state_matrix(m_, spec_.total_dim(), "density matrix");
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.spec());
}

DensityMatrix DensityMatrix::maximally_mixed(HilbertSpec spec) {
    const long d = spec.total_dim();
    return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d), std::move(spec));
}

std::string to_string(SeparabilityVerdict::Kind k) {
    switch (k) {
        case SeparabilityVerdict::Kind::SeparableCertified: return "SeparableCertified";
        case SeparabilityVerdict::Kind::EntangledCertified: return "EntangledCertified";
        case SeparabilityVerdict::Kind::Unknown: return "Unknown";
    }
    return "?";
}

const SeparabilityVerdict& SeparabilityProfile::verdict_for(const Partition& s) const {
    for (const auto& [p, v] : verdicts)
        if (p == s) return v;
    throw IndexOutOfRange("no verdict recorded for partition " + s.to_string());
}

PureState tensor_pure(const std::vector<PureState>& factors) {
    if (factors.empty()) throw DimMismatch("tensor_pure needs at least one factor");
    std::vector<int> dims;
    for (const PureState& f : factors)
        dims.insert(dims.end(), f.spec().local_dims().begin(), f.spec().local_dims().end());
    HilbertSpec spec(std::move(dims));
    Vector amps = factors[0].amplitudes();
    for (std::size_t i = 1; i < factors.size(); ++i) amps = kron(amps, factors[i].amplitudes());
    amps /= amps.norm();
    return PureState(std::move(amps), std::move(spec));
}

DensityMatrix assemble(const WitnessedEnsemble& e) {
    if (e.partition.party_count() != e.spec.party_count())
        throw DimMismatch("partition and Hilbert spec disagree on the party count");
    if (e.terms.empty()) throw WeightError("ensemble has no terms");
    double total = 0.0;
    for (const EnsembleTerm& t : e.terms) {
        if (t.weight < 0.0) throw WeightError("negative ensemble weight");
        total += t.weight;
        if (t.factors.size() != e.partition.blocks().size())
            throw DimMismatch("term has " + std::to_string(t.factors.size()) + " factors for " +
                              std::to_string(e.partition.blocks().size()) + " blocks");
        for (std::size_t k = 0; k < t.factors.size(); ++k)
            require_state_matrix(t.factors[k], e.spec.dim_of(e.partition.blocks()[k]), "block factor");
    }
    if (std::abs(total - 1.0) > kTraceTol)
        throw WeightError("weights sum to " + std::to_string(total) + ", expected 1");

    const long dim = e.spec.total_dim();
    Matrix sum = Matrix::Zero(dim, dim);
    for (const EnsembleTerm& t : e.terms)
        sum += t.weight * embed_block_product(e.spec, e.partition, t.factors);
    return DensityMatrix(std::move(sum), e.spec);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const Block& keep) {
    if (keep.empty()) throw EmptyKeepSet("partial_trace keep set is empty");
    const HilbertSpec& spec = rho.spec();
    const int n = spec.party_count();
    require_parties_in_range(keep, n, "keep set");
    if (keep == Block::full(n)) return rho;

    std::vector<int> kept_dims;
    for (int m : keep.members()) kept_dims.push_back(spec.dim_of_party(m));
    HilbertSpec reduced_spec(std::move(kept_dims));

    const Block traced = Block::from_mask(Block::full(n).mask() & ~keep.mask());
    const auto strides = strides_of(spec);
    const long dim = spec.total_dim();
    std::vector<long> kept_of(dim), traced_of(dim);
    for (long g = 0; g < dim; ++g) {
        kept_of[g] = block_local_index(g, keep, strides, spec);
        traced_of[g] = block_local_index(g, traced, strides, spec);
    }

    Matrix out = Matrix::Zero(reduced_spec.total_dim(), reduced_spec.total_dim());
    for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c)
            if (traced_of[r] == traced_of[c]) out(kept_of[r], kept_of[c]) += rho.matrix()(r, c);
    return DensityMatrix(std::move(out), std::move(reduced_spec));
}

Matrix partial_transpose(const DensityMatrix& rho, const Block& side) {
    const HilbertSpec& spec = rho.spec();
    const int n = spec.party_count();
    if (side.empty() || side == Block::full(n))
        throw BadSubset("partial transpose needs a nonempty proper subset of parties");
    require_parties_in_range(side, n, "transpose side");

    const auto strides = strides_of(spec);
    const long dim = spec.total_dim();
    // side_part[g]: the contribution of the side parties' digits to the index.
    std::vector<long> side_part(dim);
    for (long g = 0; g < dim; ++g) {
        long s = 0;
        for (int m : side.members()) s += digit_of(g, m, strides, spec) * strides[m];
        side_part[g] = s;
    }
    Matrix out(dim, dim);
    for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c)
            out(r, c) = rho.matrix()(side_part[c] + (r - side_part[r]), side_part[r] + (c - side_part[c]));
    return out;
}

double min_pt_eigenvalue(const DensityMatrix& rho, const Block& side) {
    Matrix pt = partial_transpose(rho, side);
    Eigen::SelfAdjointEigenSolver<Matrix> es((pt + pt.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool is_npt(const DensityMatrix& rho, const Block& side, double tol) {
    return min_pt_eigenvalue(rho, side) < -tol;
}

Partition pure_factorization(const PureState& psi, double tol) {
    const HilbertSpec& spec = psi.spec();
    const int n = spec.party_count();
    const DensityMatrix rho = DensityMatrix::pure(psi);

    auto purity_of = [&](const Block& b) {
        if (b == Block::full(n)) return 1.0;
        return partial_trace(rho, b).purity();
    };

    std::vector<Block> blocks;
    std::uint32_t remaining = Block::full(n).mask();
    while (remaining != 0) {
        const std::uint32_t low = remaining & (~remaining + 1);
        // Candidate subsets of the remaining parties that contain the lowest
        // one, smallest first so the result is the finest factorization.
        std::vector<Block> candidates;
        for (std::uint32_t sub = remaining; sub != 0; sub = (sub - 1) & remaining)
            if (sub & low) candidates.push_back(Block::from_mask(sub));
        std::sort(candidates.begin(), candidates.end(), [](const Block& a, const Block& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        for (const Block& cand : candidates)
            if (purity_of(cand) >= 1.0 - tol) {
                blocks.push_back(cand);
                remaining &= ~cand.mask();
                break;
            }
    }
    return Partition(std::move(blocks), n);
}

int operator_schmidt_rank(const Matrix& u, int dim_a, int dim_b, double tol) {
    const long dim = static_cast<long>(dim_a) * dim_b;
    if (u.rows() != dim || u.cols() != dim)
        throw DimMismatch("operator has size " + std::to_string(u.rows()) + ", expected " +
                          std::to_string(dim));
    if (max_abs_diff(u.adjoint() * u, Matrix::Identity(dim, dim)) > 1e-9)
        throw NotUnitary("operator is not unitary");

    // Reshuffle U[(i0 i1),(j0 j1)] -> M[(i0 j0),(i1 j1)]; the singular values
    // of M are the operator Schmidt coefficients.
    Matrix m(static_cast<long>(dim_a) * dim_a, static_cast<long>(dim_b) * dim_b);
    for (int i0 = 0; i0 < dim_a; ++i0)
        for (int j0 = 0; j0 < dim_a; ++j0)
            for (int i1 = 0; i1 < dim_b; ++i1)
                for (int j1 = 0; j1 < dim_b; ++j1)
                    m(static_cast<long>(i0) * dim_a + j0, static_cast<long>(i1) * dim_b + j1) =
                        u(static_cast<long>(i0) * dim_b + i1, static_cast<long>(j0) * dim_b + j1);
    Eigen::JacobiSVD<Matrix> svd(m);
    int rank = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()(k) > tol) ++rank;
    return rank;
}

namespace {

struct RawVerdict {
    std::optional<Partition> separable_via;
    std::optional<Block> npt_side;
    double npt_eigenvalue = 0.0;
};

void check_witnesses(const DensityMatrix& rho, const std::vector<WitnessedEnsemble>& witnesses) {
    for (const WitnessedEnsemble& w : witnesses) {
        if (!(w.spec == rho.spec()))
            throw WitnessMismatch("witness Hilbert spec differs from the state's");
        if (max_abs_diff(assemble(w).matrix(), rho.matrix()) > kWitnessTol)
            throw WitnessMismatch("witness over " + w.partition.to_string() +
                                  " does not reassemble to the state");
    }
}

// Both certificate branches, without witness revalidation.
RawVerdict raw_verdict(const DensityMatrix& rho, const Partition& s,
                       const std::vector<WitnessedEnsemble>& witnesses, double ppt_tol) {
    if (s.party_count() != rho.spec().party_count())
        throw MismatchedPartySet("partition party count differs from the state's");
    RawVerdict out;

    if (s.block_count() == 1) {
        out.separable_via = s;  // one-block separability is trivial
    } else {
        for (const WitnessedEnsemble& w : witnesses)
            if (refines(w.partition, s)) {
                out.separable_via = w.partition;
                break;
            }
    }

    // NPT across any two-group coarsening of s certifies entanglement.
    const int m = s.block_count();
    double best = 0.0;
    for (std::uint32_t mask = 0; m >= 2 && mask + 1 < (std::uint32_t{1} << (m - 1)); ++mask) {
        Block side = s.blocks()[0];
        for (int k = 1; k < m; ++k)
            if ((mask >> (k - 1)) & 1) side = side.unite(s.blocks()[k]);
        const double eig = min_pt_eigenvalue(rho, side);
        if (eig < -ppt_tol && eig < best) {
            best = eig;
            out.npt_side = side;
            out.npt_eigenvalue = eig;
        }
    }
    return out;
}

SeparabilityVerdict to_verdict(const RawVerdict& raw) {
    SeparabilityVerdict v;
    if (raw.separable_via) {
        v.kind = SeparabilityVerdict::Kind::SeparableCertified;
        v.witness_partition = raw.separable_via;
    } else if (raw.npt_side) {
        v.kind = SeparabilityVerdict::Kind::EntangledCertified;
        v.npt_side = raw.npt_side;
        v.npt_eigenvalue = raw.npt_eigenvalue;
    }
    return v;
}

}  // namespace

SeparabilityVerdict sigma_verdict(const DensityMatrix& rho, const Partition& s,
                                  const std::vector<WitnessedEnsemble>& witnesses, double ppt_tol) {
    check_witnesses(rho, witnesses);
    return to_verdict(raw_verdict(rho, s, witnesses, ppt_tol));
}

SeparabilityProfile compute_profile(const DensityMatrix& rho,
                                    const std::vector<WitnessedEnsemble>& witnesses,
                                    const ProfileOptions& opts) {
    const int n = rho.spec().party_count();
    if (n > kProfilePartyGuard)
        throw GuardExceeded("profile enumeration limited to " + std::to_string(kProfilePartyGuard) +
                            " parties");
    check_witnesses(rho, witnesses);

    std::vector<WitnessedEnsemble> all = witnesses;
    if (rho.purity() >= 1.0 - opts.purity_tol) {
        // Pure states have an exact decision procedure: factorize once and
        // witness the product structure.
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
        Eigen::Index top;
        es.eigenvalues().maxCoeff(&top);
        Vector amps = es.eigenvectors().col(top);
        amps /= amps.norm();
        PureState psi(std::move(amps), rho.spec());
        Partition finest = pure_factorization(psi, opts.purity_tol);
        WitnessedEnsemble w{finest, rho.spec(), {}};
        EnsembleTerm term;
        term.weight = 1.0;
        for (const Block& b : finest.blocks())
            term.factors.push_back(partial_trace(DensityMatrix::pure(psi), b).matrix());
        w.terms.push_back(std::move(term));
        if (max_abs_diff(assemble(w).matrix(), rho.matrix()) > 1e-6)
            throw InvariantError("pure-state factorization witness failed to reassemble");
        all.push_back(std::move(w));
    }

    SeparabilityProfile profile{{}, PartitionAntichain({Partition::one_block(n)}), {}};
    for_each_partition(n, [&](const Partition& s) {
        RawVerdict raw = raw_verdict(rho, s, all, opts.ppt_tol);
        if (raw.separable_via && raw.npt_side)
            throw InconsistentCertificates("partition " + s.to_string() +
                                           " has both a separability witness and an NPT cut");
        profile.verdicts.emplace_back(s, to_verdict(raw));
    });

    // Closure pass: separability propagates to coarser partitions, NPT
    // entanglement to finer ones.  With witness- and cut-based certificates
    // this is automatic; run it anyway and treat any change or clash as a
    // certificate bug.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [p, vp] : profile.verdicts)
            for (auto& [q, vq] : profile.verdicts) {
                if (!refines(p, q)) continue;  // q is coarser-or-equal
                if (vp.kind == SeparabilityVerdict::Kind::SeparableCertified) {
                    if (vq.kind == SeparabilityVerdict::Kind::EntangledCertified)
                        throw InconsistentCertificates("closure clash between " + p.to_string() +
                                                       " and " + q.to_string());
                    if (vq.kind == SeparabilityVerdict::Kind::Unknown) {
                        vq.kind = SeparabilityVerdict::Kind::SeparableCertified;
                        vq.witness_partition = vp.witness_partition;
                        changed = true;
                    }
                }
                if (vq.kind == SeparabilityVerdict::Kind::EntangledCertified) {
                    if (vp.kind == SeparabilityVerdict::Kind::SeparableCertified)
                        throw InconsistentCertificates("closure clash between " + p.to_string() +
                                                       " and " + q.to_string());
                    if (vp.kind == SeparabilityVerdict::Kind::Unknown) {
                        vp.kind = SeparabilityVerdict::Kind::EntangledCertified;
                        vp.npt_side = vq.npt_side;
                        vp.npt_eigenvalue = vq.npt_eigenvalue;
                        changed = true;
                    }
                }
            }
    }

    std::vector<Partition> separable;
    for (const auto& [p, v] : profile.verdicts) {
        if (v.kind == SeparabilityVerdict::Kind::SeparableCertified) separable.push_back(p);
        if (v.kind == SeparabilityVerdict::Kind::Unknown) profile.unknown.push_back(p);
    }
    profile.certified_maximal = maximal_elements(separable);
    return profile;
}

PureState ghz_state(int parties, int dim) {
    HilbertSpec spec{std::vector<int>(parties, dim)};
    Vector amps = Vector::Zero(spec.total_dim());
    long diag = 0;
    for (int k = 0; k < parties; ++k) diag = diag * dim + 1;
    for (int j = 0; j < dim; ++j) amps(j * diag) = 1.0 / std::sqrt(static_cast<double>(dim));
    return PureState(std::move(amps), std::move(spec));
}

PureState w_state(int parties) {
    HilbertSpec spec = HilbertSpec::qubits(parties);
    Vector amps = Vector::Zero(spec.total_dim());
    for (int k = 0; k < parties; ++k)
        amps(long{1} << (parties - 1 - k)) = 1.0 / std::sqrt(static_cast<double>(parties));
    return PureState(std::move(amps), std::move(spec));
}

PureState bell_state(int which) {
    if (which < 0 || which > 3) throw IndexOutOfRange("bell_state index must be 0..3");
    const double s = 1.0 / std::sqrt(2.0);
    Vector amps = Vector::Zero(4);
    switch (which) {
        case 0: amps(0) = s; amps(3) = s; break;   // phi+
        case 1: amps(0) = s; amps(3) = -s; break;  // phi-
        case 2: amps(1) = s; amps(2) = s; break;   // psi+
        case 3: amps(1) = s; amps(2) = -s; break;  // psi-
    }
    return PureState(std::move(amps), HilbertSpec::qubits(2));
}

PureState haar_random_state(const HilbertSpec& spec, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector amps(spec.total_dim());
    for (long i = 0; i < spec.total_dim(); ++i) amps(i) = Complex{gauss(rng), gauss(rng)};
    amps /= amps.norm();
    return PureState(std::move(amps), spec);
}

}  // namespace seppoly
