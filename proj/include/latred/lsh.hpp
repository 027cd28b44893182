#pragma once

#include "latred/lsh_params.hpp"
#include "latred/reduction.hpp"
#include "latred/types.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace latred {

/// Hyperplane sketch: bit j of the key is 1 iff <a_j, v> >= 0 (the boundary
/// goes to 1). `hyperplanes` holds the a_j as columns; k = 0 yields key 0.
std::uint64_t sketch(const Matrix& hyperplanes, const Vector& v);

/// t angular-LSH tables of k-bit sketches over the basis columns. Each column
/// lives in exactly one bucket per table; the insertion keys are remembered
/// so a column can be removed after its vector has changed.
class HashTableSet {
  public:
    HashTableSet(Eigen::Index ambient_dim, Eigen::Index n_columns, const LshParams& params);

    void insert(Eigen::Index col, const Vector& value);
    void remove(Eigen::Index col);

    /// Union over all tables of the buckets keyed by sketch(v) and
    /// sketch(-v), ascending, excluding `query_col` itself.
    std::vector<Eigen::Index> candidates(Eigen::Index query_col, const Vector& v) const;

    int tables() const { return static_cast<int>(planes_.size()); }
    int bits() const { return bits_; }
    const Matrix& hyperplanes(int table) const { return planes_[table]; }

    /// Every column of [0, n_columns) stored in exactly one bucket per table.
    bool consistent(Eigen::Index n_columns) const;

  private:
    using Bucket = std::vector<Eigen::Index>;
    int bits_;
    std::vector<Matrix> planes_;                               // per table, m x k
    std::vector<std::unordered_map<std::uint64_t, Bucket>> buckets_;  // per table
    std::vector<std::vector<std::uint64_t>> stored_keys_;      // [table][col]
    std::vector<char> present_;
};

/// Hash all basis columns into fresh tables.
HashTableSet build_tables(const Basis& basis, const LshParams& params);

/// Free-function view of HashTableSet::candidates.
std::vector<Eigen::Index> query_candidates(const HashTableSet& tables, Eigen::Index i,
                                           const Vector& b_i);

/// SR with the hash-backed pairwise subroutine: candidates come from the
/// tables, the accepted column is rehashed, and vector_comparisons counts the
/// candidate set size per query.
ReductionOutcome sr_hash_reduce(const Basis& basis, double tau, const LshParams& params,
                                std::optional<long long> max_updates = std::nullopt);

/// Parameter balancing for an (r1, r2, p1, p2)-sensitive family over a list
/// of size N: rho = log(1/p1)/log(1/p2), k = ceil(log N / log(1/p2)),
/// t = ceil(N^rho).
struct LshPlan {
    double rho;
    int k;
    int t;
};
LshPlan lsh_parameter_helper(double p1, double p2, long long n_items);

/// Experiment defaults: t = round(n^0.585), k = round(log2 n).
LshParams default_lsh_params(Eigen::Index n, std::uint64_t seed);

}  // namespace latred
