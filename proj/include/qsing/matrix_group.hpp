#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsing/matrix.hpp"

namespace qsing {

/// A finite matrix group, closed under multiplication, produced by
/// breadth-first closure from labeled generators.  All elements share one
/// lifted conductor, so serialization keys decide equality.  Immutable after
/// generation; distinct groups may be generated concurrently.
class MatrixGroup {
  public:
    int dim() const { return dim_; }
    std::int64_t conductor() const { return conductor_; }
    std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }

    const std::vector<CMatrix>& elements() const { return elements_; }
    const CMatrix& element(int i) const { return elements_[i]; }
    const std::vector<std::pair<std::string, CMatrix>>& gens() const { return gens_; }

    /// BFS DAG: element(i) = element(parent(i)) * gen(gen_index(i)) for i > 0;
    /// element(0) is the identity.  Shared across representations of one
    /// abstract group when their generators are listed in the same order.
    int parent(int i) const { return parent_[i]; }
    int gen_index(int i) const { return gen_index_[i]; }

    /// Index of a matrix in the element list, or -1.
    int find(const CMatrix& m) const;
    /// Index of the product element(i) * element(j).
    int mul(int i, int j) const;
    int inverse(int i) const;
    std::int64_t element_order(int i) const;
    /// lcm of all element orders.
    std::int64_t exponent() const;

    /// Subgroup closure of the given element indices; sorted indices.
    std::vector<int> close_indices(std::vector<int> seed) const;

    friend MatrixGroup generate(const std::vector<std::pair<std::string, CMatrix>>& gens,
                                std::int64_t max_order);

  private:
    int dim_ = 0;
    std::int64_t conductor_ = 1;
    std::vector<CMatrix> elements_;
    std::vector<int> parent_;
    std::vector<int> gen_index_;
    std::vector<std::pair<std::string, CMatrix>> gens_;
    std::unordered_map<std::string, int> index_;
    mutable std::vector<std::int64_t> order_cache_;
};

/// Breadth-first closure under multiplication.  Throws BoundExceeded when
/// the closure passes max_order (generators of infinite order, or the bound
/// is too small).
MatrixGroup generate(const std::vector<std::pair<std::string, CMatrix>>& gens,
                     std::int64_t max_order);

/// True iff no non-identity element has eigenvalue 1 (the isolatedness
/// criterion for the singularity).
bool is_fixed_point_free(const MatrixGroup& g);

/// True iff every subgroup of order pq (p, q prime, not necessarily
/// distinct) is cyclic.  Pair closure over prime-order elements finds every
/// such subgroup, a group of order pq being 2-generated.
bool pq_conditions_hold(const MatrixGroup& g, std::int64_t bound = 500);

enum class SylowShape { Cyclic, GeneralizedQuaternion, Other };
std::string to_string(SylowShape s);

/// One Sylow p-subgroup per prime p dividing |G|, classified.  Construction
/// is greedy: seed with a maximal-order p-element and extend by p-elements
/// normalizing the current subgroup.
std::map<std::int64_t, SylowShape> sylow_shape(const MatrixGroup& g, std::int64_t bound = 500);

} // namespace qsing
