#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cobar {

/// Raised for malformed input (bad JSON schema, unknown builtin, bad references).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index of a nondegenerate simplex inside a ReducedSimplicialSet.
/// Index 0 is always the basepoint; positive indices are ordered by
/// (dimension, declaration order).
using SimplexId = std::uint32_t;
inline constexpr SimplexId kBasepoint = 0;

/// A simplicial operator in Eilenberg-Zilber normal form
///
///     s_{j_1} ... s_{j_p} d_{i_1} ... d_{i_q}     j_1 > ... > j_p,  i_1 < ... < i_q
///
/// acting on simplices of dimension source_dim(). Faces are applied first.
class SimplicialOperator {
 public:
  enum class Kind : std::uint8_t { Face, Degeneracy };
  struct Step {
    Kind kind;
    int index;
    bool operator==(const Step&) const = default;
  };

  SimplicialOperator() = default;

  static SimplicialOperator identity(int dim);
  static SimplicialOperator face(int i, int source_dim);
  static SimplicialOperator degeneracy(int j, int source_dim);
  /// Builds the normal form of the elementary operators `steps`, listed in the
  /// order they are applied. Throws std::invalid_argument on an index that is
  /// out of range for the dimension reached at that step.
  static SimplicialOperator from_steps(const std::vector<Step>& steps, int source_dim);
  /// Builds from explicit normal-form lists; throws if they are not in normal form.
  static SimplicialOperator from_normal_form(std::vector<int> degeneracies, std::vector<int> faces,
                                             int source_dim);

  const std::vector<int>& degeneracies() const { return degeneracies_; }
  const std::vector<int>& faces() const { return faces_; }
  int source_dim() const { return source_dim_; }
  int target_dim() const {
    return source_dim_ - static_cast<int>(faces_.size()) + static_cast<int>(degeneracies_.size());
  }
  bool is_identity() const { return faces_.empty() && degeneracies_.empty(); }

  /// The operator word in application order (faces first, largest face index first).
  std::vector<Step> steps() const;

  bool operator==(const SimplicialOperator&) const = default;

 private:
  std::vector<int> degeneracies_;
  std::vector<int> faces_;
  int source_dim_ = 0;
};

/// Normal form of "apply `first`, then `second`". Throws std::invalid_argument
/// when first.target_dim() != second.source_dim().
SimplicialOperator compose(const SimplicialOperator& first, const SimplicialOperator& second);

std::ostream& operator<<(std::ostream& os, const SimplicialOperator& op);

/// A simplex of K in normal form: a degeneracy word applied to a nondegenerate base.
struct SimplexRef {
  std::vector<int> degeneracies;  // strictly decreasing
  SimplexId base = kBasepoint;
  int dim = 0;

  bool is_degenerate() const { return !degeneracies.empty(); }
  bool operator==(const SimplexRef&) const = default;
  auto operator<=>(const SimplexRef&) const = default;
};

class ReducedSimplicialSet;

/// Builder-facing description of one nondegenerate simplex.
struct FaceSpec {
  std::vector<int> degeneracies;
  std::string base;  // "*" is the vertex
};
struct SimplexSpec {
  std::string id;
  int dim = 0;
  std::vector<FaceSpec> faces;
};

/// A finite simplicial set with a single vertex, presented by its
/// nondegenerate simplices and their face tables.
///
/// Construction checks only referential integrity (unique ids, known bases,
/// face counts, well-formed degeneracy words). Dimension consistency and the
/// simplicial identities are checked by validate().
class ReducedSimplicialSet {
 public:
  ReducedSimplicialSet(std::string name, std::vector<SimplexSpec> simplices);

  const std::string& name() const { return name_; }
  std::size_t size() const { return dims_.size(); }  // including the vertex
  int dim(SimplexId id) const { return dims_.at(id); }
  const std::string& id_name(SimplexId id) const { return names_.at(id); }
  SimplexId find(std::string_view name) const;
  /// d_i of the nondegenerate simplex `id`, exactly as stored.
  const SimplexRef& face(SimplexId id, int i) const;
  const std::vector<SimplexRef>& faces(SimplexId id) const { return faces_.at(id); }

  int max_dim() const;
  /// Nondegenerate simplices of the given dimension, in canonical order.
  std::vector<SimplexId> simplices_of_dim(int dim) const;
  std::size_t count_of_dim(int dim) const;
  bool has_edges() const { return count_of_dim(1) > 0; }

  SimplexRef ref(SimplexId id) const { return SimplexRef{{}, id, dims_.at(id)}; }
  std::string describe(const SimplexRef& r) const;

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<int> dims_;
  std::vector<std::vector<SimplexRef>> faces_;
  std::unordered_map<std::string, SimplexId> by_name_;
};

/// Applies an operator whose source dimension is r.dim to the simplex r.
SimplexRef apply_operator(const SimplicialOperator& op, const SimplexRef& r,
                          const ReducedSimplicialSet& K);
/// d_i r. Throws std::out_of_range if i > r.dim or r.dim == 0.
SimplexRef apply_face(int i, const SimplexRef& r, const ReducedSimplicialSet& K);
/// The face spanned by the listed vertices (strictly increasing) of r.
SimplexRef restrict_to_vertices(const SimplexRef& r, const std::vector<int>& vertices,
                                const ReducedSimplicialSet& K);
/// (r|[0..i], r|[i..n]).
std::pair<SimplexRef, SimplexRef> front_back_restrictions(const SimplexRef& r, int i,
                                                          const ReducedSimplicialSet& K);

struct ValidationReport {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const ReducedSimplicialSet& K);

/// "sphere:n" (n >= 2), "wedge-circles:k" (k >= 1), "torus", "rp2".
ReducedSimplicialSet builtin_space(std::string_view name);
std::vector<std::string> builtin_names();

/// JSON schema:
///   {"name": str, "simplices": {"<dim>": [{"id": str, "faces": [FaceRef...]}]}}
///   FaceRef = {"degeneracies": [int...], "base": str}, base "*" is the vertex.
ReducedSimplicialSet parse_simplicial_set(std::string_view json_text);
std::string to_json(const ReducedSimplicialSet& K);

}  // namespace cobar
