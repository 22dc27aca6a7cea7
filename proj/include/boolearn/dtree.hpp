#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boolearn/bits.hpp"
#include "boolearn/pla.hpp"

namespace boolearn
{

/*! \brief Two-operand operators used for fringe features.
 *
 * The ten non-degenerate functions of two variables plus the two
 * negated-operand forms that coincide with NOR and NAND. `_l` / `_r` name the
 * operand carrying the negation (left = a, right = b).
 */
enum class fringe_op : uint8_t
{
  and_,
  or_,
  nand,
  nor,
  xor_,
  xnor,
  and_not_l,
  and_not_r,
  or_not_l,
  or_not_r,
  nota_and_notb,
  nota_or_notb
};

inline constexpr std::array<fringe_op, 12> all_fringe_ops = {
    fringe_op::and_,      fringe_op::or_,       fringe_op::nand,     fringe_op::nor,
    fringe_op::xor_,      fringe_op::xnor,      fringe_op::and_not_l, fringe_op::and_not_r,
    fringe_op::or_not_l,  fringe_op::or_not_r,  fringe_op::nota_and_notb, fringe_op::nota_or_notb };

bool apply_op( fringe_op op, bool a, bool b );
/* bit (2a + b) holds apply_op(op, a, b) */
uint8_t op_truth_table( fringe_op op );
std::string_view op_name( fringe_op op );
fringe_op op_from_name( std::string_view name );
/* operator for a non-degenerate 2-input truth table; nullopt when it depends on < 2 operands */
std::optional<fringe_op> canonical_op( uint8_t truth_table );

struct feature
{
  bool composite = false;
  uint32_t input = 0;
  fringe_op op = fringe_op::and_;
  uint32_t a = 0;
  uint32_t b = 0;
};

/* inputs occupy ids [0, num_inputs); composites follow in registration order */
class feature_registry
{
public:
  explicit feature_registry( uint32_t num_inputs = 0 );

  uint32_t num_inputs() const { return num_inputs_; }
  uint32_t size() const { return static_cast<uint32_t>( features_.size() ); }
  uint32_t composite_count() const { return size() - num_inputs_; }
  feature const& operator[]( uint32_t id ) const { return features_.at( id ); }

  uint32_t add_composite( fringe_op op, uint32_t a, uint32_t b );
  /* existing feature computing op(a, b) or its complement */
  std::optional<uint32_t> find_equivalent( fringe_op op, uint32_t a, uint32_t b ) const;

  bool evaluate( uint32_t id, std::span<word const> row ) const;
  /* input indices a feature depends on, ascending */
  std::vector<uint32_t> support( uint32_t id ) const;
  /* value bitsets over samples for every feature, given input columns */
  std::vector<std::vector<word>> columns( std::vector<std::vector<word>> input_columns ) const;

private:
  uint32_t num_inputs_;
  std::vector<feature> features_;
};

/*! \brief Feature values and labels for a list of dataset rows.
 *
 * Rows may repeat, which is how bootstrap samples are represented.
 */
class sample_matrix
{
public:
  sample_matrix( dataset const& data, feature_registry const& features );
  sample_matrix( dataset const& data, feature_registry const& features, std::vector<std::size_t> rows );

  std::size_t size() const { return rows_.size(); }
  std::size_t words() const { return words_for( rows_.size() ); }
  std::span<word const> column( uint32_t feature ) const { return columns_[feature]; }
  std::span<word const> labels() const { return labels_; }
  std::span<word const> input_row( std::size_t sample ) const { return data_->row( rows_[sample] ); }
  feature_registry const& features() const { return *features_; }
  dataset const& data() const { return *data_; }
  std::vector<word> all_samples() const { return ones( size() ); }

private:
  dataset const* data_;
  feature_registry const* features_;
  std::vector<std::size_t> rows_;
  std::vector<std::vector<word>> columns_;
  std::vector<word> labels_;
};

struct tree_node
{
  int32_t feature = -1; /* -1 marks a leaf */
  bool label = false;   /* leaf value, or the node's majority label */
  uint32_t lo = 0;
  uint32_t hi = 0;

  bool is_leaf() const { return feature < 0; }
};

class decision_tree
{
public:
  feature_registry features;
  std::vector<tree_node> nodes; /* nodes[0] is the root */

  uint32_t num_inputs() const { return features.num_inputs(); }
  uint32_t depth() const;
  uint32_t num_splits() const;
  bool predict( std::span<word const> row ) const;
};

struct dt_params
{
  std::optional<uint32_t> max_depth;
  uint32_t min_samples = 1;
  double fdecomp_threshold = 0.1;
  uint32_t fringe_iterations = 8;
  uint32_t fringe_feature_limit = 64;
  uint64_t seed = 0;
};

/* base-2 entropy of a binary distribution */
double entropy( std::size_t ones, std::size_t total );
/* entropy reduction of splitting (ones, total) into hi = (hi_ones, hi_total) and the rest */
double information_gain( std::size_t ones, std::size_t total, std::size_t hi_ones, std::size_t hi_total );

decision_tree train_dt( dataset const& data, dt_params const& params );
/* restricted to `allowed` feature ids of the sample matrix's registry */
decision_tree train_dt( sample_matrix const& samples, dt_params const& params, std::span<uint32_t const> allowed );

/*! \brief Functional-decomposition split selection.
 *
 * Scans `candidates` in order and returns the last feature for which one
 * branch is constant, or for which no counterexample to branch
 * complementarity exists among the samples in `node_mask`. A counterexample
 * is a pair of samples on opposite branches that agree on every input
 * outside the feature's support and carry equal labels.
 */
std::optional<uint32_t> fdecomp_select( sample_matrix const& samples, std::span<word const> node_mask,
                                        std::span<uint32_t const> candidates );

/* iterated training with composite features mined from the tree fringe */
decision_tree fringe_train( dataset const& data, dt_params const& params );

bool predict( decision_tree const& tree, std::span<word const> row );
double evaluate( decision_tree const& tree, dataset const& data );

/* line format: "tree <inputs> <composites>", "F <op> <a> <b>" per composite, then preorder "S <feat>" / "L <bit>" */
std::string serialize( decision_tree const& tree );
decision_tree deserialize_tree( std::string_view text );

} // namespace boolearn
