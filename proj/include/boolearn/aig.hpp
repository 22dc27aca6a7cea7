#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "boolearn/bits.hpp"

namespace boolearn
{

/* AIGER-style literal: 2 * node index + complement bit */
class literal
{
public:
  constexpr literal() = default;
  constexpr explicit literal( uint32_t raw ) : raw_( raw ) {}
  static constexpr literal make( uint32_t index, bool complemented = false )
  {
    return literal( 2u * index + ( complemented ? 1u : 0u ) );
  }

  constexpr uint32_t raw() const { return raw_; }
  constexpr uint32_t index() const { return raw_ >> 1; }
  constexpr bool complemented() const { return raw_ & 1u; }
  constexpr bool is_constant() const { return raw_ < 2u; }

  constexpr literal operator!() const { return literal( raw_ ^ 1u ); }
  constexpr literal operator^( bool c ) const { return literal( raw_ ^ ( c ? 1u : 0u ) ); }

  constexpr auto operator<=>( literal const& ) const = default;

private:
  uint32_t raw_ = 0;
};

inline constexpr literal lit_false{ 0u };
inline constexpr literal lit_true{ 1u };

/*! \brief Structurally hashed And-Inverter Graph with a single output.
 *
 * Node 0 is the constant, nodes 1..num_inputs are primary inputs and the
 * remaining nodes are AND gates stored in topological order with
 * fanin0 <= fanin1. Nodes that become unreachable from the output stay in
 * storage until compact() is called.
 */
class aig
{
public:
  explicit aig( uint32_t num_inputs = 0 );

  uint32_t num_inputs() const { return num_inputs_; }
  literal input( uint32_t i ) const;

  /* total node count including constant and inputs */
  uint32_t num_nodes() const { return 1u + num_inputs_ + static_cast<uint32_t>( fanins_.size() ); }
  /* stored AND nodes, reachable or not */
  uint32_t num_ands() const { return static_cast<uint32_t>( fanins_.size() ); }

  bool is_and( uint32_t index ) const { return index > num_inputs_; }
  bool is_input( uint32_t index ) const { return index >= 1 && index <= num_inputs_; }
  std::pair<literal, literal> const& fanins( uint32_t index ) const { return fanins_[index - num_inputs_ - 1u]; }

  literal new_and( literal a, literal b );
  literal new_or( literal a, literal b ) { return !new_and( !a, !b ); }
  literal new_xor( literal a, literal b );
  /* sel ? hi : lo */
  literal new_mux( literal sel, literal hi, literal lo );

  void set_output( literal l );
  literal output() const { return output_; }

  /* copy holding only nodes reachable from the output, inputs preserved */
  aig compact() const;

  /* per-node flag: reachable from the output */
  std::vector<bool> reachable() const;

private:
  void check( literal l ) const;

  uint32_t num_inputs_;
  std::vector<std::pair<literal, literal>> fanins_;
  std::unordered_map<uint64_t, uint32_t> strash_;
  literal output_ = lit_false;
};

/* one word per input, 64 patterns per word */
word simulate( aig const& g, std::span<word const> inputs );

/* one bitset per input, all of length `num_words` */
std::vector<word> simulate( aig const& g, std::vector<std::vector<word>> const& columns );

/* scalar reference evaluation, one pattern */
bool evaluate_pattern( aig const& g, std::vector<bool> const& inputs );

struct aig_metrics
{
  uint32_t and_nodes = 0;
  uint32_t levels = 0;
};

aig_metrics metrics( aig const& g );

std::string write_aag( aig const& g );
aig read_aag( std::string_view text );
aig read_aag_file( std::string const& path );
void write_aag_file( std::string const& path, aig const& g );

struct approx_params
{
  uint32_t budget = 5000;
  uint32_t patterns = 4096;
  uint32_t level_exclusion = 5;
  uint64_t seed = 0;
};

/*! \brief Shrinks an AIG to the budget by constant substitution.
 *
 * Each round simulates random patterns and replaces the most skewed node
 * (at least `level_exclusion` levels away from the output) by the constant
 * it most often takes. When no node is eligible the exclusion is relaxed.
 * If `size_trace` is given it receives the reachable AND count before the
 * first round and after each round.
 */
aig approximate_to_budget( aig const& g, approx_params const& params, std::vector<uint32_t>* size_trace = nullptr );

} // namespace boolearn
