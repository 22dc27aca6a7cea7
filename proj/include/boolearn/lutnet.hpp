#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boolearn/bits.hpp"
#include "boolearn/pla.hpp"

namespace boolearn
{

enum class wiring_scheme
{
  random,
  unique_random
};

struct lut
{
  std::vector<uint32_t> fanins; /* indices into the previous layer (or primary inputs) */
  std::vector<word> table;      /* 2^k bits, bit m = output for local pattern m */

  bool value( uint32_t pattern ) const { return get_bit( table, pattern ); }
};

/*! \brief Layered network of k-input lookup tables.
 *
 * Layer 0 reads primary inputs, layer i reads layer i-1, and the last layer
 * holds exactly one LUT whose output is the network output. Bit j of a
 * LUT's local pattern is the value of fanins[j].
 */
struct lut_network
{
  uint32_t num_inputs = 0;
  uint32_t k = 4;
  wiring_scheme scheme = wiring_scheme::unique_random;
  uint64_t seed = 0;
  std::vector<std::vector<lut>> layers;

  bool predict( std::span<word const> row ) const;
};

struct lutnet_params
{
  uint32_t k = 4;
  uint32_t layers = 4;
  uint32_t luts_per_layer = 64;
  wiring_scheme scheme = wiring_scheme::unique_random;
  uint64_t seed = 0;
};

lut_network build_topology( uint32_t num_inputs, uint32_t k, uint32_t layers, uint32_t luts_per_layer,
                            wiring_scheme scheme, uint64_t seed );
inline lut_network build_topology( uint32_t num_inputs, lutnet_params const& p )
{
  return build_topology( num_inputs, p.k, p.layers, p.luts_per_layer, p.scheme, p.seed );
}

/* fits every table to the majority target label of the rows reaching each local pattern */
lut_network memorize( lut_network net, dataset const& data );

bool predict_lutnet( lut_network const& net, std::span<word const> row );
double evaluate( lut_network const& net, dataset const& data );

} // namespace boolearn
