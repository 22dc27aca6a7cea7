#include "boolearn/lutnet.hpp"

#include <numeric>

#include "boolearn/random.hpp"

namespace boolearn
{

lut_network build_topology( uint32_t num_inputs, uint32_t k, uint32_t layers, uint32_t luts_per_layer,
                            wiring_scheme scheme, uint64_t seed )
{
  if ( k < 1 || k > 16 )
    throw error( "build_topology: k must be in [1, 16]" );
  if ( layers < 1 )
    throw error( "build_topology: at least one layer is required" );
  if ( luts_per_layer < 1 )
    throw error( "build_topology: at least one LUT per layer is required" );
  if ( num_inputs < 1 )
    throw error( "build_topology: at least one input is required" );

  lut_network net;
  net.num_inputs = num_inputs;
  net.k = k;
  net.scheme = scheme;
  net.seed = seed;
  net.layers.resize( layers );

  rng gen( seed );
  uint32_t prev_width = num_inputs;
  for ( uint32_t l = 0; l < layers; ++l )
  {
    uint32_t const width = l + 1 == layers ? 1u : luts_per_layer;
    std::vector<uint32_t> pool;
    std::size_t pool_pos = 0;
    auto draw = [&]() -> uint32_t {
      if ( scheme == wiring_scheme::random )
        return static_cast<uint32_t>( gen.below( prev_width ) );
      /* every source is used once before any is reused */
      if ( pool_pos == pool.size() )
      {
        pool.resize( prev_width );
        std::iota( pool.begin(), pool.end(), 0u );
        gen.shuffle( pool );
        pool_pos = 0;
      }
      return pool[pool_pos++];
    };

    auto& layer = net.layers[l];
    layer.resize( width );
    for ( auto& cell : layer )
    {
      cell.fanins.resize( k );
      for ( auto& f : cell.fanins )
        f = draw();
      cell.table.assign( words_for( std::size_t{ 1 } << k ), 0 );
    }
    prev_width = width;
  }
  return net;
}

namespace
{

/* local pattern masks: for each m, samples whose fanin values spell m */
std::vector<std::vector<word>> pattern_masks( lut const& cell, std::vector<std::vector<word>> const& sources,
                                              std::size_t words, std::size_t samples )
{
  std::size_t const patterns = std::size_t{ 1 } << cell.fanins.size();
  std::vector<std::vector<word>> masks( patterns, ones( samples ) );
  for ( std::size_t m = 0; m < patterns; ++m )
  {
    auto& mask = masks[m];
    for ( std::size_t j = 0; j < cell.fanins.size(); ++j )
    {
      auto const& src = sources[cell.fanins[j]];
      bool const want = ( m >> j ) & 1u;
      for ( std::size_t w = 0; w < words; ++w )
        mask[w] &= want ? src[w] : ~src[w];
    }
  }
  return masks;
}

} // namespace

lut_network memorize( lut_network net, dataset const& data )
{
  if ( data.empty() )
    throw error( "memorize: empty dataset" );
  if ( data.num_inputs() != net.num_inputs )
    throw error( "memorize: dataset width mismatch" );

  bool const fallback = data.majority_label();
  auto const& labels = data.label_words();
  std::size_t const words = words_for( data.size() );
  auto sources = data.columns();

  for ( auto& layer : net.layers )
  {
    std::vector<std::vector<word>> outputs( layer.size(), std::vector<word>( words, 0 ) );
    for ( std::size_t i = 0; i < layer.size(); ++i )
    {
      auto& cell = layer[i];
      auto const masks = pattern_masks( cell, sources, words, data.size() );
      std::fill( cell.table.begin(), cell.table.end(), 0 );
      for ( std::size_t m = 0; m < masks.size(); ++m )
      {
        auto const total = popcount( masks[m] );
        auto const hits = popcount_and( masks[m], labels );
        bool value = fallback;
        if ( 2 * hits > total )
          value = true;
        else if ( 2 * hits < total )
          value = false;
        set_bit( cell.table, m, value );
        if ( value )
          for ( std::size_t w = 0; w < words; ++w )
            outputs[i][w] |= masks[m][w];
      }
    }
    sources = std::move( outputs );
  }
  return net;
}

bool lut_network::predict( std::span<word const> row ) const
{
  if ( row.size() != std::max<std::size_t>( 1, words_for( num_inputs ) ) )
    throw error( "predict_lutnet: row width mismatch" );
  std::vector<bool> values( num_inputs );
  for ( uint32_t i = 0; i < num_inputs; ++i )
    values[i] = get_bit( row, i );
  for ( auto const& layer : layers )
  {
    std::vector<bool> next( layer.size() );
    for ( std::size_t i = 0; i < layer.size(); ++i )
    {
      uint32_t pattern = 0;
      for ( std::size_t j = 0; j < layer[i].fanins.size(); ++j )
        if ( values[layer[i].fanins[j]] )
          pattern |= 1u << j;
      next[i] = layer[i].value( pattern );
    }
    values = std::move( next );
  }
  return values[0];
}

bool predict_lutnet( lut_network const& net, std::span<word const> row )
{
  return net.predict( row );
}

double evaluate( lut_network const& net, dataset const& data )
{
  if ( data.empty() )
    return 0.0;
  std::size_t correct = 0;
  for ( std::size_t r = 0; r < data.size(); ++r )
    correct += net.predict( data.row( r ) ) == data.label( r );
  return static_cast<double>( correct ) / static_cast<double>( data.size() );
}

} // namespace boolearn
