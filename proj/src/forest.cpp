#include "boolearn/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boolearn/parallel.hpp"
#include "boolearn/random.hpp"

namespace boolearn
{

forest train_rf( dataset const& data, rf_params const& params )
{
  if ( params.n_trees % 2 == 0 )
    throw error( "train_rf: tree count must be odd" );
  if ( !( params.feature_fraction > 0.0 && params.feature_fraction <= 1.0 ) )
    throw error( "train_rf: feature_fraction must be in (0, 1]" );
  if ( data.empty() )
    throw error( "train_rf: empty dataset" );

  uint32_t const n = data.num_inputs();
  auto const subset_size = std::min<uint32_t>(
      n, static_cast<uint32_t>( std::ceil( params.feature_fraction * static_cast<double>( n ) - 1e-9 ) ) );

  feature_registry const features( n );
  forest out;
  out.trees.resize( params.n_trees );
  out.feature_subsets.resize( params.n_trees );

  parallel_for( params.n_trees, [&]( std::size_t t ) {
    rng gen( derive_seed( params.seed, t ) );

    std::vector<std::size_t> rows( data.size() );
    if ( params.n_trees == 1 )
      std::iota( rows.begin(), rows.end(), std::size_t{ 0 } );
    else
      for ( auto& r : rows )
        r = gen.below( data.size() );

    std::vector<uint32_t> all( n );
    std::iota( all.begin(), all.end(), 0u );
    /* partial Fisher-Yates for a subset without replacement */
    for ( uint32_t i = 0; i < subset_size; ++i )
      std::swap( all[i], all[i + gen.below( n - i )] );
    std::vector<uint32_t> subset( all.begin(), all.begin() + subset_size );
    std::sort( subset.begin(), subset.end() );

    auto tree_params = params.tree;
    tree_params.max_depth = params.max_depth;
    sample_matrix samples( data, features, std::move( rows ) );
    out.trees[t] = train_dt( samples, tree_params, subset );
    out.feature_subsets[t] = std::move( subset );
  } );
  return out;
}

bool predict_rf( forest const& f, std::span<word const> row )
{
  std::size_t votes = 0;
  for ( auto const& t : f.trees )
    votes += t.predict( row );
  return 2 * votes > f.trees.size();
}

double evaluate( forest const& f, dataset const& data )
{
  if ( data.empty() )
    return 0.0;
  std::size_t correct = 0;
  for ( std::size_t r = 0; r < data.size(); ++r )
    correct += predict_rf( f, data.row( r ) ) == data.label( r );
  return static_cast<double>( correct ) / static_cast<double>( data.size() );
}

} // namespace boolearn
