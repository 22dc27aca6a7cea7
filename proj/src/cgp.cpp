#include "boolearn/cgp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <json.hpp>

namespace boolearn
{

bool cgp_genome::is_valid() const
{
  for ( std::size_t c = 0; c < columns.size(); ++c )
  {
    auto const limit = num_inputs + c;
    if ( columns[c].fanin0 >= limit || columns[c].fanin1 >= limit )
      return false;
  }
  return output.source < num_sources();
}

std::vector<bool> cgp_genome::active() const
{
  std::vector<bool> mark( columns.size(), false );
  if ( output.source >= num_inputs )
    mark[output.source - num_inputs] = true;
  for ( std::size_t c = columns.size(); c-- > 0; )
  {
    if ( !mark[c] )
      continue;
    for ( auto src : { columns[c].fanin0, columns[c].fanin1 } )
      if ( src >= num_inputs )
        mark[src - num_inputs] = true;
  }
  return mark;
}

uint32_t cgp_genome::phenotype_size() const
{
  auto const mark = active();
  return static_cast<uint32_t>( std::count( mark.begin(), mark.end(), true ) );
}

namespace
{

cgp_gene random_gene( uint32_t sources, rng& gen )
{
  cgp_gene g;
  g.func = gen.bit() ? cgp_func::xor_ : cgp_func::and_;
  g.fanin0 = static_cast<uint32_t>( gen.below( sources ) );
  g.inv0 = gen.bit();
  g.fanin1 = static_cast<uint32_t>( gen.below( sources ) );
  g.inv1 = gen.bit();
  return g;
}

} // namespace

cgp_genome random_genome( uint32_t num_inputs, uint32_t columns, rng& gen )
{
  if ( num_inputs == 0 )
    throw error( "random_genome: at least one input is required" );
  cgp_genome genome;
  genome.num_inputs = num_inputs;
  genome.columns.reserve( columns );
  for ( uint32_t c = 0; c < columns; ++c )
    genome.columns.push_back( random_gene( num_inputs + c, gen ) );
  genome.output.source = static_cast<uint32_t>( gen.below( genome.num_sources() ) );
  genome.output.inv = gen.bit();
  return genome;
}

cgp_genome encode_aig( aig const& g, double size_factor, uint64_t seed )
{
  if ( size_factor < 1.0 )
    throw error( "encode_aig: size_factor must be >= 1" );
  auto const c = g.compact();
  uint32_t const n = c.num_inputs();
  if ( n == 0 )
    throw error( "encode_aig: at least one input is required" );

  cgp_genome genome;
  genome.num_inputs = n;
  auto source_of = [&]( literal l ) { return l.index() - 1u; };

  for ( uint32_t node = n + 1u; node < c.num_nodes(); ++node )
  {
    auto const& [a, b] = c.fanins( node );
    genome.columns.push_back( { cgp_func::and_, source_of( a ), a.complemented(), source_of( b ), b.complemented() } );
  }

  auto const out = c.output();
  if ( out.is_constant() )
  {
    /* x0 AND NOT x0 is constant false; the output inverter gives true */
    genome.columns.push_back( { cgp_func::and_, 0, false, 0, true } );
    genome.output = { n, out == lit_true };
  }
  else
  {
    genome.output = { source_of( out ), out.complemented() };
  }

  auto const functional = static_cast<uint32_t>( genome.columns.size() );
  auto const target = std::max<uint32_t>(
      functional, static_cast<uint32_t>( std::ceil( size_factor * static_cast<double>( functional ) - 1e-9 ) ) );
  rng gen( seed );
  while ( genome.columns.size() < target )
    genome.columns.push_back( random_gene( genome.num_sources(), gen ) );
  return genome;
}

aig decode( cgp_genome const& genome )
{
  aig g( genome.num_inputs );
  auto const mark = genome.active();
  std::vector<literal> value( genome.num_sources(), lit_false );
  for ( uint32_t i = 0; i < genome.num_inputs; ++i )
    value[i] = g.input( i );
  for ( std::size_t c = 0; c < genome.columns.size(); ++c )
  {
    if ( !mark[c] )
      continue;
    auto const& gene = genome.columns[c];
    auto const a = value[gene.fanin0] ^ gene.inv0;
    auto const b = value[gene.fanin1] ^ gene.inv1;
    value[genome.num_inputs + c] = gene.func == cgp_func::and_ ? g.new_and( a, b ) : g.new_xor( a, b );
  }
  g.set_output( value[genome.output.source] ^ genome.output.inv );
  return g;
}

cgp_genome mutate( cgp_genome const& genome, es_state const& state, rng& gen )
{
  auto child = genome;
  double const p = state.mutation_rate;
  for ( std::size_t c = 0; c < child.columns.size(); ++c )
  {
    auto& gene = child.columns[c];
    auto const sources = genome.num_inputs + c;
    if ( gen.coin( p ) )
      gene.func = gen.bit() ? cgp_func::xor_ : cgp_func::and_;
    if ( gen.coin( p ) )
      gene.fanin0 = static_cast<uint32_t>( gen.below( sources ) );
    if ( gen.coin( p ) )
      gene.inv0 = gen.bit();
    if ( gen.coin( p ) )
      gene.fanin1 = static_cast<uint32_t>( gen.below( sources ) );
    if ( gen.coin( p ) )
      gene.inv1 = gen.bit();
  }
  if ( gen.coin( p ) )
    child.output.source = static_cast<uint32_t>( gen.below( child.num_sources() ) );
  if ( gen.coin( p ) )
    child.output.inv = gen.bit();
  return child;
}

void record_generation( es_state& state, bool success, evolve_params const& params )
{
  ++state.generation;
  state.success_window.push_back( success );
  if ( state.success_window.size() < params.window )
    return;
  auto const wins = std::count( state.success_window.begin(), state.success_window.end(), true );
  double const rate = static_cast<double>( wins ) / static_cast<double>( state.success_window.size() );
  if ( rate > 0.2 )
    state.mutation_rate *= params.adapt_factor;
  else if ( rate < 0.2 )
    state.mutation_rate /= params.adapt_factor;
  state.mutation_rate = std::clamp( state.mutation_rate, params.min_rate, params.max_rate );
  state.success_window.clear();
}

namespace
{

struct sample_batch
{
  std::vector<std::vector<word>> columns;
  std::vector<word> labels;
  std::size_t size = 0;
};

sample_batch make_batch( dataset const& data, std::vector<std::size_t> const& rows )
{
  sample_batch b;
  b.size = rows.size();
  auto const words = words_for( rows.size() );
  b.columns.assign( data.num_inputs(), std::vector<word>( words, 0 ) );
  b.labels.assign( words, 0 );
  for ( std::size_t s = 0; s < rows.size(); ++s )
  {
    auto const row = data.row( rows[s] );
    for ( uint32_t c = 0; c < data.num_inputs(); ++c )
      if ( get_bit( row, c ) )
        set_bit( b.columns[c], s, true );
    if ( data.label( rows[s] ) )
      set_bit( b.labels, s, true );
  }
  return b;
}

sample_batch full_batch( dataset const& data )
{
  sample_batch b;
  b.size = data.size();
  b.columns = data.columns();
  b.labels = data.label_words();
  b.labels.resize( words_for( data.size() ), 0 );
  return b;
}

class evaluator
{
public:
  double accuracy( cgp_genome const& genome, std::vector<bool> const& mark, sample_batch const& batch )
  {
    if ( batch.size == 0 )
      return 0.0;
    auto const words = batch.labels.size();
    auto const n = genome.num_inputs;
    buffer_.resize( genome.columns.size() * words );
    auto src = [&]( uint32_t s ) -> word const* {
      return s < n ? batch.columns[s].data() : buffer_.data() + std::size_t( s - n ) * words;
    };
    for ( std::size_t c = 0; c < genome.columns.size(); ++c )
    {
      if ( !mark[c] )
        continue;
      auto const& gene = genome.columns[c];
      word const* a = src( gene.fanin0 );
      word const* b = src( gene.fanin1 );
      word const ia = gene.inv0 ? ~word{ 0 } : 0;
      word const ib = gene.inv1 ? ~word{ 0 } : 0;
      word* out = buffer_.data() + c * words;
      if ( gene.func == cgp_func::and_ )
        for ( std::size_t w = 0; w < words; ++w )
          out[w] = ( a[w] ^ ia ) & ( b[w] ^ ib );
      else
        for ( std::size_t w = 0; w < words; ++w )
          out[w] = ( a[w] ^ ia ) ^ ( b[w] ^ ib );
    }
    word const* o = src( genome.output.source );
    word const io = genome.output.inv ? ~word{ 0 } : 0;
    std::size_t wrong = 0;
    for ( std::size_t w = 0; w < words; ++w )
    {
      word diff = ( o[w] ^ io ) ^ batch.labels[w];
      if ( w + 1 == words )
        diff &= tail_mask( batch.size );
      wrong += std::popcount( diff );
    }
    return static_cast<double>( batch.size - wrong ) / static_cast<double>( batch.size );
  }

private:
  std::vector<word> buffer_;
};

/* same phenotype: identical output and identical active genes */
bool same_phenotype( cgp_genome const& a, std::vector<bool> const& mark_a, cgp_genome const& b,
                     std::vector<bool> const& mark_b )
{
  if ( a.output != b.output || mark_a != mark_b )
    return false;
  for ( std::size_t c = 0; c < a.columns.size(); ++c )
    if ( mark_a[c] && !( a.columns[c] == b.columns[c] ) )
      return false;
  return true;
}

} // namespace

double cgp_accuracy( cgp_genome const& genome, dataset const& data )
{
  evaluator ev;
  return ev.accuracy( genome, genome.active(), full_batch( data ) );
}

evolve_result evolve( dataset const& data, cgp_genome const& init, evolve_params const& params )
{
  if ( !init.is_valid() )
    throw error( "evolve: initial genome is not feed-forward" );
  if ( init.num_inputs != data.num_inputs() )
    throw error( "evolve: genome width does not match dataset" );
  if ( params.generations < 1 )
    throw error( "evolve: generations must be >= 1" );
  if ( params.lambda < 1 )
    throw error( "evolve: lambda must be >= 1" );
  if ( !( params.initial_mutation_rate > 0.0 && params.initial_mutation_rate <= 1.0 ) )
    throw error( "evolve: mutation rate must be in (0, 1]" );

  rng gen( params.seed );
  evaluator ev;
  auto const full = full_batch( data );
  bool const fixed = params.batch_size == 0 || params.batch_size >= data.size();
  uint32_t const change_each = std::max<uint32_t>( 1, params.change_each );

  std::vector<std::size_t> order( data.size() );
  std::iota( order.begin(), order.end(), std::size_t{ 0 } );
  sample_batch batch;
  auto draw_batch = [&] {
    for ( std::size_t i = 0; i < params.batch_size; ++i )
      std::swap( order[i], order[i + gen.below( order.size() - i )] );
    batch = make_batch( data, { order.begin(), order.begin() + params.batch_size } );
  };
  if ( !fixed )
    draw_batch();
  auto const& current = [&]() -> sample_batch const& { return fixed ? full : batch; };

  es_state state;
  state.mutation_rate = params.initial_mutation_rate;

  cgp_genome parent = init;
  auto parent_mark = parent.active();
  double parent_fit = ev.accuracy( parent, parent_mark, current() );
  double parent_full = fixed ? parent_fit : ev.accuracy( parent, parent_mark, full );

  evolve_result result;
  result.best = parent;
  result.best_accuracy = parent_full;
  result.trace.reserve( params.generations );

  for ( uint64_t generation = 1; generation <= params.generations; ++generation )
  {
    if ( !fixed && generation > 1 && ( generation - 1 ) % change_each == 0 )
    {
      draw_batch();
      parent_fit = ev.accuracy( parent, parent_mark, batch );
    }

    int best_child = -1;
    double best_fit = -1.0;
    uint32_t best_size = 0;
    cgp_genome best_genome;
    std::vector<bool> best_mark;
    for ( uint32_t i = 0; i < params.lambda; ++i )
    {
      auto child = mutate( parent, state, gen );
      auto mark = child.active();
      double const fit =
          same_phenotype( child, mark, parent, parent_mark ) ? parent_fit : ev.accuracy( child, mark, current() );
      auto const size = static_cast<uint32_t>( std::count( mark.begin(), mark.end(), true ) );
      if ( fit > best_fit || ( fit == best_fit && size > best_size ) )
      {
        best_child = static_cast<int>( i );
        best_fit = fit;
        best_size = size;
        best_genome = std::move( child );
        best_mark = std::move( mark );
      }
    }

    bool const success = best_fit > parent_fit;
    bool changed = false;
    /* children win ties with the parent */
    if ( best_child >= 0 && best_fit >= parent_fit )
    {
      changed = !same_phenotype( best_genome, best_mark, parent, parent_mark );
      parent = std::move( best_genome );
      parent_mark = std::move( best_mark );
      parent_fit = best_fit;
    }
    record_generation( state, success, params );

    if ( changed || !fixed )
    {
      parent_full = fixed ? parent_fit : ( changed ? ev.accuracy( parent, parent_mark, full ) : parent_full );
      if ( parent_full > result.best_accuracy )
      {
        result.best = parent;
        result.best_accuracy = parent_full;
      }
    }
    result.trace.push_back( { generation, parent_fit, result.best_accuracy,
                              static_cast<uint32_t>( std::count( parent_mark.begin(), parent_mark.end(), true ) ),
                              state.mutation_rate } );
  }
  return result;
}

void write_trace( std::ostream& out, std::vector<cgp_trace_record> const& trace )
{
  for ( auto const& r : trace )
  {
    nlohmann::ordered_json j;
    j["generation"] = r.generation;
    j["fitness"] = r.fitness;
    j["best_full"] = r.best_full;
    j["phenotype"] = r.phenotype;
    j["mutation_rate"] = r.mutation_rate;
    out << j.dump() << '\n';
  }
}

} // namespace boolearn
