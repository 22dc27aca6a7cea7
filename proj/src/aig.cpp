#include "boolearn/aig.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

#include "boolearn/random.hpp"

namespace boolearn
{

aig::aig( uint32_t num_inputs ) : num_inputs_( num_inputs ) {}

literal aig::input( uint32_t i ) const
{
  if ( i >= num_inputs_ )
    throw error( "input index out of range" );
  return literal::make( i + 1u );
}

void aig::check( literal l ) const
{
  if ( l.index() >= num_nodes() )
    throw error( "literal " + std::to_string( l.raw() ) + " out of range" );
}

literal aig::new_and( literal a, literal b )
{
  check( a );
  check( b );
  if ( a > b )
    std::swap( a, b );
  if ( a == lit_false )
    return lit_false;
  if ( a == lit_true )
    return b;
  if ( a == b )
    return a;
  if ( a == !b )
    return lit_false;

  uint64_t const key = ( uint64_t{ a.raw() } << 32 ) | b.raw();
  if ( auto it = strash_.find( key ); it != strash_.end() )
    return literal::make( it->second );

  uint32_t const index = num_nodes();
  fanins_.emplace_back( a, b );
  strash_.emplace( key, index );
  return literal::make( index );
}

literal aig::new_xor( literal a, literal b )
{
  return !new_and( !new_and( a, !b ), !new_and( !a, b ) );
}

literal aig::new_mux( literal sel, literal hi, literal lo )
{
  if ( hi == lo )
    return hi;
  return new_or( new_and( sel, hi ), new_and( !sel, lo ) );
}

void aig::set_output( literal l )
{
  check( l );
  output_ = l;
}

std::vector<bool> aig::reachable() const
{
  std::vector<bool> mark( num_nodes(), false );
  mark[output_.index()] = true;
  for ( uint32_t n = num_nodes(); n-- > num_inputs_ + 1u; )
  {
    if ( !mark[n] )
      continue;
    auto const& [a, b] = fanins( n );
    mark[a.index()] = true;
    mark[b.index()] = true;
  }
  return mark;
}

aig aig::compact() const
{
  auto const mark = reachable();
  aig out( num_inputs_ );
  std::vector<literal> map( num_nodes() );
  map[0] = lit_false;
  for ( uint32_t i = 1; i <= num_inputs_; ++i )
    map[i] = literal::make( i );
  for ( uint32_t n = num_inputs_ + 1u; n < num_nodes(); ++n )
  {
    if ( !mark[n] )
      continue;
    auto const& [a, b] = fanins( n );
    map[n] = out.new_and( map[a.index()] ^ a.complemented(), map[b.index()] ^ b.complemented() );
  }
  out.set_output( map[output_.index()] ^ output_.complemented() );
  return out;
}

namespace
{

/* multi-word simulation of every node; values[n * words + w] */
std::vector<word> simulate_nodes( aig const& g, std::vector<std::vector<word>> const& columns, std::size_t words,
                                  std::vector<bool> const* only )
{
  std::vector<word> values( std::size_t( g.num_nodes() ) * words, 0 );
  for ( uint32_t i = 0; i < g.num_inputs(); ++i )
    std::copy( columns[i].begin(), columns[i].begin() + words, values.begin() + ( i + 1u ) * words );
  for ( uint32_t n = g.num_inputs() + 1u; n < g.num_nodes(); ++n )
  {
    if ( only && !( *only )[n] )
      continue;
    auto const& [a, b] = g.fanins( n );
    word const ca = a.complemented() ? ~word{ 0 } : 0;
    word const cb = b.complemented() ? ~word{ 0 } : 0;
    word const* va = values.data() + std::size_t( a.index() ) * words;
    word const* vb = values.data() + std::size_t( b.index() ) * words;
    word* vn = values.data() + std::size_t( n ) * words;
    for ( std::size_t w = 0; w < words; ++w )
      vn[w] = ( va[w] ^ ca ) & ( vb[w] ^ cb );
  }
  return values;
}

} // namespace

word simulate( aig const& g, std::span<word const> inputs )
{
  if ( inputs.size() != g.num_inputs() )
    throw error( "simulate: expected " + std::to_string( g.num_inputs() ) + " input words, got " +
                 std::to_string( inputs.size() ) );
  std::vector<std::vector<word>> columns;
  columns.reserve( inputs.size() );
  for ( auto w : inputs )
    columns.push_back( { w } );
  return simulate( g, columns )[0];
}

std::vector<word> simulate( aig const& g, std::vector<std::vector<word>> const& columns )
{
  if ( columns.size() != g.num_inputs() )
    throw error( "simulate: expected " + std::to_string( g.num_inputs() ) + " input blocks, got " +
                 std::to_string( columns.size() ) );
  std::size_t words = columns.empty() ? 1 : columns[0].size();
  for ( auto const& c : columns )
    if ( c.size() != words )
      throw error( "simulate: input blocks differ in length" );

  auto const mark = g.reachable();
  auto const values = simulate_nodes( g, columns, words, &mark );
  auto const out = g.output();
  word const flip = out.complemented() ? ~word{ 0 } : 0;
  std::vector<word> result( words );
  for ( std::size_t w = 0; w < words; ++w )
    result[w] = values[std::size_t( out.index() ) * words + w] ^ flip;
  return result;
}

bool evaluate_pattern( aig const& g, std::vector<bool> const& inputs )
{
  if ( inputs.size() != g.num_inputs() )
    throw error( "evaluate_pattern: width mismatch" );
  std::vector<bool> value( g.num_nodes(), false );
  for ( uint32_t i = 0; i < g.num_inputs(); ++i )
    value[i + 1u] = inputs[i];
  for ( uint32_t n = g.num_inputs() + 1u; n < g.num_nodes(); ++n )
  {
    auto const& [a, b] = g.fanins( n );
    value[n] = ( value[a.index()] != a.complemented() ) && ( value[b.index()] != b.complemented() );
  }
  return value[g.output().index()] != g.output().complemented();
}

aig_metrics metrics( aig const& g )
{
  auto const mark = g.reachable();
  std::vector<uint32_t> level( g.num_nodes(), 0 );
  aig_metrics m;
  for ( uint32_t n = g.num_inputs() + 1u; n < g.num_nodes(); ++n )
  {
    if ( !mark[n] )
      continue;
    auto const& [a, b] = g.fanins( n );
    level[n] = 1u + std::max( level[a.index()], level[b.index()] );
    ++m.and_nodes;
  }
  m.levels = level[g.output().index()];
  return m;
}

std::string write_aag( aig const& g )
{
  auto const c = g.compact();
  std::ostringstream out;
  uint32_t const max_var = c.num_nodes() - 1u;
  out << "aag " << max_var << ' ' << c.num_inputs() << " 0 1 " << c.num_ands() << '\n';
  for ( uint32_t i = 0; i < c.num_inputs(); ++i )
    out << 2u * ( i + 1u ) << '\n';
  out << c.output().raw() << '\n';
  for ( uint32_t n = c.num_inputs() + 1u; n < c.num_nodes(); ++n )
  {
    auto const& [a, b] = c.fanins( n );
    out << 2u * n << ' ' << a.raw() << ' ' << b.raw() << '\n';
  }
  return out.str();
}

aig read_aag( std::string_view text )
{
  std::istringstream in{ std::string( text ) };
  std::string magic;
  long long m, i, l, o, a;
  if ( !( in >> magic >> m >> i >> l >> o >> a ) || magic != "aag" )
    throw error( "aag: malformed header" );
  if ( m < 0 || i < 0 || l < 0 || o < 0 || a < 0 )
    throw error( "aag: malformed header" );
  if ( l != 0 )
    throw error( "aag: latches are not supported" );
  if ( o != 1 )
    throw error( "aag: exactly one output is required" );
  if ( m < i + a )
    throw error( "aag: header M smaller than I + A" );

  auto read_uint = [&]( char const* what ) {
    long long v;
    if ( !( in >> v ) || v < 0 || v > 2 * m + 1 )
      throw error( std::string( "aag: bad " ) + what + " literal" );
    return static_cast<uint32_t>( v );
  };

  aig g( static_cast<uint32_t>( i ) );
  std::vector<literal> map( std::size_t( m ) + 1u, lit_false );
  std::vector<bool> defined( std::size_t( m ) + 1u, false );
  defined[0] = true;
  for ( long long k = 0; k < i; ++k )
  {
    auto const lit = read_uint( "input" );
    if ( lit < 2 || ( lit & 1u ) || defined[lit >> 1] )
      throw error( "aag: invalid input literal" );
    map[lit >> 1] = g.input( static_cast<uint32_t>( k ) );
    defined[lit >> 1] = true;
  }
  auto const out_lit = read_uint( "output" );

  auto resolve = [&]( uint32_t lit ) {
    if ( !defined[lit >> 1] )
      throw error( "aag: non-topological body (literal " + std::to_string( lit ) + " used before definition)" );
    return map[lit >> 1] ^ ( lit & 1u );
  };

  for ( long long k = 0; k < a; ++k )
  {
    auto const lhs = read_uint( "and" );
    auto const r0 = read_uint( "and" );
    auto const r1 = read_uint( "and" );
    if ( lhs < 2 || ( lhs & 1u ) || defined[lhs >> 1] )
      throw error( "aag: invalid and-gate literal" );
    map[lhs >> 1] = g.new_and( resolve( r0 ), resolve( r1 ) );
    defined[lhs >> 1] = true;
  }
  g.set_output( resolve( out_lit ) );
  return g;
}

aig read_aag_file( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
    throw error( "cannot open '" + path + "'" );
  std::stringstream ss;
  ss << in.rdbuf();
  return read_aag( ss.str() );
}

void write_aag_file( std::string const& path, aig const& g )
{
  std::ofstream out( path );
  if ( !out )
    throw error( "cannot write '" + path + "'" );
  out << write_aag( g );
}

namespace
{

/* rebuild with node `victim` replaced by `value` */
aig substitute_constant( aig const& g, uint32_t victim, bool value )
{
  aig out( g.num_inputs() );
  std::vector<literal> map( g.num_nodes() );
  map[0] = lit_false;
  for ( uint32_t i = 1; i <= g.num_inputs(); ++i )
    map[i] = literal::make( i );
  auto const mark = g.reachable();
  for ( uint32_t n = g.num_inputs() + 1u; n < g.num_nodes(); ++n )
  {
    if ( !mark[n] )
      continue;
    if ( n == victim )
    {
      map[n] = value ? lit_true : lit_false;
      continue;
    }
    auto const& [a, b] = g.fanins( n );
    map[n] = out.new_and( map[a.index()] ^ a.complemented(), map[b.index()] ^ b.complemented() );
  }
  out.set_output( map[g.output().index()] ^ g.output().complemented() );
  return out.compact();
}

/* shortest number of AND levels from each node up to the output driver */
std::vector<uint32_t> distance_to_output( aig const& g )
{
  constexpr auto inf = std::numeric_limits<uint32_t>::max();
  std::vector<uint32_t> dist( g.num_nodes(), inf );
  dist[g.output().index()] = 0;
  for ( uint32_t n = g.num_nodes(); n-- > g.num_inputs() + 1u; )
  {
    if ( dist[n] == inf )
      continue;
    auto const& [a, b] = g.fanins( n );
    dist[a.index()] = std::min( dist[a.index()], dist[n] + 1u );
    dist[b.index()] = std::min( dist[b.index()], dist[n] + 1u );
  }
  return dist;
}

} // namespace

aig approximate_to_budget( aig const& g, approx_params const& params, std::vector<uint32_t>* size_trace )
{
  if ( params.patterns == 0 )
    throw error( "approximate_to_budget: patterns must be >= 1" );

  aig current = g.compact();
  if ( size_trace )
    size_trace->assign( 1, current.num_ands() );

  rng gen( params.seed );
  std::size_t const words = words_for( params.patterns );
  word const last_mask = tail_mask( params.patterns );
  uint32_t exclusion = params.level_exclusion;

  while ( current.num_ands() > params.budget )
  {
    std::vector<std::vector<word>> columns( current.num_inputs(), std::vector<word>( words ) );
    for ( auto& col : columns )
      for ( auto& w : col )
        w = gen.next();
    std::vector<bool> all( current.num_nodes(), true );
    auto const values = simulate_nodes( current, columns, words, &all );
    auto const dist = distance_to_output( current );

    for ( ;; )
    {
      uint32_t best = 0;
      std::size_t best_skew = 0;
      bool best_value = false;
      for ( uint32_t n = current.num_inputs() + 1u; n < current.num_nodes(); ++n )
      {
        if ( dist[n] < exclusion )
          continue;
        std::size_t ones = 0;
        for ( std::size_t w = 0; w < words; ++w )
        {
          word v = values[std::size_t( n ) * words + w];
          if ( w + 1 == words )
            v &= last_mask;
          ones += std::popcount( v );
        }
        std::size_t const zeros = params.patterns - ones;
        std::size_t const skew = std::max( ones, zeros );
        if ( best == 0 || skew > best_skew )
        {
          best = n;
          best_skew = skew;
          best_value = ones > zeros;
        }
      }
      if ( best != 0 )
      {
        current = substitute_constant( current, best, best_value );
        break;
      }
      /* every node is too close to the output; relax the threshold */
      --exclusion;
    }
    if ( size_trace )
      size_trace->push_back( current.num_ands() );
  }
  return current;
}

} // namespace boolearn
