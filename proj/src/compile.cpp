#include "boolearn/compile.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace boolearn
{

namespace
{

/* balanced reduction keeps the depth logarithmic in the operand count */
template<typename Op>
literal reduce_balanced( std::vector<literal> ops, literal identity, Op op )
{
  if ( ops.empty() )
    return identity;
  while ( ops.size() > 1 )
  {
    std::vector<literal> next;
    for ( std::size_t i = 0; i + 1 < ops.size(); i += 2 )
      next.push_back( op( ops[i], ops[i + 1] ) );
    if ( ops.size() % 2 )
      next.push_back( ops.back() );
    ops = std::move( next );
  }
  return ops[0];
}

} // namespace

literal sop_literal( aig& g, std::span<literal const> vars, std::span<packed_cube const> onset )
{
  auto const conj = [&]( literal a, literal b ) { return g.new_and( a, b ); };
  auto const disj = [&]( literal a, literal b ) { return g.new_or( a, b ); };
  std::vector<literal> terms;
  for ( auto const& c : onset )
  {
    std::vector<literal> lits;
    for ( uint32_t i = 0; i < vars.size(); ++i )
      if ( get_bit( c.care, i ) )
        lits.push_back( vars[i] ^ !get_bit( c.value, i ) );
    terms.push_back( reduce_balanced( std::move( lits ), lit_true, conj ) );
  }
  return reduce_balanced( std::move( terms ), lit_false, disj );
}

aig sop_to_aig( uint32_t num_inputs, std::span<packed_cube const> onset )
{
  aig g( num_inputs );
  std::vector<literal> vars;
  for ( uint32_t i = 0; i < num_inputs; ++i )
    vars.push_back( g.input( i ) );
  g.set_output( sop_literal( g, vars, onset ) );
  return g;
}

literal tree_literal( aig& g, decision_tree const& tree, std::span<literal const> inputs )
{
  auto const& reg = tree.features;
  std::vector<std::optional<literal>> feature_lits( reg.size() );
  std::function<literal( uint32_t )> feature_lit = [&]( uint32_t id ) -> literal {
    if ( feature_lits[id] )
      return *feature_lits[id];
    auto const& f = reg[id];
    literal l;
    if ( !f.composite )
      l = inputs[f.input];
    else
    {
      auto const a = feature_lit( f.a );
      auto const b = feature_lit( f.b );
      switch ( f.op )
      {
      case fringe_op::and_: l = g.new_and( a, b ); break;
      case fringe_op::or_: l = g.new_or( a, b ); break;
      case fringe_op::nand: l = !g.new_and( a, b ); break;
      case fringe_op::nor: l = !g.new_or( a, b ); break;
      case fringe_op::xor_: l = g.new_xor( a, b ); break;
      case fringe_op::xnor: l = !g.new_xor( a, b ); break;
      case fringe_op::and_not_l: l = g.new_and( !a, b ); break;
      case fringe_op::and_not_r: l = g.new_and( a, !b ); break;
      case fringe_op::or_not_l: l = g.new_or( !a, b ); break;
      case fringe_op::or_not_r: l = g.new_or( a, !b ); break;
      case fringe_op::nota_and_notb: l = g.new_and( !a, !b ); break;
      case fringe_op::nota_or_notb: l = g.new_or( !a, !b ); break;
      }
    }
    feature_lits[id] = l;
    return l;
  };

  std::function<literal( uint32_t )> node_lit = [&]( uint32_t n ) -> literal {
    auto const& node = tree.nodes[n];
    if ( node.is_leaf() )
      return node.label ? lit_true : lit_false;
    auto const lo = node_lit( node.lo );
    auto const hi = node_lit( node.hi );
    return g.new_mux( feature_lit( static_cast<uint32_t>( node.feature ) ), hi, lo );
  };
  return node_lit( 0 );
}

aig dt_to_aig( decision_tree const& tree )
{
  aig g( tree.num_inputs() );
  std::vector<literal> inputs;
  for ( uint32_t i = 0; i < tree.num_inputs(); ++i )
    inputs.push_back( g.input( i ) );
  g.set_output( tree_literal( g, tree, inputs ) );
  return g;
}

namespace
{

std::vector<literal> add_binary( aig& g, std::vector<literal> const& x, std::vector<literal> const& y )
{
  std::vector<literal> sum;
  literal carry = lit_false;
  auto const width = std::max( x.size(), y.size() );
  for ( std::size_t i = 0; i < width; ++i )
  {
    literal const a = i < x.size() ? x[i] : lit_false;
    literal const b = i < y.size() ? y[i] : lit_false;
    literal const ab = g.new_xor( a, b );
    sum.push_back( g.new_xor( ab, carry ) );
    carry = g.new_or( g.new_and( a, b ), g.new_and( carry, ab ) );
  }
  sum.push_back( carry );
  return sum;
}

std::vector<literal> count_range( aig& g, std::span<literal const> inputs )
{
  if ( inputs.empty() )
    return {};
  if ( inputs.size() == 1 )
    return { inputs[0] };
  auto const half = inputs.size() / 2;
  return add_binary( g, count_range( g, inputs.subspan( 0, half ) ), count_range( g, inputs.subspan( half ) ) );
}

literal eq_const( aig& g, std::span<literal const> count, uint64_t value )
{
  if ( count.size() < 64 && ( value >> count.size() ) != 0 )
    return lit_false;
  literal result = lit_true;
  for ( std::size_t i = 0; i < count.size(); ++i )
    result = g.new_and( result, count[i] ^ !( ( value >> i ) & 1u ) );
  return result;
}

} // namespace

std::vector<literal> popcount_literals( aig& g, std::span<literal const> inputs )
{
  return count_range( g, inputs );
}

literal geq_const( aig& g, std::span<literal const> count, uint64_t threshold )
{
  if ( threshold == 0 )
    return lit_true;
  if ( count.size() < 64 && ( threshold >> count.size() ) != 0 )
    return lit_false;
  literal ge = lit_true;
  for ( std::size_t i = 0; i < count.size(); ++i )
    ge = ( ( threshold >> i ) & 1u ) ? g.new_and( count[i], ge ) : g.new_or( count[i], ge );
  return ge;
}

literal majority_to_aig( aig& g, std::span<literal const> inputs )
{
  if ( inputs.size() % 2 == 0 )
    throw error( "majority_to_aig: input count must be odd" );
  if ( inputs.size() == 1 )
    return inputs[0];
  auto const count = popcount_literals( g, inputs );
  return geq_const( g, count, ( inputs.size() + 1 ) / 2 );
}

literal approximate_majority125( aig& g, std::span<literal const> inputs )
{
  if ( inputs.size() != 125 )
    throw error( "approximate_majority125: exactly 125 inputs are required" );
  std::vector<literal> layer( inputs.begin(), inputs.end() );
  while ( layer.size() > 1 )
  {
    std::vector<literal> next;
    for ( std::size_t i = 0; i < layer.size(); i += 5 )
      next.push_back( majority_to_aig( g, std::span<literal const>( layer ).subspan( i, 5 ) ) );
    layer = std::move( next );
  }
  return layer[0];
}

aig symmetric_to_aig( std::string_view signature, uint32_t n )
{
  if ( signature.size() != std::size_t( n ) + 1u )
    throw error( "symmetric_to_aig: signature length must be n + 1" );
  if ( signature.find_first_not_of( "01" ) != std::string_view::npos )
    throw error( "symmetric_to_aig: signature must be over {0,1}" );

  aig g( n );
  std::vector<literal> inputs;
  for ( uint32_t i = 0; i < n; ++i )
    inputs.push_back( g.input( i ) );
  auto const count = popcount_literals( g, inputs );

  /* build whichever of the on/off value sets is smaller */
  auto const ones = static_cast<std::size_t>( std::count( signature.begin(), signature.end(), '1' ) );
  bool const invert = 2 * ones > signature.size();
  literal out = lit_false;
  for ( std::size_t v = 0; v < signature.size(); ++v )
    if ( ( signature[v] == '1' ) != invert )
      out = g.new_or( out, eq_const( g, count, v ) );
  g.set_output( out ^ invert );
  return g;
}

aig forest_to_aig( forest const& f )
{
  if ( f.trees.empty() )
    throw error( "forest_to_aig: empty forest" );
  uint32_t const n = f.trees.front().num_inputs();
  aig g( n );
  std::vector<literal> inputs;
  for ( uint32_t i = 0; i < n; ++i )
    inputs.push_back( g.input( i ) );
  std::vector<literal> votes;
  for ( auto const& t : f.trees )
    votes.push_back( tree_literal( g, t, inputs ) );
  g.set_output( majority_to_aig( g, votes ) );
  return g;
}

aig lutnet_to_aig( lut_network const& net, lut_compile_options const& options )
{
  aig g( net.num_inputs );
  std::vector<std::vector<std::optional<literal>>> memo( net.layers.size() );
  for ( std::size_t l = 0; l < net.layers.size(); ++l )
    memo[l].resize( net.layers[l].size() );

  std::function<literal( std::size_t, uint32_t )> lut_lit = [&]( std::size_t layer, uint32_t i ) -> literal {
    if ( memo[layer][i] )
      return *memo[layer][i];
    auto const& cell = net.layers[layer][i];
    std::vector<literal> vars;
    for ( auto f : cell.fanins )
      vars.push_back( layer == 0 ? g.input( f ) : lut_lit( layer - 1, f ) );

    uint32_t const k = static_cast<uint32_t>( cell.fanins.size() );
    std::vector<packed_cube> onset, offset;
    for ( uint32_t m = 0; m < ( 1u << k ); ++m )
    {
      std::string bits( k, '0' );
      for ( uint32_t j = 0; j < k; ++j )
        if ( ( m >> j ) & 1u )
          bits[j] = '1';
      ( cell.value( m ) ? onset : offset ).push_back( packed_cube::from_string( bits ) );
    }
    if ( options.minimize )
    {
      cover c{ k, std::move( onset ), std::move( offset ) };
      onset = irredundant( expand( c ) ).onset;
    }
    auto const l = sop_literal( g, vars, onset );
    memo[layer][i] = l;
    return l;
  };

  g.set_output( lut_lit( net.layers.size() - 1, 0 ) );
  return g;
}

} // namespace boolearn
