#include "boolearn/dtree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace boolearn
{

bool apply_op( fringe_op op, bool a, bool b )
{
  switch ( op )
  {
  case fringe_op::and_:
    return a && b;
  case fringe_op::or_:
    return a || b;
  case fringe_op::nand:
    return !( a && b );
  case fringe_op::nor:
    return !( a || b );
  case fringe_op::xor_:
    return a != b;
  case fringe_op::xnor:
    return a == b;
  case fringe_op::and_not_l:
    return !a && b;
  case fringe_op::and_not_r:
    return a && !b;
  case fringe_op::or_not_l:
    return !a || b;
  case fringe_op::or_not_r:
    return a || !b;
  case fringe_op::nota_and_notb:
    return !a && !b;
  case fringe_op::nota_or_notb:
    return !a || !b;
  }
  return false;
}

uint8_t op_truth_table( fringe_op op )
{
  uint8_t tt = 0;
  for ( unsigned m = 0; m < 4; ++m )
    if ( apply_op( op, m & 2u, m & 1u ) )
      tt |= uint8_t( 1u << m );
  return tt;
}

namespace
{

constexpr std::array<std::string_view, 12> op_names = {
    "AND", "OR", "NAND", "NOR", "XOR", "XNOR", "ANDNOTL", "ANDNOTR", "ORNOTL", "ORNOTR", "NANDNOT", "NORNOT" };

/* truth table with operands swapped */
uint8_t transpose( uint8_t tt )
{
  uint8_t out = tt & 0b1001u;
  if ( tt & 0b0010u )
    out |= 0b0100u;
  if ( tt & 0b0100u )
    out |= 0b0010u;
  return out;
}

} // namespace

std::string_view op_name( fringe_op op )
{
  return op_names[static_cast<std::size_t>( op )];
}

fringe_op op_from_name( std::string_view name )
{
  for ( std::size_t i = 0; i < op_names.size(); ++i )
    if ( op_names[i] == name )
      return static_cast<fringe_op>( i );
  throw error( "unknown fringe operator '" + std::string( name ) + "'" );
}

std::optional<fringe_op> canonical_op( uint8_t truth_table )
{
  truth_table &= 0xfu;
  /* the first ten operators are exactly the non-degenerate functions */
  for ( std::size_t i = 0; i < 10; ++i )
  {
    auto const op = static_cast<fringe_op>( i );
    if ( op_truth_table( op ) == truth_table )
      return op;
  }
  return std::nullopt;
}

feature_registry::feature_registry( uint32_t num_inputs ) : num_inputs_( num_inputs )
{
  features_.resize( num_inputs );
  for ( uint32_t i = 0; i < num_inputs; ++i )
    features_[i].input = i;
}

uint32_t feature_registry::add_composite( fringe_op op, uint32_t a, uint32_t b )
{
  if ( a >= size() || b >= size() )
    throw error( "composite operand is not a registered feature" );
  if ( a == b )
    throw error( "composite operands must differ" );
  feature f;
  f.composite = true;
  f.op = op;
  f.a = a;
  f.b = b;
  features_.push_back( f );
  return size() - 1u;
}

std::optional<uint32_t> feature_registry::find_equivalent( fringe_op op, uint32_t a, uint32_t b ) const
{
  uint8_t tt = op_truth_table( op );
  if ( a > b )
  {
    std::swap( a, b );
    tt = transpose( tt );
  }
  for ( uint32_t id = num_inputs_; id < size(); ++id )
  {
    auto const& f = features_[id];
    uint8_t ftt = op_truth_table( f.op );
    uint32_t fa = f.a, fb = f.b;
    if ( fa > fb )
    {
      std::swap( fa, fb );
      ftt = transpose( ftt );
    }
    if ( fa == a && fb == b && ( ftt == tt || ftt == ( tt ^ 0xfu ) ) )
      return id;
  }
  return std::nullopt;
}

bool feature_registry::evaluate( uint32_t id, std::span<word const> row ) const
{
  auto const& f = features_.at( id );
  if ( !f.composite )
    return get_bit( row, f.input );
  return apply_op( f.op, evaluate( f.a, row ), evaluate( f.b, row ) );
}

std::vector<uint32_t> feature_registry::support( uint32_t id ) const
{
  std::vector<uint32_t> out;
  std::function<void( uint32_t )> walk = [&]( uint32_t f ) {
    auto const& ft = features_.at( f );
    if ( !ft.composite )
    {
      out.push_back( ft.input );
      return;
    }
    walk( ft.a );
    walk( ft.b );
  };
  walk( id );
  std::sort( out.begin(), out.end() );
  out.erase( std::unique( out.begin(), out.end() ), out.end() );
  return out;
}

std::vector<std::vector<word>> feature_registry::columns( std::vector<std::vector<word>> input_columns ) const
{
  auto cols = std::move( input_columns );
  cols.resize( size() );
  for ( uint32_t id = num_inputs_; id < size(); ++id )
  {
    auto const& f = features_[id];
    auto const& ca = cols[f.a];
    auto const& cb = cols[f.b];
    std::vector<word> out( ca.size() );
    for ( std::size_t w = 0; w < ca.size(); ++w )
    {
      word const x = ca[w], y = cb[w];
      word v = 0;
      switch ( f.op )
      {
      case fringe_op::and_: v = x & y; break;
      case fringe_op::or_: v = x | y; break;
      case fringe_op::nand: v = ~( x & y ); break;
      case fringe_op::nor: v = ~( x | y ); break;
      case fringe_op::xor_: v = x ^ y; break;
      case fringe_op::xnor: v = ~( x ^ y ); break;
      case fringe_op::and_not_l: v = ~x & y; break;
      case fringe_op::and_not_r: v = x & ~y; break;
      case fringe_op::or_not_l: v = ~x | y; break;
      case fringe_op::or_not_r: v = x | ~y; break;
      case fringe_op::nota_and_notb: v = ~x & ~y; break;
      case fringe_op::nota_or_notb: v = ~x | ~y; break;
      }
      out[w] = v;
    }
    cols[id] = std::move( out );
  }
  return cols;
}

namespace
{

std::vector<std::size_t> identity_rows( std::size_t n )
{
  std::vector<std::size_t> rows( n );
  std::iota( rows.begin(), rows.end(), std::size_t{ 0 } );
  return rows;
}

} // namespace

sample_matrix::sample_matrix( dataset const& data, feature_registry const& features )
    : sample_matrix( data, features, identity_rows( data.size() ) )
{
}

sample_matrix::sample_matrix( dataset const& data, feature_registry const& features, std::vector<std::size_t> rows )
    : data_( &data ), features_( &features ), rows_( std::move( rows ) )
{
  if ( features.num_inputs() != data.num_inputs() )
    throw error( "feature registry width does not match dataset" );
  auto const nw = words_for( rows_.size() );
  std::vector<std::vector<word>> inputs( data.num_inputs(), std::vector<word>( nw, 0 ) );
  labels_.assign( nw, 0 );
  for ( std::size_t s = 0; s < rows_.size(); ++s )
  {
    auto const row = data.row( rows_[s] );
    for ( uint32_t c = 0; c < data.num_inputs(); ++c )
      if ( get_bit( row, c ) )
        inputs[c][s / word_bits] |= word{ 1 } << ( s % word_bits );
    if ( data.label( rows_[s] ) )
      set_bit( labels_, s, true );
  }
  columns_ = features.columns( std::move( inputs ) );
  /* composite columns may have garbage in padding bits */
  if ( nw > 0 )
    for ( auto& col : columns_ )
      col.back() &= tail_mask( rows_.size() );
}

uint32_t decision_tree::depth() const
{
  std::function<uint32_t( uint32_t )> rec = [&]( uint32_t n ) -> uint32_t {
    auto const& node = nodes[n];
    if ( node.is_leaf() )
      return 0;
    return 1u + std::max( rec( node.lo ), rec( node.hi ) );
  };
  return nodes.empty() ? 0 : rec( 0 );
}

uint32_t decision_tree::num_splits() const
{
  return static_cast<uint32_t>(
      std::count_if( nodes.begin(), nodes.end(), []( auto const& n ) { return !n.is_leaf(); } ) );
}

bool decision_tree::predict( std::span<word const> row ) const
{
  if ( row.size() != std::max<std::size_t>( 1, words_for( num_inputs() ) ) )
    throw error( "predict: row width mismatch" );
  uint32_t n = 0;
  while ( !nodes[n].is_leaf() )
    n = features.evaluate( static_cast<uint32_t>( nodes[n].feature ), row ) ? nodes[n].hi : nodes[n].lo;
  return nodes[n].label;
}

bool predict( decision_tree const& tree, std::span<word const> row )
{
  return tree.predict( row );
}

double evaluate( decision_tree const& tree, dataset const& data )
{
  if ( data.num_inputs() != tree.num_inputs() )
    throw error( "evaluate: dataset width mismatch" );
  if ( data.empty() )
    return 0.0;
  std::size_t correct = 0;
  for ( std::size_t r = 0; r < data.size(); ++r )
    correct += tree.predict( data.row( r ) ) == data.label( r );
  return static_cast<double>( correct ) / static_cast<double>( data.size() );
}

double entropy( std::size_t ones, std::size_t total )
{
  if ( total == 0 || ones == 0 || ones == total )
    return 0.0;
  double const p = static_cast<double>( ones ) / static_cast<double>( total );
  return -p * std::log2( p ) - ( 1.0 - p ) * std::log2( 1.0 - p );
}

double information_gain( std::size_t ones, std::size_t total, std::size_t hi_ones, std::size_t hi_total )
{
  if ( total == 0 )
    return 0.0;
  std::size_t const lo_total = total - hi_total;
  std::size_t const lo_ones = ones - hi_ones;
  double const t = static_cast<double>( total );
  double const gain = entropy( ones, total ) - static_cast<double>( hi_total ) / t * entropy( hi_ones, hi_total ) -
                      static_cast<double>( lo_total ) / t * entropy( lo_ones, lo_total );
  /* concavity makes the exact value non-negative; clamp rounding noise */
  return gain < 1e-12 ? 0.0 : gain;
}

std::optional<uint32_t> fdecomp_select( sample_matrix const& samples, std::span<word const> node_mask,
                                        std::span<uint32_t const> candidates )
{
  auto const labels = samples.labels();
  std::vector<std::size_t> members;
  for ( std::size_t s = 0; s < samples.size(); ++s )
    if ( get_bit( node_mask, s ) )
      members.push_back( s );

  auto const row_words = samples.data().row_words();
  std::optional<uint32_t> chosen;
  for ( auto const f : candidates )
  {
    auto const col = samples.column( f );

    /* requirement 1: a constant branch */
    bool seen[2][2] = { { false, false }, { false, false } };
    for ( auto s : members )
      seen[get_bit( col, s )][get_bit( labels, s )] = true;
    bool const lo_constant = !( seen[0][0] && seen[0][1] );
    bool const hi_constant = !( seen[1][0] && seen[1][1] );
    if ( lo_constant || hi_constant )
    {
      chosen = f;
      continue;
    }

    /* requirement 2: branches complementary unless a counterexample exists */
    std::vector<word> keep( row_words, ~word{ 0 } );
    for ( auto i : samples.features().support( f ) )
      set_bit( keep, i, false );
    auto masked_less = [&]( std::size_t x, std::size_t y ) {
      auto const rx = samples.input_row( x ), ry = samples.input_row( y );
      for ( std::size_t w = 0; w < row_words; ++w )
      {
        word const a = rx[w] & keep[w], b = ry[w] & keep[w];
        if ( a != b )
          return a < b;
      }
      return false;
    };
    auto sorted = members;
    std::sort( sorted.begin(), sorted.end(), masked_less );

    bool counterexample = false;
    for ( std::size_t begin = 0; begin < sorted.size() && !counterexample; )
    {
      std::size_t end = begin + 1;
      while ( end < sorted.size() && !masked_less( sorted[begin], sorted[end] ) )
        ++end;
      bool group[2][2] = { { false, false }, { false, false } };
      for ( std::size_t k = begin; k < end; ++k )
        group[get_bit( col, sorted[k] )][get_bit( labels, sorted[k] )] = true;
      if ( ( group[0][0] && group[1][0] ) || ( group[0][1] && group[1][1] ) )
        counterexample = true;
      begin = end;
    }
    if ( !counterexample )
      chosen = f;
  }
  return chosen;
}

namespace
{

class tree_builder
{
public:
  tree_builder( sample_matrix const& samples, dt_params const& params, std::span<uint32_t const> allowed )
      : samples_( samples ), params_( params ), allowed_( allowed.begin(), allowed.end() )
  {
    std::sort( allowed_.begin(), allowed_.end() );
    used_.assign( samples.features().size(), false );
  }

  decision_tree build()
  {
    decision_tree tree;
    tree.features = samples_.features();
    tree_ = &tree;
    auto mask = samples_.all_samples();
    build_node( mask, 0, samples_.size() == 0 ? false : 2 * popcount_and( mask, samples_.labels() ) > samples_.size() );
    return tree;
  }

private:
  uint32_t make_leaf( bool label )
  {
    tree_->nodes.push_back( { -1, label, 0, 0 } );
    return static_cast<uint32_t>( tree_->nodes.size() - 1u );
  }

  uint32_t build_node( std::vector<word> const& mask, uint32_t depth, bool parent_majority )
  {
    auto const total = popcount( mask );
    if ( total == 0 )
      return make_leaf( parent_majority );
    auto const ones = popcount_and( mask, samples_.labels() );
    bool const majority = 2 * ones > total;

    if ( ones == 0 || ones == total )
      return make_leaf( majority );
    if ( total < params_.min_samples )
      return make_leaf( majority );
    if ( params_.max_depth && depth >= *params_.max_depth )
      return make_leaf( majority );

    std::vector<uint32_t> candidates;
    int best = -1;
    double best_gain = -1.0;
    for ( auto const f : allowed_ )
    {
      if ( used_[f] )
        continue;
      auto const col = samples_.column( f );
      auto const hi_total = popcount_and( mask, col );
      if ( hi_total == 0 || hi_total == total )
        continue;
      candidates.push_back( f );
      auto const hi_ones = popcount_and3( mask, col, samples_.labels() );
      double const gain = information_gain( ones, total, hi_ones, hi_total );
      if ( gain > best_gain + 1e-12 )
      {
        best_gain = gain;
        best = static_cast<int>( f );
      }
    }
    /* all samples agree on every usable feature */
    if ( candidates.empty() )
      return make_leaf( majority );

    if ( best_gain < params_.fdecomp_threshold )
      if ( auto fd = fdecomp_select( samples_, mask, candidates ) )
        best = static_cast<int>( *fd );

    auto const col = samples_.column( static_cast<uint32_t>( best ) );
    std::vector<word> lo( mask.size() ), hi( mask.size() );
    for ( std::size_t w = 0; w < mask.size(); ++w )
    {
      hi[w] = mask[w] & col[w];
      lo[w] = mask[w] & ~col[w];
    }

    auto const index = static_cast<uint32_t>( tree_->nodes.size() );
    tree_->nodes.push_back( { best, majority, 0, 0 } );
    used_[best] = true;
    auto const lo_node = build_node( lo, depth + 1u, majority );
    auto const hi_node = build_node( hi, depth + 1u, majority );
    used_[best] = false;
    tree_->nodes[index].lo = lo_node;
    tree_->nodes[index].hi = hi_node;
    return index;
  }

  sample_matrix const& samples_;
  dt_params const& params_;
  std::vector<uint32_t> allowed_;
  std::vector<bool> used_;
  decision_tree* tree_ = nullptr;
};

} // namespace

decision_tree train_dt( sample_matrix const& samples, dt_params const& params, std::span<uint32_t const> allowed )
{
  if ( samples.size() == 0 )
    throw error( "train_dt: empty dataset" );
  if ( params.min_samples < 1 )
    throw error( "train_dt: min_samples must be >= 1" );
  return tree_builder( samples, params, allowed ).build();
}

decision_tree train_dt( dataset const& data, dt_params const& params )
{
  if ( data.empty() )
    throw error( "train_dt: empty dataset" );
  feature_registry features( data.num_inputs() );
  sample_matrix samples( data, features );
  std::vector<uint32_t> allowed( features.size() );
  std::iota( allowed.begin(), allowed.end(), 0u );
  return train_dt( samples, params, allowed );
}

namespace
{

struct fringe_candidate
{
  fringe_op op;
  uint32_t a;
  uint32_t b;
};

/* value of the 2-leaf subtree rooted at `n` as a function of its split, if it is one */
std::optional<std::pair<bool, bool>> leaf_pair( decision_tree const& t, uint32_t n )
{
  auto const& node = t.nodes[n];
  if ( node.is_leaf() || !t.nodes[node.lo].is_leaf() || !t.nodes[node.hi].is_leaf() )
    return std::nullopt;
  return std::make_pair( t.nodes[node.lo].label, t.nodes[node.hi].label );
}

void collect_fringe( decision_tree const& t, uint32_t n, std::optional<std::pair<uint32_t, bool>> parent,
                     std::vector<fringe_candidate>& out )
{
  auto const& node = t.nodes[n];
  if ( node.is_leaf() )
    return;

  auto const leaves = leaf_pair( t, n );
  if ( leaves && leaves->first != leaves->second && parent )
  {
    auto const [p, branch] = *parent;
    auto const& pnode = t.nodes[p];
    auto const parent_feat = static_cast<uint32_t>( pnode.feature );
    auto const feat = static_cast<uint32_t>( node.feature );
    uint32_t const sibling = branch ? pnode.lo : pnode.hi;
    auto const& snode = t.nodes[sibling];

    /* local function of (parent feature A, node feature B): bit (2A + B) */
    uint8_t tt = 0;
    auto put = [&]( bool a, bool b, bool v ) {
      if ( v )
        tt |= uint8_t( 1u << ( ( a ? 2u : 0u ) + ( b ? 1u : 0u ) ) );
    };
    put( branch, false, leaves->first );
    put( branch, true, leaves->second );

    bool determined = false;
    if ( snode.is_leaf() )
    {
      put( !branch, false, snode.label );
      put( !branch, true, snode.label );
      determined = true;
    }
    else if ( auto sl = leaf_pair( t, sibling ); sl && static_cast<uint32_t>( snode.feature ) == feat )
    {
      put( !branch, false, sl->first );
      put( !branch, true, sl->second );
      determined = true;
    }

    if ( determined )
    {
      if ( auto op = canonical_op( tt ) )
        out.push_back( { *op, parent_feat, feat } );
    }
    else
    {
      /* sibling is a larger subtree: conjunction with the 1-leaf path, or
         its disjunctive dual when the sibling side leans to 1 */
      bool const a_pos = branch;
      bool const b_pos = leaves->second;
      fringe_op op;
      if ( !snode.label )
      {
        if ( a_pos && b_pos )
          op = fringe_op::and_;
        else if ( !a_pos && b_pos )
          op = fringe_op::and_not_l;
        else if ( a_pos && !b_pos )
          op = fringe_op::and_not_r;
        else
          op = fringe_op::nota_and_notb;
      }
      else
      {
        /* (A != branch) or (B == positive leaf value) */
        bool const a_lit = !branch;
        if ( a_lit && b_pos )
          op = fringe_op::or_;
        else if ( !a_lit && b_pos )
          op = fringe_op::or_not_l;
        else if ( a_lit && !b_pos )
          op = fringe_op::or_not_r;
        else
          op = fringe_op::nota_or_notb;
      }
      out.push_back( { op, parent_feat, feat } );
    }
  }

  collect_fringe( t, node.lo, std::make_pair( n, false ), out );
  collect_fringe( t, node.hi, std::make_pair( n, true ), out );
}

} // namespace

decision_tree fringe_train( dataset const& data, dt_params const& params )
{
  if ( data.empty() )
    throw error( "fringe_train: empty dataset" );

  feature_registry features( data.num_inputs() );
  auto train_with = [&]( feature_registry const& reg ) {
    sample_matrix samples( data, reg );
    std::vector<uint32_t> allowed( reg.size() );
    std::iota( allowed.begin(), allowed.end(), 0u );
    return train_dt( samples, params, allowed );
  };

  auto tree = train_with( features );
  for ( uint32_t it = 0; it < params.fringe_iterations; ++it )
  {
    std::vector<fringe_candidate> found;
    collect_fringe( tree, 0, std::nullopt, found );

    bool added = false;
    for ( auto const& c : found )
    {
      if ( features.composite_count() >= params.fringe_feature_limit )
        break;
      if ( features.find_equivalent( c.op, c.a, c.b ) )
        continue;
      features.add_composite( c.op, c.a, c.b );
      added = true;
    }
    if ( !added )
      break;
    tree = train_with( features );
  }
  return tree;
}

std::string serialize( decision_tree const& tree )
{
  std::ostringstream out;
  out << "tree " << tree.features.num_inputs() << ' ' << tree.features.composite_count() << '\n';
  for ( uint32_t id = tree.features.num_inputs(); id < tree.features.size(); ++id )
  {
    auto const& f = tree.features[id];
    out << "F " << op_name( f.op ) << ' ' << f.a << ' ' << f.b << '\n';
  }
  std::function<void( uint32_t )> emit = [&]( uint32_t n ) {
    auto const& node = tree.nodes[n];
    if ( node.is_leaf() )
    {
      out << "L " << ( node.label ? 1 : 0 ) << '\n';
      return;
    }
    out << "S " << node.feature << '\n';
    emit( node.lo );
    emit( node.hi );
  };
  if ( !tree.nodes.empty() )
    emit( 0 );
  return out.str();
}

decision_tree deserialize_tree( std::string_view text )
{
  std::istringstream in{ std::string( text ) };
  std::string tag;
  uint32_t num_inputs = 0, composites = 0;
  if ( !( in >> tag >> num_inputs >> composites ) || tag != "tree" )
    throw error( "tree: malformed header" );
  decision_tree tree;
  tree.features = feature_registry( num_inputs );
  for ( uint32_t k = 0; k < composites; ++k )
  {
    std::string name;
    uint32_t a, b;
    if ( !( in >> tag >> name >> a >> b ) || tag != "F" )
      throw error( "tree: malformed feature line" );
    tree.features.add_composite( op_from_name( name ), a, b );
  }

  std::function<uint32_t()> parse = [&]() -> uint32_t {
    long long v;
    if ( !( in >> tag >> v ) )
      throw error( "tree: truncated node list" );
    auto const index = static_cast<uint32_t>( tree.nodes.size() );
    if ( tag == "L" )
    {
      if ( v != 0 && v != 1 )
        throw error( "tree: leaf label must be 0 or 1" );
      tree.nodes.push_back( { -1, v == 1, 0, 0 } );
      return index;
    }
    if ( tag != "S" || v < 0 || v >= tree.features.size() )
      throw error( "tree: malformed split line" );
    tree.nodes.push_back( { static_cast<int32_t>( v ), false, 0, 0 } );
    auto const lo = parse();
    auto const hi = parse();
    tree.nodes[index].lo = lo;
    tree.nodes[index].hi = hi;
    return index;
  };
  parse();
  return tree;
}

} // namespace boolearn
