#include "boolearn/espresso_lite.hpp"

#include <cmath>
#include <set>

namespace boolearn
{

packed_cube packed_cube::from_string( std::string_view s )
{
  auto const words = std::max<std::size_t>( 1, words_for( s.size() ) );
  packed_cube c{ std::vector<word>( words, 0 ), std::vector<word>( words, 0 ) };
  for ( std::size_t i = 0; i < s.size(); ++i )
  {
    switch ( s[i] )
    {
    case '0':
      set_bit( c.care, i, true );
      break;
    case '1':
      set_bit( c.care, i, true );
      set_bit( c.value, i, true );
      break;
    case '-':
      break;
    default:
      throw error( "invalid cube character" );
    }
  }
  return c;
}

std::string packed_cube::to_string( uint32_t num_inputs ) const
{
  std::string s( num_inputs, '-' );
  for ( uint32_t i = 0; i < num_inputs; ++i )
    if ( get_bit( care, i ) )
      s[i] = get_bit( value, i ) ? '1' : '0';
  return s;
}

bool packed_cube::intersects( packed_cube const& other ) const
{
  for ( std::size_t w = 0; w < care.size(); ++w )
    if ( ( value[w] ^ other.value[w] ) & care[w] & other.care[w] )
      return false;
  return true;
}

bool packed_cube::contained_in( packed_cube const& other ) const
{
  for ( std::size_t w = 0; w < care.size(); ++w )
  {
    if ( other.care[w] & ~care[w] )
      return false;
    if ( ( value[w] ^ other.value[w] ) & other.care[w] )
      return false;
  }
  return true;
}

bool packed_cube::contains_minterm( std::span<word const> minterm ) const
{
  for ( std::size_t w = 0; w < care.size(); ++w )
    if ( ( value[w] ^ minterm[w] ) & care[w] )
      return false;
  return true;
}

uint32_t packed_cube::literal_count() const
{
  return static_cast<uint32_t>( popcount( care ) );
}

bool cover::covers( std::span<word const> minterm ) const
{
  for ( auto const& c : onset )
    if ( c.contains_minterm( minterm ) )
      return true;
  return false;
}

cover cover_from_pla( pla_file const& pla )
{
  cover c;
  c.num_inputs = pla.num_inputs;
  for ( auto const& cb : pla.cubes )
    ( cb.output ? c.onset : c.offset ).push_back( packed_cube::from_string( cb.inputs ) );
  for ( auto const& on : c.onset )
    for ( auto const& off : c.offset )
      if ( on.intersects( off ) )
        throw error( "cover: onset and offset intersect" );
  return c;
}

namespace
{

/* number of positions where the two cubes specify opposite values */
uint32_t conflicts( packed_cube const& a, packed_cube const& b )
{
  uint32_t n = 0;
  for ( std::size_t w = 0; w < a.care.size(); ++w )
    n += std::popcount( ( a.value[w] ^ b.value[w] ) & a.care[w] & b.care[w] );
  return n;
}

bool conflicts_at( packed_cube const& a, packed_cube const& b, uint32_t column )
{
  return get_bit( a.care, column ) && get_bit( b.care, column ) && get_bit( a.value, column ) != get_bit( b.value, column );
}

} // namespace

cover expand( cover const& c )
{
  cover out;
  out.num_inputs = c.num_inputs;
  out.offset = c.offset;

  std::vector<uint32_t> distance( c.offset.size() );
  for ( auto const& original : c.onset )
  {
    /* a cube already inside an earlier expanded cube expands to that cube */
    bool covered = false;
    for ( auto const& done : out.onset )
      if ( original.contained_in( done ) )
      {
        covered = true;
        break;
      }
    if ( covered )
      continue;

    packed_cube cube = original;
    for ( std::size_t k = 0; k < c.offset.size(); ++k )
      distance[k] = conflicts( cube, c.offset[k] );

    for ( uint32_t col = 0; col < c.num_inputs; ++col )
    {
      if ( !get_bit( cube.care, col ) )
        continue;
      /* raising col is blocked by any offset cube whose only conflict is col */
      bool blocked = false;
      for ( std::size_t k = 0; k < c.offset.size(); ++k )
        if ( distance[k] == 1 && conflicts_at( cube, c.offset[k], col ) )
        {
          blocked = true;
          break;
        }
      if ( blocked )
        continue;
      for ( std::size_t k = 0; k < c.offset.size(); ++k )
        if ( conflicts_at( cube, c.offset[k], col ) )
          --distance[k];
      set_bit( cube.care, col, false );
      set_bit( cube.value, col, false );
    }

    bool duplicate = false;
    for ( auto const& done : out.onset )
      if ( done == cube )
      {
        duplicate = true;
        break;
      }
    if ( !duplicate )
      out.onset.push_back( std::move( cube ) );
  }
  return out;
}

namespace
{

bool tautology_rec( std::vector<packed_cube>& cubes, uint32_t num_inputs )
{
  if ( cubes.empty() )
    return false;

  double volume = 0.0;
  for ( auto const& c : cubes )
  {
    auto const lits = c.literal_count();
    if ( lits == 0 )
      return true;
    volume += std::ldexp( 1.0, -static_cast<int>( lits ) );
  }
  if ( volume < 1.0 - 1e-12 )
    return false;

  /* split on the most binate column */
  int best = -1;
  std::size_t best_score = 0;
  for ( uint32_t col = 0; col < num_inputs; ++col )
  {
    std::size_t pos = 0, neg = 0;
    for ( auto const& c : cubes )
      if ( get_bit( c.care, col ) )
        ( get_bit( c.value, col ) ? pos : neg )++;
    if ( pos > 0 && neg > 0 && pos + neg > best_score )
    {
      best = static_cast<int>( col );
      best_score = pos + neg;
    }
  }
  /* a unate cover is a tautology only if it contains the universal cube */
  if ( best < 0 )
    return false;

  for ( bool v : { false, true } )
  {
    std::vector<packed_cube> cof;
    cof.reserve( cubes.size() );
    for ( auto const& c : cubes )
    {
      if ( get_bit( c.care, best ) && get_bit( c.value, best ) != v )
        continue;
      auto d = c;
      set_bit( d.care, best, false );
      set_bit( d.value, best, false );
      cof.push_back( std::move( d ) );
    }
    if ( !tautology_rec( cof, num_inputs ) )
      return false;
  }
  return true;
}

} // namespace

bool is_tautology( std::vector<packed_cube> cubes, uint32_t num_inputs )
{
  return tautology_rec( cubes, num_inputs );
}

cover irredundant( cover const& c )
{
  cover out = c;
  std::vector<bool> kept( c.onset.size(), true );
  for ( std::size_t i = 0; i < c.onset.size(); ++i )
  {
    auto const& target = c.onset[i];
    /* cofactor the other kept cubes against target and test tautology */
    std::vector<packed_cube> rest;
    for ( std::size_t j = 0; j < c.onset.size(); ++j )
    {
      if ( j == i || !kept[j] || !c.onset[j].intersects( target ) )
        continue;
      auto d = c.onset[j];
      for ( std::size_t w = 0; w < d.care.size(); ++w )
      {
        d.care[w] &= ~target.care[w];
        d.value[w] &= d.care[w];
      }
      rest.push_back( std::move( d ) );
    }
    if ( tautology_rec( rest, c.num_inputs ) )
      kept[i] = false;
  }
  out.onset.clear();
  for ( std::size_t i = 0; i < c.onset.size(); ++i )
    if ( kept[i] )
      out.onset.push_back( c.onset[i] );
  return out;
}

} // namespace boolearn
