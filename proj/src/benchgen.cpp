#include "boolearn/benchgen.hpp"

#include <array>
#include <charconv>
#include <unordered_set>

#include "boolearn/random.hpp"

namespace boolearn
{

namespace
{

constexpr std::array<std::string_view, 7> family_names = {
    "adder_msb", "adder_msb2", "comparator", "multiplier_msb", "multiplier_mid", "parity", "symmetric" };

std::vector<word> operand( std::span<word const> input, uint32_t offset, uint32_t k )
{
  std::vector<word> limbs( words_for( k ) + 1u, 0 );
  for ( uint32_t i = 0; i < k; ++i )
    if ( get_bit( input, offset + i ) )
      set_bit( limbs, i, true );
  return limbs;
}

bool sum_bit( std::span<word const> input, uint32_t k, uint32_t bit )
{
  bool carry = false;
  for ( uint32_t i = 0; i < k; ++i )
  {
    bool const a = get_bit( input, i ), b = get_bit( input, k + i );
    bool const s = a ^ b ^ carry;
    if ( i == bit )
      return s;
    carry = ( a && b ) || ( carry && ( a ^ b ) );
  }
  return carry; /* bit == k */
}

bool product_bit( std::span<word const> input, uint32_t k, uint32_t bit )
{
  auto const a = operand( input, 0, k );
  auto const b = operand( input, k, k );
  std::vector<word> prod( a.size() + b.size(), 0 );
  for ( std::size_t i = 0; i < a.size(); ++i )
  {
    unsigned __int128 carry = 0;
    for ( std::size_t j = 0; j < b.size(); ++j )
    {
      unsigned __int128 const t = static_cast<unsigned __int128>( a[i] ) * b[j] + prod[i + j] + carry;
      prod[i + j] = static_cast<word>( t );
      carry = t >> 64;
    }
    prod[i + b.size()] += static_cast<word>( carry );
  }
  return get_bit( prod, bit );
}

} // namespace

uint32_t benchmark_spec::num_inputs() const
{
  switch ( family )
  {
  case bench_family::parity:
    return k;
  case bench_family::symmetric:
    return static_cast<uint32_t>( signature.size() ) - 1u;
  default:
    return 2u * k;
  }
}

std::string benchmark_spec::name() const
{
  if ( family == bench_family::symmetric )
    return "symmetric:" + signature;
  return std::string( family_name( family ) ) + ":k=" + std::to_string( k );
}

std::string_view family_name( bench_family f )
{
  return family_names[static_cast<std::size_t>( f )];
}

bench_family family_from_name( std::string_view name )
{
  for ( std::size_t i = 0; i < family_names.size(); ++i )
    if ( family_names[i] == name )
      return static_cast<bench_family>( i );
  if ( name == "sym" )
    return bench_family::symmetric;
  throw error( "unknown benchmark family '" + std::string( name ) + "'" );
}

std::vector<std::string> const& contest_symmetric_signatures()
{
  static std::vector<std::string> const signatures = { "00000000111111111", "11111100000111111", "00011110001111000",
                                                       "00001110101110000", "00000011111000000" };
  return signatures;
}

std::vector<std::string> preset_names()
{
  return { "ex75", "ex76", "ex77", "ex78", "ex79", "parity:k=16", "adder_msb:k=16", "comparator:k=20" };
}

benchmark_spec parse_preset( std::string_view text )
{
  benchmark_spec spec;
  if ( text.size() == 4 && text.substr( 0, 3 ) == "ex7" && text[3] >= '5' && text[3] <= '9' )
  {
    spec.family = bench_family::symmetric;
    spec.signature = contest_symmetric_signatures()[static_cast<std::size_t>( text[3] - '5' )];
    spec.k = static_cast<uint32_t>( spec.signature.size() ) - 1u;
    return spec;
  }

  auto const colon = text.find( ':' );
  spec.family = family_from_name( text.substr( 0, colon ) );
  if ( colon == std::string_view::npos )
    throw error( "preset '" + std::string( text ) + "' needs a width or signature" );
  auto const arg = text.substr( colon + 1 );
  if ( spec.family == bench_family::symmetric )
  {
    if ( arg.empty() || arg.find_first_not_of( "01" ) != std::string_view::npos )
      throw error( "symmetric preset needs a 0/1 signature" );
    spec.signature = std::string( arg );
    spec.k = static_cast<uint32_t>( arg.size() ) - 1u;
    return spec;
  }
  if ( arg.substr( 0, 2 ) != "k=" )
    throw error( "preset '" + std::string( text ) + "' must use k=<width>" );
  auto const num = arg.substr( 2 );
  auto [ptr, ec] = std::from_chars( num.data(), num.data() + num.size(), spec.k );
  if ( ec != std::errc() || ptr != num.data() + num.size() || spec.k == 0 )
    throw error( "invalid width in preset '" + std::string( text ) + "'" );
  return spec;
}

bool oracle( benchmark_spec const& spec, std::span<word const> input )
{
  uint32_t const n = spec.num_inputs();
  if ( input.size() != std::max<std::size_t>( 1, words_for( n ) ) )
    throw error( "oracle: input width mismatch" );
  uint32_t const k = spec.k;
  switch ( spec.family )
  {
  case bench_family::adder_msb:
    return sum_bit( input, k, k );
  case bench_family::adder_msb2:
    return sum_bit( input, k, k - 1u );
  case bench_family::comparator:
    for ( uint32_t i = k; i-- > 0; )
    {
      bool const a = get_bit( input, i ), b = get_bit( input, k + i );
      if ( a != b )
        return a;
    }
    return false;
  case bench_family::multiplier_msb:
    return product_bit( input, k, 2u * k - 1u );
  case bench_family::multiplier_mid:
    return product_bit( input, k, k - 1u );
  case bench_family::parity:
  {
    bool p = false;
    for ( uint32_t i = 0; i < n; ++i )
      p ^= get_bit( input, i );
    return p;
  }
  case bench_family::symmetric:
  {
    std::size_t ones = 0;
    for ( uint32_t i = 0; i < n; ++i )
      ones += get_bit( input, i );
    return spec.signature[ones] == '1';
  }
  }
  return false;
}

bool oracle( benchmark_spec const& spec, std::string_view bits )
{
  if ( bits.size() != spec.num_inputs() )
    throw error( "oracle: input width mismatch" );
  std::vector<word> packed( std::max<std::size_t>( 1, words_for( bits.size() ) ), 0 );
  for ( std::size_t i = 0; i < bits.size(); ++i )
    if ( bits[i] == '1' )
      set_bit( packed, i, true );
  return oracle( spec, packed );
}

benchmark_splits sample_splits( benchmark_spec const& spec )
{
  if ( spec.family == bench_family::symmetric &&
       ( spec.signature.empty() || spec.signature.find_first_not_of( "01" ) != std::string::npos ) )
    throw error( "sample_splits: invalid symmetric signature" );
  uint32_t const n = spec.num_inputs();
  if ( n == 0 )
    throw error( "sample_splits: benchmark has no inputs" );

  std::size_t const s = spec.samples_per_split;
  bool const fits = n >= 63 || 3 * s <= ( std::size_t{ 1 } << n );
  rng gen( spec.seed );
  auto const words = words_for( n );

  benchmark_splits out;
  out.overlapping = !fits;
  std::unordered_set<std::string> seen;
  for ( pla_file* split : { &out.train, &out.valid, &out.test } )
  {
    split->num_inputs = n;
    if ( !fits )
      seen.clear();
    std::size_t produced = 0;
    while ( produced < s )
    {
      std::vector<word> row( words );
      for ( auto& w : row )
        w = gen.next();
      row.back() &= tail_mask( n );
      std::string bits( n, '0' );
      for ( uint32_t i = 0; i < n; ++i )
        if ( get_bit( row, i ) )
          bits[i] = '1';
      if ( !seen.insert( bits ).second )
      {
        /* drawn with replacement when the space is too small; repeats collapse */
        if ( !fits )
          ++produced;
        continue;
      }
      split->cubes.push_back( { bits, oracle( spec, row ) } );
      ++produced;
    }
  }
  return out;
}

std::string file_stem( std::string_view name )
{
  std::string out;
  for ( char c : name )
  {
    if ( c == '=' )
      continue;
    out.push_back( c == ':' || c == '/' || c == '\\' || c == ' ' ? '_' : c );
  }
  return out;
}

} // namespace boolearn
