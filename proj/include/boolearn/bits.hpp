#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace boolearn
{

using word = uint64_t;
inline constexpr uint32_t word_bits = 64u;

/* all library errors derive from this */
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t words_for( std::size_t bits )
{
  return ( bits + word_bits - 1u ) / word_bits;
}

inline bool get_bit( std::span<word const> words, std::size_t i )
{
  return ( words[i / word_bits] >> ( i % word_bits ) ) & 1u;
}

inline void set_bit( std::span<word> words, std::size_t i, bool value )
{
  word const mask = word{ 1 } << ( i % word_bits );
  if ( value )
    words[i / word_bits] |= mask;
  else
    words[i / word_bits] &= ~mask;
}

inline std::size_t popcount( std::span<word const> words )
{
  std::size_t n = 0;
  for ( auto w : words )
    n += std::popcount( w );
  return n;
}

/* popcount of a & b */
inline std::size_t popcount_and( std::span<word const> a, std::span<word const> b )
{
  std::size_t n = 0;
  for ( std::size_t i = 0; i < a.size(); ++i )
    n += std::popcount( a[i] & b[i] );
  return n;
}

inline std::size_t popcount_and3( std::span<word const> a, std::span<word const> b, std::span<word const> c )
{
  std::size_t n = 0;
  for ( std::size_t i = 0; i < a.size(); ++i )
    n += std::popcount( a[i] & b[i] & c[i] );
  return n;
}

/* mask with the low `bits % 64` bits of the last word set */
inline word tail_mask( std::size_t bits )
{
  auto const r = bits % word_bits;
  return r == 0 ? ~word{ 0 } : ( ( word{ 1 } << r ) - 1u );
}

/* all-ones bitset of the given length, padding cleared */
inline std::vector<word> ones( std::size_t bits )
{
  std::vector<word> v( words_for( bits ), ~word{ 0 } );
  if ( !v.empty() )
    v.back() &= tail_mask( bits );
  return v;
}

/* 64-bit FNV-1a, used for stable digests */
inline uint64_t fnv1a( std::string const& s )
{
  uint64_t h = 0xcbf29ce484222325ull;
  for ( unsigned char c : s )
  {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

} // namespace boolearn
