#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace boolearn
{

/* splitmix64 finalizer; used to derive independent stream seeds */
constexpr uint64_t mix_seed( uint64_t x )
{
  x += 0x9e3779b97f4a7c15ull;
  x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebull;
  return x ^ ( x >> 31 );
}

constexpr uint64_t derive_seed( uint64_t seed, uint64_t stream )
{
  return mix_seed( seed ^ mix_seed( stream + 0x632be59bd9b4e019ull ) );
}

/*! \brief Seeded 64-bit generator with platform-independent helpers.
 *
 * Distribution helpers avoid std::uniform_*_distribution, whose output is
 * implementation defined, so traces are reproducible across toolchains.
 */
class rng
{
public:
  explicit rng( uint64_t seed ) : engine_( mix_seed( seed ) ) {}

  uint64_t next() { return engine_(); }

  /* uniform in [0, n); n > 0 */
  uint64_t below( uint64_t n )
  {
    uint64_t const limit = ~uint64_t{ 0 } - ( ~uint64_t{ 0 } % n );
    uint64_t x;
    do
    {
      x = engine_();
    } while ( x >= limit );
    return x % n;
  }

  /* uniform in [0, 1) with 53 bits */
  double uniform() { return static_cast<double>( engine_() >> 11 ) * 0x1.0p-53; }

  bool coin( double p ) { return uniform() < p; }

  bool bit() { return engine_() >> 63; }

  template<typename T>
  void shuffle( std::vector<T>& v )
  {
    for ( std::size_t i = v.size(); i > 1; --i )
      std::swap( v[i - 1], v[below( i )] );
  }

private:
  std::mt19937_64 engine_;
};

} // namespace boolearn
