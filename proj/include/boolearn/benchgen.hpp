#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boolearn/bits.hpp"
#include "boolearn/pla.hpp"

namespace boolearn
{

enum class bench_family
{
  adder_msb,
  adder_msb2,
  comparator,
  multiplier_msb,
  multiplier_mid,
  parity,
  symmetric
};

/*! \brief A generated benchmark.
 *
 * Arithmetic families read operand a from inputs [0, k) and b from
 * [k, 2k), both least significant bit first. Parity and symmetric
 * families have k inputs; a symmetric signature has length k + 1.
 */
struct benchmark_spec
{
  bench_family family = bench_family::parity;
  uint32_t k = 16;
  std::string signature;
  uint64_t seed = 0;
  std::size_t samples_per_split = 6400;

  uint32_t num_inputs() const;
  /* registry name, e.g. "adder_msb:k=16" or "symmetric:00011110001111000" */
  std::string name() const;
};

std::string_view family_name( bench_family f );
bench_family family_from_name( std::string_view name );

/* "family:k=K", "symmetric:<signature>", or a named preset such as "ex75" */
benchmark_spec parse_preset( std::string_view text );
/* filesystem-safe form of a benchmark name: "comparator:k=8" -> "comparator_k8" */
std::string file_stem( std::string_view name );
std::vector<std::string> preset_names();

/* the five 16-input symmetric signatures used by the contest */
std::vector<std::string> const& contest_symmetric_signatures();

bool oracle( benchmark_spec const& spec, std::span<word const> input );
bool oracle( benchmark_spec const& spec, std::string_view bits );

struct benchmark_splits
{
  pla_file train;
  pla_file valid;
  pla_file test;
  /* set when 3 * samples_per_split exceeds 2^inputs and splits were drawn independently */
  bool overlapping = false;
};

benchmark_splits sample_splits( benchmark_spec const& spec );

} // namespace boolearn
