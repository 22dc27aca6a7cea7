#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "boolearn/aig.hpp"
#include "boolearn/pla.hpp"
#include "boolearn/random.hpp"

namespace boolearn
{

enum class cgp_func : uint8_t
{
  and_,
  xor_
};

/* sources [0, num_inputs) are primary inputs, num_inputs + c is column c */
struct cgp_gene
{
  cgp_func func = cgp_func::and_;
  uint32_t fanin0 = 0;
  bool inv0 = false;
  uint32_t fanin1 = 0;
  bool inv1 = false;

  bool operator==( cgp_gene const& ) const = default;
};

struct cgp_output
{
  uint32_t source = 0;
  bool inv = false;

  bool operator==( cgp_output const& ) const = default;
};

/*! \brief Single-row CGP genome with unlimited levels-back.
 *
 * Column c may read any primary input or any column before c.
 */
struct cgp_genome
{
  uint32_t num_inputs = 0;
  std::vector<cgp_gene> columns;
  cgp_output output;

  uint32_t num_sources() const { return num_inputs + static_cast<uint32_t>( columns.size() ); }
  bool is_valid() const;
  /* per column: reachable from the output */
  std::vector<bool> active() const;
  uint32_t phenotype_size() const;

  bool operator==( cgp_genome const& ) const = default;
};

cgp_genome random_genome( uint32_t num_inputs, uint32_t columns, rng& gen );

/* leading columns copy the AIG in topological order; the rest is random padding */
cgp_genome encode_aig( aig const& g, double size_factor, uint64_t seed );

/* compiles the phenotype only; XOR genes use three AND nodes */
aig decode( cgp_genome const& genome );

struct es_state
{
  double mutation_rate = 0.01;
  std::vector<bool> success_window;
  uint64_t generation = 0;
};

/* resamples every gene field and the output independently with probability mutation_rate */
cgp_genome mutate( cgp_genome const& genome, es_state const& state, rng& gen );

struct evolve_params
{
  uint64_t generations = 1000;
  uint32_t lambda = 4;
  std::size_t batch_size = 0; /* 0 or >= dataset size: whole set, fixed fitness */
  uint32_t change_each = 1;
  double initial_mutation_rate = 0.01;
  uint32_t window = 20;
  double adapt_factor = 1.5;
  double min_rate = 1e-4;
  double max_rate = 0.5;
  uint64_t seed = 0;
};

/* one line per generation of the incumbent after selection */
struct cgp_trace_record
{
  uint64_t generation = 0;
  double fitness = 0.0;      /* incumbent accuracy on the current batch */
  double best_full = 0.0;    /* best full-set accuracy seen so far */
  uint32_t phenotype = 0;
  double mutation_rate = 0.0;
};

struct evolve_result
{
  cgp_genome best;
  double best_accuracy = 0.0; /* on the whole dataset */
  std::vector<cgp_trace_record> trace;
};

/* 1/5th rule step; call once per generation */
void record_generation( es_state& state, bool success, evolve_params const& params );

evolve_result evolve( dataset const& data, cgp_genome const& init, evolve_params const& params );

/* accuracy of the genome's phenotype on the dataset */
double cgp_accuracy( cgp_genome const& genome, dataset const& data );

/* JSON lines: generation, fitness, best_full, phenotype, mutation_rate */
void write_trace( std::ostream& out, std::vector<cgp_trace_record> const& trace );

} // namespace boolearn
