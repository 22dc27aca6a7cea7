#include "boolearn/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "boolearn/compile.hpp"
#include "boolearn/espresso_lite.hpp"
#include "boolearn/parallel.hpp"
#include "boolearn/random.hpp"

namespace boolearn
{

namespace
{

constexpr std::array<std::string_view, 9> model_names = { "sym", "espresso", "dt", "dt8", "fringe",
                                                          "rf",  "lutnet",   "cgp", "const" };

constexpr std::array<std::string_view, 3> resplit_names = { "as_given", "merge_80_20", "regroup3" };

} // namespace

std::string_view model_name( model_kind k )
{
  return model_names[static_cast<std::size_t>( k )];
}

model_kind model_from_name( std::string_view name )
{
  for ( std::size_t i = 0; i < model_names.size(); ++i )
    if ( model_names[i] == name )
      return static_cast<model_kind>( i );
  if ( name == "symmetric" )
    return model_kind::symmetric;
  throw error( "unknown model '" + std::string( name ) + "'" );
}

std::string_view resplit_name( resplit_policy p )
{
  return resplit_names[static_cast<std::size_t>( p )];
}

resplit_policy resplit_from_name( std::string_view name )
{
  auto it = std::find( resplit_names.begin(), resplit_names.end(), name );
  if ( it == resplit_names.end() )
    throw error( "unknown resplit policy '" + std::string( name ) + "'" );
  return static_cast<resplit_policy>( it - resplit_names.begin() );
}

std::vector<model_kind> parse_model_list( std::string_view list )
{
  std::vector<model_kind> out;
  auto add = [&]( model_kind k ) {
    if ( std::find( out.begin(), out.end(), k ) == out.end() )
      out.push_back( k );
  };
  std::size_t pos = 0;
  while ( pos <= list.size() )
  {
    auto const comma = list.find( ',', pos );
    auto const token = list.substr( pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos );
    if ( !token.empty() )
    {
      auto const k = model_from_name( token );
      add( k );
      if ( k == model_kind::dt )
        add( model_kind::dt8 );
    }
    if ( comma == std::string_view::npos )
      break;
    pos = comma + 1;
  }
  std::sort( out.begin(), out.end() );
  return out;
}

nlohmann::ordered_json portfolio_config::to_json() const
{
  nlohmann::ordered_json j;
  j["budget"] = budget;
  std::vector<std::string> names;
  for ( auto m : models )
    names.emplace_back( model_name( m ) );
  j["models"] = names;
  j["seed"] = seed;
  j["dt"] = { { "max_depth", dt.max_depth ? nlohmann::json( *dt.max_depth ) : nlohmann::json( nullptr ) },
              { "min_samples", dt.min_samples },
              { "fdecomp_threshold", dt.fdecomp_threshold },
              { "fringe_iterations", dt.fringe_iterations },
              { "fringe_feature_limit", dt.fringe_feature_limit } };
  j["dt8_depth"] = dt8_depth;
  j["rf"] = { { "n_trees", rf.n_trees }, { "max_depth", rf.max_depth }, { "feature_fraction", rf.feature_fraction } };
  j["lutnet"] = { { "k", lutnet.k },
                  { "layers", lutnet.layers },
                  { "luts_per_layer", lutnet.luts_per_layer },
                  { "scheme", lutnet.scheme == wiring_scheme::random ? "random" : "unique_random" },
                  { "search_steps", lutnet_search_steps },
                  { "max_k", lutnet_max_k },
                  { "max_layers", lutnet_max_layers },
                  { "max_width", lutnet_max_width } };
  j["cgp"] = { { "generations", cgp.generations },
               { "lambda", cgp.lambda },
               { "initial_mutation_rate", cgp.initial_mutation_rate },
               { "window", cgp.window },
               { "bootstrap_gate", cgp_bootstrap_gate },
               { "size_factor", cgp_size_factor },
               { "random_columns", cgp_random_columns },
               { "random_batch", cgp_random_batch },
               { "random_change_each", cgp_random_change_each } };
  j["approx"] = { { "patterns", approx_patterns }, { "level_exclusion", approx_level_exclusion } };
  j["validation_gate"] = validation_gate;
  j["resplit"] = resplit_name( resplit );
  j["symmetric_min_support"] = symmetric_min_support;
  return j;
}

portfolio_config portfolio_config::from_json( nlohmann::json const& j )
{
  portfolio_config c;
  auto get = [&]( nlohmann::json const& obj, char const* key, auto& target ) {
    if ( obj.contains( key ) && !obj[key].is_null() )
      target = obj[key].get<std::decay_t<decltype( target )>>();
  };
  get( j, "budget", c.budget );
  if ( j.contains( "models" ) )
  {
    if ( j["models"].is_string() )
      c.models = parse_model_list( j["models"].get<std::string>() );
    else
    {
      std::string joined;
      for ( auto const& m : j["models"] )
        joined += m.get<std::string>() + ",";
      c.models = parse_model_list( joined );
    }
  }
  get( j, "seed", c.seed );
  if ( j.contains( "dt" ) )
  {
    auto const& d = j["dt"];
    if ( d.contains( "max_depth" ) && !d["max_depth"].is_null() )
      c.dt.max_depth = d["max_depth"].get<uint32_t>();
    get( d, "min_samples", c.dt.min_samples );
    get( d, "fdecomp_threshold", c.dt.fdecomp_threshold );
    get( d, "fringe_iterations", c.dt.fringe_iterations );
    get( d, "fringe_feature_limit", c.dt.fringe_feature_limit );
  }
  get( j, "dt8_depth", c.dt8_depth );
  if ( j.contains( "rf" ) )
  {
    get( j["rf"], "n_trees", c.rf.n_trees );
    get( j["rf"], "max_depth", c.rf.max_depth );
    get( j["rf"], "feature_fraction", c.rf.feature_fraction );
  }
  if ( j.contains( "lutnet" ) )
  {
    auto const& l = j["lutnet"];
    get( l, "k", c.lutnet.k );
    get( l, "layers", c.lutnet.layers );
    get( l, "luts_per_layer", c.lutnet.luts_per_layer );
    if ( l.contains( "scheme" ) )
      c.lutnet.scheme = l["scheme"].get<std::string>() == "random" ? wiring_scheme::random : wiring_scheme::unique_random;
    get( l, "search_steps", c.lutnet_search_steps );
    get( l, "max_k", c.lutnet_max_k );
    get( l, "max_layers", c.lutnet_max_layers );
    get( l, "max_width", c.lutnet_max_width );
  }
  if ( j.contains( "cgp" ) )
  {
    auto const& g = j["cgp"];
    get( g, "generations", c.cgp.generations );
    get( g, "lambda", c.cgp.lambda );
    get( g, "initial_mutation_rate", c.cgp.initial_mutation_rate );
    get( g, "window", c.cgp.window );
    get( g, "bootstrap_gate", c.cgp_bootstrap_gate );
    get( g, "size_factor", c.cgp_size_factor );
    get( g, "random_columns", c.cgp_random_columns );
    get( g, "random_batch", c.cgp_random_batch );
    get( g, "random_change_each", c.cgp_random_change_each );
  }
  if ( j.contains( "approx" ) )
  {
    get( j["approx"], "patterns", c.approx_patterns );
    get( j["approx"], "level_exclusion", c.approx_level_exclusion );
  }
  get( j, "validation_gate", c.validation_gate );
  if ( j.contains( "resplit" ) )
    c.resplit = resplit_from_name( j["resplit"].get<std::string>() );
  get( j, "symmetric_min_support", c.symmetric_min_support );
  get( j, "record_time", c.record_time );
  return c;
}

std::string portfolio_config::digest() const
{
  std::ostringstream ss;
  ss << std::hex << std::setw( 16 ) << std::setfill( '0' ) << fnv1a( to_json().dump() );
  return ss.str();
}

nlohmann::ordered_json model_report::to_json() const
{
  nlohmann::ordered_json j;
  j["benchmark"] = benchmark;
  j["model_kind"] = model_name( kind );
  j["train_acc"] = train_acc;
  j["valid_acc"] = valid_acc;
  j["test_acc"] = test_acc ? nlohmann::ordered_json( *test_acc ) : nlohmann::ordered_json( nullptr );
  j["and_nodes"] = and_nodes;
  j["levels"] = levels;
  if ( wall_time_ms )
    j["wall_time_ms"] = *wall_time_ms;
  j["seed"] = seed;
  j["params_digest"] = params_digest;
  j["merged_retrain"] = merged_retrain;
  auto& cands = j["candidates"] = nlohmann::ordered_json::array();
  for ( auto const& c : candidates )
    cands.push_back( { { "model_kind", model_name( c.kind ) },
                       { "train_acc", c.train_acc },
                       { "valid_acc", c.valid_acc },
                       { "and_nodes", c.and_nodes },
                       { "levels", c.levels },
                       { "approximated", c.approximated } } );
  return j;
}

model_report model_report::from_json( nlohmann::json const& j )
{
  model_report r;
  r.benchmark = j.value( "benchmark", "" );
  r.kind = model_from_name( j.value( "model_kind", "const" ) );
  r.train_acc = j.value( "train_acc", 0.0 );
  r.valid_acc = j.value( "valid_acc", 0.0 );
  if ( j.contains( "test_acc" ) && !j["test_acc"].is_null() )
    r.test_acc = j["test_acc"].get<double>();
  r.and_nodes = j.value( "and_nodes", 0u );
  r.levels = j.value( "levels", 0u );
  if ( j.contains( "wall_time_ms" ) )
    r.wall_time_ms = j["wall_time_ms"].get<double>();
  r.seed = j.value( "seed", uint64_t{ 0 } );
  r.params_digest = j.value( "params_digest", "" );
  r.merged_retrain = j.value( "merged_retrain", false );
  if ( j.contains( "candidates" ) )
    for ( auto const& c : j["candidates"] )
      r.candidates.push_back( { model_from_name( c.value( "model_kind", "const" ) ), c.value( "train_acc", 0.0 ),
                                c.value( "valid_acc", 0.0 ), c.value( "and_nodes", 0u ), c.value( "levels", 0u ),
                                c.value( "approximated", false ) } );
  return r;
}

std::optional<std::string> detect_symmetric( dataset const& data, uint32_t min_support )
{
  if ( data.empty() )
    return std::nullopt;
  uint32_t const n = data.num_inputs();
  if ( min_support == 0 )
    min_support = ( n + 2u ) / 2u;

  /* -1 unseen, else the label seen for that popcount */
  std::vector<int> seen( n + 1u, -1 );
  for ( std::size_t r = 0; r < data.size(); ++r )
  {
    auto const count = popcount( data.row( r ) );
    int const label = data.label( r ) ? 1 : 0;
    if ( seen[count] == -1 )
      seen[count] = label;
    else if ( seen[count] != label )
      return std::nullopt;
  }
  auto const observed = static_cast<uint32_t>( std::count_if( seen.begin(), seen.end(), []( int v ) { return v >= 0; } ) );
  if ( observed < min_support )
    return std::nullopt;

  std::string signature( n + 1u, '0' );
  for ( uint32_t c = 0; c <= n; ++c )
  {
    int value = seen[c];
    for ( uint32_t d = 1; value < 0; ++d )
    {
      if ( c >= d && seen[c - d] >= 0 )
        value = seen[c - d];
      else if ( c + d <= n && seen[c + d] >= 0 )
        value = seen[c + d];
    }
    signature[c] = value ? '1' : '0';
  }
  return signature;
}

double evaluate_accuracy( aig const& g, dataset const& data )
{
  if ( data.num_inputs() != g.num_inputs() )
    throw error( "evaluate: circuit has " + std::to_string( g.num_inputs() ) + " inputs, data has " +
                 std::to_string( data.num_inputs() ) );
  if ( data.empty() )
    return 0.0;
  auto const out = simulate( g, data.columns() );
  auto const& labels = data.label_words();
  std::size_t wrong = 0;
  for ( std::size_t w = 0; w < out.size(); ++w )
  {
    word diff = out[w] ^ labels[w];
    if ( w + 1 == out.size() )
      diff &= tail_mask( data.size() );
    wrong += std::popcount( diff );
  }
  return static_cast<double>( data.size() - wrong ) / static_cast<double>( data.size() );
}

double evaluate_accuracy( aig const& g, pla_file const& pla )
{
  if ( pla.num_inputs != g.num_inputs() )
    throw error( "evaluate: circuit has " + std::to_string( g.num_inputs() ) + " inputs, PLA has " +
                 std::to_string( pla.num_inputs ) );
  return evaluate_accuracy( g, to_dataset( pla ) );
}

double evaluate_accuracy_scalar( aig const& g, pla_file const& pla )
{
  if ( pla.num_inputs != g.num_inputs() )
    throw error( "evaluate: width mismatch" );
  if ( pla.cubes.empty() )
    return 0.0;
  std::size_t correct = 0;
  for ( auto const& c : pla.cubes )
  {
    std::vector<bool> pattern( c.inputs.size() );
    for ( std::size_t i = 0; i < c.inputs.size(); ++i )
    {
      if ( c.inputs[i] == '-' )
        throw error( "evaluate: cube '" + c.inputs + "' is not a minterm" );
      pattern[i] = c.inputs[i] == '1';
    }
    correct += evaluate_pattern( g, pattern ) == c.output;
  }
  return static_cast<double>( correct ) / static_cast<double>( pla.cubes.size() );
}

namespace
{

struct candidate
{
  model_kind kind = model_kind::constant;
  aig circuit;
  bool approximated = false;
  double train_acc = 0.0;
  double valid_acc = 0.0;
  aig_metrics size;
  lutnet_params lutnet; /* parameters chosen by the search, reused on retrain */
};

aig constant_aig( uint32_t n, bool value )
{
  aig g( n );
  g.set_output( value ? lit_true : lit_false );
  return g;
}

lutnet_params search_lutnet( dataset const& train, dataset const& valid, portfolio_config const& config,
                             uint64_t seed )
{
  auto p = config.lutnet;
  p.seed = seed;
  /* configurations whose compiled circuit exceeds the budget are not explored */
  auto score = [&]( lutnet_params const& q ) -> std::optional<double> {
    auto const net = memorize( build_topology( train.num_inputs(), q ), train );
    if ( lutnet_to_aig( net ).compact().num_ands() > config.budget )
      return std::nullopt;
    return evaluate( net, valid.empty() ? train : valid );
  };
  double best = score( p ).value_or( 0.0 );
  for ( uint32_t step = 0; step < config.lutnet_search_steps; ++step )
  {
    std::vector<lutnet_params> neighbors;
    if ( p.layers < config.lutnet_max_layers )
    {
      auto q = p;
      ++q.layers;
      neighbors.push_back( q );
    }
    if ( p.luts_per_layer * 2 <= config.lutnet_max_width )
    {
      auto q = p;
      q.luts_per_layer *= 2;
      neighbors.push_back( q );
    }
    if ( p.k < config.lutnet_max_k )
    {
      auto q = p;
      ++q.k;
      neighbors.push_back( q );
    }
    std::optional<lutnet_params> next;
    double next_score = best;
    for ( auto const& q : neighbors )
    {
      auto const s = score( q );
      if ( s && *s > next_score )
      {
        next_score = *s;
        next = q;
      }
    }
    if ( !next )
      break;
    p = *next;
    best = next_score;
  }
  return p;
}

/* trains one model kind; nullopt when the kind does not apply (e.g. no symmetry) */
std::optional<candidate> train_candidate( model_kind kind, dataset const& train, dataset const& valid,
                                          portfolio_config const& config, uint64_t seed,
                                          std::optional<lutnet_params> fixed_lutnet = std::nullopt )
{
  candidate c;
  c.kind = kind;
  uint32_t const n = train.num_inputs();
  switch ( kind )
  {
  case model_kind::symmetric:
  {
    auto sig = detect_symmetric( train, config.symmetric_min_support );
    if ( !sig )
      return std::nullopt;
    c.circuit = symmetric_to_aig( *sig, n );
    break;
  }
  case model_kind::espresso:
  {
    auto const cov = irredundant( expand( cover_from_pla( to_pla( train ) ) ) );
    c.circuit = sop_to_aig( n, cov.onset );
    break;
  }
  case model_kind::dt:
    c.circuit = dt_to_aig( train_dt( train, config.dt ) );
    break;
  case model_kind::dt8:
  {
    auto p = config.dt;
    p.max_depth = config.dt8_depth;
    c.circuit = dt_to_aig( train_dt( train, p ) );
    break;
  }
  case model_kind::fringe:
    c.circuit = dt_to_aig( fringe_train( train, config.dt ) );
    break;
  case model_kind::rf:
  {
    auto p = config.rf;
    p.seed = seed;
    p.tree = config.dt;
    c.circuit = forest_to_aig( train_rf( train, p ) );
    break;
  }
  case model_kind::lutnet:
  {
    c.lutnet = fixed_lutnet ? *fixed_lutnet : search_lutnet( train, valid, config, seed );
    c.circuit = lutnet_to_aig( memorize( build_topology( n, c.lutnet ), train ) );
    break;
  }
  case model_kind::constant:
    c.circuit = constant_aig( n, train.majority_label() );
    break;
  case model_kind::cgp:
    return std::nullopt;
  }
  return c;
}

void finish_candidate( candidate& c, dataset const& train, dataset const& valid, portfolio_config const& config,
                       uint64_t seed )
{
  c.circuit = c.circuit.compact();
  if ( c.circuit.num_ands() > config.budget )
  {
    approx_params ap;
    ap.budget = config.budget;
    ap.patterns = config.approx_patterns;
    ap.level_exclusion = config.approx_level_exclusion;
    ap.seed = derive_seed( seed, 0xa99 );
    c.circuit = approximate_to_budget( c.circuit, ap );
    c.approximated = true;
  }
  c.size = metrics( c.circuit );
  c.train_acc = evaluate_accuracy( c.circuit, train );
  c.valid_acc = valid.empty() ? c.train_acc : evaluate_accuracy( c.circuit, valid );
}

std::optional<candidate> train_cgp( dataset const& train, dataset const& valid, candidate const& seed_model,
                                    portfolio_config const& config, uint64_t seed )
{
  if ( train.num_inputs() == 0 )
    return std::nullopt;
  auto params = config.cgp;
  params.seed = seed;
  cgp_genome init;
  if ( seed_model.valid_acc >= config.cgp_bootstrap_gate )
  {
    /* refine the incumbent with fixed full-set fitness */
    init = encode_aig( seed_model.circuit, config.cgp_size_factor, derive_seed( seed, 1 ) );
    params.batch_size = 0;
  }
  else
  {
    rng gen( derive_seed( seed, 2 ) );
    init = random_genome( train.num_inputs(), config.cgp_random_columns, gen );
    params.batch_size = config.cgp_random_batch;
    params.change_each = config.cgp_random_change_each;
  }
  auto const result = evolve( train, init, params );
  candidate c;
  c.kind = model_kind::cgp;
  c.circuit = decode( result.best );
  finish_candidate( c, train, valid, config, seed );
  return c;
}

bool better( candidate const& a, candidate const& b )
{
  if ( a.valid_acc != b.valid_acc )
    return a.valid_acc > b.valid_acc;
  if ( a.size.and_nodes != b.size.and_nodes )
    return a.size.and_nodes < b.size.and_nodes;
  return a.kind < b.kind;
}

struct core_result
{
  candidate winner;
  std::vector<candidate> all;
  bool merged = false;
};

core_result portfolio_core( dataset const& train, dataset const& valid, portfolio_config const& config )
{
  std::vector<model_kind> kinds;
  for ( auto k : config.models )
    if ( k != model_kind::cgp && k != model_kind::constant )
      kinds.push_back( k );
  std::sort( kinds.begin(), kinds.end() );
  kinds.erase( std::unique( kinds.begin(), kinds.end() ), kinds.end() );
  kinds.push_back( model_kind::constant );

  std::vector<std::optional<candidate>> slots( kinds.size() );
  parallel_for( kinds.size(), [&]( std::size_t i ) {
    auto const seed = derive_seed( config.seed, static_cast<uint64_t>( kinds[i] ) );
    auto c = train_candidate( kinds[i], train, valid, config, seed );
    if ( c )
      finish_candidate( *c, train, valid, config, seed );
    slots[i] = std::move( c );
  } );

  core_result out;
  for ( auto& s : slots )
    if ( s )
      out.all.push_back( std::move( *s ) );

  auto pick = [&] {
    std::size_t best = 0;
    for ( std::size_t i = 1; i < out.all.size(); ++i )
      if ( better( out.all[i], out.all[best] ) )
        best = i;
    return best;
  };

  if ( std::find( config.models.begin(), config.models.end(), model_kind::cgp ) != config.models.end() )
  {
    auto const seed = derive_seed( config.seed, static_cast<uint64_t>( model_kind::cgp ) );
    if ( auto c = train_cgp( train, valid, out.all[pick()], config, seed ) )
      out.all.push_back( std::move( *c ) );
  }

  out.winner = out.all[pick()];

  /* weak winners are retrained on train + valid */
  if ( out.winner.valid_acc < config.validation_gate && !valid.empty() && out.winner.kind != model_kind::constant &&
       out.winner.kind != model_kind::cgp )
  {
    auto const merged = train.merged( valid );
    auto const seed = derive_seed( config.seed, static_cast<uint64_t>( out.winner.kind ) );
    if ( auto c = train_candidate( out.winner.kind, merged, valid, config, seed, out.winner.lutnet ) )
    {
      finish_candidate( *c, train, valid, config, seed );
      auto const selected_valid = out.winner.valid_acc;
      out.winner = std::move( *c );
      out.winner.valid_acc = selected_valid;
      out.merged = true;
    }
  }
  return out;
}

std::pair<dataset, dataset> split_rows( dataset const& all, std::vector<std::size_t> const& order, std::size_t cut_lo,
                                        std::size_t cut_hi )
{
  dataset train( all.num_inputs() ), valid( all.num_inputs() );
  for ( std::size_t i = 0; i < order.size(); ++i )
  {
    auto const r = order[i];
    ( i >= cut_lo && i < cut_hi ? valid : train ).add( all.row( r ), all.label( r ) );
  }
  return { std::move( train ), std::move( valid ) };
}

} // namespace

portfolio_result run_portfolio( pla_file const& train_pla, pla_file const& valid_pla, portfolio_config const& config,
                                pla_file const* test )
{
  if ( train_pla.num_inputs != valid_pla.num_inputs )
    throw error( "run_portfolio: train and valid widths differ" );
  if ( test && test->num_inputs != train_pla.num_inputs )
    throw error( "run_portfolio: test width differs" );

  auto const start = std::chrono::steady_clock::now();
  auto const train = to_dataset( train_pla );
  auto const valid = to_dataset( valid_pla );
  if ( train.empty() )
    throw error( "run_portfolio: empty training set" );

  core_result core;
  switch ( config.resplit )
  {
  case resplit_policy::as_given:
    core = portfolio_core( train, valid, config );
    break;
  case resplit_policy::merge_80_20:
  {
    auto const all = train.merged( valid );
    std::vector<std::size_t> order( all.size() );
    std::iota( order.begin(), order.end(), std::size_t{ 0 } );
    rng gen( derive_seed( config.seed, 0x8020 ) );
    gen.shuffle( order );
    auto const cut = all.size() * 8 / 10;
    auto [t, v] = split_rows( all, order, cut, all.size() );
    core = portfolio_core( t, v, config );
    break;
  }
  case resplit_policy::regroup3:
  {
    auto const all = train.merged( valid );
    std::vector<std::size_t> order( all.size() );
    std::iota( order.begin(), order.end(), std::size_t{ 0 } );
    rng gen( derive_seed( config.seed, 0x3f01d ) );
    gen.shuffle( order );
    std::optional<core_result> best;
    for ( std::size_t fold = 0; fold < 3; ++fold )
    {
      auto [t, v] = split_rows( all, order, all.size() * fold / 3, all.size() * ( fold + 1 ) / 3 );
      auto r = portfolio_core( t, v, config );
      if ( !best || better( r.winner, best->winner ) )
        best = std::move( r );
    }
    core = std::move( *best );
    break;
  }
  }

  portfolio_result result;
  result.circuit = core.winner.circuit;
  auto& rep = result.report;
  rep.kind = core.winner.kind;
  rep.train_acc = core.winner.train_acc;
  rep.valid_acc = core.winner.valid_acc;
  rep.and_nodes = core.winner.size.and_nodes;
  rep.levels = core.winner.size.levels;
  rep.seed = config.seed;
  rep.params_digest = config.digest();
  rep.merged_retrain = core.merged;
  for ( auto const& c : core.all )
    rep.candidates.push_back( { c.kind, c.train_acc, c.valid_acc, c.size.and_nodes, c.size.levels, c.approximated } );
  if ( test )
    rep.test_acc = evaluate_accuracy( result.circuit, *test );
  if ( config.record_time )
    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start ).count();
  return result;
}

suite_score score_suite( std::span<model_report const> reports )
{
  if ( reports.empty() )
    throw error( "score_suite: no reports" );
  suite_score s;
  std::size_t tested = 0;
  std::vector<pareto_point> points;
  for ( auto const& r : reports )
  {
    s.mean_nodes += r.and_nodes;
    s.mean_levels += r.levels;
    if ( r.test_acc )
    {
      s.mean_test_acc += *r.test_acc;
      s.mean_overfit += r.valid_acc - *r.test_acc;
      ++tested;
    }
    points.push_back( { r.test_acc ? *r.test_acc : r.valid_acc, r.and_nodes } );
  }
  auto const count = static_cast<double>( reports.size() );
  s.mean_nodes /= count;
  s.mean_levels /= count;
  if ( tested > 0 )
  {
    s.mean_test_acc /= static_cast<double>( tested );
    s.mean_overfit /= static_cast<double>( tested );
  }

  /* frontier: ascending nodes, keep points strictly more accurate than all smaller ones */
  std::sort( points.begin(), points.end(), []( auto const& a, auto const& b ) {
    if ( a.nodes != b.nodes )
      return a.nodes < b.nodes;
    return a.accuracy > b.accuracy;
  } );
  for ( auto const& p : points )
    if ( s.pareto_points.empty() || p.accuracy > s.pareto_points.back().accuracy )
      s.pareto_points.push_back( p );
  return s;
}

nlohmann::ordered_json suite_score::to_json() const
{
  nlohmann::ordered_json j;
  j["mean_test_acc"] = mean_test_acc;
  j["mean_nodes"] = mean_nodes;
  j["mean_levels"] = mean_levels;
  j["mean_overfit"] = mean_overfit;
  auto& pts = j["pareto_points"] = nlohmann::ordered_json::array();
  for ( auto const& p : pareto_points )
    pts.push_back( { { "accuracy", p.accuracy }, { "nodes", p.nodes } } );
  return j;
}

std::string suite_score::pareto_csv() const
{
  std::ostringstream out;
  out << "accuracy,and_nodes\n";
  for ( auto const& p : pareto_points )
  {
    /* shortest text that reads back to the same double */
    std::array<char, 32> buf{};
    auto const end = std::to_chars( buf.data(), buf.data() + buf.size(), p.accuracy ).ptr;
    out << std::string_view( buf.data(), end - buf.data() ) << ',' << p.nodes << '\n';
  }
  return out.str();
}

suite_manifest suite_manifest::from_json( nlohmann::json const& j, std::string const& base_dir )
{
  suite_manifest m;
  if ( j.contains( "config" ) )
    m.config = portfolio_config::from_json( j["config"] );
  if ( !j.contains( "benchmarks" ) || !j["benchmarks"].is_array() )
    throw error( "manifest: 'benchmarks' array is required" );
  auto resolve = [&]( std::string const& p ) {
    if ( p.empty() || base_dir.empty() || std::filesystem::path( p ).is_absolute() )
      return p;
    return ( std::filesystem::path( base_dir ) / p ).string();
  };
  for ( auto const& b : j["benchmarks"] )
  {
    suite_entry e;
    if ( b.contains( "preset" ) )
    {
      auto const preset = b["preset"].get<std::string>();
      auto spec = parse_preset( preset );
      spec.seed = b.value( "seed", uint64_t{ 0 } );
      spec.samples_per_split = b.value( "samples", std::size_t{ 6400 } );
      e.generated = spec;
      e.name = b.value( "name", preset );
    }
    else
    {
      if ( !b.contains( "train" ) || !b.contains( "valid" ) )
        throw error( "manifest: benchmark needs 'preset' or 'train' and 'valid'" );
      e.train_path = resolve( b["train"].get<std::string>() );
      e.valid_path = resolve( b["valid"].get<std::string>() );
      if ( b.contains( "test" ) )
        e.test_path = resolve( b["test"].get<std::string>() );
      e.name = b.value( "name", std::filesystem::path( e.train_path ).stem().string() );
    }
    m.entries.push_back( std::move( e ) );
  }
  return m;
}

nlohmann::ordered_json suite_result::to_json() const
{
  nlohmann::ordered_json j;
  auto& arr = j["benchmarks"] = nlohmann::ordered_json::array();
  for ( auto const& r : reports )
    arr.push_back( r.to_json() );
  j["score"] = score.to_json();
  return j;
}

suite_result run_suite( suite_manifest const& manifest )
{
  suite_result result;
  for ( auto const& e : manifest.entries )
  {
    pla_file train, valid, test;
    bool has_test = false;
    if ( e.generated )
    {
      auto splits = sample_splits( *e.generated );
      train = std::move( splits.train );
      valid = std::move( splits.valid );
      test = std::move( splits.test );
      has_test = true;
    }
    else
    {
      train = read_pla_file( e.train_path );
      valid = read_pla_file( e.valid_path );
      if ( !e.test_path.empty() )
      {
        test = read_pla_file( e.test_path );
        has_test = true;
      }
    }
    auto r = run_portfolio( train, valid, manifest.config, has_test ? &test : nullptr );
    r.report.benchmark = e.name;
    result.reports.push_back( std::move( r.report ) );
    result.circuits.push_back( std::move( r.circuit ) );
  }
  if ( !result.reports.empty() )
    result.score = score_suite( result.reports );
  return result;
}

void write_suite_outputs( std::string const& dir, suite_result const& result )
{
  namespace fs = std::filesystem;
  fs::create_directories( dir );
  for ( std::size_t i = 0; i < result.reports.size(); ++i )
  {
    auto const sub = fs::path( dir ) / file_stem( result.reports[i].benchmark );
    fs::create_directories( sub );
    std::ofstream( sub / "report.json" ) << result.reports[i].to_json().dump( 2 ) << '\n';
    write_aag_file( ( sub / "circuit.aag" ).string(), result.circuits[i] );
  }
  std::ofstream( fs::path( dir ) / "suite.json" ) << result.to_json().dump( 2 ) << '\n';
  std::ofstream( fs::path( dir ) / "pareto.csv" ) << result.score.pareto_csv();
}

} // namespace boolearn
