#include "boolearn/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace boolearn
{

unsigned worker_threads()
{
  if ( char const* env = std::getenv( "BOOLEARN_THREADS" ) )
  {
    try
    {
      int const n = std::stoi( env );
      if ( n > 0 )
        return static_cast<unsigned>( n );
    }
    catch ( std::exception const& )
    {
    }
  }
  auto const hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

void parallel_for( std::size_t n, std::function<void( std::size_t )> const& body )
{
  auto const threads = std::min<std::size_t>( worker_threads(), n );
  if ( threads <= 1 )
  {
    for ( std::size_t i = 0; i < n; ++i )
      body( i );
    return;
  }

  std::atomic<std::size_t> next{ 0 };
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for ( ;; )
    {
      auto const i = next.fetch_add( 1 );
      if ( i >= n )
        return;
      try
      {
        body( i );
      }
      catch ( ... )
      {
        std::lock_guard lock( failure_mutex );
        if ( !failure )
          failure = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve( threads - 1 );
  for ( std::size_t t = 1; t < threads; ++t )
    pool.emplace_back( worker );
  worker();
  for ( auto& t : pool )
    t.join();
  if ( failure )
    std::rethrow_exception( failure );
}

} // namespace boolearn
