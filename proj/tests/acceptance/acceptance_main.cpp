#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "clonelab/acceptance.hpp"
#include "clonelab/errors.hpp"

using namespace clonelab;

int main( int argc, char** argv )
{
  auto prof = acceptance::profile::small;
  if ( argc > 1 )
  {
    auto p = acceptance::parse_profile( argv[1] );
    if ( !p )
    {
      std::fprintf( stderr, "unknown profile %s\n", argv[1] );
      return 1;
    }
    prof = *p;
  }
  int failed = 0;
  for ( const auto& c : acceptance::criteria() )
  {
    const auto t0 = std::chrono::steady_clock::now();
    std::string verdict;
    std::string note;
    try
    {
      const auto r = c.run( prof );
      verdict = r.passed() ? "PASS" : "FAIL";
      note = std::to_string( r.checks ) + " checks, " + std::to_string( r.failures ) + " failures";
      if ( !r.passed() )
      {
        note += "; first witness " + r.witnesses.front().dump();
      }
    }
    catch ( const std::exception& e )
    {
      verdict = "FAIL";
      note = std::string( "error: " ) + e.what();
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    failed += verdict != "PASS";
    std::printf( "[%s] %-22s %s (%s, %.2fs)\n", verdict.c_str(), c.id.c_str(), c.title.c_str(), note.c_str(), dt.count() );
    std::fflush( stdout );
  }
  std::printf( "%d criteria failed\n", failed );
  return failed == 0 ? 0 : 1;
}
