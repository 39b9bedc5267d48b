#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "carrier.hpp"
#include "embeddings.hpp"
#include "errors.hpp"
#include "galois.hpp"
#include "group.hpp"
#include "mcont.hpp"
#include "operation.hpp"
#include "operation_set.hpp"
#include "partial.hpp"
#include "relation.hpp"
#include "report.hpp"

namespace clonelab::acceptance
{

enum class profile
{
  small,
  full
};

inline std::optional<profile> parse_profile( const std::string& s )
{
  if ( s == "small" )
  {
    return profile::small;
  }
  if ( s == "full" )
  {
    return profile::full;
  }
  return std::nullopt;
}

inline const char* to_string( profile p ) { return p == profile::small ? "small" : "full"; }

struct criterion
{
  std::string id;
  std::string title;
  std::function<check_report( profile )> run;
};

// ---------------------------------------------------------------------------
// Boolean building blocks
// ---------------------------------------------------------------------------

inline carrier_ptr boolean() { return carrier::plain( 2 ); }

inline operation bool_and( const carrier_ptr& c ) { return operation( c, 2, { 0, 0, 0, 1 } ); }
inline operation bool_or( const carrier_ptr& c ) { return operation( c, 2, { 0, 1, 1, 1 } ); }
inline operation bool_not( const carrier_ptr& c ) { return operation( c, 1, { 1, 0 } ); }

/// The 4 unary and 16 binary Boolean operations, by table rank.
inline std::vector<operation> small_boolean_pool( const carrier_ptr& c )
{
  std::vector<operation> pool;
  for ( std::size_t n : { 1u, 2u } )
  {
    const std::size_t rows = std::size_t{ 1 } << n;
    for ( std::uint32_t code = 0; code < ( 1u << rows ); ++code )
    {
      std::vector<value_t> table( rows );
      for ( std::size_t r = 0; r < rows; ++r )
      {
        table[r] = ( code >> ( rows - 1 - r ) ) & 1u;
      }
      pool.emplace_back( c, n, std::move( table ) );
    }
  }
  return pool;
}

inline json operation_names( const operation_set& s )
{
  json out = json::array();
  for ( const auto& f : s.all() )
  {
    std::string t = std::to_string( f.arity() ) + ":";
    for ( auto v : f.table() )
    {
      t += std::to_string( v );
    }
    out.push_back( t );
  }
  return out;
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

inline check_report galois_fixed_point( profile p, std::uint64_t seed = 2024 )
{
  check_report rep;
  rep.name = "galois-fixed-point";
  const auto c = boolean();
  const auto pool = small_boolean_pool( c );
  std::vector<std::pair<std::string, operation_set>> sets;
  sets.emplace_back( "{and}", operation_set( c, { bool_and( c ) } ) );
  sets.emplace_back( "{not}", operation_set( c, { bool_not( c ) } ) );
  sets.emplace_back( "{and,not}", operation_set( c, { bool_and( c ), bool_not( c ) } ) );
  sets.emplace_back( "{}", operation_set( c ) );
  std::mt19937_64 rng( seed );
  const std::size_t samples = p == profile::small ? 50 : 200;
  for ( std::size_t i = 0; i < samples; ++i )
  {
    operation_set s( c );
    const std::size_t size = 1 + rng() % 3;
    while ( s.size() < size )
    {
      s.insert( pool[rng() % pool.size()] );
    }
    sets.emplace_back( "sample-" + std::to_string( i ), std::move( s ) );
  }
  json per_set = json::array();
  for ( const auto& [name, gens] : sets )
  {
    const auto fp = verify_pol_inv_fixed_point( gens, 2, 4 );
    rep.expect( fp.status == fixed_point_status::equal, [&] {
      return json{ { "set", name },
                   { "generators", operation_names( gens ) },
                   { "status", to_string( fp.status ) },
                   { "only_in_closure", operation_names( fp.only_in_closure ) },
                   { "only_in_pol_inv", operation_names( fp.only_in_pol_inv ) } };
    } );
    per_set.push_back( json{ { "set", name }, { "clone_size", fp.closure.size() }, { "saturated_rounds", fp.closure_rounds } } );
  }
  rep.details["carrier_size"] = 2;
  rep.details["arity_bound"] = 2;
  rep.details["relation_arity_bound"] = 4;
  rep.details["seed"] = seed;
  rep.details["sets"] = per_set;
  return rep;
}

/// Monotone n-ary Boolean functions, counted by brute force over truth tables.
inline std::uint64_t monotone_count_oracle( std::size_t n )
{
  const std::uint64_t rows = std::uint64_t{ 1 } << n;
  std::uint64_t count = 0;
  for ( std::uint64_t code = 0; code < ( std::uint64_t{ 1 } << rows ); ++code )
  {
    bool mono = true;
    for ( std::uint64_t x = 0; x < rows && mono; ++x )
    {
      for ( std::uint64_t y = 0; y < rows && mono; ++y )
      {
        if ( ( x & y ) == x && ( ( code >> x ) & 1u ) > ( ( code >> y ) & 1u ) )
        {
          mono = false;
        }
      }
    }
    count += mono ? 1 : 0;
  }
  return count;
}

inline check_report post_lattice_counts( profile p )
{
  check_report rep;
  rep.name = "monotone-counts";
  const auto c = boolean();
  const relation leq( c, 2, { { 0, 0 }, { 0, 1 }, { 1, 1 } } );
  const std::size_t top = p == profile::small ? 3 : 4;
  const std::vector<std::uint64_t> dedekind{ 1, 3, 6, 20, 168 };
  budget b;
  b.max_arity = top;
  const auto mono = pol( relation_set( c, { leq } ), top, b );
  json counts = json::object();
  for ( std::size_t n = 1; n <= top; ++n )
  {
    const auto oracle = monotone_count_oracle( n );
    const auto got = mono.size( n );
    rep.expect( got == oracle && oracle == dedekind[n], [&] {
      return json{ { "arity", n }, { "pol", got }, { "oracle", oracle }, { "expected", dedekind[n] } };
    } );
    counts[std::to_string( n )] = got;
  }
  rep.details["counts"] = counts;
  return rep;
}

inline check_report sigma_lattice_embedding( profile )
{
  check_report rep;
  rep.name = "sigma-restriction";
  const auto c = boolean();
  const std::size_t arity_bound = 2, domain_bound = 4;
  std::vector<std::pair<std::string, operation_set>> gens{
      { "{}", operation_set( c ) },
      { "{and}", operation_set( c, { bool_and( c ) } ) },
      { "{or}", operation_set( c, { bool_or( c ) } ) },
      { "{not}", operation_set( c, { bool_not( c ) } ) },
      { "{and,or}", operation_set( c, { bool_and( c ), bool_or( c ) } ) },
      { "{and,not}", operation_set( c, { bool_and( c ), bool_not( c ) } ) } };
  std::vector<operation_set> fragments;
  std::vector<partial_clone> images;
  for ( const auto& [name, g] : gens )
  {
    auto cl = clone_closure( g, arity_bound );
    rep.expect( cl.saturated, "closure of " + name + " did not saturate" );
    fragments.push_back( cl.ops );
    images.push_back( sigma_restriction( cl.ops, domain_bound ) );
  }
  partial_closure_options opt;
  opt.arity_bound = arity_bound;
  opt.domain_size_bound = domain_bound;
  opt.domain_values = std::vector<value_t>{ 0, 1 };
  json pairs = json::array();
  for ( std::size_t i = 0; i < gens.size(); ++i )
  {
    for ( std::size_t j = i + 1; j < gens.size(); ++j )
    {
      const auto& ni = gens[i].first;
      const auto& nj = gens[j].first;
      rep.expect( !( fragments[i] == fragments[j] ), "fragments " + ni + " and " + nj + " coincide" );
      rep.expect( !( images[i] == images[j] ), "sigma images of " + ni + " and " + nj + " coincide" );
      const auto w = find_separation_witness( fragments[i], fragments[j] );
      bool witness_ok = false;
      json wj = nullptr;
      if ( w )
      {
        const auto restricted = restrict( w->member, w->domain );
        const auto& own = w->member_in_first ? images[i] : images[j];
        const auto& other = w->member_in_first ? images[j] : images[i];
        witness_ok = own.contains( restricted ) && !other.contains( restricted );
        json dom = json::array();
        for ( const auto& t : w->domain )
        {
          dom.push_back( tuple_to_json( *c, t ) );
        }
        wj = json{ { "member_of", w->member_in_first ? ni : nj }, { "arity", w->member.arity() }, { "domain", dom } };
      }
      rep.expect( witness_ok, [&] { return json{ { "pair", { ni, nj } }, { "missing_witness", true } }; } );

      const auto joined = clone_closure( fragments[i].unite( fragments[j] ), arity_bound );
      const auto lhs = sigma_restriction( joined.ops, domain_bound );
      const auto rhs = partial_join( images[i], images[j], opt );
      rep.expect( lhs == rhs, [&] {
        return json{ { "pair", { ni, nj } }, { "sigma_of_join", lhs.size() }, { "join_of_sigmas", rhs.size() } };
      } );
      pairs.push_back( json{ { "pair", { ni, nj } }, { "witness", wj }, { "join_size", lhs.size() } } );
    }
  }
  json sizes = json::array();
  for ( std::size_t i = 0; i < gens.size(); ++i )
  {
    sizes.push_back( json{ { "generators", gens[i].first }, { "fragment", fragments[i].size() }, { "image", images[i].size() } } );
  }
  rep.details["arity_bound"] = arity_bound;
  rep.details["domain_size_bound"] = domain_bound;
  rep.details["fragments"] = sizes;
  rep.details["pairs"] = pairs;
  return rep;
}

inline check_report interval_embedding( profile p )
{
  check_report rep;
  rep.name = "interval-embedding";
  const auto X = carrier::plain( 3 );
  std::vector<std::vector<value_t>> subsets{ { 0, 1 } };
  if ( p == profile::full )
  {
    subsets.push_back( { 0, 2 } );
    subsets.push_back( { 1, 2 } );
  }
  json parts = json::array();
  for ( const auto& subset : subsets )
  {
    const auto A = subcarrier( X, subset );
    operation_set all( A );
    for ( std::size_t n = 1; n <= 2; ++n )
    {
      for_each_operation( A, n, {}, [&]( const operation& f ) { all.insert( f ); } );
    }
    std::vector<named_fragment> samples{
        { "<and>", clone_closure( operation_set( A, { bool_and( A ) } ), 2 ).ops },
        { "<not>", clone_closure( operation_set( A, { bool_not( A ) } ), 2 ).ops },
        { "all", all },
        { "projections", projections_up_to( A, 2 ) } };
    auto r = verify_interval_embedding( X, subset, samples );
    rep.merge( r );
    parts.push_back( r.to_json() );
    for ( std::size_t m = 1; m <= 2; ++m )
    {
      auto pr = verify_patch_identity( X, subset, m );
      rep.merge( pr );
      parts.push_back( pr.to_json() );
    }
  }
  rep.details["parts"] = parts;
  return rep;
}

inline check_report cayley_lattices( profile p )
{
  check_report rep;
  rep.name = "cayley-lattice";
  std::vector<std::pair<std::string, finite_group>> groups{
      { "Z2xZ2", direct_product( cyclic_group( 2 ), cyclic_group( 2 ) ) },
      { "Z4", cyclic_group( 4 ) },
      { "Z6", cyclic_group( 6 ) },
      { "S3", symmetric_group( 3 ) } };
  if ( p == profile::full )
  {
    groups.emplace_back( "Z8", cyclic_group( 8 ) );
    groups.emplace_back( "Z2xZ4", direct_product( cyclic_group( 2 ), cyclic_group( 4 ) ) );
  }
  json parts = json::array();
  for ( const auto& [name, g] : groups )
  {
    auto r = verify_cayley_lattice( subgroup_lattice( g ) );
    rep.merge( r );
    if ( name == "Z2xZ2" )
    {
      rep.expect( r.details.value( "m3_sublattice", false ), "Z2xZ2 subgroup lattice is not M3" );
    }
    if ( name == "Z4" || name == "Z8" )
    {
      rep.expect( r.details.value( "is_chain", false ), name + " subgroup lattice is not a chain" );
    }
    auto j = r.to_json();
    j["group"] = name;
    parts.push_back( j );
  }
  rep.details["groups"] = parts;
  return rep;
}

inline check_report monp_meets( profile p )
{
  check_report rep;
  rep.name = "monp-meet";
  std::vector<std::pair<std::string, finite_group>> groups{
      { "Z2xZ2", direct_product( cyclic_group( 2 ), cyclic_group( 2 ) ) }, { "Z6", cyclic_group( 6 ) } };
  if ( p == profile::full )
  {
    groups.emplace_back( "S3", symmetric_group( 3 ) );
  }
  json per_group = json::array();
  for ( const auto& [name, g] : groups )
  {
    subgroup_lattice L( g );
    std::vector<element_set> domains;
    for ( value_t x = 0; x < g.order(); ++x )
    {
      domains.push_back( { x } );
    }
    std::size_t pairs = 0;
    for ( const auto& h : L.subgroups() )
    {
      for ( const auto& k : L.subgroups() )
      {
        rep.merge( verify_monp_meet( g, h, k, domains ) );
        ++pairs;
      }
    }
    per_group.push_back( json{ { "group", name }, { "subgroups", L.size() }, { "pairs", pairs } } );
  }
  rep.details["groups"] = per_group;
  return rep;
}

inline std::size_t tripartite_k( profile p ) { return p == profile::small ? 3 : 4; }

inline check_report lemma7( profile p, std::uint64_t seed = 7 )
{
  const auto k = tripartite_k( p );
  const auto X = carrier::tripartite( k );
  const alpha_prefix alpha( std::string( "0101" ).substr( 0, k ) );
  std::mt19937_64 rng( seed );
  std::vector<lemma7_triple> triples;
  for ( std::size_t i = 0; i < 10; ++i )
  {
    auto m = make_m_sigma( random_sigma_map( k, rng ), X );
    auto f = to_operation( random_g_alpha( alpha, k, rng ), X );
    auto g = to_operation( random_g_alpha( alpha, k, rng ), X );
    triples.push_back( { std::move( m ), std::move( f ), std::move( g ) } );
  }
  auto rep = verify_lemma_composition( alpha, triples );
  rep.details["k"] = k;
  rep.details["seed"] = seed;
  return rep;
}

inline m_interpretation random_interpretation( const carrier_ptr& X, const alpha_prefix& alpha, std::size_t g_count,
                                               std::size_t m_count, std::mt19937_64& rng )
{
  m_interpretation in{ X, {}, {} };
  for ( std::size_t i = 0; i < g_count; ++i )
  {
    in.g_ops.push_back( to_operation( random_g_alpha( alpha, X->k(), rng ), X ) );
  }
  for ( std::size_t i = 0; i < m_count; ++i )
  {
    in.m_ops.push_back( make_m_sigma( random_sigma_map( X->k(), rng ), X ) );
  }
  return in;
}

inline check_report lemma9( profile p, std::uint64_t seed = 9 )
{
  const auto k = tripartite_k( p );
  const auto X = carrier::tripartite( k );
  const alpha_prefix alpha( std::string( "0110" ).substr( 0, k ) );
  std::mt19937_64 rng( seed );
  const auto in = random_interpretation( X, alpha, 2, 2, rng );
  term_signature sig;
  sig.variables = p == profile::small ? 1 : 2;
  auto rep = verify_identifying_variables( in, alpha, 3, sig );
  rep.details["seed"] = seed;
  return rep;
}

inline check_report lemma10( profile p, std::uint64_t seed = 10 )
{
  const auto k = tripartite_k( p );
  const auto X = carrier::tripartite( k );
  const alpha_prefix alpha( std::string( k, '0' ) );
  const alpha_prefix beta( std::string( k, '1' ) );
  std::mt19937_64 rng( seed );
  const auto in = random_interpretation( X, alpha, 2, 2, rng );
  const std::vector<value_t> F{ X->a( 0 ), X->a( 1 ), X->b( bit_string( "1" ) ), X->infinity() };
  auto rep = verify_meet_fragment( in, alpha, beta, F, 2 );
  rep.details["seed"] = seed;
  return rep;
}

inline alpha_prefix random_window( std::size_t length, std::mt19937_64& rng )
{
  std::string s;
  for ( std::size_t i = 0; i < length; ++i )
  {
    s.push_back( rng() & 1u ? '1' : '0' );
  }
  return alpha_prefix( s );
}

inline check_report lemma11( profile p, std::uint64_t seed = 11 )
{
  check_report rep;
  rep.name = "join-interpolation";
  const std::size_t k = 6;
  const auto X = carrier::tripartite( k );
  std::mt19937_64 rng( seed );
  const std::size_t instances = p == profile::small ? 20 : 100;
  json runs = json::array();
  for ( std::size_t i = 0; i < instances; ++i )
  {
    auto gamma = random_window( k, rng );
    auto alpha = random_window( k, rng );
    auto beta = random_window( k, rng );
    while ( alpha == gamma )
    {
      alpha = random_window( k, rng );
    }
    while ( beta == gamma || beta == alpha )
    {
      beta = random_window( k, rng );
    }
    const auto d = *divergence_index( alpha, beta );
    const auto h = random_g_alpha( gamma, k, rng );
    const std::size_t f_size = 1 + rng() % 5;
    const std::size_t max_a = std::min( f_size, k - d );
    const std::size_t n_a = 1 + rng() % max_a;
    std::vector<value_t> a_pick( k );
    std::iota( a_pick.begin(), a_pick.end(), 0 );
    std::shuffle( a_pick.begin(), a_pick.end(), rng );
    std::vector<value_t> F( a_pick.begin(), a_pick.begin() + n_a );
    bool has_inf = false;
    while ( F.size() < f_size )
    {
      if ( !has_inf && rng() % 3 == 0 )
      {
        F.push_back( X->infinity() );
        has_inf = true;
        continue;
      }
      const value_t b = static_cast<value_t>( k + rng() % X->b_count() );
      if ( std::find( F.begin(), F.end(), b ) == F.end() )
      {
        F.push_back( b );
      }
    }
    auto r = verify_join( X, h, F, alpha, beta );
    rep.merge( r );
    runs.push_back( r.details );
  }
  rep.details["k"] = k;
  rep.details["seed"] = seed;
  rep.details["instances"] = runs;
  return rep;
}

inline std::vector<criterion> criteria()
{
  auto wrap = []( auto fn ) { return [fn]( profile p ) { return fn( p ); }; };
  return {
      { "galois-fixed-point", "clone closure equals Pol Inv on {0,1}", wrap( []( profile p ) { return galois_fixed_point( p ); } ) },
      { "post-lattice-counts", "monotone operation counts 3, 6, 20", wrap( post_lattice_counts ) },
      { "sigma-restriction", "restriction map is injective and preserves joins", wrap( sigma_lattice_embedding ) },
      { "interval-embedding", "interval embedding round trip and patch identity", wrap( interval_embedding ) },
      { "cayley-lattice", "subgroup lattices embed via Cayley clones", wrap( cayley_lattices ) },
      { "monp-meet", "meets of Cayley clones on finite domains", wrap( monp_meets ) },
      { "composition-identities", "m(x,x)=x, m(f(x),x)=m(x,f(x))=m(f(x),g(x))=f(x)", wrap( []( profile p ) { return lemma7( p ); } ) },
      { "identified-terms", "identified terms of depth <= 3 are infinity or in G_alpha",
        wrap( []( profile p ) { return lemma9( p ); } ) },
      { "meet-fragment", "G-terms of depth <= 2 separate F from B_beta", wrap( []( profile p ) { return lemma10( p ); } ) },
      { "join-interpolation", "join interpolation agrees with h on F", wrap( []( profile p ) { return lemma11( p ); } ) },
  };
}

} // namespace clonelab::acceptance
