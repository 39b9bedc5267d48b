#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "galois.hpp"
#include "group.hpp"
#include "operation.hpp"
#include "operation_set.hpp"
#include "partial.hpp"
#include "report.hpp"

namespace clonelab
{

// ---------------------------------------------------------------------------
// Clones on a finite subset A of X, lifted to X.
// ---------------------------------------------------------------------------

/// Plain carrier holding the given elements of X, in that order.
inline carrier_ptr subcarrier( const carrier_ptr& X, const std::vector<value_t>& subset )
{
  if ( X->kind() != carrier_kind::plain )
  {
    throw argument_error( "subcarriers are only taken of plain carriers" );
  }
  std::vector<std::int64_t> labels;
  for ( auto v : subset )
  {
    if ( v >= X->size() )
    {
      throw argument_error( "subset element lies outside the carrier" );
    }
    labels.push_back( std::get<std::int64_t>( X->at( v ) ) );
  }
  if ( std::set<value_t>( subset.begin(), subset.end() ).size() != subset.size() )
  {
    throw argument_error( "subset elements must be distinct" );
  }
  return carrier::of_labels( labels );
}

/// Index in X of every element of A (A's atoms must all occur in X).
inline std::vector<value_t> embedding_map( const carrier& A, const carrier& X )
{
  std::vector<value_t> map( A.size() );
  for ( value_t i = 0; i < A.size(); ++i )
  {
    map[i] = X.index_of( A.at( i ) );
  }
  return map;
}

/// g restricted to A^n, if g maps A^n into A.
inline std::optional<operation> restrict_to_subcarrier( const operation& g, const carrier_ptr& A )
{
  const auto map = embedding_map( *A, *g.domain() );
  std::vector<value_t> inverse( g.domain()->size(), partial_operation::undefined );
  for ( value_t i = 0; i < map.size(); ++i )
  {
    inverse[map[i]] = i;
  }
  const auto rows = table_size( *A, g.arity() );
  std::vector<value_t> table( rows );
  tuple_t args( g.arity(), 0 );
  tuple_t lifted( g.arity() );
  for ( std::size_t r = 0; r < rows; ++r )
  {
    for ( std::size_t i = 0; i < args.size(); ++i )
    {
      lifted[i] = map[args[i]];
    }
    const auto v = inverse[g( lifted )];
    if ( v == partial_operation::undefined )
    {
      return std::nullopt;
    }
    table[r] = v;
    next_tuple( args, A->size() );
  }
  return operation( A, g.arity(), std::move( table ) );
}

/// Membership test for the operations on X that agree with f (an operation on
/// A ⊆ X) on A^n. Operations of another arity are rejected, not errors.
inline std::function<bool( const operation& )> lift_operation_set( const carrier_ptr& X, const operation& f )
{
  const auto map = embedding_map( *f.domain(), *X );
  return [X, f, map]( const operation& g ) {
    if ( g.arity() != f.arity() || !same_carrier( g.domain(), X ) )
    {
      return false;
    }
    tuple_t args( f.arity(), 0 );
    tuple_t lifted( f.arity() );
    do
    {
      for ( std::size_t i = 0; i < args.size(); ++i )
      {
        lifted[i] = map[args[i]];
      }
      if ( g( lifted ) != map[f( args )] )
      {
        return false;
      }
    } while ( next_tuple( args, f.domain()->size() ) );
    return true;
  };
}

/// s(x_1..x_m, y) = y when every x_i lies in A, f(x_1..x_m) otherwise.
inline operation patch_operation( const operation& f, const std::vector<value_t>& subset )
{
  std::vector<bool> in_subset( f.domain()->size(), false );
  for ( auto v : subset )
  {
    if ( v >= f.domain()->size() )
    {
      throw argument_error( "patch subset element lies outside the carrier" );
    }
    in_subset[v] = true;
  }
  const std::size_t m = f.arity();
  return operation::from_function( f.domain(), m + 1, [&]( std::span<const value_t> x ) {
    const auto head = x.first( m );
    const bool inside = std::all_of( head.begin(), head.end(), [&]( value_t v ) { return in_subset[v]; } );
    return inside ? x[m] : f( head );
  } );
}

/// Every extension to X of every member of C (a clone fragment on A ⊆ X).
inline operation_set interval_image( const operation_set& C, const carrier_ptr& X, const budget& b = {} )
{
  const auto& A = C.domain();
  const auto map = embedding_map( *A, *X );
  operation_set result( X );
  for ( const auto& f : C.all() )
  {
    const auto rows = table_size( *X, f.arity() );
    std::vector<bool> fixed( rows, false );
    std::vector<value_t> table( rows, 0 );
    tuple_t args( f.arity(), 0 );
    tuple_t lifted( f.arity() );
    do
    {
      for ( std::size_t i = 0; i < args.size(); ++i )
      {
        lifted[i] = map[args[i]];
      }
      const auto r = rank_tuple( lifted, X->size() );
      fixed[r] = true;
      table[r] = map[f( args )];
    } while ( next_tuple( args, A->size() ) );
    std::vector<std::size_t> free_positions;
    for ( std::size_t r = 0; r < rows; ++r )
    {
      if ( !fixed[r] )
      {
        free_positions.push_back( r );
      }
    }
    const auto count = checked_power( X->size(), free_positions.size(), b.max_tables );
    if ( !count || *count + result.size() > b.max_tables )
    {
      throw resource_error( "lifting a clone fragment to the carrier exceeds the budget" );
    }
    std::vector<value_t> free_values( free_positions.size(), 0 );
    do
    {
      for ( std::size_t i = 0; i < free_positions.size(); ++i )
      {
        table[free_positions[i]] = free_values[i];
      }
      result.insert( operation( X, f.arity(), table ) );
    } while ( next_tuple( free_values, X->size() ) );
  }
  return result;
}

struct named_fragment
{
  std::string name;
  operation_set fragment;
};

struct interval_options
{
  std::size_t arity_bound = 2;
  std::size_t composition_samples = 2000;
  std::uint64_t seed = 1;
  budget limits;
};

/// The extension of c that returns its first argument off A^m.
inline operation canonical_lift( const operation& c, const carrier_ptr& X )
{
  const auto map = embedding_map( *c.domain(), *X );
  std::vector<value_t> inverse( X->size(), partial_operation::undefined );
  for ( value_t i = 0; i < map.size(); ++i )
  {
    inverse[map[i]] = i;
  }
  return operation::from_function( X, c.arity(), [&]( std::span<const value_t> x ) {
    tuple_t local( x.size() );
    for ( std::size_t i = 0; i < x.size(); ++i )
    {
      if ( inverse[x[i]] == partial_operation::undefined )
      {
        return x[0];
      }
      local[i] = inverse[x[i]];
    }
    return map[c( local )];
  } );
}

/*! \brief Checks the interval embedding Cl(A) -> Cl(X) on sample clones.

  For every sample C (a saturated fragment on A, arities up to the bound):
  - the image contains the projections and is closed under composition
    (unary part exhaustively, mixed and binary parts by seeded sampling);
  - restricting the image back to A returns exactly C;
  - if C is all of O_A, the image equals Pol({A});
  - the image equals the clone D generated by the lifted projections and the
    canonical lifts of C's members: every f in the image is rebuilt as
    s(x, f'(x)) with s = patch(f, A) and f' a canonical lift.
  For every ordered pair, C ⊆ C' iff image(C) ⊆ image(C').
*/
inline check_report verify_interval_embedding( const carrier_ptr& X, const std::vector<value_t>& subset,
                                               const std::vector<named_fragment>& samples,
                                               const interval_options& opt = {} )
{
  check_report rep;
  rep.name = "interval-embedding";
  if ( subset.size() < 2 )
  {
    throw argument_error( "interval embedding needs |A| >= 2" );
  }
  const auto A = subcarrier( X, subset );
  std::mt19937_64 rng( opt.seed );

  const auto proj_A = projections_up_to( A, opt.arity_bound );
  auto lifted_projections = interval_image( proj_A, X, opt.limits );
  const auto pol_A = pol( relation_set( X, { relation( X, 1, [&] {
                                              std::vector<tuple_t> ts;
                                              for ( auto v : subset )
                                              {
                                                ts.push_back( { v } );
                                              }
                                              return ts;
                                            }() ) } ),
                          opt.arity_bound, opt.limits );

  std::vector<operation_set> images;
  json per_clone = json::array();
  bool any_sampled = false;
  for ( const auto& sample : samples )
  {
    if ( !same_carrier( sample.fragment.domain(), A ) )
    {
      throw argument_error( "sample clone " + sample.name + " does not live on the subset A" );
    }
    const auto C = sample.fragment.up_to_arity( opt.arity_bound );
    auto image = interval_image( C, X, opt.limits );
    json info;
    info["clone"] = sample.name;
    for ( std::size_t n = 1; n <= opt.arity_bound; ++n )
    {
      info["size_on_A"].push_back( C.size( n ) );
      info["image_size"].push_back( image.size( n ) );
    }

    // projections
    for ( std::size_t n = 1; n <= opt.arity_bound; ++n )
    {
      for ( std::size_t k = 1; k <= n; ++k )
      {
        rep.expect( image.contains( projection( X, n, k ) ), [&] {
          return json{ { "clone", sample.name }, { "check", "projection missing from image" }, { "arity", n }, { "index", k } };
        } );
      }
    }

    // closure under composition
    const auto& unary = image.of_arity( 1 );
    for ( const auto& f : unary )
    {
      for ( const auto& g : unary )
      {
        rep.expect( image.contains( compose( f, { g } ) ),
                    [&] { return json{ { "clone", sample.name }, { "check", "unary composition escapes the image" } }; } );
      }
    }
    if ( opt.arity_bound >= 2 && opt.composition_samples > 0 )
    {
      any_sampled = true;
      const auto ops = image.all();
      for ( std::size_t s = 0; s < opt.composition_samples; ++s )
      {
        const auto& f = ops[rng() % ops.size()];
        const auto m = 1 + rng() % opt.arity_bound;
        const auto& inner_pool = image.of_arity( m );
        std::vector<operation> gs;
        for ( std::size_t i = 0; i < f.arity(); ++i )
        {
          gs.push_back( inner_pool[rng() % inner_pool.size()] );
        }
        rep.expect( image.contains( compose( f, gs ) ), [&] {
          return json{ { "clone", sample.name }, { "check", "sampled composition escapes the image" } };
        } );
      }
    }

    // round trip back to A
    operation_set back( A );
    bool maps_into_A = true;
    for ( const auto& g : image.all() )
    {
      auto r = restrict_to_subcarrier( g, A );
      maps_into_A = maps_into_A && r.has_value();
      if ( r )
      {
        back.insert( *r );
      }
    }
    rep.expect( maps_into_A && back == C, [&] {
      return json{ { "clone", sample.name }, { "check", "restriction of the image to A differs from the clone" } };
    } );
    info["round_trip"] = maps_into_A && back == C;

    // the full clone on A goes to Pol({A})
    bool is_full = true;
    for ( std::size_t n = 1; n <= opt.arity_bound; ++n )
    {
      const auto all_count = checked_power( A->size(), table_size( *A, n ) );
      is_full = is_full && all_count && C.size( n ) == *all_count;
    }
    if ( is_full )
    {
      rep.expect( image == pol_A, [&] {
        return json{ { "clone", sample.name }, { "check", "image of all operations on A differs from Pol({A})" } };
      } );
      info["equals_pol_A"] = image == pol_A;
    }

    // reconstruction through the patch operation
    std::size_t rebuilt = 0;
    for ( const auto& f : image.all() )
    {
      if ( f.arity() + 1 > opt.limits.max_arity )
      {
        continue;
      }
      const auto s = patch_operation( f, subset );
      const auto s_on_A = restrict_to_subcarrier( s, A );
      rep.expect( s_on_A && *s_on_A == projection( A, f.arity() + 1, f.arity() + 1 ), [&] {
        return json{ { "clone", sample.name }, { "check", "patch operation is not a projection on A" } };
      } );
      const auto c = restrict_to_subcarrier( f, A );
      if ( !c )
      {
        continue;
      }
      const auto f_prime = canonical_lift( *c, X );
      rep.expect( C.contains( *c ) && image.contains( f_prime ), [&] {
        return json{ { "clone", sample.name }, { "check", "canonical lift is not in the image" } };
      } );
      std::vector<operation> args;
      for ( std::size_t k = 1; k <= f.arity(); ++k )
      {
        args.push_back( projection( X, f.arity(), k ) );
      }
      args.push_back( f_prime );
      const bool ok = compose( s, args ) == f;
      rep.expect( ok, [&] {
        return json{ { "clone", sample.name }, { "check", "s(x, f'(x)) differs from f" }, { "arity", f.arity() } };
      } );
      rebuilt += ok ? 1 : 0;
    }
    info["rebuilt_from_patch"] = rebuilt;
    per_clone.push_back( info );
    images.push_back( std::move( image ) );
  }

  for ( std::size_t i = 0; i < samples.size(); ++i )
  {
    for ( std::size_t j = 0; j < samples.size(); ++j )
    {
      const bool below = samples[i].fragment.up_to_arity( opt.arity_bound ).subset_of( samples[j].fragment );
      rep.expect( below == images[i].subset_of( images[j] ), [&] {
        return json{ { "check", "order not reflected" }, { "left", samples[i].name }, { "right", samples[j].name } };
      } );
    }
  }
  rep.exhaustive = !any_sampled;
  rep.details["carrier_size"] = X->size();
  rep.details["subset"] = subset;
  rep.details["arity_bound"] = opt.arity_bound;
  rep.details["composition_samples"] = opt.composition_samples;
  rep.details["seed"] = opt.seed;
  rep.details["clones"] = per_clone;
  return rep;
}

/// For every f of arity m on X and every f' agreeing with f on A^m:
/// s(x, f'(x)) = f(x) with s = patch(f, A). When `all_pairs` is set (only
/// feasible for small m), every f' is tried and the result is compared with
/// "f' on A^m, f elsewhere".
inline check_report verify_patch_identity( const carrier_ptr& X, const std::vector<value_t>& subset, std::size_t m,
                                           bool all_pairs = false, const budget& b = {} )
{
  check_report rep;
  rep.name = "patch-identity";
  std::vector<bool> in_subset( X->size(), false );
  for ( auto v : subset )
  {
    in_subset.at( v ) = true;
  }
  const auto rows = table_size( *X, m );
  std::vector<bool> on_A( rows );
  {
    tuple_t t( m, 0 );
    for ( std::size_t r = 0; r < rows; ++r )
    {
      on_A[r] = std::all_of( t.begin(), t.end(), [&]( value_t v ) { return in_subset[v]; } );
      next_tuple( t, X->size() );
    }
  }
  std::vector<operation> projs;
  for ( std::size_t k = 1; k <= m; ++k )
  {
    projs.push_back( projection( X, m, k ) );
  }
  std::vector<std::size_t> free_positions;
  for ( std::size_t r = 0; r < rows; ++r )
  {
    if ( !on_A[r] || all_pairs )
    {
      free_positions.push_back( r );
    }
  }
  std::uint64_t work = 0;
  for_each_operation( X, m, b, [&]( const operation& f ) {
    const auto s = patch_operation( f, subset );
    std::vector<value_t> other = f.table();
    std::vector<value_t> free_values( free_positions.size(), 0 );
    do
    {
      if ( ++work > b.max_tables )
      {
        throw resource_error( "patch identity check exceeded the budget" );
      }
      for ( std::size_t i = 0; i < free_positions.size(); ++i )
      {
        other[free_positions[i]] = free_values[i];
      }
      std::vector<operation> args = projs;
      args.emplace_back( X, m, other );
      const auto lhs = compose( s, args );
      bool ok = true;
      for ( std::size_t r = 0; r < rows && ok; ++r )
      {
        ok = lhs.table()[r] == ( on_A[r] ? other[r] : f.table()[r] );
      }
      rep.expect( ok, [&] { return json{ { "f", f.table() }, { "f_prime", other } }; } );
    } while ( next_tuple( free_values, X->size() ) );
  } );
  rep.details["carrier_size"] = X->size();
  rep.details["subset"] = subset;
  rep.details["arity"] = m;
  rep.details["all_pairs"] = all_pairs;
  return rep;
}

// ---------------------------------------------------------------------------
// Cayley embedding of subgroup lattices.
// ---------------------------------------------------------------------------

/// x -> a + x
inline operation cayley_operation( const finite_group& g, value_t a )
{
  if ( a >= g.order() )
  {
    throw argument_error( "translation element is not in the group" );
  }
  return operation::from_function( g.elements(), 1, [&]( std::span<const value_t> x ) { return g.add( a, x[0] ); } );
}

/// {f_a : a in H}
inline operation_set cayley_clone( const finite_group& g, const element_set& h )
{
  element_set sorted = h;
  std::sort( sorted.begin(), sorted.end() );
  sorted.erase( std::unique( sorted.begin(), sorted.end() ), sorted.end() );
  if ( std::any_of( sorted.begin(), sorted.end(), [&]( value_t x ) { return x >= g.order(); } ) || !g.is_subgroup( sorted ) )
  {
    throw argument_error( "cayley_clone needs a subgroup" );
  }
  operation_set result( g.elements() );
  for ( auto a : sorted )
  {
    result.insert( cayley_operation( g, a ) );
  }
  return result;
}

struct cayley_options
{
  std::size_t subgroup_cap = 64;
  std::size_t sampled_pairs = 512;
  std::uint64_t seed = 1;
};

namespace detail
{

inline json subgroup_names( const finite_group& g, const element_set& h )
{
  json arr = json::array();
  for ( auto x : h )
  {
    arr.push_back( g.name( x ) );
  }
  return arr;
}

} // namespace detail

/*! \brief Checks that H -> {f_a : a in H} embeds the subgroup lattice.

  Meets are intersections of translation sets; joins are unary parts of the
  clone generated by both images (a clone generated by unary operations is
  determined by its unary part). All pairs are checked unless the lattice
  has more than `subgroup_cap` members, in which case seeded pairs are used.
*/
inline check_report verify_cayley_lattice( const subgroup_lattice& L, const cayley_options& opt = {} )
{
  check_report rep;
  rep.name = "cayley-lattice";
  const auto& g = L.group();
  const auto& subs = L.subgroups();
  std::vector<operation_set> images;
  for ( const auto& h : subs )
  {
    images.push_back( cayley_clone( g, h ) );
    rep.expect( images.back().size() == h.size(), [&] {
      return json{ { "check", "translations of a subgroup are not pairwise distinct" }, { "subgroup", detail::subgroup_names( g, h ) } };
    } );
  }
  auto find_image = [&]( const element_set& h ) -> const operation_set& {
    auto it = std::find( subs.begin(), subs.end(), h );
    if ( it == subs.end() )
    {
      throw argument_error( "subgroup lattice is not closed" );
    }
    return images[static_cast<std::size_t>( it - subs.begin() )];
  };

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if ( subs.size() <= opt.subgroup_cap )
  {
    for ( std::size_t i = 0; i < subs.size(); ++i )
    {
      for ( std::size_t j = 0; j < subs.size(); ++j )
      {
        pairs.emplace_back( i, j );
      }
    }
  }
  else
  {
    rep.exhaustive = false;
    std::mt19937_64 rng( opt.seed );
    for ( std::size_t s = 0; s < opt.sampled_pairs; ++s )
    {
      pairs.emplace_back( rng() % subs.size(), rng() % subs.size() );
    }
  }

  for ( const auto& [i, j] : pairs )
  {
    const auto& h = subs[i];
    const auto& k = subs[j];
    const auto meet = subgroup_lattice::meet_sets( h, k );
    const auto join = L.join_sets( h, k );
    rep.expect( images[i].intersect( images[j] ) == find_image( meet ), [&] {
      return json{ { "check", "meet" }, { "H", detail::subgroup_names( g, h ) }, { "K", detail::subgroup_names( g, k ) } };
    } );
    const auto generated = clone_closure( images[i].unite( images[j] ), 1 ).ops;
    rep.expect( generated == find_image( join ), [&] {
      return json{ { "check", "join" }, { "H", detail::subgroup_names( g, h ) }, { "K", detail::subgroup_names( g, k ) } };
    } );
    rep.expect( subgroup_lattice::leq( h, k ) == images[i].subset_of( images[j] ), [&] {
      return json{ { "check", "order" }, { "H", detail::subgroup_names( g, h ) }, { "K", detail::subgroup_names( g, k ) } };
    } );
  }

  // an antichain of three proper nontrivial subgroups with pairwise meet
  // bottom and pairwise join top is an M_3 sublattice
  const auto& bottom = subs.front();
  const auto& top = subs.back();
  bool m3 = false;
  json m3_witness;
  for ( std::size_t a = 1; a + 1 < subs.size() && !m3; ++a )
  {
    for ( std::size_t b = a + 1; b + 1 < subs.size() && !m3; ++b )
    {
      for ( std::size_t c = b + 1; c + 1 < subs.size() && !m3; ++c )
      {
        bool ok = true;
        for ( auto [x, y] : { std::pair{ a, b }, std::pair{ a, c }, std::pair{ b, c } } )
        {
          ok = ok && images[x].intersect( images[y] ) == images.front() &&
               clone_closure( images[x].unite( images[y] ), 1 ).ops == images.back();
        }
        if ( ok )
        {
          m3 = true;
          m3_witness = json::array(
              { detail::subgroup_names( g, subs[a] ), detail::subgroup_names( g, subs[b] ), detail::subgroup_names( g, subs[c] ) } );
        }
      }
    }
  }
  const bool chain = std::all_of( subs.begin(), subs.end(), [&]( const element_set& h ) {
    return std::all_of( subs.begin(), subs.end(), [&]( const element_set& k ) {
      return subgroup_lattice::leq( h, k ) || subgroup_lattice::leq( k, h );
    } );
  } );
  rep.details["group_order"] = g.order();
  rep.details["subgroups"] = subs.size();
  rep.details["pairs_checked"] = pairs.size();
  rep.details["bottom_size"] = bottom.size();
  rep.details["top_size"] = top.size();
  rep.details["m3_sublattice"] = m3;
  if ( m3 )
  {
    rep.details["m3_atoms"] = m3_witness;
  }
  rep.details["is_chain"] = chain;
  return rep;
}

/// Checks sigma(C_H ∩ C_K) = sigma(C_H) ∩ sigma(C_K) on each sampled domain.
inline check_report verify_monp_meet( const finite_group& g, const element_set& h, const element_set& k,
                                      const std::vector<element_set>& domains )
{
  check_report rep;
  rep.name = "monp-meet";
  const auto ch = cayley_clone( g, h );
  const auto ck = cayley_clone( g, k );
  const auto meet = ch.intersect( ck );
  std::size_t used = 0;
  for ( const auto& dom : domains )
  {
    if ( dom.empty() )
    {
      rep.warnings.push_back( "skipped an empty domain" );
      continue;
    }
    ++used;
    std::vector<tuple_t> tuples;
    for ( auto x : dom )
    {
      if ( x >= g.order() )
      {
        throw argument_error( "domain element is not in the group" );
      }
      tuples.push_back( { x } );
    }
    auto image = [&]( const operation_set& s ) {
      partial_clone p( g.elements() );
      for ( const auto& f : s.all() )
      {
        p.insert( restrict( f, tuples ) );
      }
      return p;
    };
    const auto left = image( meet );
    const auto ph = image( ch );
    const auto pk = image( ck );
    partial_clone right( g.elements() );
    for ( const auto& p : ph.members() )
    {
      if ( pk.contains( p ) )
      {
        right.insert( p );
      }
    }
    rep.expect( left == right, [&] {
      return json{ { "H", detail::subgroup_names( g, h ) },
                   { "K", detail::subgroup_names( g, k ) },
                   { "domain", detail::subgroup_names( g, dom ) },
                   { "left_size", left.size() },
                   { "right_size", right.size() } };
    } );
  }
  rep.details["H"] = detail::subgroup_names( g, h );
  rep.details["K"] = detail::subgroup_names( g, k );
  rep.details["domains_used"] = used;
  return rep;
}

// ---------------------------------------------------------------------------
// Two-valued unary indicators and the meet antichain.
// ---------------------------------------------------------------------------

/// f_A(x) = a for x in A, b otherwise.
inline operation unary_indicator( const carrier_ptr& X, const std::vector<value_t>& subset, value_t a, value_t b )
{
  if ( a == b )
  {
    throw argument_error( "indicator values must differ" );
  }
  if ( a >= X->size() || b >= X->size() )
  {
    throw argument_error( "indicator values lie outside the carrier" );
  }
  if ( subset.empty() )
  {
    throw argument_error( "indicator set must be non-empty" );
  }
  std::vector<bool> in( X->size(), false );
  for ( auto v : subset )
  {
    if ( v >= X->size() || v == a || v == b )
    {
      throw argument_error( "indicator set must avoid both values and lie in the carrier" );
    }
    in[v] = true;
  }
  return operation::from_function( X, 1, [&]( std::span<const value_t> x ) { return in[x[0]] ? a : b; } );
}

namespace detail
{

/// Unary reductions of the members of an essentially-unary fragment; the
/// second component counts members depending on two or more coordinates.
inline std::pair<operation_set, std::size_t> unary_reductions( const operation_set& s )
{
  operation_set reduced( s.domain() );
  std::size_t wide = 0;
  for ( const auto& f : s.all() )
  {
    if ( auto u = essentially_unary_part( f ) )
    {
      reduced.insert( *u );
    }
    else
    {
      ++wide;
    }
  }
  return { reduced, wide };
}

} // namespace detail

/*! \brief Checks that the clones generated by f_{B_i} form an antichain whose
  pairwise meets are the clone generated by the constant b.

  Members are compared up to fictitious variables: each is reduced to the
  unary operation of its single essential coordinate (constants to unary
  constants).
*/
inline check_report verify_meet_antichain( const carrier_ptr& X, const std::vector<std::vector<value_t>>& subsets,
                                           value_t a, value_t b, std::size_t arity_bound = 2, const budget& lim = {} )
{
  check_report rep;
  rep.name = "meet-antichain";
  const auto id = projection( X, 1, 1 );
  const auto cb = constant( X, 1, b );
  const auto bottom = clone_closure( operation_set( X, { cb } ), arity_bound, std::nullopt, lim ).ops;

  std::vector<operation> indicators;
  std::vector<operation_set> fragments;
  for ( std::size_t i = 0; i < subsets.size(); ++i )
  {
    for ( std::size_t j = 0; j < i; ++j )
    {
      if ( std::set<value_t>( subsets[i].begin(), subsets[i].end() ) == std::set<value_t>( subsets[j].begin(), subsets[j].end() ) )
      {
        throw argument_error( "antichain subsets must be distinct" );
      }
    }
    indicators.push_back( unary_indicator( X, subsets[i], a, b ) );
    const auto& f = indicators.back();
    rep.expect( compose( f, { f } ) == cb, [&] { return json{ { "check", "f_B(f_B(x)) != c_b" }, { "index", i } }; } );
    auto closed = clone_closure( operation_set( X, { f } ), arity_bound, std::nullopt, lim );
    rep.expect( closed.saturated, "closure did not saturate" );
    const auto [reduced, wide] = detail::unary_reductions( closed.ops );
    rep.expect( wide == 0, [&] { return json{ { "check", "member with two essential coordinates" }, { "index", i } }; } );
    rep.expect( reduced == operation_set( X, { id, f, cb } ), [&] {
      return json{ { "check", "unary part is not {id, f_B, c_b}" }, { "index", i }, { "size", reduced.size() } };
    } );
    fragments.push_back( std::move( closed.ops ) );
  }
  for ( std::size_t i = 0; i < fragments.size(); ++i )
  {
    for ( std::size_t j = i + 1; j < fragments.size(); ++j )
    {
      rep.expect( !( indicators[i] == indicators[j] ), [&] {
        return json{ { "check", "distinct subsets gave equal indicators" }, { "i", i }, { "j", j } };
      } );
      const auto meet = fragments[i].intersect( fragments[j] );
      const auto [reduced, wide] = detail::unary_reductions( meet );
      rep.expect( wide == 0 && reduced == operation_set( X, { id, cb } ), [&] {
        return json{ { "check", "meet unary part is not {id, c_b}" }, { "i", i }, { "j", j } };
      } );
      rep.expect( meet == bottom, [&] {
        return json{ { "check", "meet differs from the clone of c_b" }, { "i", i }, { "j", j } };
      } );
    }
  }
  rep.details["carrier_size"] = X->size();
  rep.details["a"] = a;
  rep.details["b"] = b;
  rep.details["subsets"] = subsets;
  rep.details["arity_bound"] = arity_bound;
  return rep;
}

/// Finite-carrier consistency of the join side: each Pol({A_i}) is a proper
/// subset of all operations, and distinct A_i give distinct fragments.
inline check_report verify_join_containments( const carrier_ptr& X, const std::vector<std::vector<value_t>>& subsets,
                                              std::size_t arity_bound = 1, const budget& lim = {} )
{
  check_report rep;
  rep.name = "join-containments";
  std::vector<operation_set> pols;
  for ( const auto& s : subsets )
  {
    if ( s.empty() || s.size() >= X->size() )
    {
      throw argument_error( "subsets must be non-empty and proper" );
    }
    std::vector<tuple_t> ts;
    for ( auto v : s )
    {
      ts.push_back( { v } );
    }
    pols.push_back( pol( relation_set( X, { relation( X, 1, ts ) } ), arity_bound, lim ) );
    for ( std::size_t n = 1; n <= arity_bound; ++n )
    {
      const auto all_count = checked_power( X->size(), table_size( *X, n ) );
      rep.expect( all_count && pols.back().size( n ) < *all_count, [&] {
        return json{ { "check", "Pol({A}) is not proper" }, { "subset", s }, { "arity", n } };
      } );
    }
  }
  for ( std::size_t i = 0; i < pols.size(); ++i )
  {
    for ( std::size_t j = i + 1; j < pols.size(); ++j )
    {
      rep.expect( !( pols[i] == pols[j] ), [&] { return json{ { "check", "equal Pol fragments" }, { "i", i }, { "j", j } }; } );
    }
  }
  rep.details["subsets"] = subsets;
  rep.details["arity_bound"] = arity_bound;
  return rep;
}

} // namespace clonelab
