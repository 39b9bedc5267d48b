#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "operation.hpp"
#include "operation_set.hpp"
#include "relation.hpp"

namespace clonelab
{

/// All operations of arity 1..arity_bound preserving every relation in rs.
inline operation_set pol( const relation_set& rs, std::size_t arity_bound, const budget& b = {} )
{
  // small relations first: they reject most candidates quickly
  auto rels = rs.all();
  std::stable_sort( rels.begin(), rels.end(),
                    []( const relation& x, const relation& y ) { return x.size() < y.size(); } );
  operation_set result( rs.domain() );
  for ( std::size_t n = 1; n <= arity_bound; ++n )
  {
    for_each_operation( rs.domain(), n, b, [&]( const operation& f ) {
      for ( const auto& rho : rels )
      {
        if ( !preserves( f, rho ) )
        {
          return;
        }
      }
      result.insert( f );
    } );
  }
  return result;
}

namespace detail
{

/// Componentwise action of one operation on the tuples of carrier^m, used to
/// test closure of candidate relations given as bitmasks over ranks.
class componentwise_action
{
public:
  componentwise_action( const operation& f, std::size_t m ) : f_( f ), m_( m )
  {
    base_ = f.domain()->size();
    rows_ = table_size( *f.domain(), m );
    coords_.resize( rows_ * m_ );
    for ( std::size_t r = 0; r < rows_; ++r )
    {
      auto t = unrank_tuple( r, m_, base_ );
      std::copy( t.begin(), t.end(), coords_.begin() + static_cast<std::ptrdiff_t>( r * m_ ) );
    }
  }

  std::uint64_t image( std::span<const std::size_t> picks ) const
  {
    std::uint64_t result = 0;
    for ( std::size_t j = 0; j < m_; ++j )
    {
      std::uint64_t idx = 0;
      for ( auto p : picks )
      {
        idx = idx * base_ + coords_[p * m_ + j];
      }
      result = result * base_ + f_.table()[idx];
    }
    return result;
  }

  /// True iff the set of ranks in `mask` is closed under the action.
  bool closed( std::uint64_t mask, const std::vector<std::size_t>& members ) const
  {
    const std::size_t n = f_.arity();
    if ( members.empty() )
    {
      return true;
    }
    std::vector<std::size_t> pos( n, 0 );
    std::vector<std::size_t> picks( n );
    while ( true )
    {
      for ( std::size_t i = 0; i < n; ++i )
      {
        picks[i] = members[pos[i]];
      }
      if ( !( ( mask >> image( picks ) ) & 1u ) )
      {
        return false;
      }
      std::size_t i = n;
      while ( i-- > 0 )
      {
        if ( ++pos[i] < members.size() )
        {
          break;
        }
        pos[i] = 0;
      }
      if ( i == static_cast<std::size_t>( -1 ) )
      {
        return true;
      }
    }
  }

private:
  const operation& f_;
  std::size_t m_;
  std::size_t base_ = 0;
  std::size_t rows_ = 0;
  std::vector<value_t> coords_;
};

} // namespace detail

/// All relations of arity 1..arity_bound invariant under every operation in fs.
inline relation_set inv( const operation_set& fs, std::size_t arity_bound, const budget& b = {} )
{
  relation_set result( fs.domain() );
  const auto ops = fs.all();
  for ( std::size_t m = 1; m <= arity_bound; ++m )
  {
    const auto rows = checked_power( fs.domain()->size(), m, 63 );
    if ( !rows || *rows > 62 || ( std::uint64_t{ 1 } << *rows ) > b.max_tables )
    {
      throw resource_error( "enumerating all relations of arity " + std::to_string( m ) + " on " +
                            std::to_string( fs.domain()->size() ) + " elements exceeds the budget of " +
                            std::to_string( b.max_tables ) + " tables" );
    }
    std::vector<detail::componentwise_action> actions;
    actions.reserve( ops.size() );
    for ( const auto& f : ops )
    {
      actions.emplace_back( f, m );
    }
    const std::uint64_t subsets = std::uint64_t{ 1 } << *rows;
    std::vector<std::size_t> members;
    std::vector<std::uint64_t> ranks;
    for ( std::uint64_t mask = 0; mask < subsets; ++mask )
    {
      members.clear();
      for ( std::size_t r = 0; r < *rows; ++r )
      {
        if ( ( mask >> r ) & 1u )
        {
          members.push_back( r );
        }
      }
      bool invariant = true;
      for ( const auto& act : actions )
      {
        if ( !act.closed( mask, members ) )
        {
          invariant = false;
          break;
        }
      }
      if ( invariant )
      {
        ranks.assign( members.begin(), members.end() );
        result.insert( relation::from_ranks( fs.domain(), m, ranks ) );
      }
    }
  }
  return result;
}

struct closure_result
{
  operation_set ops;
  bool saturated = false;
  std::size_t rounds = 0;
  std::uint64_t compositions = 0;
};

/*! \brief Clone generated by `gens`, restricted to arities 1..arity_bound.

  Starts from the projections and repeatedly applies every generator to
  tuples of current members of equal arity. A term in m variables only has
  subterms in the same m variables, so each m-ary fragment is exact once a
  round adds nothing (saturation). `depth` caps the number of rounds; when
  it is reached first, the result is a lower bound and `saturated` is false.

  Throws partial_result_error<closure_result> when the composition count
  would exceed the budget.
*/
inline closure_result clone_closure( const operation_set& gens, std::size_t arity_bound,
                                     std::optional<std::size_t> depth = std::nullopt, const budget& b = {} )
{
  closure_result res{ projections_up_to( gens.domain(), arity_bound ), false, 0, 0 };
  const auto outer = gens.all();
  // per arity: members before `start` were already combined with each other
  std::vector<std::size_t> start( arity_bound + 1, 0 );
  while ( !depth || res.rounds < *depth )
  {
    bool grew = false;
    for ( std::size_t m = 1; m <= arity_bound; ++m )
    {
      const std::size_t end = res.ops.size( m );
      std::vector<operation> fresh;
      const auto& members = res.ops.of_arity( m );
      for ( const auto& f : outer )
      {
        const std::size_t n = f.arity();
        std::vector<std::size_t> pick( n, 0 );
        std::vector<operation> inner;
        inner.reserve( n );
        while ( true )
        {
          const bool has_new = std::any_of( pick.begin(), pick.end(), [&]( std::size_t p ) { return p >= start[m]; } );
          if ( has_new )
          {
            if ( ++res.compositions > b.max_tables )
            {
              throw partial_result_error<closure_result>(
                  "clone closure exceeded the budget of " + std::to_string( b.max_tables ) + " compositions at arity " +
                      std::to_string( m ),
                  res );
            }
            inner.clear();
            for ( auto p : pick )
            {
              inner.push_back( members[p] );
            }
            auto h = compose( f, inner );
            if ( !res.ops.contains( h ) )
            {
              fresh.push_back( std::move( h ) );
            }
          }
          std::size_t i = n;
          while ( i-- > 0 )
          {
            if ( ++pick[i] < end )
            {
              break;
            }
            pick[i] = 0;
          }
          if ( i == static_cast<std::size_t>( -1 ) )
          {
            break;
          }
        }
      }
      start[m] = end;
      for ( auto& h : fresh )
      {
        grew = res.ops.insert( h ) || grew;
      }
    }
    ++res.rounds;
    if ( !grew )
    {
      res.saturated = true;
      break;
    }
  }
  return res;
}

/*! \brief Interpolation test for local-closure membership.

  True iff for every listed finite set of argument tuples there is an
  operation accepted by `member` that agrees with g there. On a finite
  carrier, listing carrier^n itself makes this exact membership.
*/
inline bool interpolation_member( const operation& g, const std::function<bool( const operation& )>& member,
                                  const std::vector<std::vector<tuple_t>>& finite_subsets, const budget& b = {} )
{
  const auto& c = g.domain();
  const std::size_t base = c->size();
  for ( const auto& subset : finite_subsets )
  {
    std::vector<bool> fixed( g.table().size(), false );
    for ( const auto& t : subset )
    {
      if ( t.size() != g.arity() || std::any_of( t.begin(), t.end(), [&]( value_t v ) { return v >= base; } ) )
      {
        throw argument_error( "interpolation set contains a tuple outside carrier^" + std::to_string( g.arity() ) );
      }
      fixed[rank_tuple( t, base )] = true;
    }
    std::vector<std::size_t> free_positions;
    for ( std::size_t r = 0; r < fixed.size(); ++r )
    {
      if ( !fixed[r] )
      {
        free_positions.push_back( r );
      }
    }
    const auto candidates = checked_power( base, free_positions.size(), b.max_tables );
    if ( !candidates || *candidates > b.max_tables )
    {
      throw resource_error( "interpolation over " + std::to_string( free_positions.size() ) +
                            " free positions exceeds the budget" );
    }
    std::vector<value_t> table = g.table();
    std::vector<value_t> free_values( free_positions.size(), 0 );
    bool found = false;
    do
    {
      for ( std::size_t i = 0; i < free_positions.size(); ++i )
      {
        table[free_positions[i]] = free_values[i];
      }
      found = member( operation( c, g.arity(), table ) );
    } while ( !found && next_tuple( free_values, base ) );
    if ( !found )
    {
      return false;
    }
  }
  return true;
}

enum class fixed_point_status
{
  equal,
  unequal,
  bound_too_small
};

inline const char* to_string( fixed_point_status s )
{
  switch ( s )
  {
  case fixed_point_status::equal:
    return "equal";
  case fixed_point_status::unequal:
    return "unequal";
  case fixed_point_status::bound_too_small:
    return "bound too small";
  }
  return "?";
}

struct fixed_point_report
{
  fixed_point_status status = fixed_point_status::unequal;
  std::size_t arity_bound = 0;
  std::size_t relation_arity_bound = 0;
  std::size_t closure_rounds = 0;
  std::size_t invariant_relations = 0;
  operation_set closure;
  operation_set pol_inv;
  operation_set only_in_closure;
  operation_set only_in_pol_inv;
};

/// Compares the generated clone fragment with Pol Inv of the generators.
inline fixed_point_report verify_pol_inv_fixed_point( const operation_set& gens, std::size_t arity_bound,
                                                      std::optional<std::size_t> relation_arity_bound = std::nullopt,
                                                      const budget& b = {} )
{
  const auto& c = gens.domain();
  const auto exact_bound = checked_power( c->size(), arity_bound, 62 );
  if ( !exact_bound )
  {
    throw resource_error( "relation arity needed for exactness overflows" );
  }
  const std::size_t rel_bound = relation_arity_bound.value_or( static_cast<std::size_t>( *exact_bound ) );

  auto closed = clone_closure( gens, arity_bound, std::nullopt, b );
  const auto invariants = inv( gens, rel_bound, b );
  auto polinv = pol( invariants, arity_bound, b );

  fixed_point_report rep{ fixed_point_status::unequal,
                          arity_bound,
                          rel_bound,
                          closed.rounds,
                          invariants.size(),
                          closed.ops,
                          polinv,
                          closed.ops.minus( polinv ),
                          polinv.minus( closed.ops ) };
  if ( rep.only_in_closure.empty() && rep.only_in_pol_inv.empty() )
  {
    rep.status = fixed_point_status::equal;
  }
  else if ( rel_bound < *exact_bound )
  {
    rep.status = fixed_point_status::bound_too_small;
  }
  return rep;
}

} // namespace clonelab
