#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "carrier.hpp"
#include "errors.hpp"

namespace clonelab
{

/// Subset of group elements, as sorted indices.
using element_set = std::vector<value_t>;

/*! \brief A finite group given by its addition table.

  Written additively even when not abelian. The constructor checks the group
  axioms and derives the zero and the negation table.
*/
class finite_group
{
public:
  finite_group( std::vector<std::string> names, std::vector<std::vector<value_t>> add )
      : names_( std::move( names ) ), add_( std::move( add ) )
  {
    const std::size_t n = names_.size();
    if ( n == 0 )
    {
      throw argument_error( "group must have at least one element" );
    }
    if ( std::set<std::string>( names_.begin(), names_.end() ).size() != n )
    {
      throw argument_error( "group element names must be distinct" );
    }
    if ( add_.size() != n )
    {
      throw argument_error( "addition table must have one row per element" );
    }
    for ( const auto& row : add_ )
    {
      if ( row.size() != n || std::any_of( row.begin(), row.end(), [n]( value_t v ) { return v >= n; } ) )
      {
        throw argument_error( "addition table rows must list one element per column" );
      }
    }
    std::optional<value_t> zero;
    for ( value_t e = 0; e < n && !zero; ++e )
    {
      bool neutral = true;
      for ( value_t x = 0; x < n && neutral; ++x )
      {
        neutral = add_[e][x] == x && add_[x][e] == x;
      }
      if ( neutral )
      {
        zero = e;
      }
    }
    if ( !zero )
    {
      throw argument_error( "addition table has no neutral element" );
    }
    zero_ = *zero;
    neg_.assign( n, 0 );
    for ( value_t x = 0; x < n; ++x )
    {
      bool found = false;
      for ( value_t y = 0; y < n && !found; ++y )
      {
        if ( add_[x][y] == zero_ && add_[y][x] == zero_ )
        {
          neg_[x] = y;
          found = true;
        }
      }
      if ( !found )
      {
        throw argument_error( "element " + names_[x] + " has no inverse" );
      }
    }
    for ( value_t x = 0; x < n; ++x )
    {
      for ( value_t y = 0; y < n; ++y )
      {
        for ( value_t z = 0; z < n; ++z )
        {
          if ( add_[add_[x][y]][z] != add_[x][add_[y][z]] )
          {
            throw argument_error( "addition is not associative at (" + names_[x] + ", " + names_[y] + ", " + names_[z] +
                                  ")" );
          }
        }
      }
    }
    carrier_ = carrier::plain( n );
  }

  std::size_t order() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name( value_t x ) const { return names_.at( x ); }
  value_t zero() const noexcept { return zero_; }
  value_t add( value_t x, value_t y ) const { return add_.at( x ).at( y ); }
  value_t neg( value_t x ) const { return neg_.at( x ); }
  const std::vector<std::vector<value_t>>& table() const noexcept { return add_; }

  /// The group's element set as a plain carrier.
  const carrier_ptr& elements() const noexcept { return carrier_; }

  value_t index_of( const std::string& name ) const
  {
    auto it = std::find( names_.begin(), names_.end(), name );
    if ( it == names_.end() )
    {
      throw argument_error( "no group element named " + name );
    }
    return static_cast<value_t>( it - names_.begin() );
  }

  bool is_subgroup( const element_set& h ) const
  {
    if ( std::find( h.begin(), h.end(), zero_ ) == h.end() )
    {
      return false;
    }
    for ( auto x : h )
    {
      if ( !std::binary_search( h.begin(), h.end(), neg( x ) ) )
      {
        return false;
      }
      for ( auto y : h )
      {
        if ( !std::binary_search( h.begin(), h.end(), add( x, y ) ) )
        {
          return false;
        }
      }
    }
    return true;
  }

  /// Smallest subgroup containing `gens`.
  element_set generate( const element_set& gens ) const
  {
    std::set<value_t> h{ zero_ };
    std::vector<value_t> frontier{ zero_ };
    while ( !frontier.empty() )
    {
      std::vector<value_t> next;
      for ( auto x : frontier )
      {
        for ( auto g : gens )
        {
          for ( auto y : { add( x, g ), add( x, neg( g ) ) } )
          {
            if ( h.insert( y ).second )
            {
              next.push_back( y );
            }
          }
        }
      }
      frontier = std::move( next );
    }
    return element_set( h.begin(), h.end() );
  }

private:
  std::vector<std::string> names_;
  std::vector<std::vector<value_t>> add_;
  std::vector<value_t> neg_;
  value_t zero_ = 0;
  carrier_ptr carrier_;
};

inline finite_group cyclic_group( std::size_t n )
{
  std::vector<std::string> names;
  std::vector<std::vector<value_t>> add( n, std::vector<value_t>( n ) );
  for ( std::size_t i = 0; i < n; ++i )
  {
    names.push_back( std::to_string( i ) );
    for ( std::size_t j = 0; j < n; ++j )
    {
      add[i][j] = static_cast<value_t>( ( i + j ) % n );
    }
  }
  return finite_group( std::move( names ), std::move( add ) );
}

inline finite_group direct_product( const finite_group& g, const finite_group& h )
{
  const std::size_t n = g.order() * h.order();
  std::vector<std::string> names;
  std::vector<std::vector<value_t>> add( n, std::vector<value_t>( n ) );
  for ( std::size_t i = 0; i < n; ++i )
  {
    names.push_back( "(" + g.name( static_cast<value_t>( i / h.order() ) ) + "," +
                     h.name( static_cast<value_t>( i % h.order() ) ) + ")" );
    for ( std::size_t j = 0; j < n; ++j )
    {
      const auto a = g.add( static_cast<value_t>( i / h.order() ), static_cast<value_t>( j / h.order() ) );
      const auto b = h.add( static_cast<value_t>( i % h.order() ), static_cast<value_t>( j % h.order() ) );
      add[i][j] = static_cast<value_t>( a * h.order() + b );
    }
  }
  return finite_group( std::move( names ), std::move( add ) );
}

/// Symmetric group on n points; element names are one-line permutations.
inline finite_group symmetric_group( std::size_t n )
{
  std::vector<std::vector<value_t>> perms;
  std::vector<value_t> p( n );
  std::iota( p.begin(), p.end(), 0 );
  do
  {
    perms.push_back( p );
  } while ( std::next_permutation( p.begin(), p.end() ) );
  std::vector<std::string> names;
  for ( const auto& q : perms )
  {
    std::string s;
    for ( auto v : q )
    {
      s += std::to_string( v );
    }
    names.push_back( s );
  }
  const std::size_t m = perms.size();
  std::vector<std::vector<value_t>> add( m, std::vector<value_t>( m ) );
  for ( std::size_t i = 0; i < m; ++i )
  {
    for ( std::size_t j = 0; j < m; ++j )
    {
      // (x + y)(k) = x(y(k))
      std::vector<value_t> c( n );
      for ( std::size_t k = 0; k < n; ++k )
      {
        c[k] = perms[i][perms[j][k]];
      }
      add[i][j] = static_cast<value_t>( std::find( perms.begin(), perms.end(), c ) - perms.begin() );
    }
  }
  return finite_group( std::move( names ), std::move( add ) );
}

/// All subgroups of a finite group, ordered by size then elements.
class subgroup_lattice
{
public:
  explicit subgroup_lattice( const finite_group& g ) : group_( g )
  {
    std::set<element_set> found{ g.generate( {} ) };
    std::vector<element_set> cyclic;
    for ( value_t x = 0; x < g.order(); ++x )
    {
      cyclic.push_back( g.generate( { x } ) );
    }
    std::vector<element_set> frontier( found.begin(), found.end() );
    // every subgroup is a join of cyclic subgroups
    while ( !frontier.empty() )
    {
      std::vector<element_set> next;
      for ( const auto& h : frontier )
      {
        for ( const auto& c : cyclic )
        {
          auto j = join_sets( h, c );
          if ( found.insert( j ).second )
          {
            next.push_back( std::move( j ) );
          }
        }
      }
      frontier = std::move( next );
    }
    subgroups_.assign( found.begin(), found.end() );
    std::stable_sort( subgroups_.begin(), subgroups_.end(),
                      []( const element_set& a, const element_set& b ) { return a.size() < b.size(); } );
  }

  const finite_group& group() const noexcept { return group_; }
  const std::vector<element_set>& subgroups() const noexcept { return subgroups_; }
  std::size_t size() const noexcept { return subgroups_.size(); }

  static element_set meet_sets( const element_set& h, const element_set& k )
  {
    element_set result;
    std::set_intersection( h.begin(), h.end(), k.begin(), k.end(), std::back_inserter( result ) );
    return result;
  }

  element_set join_sets( const element_set& h, const element_set& k ) const
  {
    element_set gens;
    std::set_union( h.begin(), h.end(), k.begin(), k.end(), std::back_inserter( gens ) );
    return group_.generate( gens );
  }

  static bool leq( const element_set& h, const element_set& k )
  {
    return std::includes( k.begin(), k.end(), h.begin(), h.end() );
  }

private:
  finite_group group_;
  std::vector<element_set> subgroups_;
};

} // namespace clonelab
