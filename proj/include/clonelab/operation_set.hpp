#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "operation.hpp"
#include "relation.hpp"

namespace clonelab
{

/*! \brief Operations on one carrier, grouped by arity.

  Insertion order is kept inside each arity; duplicates (equal tables) are
  ignored. Comparison ignores insertion order.
*/
class operation_set
{
public:
  explicit operation_set( carrier_ptr c ) : carrier_( std::move( c ) ) {}

  operation_set( carrier_ptr c, std::initializer_list<operation> ops ) : carrier_( std::move( c ) )
  {
    for ( const auto& f : ops )
    {
      insert( f );
    }
  }

  const carrier_ptr& domain() const noexcept { return carrier_; }

  /// Returns true when f was not already present.
  bool insert( const operation& f )
  {
    if ( !same_carrier( f.domain(), carrier_ ) )
    {
      throw argument_error( "operation set: carrier mismatch" );
    }
    auto& idx = index_[f.arity()];
    if ( !idx.insert( f.table() ).second )
    {
      return false;
    }
    by_arity_[f.arity()].push_back( f );
    return true;
  }

  bool contains( const operation& f ) const
  {
    auto it = index_.find( f.arity() );
    return it != index_.end() && same_carrier( f.domain(), carrier_ ) && it->second.count( f.table() ) != 0;
  }

  const std::vector<operation>& of_arity( std::size_t n ) const
  {
    static const std::vector<operation> none;
    auto it = by_arity_.find( n );
    return it == by_arity_.end() ? none : it->second;
  }

  std::vector<std::size_t> arities() const
  {
    std::vector<std::size_t> result;
    for ( const auto& [n, ops] : by_arity_ )
    {
      if ( !ops.empty() )
      {
        result.push_back( n );
      }
    }
    return result;
  }

  std::size_t max_arity() const
  {
    auto a = arities();
    return a.empty() ? 0 : a.back();
  }

  /// All members, by ascending arity, then insertion order.
  std::vector<operation> all() const
  {
    std::vector<operation> result;
    for ( const auto& [n, ops] : by_arity_ )
    {
      result.insert( result.end(), ops.begin(), ops.end() );
    }
    return result;
  }

  std::size_t size() const
  {
    std::size_t n = 0;
    for ( const auto& [a, ops] : by_arity_ )
    {
      n += ops.size();
    }
    return n;
  }

  std::size_t size( std::size_t arity ) const { return of_arity( arity ).size(); }
  bool empty() const { return size() == 0; }

  bool subset_of( const operation_set& other ) const
  {
    for ( const auto& [n, ops] : by_arity_ )
    {
      for ( const auto& f : ops )
      {
        if ( !other.contains( f ) )
        {
          return false;
        }
      }
    }
    return true;
  }

  bool operator==( const operation_set& other ) const
  {
    return same_carrier( carrier_, other.carrier_ ) && size() == other.size() && subset_of( other );
  }

  /// Members of arity at most n.
  operation_set up_to_arity( std::size_t n ) const
  {
    operation_set result( carrier_ );
    for ( const auto& [a, ops] : by_arity_ )
    {
      if ( a <= n )
      {
        for ( const auto& f : ops )
        {
          result.insert( f );
        }
      }
    }
    return result;
  }

  /// Members of *this that are not in other.
  operation_set minus( const operation_set& other ) const
  {
    operation_set result( carrier_ );
    for ( const auto& f : all() )
    {
      if ( !other.contains( f ) )
      {
        result.insert( f );
      }
    }
    return result;
  }

  operation_set intersect( const operation_set& other ) const
  {
    operation_set result( carrier_ );
    for ( const auto& f : all() )
    {
      if ( other.contains( f ) )
      {
        result.insert( f );
      }
    }
    return result;
  }

  operation_set unite( const operation_set& other ) const
  {
    operation_set result = *this;
    for ( const auto& f : other.all() )
    {
      result.insert( f );
    }
    return result;
  }

  void add_projections( std::size_t arity_bound )
  {
    for ( std::size_t n = 1; n <= arity_bound; ++n )
    {
      for ( std::size_t k = 1; k <= n; ++k )
      {
        insert( projection( carrier_, n, k ) );
      }
    }
  }

private:
  carrier_ptr carrier_;
  std::map<std::size_t, std::vector<operation>> by_arity_;
  std::map<std::size_t, std::unordered_set<std::vector<value_t>, table_hash>> index_;
};

inline operation_set projections_up_to( const carrier_ptr& c, std::size_t arity_bound )
{
  operation_set result( c );
  result.add_projections( arity_bound );
  return result;
}

/// Relations on one carrier, grouped by arity.
class relation_set
{
public:
  explicit relation_set( carrier_ptr c ) : carrier_( std::move( c ) ) {}

  relation_set( carrier_ptr c, std::initializer_list<relation> rels ) : carrier_( std::move( c ) )
  {
    for ( const auto& r : rels )
    {
      insert( r );
    }
  }

  const carrier_ptr& domain() const noexcept { return carrier_; }

  bool insert( const relation& r )
  {
    if ( !same_carrier( r.domain(), carrier_ ) )
    {
      throw argument_error( "relation set: carrier mismatch" );
    }
    auto& ranks = index_[r.arity()];
    if ( !ranks.insert( r.ranks() ).second )
    {
      return false;
    }
    by_arity_[r.arity()].push_back( r );
    return true;
  }

  bool contains( const relation& r ) const
  {
    auto it = index_.find( r.arity() );
    return it != index_.end() && it->second.count( r.ranks() ) != 0;
  }

  const std::vector<relation>& of_arity( std::size_t m ) const
  {
    static const std::vector<relation> none;
    auto it = by_arity_.find( m );
    return it == by_arity_.end() ? none : it->second;
  }

  std::vector<relation> all() const
  {
    std::vector<relation> result;
    for ( const auto& [m, rels] : by_arity_ )
    {
      result.insert( result.end(), rels.begin(), rels.end() );
    }
    return result;
  }

  std::size_t size() const
  {
    std::size_t n = 0;
    for ( const auto& [m, rels] : by_arity_ )
    {
      n += rels.size();
    }
    return n;
  }

  std::size_t size( std::size_t arity ) const { return of_arity( arity ).size(); }

  bool subset_of( const relation_set& other ) const
  {
    for ( const auto& r : all() )
    {
      if ( !other.contains( r ) )
      {
        return false;
      }
    }
    return true;
  }

  bool operator==( const relation_set& other ) const
  {
    return same_carrier( carrier_, other.carrier_ ) && size() == other.size() && subset_of( other );
  }

private:
  struct ranks_hash
  {
    std::size_t operator()( const std::vector<std::uint64_t>& v ) const noexcept
    {
      std::uint64_t h = 1469598103934665603ull;
      for ( auto x : v )
      {
        h ^= x + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>( h );
    }
  };

  carrier_ptr carrier_;
  std::map<std::size_t, std::vector<relation>> by_arity_;
  std::map<std::size_t, std::unordered_set<std::vector<std::uint64_t>, ranks_hash>> index_;
};

} // namespace clonelab
