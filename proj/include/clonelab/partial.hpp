#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "operation.hpp"
#include "operation_set.hpp"

namespace clonelab
{

/*! \brief A finitary operation defined on a finite set of argument tuples.

  Stored densely over carrier^arity; positions outside the domain hold
  `undefined`. Equality is graph equality.
*/
class partial_operation
{
public:
  static constexpr value_t undefined = std::numeric_limits<value_t>::max();

  partial_operation( carrier_ptr c, std::size_t arity ) : carrier_( std::move( c ) ), arity_( arity )
  {
    if ( arity_ == 0 )
    {
      throw argument_error( "partial operation arity must be positive" );
    }
    graph_.assign( table_size( *carrier_, arity_ ), undefined );
  }

  partial_operation( carrier_ptr c, std::size_t arity, const std::vector<std::pair<tuple_t, value_t>>& entries )
      : partial_operation( std::move( c ), arity )
  {
    for ( const auto& [t, v] : entries )
    {
      const auto r = checked_rank( t );
      if ( v >= carrier_->size() )
      {
        throw argument_error( "partial operation value lies outside the carrier" );
      }
      if ( graph_[r] != undefined && graph_[r] != v )
      {
        throw argument_error( "partial operation graph assigns two values to one tuple" );
      }
      graph_[r] = v;
    }
  }

  static partial_operation from_dense( carrier_ptr c, std::size_t arity, std::vector<value_t> graph )
  {
    partial_operation p( std::move( c ), arity );
    if ( graph.size() != p.graph_.size() )
    {
      throw argument_error( "dense partial graph has the wrong length" );
    }
    p.graph_ = std::move( graph );
    return p;
  }

  std::size_t arity() const noexcept { return arity_; }
  const carrier_ptr& domain_carrier() const noexcept { return carrier_; }
  const std::vector<value_t>& dense() const noexcept { return graph_; }

  bool defined_at( std::uint64_t rank ) const { return graph_.at( rank ) != undefined; }
  value_t at_rank( std::uint64_t rank ) const { return graph_.at( rank ); }

  std::optional<value_t> operator()( std::span<const value_t> t ) const
  {
    const auto v = graph_[checked_rank( t )];
    return v == undefined ? std::nullopt : std::optional<value_t>( v );
  }

  std::size_t domain_size() const
  {
    return static_cast<std::size_t>( std::count_if( graph_.begin(), graph_.end(), []( value_t v ) { return v != undefined; } ) );
  }

  /// Domain tuples in rank order.
  std::vector<tuple_t> domain() const
  {
    std::vector<tuple_t> result;
    for ( std::size_t r = 0; r < graph_.size(); ++r )
    {
      if ( graph_[r] != undefined )
      {
        result.push_back( unrank_tuple( r, arity_, carrier_->size() ) );
      }
    }
    return result;
  }

  std::vector<std::pair<tuple_t, value_t>> entries() const
  {
    std::vector<std::pair<tuple_t, value_t>> result;
    for ( std::size_t r = 0; r < graph_.size(); ++r )
    {
      if ( graph_[r] != undefined )
      {
        result.emplace_back( unrank_tuple( r, arity_, carrier_->size() ), graph_[r] );
      }
    }
    return result;
  }

  /// True iff this graph is contained in the total operation f.
  bool extended_by( const operation& f ) const
  {
    if ( f.arity() != arity_ || !same_carrier( f.domain(), carrier_ ) )
    {
      return false;
    }
    for ( std::size_t r = 0; r < graph_.size(); ++r )
    {
      if ( graph_[r] != undefined && graph_[r] != f.table()[r] )
      {
        return false;
      }
    }
    return true;
  }

  bool subgraph_of( const partial_operation& other ) const
  {
    if ( other.arity_ != arity_ || !same_carrier( other.carrier_, carrier_ ) )
    {
      return false;
    }
    for ( std::size_t r = 0; r < graph_.size(); ++r )
    {
      if ( graph_[r] != undefined && graph_[r] != other.graph_[r] )
      {
        return false;
      }
    }
    return true;
  }

  bool operator==( const partial_operation& other ) const
  {
    return arity_ == other.arity_ && graph_ == other.graph_ && same_carrier( carrier_, other.carrier_ );
  }

private:
  std::size_t checked_rank( std::span<const value_t> t ) const
  {
    if ( t.size() != arity_ )
    {
      throw argument_error( "tuple of length " + std::to_string( t.size() ) + " for a partial operation of arity " +
                            std::to_string( arity_ ) );
    }
    for ( value_t v : t )
    {
      if ( v >= carrier_->size() )
      {
        throw argument_error( "tuple entry lies outside the carrier" );
      }
    }
    return static_cast<std::size_t>( rank_tuple( t, carrier_->size() ) );
  }

  carrier_ptr carrier_;
  std::size_t arity_;
  std::vector<value_t> graph_;
};

/// f restricted to `domain`.
inline partial_operation restrict( const operation& f, const std::vector<tuple_t>& domain )
{
  std::vector<std::pair<tuple_t, value_t>> entries;
  entries.reserve( domain.size() );
  for ( const auto& t : domain )
  {
    if ( t.size() != f.arity() ||
         std::any_of( t.begin(), t.end(), [&]( value_t v ) { return v >= f.domain()->size(); } ) )
    {
      throw argument_error( "restriction domain contains a tuple outside carrier^" + std::to_string( f.arity() ) );
    }
    entries.emplace_back( t, f( t ) );
  }
  return partial_operation( f.domain(), f.arity(), entries );
}

/// Defined exactly where every q_i is defined and the tuple of their values
/// lies in dom p.
inline partial_operation partial_compose( const partial_operation& p, std::span<const partial_operation> qs )
{
  if ( qs.size() != p.arity() )
  {
    throw argument_error( "partial_compose: outer arity " + std::to_string( p.arity() ) +
                          " needs that many inner operations, got " + std::to_string( qs.size() ) );
  }
  const std::size_t m = qs.front().arity();
  for ( const auto& q : qs )
  {
    if ( q.arity() != m || !same_carrier( q.domain_carrier(), p.domain_carrier() ) )
    {
      throw argument_error( "partial_compose: inner operations must share the carrier and one arity" );
    }
  }
  const std::size_t base = p.domain_carrier()->size();
  const std::size_t rows = qs.front().dense().size();
  std::vector<value_t> graph( rows, partial_operation::undefined );
  for ( std::size_t r = 0; r < rows; ++r )
  {
    std::uint64_t idx = 0;
    bool defined = true;
    for ( const auto& q : qs )
    {
      const auto v = q.dense()[r];
      if ( v == partial_operation::undefined )
      {
        defined = false;
        break;
      }
      idx = idx * base + v;
    }
    if ( defined )
    {
      graph[r] = p.dense()[idx];
    }
  }
  return partial_operation::from_dense( p.domain_carrier(), m, std::move( graph ) );
}

inline partial_operation partial_compose( const partial_operation& p, std::initializer_list<partial_operation> qs )
{
  return partial_compose( p, std::span<const partial_operation>( qs.begin(), qs.size() ) );
}

/// A set of partial operations on one carrier, grouped by arity.
class partial_clone
{
public:
  explicit partial_clone( carrier_ptr c ) : carrier_( std::move( c ) ) {}

  const carrier_ptr& domain() const noexcept { return carrier_; }

  bool insert( const partial_operation& p )
  {
    if ( !same_carrier( p.domain_carrier(), carrier_ ) )
    {
      throw argument_error( "partial clone: carrier mismatch" );
    }
    if ( !index_[p.arity()].insert( p.dense() ).second )
    {
      return false;
    }
    members_[p.arity()].push_back( p );
    return true;
  }

  bool contains( const partial_operation& p ) const
  {
    auto it = index_.find( p.arity() );
    return it != index_.end() && it->second.count( p.dense() ) != 0;
  }

  const std::vector<partial_operation>& of_arity( std::size_t n ) const
  {
    static const std::vector<partial_operation> none;
    auto it = members_.find( n );
    return it == members_.end() ? none : it->second;
  }

  std::vector<partial_operation> members() const
  {
    std::vector<partial_operation> result;
    for ( const auto& [n, ps] : members_ )
    {
      result.insert( result.end(), ps.begin(), ps.end() );
    }
    return result;
  }

  std::size_t size() const
  {
    std::size_t n = 0;
    for ( const auto& [a, ps] : members_ )
    {
      n += ps.size();
    }
    return n;
  }

  std::size_t max_arity() const
  {
    std::size_t n = 0;
    for ( const auto& [a, ps] : members_ )
    {
      if ( !ps.empty() )
      {
        n = a;
      }
    }
    return n;
  }

  bool subset_of( const partial_clone& other ) const
  {
    for ( const auto& [n, ps] : members_ )
    {
      for ( const auto& p : ps )
      {
        if ( !other.contains( p ) )
        {
          return false;
        }
      }
    }
    return true;
  }

  /// Compares member sets only.
  bool operator==( const partial_clone& other ) const
  {
    return same_carrier( carrier_, other.carrier_ ) && size() == other.size() && subset_of( other );
  }

  std::optional<std::vector<partial_operation>> generated_by;
  bool saturated = false;
  std::size_t rounds = 0;
  std::uint64_t compositions = 0;

private:
  carrier_ptr carrier_;
  std::map<std::size_t, std::vector<partial_operation>> members_;
  std::map<std::size_t, std::unordered_set<std::vector<value_t>, table_hash>> index_;
};

struct partial_closure_options
{
  /// Largest arity kept; defaults to the largest generator arity (at least 1).
  std::optional<std::size_t> arity_bound;
  /// Projection restrictions are admitted only on domains of at most this size.
  std::optional<std::size_t> domain_size_bound;
  /// Coordinates allowed in projection-restriction domains; defaults to the
  /// coordinates occurring in generator domains.
  std::optional<std::vector<value_t>> domain_values;
  /// Round cap; unset means run to saturation.
  std::optional<std::size_t> rounds;
  budget limits;
};

namespace detail
{

/// Calls visit(subset) for every subset of {0..n-1} of size <= k, by size
/// then lexicographically.
template<typename Visit>
void for_each_small_subset( std::size_t n, std::size_t k, Visit&& visit )
{
  std::vector<std::size_t> pick;
  for ( std::size_t size = 0; size <= std::min( n, k ); ++size )
  {
    pick.resize( size );
    for ( std::size_t i = 0; i < size; ++i )
    {
      pick[i] = i;
    }
    while ( true )
    {
      visit( std::span<const std::size_t>( pick ) );
      std::size_t i = size;
      while ( i-- > 0 )
      {
        if ( pick[i] < n - size + i )
        {
          break;
        }
      }
      if ( i == static_cast<std::size_t>( -1 ) )
      {
        break;
      }
      ++pick[i];
      for ( std::size_t j = i + 1; j < size; ++j )
      {
        pick[j] = pick[j - 1] + 1;
      }
    }
  }
}

inline std::uint64_t count_small_subsets( std::size_t n, std::size_t k, std::uint64_t limit )
{
  std::uint64_t total = 0;
  std::uint64_t binom = 1; // C(n, 0)
  for ( std::size_t size = 0; size <= std::min( n, k ); ++size )
  {
    total += binom;
    if ( total > limit )
    {
      return limit + 1;
    }
    binom = binom * ( n - size ) / ( size + 1 );
  }
  return total;
}

} // namespace detail

/*! \brief Least partial clone containing the generators.

  Restrictions of projections are admitted on every domain drawn from
  domain_values^m (bounded by domain_size_bound), for each arity m up to the
  bound. The set is then closed under partial_compose, round by round; a
  round that adds nothing marks saturation.
*/
inline partial_clone partial_clone_closure( const carrier_ptr& c, std::span<const partial_operation> gens,
                                            const partial_closure_options& opt = {} )
{
  std::size_t bound = opt.arity_bound.value_or( 1 );
  if ( !opt.arity_bound )
  {
    for ( const auto& g : gens )
    {
      bound = std::max( bound, g.arity() );
    }
  }
  std::vector<value_t> values;
  if ( opt.domain_values )
  {
    values = *opt.domain_values;
  }
  else
  {
    for ( const auto& g : gens )
    {
      for ( const auto& t : g.domain() )
      {
        values.insert( values.end(), t.begin(), t.end() );
      }
    }
  }
  std::sort( values.begin(), values.end() );
  values.erase( std::unique( values.begin(), values.end() ), values.end() );

  partial_clone result( c );
  result.generated_by = std::vector<partial_operation>( gens.begin(), gens.end() );
  std::uint64_t work = 0;
  auto charge = [&]( std::uint64_t amount, const char* what ) {
    work += amount;
    if ( work > opt.limits.max_tables )
    {
      throw partial_result_error<partial_clone>( std::string( "partial clone closure exceeded the budget while " ) + what,
                                                 result );
    }
  };

  for ( const auto& g : gens )
  {
    if ( g.arity() > bound )
    {
      throw argument_error( "generator arity exceeds the partial-clone arity bound" );
    }
    if ( !same_carrier( g.domain_carrier(), c ) )
    {
      throw argument_error( "partial clone generators must share the carrier" );
    }
    result.insert( g );
  }

  for ( std::size_t m = 1; m <= bound; ++m )
  {
    // all tuples over `values` of length m, as carrier ranks
    std::vector<tuple_t> cube;
    if ( !values.empty() || m == 0 )
    {
      std::vector<std::size_t> pos( m, 0 );
      do
      {
        tuple_t t( m );
        for ( std::size_t i = 0; i < m; ++i )
        {
          t[i] = values[pos[i]];
        }
        cube.push_back( std::move( t ) );
        std::size_t i = m;
        while ( i-- > 0 )
        {
          if ( ++pos[i] < values.size() )
          {
            break;
          }
          pos[i] = 0;
        }
        if ( i == static_cast<std::size_t>( -1 ) )
        {
          break;
        }
      } while ( true );
    }
    const std::size_t k = opt.domain_size_bound.value_or( cube.size() );
    charge( detail::count_small_subsets( cube.size(), k, opt.limits.max_tables ) * m, "admitting projection restrictions" );
    std::vector<operation> projs;
    for ( std::size_t j = 1; j <= m; ++j )
    {
      projs.push_back( projection( c, m, j ) );
    }
    detail::for_each_small_subset( cube.size(), k, [&]( std::span<const std::size_t> pick ) {
      std::vector<tuple_t> dom;
      dom.reserve( pick.size() );
      for ( auto i : pick )
      {
        dom.push_back( cube[i] );
      }
      for ( const auto& pr : projs )
      {
        result.insert( restrict( pr, dom ) );
      }
    } );
  }

  std::vector<std::size_t> start( bound + 1, 0 );
  while ( !opt.rounds || result.rounds < *opt.rounds )
  {
    std::vector<std::size_t> end( bound + 1, 0 );
    for ( std::size_t a = 1; a <= bound; ++a )
    {
      end[a] = result.of_arity( a ).size();
    }
    std::vector<partial_operation> fresh;
    for ( std::size_t n = 1; n <= bound; ++n )
    {
      const auto& outers = result.of_arity( n );
      for ( std::size_t p = 0; p < end[n]; ++p )
      {
        for ( std::size_t m = 1; m <= bound; ++m )
        {
          const auto& inners = result.of_arity( m );
          if ( end[m] == 0 )
          {
            continue;
          }
          std::vector<std::size_t> pick( n, 0 );
          std::vector<partial_operation> qs;
          qs.reserve( n );
          while ( true )
          {
            bool has_new = p >= start[n];
            for ( std::size_t i = 0; i < n && !has_new; ++i )
            {
              has_new = pick[i] >= start[m];
            }
            if ( has_new )
            {
              charge( 1, "composing" );
              ++result.compositions;
              qs.clear();
              for ( auto i : pick )
              {
                qs.push_back( inners[i] );
              }
              auto h = partial_compose( outers[p], qs );
              if ( !result.contains( h ) )
              {
                fresh.push_back( std::move( h ) );
              }
            }
            std::size_t i = n;
            while ( i-- > 0 )
            {
              if ( ++pick[i] < end[m] )
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
      }
    }
    start = end;
    bool grew = false;
    for ( const auto& h : fresh )
    {
      grew = result.insert( h ) || grew;
    }
    ++result.rounds;
    if ( !grew )
    {
      result.saturated = true;
      break;
    }
  }
  return result;
}

inline partial_clone partial_clone_closure( const carrier_ptr& c, std::initializer_list<partial_operation> gens,
                                            const partial_closure_options& opt = {} )
{
  return partial_clone_closure( c, std::span<const partial_operation>( gens.begin(), gens.size() ), opt );
}

/// Restrictions of every member of C to every domain of at most
/// `domain_size_bound` tuples.
inline partial_clone sigma_restriction( const operation_set& C, std::size_t domain_size_bound, const budget& b = {} )
{
  partial_clone result( C.domain() );
  std::uint64_t work = 0;
  for ( const auto& f : C.all() )
  {
    const std::size_t rows = f.table().size();
    work += detail::count_small_subsets( rows, domain_size_bound, b.max_tables );
    if ( work > b.max_tables )
    {
      throw partial_result_error<partial_clone>( "sigma restriction exceeded the budget", result );
    }
    std::vector<tuple_t> all_tuples;
    all_tuples.reserve( rows );
    for ( std::size_t r = 0; r < rows; ++r )
    {
      all_tuples.push_back( unrank_tuple( r, f.arity(), C.domain()->size() ) );
    }
    detail::for_each_small_subset( rows, domain_size_bound, [&]( std::span<const std::size_t> pick ) {
      std::vector<value_t> graph( rows, partial_operation::undefined );
      for ( auto r : pick )
      {
        graph[r] = f.table()[r];
      }
      result.insert( partial_operation::from_dense( C.domain(), f.arity(), std::move( graph ) ) );
    } );
  }
  result.saturated = true;
  return result;
}

/// Closure of the union of both member sets.
inline partial_clone partial_join( const partial_clone& P, const partial_clone& Q, partial_closure_options opt = {} )
{
  if ( !same_carrier( P.domain(), Q.domain() ) )
  {
    throw argument_error( "partial_join: carrier mismatch" );
  }
  auto gens = P.members();
  const auto more = Q.members();
  gens.insert( gens.end(), more.begin(), more.end() );
  if ( !opt.arity_bound )
  {
    opt.arity_bound = std::max<std::size_t>( { std::size_t{ 1 }, P.max_arity(), Q.max_arity() } );
  }
  return partial_clone_closure( P.domain(), gens, opt );
}

/// A finite domain on which `member` (from one clone) is not matched by any
/// operation of the other clone.
struct separation_witness
{
  operation member;
  std::vector<tuple_t> domain;
  bool member_in_first = true;
};

namespace detail
{

inline std::optional<separation_witness> one_sided_witness( const operation_set& from, const operation_set& other,
                                                            bool from_first )
{
  for ( const auto& f : from.all() )
  {
    if ( other.contains( f ) )
    {
      continue;
    }
    const auto& rivals = other.of_arity( f.arity() );
    const std::size_t rows = f.table().size();
    std::optional<std::vector<std::size_t>> best;
    for ( std::size_t size = 1; size <= rows && !best; ++size )
    {
      for_each_small_subset( rows, size, [&]( std::span<const std::size_t> pick ) {
        if ( best || pick.size() != size )
        {
          return;
        }
        const bool separated = std::none_of( rivals.begin(), rivals.end(), [&]( const operation& g ) {
          return std::all_of( pick.begin(), pick.end(), [&]( std::size_t r ) { return g.table()[r] == f.table()[r]; } );
        } );
        if ( separated )
        {
          best = std::vector<std::size_t>( pick.begin(), pick.end() );
        }
      } );
    }
    if ( best )
    {
      separation_witness w{ f, {}, from_first };
      for ( auto r : *best )
      {
        w.domain.push_back( unrank_tuple( r, f.arity(), f.domain()->size() ) );
      }
      return w;
    }
  }
  return std::nullopt;
}

} // namespace detail

/// Smallest-domain witness that the restriction images of C and D differ,
/// or nullopt when the two fragments coincide.
inline std::optional<separation_witness> find_separation_witness( const operation_set& C, const operation_set& D )
{
  if ( auto w = detail::one_sided_witness( C, D, true ) )
  {
    return w;
  }
  return detail::one_sided_witness( D, C, false );
}

} // namespace clonelab
