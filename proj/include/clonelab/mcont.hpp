#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "carrier.hpp"
#include "errors.hpp"
#include "mterm.hpp"
#include "operation.hpp"
#include "report.hpp"

namespace clonelab
{

namespace detail
{

inline void require_tripartite( const carrier& c )
{
  if ( c.kind() != carrier_kind::tripartite )
  {
    throw argument_error( "this construction lives on a tri-partite carrier" );
  }
}

} // namespace detail

/// The unary operation of a G_alpha member on the truncation.
inline operation to_operation( const g_alpha_function& f, const carrier_ptr& X )
{
  detail::require_tripartite( *X );
  if ( f.lengths().size() != X->k() )
  {
    throw argument_error( "G_alpha assignment covers " + std::to_string( f.lengths().size() ) + " A-elements, carrier has " +
                          std::to_string( X->k() ) );
  }
  return operation::from_function( X, 1, [&]( std::span<const value_t> x ) {
    return X->is_a( x[0] ) ? X->b( f.image( x[0] ) ) : X->infinity();
  } );
}

/// a_i -> alpha restricted to i+1; B and infinity -> infinity.
inline operation make_g_alpha( const alpha_prefix& alpha, const carrier_ptr& X )
{
  detail::require_tripartite( *X );
  return to_operation( g_alpha_function::canonical( alpha, X->k() ), X );
}

/*! \brief The binary operation m^sigma on the truncation.

  Cases in order: an infinite argument gives infinity; (A, B) gives the
  B-argument; (x, y) in dom sigma gives sigma(x, y); otherwise the first
  argument.
*/
inline operation make_m_sigma( const sigma_map& sigma, const carrier_ptr& X )
{
  detail::require_tripartite( *X );
  if ( sigma.max_length() > X->k() )
  {
    throw argument_error( "sigma uses bit strings longer than the truncation bound " + std::to_string( X->k() ) );
  }
  const auto inf = X->infinity();
  return operation::from_function( X, 2, [&]( std::span<const value_t> xy ) -> value_t {
    const auto x = xy[0];
    const auto y = xy[1];
    if ( x == inf || y == inf )
    {
      return inf;
    }
    if ( X->is_a( x ) && X->is_b( y ) )
    {
      return y;
    }
    if ( X->is_b( x ) && X->is_b( y ) )
    {
      if ( auto v = sigma( X->bits( x ), X->bits( y ) ) )
      {
        return X->b( *v );
      }
    }
    return x;
  } );
}

enum class unary_class
{
  identity,
  infinity,
  g_alpha,
  other
};

inline const char* to_string( unary_class c )
{
  switch ( c )
  {
  case unary_class::identity:
    return "identity";
  case unary_class::infinity:
    return "infinity";
  case unary_class::g_alpha:
    return "g_alpha";
  case unary_class::other:
    return "other";
  }
  return "?";
}

/// True iff f maps B ∪ {infinity} to infinity and A injectively into B_alpha.
inline bool in_g_alpha( const operation& f, const alpha_prefix& alpha )
{
  const auto& X = *f.domain();
  detail::require_tripartite( X );
  std::set<value_t> images;
  for ( value_t x = 0; x < X.size(); ++x )
  {
    const auto v = f.table()[x];
    if ( X.is_a( x ) )
    {
      if ( !X.is_b( v ) || X.bits( v ).length() > alpha.length() || !alpha.has_prefix( X.bits( v ) ) ||
           !images.insert( v ).second )
      {
        return false;
      }
    }
    else if ( v != X.infinity() )
    {
      return false;
    }
  }
  return true;
}

/// Which of the unary classes identity / infinity / G_alpha f falls into.
inline unary_class classify_unary( const operation& f, const alpha_prefix& alpha )
{
  if ( f.arity() != 1 )
  {
    throw argument_error( "classify_unary expects a unary operation" );
  }
  const auto& X = *f.domain();
  detail::require_tripartite( X );
  const auto& t = f.table();
  bool identity = true;
  bool infinity = true;
  for ( value_t x = 0; x < X.size(); ++x )
  {
    identity = identity && t[x] == x;
    infinity = infinity && t[x] == X.infinity();
  }
  if ( identity )
  {
    return unary_class::identity;
  }
  if ( infinity )
  {
    return unary_class::infinity;
  }
  return in_g_alpha( f, alpha ) ? unary_class::g_alpha : unary_class::other;
}

inline unary_class classify_unary( const mterm& t, const m_interpretation& in, const alpha_prefix& alpha )
{
  return classify_unary( t.identified( in ), alpha );
}

// ---------------------------------------------------------------------------
// Seeded sampling of generators.
// ---------------------------------------------------------------------------

/// A random G_alpha member: an injective assignment of prefix lengths that
/// stay inside both the window and the truncation.
inline g_alpha_function random_g_alpha( const alpha_prefix& alpha, std::size_t k, std::mt19937_64& rng )
{
  const auto top = std::min( alpha.length(), k );
  if ( top + 1 < k )
  {
    throw argument_error( "a window of length " + std::to_string( alpha.length() ) + " cannot host an injective image of A_" +
                          std::to_string( k ) );
  }
  std::vector<std::size_t> lengths( top + 1 );
  std::iota( lengths.begin(), lengths.end(), 0 );
  std::shuffle( lengths.begin(), lengths.end(), rng );
  lengths.resize( k );
  return g_alpha_function( alpha, std::move( lengths ) );
}

/// A random admissible sigma on strings of length at most k, with |C|, |D|
/// between 1 and max_side.
inline sigma_map random_sigma_map( std::size_t k, std::mt19937_64& rng, std::size_t max_side = 3 )
{
  std::vector<bit_string> nonempty;
  std::vector<bit_string> all{ bit_string() };
  for ( std::size_t len = 1; len <= k; ++len )
  {
    for ( std::uint64_t v = 0; v < ( std::uint64_t{ 1 } << len ); ++v )
    {
      nonempty.push_back( bit_string::from_rank( len, v ) );
      all.push_back( nonempty.back() );
    }
  }
  while ( true )
  {
    std::shuffle( nonempty.begin(), nonempty.end(), rng );
    const std::size_t want_c = 1 + rng() % max_side;
    const std::size_t want_d = 1 + rng() % max_side;
    std::vector<bit_string> C, D;
    for ( const auto& s : nonempty )
    {
      if ( C.size() < want_c )
      {
        C.push_back( s );
      }
      else if ( D.size() < want_d && std::all_of( C.begin(), C.end(), [&]( const bit_string& c ) { return perp( c, s ); } ) )
      {
        D.push_back( s );
      }
    }
    if ( D.empty() || C.size() * D.size() > all.size() )
    {
      continue;
    }
    std::shuffle( all.begin(), all.end(), rng );
    std::map<sigma_map::key_type, bit_string> graph;
    std::size_t next = 0;
    for ( const auto& c : C )
    {
      for ( const auto& d : D )
      {
        graph.emplace( sigma_map::key_type{ c, d }, all[next++] );
      }
    }
    return sigma_map( C, D, std::move( graph ) );
  }
}

// ---------------------------------------------------------------------------
// Composition identities.
// ---------------------------------------------------------------------------

struct lemma7_triple
{
  operation m;
  operation f;
  operation g;
};

/// m(x,x)=x, m(f(x),x)=f(x), m(x,f(x))=f(x), m(f(x),g(x))=f(x) for every x.
inline check_report verify_lemma_composition( const alpha_prefix& alpha, const std::vector<lemma7_triple>& triples )
{
  check_report rep;
  rep.name = "composition-identities";
  for ( std::size_t i = 0; i < triples.size(); ++i )
  {
    const auto& [m, f, g] = triples[i];
    const auto& X = *m.domain();
    detail::require_tripartite( X );
    if ( m.arity() != 2 || !in_g_alpha( f, alpha ) || !in_g_alpha( g, alpha ) )
    {
      throw argument_error( "triple " + std::to_string( i ) + " does not consist of a binary m and two G_alpha members" );
    }
    for ( value_t x = 0; x < X.size(); ++x )
    {
      const auto fx = f( { x } );
      const auto gx = g( { x } );
      auto witness = [&]( const char* identity ) {
        return json{ { "triple", i }, { "identity", identity }, { "x", value_to_json( X, x ) } };
      };
      rep.expect( m( { x, x } ) == x, [&] { return witness( "m(x,x)=x" ); } );
      rep.expect( m( { fx, x } ) == fx, [&] { return witness( "m(f(x),x)=f(x)" ); } );
      rep.expect( m( { x, fx } ) == fx, [&] { return witness( "m(x,f(x))=f(x)" ); } );
      rep.expect( m( { fx, gx } ) == fx, [&] { return witness( "m(f(x),g(x))=f(x)" ); } );
    }
  }
  rep.details["alpha"] = alpha.window().str();
  rep.details["triples"] = triples.size();
  return rep;
}

// ---------------------------------------------------------------------------
// Bounded-depth term enumeration.
// ---------------------------------------------------------------------------

struct term_signature
{
  std::size_t variables = 1;
  bool with_infinity = true;
};

namespace detail
{

struct identified_term
{
  mterm term;
  std::vector<value_t> table;
};

/// Number of terms of depth exactly d given the counts of shallower levels.
inline std::uint64_t level_count( std::uint64_t exact_prev, std::uint64_t upto_prev, std::uint64_t upto_prev2,
                                  std::uint64_t unary_symbols, std::uint64_t binary_symbols )
{
  return unary_symbols * exact_prev + binary_symbols * ( upto_prev * upto_prev - upto_prev2 * upto_prev2 );
}

} // namespace detail

/*! \brief Enumerates every term up to `max_depth` and hands each one, with
  its identified-variable table, to `visit`.

  Order: by depth, then root symbol (G symbols, infinity, m symbols), then
  subterms in enumeration order (left before right). Terms of the deepest
  level are streamed, not stored. Throws resource_error before starting a
  level that would push the total past `max_terms`.
*/
template<typename Visit>
std::uint64_t enumerate_identified_terms( const m_interpretation& in, const term_signature& sig, std::size_t max_depth,
                                          std::uint64_t max_terms, Visit&& visit )
{
  const auto size = in.universe->size();
  const auto inf = in.universe->infinity();
  const std::uint64_t unary_symbols = in.g_ops.size() + ( sig.with_infinity ? 1 : 0 );
  const std::uint64_t binary_symbols = in.m_ops.size();

  std::vector<detail::identified_term> stored;
  std::vector<std::size_t> level_end; // stored[0, level_end[d]) have depth <= d
  std::vector<value_t> identity( size );
  std::iota( identity.begin(), identity.end(), 0 );
  for ( std::size_t v = 0; v < sig.variables; ++v )
  {
    stored.push_back( { mterm::var( v ), identity } );
  }
  level_end.push_back( stored.size() );
  std::uint64_t total = stored.size();
  for ( const auto& t : stored )
  {
    visit( t.term, t.table );
  }

  for ( std::size_t d = 1; d <= max_depth; ++d )
  {
    const std::uint64_t upto_prev = level_end[d - 1];
    const std::uint64_t upto_prev2 = d >= 2 ? level_end[d - 2] : 0;
    const std::uint64_t exact_prev = upto_prev - upto_prev2;
    const auto count = detail::level_count( exact_prev, upto_prev, upto_prev2, unary_symbols, binary_symbols );
    if ( total + count > max_terms )
    {
      throw resource_error( "term enumeration stopped after " + std::to_string( total ) + " terms of depth <= " +
                            std::to_string( d - 1 ) + "; depth " + std::to_string( d ) + " adds " +
                            std::to_string( count ) + " more, past the budget of " + std::to_string( max_terms ) );
    }
    const bool last = d == max_depth;
    std::vector<detail::identified_term> level;
    auto emit = [&]( mterm term, std::vector<value_t> table ) {
      visit( term, table );
      if ( !last )
      {
        level.push_back( { std::move( term ), std::move( table ) } );
      }
    };
    std::vector<value_t> table( size );
    for ( std::size_t s = 0; s < in.g_ops.size(); ++s )
    {
      const auto& gt = in.g_ops[s].table();
      for ( std::size_t c = upto_prev2; c < upto_prev; ++c )
      {
        for ( std::size_t x = 0; x < size; ++x )
        {
          table[x] = gt[stored[c].table[x]];
        }
        emit( mterm::g( s, stored[c].term ), table );
      }
    }
    if ( sig.with_infinity )
    {
      std::fill( table.begin(), table.end(), inf );
      for ( std::size_t c = upto_prev2; c < upto_prev; ++c )
      {
        emit( mterm::inf( stored[c].term ), table );
      }
    }
    for ( std::size_t s = 0; s < in.m_ops.size(); ++s )
    {
      const auto& mt = in.m_ops[s].table();
      for ( std::size_t l = 0; l < upto_prev; ++l )
      {
        for ( std::size_t r = 0; r < upto_prev; ++r )
        {
          if ( l < upto_prev2 && r < upto_prev2 )
          {
            continue;
          }
          for ( std::size_t x = 0; x < size; ++x )
          {
            table[x] = mt[stored[l].table[x] * size + stored[r].table[x]];
          }
          emit( mterm::m( s, stored[l].term, stored[r].term ), table );
        }
      }
    }
    total += count;
    for ( auto& t : level )
    {
      stored.push_back( std::move( t ) );
    }
    level_end.push_back( stored.size() );
  }
  return total;
}

namespace detail
{

inline unary_class classify_table( const carrier& X, const std::vector<value_t>& t, const alpha_prefix& alpha,
                                   const carrier_ptr& universe )
{
  return classify_unary( operation( universe, 1, t ), alpha );
  (void)X;
}

inline void require_g_alpha_symbols( const m_interpretation& in, const alpha_prefix& alpha )
{
  detail::require_tripartite( *in.universe );
  for ( std::size_t i = 0; i < in.g_ops.size(); ++i )
  {
    if ( !in_g_alpha( in.g_ops[i], alpha ) )
    {
      throw argument_error( "symbol g" + std::to_string( i ) + " is not a G_alpha member" );
    }
  }
  for ( const auto& m : in.m_ops )
  {
    if ( m.arity() != 2 )
    {
      throw argument_error( "m symbols must be binary" );
    }
  }
}

} // namespace detail

/*! \brief Bounded certificate for the identified-variable dichotomy.

  Every term up to `depth` is identified to one variable and classified.
  Terms containing a G_alpha symbol must be infinity or in G_alpha; the
  others must be the identity or infinity. "other" always counts as a
  violation.
*/
inline check_report verify_identifying_variables( const m_interpretation& in, const alpha_prefix& alpha, std::size_t depth,
                                                  const term_signature& sig = {}, std::uint64_t max_terms = 10'000'000 )
{
  if ( depth < 1 )
  {
    throw argument_error( "term depth must be at least 1" );
  }
  detail::require_g_alpha_symbols( in, alpha );
  check_report rep;
  rep.name = "identified-variables";
  std::map<std::string, std::uint64_t> classes;
  std::uint64_t with_g = 0;
  std::uint64_t seen = 0;
  try
  {
    enumerate_identified_terms( in, sig, depth, max_terms, [&]( const mterm& t, const std::vector<value_t>& table ) {
      ++seen;
      const auto cls = detail::classify_table( *in.universe, table, alpha, in.universe );
      ++classes[to_string( cls )];
      if ( t.uses_g() )
      {
        ++with_g;
        rep.expect( cls == unary_class::infinity || cls == unary_class::g_alpha,
                    [&] { return json{ { "term", t.to_string() }, { "class", to_string( cls ) } }; } );
      }
      else
      {
        rep.expect( cls == unary_class::identity || cls == unary_class::infinity,
                    [&] { return json{ { "term", t.to_string() }, { "class", to_string( cls ) } }; } );
      }
    } );
  }
  catch ( const resource_error& e )
  {
    rep.details["terms_enumerated"] = seen;
    throw partial_result_error<check_report>( e.what(), rep );
  }
  rep.details["alpha"] = alpha.window().str();
  rep.details["k"] = in.universe->k();
  rep.details["depth"] = depth;
  rep.details["variables"] = sig.variables;
  rep.details["g_symbols"] = in.g_ops.size();
  rep.details["m_symbols"] = in.m_ops.size();
  rep.details["with_infinity"] = sig.with_infinity;
  rep.details["terms_enumerated"] = seen;
  rep.details["terms_using_g"] = with_g;
  json cls = json::object();
  for ( const auto& [name, n] : classes )
  {
    cls[name] = n;
  }
  rep.details["classes"] = cls;
  return rep;
}

/// Number of common prefixes of the two windows that fit in the truncation.
inline std::size_t common_prefix_count( const alpha_prefix& alpha, const alpha_prefix& beta, std::size_t k )
{
  const auto d = divergence_index( alpha, beta );
  if ( !d )
  {
    throw argument_error( "windows \"" + alpha.window().str() + "\" and \"" + beta.window().str() +
                          "\" do not diverge inside the window" );
  }
  return std::min( *d, k ) + 1;
}

/*! \brief Bounded certificate for the meet separation argument.

  For every term up to `depth` that contains a G_alpha symbol and does not
  agree on F with a unary member of the clone of M (identity, infinity), the
  identified term must map F ∩ A injectively into B_alpha; since
  |F ∩ A| > |B_alpha ∩ B_beta|, the image then cannot lie inside B_beta.
*/
inline check_report verify_meet_fragment( const m_interpretation& in, const alpha_prefix& alpha, const alpha_prefix& beta,
                                          const std::vector<value_t>& F, std::size_t depth,
                                          const term_signature& sig = {}, std::uint64_t max_terms = 10'000'000 )
{
  detail::require_g_alpha_symbols( in, alpha );
  const auto& X = *in.universe;
  const auto overlap = common_prefix_count( alpha, beta, X.k() );
  std::vector<value_t> fa;
  for ( auto x : F )
  {
    if ( x >= X.size() )
    {
      throw argument_error( "F contains an element outside the carrier" );
    }
    if ( X.is_a( x ) )
    {
      fa.push_back( x );
    }
  }
  std::sort( fa.begin(), fa.end() );
  fa.erase( std::unique( fa.begin(), fa.end() ), fa.end() );
  if ( fa.size() <= overlap )
  {
    throw argument_error( "|F ∩ A| = " + std::to_string( fa.size() ) + " must exceed |B_alpha ∩ B_beta| = " +
                          std::to_string( overlap ) + "; enlarge F" );
  }

  check_report rep;
  rep.name = "meet-separation";
  std::uint64_t checked = 0, without_g = 0, agrees_with_m = 0, seen = 0;
  auto in_window = []( const alpha_prefix& w, const bit_string& s ) { return s.length() <= w.length() && w.has_prefix( s ); };
  try
  {
    enumerate_identified_terms( in, sig, depth, max_terms, [&]( const mterm& t, const std::vector<value_t>& table ) {
      ++seen;
      if ( !t.uses_g() )
      {
        ++without_g;
        return;
      }
      const bool like_id = std::all_of( F.begin(), F.end(), [&]( value_t x ) { return table[x] == x; } );
      const bool like_inf = std::all_of( F.begin(), F.end(), [&]( value_t x ) { return table[x] == X.infinity(); } );
      if ( like_id || like_inf )
      {
        ++agrees_with_m;
        return;
      }
      ++checked;
      std::set<value_t> images;
      bool into_alpha = true;
      bool into_beta = true;
      for ( auto x : fa )
      {
        const auto v = table[x];
        images.insert( v );
        into_alpha = into_alpha && X.is_b( v ) && in_window( alpha, X.bits( v ) );
        into_beta = into_beta && X.is_b( v ) && in_window( beta, X.bits( v ) );
      }
      const bool injective = images.size() == fa.size();
      rep.expect( injective && into_alpha && !into_beta, [&] {
        return json{ { "term", t.to_string() }, { "injective", injective }, { "into_B_alpha", into_alpha },
                     { "into_B_beta", into_beta } };
      } );
    } );
  }
  catch ( const resource_error& e )
  {
    rep.details["terms_enumerated"] = seen;
    throw partial_result_error<check_report>( e.what(), rep );
  }
  rep.details["alpha"] = alpha.window().str();
  rep.details["beta"] = beta.window().str();
  rep.details["k"] = X.k();
  rep.details["depth"] = depth;
  rep.details["F_cap_A"] = fa.size();
  rep.details["B_alpha_cap_B_beta"] = overlap;
  rep.details["terms_enumerated"] = seen;
  rep.details["terms_without_g"] = without_g;
  rep.details["terms_agreeing_with_M_on_F"] = agrees_with_m;
  rep.details["terms_checked"] = checked;
  return rep;
}

// ---------------------------------------------------------------------------
// Constructive join interpolation.
// ---------------------------------------------------------------------------

struct join_interpolation
{
  g_alpha_function f;
  g_alpha_function g;
  sigma_map sigma;
  operation f_op;
  operation g_op;
  operation m_op;
};

/*! \brief Builds f in G_alpha, g in G_beta and sigma with
  m^sigma(f(x), g(x)) = h(x) on F.

  F ∩ A is sent onto C = {alpha|d+1, ..., alpha|d+n} and D likewise for beta,
  where d is the divergence index and n = |F ∩ A|, so C ⊥ D. Remaining
  A-elements take the smallest unused prefix lengths. sigma maps each forced
  pair (f(x), g(x)) to h(x) and every other pair of C × D to the
  shortlex-least unused bit strings of the truncation.
*/
inline join_interpolation join_interpolate( const carrier_ptr& X, const g_alpha_function& h, const std::vector<value_t>& F,
                                            const alpha_prefix& alpha, const alpha_prefix& beta )
{
  detail::require_tripartite( *X );
  const auto& gamma = h.alpha();
  if ( gamma == alpha || gamma == beta || alpha == beta )
  {
    throw argument_error( "gamma, alpha and beta must be pairwise distinct windows" );
  }
  if ( h.lengths().size() != X->k() )
  {
    throw argument_error( "h must assign a prefix to every A-element of the truncation" );
  }
  const auto d = divergence_index( alpha, beta );
  if ( !d )
  {
    throw argument_error( "alpha and beta do not diverge inside their windows" );
  }
  std::vector<std::size_t> fa;
  for ( auto x : F )
  {
    if ( x >= X->size() )
    {
      throw argument_error( "F contains an element outside the carrier" );
    }
    if ( X->is_a( x ) )
    {
      fa.push_back( x );
    }
  }
  std::sort( fa.begin(), fa.end() );
  fa.erase( std::unique( fa.begin(), fa.end() ), fa.end() );
  const std::size_t n = fa.size();
  const std::size_t needed = *d + n;
  if ( needed > std::min( alpha.length(), beta.length() ) || needed > X->k() )
  {
    throw argument_error( "picking " + std::to_string( n ) + " pairwise incomparable prefixes needs windows and truncation of length >= " +
                          std::to_string( needed ) );
  }

  auto assign = [&]( const alpha_prefix& w ) {
    std::vector<std::size_t> lengths( X->k(), 0 );
    std::vector<bool> used( w.length() + 1, false );
    std::vector<bool> placed( X->k(), false );
    for ( std::size_t i = 0; i < n; ++i )
    {
      lengths[fa[i]] = *d + 1 + i;
      used[*d + 1 + i] = true;
      placed[fa[i]] = true;
    }
    std::size_t next = 0;
    for ( std::size_t a = 0; a < X->k(); ++a )
    {
      if ( placed[a] )
      {
        continue;
      }
      while ( next <= std::min( w.length(), X->k() ) && used[next] )
      {
        ++next;
      }
      if ( next > std::min( w.length(), X->k() ) )
      {
        throw argument_error( "window \"" + w.window().str() + "\" is too short to map A_" + std::to_string( X->k() ) +
                              " injectively" );
      }
      lengths[a] = next;
      used[next] = true;
    }
    return g_alpha_function( w, std::move( lengths ) );
  };
  auto f = assign( alpha );
  auto g = assign( beta );

  std::vector<bit_string> C, D;
  for ( std::size_t i = 1; i <= n; ++i )
  {
    C.push_back( alpha.prefix( *d + i ) );
    D.push_back( beta.prefix( *d + i ) );
  }
  std::map<sigma_map::key_type, bit_string> graph;
  std::set<bit_string> taken;
  for ( auto x : fa )
  {
    auto value = h.image( x );
    if ( value.length() > X->k() )
    {
      throw argument_error( "h sends an A-element outside the truncation" );
    }
    graph.emplace( sigma_map::key_type{ f.image( x ), g.image( x ) }, value );
    taken.insert( value );
  }
  std::size_t len = 0;
  std::uint64_t rank = 0;
  auto next_free = [&]() {
    while ( len <= X->k() )
    {
      if ( rank >= ( std::uint64_t{ 1 } << len ) )
      {
        ++len;
        rank = 0;
        continue;
      }
      auto s = bit_string::from_rank( len, rank++ );
      if ( !taken.count( s ) )
      {
        taken.insert( s );
        return s;
      }
    }
    throw argument_error( "the truncation has too few bit strings to extend sigma injectively" );
  };
  for ( const auto& c : C )
  {
    for ( const auto& dd : D )
    {
      if ( !graph.count( { c, dd } ) )
      {
        graph.emplace( sigma_map::key_type{ c, dd }, next_free() );
      }
    }
  }
  sigma_map sigma( C, D, std::move( graph ) );
  auto f_op = to_operation( f, X );
  auto g_op = to_operation( g, X );
  auto m_op = make_m_sigma( sigma, X );
  return { std::move( f ), std::move( g ), std::move( sigma ), std::move( f_op ), std::move( g_op ), std::move( m_op ) };
}

inline json sigma_to_json( const sigma_map& s )
{
  json graph = json::array();
  for ( const auto& [key, value] : s.graph() )
  {
    graph.push_back( json::array( { json::array( { key.first.str(), key.second.str() } ), value.str() } ) );
  }
  return json{ { "graph", graph } };
}

/*! \brief Runs join_interpolate and re-checks the result on F twice: once
  through the operation tables and compose, once by evaluating the case
  split of m^sigma and the prefix assignments directly.
*/
inline check_report verify_join( const carrier_ptr& X, const g_alpha_function& h, const std::vector<value_t>& F,
                                 const alpha_prefix& alpha, const alpha_prefix& beta )
{
  const auto ji = join_interpolate( X, h, F, alpha, beta );
  check_report rep;
  rep.name = "join-interpolation";
  const auto h_op = to_operation( h, X );
  const auto term = compose( ji.m_op, { ji.f_op, ji.g_op } );

  // direct route: no tables involved
  auto direct_g = [&]( const g_alpha_function& gf, value_t x ) -> std::optional<bit_string> {
    if ( X->is_a( x ) )
    {
      return gf.image( x );
    }
    return std::nullopt; // infinity
  };
  for ( auto x : F )
  {
    const auto fx = direct_g( ji.f, x );
    const auto gx = direct_g( ji.g, x );
    const auto hx = direct_g( h, x );
    std::optional<bit_string> value;
    if ( !fx || !gx )
    {
      value = std::nullopt;
    }
    else if ( auto s = ji.sigma( *fx, *gx ) )
    {
      value = s;
    }
    else
    {
      value = fx;
    }
    const bool direct_ok = value == hx;
    const bool table_ok = term( { x } ) == h_op( { x } );
    rep.expect( direct_ok && table_ok, [&] {
      return json{ { "x", value_to_json( *X, x ) }, { "direct", direct_ok }, { "tables", table_ok } };
    } );
  }
  json f_json = json::array();
  for ( auto x : F )
  {
    f_json.push_back( value_to_json( *X, x ) );
  }
  rep.details["gamma"] = h.alpha().window().str();
  rep.details["alpha"] = alpha.window().str();
  rep.details["beta"] = beta.window().str();
  rep.details["k"] = X->k();
  rep.details["F"] = f_json;
  rep.details["h_lengths"] = h.lengths();
  rep.details["f_lengths"] = ji.f.lengths();
  rep.details["g_lengths"] = ji.g.lengths();
  rep.details["sigma"] = sigma_to_json( ji.sigma );
  return rep;
}

} // namespace clonelab
