#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace clonelab;
using namespace testing_helpers;

TEST( Restrict, Examples )
{
  auto c = boolean();
  const auto id = projection( c, 1, 1 );
  const auto p = restrict( id, { { 0 } } );
  EXPECT_EQ( p.domain_size(), 1u );
  EXPECT_EQ( p( std::vector<value_t>{ 0 } ), std::optional<value_t>( 0 ) );
  EXPECT_FALSE( p( std::vector<value_t>{ 1 } ) );

  const auto q = restrict( AND( c ), { { 0, 1 }, { 1, 1 } } );
  EXPECT_EQ( q.entries(), ( std::vector<std::pair<tuple_t, value_t>>{ { { 0, 1 }, 0 }, { { 1, 1 }, 1 } } ) );

  const auto e = restrict( AND( c ), {} );
  EXPECT_EQ( e.domain_size(), 0u );
  EXPECT_EQ( e.arity(), 2u );

  EXPECT_THROW( restrict( AND( c ), { { 0, 2 } } ), argument_error );
  EXPECT_THROW( restrict( AND( c ), { { 0 } } ), argument_error );
}

TEST( PartialOperation, RejectsConflictingGraph )
{
  auto c = boolean();
  EXPECT_THROW( partial_operation( c, 1, { { { 0 }, 0 }, { { 0 }, 1 } } ), argument_error );
  EXPECT_NO_THROW( partial_operation( c, 1, { { { 0 }, 1 }, { { 0 }, 1 } } ) );
}

TEST( PartialCompose, Examples )
{
  auto c = boolean();
  const auto id0 = restrict( projection( c, 1, 1 ), { { 0 } } );
  EXPECT_EQ( partial_compose( id0, { id0 } ), id0 );

  const partial_operation at1( c, 1, { { { 1 }, 1 } } );
  const partial_operation zero_to_zero( c, 1, { { { 0 }, 0 } } );
  EXPECT_EQ( partial_compose( at1, { zero_to_zero } ).domain_size(), 0u );

  const auto neg_both = restrict( NOT( c ), { { 0 }, { 1 } } );
  const auto neg0 = restrict( NOT( c ), { { 0 } } );
  EXPECT_EQ( partial_compose( neg_both, { neg0 } ), id0 );
}

TEST( PartialCompose, RespectsExtension )
{
  auto c = carrier::plain( 3 );
  std::mt19937_64 rng( 53 );
  for ( int i = 0; i < 200; ++i )
  {
    auto f = random_operation( c, 2, rng );
    auto g1 = random_operation( c, 2, rng );
    auto g2 = random_operation( c, 2, rng );
    auto sub = [&]( const operation& h ) {
      std::vector<tuple_t> dom;
      for ( std::size_t r = 0; r < 9; ++r )
      {
        if ( rng() % 3 )
        {
          dom.push_back( unrank_tuple( r, 2, 3 ) );
        }
      }
      return restrict( h, dom );
    };
    const auto p = partial_compose( sub( f ), { sub( g1 ), sub( g2 ) } );
    EXPECT_TRUE( p.extended_by( compose( f, { g1, g2 } ) ) );
  }
}

TEST( PartialClosure, Examples )
{
  auto c = boolean();
  partial_closure_options opt;
  opt.domain_values = std::vector<value_t>{ 0, 1 };
  opt.domain_size_bound = 2;
  const auto empty = partial_clone_closure( c, {}, opt );
  EXPECT_TRUE( empty.saturated );
  for ( const auto& p : empty.members() )
  {
    EXPECT_TRUE( p.extended_by( projection( c, p.arity(), 1 ) ) );
  }

  const auto neg = restrict( NOT( c ), { { 0 }, { 1 } } );
  const auto cl = partial_clone_closure( c, { neg } );
  EXPECT_TRUE( cl.saturated );
  EXPECT_TRUE( cl.contains( restrict( projection( c, 1, 1 ), { { 0 }, { 1 } } ) ) );

  const partial_operation const1( c, 1, { { { 0 }, 1 } } );
  const auto k = partial_clone_closure( c, { const1 }, opt );
  EXPECT_TRUE( k.saturated );
  for ( const auto& p : k.of_arity( 1 ) )
  {
    EXPECT_NE( p( std::vector<value_t>{ 1 } ), std::optional<value_t>( 0 ) );
  }
}

TEST( PartialClosure, MonotoneAndIdempotent )
{
  auto c = carrier::plain( 3 );
  partial_closure_options opt;
  opt.domain_size_bound = 2;
  opt.domain_values = std::vector<value_t>{ 0, 1, 2 };
  const partial_operation p( c, 1, { { { 0 }, 1 }, { { 1 }, 2 } } );
  const partial_operation q( c, 1, { { { 2 }, 0 } } );
  const auto a = partial_clone_closure( c, { p }, opt );
  const auto b = partial_clone_closure( c, { p, q }, opt );
  EXPECT_TRUE( a.subset_of( b ) );
  const auto again = partial_clone_closure( c, a.members(), opt );
  EXPECT_EQ( again, a );
}

TEST( PartialClosure, BudgetCarriesPartialResult )
{
  auto c = carrier::plain( 3 );
  partial_closure_options opt;
  opt.domain_size_bound = 3;
  opt.domain_values = std::vector<value_t>{ 0, 1, 2 };
  opt.limits.max_tables = 50;
  const partial_operation p( c, 2, { { { 0, 1 }, 2 }, { { 1, 2 }, 0 } } );
  EXPECT_THROW( partial_clone_closure( c, { p }, opt ), partial_result_error<partial_clone> );
}

namespace
{

operation_set fragment( std::initializer_list<operation> gens )
{
  auto c = boolean();
  return clone_closure( operation_set( c, gens ), 2 ).ops;
}

} // namespace

TEST( SigmaRestriction, Examples )
{
  auto c = boolean();
  const auto proj = projections_up_to( c, 2 );
  const auto s1 = sigma_restriction( proj, 1 );
  for ( const auto& p : s1.members() )
  {
    EXPECT_LE( p.domain_size(), 1u );
  }
  // unary: empty and two points; binary: empty, the two diagonal points, and
  // both values at (0,1) and (1,0)
  EXPECT_EQ( s1.size(), 3u + 7u );

  const auto meet = fragment( { AND( c ) } );
  const auto join = fragment( { OR( c ) } );
  const auto sm = sigma_restriction( meet, 4 );
  const auto sj = sigma_restriction( join, 4 );
  EXPECT_FALSE( sm == sj );
  // the first projection also sends (0,1) to 0, so one point is not enough
  EXPECT_TRUE( sj.contains( restrict( AND( c ), { { 0, 1 } } ) ) );
  const auto witness = restrict( AND( c ), { { 0, 1 }, { 1, 0 } } );
  EXPECT_TRUE( sm.contains( witness ) );
  EXPECT_FALSE( sj.contains( witness ) );

  const auto w = find_separation_witness( meet, join );
  ASSERT_TRUE( w );
  EXPECT_EQ( w->member, AND( c ) );
  EXPECT_EQ( w->domain, ( std::vector<tuple_t>{ { 0, 1 }, { 1, 0 } } ) );
  EXPECT_TRUE( w->member_in_first );
}

TEST( SigmaRestriction, JoinPreservation )
{
  auto c = boolean();
  const auto meet = fragment( { AND( c ) } );
  const auto join = fragment( { OR( c ) } );
  const auto both = fragment( { AND( c ), OR( c ) } );
  partial_closure_options opt;
  opt.arity_bound = 2;
  opt.domain_size_bound = 4;
  opt.domain_values = std::vector<value_t>{ 0, 1 };
  const auto lhs = sigma_restriction( both, 4 );
  const auto rhs = partial_join( sigma_restriction( meet, 4 ), sigma_restriction( join, 4 ), opt );
  EXPECT_EQ( lhs, rhs );
}

TEST( PartialJoin, IdempotentAndNeutral )
{
  auto c = boolean();
  partial_closure_options opt;
  opt.arity_bound = 2;
  opt.domain_size_bound = 4;
  opt.domain_values = std::vector<value_t>{ 0, 1 };
  const auto P = sigma_restriction( fragment( { AND( c ) } ), 4 );
  EXPECT_EQ( partial_join( P, P, opt ), P );
  const auto proj = sigma_restriction( projections_up_to( c, 2 ), 4 );
  EXPECT_EQ( partial_join( P, proj, opt ), P );
  EXPECT_THROW( partial_join( P, partial_clone( carrier::plain( 3 ) ) ), argument_error );
}

TEST( SigmaRestriction, InjectiveOnThreeElementFragments )
{
  auto c = carrier::plain( 3 );
  std::mt19937_64 rng( 59 );
  std::vector<operation_set> fragments;
  for ( int i = 0; i < 6; ++i )
  {
    fragments.push_back( clone_closure( operation_set( c, { random_operation( c, 1, rng ) } ), 1 ).ops );
  }
  for ( std::size_t i = 0; i < fragments.size(); ++i )
  {
    for ( std::size_t j = 0; j < fragments.size(); ++j )
    {
      const bool same = fragments[i] == fragments[j];
      EXPECT_EQ( same, sigma_restriction( fragments[i], 3 ) == sigma_restriction( fragments[j], 3 ) );
      EXPECT_EQ( same, !find_separation_witness( fragments[i], fragments[j] ) );
    }
  }
}
